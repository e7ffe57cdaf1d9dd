//! Tokenization and tf-idf weighting shared by the section classifier and
//! the lexical pair scorer.

use std::collections::{BTreeMap, BTreeSet};

/// Version tag of [`STOPWORDS`]; bump when the list changes.
pub const STOPWORDS_VERSION: u32 = 1;

/// Fixed 50-word stopword list. Single letters are deliberately absent.
pub const STOPWORDS: [&str; 50] = [
    "the", "and", "of", "to", "in", "for", "on", "with", "as", "by", "at", "from", "an", "or", "is", "are", "was",
    "were", "be", "been", "being", "this", "that", "these", "those", "it", "its", "into", "over", "under", "than",
    "then", "there", "their", "they", "them", "he", "she", "his", "her", "we", "our", "you", "your", "i", "my", "me",
    "not", "but", "so",
];

fn is_stopword(token: &str) -> bool {
    STOPWORDS.contains(&token)
}

/// Lowercased maximal alphanumeric runs, stopwords removed.
pub fn tokenize(text: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    for ch in text.chars() {
        if ch.is_alphanumeric() {
            current.extend(ch.to_lowercase());
        } else if !current.is_empty() {
            push_token(&mut tokens, std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        push_token(&mut tokens, current);
    }
    tokens
}

fn push_token(tokens: &mut Vec<String>, token: String) {
    if !is_stopword(&token) {
        tokens.push(token);
    }
}

/// Smoothed inverse document frequency: ln((1 + N) / (1 + df)) + 1.
pub fn smoothed_idf(n_docs: usize, df: usize) -> f64 {
    ((1.0 + n_docs as f64) / (1.0 + df as f64)).ln() + 1.0
}

/// Document frequencies over a corpus of token lists.
pub fn document_frequencies<'a, I>(docs: I) -> (usize, BTreeMap<String, usize>)
where
    I: IntoIterator<Item = &'a [String]>,
{
    let mut n = 0;
    let mut df: BTreeMap<String, usize> = BTreeMap::new();
    for doc in docs {
        n += 1;
        let unique: BTreeSet<&String> = doc.iter().collect();
        for token in unique {
            *df.entry(token.clone()).or_default() += 1;
        }
    }
    (n, df)
}

/// Raw term counts.
pub fn term_counts(tokens: &[String]) -> BTreeMap<&str, f64> {
    let mut tf: BTreeMap<&str, f64> = BTreeMap::new();
    for t in tokens {
        *tf.entry(t.as_str()).or_default() += 1.0;
    }
    tf
}

/// Sparse vector keyed by token. Ordered so sums are reproducible.
pub type SparseVec = BTreeMap<String, f64>;

pub fn norm(v: &SparseVec) -> f64 {
    v.values().map(|w| w * w).sum::<f64>().sqrt()
}

/// Merge walk in key order, so `dot(a, b)` and `dot(b, a)` are bit-identical.
pub fn dot(a: &SparseVec, b: &SparseVec) -> f64 {
    let (mut ia, mut ib) = (a.iter().peekable(), b.iter().peekable());
    let mut sum = 0.0;
    while let (Some((ka, wa)), Some((kb, wb))) = (ia.peek(), ib.peek()) {
        match ka.cmp(kb) {
            std::cmp::Ordering::Less => {
                ia.next();
            }
            std::cmp::Ordering::Greater => {
                ib.next();
            }
            std::cmp::Ordering::Equal => {
                sum += *wa * *wb;
                ia.next();
                ib.next();
            }
        }
    }
    sum
}

/// Cosine similarity; zero when either vector is zero.
pub fn cosine(a: &SparseVec, b: &SparseVec) -> f64 {
    let (na, nb) = (norm(a), norm(b));
    if na == 0.0 || nb == 0.0 {
        return 0.0;
    }
    dot(a, b) / (na * nb)
}

/// Collapses every whitespace run to one space and trims.
pub fn normalize_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tokenizer_lowercases_and_drops_stopwords() {
        assert_eq!(tokenize("Built the PARSER, at Acme-2!"), vec!["built", "parser", "acme", "2"]);
        assert!(tokenize("the and of").is_empty());
        assert_eq!(tokenize("a b c"), vec!["a", "b", "c"]);
    }

    #[test]
    fn stopwords_are_unique() {
        let set: BTreeSet<_> = STOPWORDS.iter().collect();
        assert_eq!(set.len(), 50);
    }

    #[test]
    fn idf_by_hand() {
        // N = 2, df = 2 -> ln(1) + 1
        assert_eq!(smoothed_idf(2, 2), 1.0);
        assert!((smoothed_idf(2, 1) - (1.5f64.ln() + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn cosine_edges() {
        let a: SparseVec = [("x".to_string(), 2.0)].into_iter().collect();
        let b: SparseVec = [("y".to_string(), 1.0)].into_iter().collect();
        assert_eq!(cosine(&a, &b), 0.0);
        assert!((cosine(&a, &a) - 1.0).abs() < 1e-12);
        assert_eq!(cosine(&a, &SparseVec::new()), 0.0);
    }
}
