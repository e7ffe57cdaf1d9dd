//! Conservation, idempotence and partition properties of reading-order
//! recovery over randomized layouts.

mod common;

use proptest::prelude::*;
use resumekit::generic_reflow::{reflow, segment, ReflowConfig};

use common::{line_texts, multiset, random_layout, relay};

fn squash(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, ..ProptestConfig::default() })]

    #[test]
    fn reflow_conserves_spans(seed in any::<u64>()) {
        let doc = random_layout(seed);
        let lines = reflow(&doc, &ReflowConfig::default());
        let out = multiset(lines.iter().flat_map(|l| l.spans.iter().map(|s| s.text.as_str())));
        let input = multiset(doc.spans.iter().map(|s| s.text.as_str()));
        prop_assert_eq!(out, input);
    }

    #[test]
    fn reflow_is_idempotent(seed in any::<u64>()) {
        let cfg = ReflowConfig::default();
        let doc = random_layout(seed);
        let first = reflow(&doc, &cfg);
        let relaid = relay(&doc, &first);
        let second = reflow(&relaid, &cfg);
        prop_assert_eq!(line_texts(&first), line_texts(&second));
    }

    #[test]
    fn segments_partition_the_lines(seed in any::<u64>()) {
        let cfg = ReflowConfig::default();
        let doc = random_layout(seed);
        let lines = reflow(&doc, &cfg);
        let segments = segment(&lines, &doc, &cfg);
        let joined: Vec<String> = segments
            .iter()
            .flat_map(|s| s.heading_text.iter().cloned().chain(std::iter::once(s.body.clone())))
            .collect();
        prop_assert_eq!(squash(&joined.join(" ")), squash(&line_texts(&lines).join(" ")));
    }
}
