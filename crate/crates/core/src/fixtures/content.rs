//! Sampling of synthetic candidate content, shared by both renderers.

use crate::resume::{DateEnd, ExperienceEntry, YearMonth};
use crate::rng::SplitMix64;

use super::words::*;

/// Months are counted from this point when an entry runs to the present.
const REFERENCE_MONTH: i32 = 2024 * 12 + 5;

pub(crate) struct Candidate {
    pub name: String,
    pub headline: String,
    pub location: String,
    pub contacts: Vec<(&'static str, String)>,
    pub summary: Vec<String>,
    pub experiences: Vec<ExperienceEntry>,
    pub education: Vec<ExperienceEntry>,
    pub skills: Vec<String>,
    pub languages: Vec<String>,
    pub certifications: Vec<String>,
    pub honors: Vec<String>,
    pub projects: Vec<String>,
    pub publications: Vec<String>,
    pub other: Option<(String, Vec<String>)>,
}

fn month_index(ym: YearMonth) -> i32 {
    ym.year * 12 + ym.month.map_or(0, |m| m as i32 - 1)
}

fn from_index(i: i32) -> YearMonth {
    YearMonth::new(i.div_euclid(12), Some((i.rem_euclid(12) + 1) as u8))
}

fn duration_text(months: i32) -> String {
    let (y, m) = (months / 12, months % 12);
    let plural = |n: i32, unit: &str| if n == 1 { format!("1 {unit}") } else { format!("{n} {unit}s") };
    match (y, m) {
        (0, m) => plural(m.max(1), "month"),
        (y, 0) => plural(y, "year"),
        (y, m) => format!("{} {}", plural(y, "year"), plural(m, "month")),
    }
}

fn pick_distinct<T: Copy>(rng: &mut SplitMix64, items: &[T], n: usize) -> Vec<T> {
    let mut idx: Vec<usize> = (0..items.len()).collect();
    rng.shuffle(&mut idx);
    idx.into_iter().take(n.min(items.len())).map(|i| items[i]).collect()
}

fn capitalize(s: &str) -> String {
    let mut c = s.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

struct Focus {
    tools: Vec<&'static str>,
    objects: Vec<&'static str>,
}

fn experience_sentence(rng: &mut SplitMix64, t: &Topic, f: &Focus, template: usize) -> String {
    let verb = *rng.pick(&t.verbs);
    let obj = *rng.pick(&f.objects);
    let obj2 = *rng.pick(&f.objects);
    let tool = *rng.pick(&f.tools);
    let tool2 = *rng.pick(&f.tools);
    match template {
        0 => format!("{verb} {obj} with {tool} and {tool2} for {} internal teams.", rng.range(2, 12)),
        1 => format!("{verb} {obj}, cutting turnaround time by {} percent.", rng.range(10, 60)),
        2 => format!("Partnered with stakeholders to improve {obj} using {tool}."),
        3 => format!("Owned day to day work on {obj} and {obj2}."),
        4 => format!("Introduced {tool} to streamline {obj} across the department."),
        _ => format!("{verb} {obj} for a portfolio of {} clients.", rng.range(3, 40)),
    }
}

fn description(rng: &mut SplitMix64, t: &Topic, f: &Focus) -> String {
    let n = rng.range(2, 4);
    let templates = pick_distinct(rng, &[0usize, 1, 2, 3, 4, 5], n);
    templates.into_iter().map(|k| experience_sentence(rng, t, f, k)).collect::<Vec<_>>().join(" ")
}

pub(crate) fn sample_candidate(rng: &mut SplitMix64, index: usize) -> Candidate {
    let first = *rng.pick(&FIRST_NAMES);
    let last = *rng.pick(&LAST_NAMES);
    let topic = rng.pick(&TOPICS);
    let focus = Focus { tools: pick_distinct(rng, &topic.tools, 3), objects: pick_distinct(rng, &topic.objects, 3) };

    // experiences, most recent first
    let n_exp = rng.range(1, 4);
    let mut end = if rng.chance(0.5) {
        None
    } else {
        Some(month_index(YearMonth::new(rng.range(2019, 2023) as i32, Some(rng.range(1, 12) as u8))))
    };
    let mut experiences = Vec::new();
    let companies = pick_distinct(rng, &COMPANIES, n_exp);
    let mut earliest = REFERENCE_MONTH;
    for company in companies {
        let months = rng.range(6, 60) as i32;
        let end_index = end.unwrap_or(REFERENCE_MONTH);
        let start = end_index - months;
        experiences.push(ExperienceEntry {
            title: rng.pick(&topic.roles).to_string(),
            organization: Some(company.to_string()),
            date_from: Some(from_index(start)),
            date_to: Some(end.map_or(DateEnd::Present, |e| DateEnd::Date(from_index(e)))),
            duration_text: Some(duration_text(months)),
            description: description(rng, topic, &focus),
        });
        earliest = start;
        end = Some(start - rng.range(1, 5) as i32);
    }

    let mut education = Vec::new();
    let mut grad = earliest.div_euclid(12);
    let n_edu = rng.range(1, 2);
    let mut schools = pick_distinct(rng, &SCHOOLS, n_edu);
    for k in 0..n_edu {
        let (degree, years) =
            if k == 0 && n_edu == 2 { (DEGREES[1 + 2 * rng.below(2)], 2) } else { (DEGREES[2 * rng.below(2)], 4) };
        let description = if rng.chance(0.5) {
            let clubs = pick_distinct(rng, &CLUBS, 2);
            format!("Activities and societies: {}, {}.", clubs[0], clubs[1])
        } else {
            String::new()
        };
        education.push(ExperienceEntry {
            title: format!("{degree}, {}", topic.degree_field),
            organization: Some(schools.remove(0).to_string()),
            date_from: Some(YearMonth::new(grad - years, None)),
            date_to: Some(DateEnd::Date(YearMonth::new(grad, None))),
            duration_text: None,
            description,
        });
        grad -= years;
    }

    let summary = if rng.chance(0.8) {
        let mut s = vec![format!(
            "{} professional with {} years of experience in {}.",
            rng.pick(&ADJECTIVES),
            rng.range(2, 20),
            topic.field
        )];
        let extra = [
            format!("Passionate about {} and continuous learning.", rng.pick(&focus.objects)),
            "Known for clear communication and a collaborative attitude.".to_string(),
            format!("Currently seeking new opportunities as a {}.", rng.pick(&topic.roles).to_lowercase()),
            format!("Comfortable working with {} in fast moving teams.", rng.pick(&focus.tools)),
        ];
        let k = rng.range(1, 2);
        s.extend(pick_distinct(rng, &[0usize, 1, 2, 3], k).into_iter().map(|i| extra[i].clone()));
        s
    } else {
        Vec::new()
    };

    let mut skills: Vec<String> = focus.tools.iter().map(|s| s.to_string()).collect();
    let target = rng.range(4, 7);
    for t in pick_distinct(rng, &topic.tools, 8) {
        if skills.len() >= target {
            break;
        }
        if !skills.iter().any(|s| s == t) {
            skills.push(t.to_string());
        }
    }
    let n_soft = rng.range(1, 2);
    skills.extend(pick_distinct(rng, &SOFT_SKILLS, n_soft).into_iter().map(String::from));

    let languages = if rng.chance(0.5) {
        let n = rng.range(1, 3);
        pick_distinct(rng, &LANGUAGES, n).into_iter().map(|l| format!("{l} ({})", rng.pick(&PROFICIENCY))).collect()
    } else {
        Vec::new()
    };
    let certifications = if rng.chance(0.4) {
        let n = rng.range(1, 2);
        pick_distinct(rng, &CERTIFICATIONS, n)
            .into_iter()
            .map(|(c, issuer)| format!("{c}, issued by {issuer}, {}", rng.range(2012, 2023)))
            .collect()
    } else {
        Vec::new()
    };
    let honors = if rng.chance(0.3) {
        let n = rng.range(1, 2);
        pick_distinct(rng, &HONORS, n).into_iter().map(|h| format!("{h}, {}", rng.range(2008, 2023))).collect()
    } else {
        Vec::new()
    };
    let projects = if rng.chance(0.3) {
        let n = rng.range(1, 2);
        (0..n)
            .map(|k| {
                let tool = rng.pick(&focus.tools);
                let obj = rng.pick(&focus.objects);
                match (k + rng.below(3)) % 3 {
                    0 => format!(
                        "Open source {tool} toolkit for {obj}, maintained on GitHub with volunteer contributors."
                    ),
                    1 => format!("Side project exploring {obj} with a small community of users."),
                    _ => format!("Weekend hackathon prototype that applied {tool} to {obj}."),
                }
            })
            .collect()
    } else {
        Vec::new()
    };
    let publications = if rng.chance(0.15) {
        vec![format!(
            "Lessons from {}: a practitioner study, Journal of {}, {}",
            rng.pick(&focus.objects),
            topic.field,
            rng.range(2010, 2023)
        )]
    } else {
        Vec::new()
    };
    let other = if rng.chance(0.3) {
        let heading = rng.pick(&OTHER_HEADINGS).to_string();
        let n = rng.range(1, 2);
        let lines = pick_distinct(rng, &INTERESTS, n).into_iter().map(|i| format!("{}.", capitalize(i))).collect();
        Some((heading, lines))
    } else {
        None
    };

    let slug = format!("{first}{last}{index}").to_lowercase();
    let mut contacts = Vec::new();
    if rng.chance(0.9) {
        contacts.push(("email", format!("{}.{}{index}@example.com", first.to_lowercase(), last.to_lowercase())));
    }
    if rng.chance(0.6) {
        contacts.push(("phone", format!("+1 555 0{:02} {:04}", rng.below(100), rng.below(10_000))));
    }
    if rng.chance(0.7) {
        contacts.push(("link", format!("www.linkedin.com/in/{slug}")));
    }

    let latest = &experiences[0];
    Candidate {
        name: format!("{first} {last}"),
        headline: latest.header_line(),
        location: rng.pick(&CITIES).to_string(),
        contacts,
        summary,
        experiences,
        education,
        skills,
        languages,
        certifications,
        honors,
        projects,
        publications,
        other,
    }
}
