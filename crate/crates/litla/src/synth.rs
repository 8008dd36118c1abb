//! Deterministic synthetic corpus used for the bundled fixture and tests.

use litla_core::record::{AuthorEntry, CitationStatement, Intent, PaperRecord, PubType};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, PartialEq)]
pub struct SynthConfig {
    pub records: usize,
    pub first_year: i32,
    pub last_year: i32,
    pub embedding_dim: usize,
    pub seed: u64,
}

impl Default for SynthConfig {
    fn default() -> Self {
        SynthConfig { records: 200, first_year: 2008, last_year: 2024, embedding_dim: 8, seed: 7 }
    }
}

struct Theme {
    name: &'static str,
    terms: &'static [&'static str],
    venues: &'static [&'static str],
}

const THEMES: [Theme; 4] = [
    Theme {
        name: "graph learning",
        terms: &[
            "graph", "embedding", "node", "neural", "network", "message passing", "link prediction", "attention",
            "contrastive", "heterophily", "oversmoothing", "graph transformer",
        ],
        venues: &["Graph Learning Letters", "Conference on Network Science"],
    },
    Theme {
        name: "program repair",
        terms: &[
            "program", "repair", "patch", "bug", "test suite", "fault localization", "mutation", "static analysis",
            "fuzzing", "overfitting", "neural repair", "vulnerability",
        ],
        venues: &["Software Engineering Journal", "International Conference on Software Testing"],
    },
    Theme {
        name: "language models",
        terms: &[
            "language model", "token", "benchmark", "corpus", "transformer", "pretraining", "code generation",
            "prompt", "instruction tuning", "hallucination", "agent", "retrieval augmentation",
        ],
        venues: &["Computational Linguistics Review", "Conference on Language Systems"],
    },
    Theme {
        name: "bibliometrics",
        terms: &[
            "citation", "bibliometric", "impact", "survey", "scientometrics", "coauthorship", "disruption",
            "altmetrics", "knowledge graph", "topic model", "novelty", "research landscape",
        ],
        venues: &["Journal of Informetrics Studies", "Scientometric Methods Conference"],
    },
];

const COUNTRIES: [&str; 10] = [
    "USA", "Peoples R China", "Germany", "United Kingdom", "Japan", "Canada", "Brazil", "India", "Australia",
    "France",
];

const GIVEN: [&str; 12] = ["Ana", "Wei", "Lukas", "Maya", "Kenji", "Olivia", "Rafael", "Priya", "Liam", "Chloe", "Omar", "Sara"];
const FAMILY: [&str; 10] = ["Silva", "Zhang", "Muller", "Smith", "Tanaka", "Martin", "Costa", "Rao", "Brown", "Dubois"];

struct Author {
    name: String,
    theme: usize,
    address: String,
}

fn authors(rng: &mut ChaCha8Rng) -> Vec<Author> {
    let mut out = Vec::new();
    for (i, family) in FAMILY.iter().enumerate() {
        for (j, given) in GIVEN.iter().enumerate().take(6) {
            let country = COUNTRIES[(i + j / 3) % COUNTRIES.len()];
            out.push(Author {
                name: format!("{given} {family}"),
                theme: (i + j) % THEMES.len(),
                address: format!("Dept {}, University {} {}, {country}", rng.random_range(1..5), family, i % 3),
            });
        }
    }
    out
}

/// Ids of records that [`synthetic_corpus`] marks as extended versions of
/// earlier conference papers.
pub fn extended_version_ids(config: &SynthConfig) -> Vec<String> {
    (0..config.records).filter(|i| i % 97 == 50).map(record_id).collect()
}

fn record_id(i: usize) -> String {
    format!("P{i:04}")
}

/// Generates `config.records` valid records with planted topics, countries,
/// citations and a handful of records that the default exclusion policy rejects.
pub fn synthetic_corpus(config: &SynthConfig) -> Vec<PaperRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let pool = authors(&mut rng);
    let span = (config.last_year - config.first_year + 1).max(1) as usize;
    let dim = config.embedding_dim;
    let centers: Vec<Vec<f64>> = (0..THEMES.len())
        .map(|t| (0..dim).map(|d| if d % THEMES.len() == t { 1.0 } else { 0.0 }).collect())
        .collect();

    // growing yearly output: weight of year y is 1.2^y
    let weights: Vec<f64> = (0..span).map(|y| 1.2f64.powi(y as i32)).collect();
    let total: f64 = weights.iter().sum();
    let mut years = Vec::with_capacity(config.records);
    for (y, w) in weights.iter().enumerate() {
        let n = (w / total * config.records as f64).round() as usize;
        years.extend(std::iter::repeat_n(config.first_year + y as i32, n));
    }
    years.resize(config.records, config.last_year);
    years.sort();

    let extended = extended_version_ids(config);
    let mut records: Vec<PaperRecord> = Vec::with_capacity(config.records);
    let mut cited = vec![0u32; config.records];
    let mut themes_of = Vec::with_capacity(config.records);
    for (i, &year) in years.iter().enumerate() {
        let theme = i % THEMES.len();
        themes_of.push(theme);
        let t = &THEMES[theme];
        // one more term becomes available every `span / terms` years
        let elapsed = (year - config.first_year) as usize;
        let available = (4 + elapsed * (t.terms.len() - 4) / span.max(1)).min(t.terms.len());
        let mut picked: Vec<&str> = t.terms[..available].choose_multiple(&mut rng, 3).copied().collect();
        picked.sort();
        let title = format!("A study of {} for {}", picked[0], picked[1]);
        let abstract_text = format!(
            "We propose a {} approach to {} and {}. Experiments on {} show consistent gains.",
            t.name, picked[0], picked[1], picked[2]
        );
        let members: Vec<&Author> = pool.iter().filter(|a| a.theme == theme).collect();
        let n_authors = rng.random_range(1..=4);
        let mut team: Vec<&Author> = members.choose_multiple(&mut rng, n_authors).copied().collect();
        if rng.random_bool(0.15) {
            team.push(pool.choose(&mut rng).expect("non-empty pool"));
        }
        team.sort_by(|a, b| a.name.cmp(&b.name));
        team.dedup_by(|a, b| a.name == b.name);
        let authors = team
            .iter()
            .map(|a| AuthorEntry { name: a.name.clone(), affiliations: vec![a.address.clone()] })
            .collect();
        let conference = rng.random_bool(0.3);
        let venue = t.venues[usize::from(conference)].to_string();

        // references: earlier-year papers, favouring the same theme and many citations
        let earlier: Vec<usize> = (0..i).filter(|&j| years[j] < year).collect();
        let mut references = Vec::new();
        if !earlier.is_empty() {
            let wanted = rng.random_range(2..=6).min(earlier.len());
            let weight = |j: usize| (1.0 + cited[j] as f64) * if themes_of[j] == theme { 4.0 } else { 1.0 };
            let mut chosen: Vec<usize> = Vec::new();
            while chosen.len() < wanted {
                let total: f64 = earlier.iter().filter(|j| !chosen.contains(j)).map(|&j| weight(j)).sum();
                let mut r = rng.random_range(0.0..total);
                for &j in earlier.iter().filter(|j| !chosen.contains(j)) {
                    r -= weight(j);
                    if r <= 0.0 {
                        chosen.push(j);
                        break;
                    }
                }
            }
            chosen.sort();
            for &j in &chosen {
                cited[j] += 1;
                references.push(record_id(j));
            }
        }
        if rng.random_bool(0.2) {
            references.push(format!("EXT{:03}", rng.random_range(0..50)));
        }

        let citation_statements = (!references.is_empty() && rng.random_bool(0.4)).then(|| {
            references
                .iter()
                .take(2)
                .map(|r| CitationStatement {
                    text: format!("Builds on {r}."),
                    intent: Some(*[Intent::Background, Intent::Method, Intent::Extension, Intent::Comparison]
                        .choose(&mut rng)
                        .expect("non-empty")),
                })
                .collect()
        });

        let embedding = centers[theme].iter().map(|c| c + rng.random_range(-0.05..0.05)).collect();
        let id = record_id(i);
        let (language, page_count, doc_type) = match i % 41 {
            13 => ("German", 10, "article"),
            27 => ("English", 3, "article"),
            35 => ("English", 1, "keynote"),
            _ => ("English", rng.random_range(6..=20), if conference { "proceedings paper" } else { "article" }),
        };
        let doc_type = if extended.contains(&id) { "article" } else { doc_type };
        records.push(PaperRecord {
            title,
            abstract_text,
            authors,
            venue,
            pub_type: if conference { PubType::Conference } else { PubType::Journal },
            author_keywords: picked.iter().take(2).map(|s| s.to_string()).collect(),
            subject_categories: vec![["Computer Science", "Information Science"][theme / 3].to_string()],
            publisher: ["IEEE", "ACM", "Springer"][i % 3].to_string(),
            citation_count: 0,
            page_count,
            references,
            language: language.to_string(),
            doc_type: doc_type.to_string(),
            citation_statements,
            extracted_keywords: vec![picked[2].to_string()],
            embedding: Some(embedding),
            ..PaperRecord::new(id, String::new(), year)
        });
    }
    for (r, c) in records.iter_mut().zip(&cited) {
        r.citation_count = u64::from(*c) + 2;
    }
    records
}
