//! Small synthetic corpora for demos, docs and tests.

use crate::model::{Corpus, CorpusBuilder, NEGATIVE_SENTINEL};

/// Label counts for one trigger, as `(label, instances)`; the label
/// [`NEGATIVE_SENTINEL`] stands for negative triggers.
pub type TriggerRow = (&'static str, &'static [(&'static str, usize)]);

/// Trigger rows of the MAVEN training data for "crash", "damage" and "storm".
pub const TRIGGER_TABLE: [TriggerRow; 3] = [
    (
        "crash",
        &[("Catastrophe", 174), ("Damaging", 4), ("Motion", 2), ("Attack", 2), (NEGATIVE_SENTINEL, 153)],
    ),
    (
        "damage",
        &[("Damaging", 619), ("Causation", 1), ("Destroying", 1), ("Bodily Harm", 1), (NEGATIVE_SENTINEL, 275)],
    ),
    (
        "storm",
        &[
            ("Catastrophe", 925),
            ("Attack", 14),
            ("Self Motion", 5),
            ("Damaging", 1),
            ("Motion", 1),
            ("Bodily Harm", 1),
            (NEGATIVE_SENTINEL, 771),
        ],
    ),
];

const TOPICS: [&str; 5] = ["hurricane", "military conflict", "civilian attack", "concert tour", "civil conflict"];
const PLACES: [&str; 7] = ["Havana", "Miami", "Tampa", "Mobile", "Galveston", "Norfolk", "Nassau"];
const SENTENCES_PER_DOC: usize = 25;

/// One sentence per instance of [`TRIGGER_TABLE`], grouped into documents of
/// 25 sentences with rotating topics. Some sentences capitalize the trigger.
pub fn trigger_table_corpus() -> Corpus {
    corpus_from_rows("trigger-table", &TRIGGER_TABLE)
}

/// Builds a corpus with exactly the given per-trigger label counts.
pub fn corpus_from_rows(name: &str, rows: &[TriggerRow]) -> Corpus {
    let mut b = CorpusBuilder::new(name, "synthetic");
    let mut doc = None;
    let mut in_doc = 0;
    let mut n = 0usize;
    for (trigger, labels) in rows {
        for (label, count) in labels.iter() {
            for _ in 0..*count {
                if doc.is_none() || in_doc == SENTENCES_PER_DOC {
                    let k = b.document_count();
                    doc = Some(b.document(format!("doc{k:04}"), format!("Synthetic document {k}"), Some(TOPICS[k % TOPICS.len()])));
                    in_doc = 0;
                }
                let d = doc.expect("document opened above");
                let (tokens, at) = sentence_for(trigger, n);
                let s = b.sentence(d, &tokens);
                b.mention(d, s, at, at + trigger.split(' ').count(), label)
                    .expect("generated span is in range");
                in_doc += 1;
                n += 1;
            }
        }
    }
    b.build()
}

fn sentence_for(trigger: &str, n: usize) -> (Vec<String>, usize) {
    let words: Vec<String> = trigger.split(' ').map(str::to_owned).collect();
    let mut tokens = Vec::new();
    let at = if n.is_multiple_of(7) {
        let mut first = words.clone();
        let mut chars = first[0].chars();
        if let Some(c) = chars.next() {
            first[0] = c.to_uppercase().chain(chars).collect();
        }
        tokens.extend(first);
        tokens.extend(["was", "reported", "near"].map(String::from));
        0
    } else {
        tokens.extend(["Reports", "said", "the"].map(String::from));
        tokens.extend(words);
        tokens.push("reached".to_owned());
        3
    };
    tokens.push(PLACES[n % PLACES.len()].to_owned());
    tokens.push(".".into());
    (tokens, at)
}
