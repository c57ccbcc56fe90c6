//! List annotations that deserve a second look, grouped by category.

use std::collections::BTreeMap;

use edx::analytics::{flag_review_candidates, AnalyticsConfig};
use edx::index::build_index;
use edx::ingest::{ingest, Format};

fn main() -> edx::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/maven_sample.jsonl");
    let (corpus, _) = ingest(path, Format::Maven)?;
    let index = build_index(&corpus)?;

    // the sample is tiny, so lower the cohort floor and dominance ratio
    let config = AnalyticsConfig {
        min_instances: 3,
        dominance_ratio: 3.0,
        ..AnalyticsConfig::default()
    };
    let candidates = flag_review_candidates(&index, &corpus, &config);

    let mut by_category: BTreeMap<_, Vec<_>> = BTreeMap::new();
    for c in &candidates {
        by_category.entry(c.category).or_default().push(c);
    }
    for (category, list) in by_category {
        println!("{category} ({})", list.len());
        for c in list {
            let sentence = &corpus
                .documents
                .iter()
                .find(|d| d.doc_id == c.doc_id)
                .and_then(|d| d.sentence(c.sent_idx))
                .expect("candidates point at real sentences")
                .tokens;
            println!("  {:.3}  {}::{}  \"{}\"", c.score, c.trigger, c.label, sentence.join(" "));
            println!("         {}", c.rationale);
        }
    }
    Ok(())
}
