//! Ingest a MAVEN-format file, index it and look up one trigger.
//!
//!     cargo run --example ingest_and_index [path/to/train.jsonl]

use edx::index::Snapshot;
use edx::ingest::{ingest, Format};

fn main() -> edx::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/maven_sample.jsonl").to_owned());

    let (corpus, stats) = ingest(&path, Format::Maven)?;
    println!(
        "{}: {} documents, {} sentences, {} event mentions, {} negative triggers, {} skipped",
        corpus.name, stats.documents, stats.sentences, stats.event_mentions, stats.negative_mentions, stats.skipped_records
    );

    let snapshot = Snapshot::build(corpus)?;
    let totals = snapshot.index.totals;
    println!(
        "{} candidate triggers, {} positive, {} annotated instances",
        totals.candidate_triggers, totals.positive_triggers, totals.annotated_instances
    );

    if let Some(storm) = snapshot.index.trigger("storm") {
        println!("storm: {:?} + {} negative", storm.per_event_counts, storm.negative_count);
    }

    let out = std::env::temp_dir().join("edx-example-snapshot.json");
    snapshot.save(&out)?;
    println!("snapshot written to {}", out.display());
    Ok(())
}
