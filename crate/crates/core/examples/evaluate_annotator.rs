use edx::annotator::{evaluate, train_lexicon, Thresholds};
use edx::index::build_index;
use edx::ingest::{ingest, Format};

/// Scores the lexicon baseline on its own training data across a few
/// threshold settings.
fn main() -> edx::Result<()> {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/maven_sample.jsonl");
    let (corpus, _) = ingest(path, Format::Maven)?;
    let index = build_index(&corpus)?;

    println!("{:>7} {:>9}  {:>6} {:>6} {:>6}", "tau_neg", "tau_event", "P", "R", "F1");
    for (tau_neg, tau_event) in [(0.0, 0.0), (0.5, 0.5), (0.8, 0.5), (0.5, 0.9)] {
        let model = train_lexicon(&index, Thresholds { tau_neg, tau_event })?;
        let m = evaluate(&model, &corpus)?.micro;
        println!("{tau_neg:>7} {tau_event:>9}  {:>6.3} {:>6.3} {:>6.3}", m.precision, m.recall, m.f1);
    }
    Ok(())
}
