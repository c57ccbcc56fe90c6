//! Sparsity, label-imbalance and overview reports on a corpus.
//!
//!     cargo run --example quality_reports [k] [ratio]

use edx::analytics::{dominance, overview, sparsity, AnalyticsConfig, TextReport};
use edx::fixtures::trigger_table_corpus;
use edx::index::build_index;

fn main() -> edx::Result<()> {
    let mut args = std::env::args().skip(1);
    let k = args.next().map_or(Ok(20), |a| a.parse()).expect("k must be an integer");
    let ratio = args.next().map_or(Ok(5.0), |a| a.parse()).expect("ratio must be a number");
    let config = AnalyticsConfig {
        min_instances: k,
        dominance_ratio: ratio,
        ..AnalyticsConfig::default()
    };
    config.validate()?;

    let corpus = trigger_table_corpus();
    let index = build_index(&corpus)?;

    println!("{}", sparsity(&index, &config).to_text());
    println!("{}", dominance(&index, &config).to_text());
    print!("{}", overview(&index, &corpus).to_text());
    Ok(())
}
