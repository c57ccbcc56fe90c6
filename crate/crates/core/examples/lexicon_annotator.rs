//! Train the lexicon annotator and watch the negative-share threshold decide
//! whether "storm" is tagged.

use edx::annotator::{annotate_with, train_lexicon, Thresholds};
use edx::fixtures::trigger_table_corpus;
use edx::index::build_index;

fn main() -> edx::Result<()> {
    let index = build_index(&trigger_table_corpus())?;
    let model = train_lexicon(&index, Thresholds::default())?;
    let text = "The storm hits New York. The crash caused heavy damage.";

    for tau_neg in [0.5, 0.6] {
        let thresholds = Thresholds { tau_neg, tau_event: 0.5 };
        println!("tau_neg = {tau_neg}");
        for sentence in annotate_with(&model, text, &thresholds).sentences {
            let tags: Vec<String> = sentence
                .spans
                .iter()
                .map(|s| format!("{} -> {} ({:.3})", s.surface, s.event, s.confidence))
                .collect();
            println!("  {:<40} {}", sentence.tokens.join(" "), tags.join(", "));
        }
    }
    Ok(())
}
