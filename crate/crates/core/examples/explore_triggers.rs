//! Browse the index the way the explorer UI does: an event's top triggers,
//! then the sentences behind one trigger, filtered to a single event.

use edx::fixtures::trigger_table_corpus;
use edx::index::{build_index, instances_for_trigger, top_triggers, LabelFilter, SpanKind};

fn main() -> edx::Result<()> {
    let corpus = trigger_table_corpus();
    let index = build_index(&corpus)?;

    println!("Top triggers of Catastrophe:");
    for t in top_triggers(&index, "Catastrophe", 10)? {
        println!("  {:<8} {}", t.trigger, t.count);
    }

    let all = instances_for_trigger(&index, &corpus, "storm", None, 1, 5)?;
    println!("\n\"storm\" appears in {} annotated sentences", all.total);

    let attack = LabelFilter::Event("Attack".into());
    let page = instances_for_trigger(&index, &corpus, "storm", Some(&attack), 1, 3)?;
    println!("{} of them are labelled Attack; first {}:", page.total, page.items.len());
    for inst in &page.items {
        let marked: Vec<String> = inst
            .tokens
            .iter()
            .enumerate()
            .map(|(i, tok)| match inst.spans.iter().find(|s| s.start == i) {
                Some(s) if s.kind == SpanKind::Positive => format!("[{tok}::{}]", s.label),
                Some(_) => format!("[{tok}::-]"),
                None => tok.clone(),
            })
            .collect();
        println!("  {}#{}  {}", inst.doc_id, inst.sent_idx, marked.join(" "));
    }
    Ok(())
}
