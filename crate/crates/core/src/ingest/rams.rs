//! RAMS layout. Only event triggers are read; argument links are ignored.
//!
//! ```json
//! {"doc_key": "nw_RC...", "sentences": [["tok", ...], ...],
//!  "evt_triggers": [[69, 69, [["life.die.deathcausedbyviolentevents", 1.0]]]], ...}
//! ```
//!
//! Trigger offsets are document-level and inclusive; they are mapped onto
//! the sentence that contains them.

use serde::Deserialize;

use super::{RawDocument, RawLabel, RawMention};

/// `[first_token, last_token, [[type, probability], ...]]`, inclusive document offsets.
type EvtTrigger = (usize, usize, Vec<(String, f64)>);

#[derive(Deserialize)]
struct Doc {
    doc_key: String,
    #[serde(default)]
    title: Option<String>,
    #[serde(default)]
    topic: Option<String>,
    sentences: Vec<Vec<String>>,
    #[serde(default)]
    evt_triggers: Option<Vec<EvtTrigger>>,
}

pub(super) fn parse(line: &str) -> Result<RawDocument, String> {
    let doc: Doc = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let labeled = doc.evt_triggers.is_some();
    let mut mentions = Vec::new();
    for (i, (start, end, types)) in doc.evt_triggers.unwrap_or_default().into_iter().enumerate() {
        let (name, _) = types
            .into_iter()
            .next()
            .ok_or_else(|| format!("trigger {i} has no event type"))?;
        if end < start {
            return Err(format!("trigger {i}: end {end} before start {start}"));
        }
        let (sent, offset) = locate(&doc.sentences, start).ok_or_else(|| format!("trigger {i}: offset {start} outside document"))?;
        let len = doc.sentences[sent].len();
        if end - offset >= len {
            return Err(format!("trigger {i}: span [{start},{end}] crosses a sentence boundary"));
        }
        mentions.push(RawMention {
            id: format!("{}-t{i}", doc.doc_key),
            sent,
            start: start - offset,
            end: end + 1 - offset,
            label: RawLabel::Event { name, type_id: None },
        });
    }
    Ok(RawDocument {
        title: doc.title.unwrap_or_else(|| doc.doc_key.clone()),
        doc_id: doc.doc_key,
        topic: doc.topic,
        sentences: doc.sentences,
        mentions,
        labeled,
    })
}

/// Sentence index containing document token `pos`, with that sentence's first offset.
fn locate(sentences: &[Vec<String>], pos: usize) -> Option<(usize, usize)> {
    let mut offset = 0;
    for (i, s) in sentences.iter().enumerate() {
        if pos < offset + s.len() {
            return Some((i, offset));
        }
        offset += s.len();
    }
    None
}
