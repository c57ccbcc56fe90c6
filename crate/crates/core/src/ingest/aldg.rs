//! ALDG as line-delimited JSON, one single-sentence instance per line.
//!
//! ```json
//! {"id": "aldg-1", "tokens": ["He", "attended", "Harvard", "."], "trigger": [1, 2],
//!  "event_type": "Education", "title": "optional", "topic": "optional"}
//! ```
//!
//! `sentence` (a whitespace-tokenized string) may replace `tokens`. The
//! trigger span is half-open.

use serde::Deserialize;

use super::{RawDocument, RawLabel, RawMention};

#[derive(Deserialize)]
struct Record {
    id: String,
    #[serde(default)]
    tokens: Option<Vec<String>>,
    #[serde(default)]
    sentence: Option<String>,
    trigger: (usize, usize),
    event_type: String,
    #[serde(default)]
    title: Option<String>,
    #[serde(default)]
    topic: Option<String>,
}

pub(super) fn parse(line: &str) -> Result<RawDocument, String> {
    let rec: Record = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let tokens = match (rec.tokens, rec.sentence) {
        (Some(t), _) => t,
        (None, Some(s)) => s.split_whitespace().map(str::to_owned).collect(),
        (None, None) => return Err("record has neither tokens nor sentence".into()),
    };
    Ok(RawDocument {
        title: rec.title.unwrap_or_else(|| rec.id.clone()),
        topic: rec.topic,
        sentences: vec![tokens],
        mentions: vec![RawMention {
            id: format!("{}-t0", rec.id),
            sent: 0,
            start: rec.trigger.0,
            end: rec.trigger.1,
            label: RawLabel::Event {
                name: rec.event_type,
                type_id: None,
            },
        }],
        doc_id: rec.id,
        labeled: true,
    })
}
