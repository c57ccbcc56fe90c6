//! MAVEN release layout: one document per line.
//!
//! ```json
//! {"id": "...", "title": "...",
//!  "content": [{"sentence": "...", "tokens": ["..."]}],
//!  "events": [{"id": "...", "type": "Attack", "type_id": 4,
//!              "mention": [{"id": "...", "trigger_word": "...", "sent_id": 0, "offset": [8, 9]}]}],
//!  "negative_triggers": [{"id": "...", "trigger_word": "...", "sent_id": 0, "offset": [1, 2]}]}
//! ```
//!
//! Offsets are sentence-local and half-open. Test-split documents carry
//! `candidates` instead of `events`/`negative_triggers`; they are ingested
//! without mentions. An optional `topic` string is kept when present.

use serde::Deserialize;

use super::{RawDocument, RawLabel, RawMention};

#[derive(Deserialize)]
struct Doc {
    id: String,
    #[serde(default)]
    title: String,
    #[serde(default)]
    topic: Option<String>,
    content: Vec<Content>,
    #[serde(default)]
    events: Option<Vec<Event>>,
    #[serde(default)]
    negative_triggers: Option<Vec<Trigger>>,
}

#[derive(Deserialize)]
struct Content {
    tokens: Vec<String>,
}

#[derive(Deserialize)]
struct Event {
    #[serde(rename = "type")]
    type_name: String,
    type_id: u32,
    mention: Vec<Trigger>,
}

#[derive(Deserialize)]
struct Trigger {
    id: String,
    sent_id: usize,
    offset: (usize, usize),
}

pub(super) fn parse(line: &str) -> Result<RawDocument, String> {
    let doc: Doc = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let labeled = doc.events.is_some() || doc.negative_triggers.is_some();
    let mut mentions = Vec::new();
    for event in doc.events.unwrap_or_default() {
        for t in event.mention {
            mentions.push(RawMention {
                id: t.id,
                sent: t.sent_id,
                start: t.offset.0,
                end: t.offset.1,
                label: RawLabel::Event {
                    name: event.type_name.clone(),
                    type_id: Some(event.type_id),
                },
            });
        }
    }
    for t in doc.negative_triggers.unwrap_or_default() {
        mentions.push(RawMention {
            id: t.id,
            sent: t.sent_id,
            start: t.offset.0,
            end: t.offset.1,
            label: RawLabel::Negative,
        });
    }
    Ok(RawDocument {
        doc_id: doc.id,
        title: doc.title,
        topic: doc.topic,
        sentences: doc.content.into_iter().map(|c| c.tokens).collect(),
        mentions,
        labeled,
    })
}
