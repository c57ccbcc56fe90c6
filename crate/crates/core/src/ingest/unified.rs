//! The unified line-delimited format.
//!
//! Line 1 is a header `{"schema_version", "name", "domain", "event_types"}`;
//! every following line is one document:
//!
//! ```json
//! {"doc_id":"d1","title":"...","topic":"hurricane",
//!  "sentences":[["The","storm","hit","."]],
//!  "mentions":[{"id":"m1","sent":0,"start":1,"end":2,"type_name":"Catastrophe"}]}
//! ```
//!
//! `type_name` is `"NEGATIVE"` for negative triggers. Offsets are
//! sentence-local, half-open token indices.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Header, RawDocument, RawLabel, RawMention};
use crate::error::{Error, Result};
use crate::model::{validate, Corpus, EventType, NEGATIVE_SENTINEL};

pub const UNIFIED_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct HeaderLine {
    schema_version: u32,
    name: String,
    #[serde(default)]
    domain: String,
    #[serde(default)]
    event_types: Vec<EventType>,
}

#[derive(Serialize, Deserialize)]
struct DocLine {
    doc_id: String,
    #[serde(default)]
    title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    topic: Option<String>,
    sentences: Vec<Vec<String>>,
    #[serde(default)]
    mentions: Vec<MentionLine>,
}

#[derive(Serialize, Deserialize)]
struct MentionLine {
    id: String,
    sent: usize,
    start: usize,
    end: usize,
    type_name: String,
}

pub(super) fn parse_header(line: &str) -> std::result::Result<Header, String> {
    let h: HeaderLine = serde_json::from_str(line).map_err(|e| format!("missing or malformed schema_version header: {e}"))?;
    if h.schema_version != UNIFIED_SCHEMA_VERSION {
        return Err(format!(
            "unsupported schema_version {} (expected {UNIFIED_SCHEMA_VERSION})",
            h.schema_version
        ));
    }
    Ok(Header {
        name: h.name,
        domain: h.domain,
        event_types: h.event_types,
    })
}

pub(super) fn parse(line: &str) -> std::result::Result<RawDocument, String> {
    let doc: DocLine = serde_json::from_str(line).map_err(|e| e.to_string())?;
    let mentions = doc
        .mentions
        .into_iter()
        .map(|m| RawMention {
            id: m.id,
            sent: m.sent,
            start: m.start,
            end: m.end,
            label: if m.type_name == NEGATIVE_SENTINEL {
                RawLabel::Negative
            } else {
                RawLabel::Event {
                    name: m.type_name,
                    type_id: None,
                }
            },
        })
        .collect();
    Ok(RawDocument {
        doc_id: doc.doc_id,
        title: doc.title,
        topic: doc.topic,
        sentences: doc.sentences,
        mentions,
        labeled: true,
    })
}

/// Writes `corpus` in the unified format. Returns the number of document
/// records written (the header line is not counted).
pub fn write_unified<W: Write>(corpus: &Corpus, mut out: W) -> Result<usize> {
    validate(corpus).into_result()?;
    let header = HeaderLine {
        schema_version: UNIFIED_SCHEMA_VERSION,
        name: corpus.name.clone(),
        domain: corpus.domain.clone(),
        event_types: corpus.event_types.clone(),
    };
    let io = |e| Error::io("<output>", e);
    serde_json::to_writer(&mut out, &header)?;
    out.write_all(b"\n").map_err(io)?;
    for doc in &corpus.documents {
        let line = DocLine {
            doc_id: doc.doc_id.clone(),
            title: doc.title.clone(),
            topic: doc.topic.clone(),
            sentences: doc.sentences.iter().map(|s| s.tokens.clone()).collect(),
            mentions: doc
                .mentions
                .iter()
                .map(|m| MentionLine {
                    id: m.mention_id.clone(),
                    sent: m.sent_idx,
                    start: m.span.start,
                    end: m.span.end,
                    type_name: if m.is_negative() {
                        NEGATIVE_SENTINEL.to_owned()
                    } else {
                        corpus.label_name(m.label).unwrap_or_default().to_owned()
                    },
                })
                .collect(),
        };
        serde_json::to_writer(&mut out, &line)?;
        out.write_all(b"\n").map_err(io)?;
    }
    out.flush().map_err(io)?;
    Ok(corpus.documents.len())
}

pub fn export_unified(corpus: &Corpus, path: impl AsRef<Path>) -> Result<usize> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_unified(corpus, BufWriter::new(file)).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{ingest, Format};
    use crate::model::CorpusBuilder;

    #[test]
    fn multi_token_trigger_keeps_width() {
        let mut b = CorpusBuilder::new("c", "d");
        let d = b.document("d", "t", None);
        let s = b.sentence(d, &["They", "set", "up", "a", "school"]);
        b.mention(d, s, 1, 3, "Building").unwrap();
        let corpus = b.build();
        let mut buf = Vec::new();
        assert_eq!(write_unified(&corpus, &mut buf).unwrap(), 1);
        let text = String::from_utf8(buf).unwrap();
        let line = text.lines().nth(1).unwrap();
        assert!(line.contains(r#""start":1,"end":3"#), "{line}");
    }

    #[test]
    fn empty_corpus_writes_zero_records() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.jsonl");
        let corpus = CorpusBuilder::new("empty", "x").build();
        assert_eq!(export_unified(&corpus, &path).unwrap(), 0);
        let (back, stats) = ingest(&path, Format::Unified).unwrap();
        assert_eq!(back, corpus);
        assert_eq!(stats.documents, 0);
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let corpus = CorpusBuilder::new("c", "d").build();
        assert!(matches!(
            export_unified(&corpus, "/nonexistent-dir/out.jsonl"),
            Err(Error::Io { .. })
        ));
    }
}
