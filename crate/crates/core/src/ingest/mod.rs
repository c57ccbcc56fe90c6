//! Dataset adapters producing validated [`Corpus`] values.
//!
//! Every supported layout is line-delimited JSON. Each adapter turns one
//! line into a [`RawDocument`]; the shared assembly step resolves event type
//! ids, derives mention surfaces from tokens and validates each document.
//! Records that fail any of these steps are skipped and reported in
//! [`IngestStats::skipped`]. More than 10% skipped records fails the whole
//! file with [`Error::FormatMismatch`].

mod aldg;
mod maven;
mod rams;
mod unified;

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::fs::File;
use std::io::{BufRead, BufReader};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{validate_document, Corpus, Document, EventType, Mention, Sentence, Span, TypeId};

pub use unified::{export_unified, write_unified, UNIFIED_SCHEMA_VERSION};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Maven,
    Rams,
    Aldg,
    Unified,
}

impl Format {
    pub const ALL: [Format; 4] = [Format::Maven, Format::Rams, Format::Aldg, Format::Unified];

    pub fn name(self) -> &'static str {
        match self {
            Format::Maven => "maven",
            Format::Rams => "rams",
            Format::Aldg => "aldg",
            Format::Unified => "unified",
        }
    }

    fn default_domain(self) -> &'static str {
        match self {
            Format::Maven | Format::Aldg => "Wikipedia",
            Format::Rams => "News",
            Format::Unified => "",
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Format::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidArgument(format!("unsupported format {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedRecord {
    pub line: usize,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct IngestStats {
    pub documents: usize,
    pub sentences: usize,
    pub event_types: usize,
    /// Positive mentions only.
    pub event_mentions: usize,
    pub negative_mentions: usize,
    /// Documents that carry no annotation lists at all (e.g. unlabeled test splits).
    pub unlabeled_documents: usize,
    pub skipped_records: usize,
    pub skipped: Vec<SkippedRecord>,
}

impl IngestStats {
    fn tally(corpus: &Corpus) -> IngestStats {
        let mut stats = IngestStats {
            documents: corpus.documents.len(),
            sentences: corpus.sentence_count(),
            event_types: corpus.event_types.len(),
            ..IngestStats::default()
        };
        for m in corpus.mentions() {
            if m.is_negative() {
                stats.negative_mentions += 1;
            } else {
                stats.event_mentions += 1;
            }
        }
        stats
    }
}

/// Label as written in a source record.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum RawLabel {
    Negative,
    Event { name: String, type_id: Option<u32> },
}

/// Mention in sentence-local token offsets, half-open.
#[derive(Clone, Debug)]
pub(crate) struct RawMention {
    pub id: String,
    pub sent: usize,
    pub start: usize,
    pub end: usize,
    pub label: RawLabel,
}

#[derive(Clone, Debug)]
pub(crate) struct RawDocument {
    pub doc_id: String,
    pub title: String,
    pub topic: Option<String>,
    pub sentences: Vec<Vec<String>>,
    pub mentions: Vec<RawMention>,
    pub labeled: bool,
}

/// Corpus-level metadata a format may carry in a header line.
pub(crate) struct Header {
    pub name: String,
    pub domain: String,
    pub event_types: Vec<EventType>,
}

/// Reads `path` with the named adapter. The corpus is named after the file stem
/// unless the format carries its own name.
pub fn ingest(path: impl AsRef<Path>, format: Format) -> Result<(Corpus, IngestStats)> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| format.name().to_owned());
    ingest_reader(BufReader::new(file), format, &name).map_err(|e| match e {
        Error::Io { source, .. } => Error::io(path, source),
        other => other,
    })
}

pub fn ingest_reader<R: BufRead>(reader: R, format: Format, name: &str) -> Result<(Corpus, IngestStats)> {
    let mut header: Option<Header> = None;
    let mut parsed: Vec<(usize, RawDocument)> = Vec::new();
    let mut skipped: Vec<SkippedRecord> = Vec::new();
    let mut records = 0usize;

    for (i, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Error::io("<input>", e))?;
        let line_no = i + 1;
        if line.trim().is_empty() {
            continue;
        }
        if format == Format::Unified && header.is_none() && records == 0 && skipped.is_empty() {
            header = Some(unified::parse_header(&line).map_err(|reason| Error::FormatMismatch {
                format: format.name().to_owned(),
                skipped: 0,
                total: 0,
                line: line_no,
                reason,
            })?);
            continue;
        }
        records += 1;
        let result = match format {
            Format::Maven => maven::parse(&line),
            Format::Rams => rams::parse(&line),
            Format::Aldg => aldg::parse(&line),
            Format::Unified => unified::parse(&line),
        };
        match result {
            Ok(doc) => parsed.push((line_no, doc)),
            Err(reason) => skipped.push(SkippedRecord { line: line_no, reason }),
        }
    }

    let (corpus_name, domain, declared) = match header {
        Some(h) => (h.name, h.domain, h.event_types),
        None => (name.to_owned(), format.default_domain().to_owned(), Vec::new()),
    };
    let mut types = TypeTable::new(format, declared);
    types.collect(&mut parsed, &mut skipped);

    let declared_ids: HashSet<TypeId> = types.event_types.iter().map(|e| e.type_id).collect();
    let mut documents = Vec::with_capacity(parsed.len());
    let mut doc_ids = HashSet::new();
    let mut unlabeled = 0;
    for (line_no, raw) in parsed {
        let labeled = raw.labeled;
        match assemble(raw, &types.by_name) {
            Ok(doc) => {
                let report = validate_document(&doc, &declared_ids);
                if !report.is_empty() {
                    skipped.push(SkippedRecord {
                        line: line_no,
                        reason: report.violations[0].to_string(),
                    });
                } else if !doc_ids.insert(doc.doc_id.clone()) {
                    skipped.push(SkippedRecord {
                        line: line_no,
                        reason: format!("duplicate doc_id {:?}", doc.doc_id),
                    });
                } else {
                    if !labeled {
                        unlabeled += 1;
                    }
                    documents.push(doc);
                }
            }
            Err(reason) => skipped.push(SkippedRecord { line: line_no, reason }),
        }
    }

    skipped.sort_by_key(|s| s.line);
    if records > 0 && skipped.len() * 10 > records {
        let first = &skipped[0];
        return Err(Error::FormatMismatch {
            format: format.name().to_owned(),
            skipped: skipped.len(),
            total: records,
            line: first.line,
            reason: first.reason.clone(),
        });
    }

    let corpus = Corpus {
        name: corpus_name,
        domain,
        event_types: types.event_types,
        documents,
    };
    let mut stats = IngestStats::tally(&corpus);
    stats.unlabeled_documents = unlabeled;
    stats.skipped_records = skipped.len();
    stats.skipped = skipped;
    Ok((corpus, stats))
}

/// Resolves event type names to ids for one file.
struct TypeTable {
    format: Format,
    fixed: bool,
    event_types: Vec<EventType>,
    by_name: HashMap<String, TypeId>,
}

impl TypeTable {
    fn new(format: Format, declared: Vec<EventType>) -> Self {
        let by_name = declared.iter().map(|e| (e.name.clone(), e.type_id)).collect();
        TypeTable {
            format,
            fixed: format == Format::Unified,
            event_types: declared,
            by_name,
        }
    }

    fn collect(&mut self, parsed: &mut Vec<(usize, RawDocument)>, skipped: &mut Vec<SkippedRecord>) {
        if self.fixed {
            return;
        }
        if self.format == Format::Maven {
            // Explicit ids: first record to use a name or id wins; conflicting records are skipped.
            let mut by_id: BTreeMap<u32, String> = BTreeMap::new();
            parsed.retain(|(line, doc)| {
                let mut local_ids = by_id.clone();
                let mut local_names = self.by_name.clone();
                for m in &doc.mentions {
                    if let RawLabel::Event { name, type_id: Some(id) } = &m.label {
                        let ok_id = local_ids.get(id).is_none_or(|n| n == name);
                        let ok_name = local_names.get(name).is_none_or(|t| t.0 == *id);
                        if !ok_id || !ok_name || *id == 0 {
                            skipped.push(SkippedRecord {
                                line: *line,
                                reason: format!("event type {name:?} conflicts with type id {id}"),
                            });
                            return false;
                        }
                        local_ids.insert(*id, name.clone());
                        local_names.insert(name.clone(), TypeId(*id));
                    }
                }
                by_id = local_ids;
                self.by_name = local_names;
                true
            });
            self.event_types = by_id.into_iter().map(|(id, name)| EventType::new(id, name)).collect();
        } else {
            let names: BTreeSet<&str> = parsed
                .iter()
                .flat_map(|(_, d)| d.mentions.iter())
                .filter_map(|m| match &m.label {
                    RawLabel::Event { name, .. } => Some(name.as_str()),
                    RawLabel::Negative => None,
                })
                .collect();
            self.event_types = names
                .into_iter()
                .enumerate()
                .map(|(i, n)| EventType::new(i as u32 + 1, n))
                .collect();
            self.by_name = self.event_types.iter().map(|e| (e.name.clone(), e.type_id)).collect();
        }
    }
}

fn assemble(raw: RawDocument, types: &HashMap<String, TypeId>) -> std::result::Result<Document, String> {
    let sentences: Vec<Sentence> = raw
        .sentences
        .into_iter()
        .enumerate()
        .map(|(sent_idx, tokens)| Sentence {
            doc_id: raw.doc_id.clone(),
            sent_idx,
            tokens,
        })
        .collect();
    let mut mentions = Vec::with_capacity(raw.mentions.len());
    for m in raw.mentions {
        let label = match &m.label {
            RawLabel::Negative => TypeId::NEGATIVE,
            RawLabel::Event { name, .. } => *types
                .get(name)
                .ok_or_else(|| format!("mention {}: undeclared event type {name:?}", m.id))?,
        };
        let sent = sentences
            .get(m.sent)
            .ok_or_else(|| format!("mention {}: sentence {} does not exist", m.id, m.sent))?;
        let mention = Mention::from_tokens(
            m.id.clone(),
            raw.doc_id.clone(),
            m.sent,
            Span::new(m.start, m.end),
            &sent.tokens,
            label,
        )
        .map_err(|e| format!("mention {}: {e}", m.id))?;
        mentions.push(mention);
    }
    Ok(Document {
        doc_id: raw.doc_id,
        title: raw.title,
        topic: raw.topic,
        sentences,
        mentions,
    })
}
