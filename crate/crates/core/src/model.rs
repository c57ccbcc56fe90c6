//! Unified span-annotated corpus model.
//!
//! A [`Corpus`] is a list of documents; each document owns its tokenized
//! sentences and the trigger mentions annotated over them. Mentions are
//! token-indexed half-open spans carrying either a declared event type or the
//! reserved [`TypeId::NEGATIVE`] label for candidate triggers that evoke no
//! event.
//!
//! Values are plain data. Nothing here mutates after construction, so a
//! corpus can be shared freely between readers.

use std::collections::{HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Display name of the negative label.
pub const NEGATIVE_NAME: &str = "Negative Trigger";

/// Token used for the negative label in wire formats and query filters.
pub const NEGATIVE_SENTINEL: &str = "NEGATIVE";

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct TypeId(pub u32);

impl TypeId {
    pub const NEGATIVE: TypeId = TypeId(0);

    pub fn is_negative(self) -> bool {
        self == TypeId::NEGATIVE
    }
}

impl fmt::Display for TypeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EventType {
    pub type_id: TypeId,
    pub name: String,
}

impl EventType {
    pub fn new(type_id: u32, name: impl Into<String>) -> Self {
        EventType {
            type_id: TypeId(type_id),
            name: name.into(),
        }
    }

    /// The reserved negative label. Never declared by a corpus.
    pub fn negative() -> Self {
        EventType::new(0, NEGATIVE_NAME)
    }
}

/// Half-open token interval `[start, end)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end.saturating_sub(self.start)
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn overlaps(&self, other: &Span) -> bool {
        self.start < other.end && other.start < self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{})", self.start, self.end)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sentence {
    pub doc_id: String,
    pub sent_idx: usize,
    pub tokens: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mention {
    pub mention_id: String,
    pub doc_id: String,
    pub sent_idx: usize,
    pub span: Span,
    pub surface: String,
    pub normalized: String,
    pub label: TypeId,
}

impl Mention {
    /// Builds a mention over `tokens`, deriving `surface` and `normalized`.
    pub fn from_tokens(
        mention_id: impl Into<String>,
        doc_id: impl Into<String>,
        sent_idx: usize,
        span: Span,
        tokens: &[String],
        label: TypeId,
    ) -> Result<Mention> {
        if span.start >= span.end {
            return Err(Error::InvalidArgument(format!("span start ≥ end: {span}")));
        }
        if span.end > tokens.len() {
            return Err(Error::InvalidArgument(format!(
                "span {span} exceeds sentence length {}",
                tokens.len()
            )));
        }
        let surface = tokens[span.start..span.end].join(" ");
        let normalized = normalize_trigger(&surface)?;
        Ok(Mention {
            mention_id: mention_id.into(),
            doc_id: doc_id.into(),
            sent_idx,
            span,
            surface,
            normalized,
            label,
        })
    }

    pub fn is_negative(&self) -> bool {
        self.label.is_negative()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub doc_id: String,
    pub title: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub topic: Option<String>,
    pub sentences: Vec<Sentence>,
    pub mentions: Vec<Mention>,
}

impl Document {
    pub fn sentence(&self, sent_idx: usize) -> Option<&Sentence> {
        self.sentences.get(sent_idx)
    }

    /// Mentions anchored in sentence `sent_idx`, in stored order.
    pub fn mentions_in(&self, sent_idx: usize) -> impl Iterator<Item = &Mention> {
        self.mentions.iter().filter(move |m| m.sent_idx == sent_idx)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub name: String,
    pub domain: String,
    pub event_types: Vec<EventType>,
    pub documents: Vec<Document>,
}

impl Corpus {
    pub fn event_type(&self, id: TypeId) -> Option<&EventType> {
        self.event_types.iter().find(|e| e.type_id == id)
    }

    pub fn event_by_name(&self, name: &str) -> Option<&EventType> {
        self.event_types.iter().find(|e| e.name == name)
    }

    /// Display name for a mention label; `None` for undeclared ids.
    pub fn label_name(&self, id: TypeId) -> Option<&str> {
        if id.is_negative() {
            Some(NEGATIVE_NAME)
        } else {
            self.event_type(id).map(|e| e.name.as_str())
        }
    }

    pub fn mentions(&self) -> impl Iterator<Item = &Mention> {
        self.documents.iter().flat_map(|d| d.mentions.iter())
    }

    pub fn sentence_count(&self) -> usize {
        self.documents.iter().map(|d| d.sentences.len()).sum()
    }
}

/// Canonical trigger key: lowercased, whitespace runs collapsed to one
/// space, trimmed. Inflections stay distinct ("buildings" ≠ "building").
pub fn normalize_trigger(surface: &str) -> Result<String> {
    let lowered = surface.to_lowercase();
    let normalized = lowered.split_whitespace().collect::<Vec<_>>().join(" ");
    if normalized.is_empty() {
        return Err(Error::InvalidArgument(
            "trigger surface must be non-empty".to_string(),
        ));
    }
    Ok(normalized)
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    ReservedTypeId,
    ReservedTypeName,
    DuplicateTypeId,
    DuplicateTypeName,
    DuplicateDocId,
    EmptySentence,
    EmptyToken,
    SentenceIndex,
    SentenceDocMismatch,
    MentionDocMismatch,
    UnknownSentence,
    SpanOrder,
    SpanOutOfRange,
    SurfaceMismatch,
    NormalizedMismatch,
    DuplicateMention,
    DuplicateMentionId,
    UnknownEventType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub doc_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mention_id: Option<String>,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.doc_id, &self.mention_id) {
            (Some(d), Some(m)) => write!(f, "{d}/{m}: {}", self.message),
            (Some(d), None) => write!(f, "{d}: {}", self.message),
            _ => f.write_str(&self.message),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn into_result(self) -> Result<()> {
        if self.is_empty() {
            Ok(())
        } else {
            Err(Error::InvalidCorpus(self))
        }
    }

    fn push(
        &mut self,
        kind: ViolationKind,
        doc_id: Option<&str>,
        mention_id: Option<&str>,
        message: impl Into<String>,
    ) {
        self.violations.push(Violation {
            kind,
            doc_id: doc_id.map(str::to_owned),
            mention_id: mention_id.map(str::to_owned),
            message: message.into(),
        });
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} violation(s)", self.violations.len())?;
        for v in self.violations.iter().take(5) {
            write!(f, "; {v}")?;
        }
        Ok(())
    }
}

/// Reports every invariant violation in `corpus`. Never mutates.
pub fn validate(corpus: &Corpus) -> ValidationReport {
    let mut report = ValidationReport::default();

    let mut ids = HashSet::new();
    let mut names = HashSet::new();
    for et in &corpus.event_types {
        if et.type_id.is_negative() {
            report.push(
                ViolationKind::ReservedTypeId,
                None,
                None,
                format!("event type {:?} uses reserved type id 0", et.name),
            );
        }
        if et.name == NEGATIVE_NAME || et.name == NEGATIVE_SENTINEL {
            report.push(
                ViolationKind::ReservedTypeName,
                None,
                None,
                format!("event type name {:?} is reserved", et.name),
            );
        }
        if !ids.insert(et.type_id) {
            report.push(
                ViolationKind::DuplicateTypeId,
                None,
                None,
                format!("duplicate type id {}", et.type_id),
            );
        }
        if !names.insert(et.name.as_str()) {
            report.push(
                ViolationKind::DuplicateTypeName,
                None,
                None,
                format!("duplicate type name {:?}", et.name),
            );
        }
    }

    let mut doc_ids = HashSet::new();
    for doc in &corpus.documents {
        if !doc_ids.insert(doc.doc_id.as_str()) {
            report.push(
                ViolationKind::DuplicateDocId,
                Some(&doc.doc_id),
                None,
                "duplicate doc_id",
            );
        }
        validate_document_into(doc, &ids, &mut report);
    }
    report
}

/// Document-level checks against a set of declared type ids.
pub(crate) fn validate_document(doc: &Document, declared: &HashSet<TypeId>) -> ValidationReport {
    let mut report = ValidationReport::default();
    validate_document_into(doc, declared, &mut report);
    report
}

fn validate_document_into(doc: &Document, declared: &HashSet<TypeId>, report: &mut ValidationReport) {
    let d = Some(doc.doc_id.as_str());
    for (pos, sent) in doc.sentences.iter().enumerate() {
        if sent.sent_idx != pos {
            report.push(
                ViolationKind::SentenceIndex,
                d,
                None,
                format!("sentence at position {pos} has sent_idx {}", sent.sent_idx),
            );
        }
        if sent.doc_id != doc.doc_id {
            report.push(
                ViolationKind::SentenceDocMismatch,
                d,
                None,
                format!("sentence {pos} belongs to {:?}", sent.doc_id),
            );
        }
        if sent.tokens.is_empty() {
            report.push(ViolationKind::EmptySentence, d, None, format!("sentence {pos} has no tokens"));
        }
        if sent.tokens.iter().any(|t| t.is_empty()) {
            report.push(ViolationKind::EmptyToken, d, None, format!("sentence {pos} has an empty token"));
        }
    }

    let mut seen_ids = HashSet::new();
    let mut seen: HashMap<(usize, Span, TypeId), &str> = HashMap::new();
    for m in &doc.mentions {
        let mid = Some(m.mention_id.as_str());
        if !seen_ids.insert(m.mention_id.as_str()) {
            report.push(ViolationKind::DuplicateMentionId, d, mid, "duplicate mention id");
        }
        if m.doc_id != doc.doc_id {
            report.push(
                ViolationKind::MentionDocMismatch,
                d,
                mid,
                format!("mention refers to document {:?}", m.doc_id),
            );
        }
        if !m.label.is_negative() && !declared.contains(&m.label) {
            report.push(
                ViolationKind::UnknownEventType,
                d,
                mid,
                format!("unknown event type {}", m.label),
            );
        }
        if m.span.start >= m.span.end {
            report.push(ViolationKind::SpanOrder, d, mid, format!("span start ≥ end: {}", m.span));
            continue;
        }
        let Some(sent) = doc.sentence(m.sent_idx) else {
            report.push(
                ViolationKind::UnknownSentence,
                d,
                mid,
                format!("sentence {} does not exist", m.sent_idx),
            );
            continue;
        };
        if m.span.end > sent.tokens.len() {
            report.push(
                ViolationKind::SpanOutOfRange,
                d,
                mid,
                format!("span {} exceeds sentence length {}", m.span, sent.tokens.len()),
            );
            continue;
        }
        let surface = sent.tokens[m.span.start..m.span.end].join(" ");
        if m.surface != surface {
            report.push(
                ViolationKind::SurfaceMismatch,
                d,
                mid,
                format!("surface {:?} does not match tokens {:?}", m.surface, surface),
            );
        }
        match normalize_trigger(&m.surface) {
            Ok(n) if n == m.normalized => {}
            _ => report.push(
                ViolationKind::NormalizedMismatch,
                d,
                mid,
                format!("normalized form {:?} does not match surface {:?}", m.normalized, m.surface),
            ),
        }
        if seen.insert((m.sent_idx, m.span, m.label), &m.mention_id).is_some() {
            report.push(
                ViolationKind::DuplicateMention,
                d,
                mid,
                format!("duplicate (span, label) {} in sentence {}", m.span, m.sent_idx),
            );
        }
    }
}

/// Incremental builder that keeps derived fields consistent.
#[derive(Debug)]
pub struct CorpusBuilder {
    corpus: Corpus,
}

impl CorpusBuilder {
    pub fn new(name: impl Into<String>, domain: impl Into<String>) -> Self {
        CorpusBuilder {
            corpus: Corpus {
                name: name.into(),
                domain: domain.into(),
                event_types: Vec::new(),
                documents: Vec::new(),
            },
        }
    }

    /// Declares `name` if new, assigning the next free type id.
    pub fn event_type(&mut self, name: &str) -> TypeId {
        if let Some(et) = self.corpus.event_by_name(name) {
            return et.type_id;
        }
        let next = self
            .corpus
            .event_types
            .iter()
            .map(|e| e.type_id.0)
            .max()
            .unwrap_or(0)
            + 1;
        self.corpus.event_types.push(EventType::new(next, name));
        TypeId(next)
    }

    pub fn document(&mut self, doc_id: impl Into<String>, title: impl Into<String>, topic: Option<&str>) -> usize {
        self.corpus.documents.push(Document {
            doc_id: doc_id.into(),
            title: title.into(),
            topic: topic.map(str::to_owned),
            sentences: Vec::new(),
            mentions: Vec::new(),
        });
        self.corpus.documents.len() - 1
    }

    /// Appends a sentence to document `doc`, returning its index.
    pub fn sentence<S: AsRef<str>>(&mut self, doc: usize, tokens: &[S]) -> usize {
        let d = &mut self.corpus.documents[doc];
        let sent_idx = d.sentences.len();
        d.sentences.push(Sentence {
            doc_id: d.doc_id.clone(),
            sent_idx,
            tokens: tokens.iter().map(|t| t.as_ref().to_owned()).collect(),
        });
        sent_idx
    }

    /// Adds a mention; `label` is an event name or [`NEGATIVE_SENTINEL`].
    pub fn mention(&mut self, doc: usize, sent_idx: usize, start: usize, end: usize, label: &str) -> Result<&Mention> {
        let label = if label == NEGATIVE_SENTINEL {
            TypeId::NEGATIVE
        } else {
            self.event_type(label)
        };
        let d = &mut self.corpus.documents[doc];
        let sent = d
            .sentences
            .get(sent_idx)
            .ok_or_else(|| Error::InvalidArgument(format!("no sentence {sent_idx} in {}", d.doc_id)))?;
        let mention_id = format!("{}-m{}", d.doc_id, d.mentions.len());
        let m = Mention::from_tokens(mention_id, d.doc_id.clone(), sent_idx, Span::new(start, end), &sent.tokens, label)?;
        d.mentions.push(m);
        Ok(d.mentions.last().expect("just pushed"))
    }

    pub fn document_count(&self) -> usize {
        self.corpus.documents.len()
    }

    pub fn build(self) -> Corpus {
        self.corpus
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tiny() -> Corpus {
        let mut b = CorpusBuilder::new("tiny", "test");
        let d = b.document("d1", "Doc", None);
        let s = b.sentence(d, &["The", "storm", "hit", "."]);
        b.mention(d, s, 1, 2, "Catastrophe").unwrap();
        b.mention(d, s, 2, 3, NEGATIVE_SENTINEL).unwrap();
        b.build()
    }

    #[test]
    fn well_formed_corpus_is_valid() {
        assert!(validate(&tiny()).is_empty());
    }

    #[test]
    fn inverted_span_is_reported() {
        let mut c = tiny();
        c.documents[0].mentions[0].span = Span::new(3, 2);
        let r = validate(&c);
        assert_eq!(r.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::SpanOrder);
        assert!(r.violations[0].message.contains("span start ≥ end"));
        assert_eq!(r.violations[0].mention_id.as_deref(), Some("d1-m0"));
    }

    #[test]
    fn undeclared_type_is_reported() {
        let mut c = tiny();
        c.documents[0].mentions[0].label = TypeId(999);
        let r = validate(&c);
        assert_eq!(r.len(), 1);
        assert_eq!(r.violations[0].kind, ViolationKind::UnknownEventType);
        assert!(r.violations[0].message.contains("unknown event type"));
    }

    #[test]
    fn surface_and_duplicates_are_checked() {
        let mut c = tiny();
        c.documents[0].mentions[0].surface = "Storm!".into();
        let dup = c.documents[0].mentions[1].clone();
        c.documents[0].mentions.push(Mention {
            mention_id: "other".into(),
            ..dup
        });
        let kinds: Vec<_> = validate(&c).violations.iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::SurfaceMismatch));
        assert!(kinds.contains(&ViolationKind::DuplicateMention));
    }

    #[test]
    fn reserved_and_duplicate_types() {
        let mut c = tiny();
        c.event_types.push(EventType::new(0, "Zero"));
        c.event_types.push(EventType::new(1, "Catastrophe"));
        let kinds: Vec<_> = validate(&c).violations.iter().map(|v| v.kind).collect();
        assert!(kinds.contains(&ViolationKind::ReservedTypeId));
        assert!(kinds.contains(&ViolationKind::DuplicateTypeId));
        assert!(kinds.contains(&ViolationKind::DuplicateTypeName));
    }

    #[test]
    fn missing_sentence_and_bad_range() {
        let mut c = tiny();
        c.documents[0].mentions[0].sent_idx = 4;
        c.documents[0].mentions[1].span = Span::new(2, 9);
        let kinds: Vec<_> = validate(&c).violations.iter().map(|v| v.kind).collect();
        assert_eq!(kinds, vec![ViolationKind::UnknownSentence, ViolationKind::SpanOutOfRange]);
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(normalize_trigger("Storm").unwrap(), "storm");
        assert_eq!(normalize_trigger("Set  Up").unwrap(), "set up");
        assert_eq!(normalize_trigger("buildings").unwrap(), "buildings");
        assert!(matches!(normalize_trigger(""), Err(Error::InvalidArgument(_))));
        assert!(matches!(normalize_trigger("  \t"), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn multi_token_mention_surface() {
        let toks: Vec<String> = ["They", "Set", "up", "camp"].iter().map(|s| s.to_string()).collect();
        let m = Mention::from_tokens("m", "d", 0, Span::new(1, 3), &toks, TypeId(1)).unwrap();
        assert_eq!(m.surface, "Set up");
        assert_eq!(m.normalized, "set up");
        assert_eq!(m.span.len(), 2);
    }

    proptest::proptest! {
        #[test]
        fn normalize_is_idempotent(s in "\\PC{1,24}") {
            if let Ok(once) = normalize_trigger(&s) {
                proptest::prop_assert_eq!(normalize_trigger(&once).unwrap(), once);
            }
        }
    }
}
