//! Lexicon-based event annotator.
//!
//! [`train_lexicon`] copies every positive trigger of an index together with
//! its per-event and negative counts. [`annotate`] tokenizes free text, scans
//! each sentence left to right and takes the longest lexicon trigger starting
//! at each position. A matched trigger predicts its most frequent event only
//! when
//!
//! - its positive share `P / (P + N)` is at least `tau_neg`, and
//! - the confidence `top / P` is at least `tau_event`.
//!
//! Matching does not depend on the thresholds, so raising either threshold
//! can only remove predictions.

mod eval;
mod tokenize;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use chrono::{SecondsFormat, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{top_of, TriggerIndex};

pub use eval::{evaluate, EvalReport, Scores};
pub use tokenize::sentences as tokenize_sentences;

pub const MODEL_SCHEMA_VERSION: u32 = 1;

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Thresholds {
    /// Minimum positive share `P / (P + N)`.
    pub tau_neg: f64,
    /// Minimum share of the top event among positive instances.
    pub tau_event: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            tau_neg: 0.5,
            tau_event: 0.5,
        }
    }
}

impl Thresholds {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("tau_neg", self.tau_neg), ("tau_event", self.tau_event)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidArgument(format!("{name} must be in [0, 1], got {v}")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconEntry {
    pub per_event_counts: BTreeMap<String, usize>,
    pub negative_count: usize,
}

impl LexiconEntry {
    fn positive_total(&self) -> usize {
        self.per_event_counts.values().sum()
    }

    /// Predicted `(event, confidence)`, or `None` when a threshold rejects it.
    pub fn decide(&self, thresholds: &Thresholds) -> Option<(&str, f64)> {
        let p = self.positive_total();
        let (event, top) = top_of(&self.per_event_counts)?;
        let share = p as f64 / (p + self.negative_count) as f64;
        let confidence = top as f64 / p as f64;
        (share >= thresholds.tau_neg && confidence >= thresholds.tau_event).then_some((event, confidence))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LexiconModel {
    pub schema_version: u32,
    pub source_corpus: String,
    pub built_at: String,
    pub thresholds: Thresholds,
    pub max_trigger_tokens: usize,
    pub entries: BTreeMap<String, LexiconEntry>,
}

pub fn train_lexicon(index: &TriggerIndex, thresholds: Thresholds) -> Result<LexiconModel> {
    let built_at = Utc::now().to_rfc3339_opts(SecondsFormat::Secs, true);
    train_lexicon_at(index, thresholds, built_at)
}

/// [`train_lexicon`] with a caller-supplied build timestamp.
pub fn train_lexicon_at(index: &TriggerIndex, thresholds: Thresholds, built_at: impl Into<String>) -> Result<LexiconModel> {
    thresholds.validate()?;
    let entries: BTreeMap<String, LexiconEntry> = index
        .by_trigger
        .values()
        .filter(|e| e.is_positive())
        .map(|e| {
            (
                e.normalized.clone(),
                LexiconEntry {
                    per_event_counts: e.per_event_counts.clone(),
                    negative_count: e.negative_count,
                },
            )
        })
        .collect();
    if entries.is_empty() {
        return Err(Error::InvalidArgument(format!(
            "index {:?} has no positive triggers to learn from",
            index.corpus_ref
        )));
    }
    let max_trigger_tokens = entries.keys().map(|t| t.split(' ').count()).max().unwrap_or(1);
    Ok(LexiconModel {
        schema_version: MODEL_SCHEMA_VERSION,
        source_corpus: index.corpus_ref.clone(),
        built_at: built_at.into(),
        thresholds,
        max_trigger_tokens,
        entries,
    })
}

impl LexiconModel {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<LexiconModel> {
        #[derive(Deserialize)]
        struct Version {
            schema_version: u32,
        }
        let v: Version = serde_json::from_str(s)?;
        if v.schema_version != MODEL_SCHEMA_VERSION {
            return Err(Error::SchemaVersion {
                what: "model",
                found: v.schema_version,
                expected: MODEL_SCHEMA_VERSION,
            });
        }
        let model: LexiconModel = serde_json::from_str(s)?;
        model.thresholds.validate()?;
        Ok(model)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let path = path.as_ref();
        fs::write(path, self.to_json()? + "\n").map_err(|e| Error::io(path, e))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<LexiconModel> {
        let path = path.as_ref();
        let s = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PredictedSpan {
    pub start: usize,
    pub end: usize,
    pub surface: String,
    pub trigger: String,
    pub event: String,
    pub confidence: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedSentence {
    pub tokens: Vec<String>,
    pub spans: Vec<PredictedSpan>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedText {
    pub sentences: Vec<AnnotatedSentence>,
}

impl AnnotatedText {
    pub fn spans(&self) -> impl Iterator<Item = &PredictedSpan> {
        self.sentences.iter().flat_map(|s| s.spans.iter())
    }
}

/// Annotates free text with the model's own thresholds.
pub fn annotate(model: &LexiconModel, text: &str) -> AnnotatedText {
    annotate_with(model, text, &model.thresholds)
}

pub fn annotate_with(model: &LexiconModel, text: &str, thresholds: &Thresholds) -> AnnotatedText {
    AnnotatedText {
        sentences: tokenize::sentences(text)
            .into_iter()
            .map(|tokens| AnnotatedSentence {
                spans: annotate_tokens(model, &tokens, thresholds),
                tokens,
            })
            .collect(),
    }
}

/// Longest-leftmost lexicon matching over pre-tokenized text.
pub fn annotate_tokens<S: AsRef<str>>(model: &LexiconModel, tokens: &[S], thresholds: &Thresholds) -> Vec<PredictedSpan> {
    let lowered: Vec<String> = tokens.iter().map(|t| t.as_ref().to_lowercase()).collect();
    let mut spans = Vec::new();
    let mut i = 0;
    while i < lowered.len() {
        let longest = model.max_trigger_tokens.min(lowered.len() - i);
        let matched = (1..=longest).rev().find_map(|len| {
            let key = lowered[i..i + len].join(" ");
            model.entries.get(&key).map(|entry| (len, key, entry))
        });
        let Some((len, key, entry)) = matched else {
            i += 1;
            continue;
        };
        if let Some((event, confidence)) = entry.decide(thresholds) {
            spans.push(PredictedSpan {
                start: i,
                end: i + len,
                surface: tokens[i..i + len].iter().map(AsRef::as_ref).collect::<Vec<_>>().join(" "),
                trigger: key,
                event: event.to_owned(),
                confidence,
            });
        }
        i += len;
    }
    spans
}
