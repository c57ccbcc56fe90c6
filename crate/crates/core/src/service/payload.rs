//! Response payloads shared by the HTTP API and the CLI's `--json` output.

use std::collections::BTreeMap;
use std::str::FromStr;

use percent_encoding::{utf8_percent_encode, AsciiSet, NON_ALPHANUMERIC};
use serde::{Deserialize, Serialize};

use crate::analytics::{ReviewCandidate, ReviewCategory};
use crate::annotator::{annotate_with, LexiconModel, PredictedSpan, Thresholds};
use crate::error::{Error, Result};
use crate::index::{Page, Snapshot, Totals, TriggerIndex, MAX_PAGE_SIZE};
use crate::model::normalize_trigger;

/// Serialization used for every JSON body and `--json` output.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    Ok(serde_json::to_string(value)?)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub name: String,
    pub domain: String,
    pub totals: Totals,
}

pub fn dataset_summary(name: &str, snapshot: &Snapshot) -> DatasetSummary {
    DatasetSummary {
        name: name.to_owned(),
        domain: snapshot.corpus.domain.clone(),
        totals: snapshot.index.totals,
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EventSort {
    Count,
    Name,
}

impl FromStr for EventSort {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "count" => Ok(EventSort::Count),
            "name" => Ok(EventSort::Name),
            other => Err(Error::InvalidArgument(format!("sort must be count or name, got {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventSummary {
    pub name: String,
    pub type_id: u32,
    pub mention_count: usize,
    pub distinct_triggers: usize,
}

pub fn event_summaries(index: &TriggerIndex, sort: EventSort, page: usize, size: usize) -> Result<Page<EventSummary>> {
    let mut all: Vec<EventSummary> = index
        .by_event
        .values()
        .map(|e| EventSummary {
            name: e.event.name.clone(),
            type_id: e.event.type_id.0,
            mention_count: e.mention_count,
            distinct_triggers: e.trigger_counts.len(),
        })
        .collect();
    if sort == EventSort::Count {
        // by_event is name-ordered; the stable sort keeps names ascending on ties
        all.sort_by_key(|e| std::cmp::Reverse(e.mention_count));
    }
    page_of(all, page, size)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriggerSummary {
    pub trigger: String,
    pub per_event_counts: BTreeMap<String, usize>,
    pub negative_count: usize,
    pub positive_total: usize,
    pub total: usize,
}

pub fn trigger_summary(index: &TriggerIndex, word: &str) -> Result<TriggerSummary> {
    let key = normalize_trigger(word).map_err(|_| Error::not_found("trigger", word))?;
    let entry = index.trigger(&key).ok_or_else(|| Error::not_found("trigger", word))?;
    Ok(TriggerSummary {
        trigger: entry.normalized.clone(),
        per_event_counts: entry.per_event_counts.clone(),
        negative_count: entry.negative_count,
        positive_total: entry.positive_total(),
        total: entry.total(),
    })
}

pub fn review_page(
    candidates: &[ReviewCandidate],
    category: Option<ReviewCategory>,
    page: usize,
    size: usize,
) -> Result<Page<ReviewCandidate>> {
    let selected: Vec<ReviewCandidate> = candidates
        .iter()
        .filter(|c| category.is_none_or(|cat| c.category == cat))
        .cloned()
        .collect();
    page_of(selected, page, size)
}

/// Offset pagination over an already ordered list.
pub fn page_of<T>(items: Vec<T>, page: usize, size: usize) -> Result<Page<T>> {
    if page == 0 {
        return Err(Error::InvalidArgument("page must be ≥ 1".into()));
    }
    if !(1..=MAX_PAGE_SIZE).contains(&size) {
        return Err(Error::InvalidArgument(format!("size must be in [1, {MAX_PAGE_SIZE}]")));
    }
    let total = items.len();
    let offset = (page - 1).saturating_mul(size);
    let items = items.into_iter().skip(offset).take(size).collect();
    Ok(Page {
        items,
        page,
        page_size: size,
        total,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkedSpan {
    #[serde(flatten)]
    pub span: PredictedSpan,
    pub trigger_url: String,
    pub event_url: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinkedSentence {
    pub tokens: Vec<String>,
    pub spans: Vec<LinkedSpan>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnnotateResponse {
    pub dataset: String,
    pub thresholds: Thresholds,
    pub sentences: Vec<LinkedSentence>,
}

// Everything except unreserved characters is escaped inside a path segment.
const SEGMENT: &AsciiSet = &NON_ALPHANUMERIC.remove(b'-').remove(b'_').remove(b'.').remove(b'~');

fn segment(s: &str) -> String {
    utf8_percent_encode(s, SEGMENT).to_string()
}

/// Explorer deep link for a trigger page.
pub fn trigger_link(dataset: &str, trigger: &str) -> String {
    format!("/d/{}/trigger/{}", segment(dataset), segment(trigger))
}

/// Explorer deep link for an event page.
pub fn event_link(dataset: &str, event: &str) -> String {
    format!("/d/{}/event/{}", segment(dataset), segment(event))
}

pub fn annotate_payload(dataset: &str, model: &LexiconModel, text: &str, thresholds: Thresholds) -> Result<AnnotateResponse> {
    thresholds.validate()?;
    let annotated = annotate_with(model, text, &thresholds);
    Ok(AnnotateResponse {
        dataset: dataset.to_owned(),
        thresholds,
        sentences: annotated
            .sentences
            .into_iter()
            .map(|s| LinkedSentence {
                tokens: s.tokens,
                spans: s
                    .spans
                    .into_iter()
                    .map(|span| LinkedSpan {
                        trigger_url: trigger_link(dataset, &span.trigger),
                        event_url: event_link(dataset, &span.event),
                        span,
                    })
                    .collect(),
            })
            .collect(),
    })
}
