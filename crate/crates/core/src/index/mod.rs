//! Inverted trigger and event indices over a corpus.
//!
//! [`build_index`] makes one pass over every mention and files it under its
//! normalized trigger and label. Maps are ordered so that equal corpora
//! produce byte-identical snapshots.

mod query;
mod snapshot;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::model::{validate, Corpus, EventType};

pub use query::{
    instances_for_event, instances_for_trigger, top_triggers, LabelFilter, Page, RenderedInstance, RenderedSpan,
    SpanKind, TriggerCount, DEFAULT_TOP_TRIGGERS, MAX_PAGE_SIZE,
};
pub use snapshot::{Snapshot, SNAPSHOT_VERSION};

/// Location of one mention. `doc_pos`/`mention_pos` are positions inside the
/// indexed corpus and make rendering O(1) per reference.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRef {
    pub doc_id: String,
    pub sent_idx: usize,
    pub mention_id: String,
    pub start: usize,
    pub doc_pos: usize,
    pub mention_pos: usize,
}

impl InstanceRef {
    fn sort_key(&self) -> (&str, usize, usize, &str) {
        (&self.doc_id, self.sent_idx, self.start, &self.mention_id)
    }
}

pub(crate) fn sort_refs(refs: &mut [InstanceRef]) {
    refs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceRefs {
    pub events: BTreeMap<String, Vec<InstanceRef>>,
    pub negative: Vec<InstanceRef>,
}

/// One row of the trigger table: how often a normalized trigger carries each
/// label.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriggerEntry {
    pub normalized: String,
    pub per_event_counts: BTreeMap<String, usize>,
    pub negative_count: usize,
    pub instance_refs: InstanceRefs,
}

impl TriggerEntry {
    pub fn positive_total(&self) -> usize {
        self.per_event_counts.values().sum()
    }

    pub fn total(&self) -> usize {
        self.positive_total() + self.negative_count
    }

    pub fn is_positive(&self) -> bool {
        !self.per_event_counts.is_empty()
    }

    /// Most frequent event; ties go to the lexicographically smallest name.
    pub fn top_event(&self) -> Option<(&str, usize)> {
        top_of(&self.per_event_counts)
    }
}

/// Argmax over a count map, smallest key on ties.
pub(crate) fn top_of(counts: &BTreeMap<String, usize>) -> Option<(&str, usize)> {
    let mut best: Option<(&str, usize)> = None;
    // BTreeMap iterates in ascending key order, so a strict `>` keeps the first key on ties.
    for (name, &count) in counts {
        if best.is_none_or(|(_, c)| count > c) {
            best = Some((name, count));
        }
    }
    best
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EventEntry {
    pub event: EventType,
    pub mention_count: usize,
    pub trigger_counts: BTreeMap<String, usize>,
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub candidate_triggers: usize,
    pub positive_triggers: usize,
    pub annotated_instances: usize,
    pub negative_instances: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriggerIndex {
    pub corpus_ref: String,
    pub by_trigger: BTreeMap<String, TriggerEntry>,
    /// Every declared event type, including ones without mentions.
    pub by_event: BTreeMap<String, EventEntry>,
    pub totals: Totals,
}

impl TriggerIndex {
    pub fn trigger(&self, normalized: &str) -> Option<&TriggerEntry> {
        self.by_trigger.get(normalized)
    }

    pub fn event(&self, name: &str) -> Option<&EventEntry> {
        self.by_event.get(name)
    }

    pub fn is_empty(&self) -> bool {
        self.by_trigger.is_empty()
    }
}

/// Builds the trigger and event indices. Fails only on an invalid corpus.
pub fn build_index(corpus: &Corpus) -> Result<TriggerIndex> {
    validate(corpus).into_result()?;

    let mut by_event: BTreeMap<String, EventEntry> = corpus
        .event_types
        .iter()
        .map(|et| {
            (
                et.name.clone(),
                EventEntry {
                    event: et.clone(),
                    mention_count: 0,
                    trigger_counts: BTreeMap::new(),
                },
            )
        })
        .collect();
    let mut by_trigger: BTreeMap<String, TriggerEntry> = BTreeMap::new();

    for (doc_pos, doc) in corpus.documents.iter().enumerate() {
        for (mention_pos, m) in doc.mentions.iter().enumerate() {
            let entry = by_trigger.entry(m.normalized.clone()).or_insert_with(|| TriggerEntry {
                normalized: m.normalized.clone(),
                per_event_counts: BTreeMap::new(),
                negative_count: 0,
                instance_refs: InstanceRefs::default(),
            });
            let r = InstanceRef {
                doc_id: doc.doc_id.clone(),
                sent_idx: m.sent_idx,
                mention_id: m.mention_id.clone(),
                start: m.span.start,
                doc_pos,
                mention_pos,
            };
            if m.is_negative() {
                entry.negative_count += 1;
                entry.instance_refs.negative.push(r);
            } else {
                // validated above: every positive label is declared
                let name = corpus.label_name(m.label).expect("declared label");
                *entry.per_event_counts.entry(name.to_owned()).or_insert(0) += 1;
                entry.instance_refs.events.entry(name.to_owned()).or_default().push(r);
                let ev = by_event.get_mut(name).expect("declared event");
                ev.mention_count += 1;
                *ev.trigger_counts.entry(m.normalized.clone()).or_insert(0) += 1;
            }
        }
    }

    let mut totals = Totals {
        candidate_triggers: by_trigger.len(),
        ..Totals::default()
    };
    for entry in by_trigger.values_mut() {
        for refs in entry.instance_refs.events.values_mut() {
            sort_refs(refs);
        }
        sort_refs(&mut entry.instance_refs.negative);
        if entry.is_positive() {
            totals.positive_triggers += 1;
        }
        totals.annotated_instances += entry.positive_total();
        totals.negative_instances += entry.negative_count;
    }

    Ok(TriggerIndex {
        corpus_ref: corpus.name.clone(),
        by_trigger,
        by_event,
        totals,
    })
}
