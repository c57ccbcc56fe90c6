//! Explorer queries: top triggers per event and paginated instance views.

use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{InstanceRef, TriggerIndex};
use crate::error::{Error, Result};
use crate::model::{normalize_trigger, Corpus, NEGATIVE_NAME, NEGATIVE_SENTINEL};

pub const DEFAULT_TOP_TRIGGERS: usize = 10;
pub const MAX_PAGE_SIZE: usize = 200;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriggerCount {
    pub trigger: String,
    pub count: usize,
}

/// The `limit` most frequent triggers of `event`, by descending count then
/// ascending trigger.
pub fn top_triggers(index: &TriggerIndex, event: &str, limit: usize) -> Result<Vec<TriggerCount>> {
    if limit == 0 {
        return Err(Error::InvalidArgument("limit must be ≥ 1".into()));
    }
    let entry = index.event(event).ok_or_else(|| Error::not_found("event", event))?;
    let mut counts: Vec<TriggerCount> = entry
        .trigger_counts
        .iter()
        .map(|(t, &c)| TriggerCount {
            trigger: t.clone(),
            count: c,
        })
        .collect();
    // trigger_counts is already in ascending trigger order; a stable sort keeps it for ties
    counts.sort_by_key(|c| std::cmp::Reverse(c.count));
    counts.truncate(limit);
    Ok(counts)
}

/// Restricts trigger instances to one label.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum LabelFilter {
    Event(String),
    Negative,
}

impl FromStr for LabelFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.is_empty() {
            Err(Error::InvalidArgument("empty event filter".into()))
        } else if s == NEGATIVE_SENTINEL {
            Ok(LabelFilter::Negative)
        } else {
            Ok(LabelFilter::Event(s.to_owned()))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Page<T> {
    pub items: Vec<T>,
    pub page: usize,
    pub page_size: usize,
    pub total: usize,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpanKind {
    Positive,
    Negative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedSpan {
    pub mention_id: String,
    pub start: usize,
    pub end: usize,
    pub label: String,
    pub kind: SpanKind,
    pub is_focus: bool,
}

/// A sentence with every mention in it; the queried mention has `is_focus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RenderedInstance {
    pub doc_id: String,
    pub sent_idx: usize,
    pub focus: String,
    pub tokens: Vec<String>,
    pub spans: Vec<RenderedSpan>,
}

/// Every mention of `event`, ordered by (doc_id, sent_idx, start).
pub fn instances_for_event(
    index: &TriggerIndex,
    corpus: &Corpus,
    event: &str,
    page: usize,
    page_size: usize,
) -> Result<Page<RenderedInstance>> {
    check_paging(page, page_size)?;
    check_corpus(index, corpus)?;
    let entry = index.event(event).ok_or_else(|| Error::not_found("event", event))?;
    let mut refs: Vec<&InstanceRef> = Vec::with_capacity(entry.mention_count);
    for trigger in entry.trigger_counts.keys() {
        if let Some(list) = index.by_trigger.get(trigger).and_then(|t| t.instance_refs.events.get(event)) {
            refs.extend(list.iter());
        }
    }
    paginate(corpus, refs, page, page_size)
}

/// Mentions of `trigger`, optionally restricted to one label.
pub fn instances_for_trigger(
    index: &TriggerIndex,
    corpus: &Corpus,
    trigger: &str,
    filter: Option<&LabelFilter>,
    page: usize,
    page_size: usize,
) -> Result<Page<RenderedInstance>> {
    check_paging(page, page_size)?;
    check_corpus(index, corpus)?;
    let key = normalize_trigger(trigger).map_err(|_| Error::not_found("trigger", trigger))?;
    let entry = index.trigger(&key).ok_or_else(|| Error::not_found("trigger", trigger))?;
    let refs: Vec<&InstanceRef> = match filter {
        None => entry
            .instance_refs
            .events
            .values()
            .flatten()
            .chain(entry.instance_refs.negative.iter())
            .collect(),
        Some(LabelFilter::Negative) => entry.instance_refs.negative.iter().collect(),
        Some(LabelFilter::Event(name)) => {
            if index.event(name).is_none() {
                return Err(Error::not_found("event", name.as_str()));
            }
            entry
                .instance_refs
                .events
                .get(name)
                .map(|v| v.iter().collect())
                .unwrap_or_default()
        }
    };
    paginate(corpus, refs, page, page_size)
}

fn check_paging(page: usize, page_size: usize) -> Result<()> {
    if page == 0 {
        return Err(Error::InvalidArgument("page must be ≥ 1".into()));
    }
    if !(1..=MAX_PAGE_SIZE).contains(&page_size) {
        return Err(Error::InvalidArgument(format!("page_size must be in [1, {MAX_PAGE_SIZE}]")));
    }
    Ok(())
}

fn check_corpus(index: &TriggerIndex, corpus: &Corpus) -> Result<()> {
    if index.corpus_ref != corpus.name {
        return Err(Error::InvalidArgument(format!(
            "index was built from {:?}, not {:?}",
            index.corpus_ref, corpus.name
        )));
    }
    Ok(())
}

fn paginate(corpus: &Corpus, mut refs: Vec<&InstanceRef>, page: usize, page_size: usize) -> Result<Page<RenderedInstance>> {
    let total = refs.len();
    let offset = (page - 1).saturating_mul(page_size);
    let items = if offset >= total {
        Vec::new()
    } else {
        refs.sort_by(|a, b| a.sort_key().cmp(&b.sort_key()));
        refs[offset..total.min(offset + page_size)]
            .iter()
            .map(|r| render(corpus, r))
            .collect::<Result<_>>()?
    };
    Ok(Page {
        items,
        page,
        page_size,
        total,
    })
}

fn render(corpus: &Corpus, r: &InstanceRef) -> Result<RenderedInstance> {
    let stale = || Error::InvalidArgument(format!("index reference {}/{} does not match corpus", r.doc_id, r.mention_id));
    let doc = corpus.documents.get(r.doc_pos).filter(|d| d.doc_id == r.doc_id).ok_or_else(stale)?;
    let sentence = doc.sentence(r.sent_idx).ok_or_else(stale)?;
    let mut spans: Vec<RenderedSpan> = doc
        .mentions_in(r.sent_idx)
        .map(|m| RenderedSpan {
            mention_id: m.mention_id.clone(),
            start: m.span.start,
            end: m.span.end,
            label: corpus.label_name(m.label).unwrap_or(NEGATIVE_NAME).to_owned(),
            kind: if m.is_negative() { SpanKind::Negative } else { SpanKind::Positive },
            is_focus: m.mention_id == r.mention_id,
        })
        .collect();
    spans.sort_by(|a, b| (a.start, a.end, &a.label).cmp(&(b.start, b.end, &b.label)));
    Ok(RenderedInstance {
        doc_id: doc.doc_id.clone(),
        sent_idx: r.sent_idx,
        focus: r.mention_id.clone(),
        tokens: sentence.tokens.clone(),
        spans,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::index::build_index;
    use crate::model::CorpusBuilder;

    fn table() -> (Corpus, TriggerIndex) {
        let c = fixtures::trigger_table_corpus();
        let i = build_index(&c).unwrap();
        (c, i)
    }

    #[test]
    fn catastrophe_top_triggers() {
        let (_, index) = table();
        let top = top_triggers(&index, "Catastrophe", 10).unwrap();
        let pairs: Vec<(&str, usize)> = top.iter().map(|t| (t.trigger.as_str(), t.count)).collect();
        assert_eq!(pairs, vec![("storm", 925), ("crash", 174)]);
        assert_eq!(top_triggers(&index, "Catastrophe", 1).unwrap().len(), 1);
        assert!(matches!(top_triggers(&index, "Nope", 10), Err(Error::NotFound { .. })));
        assert!(matches!(top_triggers(&index, "Catastrophe", 0), Err(Error::InvalidArgument(_))));
    }

    #[test]
    fn ties_break_by_trigger() {
        let mut b = CorpusBuilder::new("tie", "x");
        let d = b.document("d", "t", None);
        for w in ["b", "a", "b", "a", "b", "a"] {
            let s = b.sentence(d, &[w]);
            b.mention(d, s, 0, 1, "E").unwrap();
        }
        let index = build_index(&b.build()).unwrap();
        let top = top_triggers(&index, "E", 10).unwrap();
        assert_eq!(
            top,
            vec![
                TriggerCount { trigger: "a".into(), count: 3 },
                TriggerCount { trigger: "b".into(), count: 3 }
            ]
        );
    }

    #[test]
    fn storm_filters() {
        let (corpus, index) = table();
        let attack = LabelFilter::Event("Attack".into());
        let p = instances_for_trigger(&index, &corpus, "storm", Some(&attack), 1, 200).unwrap();
        assert_eq!(p.total, 14);
        assert_eq!(p.items.len(), 14);
        assert!(p.items.iter().all(|i| i.spans.iter().any(|s| s.is_focus && s.label == "Attack")));

        let p = instances_for_trigger(&index, &corpus, "storm", Some(&LabelFilter::Negative), 1, 50).unwrap();
        assert_eq!(p.total, 771);
        assert_eq!(p.items.len(), 50);
        assert!(p.items[0].spans.iter().any(|s| s.is_focus && s.kind == SpanKind::Negative));

        let p = instances_for_trigger(&index, &corpus, "Storm", None, 1, 10).unwrap();
        assert_eq!(p.total, 1718);
    }

    #[test]
    fn paging_edges() {
        let (corpus, index) = table();
        let p = instances_for_event(&index, &corpus, "Attack", 1000, 10).unwrap();
        assert!(p.items.is_empty());
        assert_eq!(p.total, 16);
        assert!(matches!(
            instances_for_event(&index, &corpus, "Attack", 0, 10),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            instances_for_event(&index, &corpus, "Attack", 1, 201),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            instances_for_trigger(&index, &corpus, "tornado", None, 1, 10),
            Err(Error::NotFound { .. })
        ));
        assert!(matches!(
            instances_for_trigger(&index, &corpus, "storm", Some(&LabelFilter::Event("Nope".into())), 1, 10),
            Err(Error::NotFound { .. })
        ));
    }

    #[test]
    fn pages_are_ordered_and_disjoint() {
        let (corpus, index) = table();
        let mut seen = Vec::new();
        for page in 1..=4 {
            let p = instances_for_event(&index, &corpus, "Damaging", page, 200).unwrap();
            seen.extend(p.items.into_iter().map(|i| (i.doc_id, i.sent_idx, i.focus)));
        }
        assert_eq!(seen.len(), 624);
        let mut sorted_seen = seen.clone();
        sorted_seen.sort();
        sorted_seen.dedup();
        assert_eq!(sorted_seen.len(), 624);
    }

    #[test]
    fn co_occurring_mentions_are_rendered() {
        let mut b = CorpusBuilder::new("co", "x");
        let d = b.document("d", "t", None);
        let s = b.sentence(d, &["The", "storm", "damaged", "houses"]);
        b.mention(d, s, 1, 2, "Catastrophe").unwrap();
        b.mention(d, s, 2, 3, "Damaging").unwrap();
        let corpus = b.build();
        let index = build_index(&corpus).unwrap();
        let p = instances_for_trigger(&index, &corpus, "storm", None, 1, 10).unwrap();
        let spans = &p.items[0].spans;
        assert_eq!(spans.len(), 2);
        assert!(spans[0].is_focus && !spans[1].is_focus);
        assert_eq!(spans[1].label, "Damaging");
    }
}
