//! Review-candidate heuristics for debatable annotations.
//!
//! Three categories, each scored in `[0, 1]`:
//!
//! - `NEGATIVE_TRIGGER`: a trigger is usually positive (positive share
//!   `P/(P+N) ≥ θ`) yet some instances are marked negative. Each negative
//!   instance is flagged with score = positive share.
//! - `TRIGGER_WRONG_EVENT`: a trigger has a dominant event and a few stray
//!   events with at most `rare_event_max` instances. Each stray instance is
//!   flagged with score = `1 − count / P`.
//! - `EVENT_AMBIGUITY`: two events share a large part of their cohort
//!   trigger sets (Jaccard ≥ `ambiguity_jaccard`). For every shared trigger
//!   the minority event's instances are flagged with score
//!   `J · 2·minority / (minority + majority)`.
//!
//! Candidates are suggestions only; labels are never changed.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{trigger_dominance, AnalyticsConfig};
use crate::error::{Error, Result};
use crate::index::{InstanceRef, TriggerIndex};
use crate::model::{Corpus, NEGATIVE_NAME};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ReviewCategory {
    NegativeTrigger,
    TriggerWrongEvent,
    EventAmbiguity,
}

impl ReviewCategory {
    pub const ALL: [ReviewCategory; 3] = [
        ReviewCategory::NegativeTrigger,
        ReviewCategory::TriggerWrongEvent,
        ReviewCategory::EventAmbiguity,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ReviewCategory::NegativeTrigger => "NEGATIVE_TRIGGER",
            ReviewCategory::TriggerWrongEvent => "TRIGGER_WRONG_EVENT",
            ReviewCategory::EventAmbiguity => "EVENT_AMBIGUITY",
        }
    }
}

impl fmt::Display for ReviewCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ReviewCategory {
    type Err = Error;

    /// Accepts `NEGATIVE_TRIGGER` as well as `negative-trigger`.
    fn from_str(s: &str) -> Result<Self> {
        let canon = s.trim().replace('-', "_").to_ascii_uppercase();
        ReviewCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == canon)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown review category {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReviewCandidate {
    pub doc_id: String,
    pub sent_idx: usize,
    pub mention_id: String,
    pub trigger: String,
    pub label: String,
    pub category: ReviewCategory,
    pub score: f64,
    pub rationale: String,
}

type Key = (String, String, ReviewCategory);

struct Collector<'a> {
    corpus: &'a Corpus,
    out: BTreeMap<Key, ReviewCandidate>,
}

impl Collector<'_> {
    fn flag(&mut self, r: &InstanceRef, trigger: &str, label: &str, category: ReviewCategory, score: f64, rationale: &str) {
        let exists = self
            .corpus
            .documents
            .get(r.doc_pos)
            .and_then(|d| d.mentions.get(r.mention_pos))
            .is_some_and(|m| m.mention_id == r.mention_id && m.doc_id == r.doc_id);
        if !exists {
            return;
        }
        let key = (r.doc_id.clone(), r.mention_id.clone(), category);
        if self.out.get(&key).is_some_and(|c| c.score >= score) {
            return;
        }
        self.out.insert(
            key,
            ReviewCandidate {
                doc_id: r.doc_id.clone(),
                sent_idx: r.sent_idx,
                mention_id: r.mention_id.clone(),
                trigger: trigger.to_owned(),
                label: label.to_owned(),
                category,
                score,
                rationale: rationale.to_owned(),
            },
        );
    }
}

/// Flags instances for human review, sorted by descending score.
pub fn flag_review_candidates(index: &TriggerIndex, corpus: &Corpus, config: &AnalyticsConfig) -> Vec<ReviewCandidate> {
    let mut c = Collector {
        corpus,
        out: BTreeMap::new(),
    };

    for entry in index.by_trigger.values() {
        let p = entry.positive_total();
        let n = entry.negative_count;
        if p == 0 {
            continue;
        }

        let share = p as f64 / (p + n) as f64;
        if n > 0 && share >= config.negative_anomaly_share {
            let why = format!(
                "{:?} is positive in {p} of {} instances ({:.1}%) but marked negative here",
                entry.normalized,
                p + n,
                share * 100.0
            );
            for r in &entry.instance_refs.negative {
                c.flag(r, &entry.normalized, NEGATIVE_NAME, ReviewCategory::NegativeTrigger, share, &why);
            }
        }

        if let Some(d) = trigger_dominance(entry, config.dominance_ratio) {
            if let (false, Some(top)) = (d.single_event, d.dominant_event.as_deref()) {
                for (event, &count) in &entry.per_event_counts {
                    if event == top || count > config.rare_event_max {
                        continue;
                    }
                    let score = 1.0 - count as f64 / p as f64;
                    let why = format!(
                        "{:?} is {top} in {} instances but {event} in only {count}",
                        entry.normalized, entry.per_event_counts[top]
                    );
                    for r in &entry.instance_refs.events[event] {
                        c.flag(r, &entry.normalized, event, ReviewCategory::TriggerWrongEvent, score, &why);
                    }
                }
            }
        }
    }

    flag_ambiguity(index, config, &mut c);

    let mut out: Vec<ReviewCandidate> = c.out.into_values().collect();
    out.sort_by(|a, b| {
        b.score
            .total_cmp(&a.score)
            .then_with(|| (&a.doc_id, a.sent_idx, &a.mention_id, a.category).cmp(&(&b.doc_id, b.sent_idx, &b.mention_id, b.category)))
    });
    out
}

fn flag_ambiguity(index: &TriggerIndex, config: &AnalyticsConfig, c: &mut Collector<'_>) {
    let cohort: Vec<_> = index
        .by_trigger
        .values()
        .filter(|e| e.positive_total() >= config.min_instances.max(1))
        .collect();

    let mut set_size: HashMap<&str, usize> = HashMap::new();
    let mut shared: BTreeMap<(&str, &str), usize> = BTreeMap::new();
    for entry in &cohort {
        let events: Vec<&str> = entry.per_event_counts.keys().map(String::as_str).collect();
        for (i, x) in events.iter().enumerate() {
            *set_size.entry(x).or_insert(0) += 1;
            for y in &events[i + 1..] {
                *shared.entry((x, y)).or_insert(0) += 1;
            }
        }
    }

    for ((x, y), inter) in shared {
        let union = set_size[x] + set_size[y] - inter;
        let jaccard = inter as f64 / union as f64;
        if jaccard < config.ambiguity_jaccard {
            continue;
        }
        for entry in &cohort {
            let (Some(&cx), Some(&cy)) = (entry.per_event_counts.get(x), entry.per_event_counts.get(y)) else {
                continue;
            };
            // ties: the lexicographically later event is the minority side
            let (minority, min_count, majority, maj_count) = if cx < cy { (x, cx, y, cy) } else { (y, cy, x, cx) };
            let score = jaccard * 2.0 * min_count as f64 / (min_count + maj_count) as f64;
            let why = format!(
                "{x} and {y} share {:.0}% of their frequent triggers; {:?} is {majority} {maj_count}× vs {minority} {min_count}×",
                jaccard * 100.0,
                entry.normalized
            );
            for r in &entry.instance_refs.events[minority] {
                c.flag(r, &entry.normalized, minority, ReviewCategory::EventAmbiguity, score, &why);
            }
        }
    }
}
