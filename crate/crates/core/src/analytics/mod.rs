//! Dataset-quality reports computed from a [`TriggerIndex`].
//!
//! - [`sparsity`]: how many triggers have enough positive instances to
//!   learn from, and what share of all instances they cover.
//! - [`dominance`]: label imbalance per trigger. An event dominates a trigger
//!   when its instance count is more than `dominance_ratio` times the summed
//!   counts of the trigger's other events. Negative triggers never enter the
//!   ratio.
//! - [`overview`]: per-event counts, rare events and the document topic
//!   histogram.
//! - [`flag_review_candidates`]: heuristic pointers to instances worth a
//!   second look.
//!
//! Every report is a pure function of the index (plus corpus metadata for
//! topics), so reloading a snapshot reproduces reports exactly.

mod review;
mod text;

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::index::{top_triggers, TriggerCount, TriggerEntry, TriggerIndex, DEFAULT_TOP_TRIGGERS};
use crate::model::Corpus;

pub use review::{flag_review_candidates, ReviewCandidate, ReviewCategory};
pub use text::TextReport;

/// Events with fewer mentions than this are listed as rare in the overview.
pub const RARE_EVENT_THRESHOLD: usize = 100;

/// Bucket for documents without topic metadata.
pub const UNKNOWN_TOPIC: &str = "unknown";

#[derive(Copy, Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalyticsConfig {
    /// Minimum positive instances for a trigger to enter the cohort.
    pub min_instances: usize,
    pub dominance_ratio: f64,
    /// Largest event count still treated as a stray label under a dominant event.
    pub rare_event_max: usize,
    /// Positive-share floor above which a trigger's negatives look suspicious.
    pub negative_anomaly_share: f64,
    /// Trigger-set overlap at which two events count as easily confused.
    pub ambiguity_jaccard: f64,
}

impl Default for AnalyticsConfig {
    fn default() -> Self {
        AnalyticsConfig {
            min_instances: 20,
            dominance_ratio: 5.0,
            rare_event_max: 2,
            negative_anomaly_share: 0.5,
            ambiguity_jaccard: 0.3,
        }
    }
}

impl AnalyticsConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_instances < 1 {
            return Err(Error::InvalidArgument("k (min_instances) must be ≥ 1".into()));
        }
        if !(self.dominance_ratio > 0.0 && self.dominance_ratio.is_finite()) {
            return Err(Error::InvalidArgument("dominance ratio must be a finite number > 0".into()));
        }
        if !(self.negative_anomaly_share > 0.0 && self.negative_anomaly_share < 1.0) {
            return Err(Error::InvalidArgument("negative anomaly share must be in (0, 1)".into()));
        }
        if !(self.ambiguity_jaccard > 0.0 && self.ambiguity_jaccard <= 1.0) {
            return Err(Error::InvalidArgument("ambiguity Jaccard threshold must be in (0, 1]".into()));
        }
        Ok(())
    }
}

fn fraction(num: usize, den: usize) -> f64 {
    if den == 0 {
        0.0
    } else {
        num as f64 / den as f64
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SparsityReport {
    pub dataset: String,
    pub min_instances: usize,
    pub candidate_triggers: usize,
    pub positive_triggers: usize,
    pub annotated_instances: usize,
    pub cohort_size: usize,
    pub cohort_instances: usize,
    pub cohort_coverage_fraction: f64,
    /// cohort_size / positive_triggers
    pub cohort_trigger_fraction: f64,
}

pub fn sparsity(index: &TriggerIndex, config: &AnalyticsConfig) -> SparsityReport {
    let k = config.min_instances;
    let mut cohort_size = 0;
    let mut cohort_instances = 0;
    for entry in index.by_trigger.values() {
        let p = entry.positive_total();
        if p > 0 && p >= k {
            cohort_size += 1;
            cohort_instances += p;
        }
    }
    let t = &index.totals;
    SparsityReport {
        dataset: index.corpus_ref.clone(),
        min_instances: k,
        candidate_triggers: t.candidate_triggers,
        positive_triggers: t.positive_triggers,
        annotated_instances: t.annotated_instances,
        cohort_size,
        cohort_instances,
        cohort_coverage_fraction: fraction(cohort_instances, t.annotated_instances),
        cohort_trigger_fraction: fraction(cohort_size, t.positive_triggers),
    }
}

/// Top event count over the summed counts of all other events.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum DominanceRatio {
    Finite { top: usize, others: usize },
    /// The trigger carries a single event.
    Unbounded,
}

impl DominanceRatio {
    pub fn value(&self) -> f64 {
        match *self {
            DominanceRatio::Finite { top, others } => top as f64 / others as f64,
            DominanceRatio::Unbounded => f64::INFINITY,
        }
    }

    /// Strict `ratio > threshold`, evaluated without dividing.
    pub fn exceeds(&self, threshold: f64) -> bool {
        match *self {
            DominanceRatio::Finite { top, others } => top as f64 > threshold * others as f64,
            DominanceRatio::Unbounded => true,
        }
    }
}

impl Serialize for DominanceRatio {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match *self {
            DominanceRatio::Unbounded => s.serialize_str("UNBOUNDED"),
            DominanceRatio::Finite { top, others } => {
                let mut st = s.serialize_struct("DominanceRatio", 3)?;
                st.serialize_field("top", &top)?;
                st.serialize_field("others", &others)?;
                st.serialize_field("value", &self.value())?;
                st.end()
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TriggerDominance {
    pub trigger: String,
    pub instances: usize,
    pub events: usize,
    pub single_event: bool,
    pub dominant: bool,
    pub dominant_event: Option<String>,
    pub ratio: DominanceRatio,
}

/// Dominance of one trigger entry under `threshold`. `None` for triggers
/// without positive instances.
pub fn trigger_dominance(entry: &TriggerEntry, threshold: f64) -> Option<TriggerDominance> {
    let (top_event, top) = entry.top_event()?;
    let positive = entry.positive_total();
    let events = entry.per_event_counts.len();
    let ratio = if events == 1 {
        DominanceRatio::Unbounded
    } else {
        DominanceRatio::Finite {
            top,
            others: positive - top,
        }
    };
    let dominant = ratio.exceeds(threshold);
    Some(TriggerDominance {
        trigger: entry.normalized.clone(),
        instances: positive,
        events,
        single_event: events == 1,
        dominant,
        dominant_event: dominant.then(|| top_event.to_owned()),
        ratio,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DominanceReport {
    pub dataset: String,
    pub min_instances: usize,
    pub dominance_ratio: f64,
    pub positive_triggers: usize,
    pub single_event_triggers: usize,
    pub single_event_fraction: f64,
    pub cohort_size: usize,
    pub cohort_single_event: usize,
    /// Multi-event cohort triggers whose top event dominates.
    pub cohort_dominant_count: usize,
    pub cohort_dominant_fraction: f64,
    /// Same, also counting single-event cohort triggers as dominated.
    pub cohort_dominant_incl_single_count: usize,
    pub cohort_dominant_incl_single_fraction: f64,
    /// Cohort triggers, by descending instances then trigger.
    pub triggers: Vec<TriggerDominance>,
}

pub fn dominance(index: &TriggerIndex, config: &AnalyticsConfig) -> DominanceReport {
    let r = config.dominance_ratio;
    let k = config.min_instances;
    let mut single = 0;
    let mut triggers = Vec::new();
    for entry in index.by_trigger.values() {
        let Some(d) = trigger_dominance(entry, r) else { continue };
        if d.single_event {
            single += 1;
        }
        if d.instances >= k {
            triggers.push(d);
        }
    }
    triggers.sort_by(|a, b| b.instances.cmp(&a.instances).then_with(|| a.trigger.cmp(&b.trigger)));

    let cohort_size = triggers.len();
    let cohort_single = triggers.iter().filter(|d| d.single_event).count();
    let dominant_multi = triggers.iter().filter(|d| d.dominant && !d.single_event).count();
    let dominant_all = dominant_multi + cohort_single;
    let positive = index.totals.positive_triggers;
    DominanceReport {
        dataset: index.corpus_ref.clone(),
        min_instances: k,
        dominance_ratio: r,
        positive_triggers: positive,
        single_event_triggers: single,
        single_event_fraction: fraction(single, positive),
        cohort_size,
        cohort_single_event: cohort_single,
        cohort_dominant_count: dominant_multi,
        cohort_dominant_fraction: fraction(dominant_multi, cohort_size),
        cohort_dominant_incl_single_count: dominant_all,
        cohort_dominant_incl_single_fraction: fraction(dominant_all, cohort_size),
        triggers,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EventOverview {
    pub event: String,
    pub type_id: u32,
    pub mention_count: usize,
    pub distinct_triggers: usize,
    pub top_triggers: Vec<TriggerCount>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OverviewReport {
    pub dataset: String,
    pub total_instances: usize,
    /// By descending mention count, then name.
    pub events: Vec<EventOverview>,
    pub rare_threshold: usize,
    /// Events with fewer than `rare_threshold` mentions, ascending by count then name.
    pub events_below: Vec<String>,
    pub topics: BTreeMap<String, usize>,
}

impl OverviewReport {
    /// Events with fewer than `n` mentions, ascending by count then name.
    pub fn events_below(&self, n: usize) -> Vec<&str> {
        let mut below: Vec<&EventOverview> = self.events.iter().filter(|e| e.mention_count < n).collect();
        below.sort_by(|a, b| a.mention_count.cmp(&b.mention_count).then_with(|| a.event.cmp(&b.event)));
        below.into_iter().map(|e| e.event.as_str()).collect()
    }
}

pub fn overview(index: &TriggerIndex, corpus: &Corpus) -> OverviewReport {
    let mut events: Vec<EventOverview> = index
        .by_event
        .values()
        .map(|e| EventOverview {
            event: e.event.name.clone(),
            type_id: e.event.type_id.0,
            mention_count: e.mention_count,
            distinct_triggers: e.trigger_counts.len(),
            top_triggers: top_triggers(index, &e.event.name, DEFAULT_TOP_TRIGGERS).unwrap_or_default(),
        })
        .collect();
    events.sort_by(|a, b| b.mention_count.cmp(&a.mention_count).then_with(|| a.event.cmp(&b.event)));

    let mut topics = BTreeMap::new();
    for doc in &corpus.documents {
        let topic = doc.topic.as_deref().unwrap_or(UNKNOWN_TOPIC);
        *topics.entry(topic.to_owned()).or_insert(0) += 1;
    }

    let mut report = OverviewReport {
        dataset: index.corpus_ref.clone(),
        total_instances: events.iter().map(|e| e.mention_count).sum(),
        events,
        rare_threshold: RARE_EVENT_THRESHOLD,
        events_below: Vec::new(),
        topics,
    };
    report.events_below = report.events_below(RARE_EVENT_THRESHOLD).into_iter().map(str::to_owned).collect();
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::index::build_index;
    use crate::model::CorpusBuilder;

    fn table_index() -> TriggerIndex {
        build_index(&fixtures::trigger_table_corpus()).unwrap()
    }

    #[test]
    fn storm_and_crash_are_dominated() {
        let index = table_index();
        let storm = trigger_dominance(index.trigger("storm").unwrap(), 5.0).unwrap();
        assert_eq!(storm.ratio, DominanceRatio::Finite { top: 925, others: 22 });
        assert!((storm.ratio.value() - 925.0 / 22.0).abs() < 1e-12);
        assert!(storm.dominant);
        assert_eq!(storm.dominant_event.as_deref(), Some("Catastrophe"));

        let crash = trigger_dominance(index.trigger("crash").unwrap(), 5.0).unwrap();
        assert_eq!(crash.ratio.value(), 21.75);
        assert!(crash.dominant);
    }

    #[test]
    fn six_to_two_is_not_dominant() {
        let corpus = fixtures::corpus_from_rows("x", &[("w", &[("A", 6), ("B", 2)])]);
        let index = build_index(&corpus).unwrap();
        let d = trigger_dominance(index.trigger("w").unwrap(), 5.0).unwrap();
        assert_eq!(d.ratio.value(), 3.0);
        assert!(!d.dominant);
        assert_eq!(d.dominant_event, None);
    }

    #[test]
    fn exact_threshold_is_not_dominant() {
        let corpus = fixtures::corpus_from_rows("x", &[("w", &[("A", 10), ("B", 2)])]);
        let index = build_index(&corpus).unwrap();
        assert!(!trigger_dominance(index.trigger("w").unwrap(), 5.0).unwrap().dominant);
    }

    #[test]
    fn table_reports() {
        let index = table_index();
        let s = sparsity(&index, &AnalyticsConfig::default());
        assert_eq!(s.candidate_triggers, 3);
        assert_eq!(s.positive_triggers, 3);
        assert_eq!(s.annotated_instances, 182 + 622 + 947);
        assert_eq!(s.cohort_size, 3);
        assert_eq!(s.cohort_coverage_fraction, 1.0);

        let d = dominance(&index, &AnalyticsConfig::default());
        assert_eq!(d.single_event_triggers, 0);
        assert_eq!(d.cohort_dominant_count, 3);
        assert_eq!(d.triggers[0].trigger, "storm");
    }

    #[test]
    fn empty_index_reports_zeros() {
        let corpus = CorpusBuilder::new("e", "x").build();
        let index = build_index(&corpus).unwrap();
        let s = sparsity(&index, &AnalyticsConfig::default());
        assert_eq!((s.candidate_triggers, s.cohort_size, s.cohort_coverage_fraction), (0, 0, 0.0));
        let d = dominance(&index, &AnalyticsConfig::default());
        assert_eq!((d.single_event_fraction, d.cohort_dominant_fraction), (0.0, 0.0));
        let o = overview(&index, &corpus);
        assert!(o.events.is_empty() && o.topics.is_empty());
    }

    #[test]
    fn single_event_overview() {
        let corpus = fixtures::corpus_from_rows("x", &[("w", &[("A", 7)])]);
        let index = build_index(&corpus).unwrap();
        let o = overview(&index, &corpus);
        assert_eq!(o.events.len(), 1);
        assert_eq!(o.events[0].mention_count, 7);
        assert_eq!(o.total_instances, 7);
        assert_eq!(o.events_below, vec!["A"]);
        let d = dominance(&index, &AnalyticsConfig { min_instances: 1, ..Default::default() });
        assert_eq!(d.single_event_triggers, 1);
        assert_eq!(d.cohort_dominant_count, 0);
        assert_eq!(d.cohort_dominant_incl_single_count, 1);
        assert_eq!(d.triggers[0].ratio, DominanceRatio::Unbounded);
        assert_eq!(serde_json::to_string(&d.triggers[0].ratio).unwrap(), "\"UNBOUNDED\"");
    }

    #[test]
    fn config_bounds() {
        assert!(AnalyticsConfig::default().validate().is_ok());
        for bad in [
            AnalyticsConfig { min_instances: 0, ..Default::default() },
            AnalyticsConfig { dominance_ratio: 0.0, ..Default::default() },
            AnalyticsConfig { dominance_ratio: f64::NAN, ..Default::default() },
            AnalyticsConfig { negative_anomaly_share: 1.0, ..Default::default() },
        ] {
            assert!(bad.validate().is_err());
        }
    }

    #[test]
    fn topics_bucket_unknown() {
        let mut b = CorpusBuilder::new("t", "x");
        b.document("a", "", Some("hurricane"));
        b.document("b", "", None);
        b.document("c", "", Some("hurricane"));
        let corpus = b.build();
        let o = overview(&build_index(&corpus).unwrap(), &corpus);
        assert_eq!(o.topics.get("hurricane"), Some(&2));
        assert_eq!(o.topics.get(UNKNOWN_TOPIC), Some(&1));
    }
}
