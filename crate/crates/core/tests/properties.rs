//! Monotonicity and conservation laws over many small random indices.

mod common;

use std::collections::BTreeSet;

use edx::analytics::{dominance, overview, sparsity, trigger_dominance, AnalyticsConfig};
use edx::annotator::{annotate_tokens, train_lexicon_at, Thresholds};
use edx::index::build_index;
use proptest::prelude::*;

const INDICES: u64 = 1_000;

fn config(k: usize, r: f64) -> AnalyticsConfig {
    AnalyticsConfig {
        min_instances: k,
        dominance_ratio: r,
        ..AnalyticsConfig::default()
    }
}

#[test]
fn dominant_count_never_grows_with_the_ratio() {
    let ratios = [0.25, 1.0, 2.0, 3.0, 5.0, 7.5, 20.0, 50.0];
    for seed in 0..INDICES {
        let index = build_index(&common::random_corpus(seed, 100)).unwrap();
        for k in [1, 3, 10] {
            let counts: Vec<(usize, usize)> = ratios
                .iter()
                .map(|&r| {
                    let d = dominance(&index, &config(k, r));
                    (d.cohort_dominant_count, d.cohort_dominant_incl_single_count)
                })
                .collect();
            for w in counts.windows(2) {
                assert!(w[1].0 <= w[0].0 && w[1].1 <= w[0].1, "seed {seed} k {k}: {counts:?}");
            }
        }
    }
}

#[test]
fn cohort_never_grows_with_k() {
    for seed in 0..INDICES {
        let index = build_index(&common::random_corpus(seed, 100)).unwrap();
        let mut prev = (usize::MAX, usize::MAX, usize::MAX);
        for k in 1..=15 {
            let s = sparsity(&index, &config(k, 5.0));
            let d = dominance(&index, &config(k, 5.0));
            assert_eq!(s.cohort_size, d.cohort_size);
            let cur = (s.cohort_size, s.cohort_instances, d.cohort_dominant_count);
            assert!(cur.0 <= prev.0 && cur.1 <= prev.1 && cur.2 <= prev.2, "seed {seed} k {k}");
            prev = cur;
        }
    }
}

#[test]
fn counts_are_conserved() {
    for seed in 0..INDICES {
        let corpus = common::random_corpus(seed, 100);
        let index = build_index(&corpus).unwrap();
        let mentions = corpus.mentions().count();
        let t = index.totals;

        let from_triggers: usize = index.by_trigger.values().map(|e| e.total()).sum();
        assert_eq!(from_triggers, mentions);
        assert_eq!(t.annotated_instances + t.negative_instances, mentions);
        assert_eq!(index.by_event.values().map(|e| e.mention_count).sum::<usize>(), t.annotated_instances);
        for e in index.by_event.values() {
            assert_eq!(e.trigger_counts.values().sum::<usize>(), e.mention_count);
        }
        for e in index.by_trigger.values() {
            assert_eq!(e.instance_refs.negative.len(), e.negative_count);
            for (event, refs) in &e.instance_refs.events {
                assert_eq!(refs.len(), e.per_event_counts[event]);
            }
        }
        assert_eq!(overview(&index, &corpus).total_instances, t.annotated_instances);
        assert!(t.positive_triggers <= t.candidate_triggers);
    }
}

#[test]
fn dominance_classification_examples() {
    let corpus = edx::fixtures::trigger_table_corpus();
    let index = build_index(&corpus).unwrap();
    let storm = trigger_dominance(index.trigger("storm").unwrap(), 5.0).unwrap();
    let crash = trigger_dominance(index.trigger("crash").unwrap(), 5.0).unwrap();
    assert!(storm.dominant);
    assert_eq!(storm.dominant_event.as_deref(), Some("Catastrophe"));
    assert!(crash.dominant);

    let ab = edx::fixtures::corpus_from_rows("ab", &[("x", &[("A", 6), ("B", 2)])]);
    let ab_index = build_index(&ab).unwrap();
    let x = trigger_dominance(ab_index.trigger("x").unwrap(), 5.0).unwrap();
    assert!(!x.dominant);
    assert_eq!(x.ratio.value(), 3.0);
}

fn predictions(seed: u64, t: Thresholds) -> BTreeSet<(usize, usize, usize, String)> {
    let corpus = common::random_corpus(seed, 100);
    let index = build_index(&corpus).unwrap();
    let model = train_lexicon_at(&index, Thresholds::default(), "t").unwrap();
    let mut out = BTreeSet::new();
    for (d, doc) in corpus.documents.iter().enumerate() {
        for s in &doc.sentences {
            for p in annotate_tokens(&model, &s.tokens, &t) {
                out.insert((d, s.sent_idx, p.start, p.event));
            }
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn raising_thresholds_only_removes_predictions(
        seed in 0u64..10_000,
        a in 0.0f64..=1.0,
        b in 0.0f64..=1.0,
        da in 0.0f64..=1.0,
        db in 0.0f64..=1.0,
    ) {
        let corpus = common::random_corpus(seed, 100);
        prop_assume!(corpus.mentions().any(|m| !m.is_negative()));
        let low = Thresholds { tau_neg: a, tau_event: b };
        let high = Thresholds { tau_neg: (a + da).min(1.0), tau_event: (b + db).min(1.0) };
        let lo = predictions(seed, low);
        let hi = predictions(seed, high);
        prop_assert!(hi.is_subset(&lo));
    }

    #[test]
    fn decisions_match_the_written_rule(seed in 0u64..10_000, tau_neg in 0.0f64..=1.0, tau_event in 0.0f64..=1.0) {
        let index = build_index(&common::random_corpus(seed, 100)).unwrap();
        prop_assume!(index.totals.annotated_instances > 0);
        let t = Thresholds { tau_neg, tau_event };
        let model = train_lexicon_at(&index, t, "t").unwrap();
        for (trigger, entry) in &model.entries {
            let got = entry.decide(&t).map(|(e, c)| (e.to_owned(), c));
            prop_assert_eq!(got, common::decide(&model, trigger, tau_neg, tau_event));
        }
    }
}
