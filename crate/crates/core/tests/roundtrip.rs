mod common;

use edx::annotator::{train_lexicon_at, LexiconModel, Thresholds};
use edx::index::{build_index, Snapshot};
use edx::ingest::{export_unified, ingest, ingest_reader, write_unified, Format};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn unified_export_then_ingest_is_identity(seed in any::<u64>(), max in 0usize..=100) {
        let corpus = common::random_corpus(seed, max);
        let mut buf = Vec::new();
        let written = write_unified(&corpus, &mut buf).unwrap();
        prop_assert_eq!(written, corpus.documents.len());

        let (back, stats) = ingest_reader(buf.as_slice(), Format::Unified, "ignored").unwrap();
        prop_assert_eq!(stats.skipped_records, 0);
        prop_assert_eq!(&back, &corpus);

        let mut again = Vec::new();
        write_unified(&back, &mut again).unwrap();
        prop_assert_eq!(again, buf);
    }

    #[test]
    fn snapshot_bytes_round_trip(seed in any::<u64>(), max in 0usize..=100) {
        let snapshot = Snapshot::build(common::random_corpus(seed, max)).unwrap();
        let bytes = snapshot.to_bytes().unwrap();
        let back = Snapshot::from_bytes(&bytes).unwrap();
        prop_assert_eq!(&back.corpus, &snapshot.corpus);
        prop_assert_eq!(&back.index, &snapshot.index);
        prop_assert_eq!(back.to_bytes().unwrap(), bytes);
        // a reloaded corpus indexes to the stored index
        prop_assert_eq!(build_index(&back.corpus).unwrap(), back.index);
    }

    #[test]
    fn model_json_round_trip(seed in any::<u64>(), tau_neg in 0.0f64..=1.0, tau_event in 0.0f64..=1.0) {
        let index = build_index(&common::random_corpus(seed, 100)).unwrap();
        prop_assume!(index.totals.annotated_instances > 0);
        let model = train_lexicon_at(&index, Thresholds { tau_neg, tau_event }, "2024-01-01T00:00:00Z").unwrap();
        let json = model.to_json().unwrap();
        let back = LexiconModel::from_json(&json).unwrap();
        prop_assert_eq!(&back, &model);
        prop_assert_eq!(back.to_json().unwrap(), json);
    }
}

#[test]
fn round_trips_through_files() {
    let dir = tempfile::tempdir().unwrap();
    for seed in 0..20 {
        let corpus = common::random_corpus(seed, 100);

        let jsonl = dir.path().join(format!("c{seed}.jsonl"));
        export_unified(&corpus, &jsonl).unwrap();
        let (back, _) = ingest(&jsonl, Format::Unified).unwrap();
        assert_eq!(back, corpus);

        let snap_path = dir.path().join(format!("s{seed}.json"));
        let snapshot = Snapshot::build(corpus).unwrap();
        snapshot.save(&snap_path).unwrap();
        let loaded = Snapshot::load(&snap_path).unwrap();
        assert_eq!(loaded.to_bytes().unwrap(), snapshot.to_bytes().unwrap());

        if snapshot.index.totals.annotated_instances > 0 {
            let model_path = dir.path().join(format!("m{seed}.json"));
            let model = train_lexicon_at(&snapshot.index, Thresholds::default(), "t").unwrap();
            model.save(&model_path).unwrap();
            assert_eq!(LexiconModel::load(&model_path).unwrap(), model);
        }
    }
}

#[test]
fn snapshot_with_other_version_is_rejected() {
    let snapshot = Snapshot::build(common::random_corpus(1, 20)).unwrap();
    let text = String::from_utf8(snapshot.to_bytes().unwrap()).unwrap();
    let bumped = text.replacen("\"schema_version\":1", "\"schema_version\":99", 1);
    assert_ne!(bumped, text);
    assert!(matches!(Snapshot::from_bytes(bumped.as_bytes()), Err(edx::Error::SchemaVersion { .. })));
}
