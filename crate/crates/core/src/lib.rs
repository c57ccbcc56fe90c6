//! Event-detection corpus explorer.
//!
//! Ingest event-detection datasets into one span-annotated [`model::Corpus`],
//! index triggers and events, compute dataset-quality reports, train a
//! lexicon annotator and serve it all over a JSON API.
//!
//! ```
//! use edx::{analytics, fixtures, index};
//!
//! let corpus = fixtures::trigger_table_corpus();
//! let idx = index::build_index(&corpus).unwrap();
//! let storm = idx.trigger("storm").unwrap();
//! assert_eq!(storm.negative_count, 771);
//!
//! let report = analytics::dominance(&idx, &analytics::AnalyticsConfig::default());
//! assert_eq!(report.cohort_dominant_count, 3);
//! ```

pub mod analytics;
pub mod annotator;
pub mod error;
pub mod fixtures;
pub mod index;
pub mod ingest;
pub mod model;
pub mod service;

pub use error::{Error, Result};
