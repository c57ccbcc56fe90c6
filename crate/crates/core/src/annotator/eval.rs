//! Trigger classification scoring against gold mentions.
//!
//! A prediction is correct iff a gold positive mention with the same
//! (document, sentence, span, event) exists. Corpus sentences are annotated
//! with their stored tokens; no re-tokenization happens here.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{annotate_tokens, LexiconModel};
use crate::error::{Error, Result};
use crate::model::Corpus;

#[derive(Copy, Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Scores {
    pub tp: usize,
    pub fp: usize,
    #[serde(rename = "fn")]
    pub fn_: usize,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Scores {
    /// Precision, recall and F1 from raw counts; undefined ratios are 0.
    pub fn from_counts(tp: usize, fp: usize, fn_: usize) -> Scores {
        let ratio = |n: usize, d: usize| if d == 0 { 0.0 } else { n as f64 / d as f64 };
        let precision = ratio(tp, tp + fp);
        let recall = ratio(tp, tp + fn_);
        let f1 = if precision + recall == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / (precision + recall)
        };
        Scores {
            tp,
            fp,
            fn_,
            precision,
            recall,
            f1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub dataset: String,
    pub per_event: BTreeMap<String, Scores>,
    pub micro: Scores,
}

type Key<'a> = (&'a str, usize, usize, usize, String);

pub fn evaluate(model: &LexiconModel, corpus: &Corpus) -> Result<EvalReport> {
    let mut gold: HashSet<Key<'_>> = HashSet::new();
    for doc in &corpus.documents {
        for m in doc.mentions.iter().filter(|m| !m.is_negative()) {
            let event = corpus
                .label_name(m.label)
                .ok_or_else(|| Error::InvalidArgument(format!("mention {} has undeclared label {}", m.mention_id, m.label)))?;
            gold.insert((&doc.doc_id, m.sent_idx, m.span.start, m.span.end, event.to_owned()));
        }
    }
    if gold.is_empty() {
        return Err(Error::InvalidArgument(format!("corpus {:?} has no gold event mentions", corpus.name)));
    }

    let mut predicted: HashSet<Key<'_>> = HashSet::new();
    for doc in &corpus.documents {
        for sent in &doc.sentences {
            for span in annotate_tokens(model, &sent.tokens, &model.thresholds) {
                predicted.insert((&doc.doc_id, sent.sent_idx, span.start, span.end, span.event));
            }
        }
    }

    let mut counts: BTreeMap<String, (usize, usize, usize)> = BTreeMap::new();
    for p in &predicted {
        let c = counts.entry(p.4.clone()).or_default();
        if gold.contains(p) {
            c.0 += 1;
        } else {
            c.1 += 1;
        }
    }
    for g in gold.iter().filter(|g| !predicted.contains(*g)) {
        counts.entry(g.4.clone()).or_default().2 += 1;
    }

    let (mut tp, mut fp, mut fn_) = (0, 0, 0);
    let per_event = counts
        .into_iter()
        .map(|(event, (t, f, n))| {
            tp += t;
            fp += f;
            fn_ += n;
            (event, Scores::from_counts(t, f, n))
        })
        .collect();
    Ok(EvalReport {
        dataset: corpus.name.clone(),
        per_event,
        micro: Scores::from_counts(tp, fp, fn_),
    })
}
