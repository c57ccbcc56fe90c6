//! Random corpora and brute-force reference implementations.
//!
//! The reference functions below read the corpus directly and never touch
//! the trigger index, so agreeing with them checks the index as well as the
//! reports built on top of it.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use edx::annotator::LexiconModel;
use edx::model::{Corpus, CorpusBuilder, NEGATIVE_SENTINEL};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const TRIGGERS: [&str; 9] = ["storm", "crash", "attack", "fire", "set up", "take off", "damage", "flood", "hit"];
pub const EVENTS: [&str; 5] = ["Attack", "Catastrophe", "Damaging", "Motion", "Self Motion"];
const FILLER: [&str; 10] = ["the", "a", "city", "was", "by", "near", "river", "on", "Monday", "."];
const TOPICS: [Option<&str>; 4] = [Some("hurricane"), Some("military conflict"), Some("concert tour"), None];

fn shout(word: &str, rng: &mut ChaCha8Rng) -> String {
    match rng.random_range(0..6) {
        0 => word.to_uppercase(),
        1 => {
            let mut c = word.chars();
            c.next().map(|f| f.to_uppercase().chain(c).collect()).unwrap_or_default()
        }
        _ => word.to_owned(),
    }
}

/// A valid corpus with at most `max_mentions` mentions. Each trigger has a
/// preferred event so that dominant and ambiguous triggers both occur.
pub fn random_corpus(seed: u64, max_mentions: usize) -> Corpus {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut b = CorpusBuilder::new(format!("random-{seed}"), "synthetic");
    if rng.random_bool(0.3) {
        b.event_type("Unused Event");
    }
    let home: Vec<&str> = TRIGGERS.iter().map(|_| *EVENTS.choose(&mut rng).unwrap()).collect();
    let neg_rate = rng.random_range(0.0..0.6);
    let loyalty = rng.random_range(0.3..1.0);
    let vocab = rng.random_range(2..=TRIGGERS.len());

    let mut mentions = 0;
    let docs = rng.random_range(1..=6);
    for d in 0..docs {
        let topic = *TOPICS.choose(&mut rng).unwrap();
        let doc = b.document(format!("d{d:02}"), format!("Document {d}"), topic);
        for _ in 0..rng.random_range(1..=5) {
            let mut tokens: Vec<String> = Vec::new();
            let mut spans: Vec<(usize, usize, usize)> = Vec::new();
            let want = rng.random_range(0..=3).min(max_mentions - mentions);
            for _ in 0..want {
                for _ in 0..rng.random_range(0..3) {
                    tokens.push(FILLER.choose(&mut rng).unwrap().to_string());
                }
                let t = rng.random_range(0..vocab);
                let start = tokens.len();
                for w in TRIGGERS[t].split(' ') {
                    tokens.push(shout(w, &mut rng));
                }
                spans.push((t, start, tokens.len()));
            }
            if tokens.is_empty() || rng.random_bool(0.3) {
                tokens.push(FILLER.choose(&mut rng).unwrap().to_string());
            }
            let s = b.sentence(doc, &tokens);
            for (t, start, end) in spans {
                let label = if rng.random_bool(neg_rate) {
                    NEGATIVE_SENTINEL
                } else if rng.random_bool(loyalty) {
                    home[t]
                } else {
                    EVENTS.choose(&mut rng).unwrap()
                };
                b.mention(doc, s, start, end, label).expect("span inside sentence");
                mentions += 1;
            }
        }
    }
    b.build()
}

pub fn norm(surface: &str) -> String {
    surface.split_whitespace().map(str::to_lowercase).collect::<Vec<_>>().join(" ")
}

/// Per normalized trigger: event counts and negative count.
#[derive(Debug, Default, Clone, PartialEq)]
pub struct Row {
    pub events: BTreeMap<String, usize>,
    pub negative: usize,
}

impl Row {
    pub fn positive(&self) -> usize {
        self.events.values().sum()
    }
}

pub fn trigger_table(corpus: &Corpus) -> BTreeMap<String, Row> {
    let names: BTreeMap<u32, &str> = corpus.event_types.iter().map(|e| (e.type_id.0, e.name.as_str())).collect();
    let mut table: BTreeMap<String, Row> = BTreeMap::new();
    for doc in &corpus.documents {
        for m in &doc.mentions {
            let tokens = &doc.sentences[m.sent_idx].tokens[m.span.start..m.span.end];
            let row = table.entry(norm(&tokens.join(" "))).or_default();
            if m.label.0 == 0 {
                row.negative += 1;
            } else {
                *row.events.entry(names[&m.label.0].to_owned()).or_default() += 1;
            }
        }
    }
    table
}

#[derive(Debug, PartialEq)]
pub struct Totals {
    pub candidate: usize,
    pub positive: usize,
    pub annotated: usize,
    pub negative: usize,
}

pub fn totals(corpus: &Corpus) -> Totals {
    let table = trigger_table(corpus);
    Totals {
        candidate: table.len(),
        positive: table.values().filter(|r| r.positive() > 0).count(),
        annotated: corpus.documents.iter().flat_map(|d| &d.mentions).filter(|m| m.label.0 != 0).count(),
        negative: corpus.documents.iter().flat_map(|d| &d.mentions).filter(|m| m.label.0 == 0).count(),
    }
}

/// `(cohort size, cohort instances)` for minimum `k`.
pub fn cohort(corpus: &Corpus, k: usize) -> (usize, usize) {
    let table = trigger_table(corpus);
    let sizes: Vec<usize> = table.values().map(Row::positive).filter(|&p| p > 0 && p >= k).collect();
    (sizes.len(), sizes.iter().sum())
}

#[derive(Debug, PartialEq)]
pub struct Dominance {
    pub single_event: usize,
    pub cohort: usize,
    pub cohort_single: usize,
    pub cohort_dominant_multi: usize,
    pub cohort_dominant_incl_single: usize,
    /// Dominant event per cohort trigger, `None` when not dominated.
    pub per_trigger: BTreeMap<String, Option<String>>,
}

pub fn dominance(corpus: &Corpus, k: usize, r: f64) -> Dominance {
    let mut out = Dominance {
        single_event: 0,
        cohort: 0,
        cohort_single: 0,
        cohort_dominant_multi: 0,
        cohort_dominant_incl_single: 0,
        per_trigger: BTreeMap::new(),
    };
    for (trigger, row) in trigger_table(corpus) {
        let p = row.positive();
        if p == 0 {
            continue;
        }
        let single = row.events.len() == 1;
        out.single_event += single as usize;
        if p < k {
            continue;
        }
        out.cohort += 1;
        out.cohort_single += single as usize;
        // first maximum in name order
        let mut best: Option<(&String, usize)> = None;
        for (e, &c) in &row.events {
            if best.is_none() || c > best.unwrap().1 {
                best = Some((e, c));
            }
        }
        let (event, top) = best.unwrap();
        let others = p - top;
        let dominant = top as f64 > r * others as f64;
        if dominant {
            out.cohort_dominant_incl_single += 1;
            if !single {
                out.cohort_dominant_multi += 1;
            }
        }
        out.per_trigger.insert(trigger, dominant.then(|| event.clone()));
    }
    out
}

/// Mentions per declared event, zero-count events included.
pub fn event_counts(corpus: &Corpus) -> BTreeMap<String, usize> {
    let mut counts: BTreeMap<String, usize> = corpus.event_types.iter().map(|e| (e.name.clone(), 0)).collect();
    for row in trigger_table(corpus).values() {
        for (e, c) in &row.events {
            *counts.get_mut(e).unwrap() += c;
        }
    }
    counts
}

pub fn topics(corpus: &Corpus) -> BTreeMap<String, usize> {
    let mut t = BTreeMap::new();
    for d in &corpus.documents {
        *t.entry(d.topic.clone().unwrap_or_else(|| "unknown".into())).or_insert(0) += 1;
    }
    t
}

/// Lexicon decision written out from the definition.
pub fn decide(model: &LexiconModel, trigger: &str, tau_neg: f64, tau_event: f64) -> Option<(String, f64)> {
    let entry = model.entries.get(trigger)?;
    let p: usize = entry.per_event_counts.values().sum();
    let max = *entry.per_event_counts.values().max()?;
    let event = entry.per_event_counts.iter().find(|(_, &c)| c == max)?.0.clone();
    let share = p as f64 / (p + entry.negative_count) as f64;
    let conf = max as f64 / p as f64;
    (share >= tau_neg && conf >= tau_event).then_some((event, conf))
}

/// Longest-leftmost matching by trying every span length at every position.
pub fn predict(model: &LexiconModel, tokens: &[String], tau_neg: f64, tau_event: f64) -> Vec<(usize, usize, String)> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let hit = (i + 1..=tokens.len())
            .rev()
            .find(|&end| model.entries.contains_key(&norm(&tokens[i..end].join(" "))));
        match hit {
            Some(end) => {
                if let Some((event, _)) = decide(model, &norm(&tokens[i..end].join(" ")), tau_neg, tau_event) {
                    out.push((i, end, event));
                }
                i = end;
            }
            None => i += 1,
        }
    }
    out
}

/// Per-event and micro `(tp, fp, fn)` of `model` on the corpus gold mentions.
/// `(tp, fp, fn)`
pub type Counts = (usize, usize, usize);

pub fn eval_counts(model: &LexiconModel, corpus: &Corpus) -> (BTreeMap<String, Counts>, Counts) {
    let names: BTreeMap<u32, &str> = corpus.event_types.iter().map(|e| (e.type_id.0, e.name.as_str())).collect();
    let t = model.thresholds;
    let mut gold = BTreeSet::new();
    let mut pred = BTreeSet::new();
    for doc in &corpus.documents {
        for m in doc.mentions.iter().filter(|m| m.label.0 != 0) {
            gold.insert((doc.doc_id.clone(), m.sent_idx, m.span.start, m.span.end, names[&m.label.0].to_owned()));
        }
        for s in &doc.sentences {
            for (a, b, e) in predict(model, &s.tokens, t.tau_neg, t.tau_event) {
                pred.insert((doc.doc_id.clone(), s.sent_idx, a, b, e));
            }
        }
    }
    let mut per: BTreeMap<String, Counts> = BTreeMap::new();
    for p in &pred {
        if gold.contains(p) {
            per.entry(p.4.clone()).or_default().0 += 1;
        } else {
            per.entry(p.4.clone()).or_default().1 += 1;
        }
    }
    for g in gold.difference(&pred) {
        per.entry(g.4.clone()).or_default().2 += 1;
    }
    let micro = per.values().fold((0, 0, 0), |acc, c| (acc.0 + c.0, acc.1 + c.1, acc.2 + c.2));
    (per, micro)
}

pub fn prf(tp: usize, fp: usize, fn_: usize) -> (f64, f64, f64) {
    let p = if tp + fp == 0 { 0.0 } else { tp as f64 / (tp + fp) as f64 };
    let r = if tp + fn_ == 0 { 0.0 } else { tp as f64 / (tp + fn_) as f64 };
    let f = if p + r == 0.0 { 0.0 } else { 2.0 * p * r / (p + r) };
    (p, r, f)
}
