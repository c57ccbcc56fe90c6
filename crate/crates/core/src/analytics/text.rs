//! Aligned-column text rendering of reports for terminals.

use std::fmt::Write;

use super::{DominanceRatio, DominanceReport, OverviewReport, ReviewCandidate, SparsityReport};

pub trait TextReport {
    fn to_text(&self) -> String;
}

/// `1234567` → `"1,234,567"`
pub fn thousands(n: usize) -> String {
    let digits = n.to_string();
    let mut out = String::with_capacity(digits.len() + digits.len() / 3);
    for (i, ch) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push(',');
        }
        out.push(ch);
    }
    out
}

fn pct(f: f64) -> String {
    format!("{:.1}%", f * 100.0)
}

fn rows(out: &mut String, rows: &[(&str, String)]) {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
}

impl TextReport for SparsityReport {
    fn to_text(&self) -> String {
        let mut out = format!(
            "candidate={} positive={} instances={} cohort={} coverage={:.0}%\n\n",
            thousands(self.candidate_triggers),
            thousands(self.positive_triggers),
            thousands(self.annotated_instances),
            thousands(self.cohort_size),
            self.cohort_coverage_fraction * 100.0
        );
        rows(
            &mut out,
            &[
                ("dataset", self.dataset.clone()),
                ("k", self.min_instances.to_string()),
                ("candidate triggers", thousands(self.candidate_triggers)),
                ("positive triggers", thousands(self.positive_triggers)),
                ("annotated instances", thousands(self.annotated_instances)),
                (
                    "cohort triggers",
                    format!("{} ({} of positive)", thousands(self.cohort_size), pct(self.cohort_trigger_fraction)),
                ),
                (
                    "cohort instances",
                    format!("{} ({} coverage)", thousands(self.cohort_instances), pct(self.cohort_coverage_fraction)),
                ),
            ],
        );
        out
    }
}

impl TextReport for DominanceReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        rows(
            &mut out,
            &[
                ("dataset", self.dataset.clone()),
                ("k", self.min_instances.to_string()),
                ("ratio threshold", format!("> {}", self.dominance_ratio)),
                ("positive triggers", thousands(self.positive_triggers)),
                (
                    "single-event triggers",
                    format!("{} ({})", thousands(self.single_event_triggers), pct(self.single_event_fraction)),
                ),
                ("cohort triggers", thousands(self.cohort_size)),
                (
                    "cohort dominant (multi-event)",
                    format!("{} ({})", thousands(self.cohort_dominant_count), pct(self.cohort_dominant_fraction)),
                ),
                (
                    "cohort dominant (incl. single)",
                    format!(
                        "{} ({})",
                        thousands(self.cohort_dominant_incl_single_count),
                        pct(self.cohort_dominant_incl_single_fraction)
                    ),
                ),
            ],
        );
        if !self.triggers.is_empty() {
            out.push('\n');
            let tw = self.triggers.iter().map(|t| t.trigger.chars().count()).max().unwrap_or(7).max(7);
            let _ = writeln!(out, "{:<tw$}  {:>9}  {:>6}  {:>9}  dominant event", "trigger", "instances", "events", "ratio");
            for t in &self.triggers {
                let ratio = match t.ratio {
                    DominanceRatio::Unbounded => "∞".to_string(),
                    r => format!("{:.2}", r.value()),
                };
                let _ = writeln!(
                    out,
                    "{:<tw$}  {:>9}  {:>6}  {:>9}  {}",
                    t.trigger,
                    thousands(t.instances),
                    t.events,
                    ratio,
                    t.dominant_event.as_deref().unwrap_or("-")
                );
            }
        }
        out
    }
}

impl TextReport for OverviewReport {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{}: {} event types, {} annotated instances\n",
            self.dataset,
            self.events.len(),
            thousands(self.total_instances)
        );
        let ew = self.events.iter().map(|e| e.event.chars().count()).max().unwrap_or(5).max(5);
        let _ = writeln!(out, "{:<ew$}  {:>9}  {:>8}  top triggers", "event", "mentions", "triggers");
        for e in &self.events {
            let top: Vec<String> = e.top_triggers.iter().take(5).map(|t| format!("{}({})", t.trigger, t.count)).collect();
            let _ = writeln!(
                out,
                "{:<ew$}  {:>9}  {:>8}  {}",
                e.event,
                thousands(e.mention_count),
                e.distinct_triggers,
                top.join(", ")
            );
        }
        let _ = writeln!(
            out,
            "\n{} event types below {} instances: {}",
            self.events_below.len(),
            self.rare_threshold,
            self.events_below.join(", ")
        );
        let _ = writeln!(out, "\ntopics:");
        let tw = self.topics.keys().map(|t| t.chars().count()).max().unwrap_or(0);
        for (topic, n) in &self.topics {
            let _ = writeln!(out, "  {topic:<tw$}  {}", thousands(*n));
        }
        out
    }
}

impl TextReport for [ReviewCandidate] {
    fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{:<19}  {:>6}  {:<24}  {:<16}  rationale", "category", "score", "mention", "label");
        for c in self {
            let _ = writeln!(
                out,
                "{:<19}  {:>6.3}  {:<24}  {:<16}  {}",
                c.category.as_str(),
                c.score,
                format!("{}#{}/{}", c.doc_id, c.sent_idx, c.mention_id),
                c.label,
                c.rationale
            );
        }
        let _ = writeln!(out, "{} candidate(s)", self.len());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thousands_separators() {
        assert_eq!(thousands(0), "0");
        assert_eq!(thousands(999), "999");
        assert_eq!(thousands(50388), "50,388");
        assert_eq!(thousands(1234567), "1,234,567");
    }
}
