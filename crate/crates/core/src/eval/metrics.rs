use std::fmt::Write as _;

use num_traits::Float;

use crate::error::{Error, Result};
use crate::model::Outcome;

/// Confusion counts relative to a positive class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Confusion {
    pub tp: usize,
    pub fp: usize,
    pub fn_: usize,
    pub tn: usize,
}

impl Confusion {
    pub fn new(tp: usize, fp: usize, fn_: usize, tn: usize) -> Self {
        Self { tp, fp, fn_, tn }
    }

    pub fn total(&self) -> usize {
        self.tp + self.fp + self.fn_ + self.tn
    }

    /// Counts with the other class taken as positive.
    pub fn swapped(&self) -> Self {
        Self {
            tp: self.tn,
            fp: self.fn_,
            fn_: self.fp,
            tn: self.tp,
        }
    }

    pub fn record(&mut self, predicted_positive: bool, actual_positive: bool) {
        match (predicted_positive, actual_positive) {
            (true, true) => self.tp += 1,
            (true, false) => self.fp += 1,
            (false, true) => self.fn_ += 1,
            (false, false) => self.tn += 1,
        }
    }
}

/// Metrics whose denominator was zero; they are reported as 0.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Undefined {
    pub precision: bool,
    pub recall: bool,
    pub f1: bool,
}

impl Undefined {
    pub fn any(&self) -> bool {
        self.precision || self.recall || self.f1
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationReport<F> {
    pub counts: Confusion,
    pub accuracy: F,
    pub precision: F,
    pub recall: F,
    pub f1: F,
    pub positive: Outcome,
    pub undefined: Undefined,
}

fn ratio<F: Float>(num: usize, den: usize) -> Option<F> {
    (den > 0).then(|| F::from(num).unwrap() / F::from(den).unwrap())
}

pub fn metrics_from_confusion<F: Float>(counts: Confusion, positive: Outcome) -> Result<EvaluationReport<F>> {
    let total = counts.total();
    if total == 0 {
        return Err(Error::EmptyConfusion);
    }
    let accuracy = ratio::<F>(counts.tp + counts.tn, total).unwrap();
    let precision = ratio::<F>(counts.tp, counts.tp + counts.fp);
    let recall = ratio::<F>(counts.tp, counts.tp + counts.fn_);
    let (p, r) = (precision.unwrap_or(F::zero()), recall.unwrap_or(F::zero()));
    let f1 = (p + r > F::zero()).then(|| F::from(2.0).unwrap() * p * r / (p + r));
    Ok(EvaluationReport {
        counts,
        accuracy,
        precision: p,
        recall: r,
        f1: f1.unwrap_or(F::zero()),
        positive,
        undefined: Undefined {
            precision: precision.is_none(),
            recall: recall.is_none(),
            f1: f1.is_none(),
        },
    })
}

impl<F: Float + std::fmt::Display> EvaluationReport<F> {
    pub fn key_values(&self, prefix: &str) -> String {
        let mut out = String::new();
        let c = &self.counts;
        for (k, v) in [("tp", c.tp), ("fp", c.fp), ("fn", c.fn_), ("tn", c.tn)] {
            let _ = writeln!(out, "{prefix}{k}={v}");
        }
        for (k, v) in [
            ("accuracy", self.accuracy),
            ("precision", self.precision),
            ("recall", self.recall),
            ("f1", self.f1),
        ] {
            let _ = writeln!(out, "{prefix}{k}={v:.4}");
        }
        let _ = writeln!(out, "{prefix}positive={}", self.positive.name);
        let flags: Vec<&str> = [
            ("precision", self.undefined.precision),
            ("recall", self.undefined.recall),
            ("f1", self.undefined.f1),
        ]
        .into_iter()
        .filter(|(_, set)| *set)
        .map(|(k, _)| k)
        .collect();
        let _ = writeln!(out, "{prefix}undefined={}", flags.join(","));
        out
    }
}

/// Plain-text table, one row per named report.
pub fn render_table<F: Float + std::fmt::Display>(rows: &[(String, EvaluationReport<F>)]) -> String {
    let width = rows.iter().map(|(n, _)| n.len()).max().unwrap_or(5).max(5);
    let mut out = format!(
        "{:<width$}  {:>8}  {:>9}  {:>6}  {:>6}\n",
        "model", "accuracy", "precision", "recall", "f1"
    );
    for (name, r) in rows {
        let mark = |v: F, undefined: bool| {
            if undefined {
                format!("{v:.2}*")
            } else {
                format!("{v:.2}")
            }
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:>8}  {:>9}  {:>6}  {:>6}",
            name,
            format!("{:.2}", r.accuracy),
            mark(r.precision, r.undefined.precision),
            mark(r.recall, r.undefined.recall),
            mark(r.f1, r.undefined.f1),
        );
    }
    if rows.iter().any(|(_, r)| r.undefined.any()) {
        out.push_str("* zero denominator, reported as 0\n");
    }
    out
}
