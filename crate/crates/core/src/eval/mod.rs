//! Evaluation harness: metrics, baselines, synthetic data and timing.

pub mod bench;
pub mod knn;
pub mod metrics;
pub mod synthetic;

use num_traits::Float;
use rayon::prelude::*;

use crate::classifier::Classifier;
use crate::error::Result;
use crate::model::{Case, Polarity};

pub use bench::{bench_scaling, replicate_component, ScalingPoint};
pub use knn::{knn_predict, Knn};
pub use metrics::{metrics_from_confusion, render_table, Confusion, EvaluationReport, Undefined};
pub use synthetic::{generate_synthetic, SyntheticData, SyntheticSpec};

/// Predictions for `test`, in input order.
pub fn predict_all(model: &dyn Classifier, test: &[Case], parallel: bool) -> Result<Vec<Polarity>> {
    if parallel {
        test.par_iter().map(|c| model.classify(&c.characterisation)).collect()
    } else {
        test.iter().map(|c| model.classify(&c.characterisation)).collect()
    }
}

pub fn confusion(predicted: &[Polarity], test: &[Case], positive: Polarity) -> Confusion {
    let mut counts = Confusion::default();
    for (p, c) in predicted.iter().zip(test) {
        counts.record(*p == positive, c.outcome == positive);
    }
    counts
}

/// Score `model` on labelled test cases with `positive` as the positive class.
pub fn evaluate<F: Float>(
    model: &dyn Classifier,
    test: &[Case],
    positive: Polarity,
    parallel: bool,
) -> Result<EvaluationReport<F>> {
    let predicted = predict_all(model, test, parallel)?;
    let counts = confusion(&predicted, test, positive);
    metrics_from_confusion(counts, model.casebase().outcome(positive))
}
