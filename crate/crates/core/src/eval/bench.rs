//! Scaling measurements for framework construction.

use std::time::{Duration, Instant};

use crate::engine::AacbrP;
use crate::error::{Error, Result};
use crate::model::{Case, Casebase, Characterisation, ComponentSchema, Schema};
use crate::orders::{PreferenceSequence, PreorderSpec};

/// Copy component `component` so that it appears `m` times in every
/// characterisation, with one order per copy taking the original's place.
pub fn replicate_component(
    cb: &Casebase,
    prefs: &PreferenceSequence,
    component: usize,
    m: usize,
) -> Result<(Casebase, PreferenceSequence)> {
    let schema = cb.schema();
    let base = schema.get(component).ok_or(Error::ComponentOutOfBounds {
        index: component,
        arity: schema.len(),
    })?;
    if m == 0 {
        return Err(Error::InvalidArgument("replication factor must be positive".into()));
    }
    let mut components: Vec<ComponentSchema> = schema.components().to_vec();
    let copies: Vec<usize> = (1..m)
        .map(|j| {
            components.push(ComponentSchema {
                name: format!("{}#{}", base.name, j + 1),
                kind: base.kind,
            });
            components.len() - 1
        })
        .collect();
    let new_schema = Schema::new(components);

    let widen = |x: &Characterisation| {
        let mut values = x.components().to_vec();
        let v = values[component].clone();
        values.extend(std::iter::repeat_n(v, m - 1));
        Characterisation::new(values)
    };

    let mut orders = Vec::new();
    for spec in prefs.orders() {
        orders.push(*spec);
        if spec.component == component {
            orders.extend(copies.iter().map(|&c| PreorderSpec::new(c, spec.comparator)));
        }
    }
    let default = widen(&cb.default_case().characterisation);
    let cases = cb
        .cases()
        .iter()
        .map(|c| Case::new(c.id.clone(), widen(&c.characterisation), c.outcome))
        .collect();
    let widened = Casebase::new(new_schema, cb.outcomes().clone(), Some(default), cases);
    Ok((widened, PreferenceSequence::new(orders)?))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalingPoint {
    pub m: usize,
    pub orders: usize,
    pub median: Duration,
    pub casebase_attacks: usize,
}

impl ScalingPoint {
    /// Median time relative to another point.
    pub fn ratio_to(&self, other: &ScalingPoint) -> f64 {
        self.median.as_secs_f64() / other.median.as_secs_f64().max(f64::MIN_POSITIVE)
    }
}

fn median(mut samples: Vec<Duration>) -> Duration {
    samples.sort();
    samples[samples.len() / 2]
}

/// Sequential build time of the casebase framework for each replication factor.
pub fn bench_scaling(
    cb: &Casebase,
    prefs: &PreferenceSequence,
    component: usize,
    m_values: &[usize],
    repeats: usize,
) -> Result<Vec<ScalingPoint>> {
    let repeats = repeats.max(1);
    let mut points = Vec::with_capacity(m_values.len());
    for &m in m_values {
        let (wide, wide_prefs) = replicate_component(cb, prefs, component, m)?;
        let query = wide.default_case().characterisation.clone();
        let mut samples = Vec::with_capacity(repeats);
        let mut attacks = 0;
        for _ in 0..repeats {
            let start = Instant::now();
            let engine = AacbrP::mine(wide.clone(), wide_prefs.clone(), false)?;
            let af = engine.build_framework(&query)?;
            samples.push(start.elapsed());
            attacks = engine.casebase_attacks().len();
            std::hint::black_box(af);
        }
        points.push(ScalingPoint {
            m,
            orders: wide_prefs.len(),
            median: median(samples),
            casebase_attacks: attacks,
        });
    }
    Ok(points)
}
