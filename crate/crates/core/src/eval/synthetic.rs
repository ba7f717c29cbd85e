//! Seeded data generators: a two-tier synthetic dataset with an optional
//! stage component, and small random casebases for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::engine::is_coherent;
use crate::error::Result;
use crate::model::{
    Case, Casebase, Characterisation, Component, ComponentKind, ComponentSchema, FeatureSet, OutcomeNames, Polarity,
    Schema,
};
use crate::orders::{PreferenceSequence, PreorderSpec};

/// Physical-activity tier (high priority).
pub const PA_FEATURES: [&str; 10] = [
    "slI", "slD", "sbI", "sbD", "ltI", "ltD", "maI", "maD", "waI", "waD",
];
/// Patient-reported tier (low priority).
pub const PRO_FEATURES: [&str; 10] = [
    "faI", "faD", "qlI", "qlD", "pfI", "pfD", "fuI", "fuD", "mdI", "mdD",
];

#[derive(Clone, Debug, PartialEq)]
pub struct SyntheticSpec {
    pub n_cases: usize,
    pub n_test: usize,
    /// Stage component `<pd_0 .. pd_max>`, omitted when `None`.
    pub max_stage: Option<u32>,
    /// Chance that each tier feature is present.
    pub feature_rate: f64,
    /// High-tier features whose presence yields the non-default outcome.
    pub signal: Vec<String>,
    /// Chance of flipping each generated label.
    pub noise: f64,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        Self {
            n_cases: 60,
            n_test: 50,
            max_stage: Some(3),
            feature_rate: 0.2,
            signal: vec!["maD".into(), "waD".into(), "sbI".into()],
            noise: 0.0,
            seed: 1,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SyntheticData {
    pub casebase: Casebase,
    pub preferences: PreferenceSequence,
    pub test: Vec<Case>,
    /// Equivalent training pairs with differing labels.
    pub clashes: Vec<(String, String)>,
}

fn sample_features(rng: &mut ChaCha8Rng, names: &[&str], rate: f64) -> FeatureSet {
    names.iter().filter(|_| rng.random_bool(rate)).collect()
}

/// Seeded dataset over the tiers `pa ≻ pro (≻ stage)` with a planted label rule.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticData> {
    let mut components = vec![ComponentSchema::features("pa"), ComponentSchema::features("pro")];
    if let Some(max_stage) = spec.max_stage {
        components.push(ComponentSchema::stages("stage", max_stage));
    }
    let schema = Schema::new(components);
    let names: Vec<&str> = schema.components().iter().map(|c| c.name.as_str()).collect();
    let preferences = PreferenceSequence::from_names(&schema, &names)?;

    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut draw = |prefix: &str, i: usize| {
        let pa = sample_features(&mut rng, &PA_FEATURES, spec.feature_rate);
        let pro = sample_features(&mut rng, &PRO_FEATURES, spec.feature_rate);
        let hit = spec.signal.iter().any(|s| pa.contains(s));
        let mut outcome = if hit { Polarity::NonDefault } else { Polarity::Default };
        if spec.noise > 0.0 && rng.random_bool(spec.noise) {
            outcome = outcome.flip();
        }
        let mut values = vec![Component::Features(pa), Component::Features(pro)];
        if let Some(max_stage) = spec.max_stage {
            values.push(Component::Stage(rng.random_range(0..=max_stage)));
        }
        Case::new(format!("{prefix}{i:03}"), Characterisation::new(values), outcome)
    };
    let train: Vec<Case> = (0..spec.n_cases).map(|i| draw("T", i)).collect();
    let test: Vec<Case> = (0..spec.n_test).map(|i| draw("Q", i)).collect();

    let casebase = Casebase::validated(schema, OutcomeNames::new("pd", "sd"), None, train)?;
    let clashes = is_coherent(&casebase, &preferences)?.clashes;
    Ok(SyntheticData {
        casebase,
        preferences,
        test,
        clashes,
    })
}

/// Component kinds drawn by [`random_casebase`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomSchema {
    /// 2–3 components of any kind, all ordered, in random preference order.
    Mixed,
    /// One feature-set and one stage component ordered `⟨⊇, ⊒⟩`.
    FeaturesThenStages,
    /// A single ordered component of random kind.
    Single,
}

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub schema: RandomSchema,
    pub max_cases: usize,
    pub alphabet: usize,
    pub max_value: u32,
    /// Relabel cases that would clash with an equivalent case or the default.
    pub coherent: bool,
}

impl Default for RandomSpec {
    fn default() -> Self {
        Self {
            schema: RandomSchema::Mixed,
            max_cases: 12,
            alphabet: 4,
            max_value: 3,
            coherent: true,
        }
    }
}

const LETTERS: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

fn random_kind(rng: &mut impl Rng, max_value: u32) -> ComponentKind {
    match rng.random_range(0..3) {
        0 => ComponentKind::FeatureSet,
        1 => ComponentKind::StagePrefix { max_stage: max_value },
        _ => ComponentKind::Integer { min: 0 },
    }
}

/// A characterisation conforming to `schema`.
pub fn random_characterisation(rng: &mut impl Rng, schema: &Schema, alphabet: usize, max_value: u32) -> Characterisation {
    let alphabet = alphabet.min(LETTERS.len());
    Characterisation::new(
        schema
            .components()
            .iter()
            .map(|c| match c.kind {
                ComponentKind::FeatureSet => {
                    Component::Features(LETTERS[..alphabet].iter().filter(|_| rng.random_bool(0.4)).collect())
                }
                ComponentKind::StagePrefix { max_stage } => Component::Stage(rng.random_range(0..=max_stage)),
                ComponentKind::Integer { min } => Component::Integer(min + i64::from(rng.random_range(0..=max_value))),
            })
            .collect(),
    )
}

/// Random casebase and preferences with a least-element default.
pub fn random_casebase(rng: &mut impl Rng, spec: &RandomSpec) -> (Casebase, PreferenceSequence) {
    let schema = match spec.schema {
        RandomSchema::Mixed => {
            let n = rng.random_range(2..=3);
            Schema::new(
                (0..n)
                    .map(|i| ComponentSchema {
                        name: format!("k{i}"),
                        kind: random_kind(rng, spec.max_value),
                    })
                    .collect(),
            )
        }
        RandomSchema::FeaturesThenStages => Schema::new(vec![
            ComponentSchema::features("F"),
            ComponentSchema::stages("S", spec.max_value),
        ]),
        RandomSchema::Single => Schema::new(vec![ComponentSchema {
            name: "k0".into(),
            kind: random_kind(rng, spec.max_value),
        }]),
    };
    let mut order: Vec<usize> = (0..schema.len()).collect();
    if spec.schema == RandomSchema::Mixed {
        order.shuffle(rng);
    }
    let preferences = PreferenceSequence::new(
        order
            .iter()
            .map(|&i| PreorderSpec::for_component(&schema, i).expect("index in range"))
            .collect(),
    )
    .expect("distinct components");

    let n_cases = rng.random_range(0..=spec.max_cases);
    let mut cases: Vec<Case> = Vec::with_capacity(n_cases);
    for i in 0..n_cases {
        let x = random_characterisation(rng, &schema, spec.alphabet, spec.max_value);
        let mut outcome = if rng.random_bool(0.5) {
            Polarity::Default
        } else {
            Polarity::NonDefault
        };
        if spec.coherent {
            let range = preferences.full_range();
            let least = Case::new("", schema.least_characterisation(), Polarity::Default);
            if let Some(twin) = std::iter::once(&least)
                .chain(&cases)
                .find(|c| preferences.eq_range(range.clone(), &c.characterisation, &x).unwrap_or(false))
            {
                outcome = twin.outcome;
            }
        }
        cases.push(Case::new(format!("c{i:02}"), x, outcome));
    }
    let cb = Casebase::new(schema, OutcomeNames::new("-", "+"), None, cases);
    (cb, preferences)
}

/// `random_casebase` seeded from a single integer.
pub fn seeded_casebase(seed: u64, spec: &RandomSpec) -> (Casebase, PreferenceSequence, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (cb, p) = random_casebase(&mut rng, spec);
    (cb, p, rng)
}
