//! Suite-level checks shared by the property tests and the acceptance target.

use std::collections::BTreeSet;

use aacbrp::af::attacks_all_outside;
use aacbrp::eval::synthetic::{RandomSchema, RandomSpec};
use aacbrp::{
    frameworks_equal, grounded_extension, is_acyclic, potential_attack_order, AacbrP, AttackLabel, ClassicAacbr,
    ClassicOrder, EngineConfig, LabelKind, Polarity, StagesAacbr, StagesVariant,
};

use super::{brute_force_grounded, random_suite, rendered, Instance, Oracle};

#[derive(Debug, Default)]
pub struct Tally {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl Tally {
    pub fn fail(&mut self, msg: String) {
        if self.violations.len() < 20 {
            self.violations.push(msg);
        } else if self.violations.len() == 20 {
            self.violations.push("...".into());
        }
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn mixed_suite(count: u64) -> Vec<Instance> {
    random_suite(count, 11, &RandomSpec::default(), 5)
}

fn engine(inst: &Instance) -> AacbrP {
    AacbrP::new(inst.casebase.clone(), EngineConfig::new(inst.preferences.clone())).expect("regular random casebase")
}

pub fn acyclicity(suite: &[Instance]) -> Tally {
    let mut t = Tally::default();
    for inst in suite {
        let e = engine(inst);
        for q in &inst.queries {
            t.checked += 1;
            if !is_acyclic(&e.build_framework(q).unwrap(), &[LabelKind::NewCase]) {
                t.fail(format!("seed {} has a cycle", inst.seed));
            }
        }
    }
    t
}

#[derive(Debug, Default)]
pub struct TheoremTally {
    pub tally: Tally,
    pub nearest_agree: usize,
    pub preferred_only: usize,
}

/// Theorems on nearest and preferred cases, purity of 𝔾 and the oracle
/// definitions of both case sets.
pub fn theorems(suite: &[Instance]) -> TheoremTally {
    let mut out = TheoremTally::default();
    for inst in suite {
        let e = engine(inst);
        let oracle = Oracle::new(&inst.casebase, &inst.preferences);
        for q in &inst.queries {
            let t = &mut out.tally;
            t.checked += 1;
            let prediction = e.predict(q).unwrap();
            let y = prediction.outcome.polarity;
            let nearest: BTreeSet<String> = e.nearest_cases(q).unwrap().iter().map(|c| c.id.clone()).collect();
            let preferred: BTreeSet<String> = e.preferred_cases(q).unwrap().iter().map(|c| c.id.clone()).collect();
            if nearest != oracle.nearest(q) || preferred != oracle.preferred(q) {
                t.fail(format!("seed {}: nearest/preferred differ from oracle", inst.seed));
            }
            if nearest.is_empty() || preferred.is_empty() || !preferred.is_subset(&nearest) {
                t.fail(format!("seed {}: empty or non-nested case sets", inst.seed));
            }
            let outcome = |id: &String| {
                oracle
                    .arguments()
                    .into_iter()
                    .find(|c| &c.id == id)
                    .map(|c| c.outcome)
                    .unwrap()
            };
            let agree = |ids: &BTreeSet<String>| -> Option<Polarity> {
                let set: BTreeSet<Polarity> = ids.iter().map(outcome).collect();
                (set.len() == 1).then(|| *set.iter().next().unwrap())
            };
            let (n, p) = (agree(&nearest), agree(&preferred));
            if let Some(yn) = n {
                out.nearest_agree += 1;
                if yn != y {
                    t.fail(format!("seed {}: nearest agree on {yn:?}, predicted {y:?}", inst.seed));
                }
            }
            if let Some(yp) = p {
                if yp != y {
                    t.fail(format!("seed {}: preferred agree on {yp:?}, predicted {y:?}", inst.seed));
                }
                if n.is_none() {
                    out.preferred_only += 1;
                }
                for arg in &prediction.grounded.grounded {
                    if let aacbrp::ArgumentRef::Case(id) = arg {
                        if inst.casebase.case(id).unwrap().outcome != yp {
                            t.fail(format!("seed {}: {id} in grounded with the other outcome", inst.seed));
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn most_preferred_order(suite: &[Instance]) -> Tally {
    let mut t = Tally::default();
    for inst in suite {
        let e = engine(inst);
        let oracle = Oracle::new(&inst.casebase, &inst.preferences);
        let lookup = |r: &aacbrp::ArgumentRef| match r {
            aacbrp::ArgumentRef::Default => inst.casebase.default_case(),
            aacbrp::ArgumentRef::Case(id) => inst.casebase.case(id).unwrap(),
            aacbrp::ArgumentRef::NewCase => unreachable!(),
        };
        for edge in e.casebase_attacks() {
            t.checked += 1;
            let AttackLabel::Order(i) = edge.label else {
                t.fail(format!("seed {}: non-order label on {edge}", inst.seed));
                continue;
            };
            let (a, b) = (lookup(&edge.attacker), lookup(&edge.target));
            let again = potential_attack_order(&inst.preferences, a, b).unwrap();
            let orders = oracle.potential_orders(a, b);
            if again != Some(i) || orders.first() != Some(&i) || orders.iter().any(|&k| k < i) {
                t.fail(format!("seed {}: {edge} not on its most preferred order", inst.seed));
            }
        }
    }
    t
}

/// Engine edges against the definitional oracle on casebases of ≤ `max_cases`.
pub fn attack_oracle(suite: &[Instance], max_cases: usize) -> Tally {
    let mut t = Tally::default();
    for inst in suite.iter().filter(|i| i.casebase.len() <= max_cases) {
        let e = engine(inst);
        let oracle = Oracle::new(&inst.casebase, &inst.preferences);
        t.checked += 1;
        let mut mined = rendered(e.casebase_attacks());
        mined.extend(rendered(e.incoherent_attacks()));
        if mined != oracle.casebase_edges() {
            t.fail(format!("seed {}: casebase attacks differ from oracle", inst.seed));
        }
        for q in &inst.queries {
            if rendered(&e.new_case_attacks(q).unwrap()) != oracle.new_case_edges(q) {
                t.fail(format!("seed {}: new-case attacks differ from oracle", inst.seed));
            }
        }
    }
    t
}

/// Layered grounded extension against subset enumeration, plus stability
/// on acyclic frameworks.
pub fn grounded_oracle(suite: &[Instance], max_args: usize) -> Tally {
    let mut t = Tally::default();
    for inst in suite {
        let e = AacbrP::mine(inst.casebase.clone(), inst.preferences.clone(), false).unwrap();
        for q in &inst.queries {
            let af = e.build_framework(q).unwrap();
            if af.arguments().len() > max_args {
                continue;
            }
            t.checked += 1;
            let g = grounded_extension(&af);
            if g.grounded != brute_force_grounded(&af) {
                t.fail(format!("seed {}: grounded differs from brute force", inst.seed));
            }
            if is_acyclic(&af, &[]) && !attacks_all_outside(&af, &g.grounded) {
                t.fail(format!("seed {}: grounded not stable on acyclic framework", inst.seed));
            }
        }
    }
    t
}

pub fn classic_equivalence(count: u64, coherent: bool) -> Tally {
    let spec = RandomSpec {
        schema: RandomSchema::Single,
        max_cases: 10,
        coherent,
        ..RandomSpec::default()
    };
    let mut t = Tally::default();
    for inst in random_suite(count, 23 + coherent as u64, &spec, 3) {
        t.checked += 1;
        let e = AacbrP::mine(inst.casebase.clone(), inst.preferences.clone(), false).unwrap();
        let order = ClassicOrder::Component(inst.preferences.orders()[0]);
        let classic = ClassicAacbr::new(inst.casebase.clone(), order).unwrap();
        for q in &inst.queries {
            let (a, b) = (e.predict(q).unwrap(), classic.predict(q).unwrap());
            if !frameworks_equal(&a.framework, &b.framework, &[]).unwrap().is_equal() {
                t.fail(format!("seed {}: classic framework differs", inst.seed));
            }
            if a.outcome != b.outcome {
                t.fail(format!("seed {}: classic prediction differs", inst.seed));
            }
        }
    }
    t
}

pub fn stages_equivalence(count: u64) -> Tally {
    let spec = RandomSpec {
        schema: RandomSchema::FeaturesThenStages,
        max_cases: 10,
        ..RandomSpec::default()
    };
    let mut t = Tally::default();
    for inst in random_suite(count, 37, &spec, 3) {
        t.checked += 1;
        let e = AacbrP::new(inst.casebase.clone(), EngineConfig::new(inst.preferences.clone())).unwrap();
        let stages = StagesAacbr::new(inst.casebase.clone(), StagesVariant::ModifiedConcision).unwrap();
        for q in &inst.queries {
            let (a, b) = (e.predict(q).unwrap(), stages.predict(q).unwrap());
            let diff = frameworks_equal(&a.framework, &b.framework, &[]).unwrap();
            if !diff.is_equal() {
                t.fail(format!("seed {}: stages framework differs: {diff:?}", inst.seed));
            }
            if a.outcome != b.outcome {
                t.fail(format!("seed {}: stages prediction differs", inst.seed));
            }
        }
    }
    t
}
