//! Shared fixtures and brute-force oracles for the integration suites.
//!
//! The oracles re-derive every relation straight from component values and
//! never call into the engine's comparison or mining code.
#![allow(dead_code)]

use std::collections::BTreeSet;

use aacbrp::eval::synthetic::{random_casebase, random_characterisation, RandomSpec};
use aacbrp::{
    ArgumentRef, ArgumentationFramework, AttackEdge, Case, Casebase, Characterisation, Component, ComponentKind,
    ComponentSchema, OutcomeNames, Polarity, PreferenceSequence, Schema,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub mod checks;

pub use Polarity::{Default as Neg, NonDefault as Pos};

pub fn fs(items: &[&str]) -> Component {
    Component::features(items)
}

pub fn hl(h: &[&str], l: &[&str]) -> Characterisation {
    Characterisation::new(vec![fs(h), fs(l)])
}

pub fn fst(f: &[&str], s: u32) -> Characterisation {
    Characterisation::new(vec![fs(f), Component::Stage(s)])
}

fn tiers() -> (Schema, PreferenceSequence) {
    let schema = Schema::new(vec![ComponentSchema::features("H"), ComponentSchema::features("L")]);
    let prefs = PreferenceSequence::from_names(&schema, &["H", "L"]).unwrap();
    (schema, prefs)
}

/// Tiered casebase over `⟨⊇_H, ⊇_L⟩` with default `(∅, ∅, −)`.
pub fn tiered(cases: Vec<Case>) -> (Casebase, PreferenceSequence) {
    let (schema, prefs) = tiers();
    (Casebase::validated(schema, OutcomeNames::new("-", "+"), None, cases).unwrap(), prefs)
}

pub fn example1() -> (Casebase, PreferenceSequence) {
    tiered(vec![
        Case::new("C1", hl(&[], &["a", "b"]), Pos),
        Case::new("C2", hl(&["c"], &[]), Pos),
        Case::new("C3", hl(&["d"], &[]), Neg),
    ])
}

pub fn n1() -> Characterisation {
    hl(&["d"], &["a", "b"])
}

pub fn n2() -> Characterisation {
    hl(&["c"], &["a"])
}

pub fn preferred_example() -> (Casebase, PreferenceSequence) {
    tiered(vec![
        Case::new("C1", hl(&[], &["a", "b"]), Pos),
        Case::new("C2", hl(&["c"], &[]), Pos),
        Case::new("C4", hl(&["d"], &["a"]), Neg),
        Case::new("C5", hl(&["c", "d"], &["a"]), Neg),
    ])
}

pub fn n3() -> Characterisation {
    hl(&["c", "d"], &["a", "b"])
}

pub fn blocked_a() -> (Casebase, PreferenceSequence) {
    tiered(vec![
        Case::new("alpha", hl(&["c", "d"], &["a", "b"]), Pos),
        Case::new("gamma", hl(&["c", "d"], &["a"]), Pos),
    ])
}

pub fn blocked_b() -> (Casebase, PreferenceSequence) {
    tiered(vec![
        Case::new("alpha", hl(&["c", "d"], &["a", "b"]), Pos),
        Case::new("gamma", hl(&[], &["a", "b"]), Pos),
    ])
}

/// `⟨⊇, ⊒⟩` casebase with default `(∅, ⟨⟩, +)`.
pub fn properties_example() -> (Casebase, PreferenceSequence) {
    let schema = Schema::new(vec![ComponentSchema::features("F"), ComponentSchema::stages("S", 3)]);
    let prefs = PreferenceSequence::from_names(&schema, &["F", "S"]).unwrap();
    let cb = Casebase::validated(
        schema,
        OutcomeNames::new("+", "-"),
        None,
        vec![
            Case::new("C'1", fst(&["a", "b", "c"], 2), Polarity::Default),
            Case::new("C'2", fst(&["a"], 1), Polarity::NonDefault),
            Case::new("C'3", fst(&["a", "b"], 3), Polarity::Default),
        ],
    )
    .unwrap();
    (cb, prefs)
}

pub fn n_prime() -> Characterisation {
    fst(&["a", "b", "c"], 2)
}

pub fn rendered(edges: &BTreeSet<AttackEdge>) -> BTreeSet<String> {
    edges.iter().map(ToString::to_string).collect()
}

pub fn framework_edges(af: &ArgumentationFramework) -> BTreeSet<String> {
    rendered(af.attacks())
}

pub fn strings(items: &[&str]) -> BTreeSet<String> {
    items.iter().map(|s| s.to_string()).collect()
}

// ---------------------------------------------------------------- random suite

pub struct Instance {
    pub seed: u64,
    pub casebase: Casebase,
    pub preferences: PreferenceSequence,
    pub queries: Vec<Characterisation>,
}

pub fn random_suite(count: u64, base_seed: u64, spec: &RandomSpec, queries: usize) -> Vec<Instance> {
    (0..count)
        .map(|k| {
            let seed = base_seed.wrapping_mul(1_000_003).wrapping_add(k);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (casebase, preferences) = random_casebase(&mut rng, spec);
            let queries = (0..queries)
                .map(|_| random_characterisation(&mut rng, casebase.schema(), spec.alphabet, spec.max_value))
                .collect();
            Instance {
                seed,
                casebase,
                preferences,
                queries,
            }
        })
        .collect()
}

// ---------------------------------------------------------------- order oracle

/// `x ≽ y` on a single component, from values alone.
pub fn geq_component(x: &Component, y: &Component) -> bool {
    match (x, y) {
        (Component::Features(a), Component::Features(b)) => b.iter().all(|f| a.contains(f)),
        (Component::Stage(a), Component::Stage(b)) => a >= b,
        (Component::Integer(a), Component::Integer(b)) => a >= b,
        _ => panic!("kind mismatch in oracle"),
    }
}

pub struct Oracle<'a> {
    pub cb: &'a Casebase,
    /// Component index of each order, most important first.
    pub components: Vec<usize>,
}

impl<'a> Oracle<'a> {
    pub fn new(cb: &'a Casebase, prefs: &PreferenceSequence) -> Self {
        Self {
            cb,
            components: prefs.orders().iter().map(|o| o.component).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.components.len()
    }

    pub fn ge(&self, i: usize, x: &Characterisation, y: &Characterisation) -> bool {
        let c = self.components[i];
        geq_component(&x.components()[c], &y.components()[c])
    }

    pub fn gt(&self, i: usize, x: &Characterisation, y: &Characterisation) -> bool {
        self.ge(i, x, y) && !self.ge(i, y, x)
    }

    pub fn eq(&self, i: usize, x: &Characterisation, y: &Characterisation) -> bool {
        self.ge(i, x, y) && self.ge(i, y, x)
    }

    pub fn ge_all(&self, x: &Characterisation, y: &Characterisation) -> bool {
        (0..self.n()).all(|i| self.ge(i, x, y))
    }

    pub fn eq_all(&self, x: &Characterisation, y: &Characterisation) -> bool {
        (0..self.n()).all(|i| self.eq(i, x, y))
    }

    /// Every `i` with `a ⇝ᵖᵢ b`, by the definition taken literally.
    pub fn potential_orders(&self, a: &Case, b: &Case) -> Vec<usize> {
        if a.outcome == b.outcome {
            return vec![];
        }
        let (x, y) = (&a.characterisation, &b.characterisation);
        (0..self.n())
            .filter(|&i| self.gt(i, x, y) && (0..i).all(|k| self.eq(k, x, y)))
            .collect()
    }

    pub fn potential(&self, a: &Case, b: &Case) -> Option<usize> {
        self.potential_orders(a, b).into_iter().next()
    }

    pub fn arguments(&self) -> Vec<&'a Case> {
        std::iter::once(self.cb.default_case()).chain(self.cb.cases()).collect()
    }

    /// Some `γ` that blocks `a ⇝ᵢ b`.
    pub fn blocker(&self, a: &Case, b: &Case, i: usize) -> Option<&'a Case> {
        let xa = &a.characterisation;
        self.arguments().into_iter().find(|g| {
            let xg = &g.characterisation;
            if g.outcome != a.outcome || !self.ge_all(xa, xg) {
                return false;
            }
            let orders = self.potential_orders(g, b);
            let clause_a = orders.contains(&i) && (i..self.n()).any(|l| self.gt(l, xa, xg));
            let clause_b = !orders.contains(&i) && orders.iter().any(|&l| l > i);
            clause_a || clause_b
        })
    }

    fn id(case: &Case) -> ArgumentRef {
        if case.id == aacbrp::model::DEFAULT_ID {
            ArgumentRef::Default
        } else {
            ArgumentRef::case(case.id.clone())
        }
    }

    /// Casebase and incoherent attacks, rendered as edge strings.
    pub fn casebase_edges(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        for a in self.arguments() {
            for b in self.arguments() {
                if std::ptr::eq(a, b) {
                    continue;
                }
                if let Some(i) = self.potential(a, b) {
                    if self.blocker(a, b, i).is_none() {
                        out.insert(format!("{} -> {} [{}]", Self::id(a), Self::id(b), i + 1));
                    }
                }
                if a.outcome != b.outcome && self.eq_all(&a.characterisation, &b.characterisation) {
                    out.insert(format!("{} -> {} [inc]", Self::id(a), Self::id(b)));
                }
            }
        }
        out
    }

    pub fn new_case_edges(&self, x: &Characterisation) -> BTreeSet<String> {
        self.arguments()
            .into_iter()
            .filter(|a| (0..self.n()).any(|i| !self.ge(i, x, &a.characterisation)))
            .map(|a| format!("new -> {} [new]", Self::id(a)))
            .collect()
    }

    /// Nearest cases (default included as a candidate), by id.
    pub fn nearest(&self, x: &Characterisation) -> BTreeSet<String> {
        let below: Vec<&Case> = self
            .arguments()
            .into_iter()
            .filter(|a| self.ge_all(x, &a.characterisation))
            .collect();
        below
            .iter()
            .filter(|a| {
                !below.iter().any(|b| {
                    self.ge_all(&b.characterisation, &a.characterisation)
                        && (0..self.n()).any(|i| self.gt(i, &b.characterisation, &a.characterisation))
                })
            })
            .map(|a| a.id.clone())
            .collect()
    }

    pub fn preferred(&self, x: &Characterisation) -> BTreeSet<String> {
        let nearest = self.nearest(x);
        let lookup = |id: &String| self.arguments().into_iter().find(|c| &c.id == id).unwrap();
        nearest
            .iter()
            .filter(|a| {
                let xa = &lookup(a).characterisation;
                !nearest.iter().any(|b| {
                    let xb = &lookup(b).characterisation;
                    (0..self.n()).any(|j| (0..j).all(|k| self.eq(k, xa, xb)) && self.gt(j, xb, xa))
                })
            })
            .cloned()
            .collect()
    }
}

// ---------------------------------------------------------------- grounded oracle

/// Grounded extension as the intersection of all complete extensions,
/// found by enumerating every subset of arguments.
pub fn brute_force_grounded(af: &ArgumentationFramework) -> BTreeSet<ArgumentRef> {
    let args: Vec<&ArgumentRef> = af.arguments().iter().collect();
    let n = args.len();
    assert!(n <= 16, "subset enumeration limited to small frameworks");
    let attacks: Vec<(usize, usize)> = af
        .attacks()
        .iter()
        .map(|e| {
            let pos = |a: &ArgumentRef| args.iter().position(|x| *x == a).unwrap();
            (pos(&e.attacker), pos(&e.target))
        })
        .collect();
    let attackers = |t: usize| attacks.iter().filter(move |(_, b)| *b == t).map(|(a, _)| *a);
    let defended = |set: u32, t: usize| {
        attackers(t).all(|a| attackers(a).any(|d| set & (1 << d) != 0))
    };
    let mut grounded: Option<u32> = None;
    for set in 0u32..(1 << n) {
        let conflict_free = attacks.iter().all(|(a, b)| set & (1 << a) == 0 || set & (1 << b) == 0);
        if !conflict_free {
            continue;
        }
        let complete = (0..n).all(|t| (set & (1 << t) != 0) == defended(set, t));
        if complete {
            grounded = Some(grounded.map_or(set, |g| g & set));
        }
    }
    let g = grounded.expect("a complete extension always exists");
    (0..n).filter(|i| g & (1 << i) != 0).map(|i| args[i].clone()).collect()
}

// ---------------------------------------------------------------- kNN oracle

/// Exhaustive kNN over explicitly constructed bit lists.
pub fn knn_oracle(train: &Casebase, query: &Characterisation, k: usize) -> Polarity {
    let schema = train.schema();
    type Bit = Box<dyn Fn(&Characterisation) -> bool>;
    let mut bits: Vec<Bit> = Vec::new();
    for (i, comp) in schema.components().iter().enumerate() {
        match comp.kind {
            ComponentKind::FeatureSet => {
                let mut vocab = BTreeSet::new();
                for c in train.cases() {
                    if let Component::Features(f) = &c.characterisation.components()[i] {
                        vocab.extend(f.iter().map(|s| s.to_string()));
                    }
                }
                for v in vocab {
                    bits.push(Box::new(move |x| match &x.components()[i] {
                        Component::Features(f) => f.contains(&v),
                        _ => false,
                    }));
                }
            }
            ComponentKind::StagePrefix { max_stage } => {
                for s in 0..=max_stage {
                    bits.push(Box::new(move |x| x.components()[i] == Component::Stage(s)));
                }
            }
            ComponentKind::Integer { .. } => {
                let values: BTreeSet<i64> = train
                    .cases()
                    .iter()
                    .filter_map(|c| match c.characterisation.components()[i] {
                        Component::Integer(v) => Some(v),
                        _ => None,
                    })
                    .collect();
                for v in values {
                    bits.push(Box::new(move |x| x.components()[i] == Component::Integer(v)));
                }
            }
        }
    }
    let q: Vec<bool> = bits.iter().map(|b| b(query)).collect();
    let mut ranked: Vec<(usize, &Case)> = train
        .cases()
        .iter()
        .map(|c| {
            let d = bits.iter().zip(&q).filter(|(b, qb)| b(&c.characterisation) != **qb).count();
            (d, c)
        })
        .collect();
    ranked.sort_by(|a, b| (a.0, &a.1.id).cmp(&(b.0, &b.1.id)));
    let top: Vec<Polarity> = ranked.iter().take(k).map(|(_, c)| c.outcome).collect();
    let pos = top.iter().filter(|p| **p == Pos).count();
    let neg = top.len() - pos;
    if pos > neg {
        Pos
    } else if neg > pos {
        Neg
    } else {
        top.first().copied().unwrap_or(Neg)
    }
}
