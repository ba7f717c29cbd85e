//! Attack mining and prediction under a preference sequence of preorders.
//!
//! Arguments are indexed internally with the default argument at 0 and the
//! casebase's cases at `1..=|D|`, in casebase order.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use crate::af::{grounded_extension, ArgumentRef, ArgumentationFramework, AttackEdge, AttackLabel, GroundedResult};
use crate::error::{Error, Result};
use crate::model::{validate_casebase, Case, Casebase, Characterisation, Outcome, Polarity};
use crate::orders::{ComparisonResult, Direction, FirstDifference, Preorder, PreferenceSequence};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EngineConfig {
    pub preferences: PreferenceSequence,
    /// Must be `true`; only the regular variant is implemented.
    pub regular: bool,
    /// Spread casebase mining over the rayon pool.
    pub parallel: bool,
}

impl EngineConfig {
    pub fn new(preferences: PreferenceSequence) -> Self {
        Self {
            preferences,
            regular: true,
            parallel: false,
        }
    }

    pub fn parallel(mut self, parallel: bool) -> Self {
        self.parallel = parallel;
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prediction {
    pub outcome: Outcome,
    pub framework: ArgumentationFramework,
    pub grounded: GroundedResult,
}

impl Prediction {
    /// Default outcome iff the default argument is grounded.
    pub fn from_framework(cb: &Casebase, framework: ArgumentationFramework) -> Self {
        let grounded = grounded_extension(&framework);
        let polarity = if grounded.contains(&ArgumentRef::Default) {
            Polarity::Default
        } else {
            Polarity::NonDefault
        };
        Self {
            outcome: cb.outcome(polarity),
            framework,
            grounded,
        }
    }
}

/// A case that is not above the default on some order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegularityViolation {
    pub case_id: String,
    pub order: usize,
}

impl fmt::Display for RegularityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "default is not below case `{}` on order {}",
            self.case_id,
            self.order + 1
        )
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Coherence {
    /// Pairs of arguments (the default included) equivalent on every order
    /// but with differing outcomes.
    pub clashes: Vec<(String, String)>,
}

impl Coherence {
    pub fn is_coherent(&self) -> bool {
        self.clashes.is_empty()
    }
}

/// `result[o][a][b]` holds order `o`'s comparison of argument `a` against `b`.
#[derive(Clone, Debug)]
struct ComparisonTable {
    orders: usize,
    size: usize,
    data: Vec<ComparisonResult>,
}

impl ComparisonTable {
    fn build(args: &[&Case], prefs: &PreferenceSequence, parallel: bool) -> Result<Self> {
        let size = args.len();
        let row = |a: usize| -> Result<Vec<ComparisonResult>> {
            let mut out = Vec::with_capacity(prefs.len() * size);
            for o in prefs.orders() {
                for b in args {
                    out.push(o.compare(&args[a].characterisation, &b.characterisation)?);
                }
            }
            Ok(out)
        };
        let rows: Vec<Vec<ComparisonResult>> = if parallel {
            (0..size).into_par_iter().map(row).collect::<Result<_>>()?
        } else {
            (0..size).map(row).collect::<Result<_>>()?
        };
        // Rows are laid out per argument; `get` indexes accordingly.
        let data = rows.into_iter().flatten().collect();
        Ok(Self {
            orders: prefs.len(),
            size,
            data,
        })
    }

    fn get(&self, order: usize, a: usize, b: usize) -> ComparisonResult {
        self.data[a * self.orders * self.size + order * self.size + b]
    }

    fn geq_all(&self, a: usize, b: usize) -> bool {
        (0..self.orders).all(|o| self.get(o, a, b).is_geq())
    }

    fn eq_all(&self, a: usize, b: usize) -> bool {
        (0..self.orders).all(|o| self.get(o, a, b).is_equivalent())
    }

    fn exists_strict_from(&self, a: usize, b: usize, from: usize) -> bool {
        (from..self.orders).any(|o| self.get(o, a, b).is_greater())
    }

    fn first_difference(&self, a: usize, b: usize) -> FirstDifference {
        for order in 0..self.orders {
            match self.get(order, a, b) {
                ComparisonResult::Equivalent => continue,
                ComparisonResult::Greater => {
                    return FirstDifference::Strict {
                        order,
                        direction: Direction::Greater,
                    }
                }
                ComparisonResult::Less => {
                    return FirstDifference::Strict {
                        order,
                        direction: Direction::Less,
                    }
                }
                ComparisonResult::Incomparable => return FirstDifference::Incomparable { order },
            }
        }
        FirstDifference::AllEquivalent
    }
}

fn potential_from_difference(diff: FirstDifference) -> Option<usize> {
    match diff {
        FirstDifference::Strict {
            order,
            direction: Direction::Greater,
        } => Some(order),
        _ => None,
    }
}

/// The order on which `a` potentially attacks `b`, if any.
///
/// `a ⇝ᵖᵢ b` needs differing outcomes, `x_a ≻_i x_b` and equivalence on
/// every earlier order, so `i` is necessarily the first order on which
/// the two characterisations are not equivalent.
pub fn potential_attack_order(prefs: &PreferenceSequence, a: &Case, b: &Case) -> Result<Option<usize>> {
    if a.outcome == b.outcome {
        return Ok(None);
    }
    Ok(potential_from_difference(
        prefs.first_strict_order(&a.characterisation, &b.characterisation)?,
    ))
}

/// Mined casebase under a preference sequence.
///
/// Holds everything that does not depend on the new case, so one instance
/// serves any number of predictions.
#[derive(Clone, Debug)]
pub struct AacbrP {
    casebase: Casebase,
    preferences: PreferenceSequence,
    table: ComparisonTable,
    potential: Vec<Option<usize>>,
    order_attacks: BTreeSet<AttackEdge>,
    incoherent_attacks: BTreeSet<AttackEdge>,
}

impl AacbrP {
    /// Mines a regular engine; fails on invalid or irregular casebases.
    pub fn new(casebase: Casebase, config: EngineConfig) -> Result<Self> {
        if !config.regular {
            return Err(Error::IrregularUnsupported);
        }
        let violations = check_regular(&casebase, &config.preferences)?;
        if !violations.is_empty() {
            return Err(Error::NotRegular(violations));
        }
        Self::mine(casebase, config.preferences, config.parallel)
    }

    /// Mines casebase attacks without requiring regularity.
    pub fn mine(casebase: Casebase, preferences: PreferenceSequence, parallel: bool) -> Result<Self> {
        let violations = validate_casebase(&casebase);
        if !violations.is_empty() {
            return Err(Error::Invalid(violations));
        }
        preferences.check_schema(casebase.schema())?;

        let args: Vec<&Case> = casebase.arguments().collect();
        let table = ComparisonTable::build(&args, &preferences, parallel)?;
        let size = args.len();

        let mut potential = vec![None; size * size];
        for a in 0..size {
            for b in 0..size {
                if args[a].outcome != args[b].outcome {
                    potential[a * size + b] = potential_from_difference(table.first_difference(a, b));
                }
            }
        }

        let mut engine = Self {
            casebase,
            preferences,
            table,
            potential,
            order_attacks: BTreeSet::new(),
            incoherent_attacks: BTreeSet::new(),
        };
        let rows = |a: usize| -> (Vec<AttackEdge>, Vec<AttackEdge>) {
            let mut order = Vec::new();
            let mut incoherent = Vec::new();
            for b in 0..size {
                if let Some(i) = engine.potential_at(a, b) {
                    if !engine.is_blocked(a, b, i) {
                        order.push(AttackEdge::new(engine.arg_ref(a), engine.arg_ref(b), AttackLabel::Order(i)));
                    }
                }
                if a != b && args_outcome(&engine.casebase, a) != args_outcome(&engine.casebase, b) && engine.table.eq_all(a, b) {
                    incoherent.push(AttackEdge::new(engine.arg_ref(a), engine.arg_ref(b), AttackLabel::Incoherent));
                }
            }
            (order, incoherent)
        };
        let mined: Vec<(Vec<AttackEdge>, Vec<AttackEdge>)> = if parallel {
            (0..size).into_par_iter().map(rows).collect()
        } else {
            (0..size).map(rows).collect()
        };
        for (order, incoherent) in mined {
            engine.order_attacks.extend(order);
            engine.incoherent_attacks.extend(incoherent);
        }
        Ok(engine)
    }

    pub fn casebase(&self) -> &Casebase {
        &self.casebase
    }

    pub fn preferences(&self) -> &PreferenceSequence {
        &self.preferences
    }

    fn size(&self) -> usize {
        self.casebase.len() + 1
    }

    fn arg(&self, index: usize) -> &Case {
        if index == 0 {
            self.casebase.default_case()
        } else {
            &self.casebase.cases()[index - 1]
        }
    }

    fn arg_ref(&self, index: usize) -> ArgumentRef {
        if index == 0 {
            ArgumentRef::Default
        } else {
            ArgumentRef::Case(self.casebase.cases()[index - 1].id.clone())
        }
    }

    fn potential_at(&self, a: usize, b: usize) -> Option<usize> {
        self.potential[a * self.size() + b]
    }

    /// Whether some more concise `γ` suppresses `a ⇝ᵢ b`.
    fn is_blocked(&self, a: usize, b: usize, i: usize) -> bool {
        let outcome = self.arg(a).outcome;
        (0..self.size()).any(|g| {
            if self.arg(g).outcome != outcome || !self.table.geq_all(a, g) {
                return false;
            }
            match self.potential_at(g, b) {
                // (a) γ also attacks on order i and α is strictly above γ on some order l ≥ i
                Some(j) if j == i => self.table.exists_strict_from(a, g, i),
                // (b) γ attacks on a later order instead
                Some(j) => j > i,
                None => false,
            }
        })
    }

    /// Casebase attacks labelled with the order of the underlying potential attack.
    pub fn casebase_attacks(&self) -> &BTreeSet<AttackEdge> {
        &self.order_attacks
    }

    pub fn incoherent_attacks(&self) -> &BTreeSet<AttackEdge> {
        &self.incoherent_attacks
    }

    /// The order on which argument `attacker` potentially attacks `target`.
    pub fn potential_attack(&self, attacker: &ArgumentRef, target: &ArgumentRef) -> Option<usize> {
        let a = self.index_of(attacker)?;
        let b = self.index_of(target)?;
        self.potential_at(a, b)
    }

    fn index_of(&self, arg: &ArgumentRef) -> Option<usize> {
        match arg {
            ArgumentRef::Default => Some(0),
            ArgumentRef::Case(id) => self.casebase.cases().iter().position(|c| &c.id == id).map(|i| i + 1),
            ArgumentRef::NewCase => None,
        }
    }

    fn check_new_case(&self, new_case: &Characterisation) -> Result<()> {
        let rules = self.casebase.schema().check(new_case);
        if rules.is_empty() {
            Ok(())
        } else {
            Err(Error::Invalid(
                rules
                    .into_iter()
                    .map(|rule| crate::model::Violation {
                        case_id: Some(crate::model::NEW_CASE_ID.to_string()),
                        rule,
                    })
                    .collect(),
            ))
        }
    }

    /// `comparisons[a][o]` is order `o`'s comparison of the new case against argument `a`.
    fn compare_new_case(&self, new_case: &Characterisation) -> Result<Vec<Vec<ComparisonResult>>> {
        self.check_new_case(new_case)?;
        self.casebase
            .arguments()
            .map(|c| self.preferences.compare_all(new_case, &c.characterisation))
            .collect()
    }

    /// `N ⇝ α` iff `x_N ⋡_i x_α` for some order `i`.
    pub fn new_case_attacks(&self, new_case: &Characterisation) -> Result<BTreeSet<AttackEdge>> {
        let cmp = self.compare_new_case(new_case)?;
        Ok((0..self.size())
            .filter(|&a| cmp[a].iter().any(|r| !r.is_geq()))
            .map(|a| AttackEdge::new(ArgumentRef::NewCase, self.arg_ref(a), AttackLabel::NewCase))
            .collect())
    }

    pub fn build_framework(&self, new_case: &Characterisation) -> Result<ArgumentationFramework> {
        let new_attacks = self.new_case_attacks(new_case)?;
        let args = (0..self.size())
            .map(|a| self.arg_ref(a))
            .chain(std::iter::once(ArgumentRef::NewCase));
        ArgumentationFramework::with_attacks(
            args,
            self.order_attacks
                .iter()
                .chain(&self.incoherent_attacks)
                .cloned()
                .chain(new_attacks),
        )
    }

    pub fn predict(&self, new_case: &Characterisation) -> Result<Prediction> {
        Ok(Prediction::from_framework(&self.casebase, self.build_framework(new_case)?))
    }

    pub fn coherence(&self) -> Coherence {
        let mut clashes = Vec::new();
        for a in 0..self.size() {
            for b in a + 1..self.size() {
                if self.arg(a).outcome != self.arg(b).outcome && self.table.eq_all(a, b) {
                    clashes.push((self.arg(a).id.clone(), self.arg(b).id.clone()));
                }
            }
        }
        Coherence { clashes }
    }

    fn nearest_indices(&self, cmp: &[Vec<ComparisonResult>]) -> Vec<usize> {
        let below: Vec<usize> = (0..self.size())
            .filter(|&a| cmp[a].iter().all(|r| r.is_geq()))
            .collect();
        below
            .iter()
            .copied()
            .filter(|&a| {
                // No case β (default excluded) between α and N that beats α somewhere.
                !below.iter().any(|&b| {
                    b != 0 && self.table.geq_all(b, a) && self.table.exists_strict_from(b, a, 0)
                })
            })
            .collect()
    }

    /// Cases (default included) dominated by `N` on every order and maximal so.
    pub fn nearest_cases(&self, new_case: &Characterisation) -> Result<Vec<&Case>> {
        let cmp = self.compare_new_case(new_case)?;
        Ok(self.nearest_indices(&cmp).into_iter().map(|a| self.arg(a)).collect())
    }

    /// Nearest cases not beaten by another nearest case at the first order where they differ.
    pub fn preferred_cases(&self, new_case: &Characterisation) -> Result<Vec<&Case>> {
        let cmp = self.compare_new_case(new_case)?;
        let nearest = self.nearest_indices(&cmp);
        Ok(nearest
            .iter()
            .copied()
            .filter(|&a| {
                !nearest.iter().any(|&b| {
                    b != a
                        && matches!(
                            self.table.first_difference(b, a),
                            FirstDifference::Strict {
                                direction: Direction::Greater,
                                ..
                            }
                        )
                })
            })
            .map(|a| self.arg(a))
            .collect())
    }
}

fn args_outcome(cb: &Casebase, index: usize) -> Polarity {
    if index == 0 {
        Polarity::Default
    } else {
        cb.cases()[index - 1].outcome
    }
}

/// Casebase attacks on orders (no incoherent or new-case edges).
pub fn casebase_attacks(cb: &Casebase, prefs: &PreferenceSequence) -> Result<BTreeSet<AttackEdge>> {
    Ok(AacbrP::mine(cb.clone(), prefs.clone(), false)?.order_attacks)
}

pub fn incoherent_attacks(cb: &Casebase, prefs: &PreferenceSequence) -> Result<BTreeSet<AttackEdge>> {
    Ok(AacbrP::mine(cb.clone(), prefs.clone(), false)?.incoherent_attacks)
}

pub fn new_case_attacks(
    cb: &Casebase,
    prefs: &PreferenceSequence,
    new_case: &Characterisation,
) -> Result<BTreeSet<AttackEdge>> {
    AacbrP::mine(cb.clone(), prefs.clone(), false)?.new_case_attacks(new_case)
}

pub fn build_framework(
    cb: &Casebase,
    prefs: &PreferenceSequence,
    new_case: &Characterisation,
) -> Result<ArgumentationFramework> {
    AacbrP::new(cb.clone(), EngineConfig::new(prefs.clone()))?.build_framework(new_case)
}

pub fn predict(cb: &Casebase, prefs: &PreferenceSequence, new_case: &Characterisation) -> Result<Prediction> {
    AacbrP::new(cb.clone(), EngineConfig::new(prefs.clone()))?.predict(new_case)
}

pub fn is_coherent(cb: &Casebase, prefs: &PreferenceSequence) -> Result<Coherence> {
    Ok(AacbrP::mine(cb.clone(), prefs.clone(), false)?.coherence())
}

pub fn nearest_cases(cb: &Casebase, prefs: &PreferenceSequence, new_case: &Characterisation) -> Result<Vec<Case>> {
    let engine = AacbrP::mine(cb.clone(), prefs.clone(), false)?;
    Ok(engine.nearest_cases(new_case)?.into_iter().cloned().collect())
}

pub fn preferred_cases(cb: &Casebase, prefs: &PreferenceSequence, new_case: &Characterisation) -> Result<Vec<Case>> {
    let engine = AacbrP::mine(cb.clone(), prefs.clone(), false)?;
    Ok(engine.preferred_cases(new_case)?.into_iter().cloned().collect())
}

/// Cases the default argument is not below, per order.
pub fn check_regular(cb: &Casebase, prefs: &PreferenceSequence) -> Result<Vec<RegularityViolation>> {
    prefs.check_schema(cb.schema())?;
    let default = &cb.default_case().characterisation;
    let mut out = Vec::new();
    for case in cb.cases() {
        for (order, o) in prefs.orders().iter().enumerate() {
            if !o.compare(&case.characterisation, default)?.is_geq() {
                out.push(RegularityViolation {
                    case_id: case.id.clone(),
                    order,
                });
            }
        }
    }
    Ok(out)
}
