//! Single-order AA-CBR and AA-CBR with Stages, kept for comparison with
//! the preference-based engine.

use std::collections::BTreeSet;

use crate::af::{ArgumentRef, ArgumentationFramework, AttackEdge, AttackLabel, LabelKind};
use crate::engine::Prediction;
use crate::error::{Error, Result};
use crate::model::{validate_casebase, Case, Casebase, Characterisation, Component, ComponentKind, FeatureSet};
use crate::orders::{ComparisonResult, Preorder, PreferenceSequence, PreorderSpec};

/// The single order fed to classic AA-CBR.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassicOrder {
    /// One component under its natural comparator.
    Component(PreorderSpec),
    /// Superset over the union of several feature-set components.
    FeatureUnion(Vec<usize>),
    /// `x ≽ y` iff `x ≽_i y` on every order of the sequence.
    Lexicographic(PreferenceSequence),
}

impl ClassicOrder {
    fn union(&self, components: &[usize], x: &Characterisation) -> Result<FeatureSet> {
        let mut out = FeatureSet::new();
        for &i in components {
            match x.component(i) {
                Some(Component::Features(f)) => out = out.union(f),
                Some(other) => {
                    return Err(Error::KindMismatch {
                        index: i,
                        expected: "feature-set",
                        found: other.kind_label(),
                    })
                }
                None => {
                    return Err(Error::ComponentOutOfBounds {
                        index: i,
                        arity: x.arity(),
                    })
                }
            }
        }
        Ok(out)
    }
}

impl Preorder for ClassicOrder {
    fn compare(&self, x: &Characterisation, y: &Characterisation) -> Result<ComparisonResult> {
        match self {
            ClassicOrder::Component(spec) => spec.compare(x, y),
            ClassicOrder::FeatureUnion(components) => {
                let (a, b) = (self.union(components, x)?, self.union(components, y)?);
                Ok(ComparisonResult::from_geq(a.is_superset(&b), b.is_superset(&a)))
            }
            ClassicOrder::Lexicographic(prefs) => {
                let all = prefs.full_range();
                Ok(ComparisonResult::from_geq(
                    prefs.geq_range(all.clone(), x, y)?,
                    prefs.geq_range(all, y, x)?,
                ))
            }
        }
    }
}

fn arg_ref(index: usize, cb: &Casebase) -> ArgumentRef {
    if index == 0 {
        ArgumentRef::Default
    } else {
        ArgumentRef::Case(cb.cases()[index - 1].id.clone())
    }
}

fn framework_args(cb: &Casebase) -> impl Iterator<Item = ArgumentRef> + '_ {
    (0..=cb.len())
        .map(move |i| arg_ref(i, cb))
        .chain(std::iter::once(ArgumentRef::NewCase))
}

fn ensure_valid(cb: &Casebase) -> Result<()> {
    let violations = validate_casebase(cb);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Error::Invalid(violations))
    }
}

/// Classic AA-CBR over a single order.
#[derive(Clone, Debug)]
pub struct ClassicAacbr {
    casebase: Casebase,
    order: ClassicOrder,
    attacks: BTreeSet<AttackEdge>,
}

impl ClassicAacbr {
    pub fn new(casebase: Casebase, order: ClassicOrder) -> Result<Self> {
        ensure_valid(&casebase)?;
        let args: Vec<&Case> = casebase.arguments().collect();
        let size = args.len();
        let mut table = Vec::with_capacity(size * size);
        for a in &args {
            for b in &args {
                table.push(order.compare(&a.characterisation, &b.characterisation)?);
            }
        }
        let cmp = |a: usize, b: usize| table[a * size + b];

        let mut attacks = BTreeSet::new();
        for a in 0..size {
            for b in 0..size {
                if a == b || args[a].outcome == args[b].outcome {
                    continue;
                }
                match cmp(a, b) {
                    ComparisonResult::Greater => {
                        // Most concise: nothing of α's outcome strictly between α and β.
                        let between = (0..size).any(|g| {
                            args[g].outcome == args[a].outcome
                                && cmp(a, g).is_greater()
                                && cmp(g, b).is_greater()
                        });
                        if !between {
                            attacks.insert(AttackEdge::new(
                                arg_ref(a, &casebase),
                                arg_ref(b, &casebase),
                                AttackLabel::Order(0),
                            ));
                        }
                    }
                    ComparisonResult::Equivalent => {
                        attacks.insert(AttackEdge::new(
                            arg_ref(a, &casebase),
                            arg_ref(b, &casebase),
                            AttackLabel::Incoherent,
                        ));
                    }
                    _ => {}
                }
            }
        }
        Ok(Self {
            casebase,
            order,
            attacks,
        })
    }

    pub fn casebase(&self) -> &Casebase {
        &self.casebase
    }

    pub fn casebase_attacks(&self) -> &BTreeSet<AttackEdge> {
        &self.attacks
    }

    /// `N ⇝ α` iff `x_N ⋡ x_α`.
    pub fn new_case_attacks(&self, new_case: &Characterisation) -> Result<BTreeSet<AttackEdge>> {
        let mut out = BTreeSet::new();
        for (i, arg) in self.casebase.arguments().enumerate() {
            if !self.order.compare(new_case, &arg.characterisation)?.is_geq() {
                out.insert(AttackEdge::new(ArgumentRef::NewCase, arg_ref(i, &self.casebase), AttackLabel::NewCase));
            }
        }
        Ok(out)
    }

    pub fn build_framework(&self, new_case: &Characterisation) -> Result<ArgumentationFramework> {
        let new_attacks = self.new_case_attacks(new_case)?;
        ArgumentationFramework::with_attacks(
            framework_args(&self.casebase),
            self.attacks.iter().cloned().chain(new_attacks),
        )
    }

    pub fn predict(&self, new_case: &Characterisation) -> Result<Prediction> {
        Ok(Prediction::from_framework(&self.casebase, self.build_framework(new_case)?))
    }
}

pub fn classic_attacks(cb: &Casebase, order: ClassicOrder) -> Result<BTreeSet<AttackEdge>> {
    Ok(ClassicAacbr::new(cb.clone(), order)?.attacks)
}

pub fn classic_predict(cb: &Casebase, order: ClassicOrder, new_case: &Characterisation) -> Result<Prediction> {
    ClassicAacbr::new(cb.clone(), order)?.predict(new_case)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StagesVariant {
    /// Concision exactly as in the original formulation.
    Verbatim,
    /// Concision clause (i) also requires `S_α ⊒ S_γ`.
    ModifiedConcision,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LegacyVariant {
    ClassicSingleOrder(ClassicOrder),
    StagesVerbatim,
    StagesModifiedConcision,
}

#[derive(Clone, Debug)]
struct StagedCase {
    features: FeatureSet,
    stage: u32,
}

/// AA-CBR with Stages. Requires a schema of one feature-set and one
/// stage-prefix component, and the empty default `(∅, ⟨⟩)`.
#[derive(Clone, Debug)]
pub struct StagesAacbr {
    casebase: Casebase,
    variant: StagesVariant,
    features: usize,
    stages: usize,
    attacks: BTreeSet<AttackEdge>,
}

impl StagesAacbr {
    pub fn new(casebase: Casebase, variant: StagesVariant) -> Result<Self> {
        ensure_valid(&casebase)?;
        let schema = casebase.schema();
        let find = |pred: fn(&ComponentKind) -> bool| {
            let hits: Vec<usize> = schema
                .components()
                .iter()
                .enumerate()
                .filter(|(_, c)| pred(&c.kind))
                .map(|(i, _)| i)
                .collect();
            hits
        };
        let fs = find(|k| matches!(k, ComponentKind::FeatureSet));
        let ss = find(|k| matches!(k, ComponentKind::StagePrefix { .. }));
        if schema.len() != 2 || fs.len() != 1 || ss.len() != 1 {
            return Err(Error::UnsupportedSchema {
                variant: "AA-CBR with Stages",
                requirement: "exactly one feature-set and one stage-prefix component",
            });
        }
        if casebase.default_case().characterisation != schema.least_characterisation() {
            return Err(Error::UnsupportedSchema {
                variant: "AA-CBR with Stages",
                requirement: "the empty default characterisation",
            });
        }
        let (features, stages) = (fs[0], ss[0]);
        let staged: Vec<StagedCase> = casebase
            .arguments()
            .map(|c| split(&c.characterisation, features, stages))
            .collect();
        let outcomes: Vec<_> = casebase.arguments().map(|c| c.outcome).collect();
        let size = staged.len();

        let mut attacks = BTreeSet::new();
        for a in 0..size {
            for b in 0..size {
                if outcomes[a] == outcomes[b] {
                    continue;
                }
                let (fa, sa) = (&staged[a].features, staged[a].stage);
                let (fb, sb) = (&staged[b].features, staged[b].stage);
                // γ ranges over D, not the default argument
                let same_side = || (1..size).filter(|&g| outcomes[g] == outcomes[a]);

                if strict_superset(fa, fb) {
                    let concise = same_side().any(|g| {
                        let (fg, sg) = (&staged[g].features, staged[g].stage);
                        let clause_i = strict_superset(fa, fg)
                            && strict_superset(fg, fb)
                            && (variant == StagesVariant::Verbatim || sa >= sg);
                        let clause_ii = fg == fa && sa > sg;
                        let clause_iii = fb == fg && sa >= sg && sg > sb;
                        clause_i || clause_ii || clause_iii
                    });
                    if !concise {
                        attacks.insert(AttackEdge::new(
                            arg_ref(a, &casebase),
                            arg_ref(b, &casebase),
                            AttackLabel::Order(0),
                        ));
                    }
                } else if fa == fb && sa > sb {
                    let closer = same_side().any(|g| staged[g].features == *fa && sa > staged[g].stage && staged[g].stage > sb);
                    if !closer {
                        attacks.insert(AttackEdge::new(
                            arg_ref(a, &casebase),
                            arg_ref(b, &casebase),
                            AttackLabel::Order(1),
                        ));
                    }
                }
            }
        }
        Ok(Self {
            casebase,
            variant,
            features,
            stages,
            attacks,
        })
    }

    pub fn variant(&self) -> StagesVariant {
        self.variant
    }

    pub fn casebase(&self) -> &Casebase {
        &self.casebase
    }

    pub fn casebase_attacks(&self) -> &BTreeSet<AttackEdge> {
        &self.attacks
    }

    /// `N ⇝ α` iff `F_N ⊉ F_α` or `S_N ⋣ S_α`.
    pub fn new_case_attacks(&self, new_case: &Characterisation) -> Result<BTreeSet<AttackEdge>> {
        let rules = self.casebase.schema().check(new_case);
        if !rules.is_empty() {
            return Err(Error::InvalidArgument(format!(
                "new case does not match the schema: {}",
                rules.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ")
            )));
        }
        let n = split(new_case, self.features, self.stages);
        Ok(self
            .casebase
            .arguments()
            .enumerate()
            .filter(|(_, c)| {
                let x = split(&c.characterisation, self.features, self.stages);
                !n.features.is_superset(&x.features) || n.stage < x.stage
            })
            .map(|(i, _)| AttackEdge::new(ArgumentRef::NewCase, arg_ref(i, &self.casebase), AttackLabel::NewCase))
            .collect())
    }

    pub fn build_framework(&self, new_case: &Characterisation) -> Result<ArgumentationFramework> {
        let new_attacks = self.new_case_attacks(new_case)?;
        ArgumentationFramework::with_attacks(
            framework_args(&self.casebase),
            self.attacks.iter().cloned().chain(new_attacks),
        )
    }

    pub fn predict(&self, new_case: &Characterisation) -> Result<Prediction> {
        Ok(Prediction::from_framework(&self.casebase, self.build_framework(new_case)?))
    }
}

fn strict_superset(a: &FeatureSet, b: &FeatureSet) -> bool {
    a.len() > b.len() && a.is_superset(b)
}

fn split(x: &Characterisation, features: usize, stages: usize) -> StagedCase {
    match (x.component(features), x.component(stages)) {
        (Some(Component::Features(f)), Some(Component::Stage(s))) => StagedCase {
            features: f.clone(),
            stage: *s,
        },
        // validated on construction
        _ => unreachable!("characterisation does not match the stages schema"),
    }
}

pub fn stages_attacks(cb: &Casebase, variant: StagesVariant) -> Result<BTreeSet<AttackEdge>> {
    Ok(StagesAacbr::new(cb.clone(), variant)?.attacks)
}

pub fn stages_predict(cb: &Casebase, variant: StagesVariant, new_case: &Characterisation) -> Result<Prediction> {
    StagesAacbr::new(cb.clone(), variant)?.predict(new_case)
}

/// Attack pairs present in only one of two frameworks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FrameworkDiff {
    pub only_in_first: Vec<(ArgumentRef, ArgumentRef)>,
    pub only_in_second: Vec<(ArgumentRef, ArgumentRef)>,
}

impl FrameworkDiff {
    pub fn is_equal(&self) -> bool {
        self.only_in_first.is_empty() && self.only_in_second.is_empty()
    }
}

/// Compares attack relations with labels dropped, skipping edges of the
/// `ignore` kinds. Both frameworks must share one argument set.
pub fn frameworks_equal(
    first: &ArgumentationFramework,
    second: &ArgumentationFramework,
    ignore: &[LabelKind],
) -> Result<FrameworkDiff> {
    if first.arguments() != second.arguments() {
        return Err(Error::ArgumentMismatch);
    }
    let (a, b) = (first.attack_pairs(ignore), second.attack_pairs(ignore));
    Ok(FrameworkDiff {
        only_in_first: a.difference(&b).cloned().collect(),
        only_in_second: b.difference(&a).cloned().collect(),
    })
}
