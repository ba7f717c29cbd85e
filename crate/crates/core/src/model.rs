//! Domain types: outcomes, characterisation components, cases and casebases.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Id under which the default argument is rendered.
pub const DEFAULT_ID: &str = "default";
/// Id under which the new case is rendered.
pub const NEW_CASE_ID: &str = "new";

/// Opaque feature identifier.
pub type Feature = Arc<str>;

/// A finite set of feature identifiers, kept sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FeatureSet(BTreeSet<Feature>);

impl FeatureSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, feature: impl AsRef<str>) -> bool {
        self.0.insert(Arc::from(feature.as_ref()))
    }

    pub fn contains(&self, feature: &str) -> bool {
        self.0.contains(feature)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Feature> {
        self.0.iter()
    }

    pub fn is_superset(&self, other: &FeatureSet) -> bool {
        self.0.is_superset(&other.0)
    }

    /// Size of the symmetric difference.
    pub fn hamming(&self, other: &FeatureSet) -> usize {
        self.0.symmetric_difference(&other.0).count()
    }

    pub fn union(&self, other: &FeatureSet) -> FeatureSet {
        FeatureSet(self.0.union(&other.0).cloned().collect())
    }
}

impl<S: AsRef<str>> FromIterator<S> for FeatureSet {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        FeatureSet(iter.into_iter().map(|s| Arc::from(s.as_ref())).collect())
    }
}

impl fmt::Display for FeatureSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, feat) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(feat)?;
        }
        f.write_str("}")
    }
}

/// Which side of the binary outcome a case carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarity {
    Default,
    NonDefault,
}

impl Polarity {
    pub fn flip(self) -> Self {
        match self {
            Polarity::Default => Polarity::NonDefault,
            Polarity::NonDefault => Polarity::Default,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Outcome {
    pub polarity: Polarity,
    pub name: String,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// The two outcome display names of a casebase.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OutcomeNames {
    default: String,
    non_default: String,
}

impl OutcomeNames {
    pub fn new(default: impl Into<String>, non_default: impl Into<String>) -> Self {
        Self {
            default: default.into(),
            non_default: non_default.into(),
        }
    }

    pub fn name(&self, polarity: Polarity) -> &str {
        match polarity {
            Polarity::Default => &self.default,
            Polarity::NonDefault => &self.non_default,
        }
    }

    pub fn outcome(&self, polarity: Polarity) -> Outcome {
        Outcome {
            polarity,
            name: self.name(polarity).to_string(),
        }
    }

    pub fn polarity_of(&self, name: &str) -> Option<Polarity> {
        if name == self.default {
            Some(Polarity::Default)
        } else if name == self.non_default {
            Some(Polarity::NonDefault)
        } else {
            None
        }
    }

    pub fn swapped(&self) -> Self {
        Self::new(self.non_default.clone(), self.default.clone())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComponentKind {
    FeatureSet,
    /// Prefix `<s_1 .. s_k>` of a fixed stage sequence, stored as `k`.
    StagePrefix { max_stage: u32 },
    /// Whole number bounded below by `min`.
    Integer { min: i64 },
}

impl ComponentKind {
    pub fn label(&self) -> &'static str {
        match self {
            ComponentKind::FeatureSet => "feature-set",
            ComponentKind::StagePrefix { .. } => "stage-prefix",
            ComponentKind::Integer { .. } => "integer",
        }
    }

    /// Least value of the component domain.
    pub fn least(&self) -> Component {
        match *self {
            ComponentKind::FeatureSet => Component::Features(FeatureSet::new()),
            ComponentKind::StagePrefix { .. } => Component::Stage(0),
            ComponentKind::Integer { min } => Component::Integer(min),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ComponentSchema {
    pub name: String,
    pub kind: ComponentKind,
}

impl ComponentSchema {
    pub fn features(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            kind: ComponentKind::FeatureSet,
        }
    }

    pub fn stages(name: impl Into<String>, max_stage: u32) -> Self {
        Self {
            name: name.into(),
            kind: ComponentKind::StagePrefix { max_stage },
        }
    }

    pub fn integer(name: impl Into<String>, min: i64) -> Self {
        Self {
            name: name.into(),
            kind: ComponentKind::Integer { min },
        }
    }
}

/// Ordered component list shared by every characterisation of a casebase.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Schema(Vec<ComponentSchema>);

impl Schema {
    pub fn new(components: Vec<ComponentSchema>) -> Self {
        Schema(components)
    }

    pub fn components(&self) -> &[ComponentSchema] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<&ComponentSchema> {
        self.0.get(index)
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|c| c.name == name)
    }

    /// The characterisation made of the least value of every component.
    pub fn least_characterisation(&self) -> Characterisation {
        Characterisation(self.0.iter().map(|c| c.kind.least()).collect())
    }

    /// Rule violations of `x` against this schema, without a case id.
    pub fn check(&self, x: &Characterisation) -> Vec<ViolationRule> {
        let mut out = Vec::new();
        if x.arity() != self.len() {
            out.push(ViolationRule::Arity {
                expected: self.len(),
                found: x.arity(),
            });
            return out;
        }
        for (index, (value, comp)) in x.components().iter().zip(&self.0).enumerate() {
            match (value, comp.kind) {
                (Component::Features(_), ComponentKind::FeatureSet) => {}
                (Component::Stage(k), ComponentKind::StagePrefix { max_stage }) => {
                    if *k > max_stage {
                        out.push(ViolationRule::StageOutOfRange {
                            component: index,
                            value: *k,
                            max_stage,
                        });
                    }
                }
                (Component::Integer(v), ComponentKind::Integer { min }) => {
                    if *v < min {
                        out.push(ViolationRule::IntegerBelowMin {
                            component: index,
                            value: *v,
                            min,
                        });
                    }
                }
                (value, kind) => out.push(ViolationRule::KindMismatch {
                    component: index,
                    expected: kind.label(),
                    found: value.kind_label(),
                }),
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Component {
    Features(FeatureSet),
    Stage(u32),
    Integer(i64),
}

impl Component {
    pub fn kind_label(&self) -> &'static str {
        match self {
            Component::Features(_) => "feature-set",
            Component::Stage(_) => "stage-prefix",
            Component::Integer(_) => "integer",
        }
    }

    pub fn features<S: AsRef<str>>(items: impl IntoIterator<Item = S>) -> Self {
        Component::Features(items.into_iter().collect())
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Component::Features(s) => s.fmt(f),
            Component::Stage(k) => write!(f, "s{k}"),
            Component::Integer(v) => write!(f, "{v}"),
        }
    }
}

/// The comparable content of a case: one value per schema component.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Characterisation(Vec<Component>);

impl Characterisation {
    pub fn new(components: Vec<Component>) -> Self {
        Characterisation(components)
    }

    pub fn components(&self) -> &[Component] {
        &self.0
    }

    pub fn component(&self, index: usize) -> Option<&Component> {
        self.0.get(index)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Characterisation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            c.fmt(f)?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Case {
    pub id: String,
    pub characterisation: Characterisation,
    pub outcome: Polarity,
}

impl Case {
    pub fn new(id: impl Into<String>, characterisation: Characterisation, outcome: Polarity) -> Self {
        Self {
            id: id.into(),
            characterisation,
            outcome,
        }
    }
}

/// Labelled cases plus the distinguished default argument.
///
/// Construction does not validate; call [`validate_casebase`] or
/// [`Casebase::validated`] before mining.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Casebase {
    schema: Schema,
    outcomes: OutcomeNames,
    default: Case,
    cases: Vec<Case>,
}

impl Casebase {
    /// `default` falls back to the schema's least characterisation.
    pub fn new(
        schema: Schema,
        outcomes: OutcomeNames,
        default: Option<Characterisation>,
        cases: Vec<Case>,
    ) -> Self {
        let default = default.unwrap_or_else(|| schema.least_characterisation());
        Self {
            schema,
            outcomes,
            default: Case::new(DEFAULT_ID, default, Polarity::Default),
            cases,
        }
    }

    pub fn validated(
        schema: Schema,
        outcomes: OutcomeNames,
        default: Option<Characterisation>,
        cases: Vec<Case>,
    ) -> Result<Self> {
        let cb = Self::new(schema, outcomes, default, cases);
        let violations = validate_casebase(&cb);
        if violations.is_empty() {
            Ok(cb)
        } else {
            Err(Error::Invalid(violations))
        }
    }

    pub fn schema(&self) -> &Schema {
        &self.schema
    }

    pub fn outcomes(&self) -> &OutcomeNames {
        &self.outcomes
    }

    pub fn outcome(&self, polarity: Polarity) -> Outcome {
        self.outcomes.outcome(polarity)
    }

    pub fn cases(&self) -> &[Case] {
        &self.cases
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn default_case(&self) -> &Case {
        &self.default
    }

    pub fn case(&self, id: &str) -> Option<&Case> {
        self.cases.iter().find(|c| c.id == id)
    }

    /// The default argument followed by every case, in casebase order.
    pub fn arguments(&self) -> impl Iterator<Item = &Case> {
        std::iter::once(&self.default).chain(self.cases.iter())
    }

    /// Same casebase with the roles of the two outcome names exchanged.
    ///
    /// Every case keeps its display name; polarities flip.
    pub fn with_default_outcome(&self, name: &str) -> Result<Self> {
        match self.outcomes.polarity_of(name) {
            Some(Polarity::Default) => Ok(self.clone()),
            Some(Polarity::NonDefault) => Ok(Self {
                schema: self.schema.clone(),
                outcomes: self.outcomes.swapped(),
                default: self.default.clone(),
                cases: self
                    .cases
                    .iter()
                    .map(|c| Case {
                        outcome: c.outcome.flip(),
                        ..c.clone()
                    })
                    .collect(),
            }),
            None => Err(Error::UnknownOutcome(name.to_string())),
        }
    }

    pub fn with_cases(&self, cases: Vec<Case>) -> Self {
        Self {
            cases,
            ..self.clone()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ViolationRule {
    Arity { expected: usize, found: usize },
    KindMismatch { component: usize, expected: &'static str, found: &'static str },
    StageOutOfRange { component: usize, value: u32, max_stage: u32 },
    IntegerBelowMin { component: usize, value: i64, min: i64 },
    DuplicateId,
    ReservedId,
    EmptyId,
    DuplicateComponentName(String),
    OutcomeNamesNotDistinct,
    EmptySchema,
}

impl fmt::Display for ViolationRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationRule::Arity { expected, found } => {
                write!(f, "arity {found}, schema expects {expected}")
            }
            ViolationRule::KindMismatch { component, expected, found } => {
                write!(f, "component {component} is {found}, schema expects {expected}")
            }
            ViolationRule::StageOutOfRange { component, value, max_stage } => {
                write!(f, "component {component}: stage {value} exceeds max stage {max_stage}")
            }
            ViolationRule::IntegerBelowMin { component, value, min } => {
                write!(f, "component {component}: value {value} below minimum {min}")
            }
            ViolationRule::DuplicateId => f.write_str("duplicate case id"),
            ViolationRule::ReservedId => write!(f, "id is reserved (`{DEFAULT_ID}`, `{NEW_CASE_ID}`)"),
            ViolationRule::EmptyId => f.write_str("empty case id"),
            ViolationRule::DuplicateComponentName(name) => {
                write!(f, "component name `{name}` used more than once")
            }
            ViolationRule::OutcomeNamesNotDistinct => f.write_str("outcome names must differ"),
            ViolationRule::EmptySchema => f.write_str("schema has no components"),
        }
    }
}

/// One broken invariant. `case_id` is `None` for casebase-level rules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub case_id: Option<String>,
    pub rule: ViolationRule,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.case_id {
            Some(id) => write!(f, "case `{id}`: {}", self.rule),
            None => write!(f, "{}", self.rule),
        }
    }
}

/// Every invariant violation in `cb`; empty iff the casebase is well formed.
pub fn validate_casebase(cb: &Casebase) -> Vec<Violation> {
    let mut out = Vec::new();
    let global = |rule| Violation { case_id: None, rule };

    if cb.schema.is_empty() {
        out.push(global(ViolationRule::EmptySchema));
    }
    let mut names = HashSet::new();
    for comp in cb.schema.components() {
        if !names.insert(comp.name.as_str()) {
            out.push(global(ViolationRule::DuplicateComponentName(comp.name.clone())));
        }
    }
    if cb.outcomes.default == cb.outcomes.non_default {
        out.push(global(ViolationRule::OutcomeNamesNotDistinct));
    }
    for rule in cb.schema.check(&cb.default.characterisation) {
        out.push(Violation {
            case_id: Some(DEFAULT_ID.to_string()),
            rule,
        });
    }

    let mut ids = HashSet::new();
    for case in &cb.cases {
        let with_id = |rule| Violation {
            case_id: Some(case.id.clone()),
            rule,
        };
        if case.id.is_empty() {
            out.push(with_id(ViolationRule::EmptyId));
        } else if case.id == DEFAULT_ID || case.id == NEW_CASE_ID {
            out.push(with_id(ViolationRule::ReservedId));
        }
        if !ids.insert(case.id.as_str()) {
            out.push(with_id(ViolationRule::DuplicateId));
        }
        out.extend(cb.schema.check(&case.characterisation).into_iter().map(with_id));
    }
    out
}
