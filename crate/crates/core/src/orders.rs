//! Per-component preorders and the lexicographic preference sequence.
//!
//! Order indices are 0-based throughout the API; exports print them 1-based.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::model::{Characterisation, Component, ComponentKind, Schema};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ComparisonResult {
    Greater,
    Less,
    Equivalent,
    Incomparable,
}

impl ComparisonResult {
    /// `x ≽ y`
    pub fn is_geq(self) -> bool {
        matches!(self, ComparisonResult::Greater | ComparisonResult::Equivalent)
    }

    /// `x ≼ y`
    pub fn is_leq(self) -> bool {
        matches!(self, ComparisonResult::Less | ComparisonResult::Equivalent)
    }

    /// `x ≻ y`
    pub fn is_greater(self) -> bool {
        self == ComparisonResult::Greater
    }

    pub fn is_equivalent(self) -> bool {
        self == ComparisonResult::Equivalent
    }

    /// The result of comparing the arguments the other way round.
    pub fn reverse(self) -> Self {
        match self {
            ComparisonResult::Greater => ComparisonResult::Less,
            ComparisonResult::Less => ComparisonResult::Greater,
            other => other,
        }
    }

    /// Builds the result from the two directions of a preorder.
    pub fn from_geq(x_geq_y: bool, y_geq_x: bool) -> Self {
        match (x_geq_y, y_geq_x) {
            (true, true) => ComparisonResult::Equivalent,
            (true, false) => ComparisonResult::Greater,
            (false, true) => ComparisonResult::Less,
            (false, false) => ComparisonResult::Incomparable,
        }
    }
}

/// A preorder over characterisations.
pub trait Preorder {
    fn compare(&self, x: &Characterisation, y: &Characterisation) -> Result<ComparisonResult>;
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Comparator {
    /// `x ≽ y` iff the feature set of `x` contains that of `y`.
    SupersetOfFeatures,
    /// `x ≽ y` iff the stage prefix of `y` is a prefix of that of `x`.
    LongerStagePrefix,
    GreaterEqualInteger,
}

impl Comparator {
    /// The comparator that fits a component kind.
    pub fn for_kind(kind: ComponentKind) -> Self {
        match kind {
            ComponentKind::FeatureSet => Comparator::SupersetOfFeatures,
            ComponentKind::StagePrefix { .. } => Comparator::LongerStagePrefix,
            ComponentKind::Integer { .. } => Comparator::GreaterEqualInteger,
        }
    }

    fn expects(self) -> &'static str {
        match self {
            Comparator::SupersetOfFeatures => "feature-set",
            Comparator::LongerStagePrefix => "stage-prefix",
            Comparator::GreaterEqualInteger => "integer",
        }
    }

    fn accepts(self, kind: ComponentKind) -> bool {
        Comparator::for_kind(kind) == self
    }

    pub fn compare_components(self, index: usize, x: &Component, y: &Component) -> Result<ComparisonResult> {
        use std::cmp::Ordering::*;
        let ord = match (self, x, y) {
            (Comparator::SupersetOfFeatures, Component::Features(a), Component::Features(b)) => {
                return Ok(ComparisonResult::from_geq(a.is_superset(b), b.is_superset(a)));
            }
            (Comparator::LongerStagePrefix, Component::Stage(a), Component::Stage(b)) => a.cmp(b),
            (Comparator::GreaterEqualInteger, Component::Integer(a), Component::Integer(b)) => a.cmp(b),
            _ => {
                let found = if x.kind_label() != self.expects() { x } else { y };
                return Err(Error::KindMismatch {
                    index,
                    expected: self.expects(),
                    found: found.kind_label(),
                });
            }
        };
        Ok(match ord {
            Greater => ComparisonResult::Greater,
            Less => ComparisonResult::Less,
            Equal => ComparisonResult::Equivalent,
        })
    }
}

/// One preorder of the sequence, bound to a single schema component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PreorderSpec {
    pub component: usize,
    pub comparator: Comparator,
}

impl PreorderSpec {
    pub fn new(component: usize, comparator: Comparator) -> Self {
        Self { component, comparator }
    }

    /// The natural comparator for component `index` of `schema`.
    pub fn for_component(schema: &Schema, index: usize) -> Result<Self> {
        let comp = schema.get(index).ok_or(Error::ComponentOutOfBounds {
            index,
            arity: schema.len(),
        })?;
        Ok(Self::new(index, Comparator::for_kind(comp.kind)))
    }

    pub fn check_schema(&self, schema: &Schema) -> Result<()> {
        let comp = schema.get(self.component).ok_or(Error::ComponentOutOfBounds {
            index: self.component,
            arity: schema.len(),
        })?;
        if self.comparator.accepts(comp.kind) {
            Ok(())
        } else {
            Err(Error::KindMismatch {
                index: self.component,
                expected: self.comparator.expects(),
                found: comp.kind.label(),
            })
        }
    }
}

impl Preorder for PreorderSpec {
    fn compare(&self, x: &Characterisation, y: &Characterisation) -> Result<ComparisonResult> {
        fn get(c: &Characterisation, index: usize) -> Result<&Component> {
            c.component(index).ok_or(Error::ComponentOutOfBounds {
                index,
                arity: c.arity(),
            })
        }
        self.comparator
            .compare_components(self.component, get(x, self.component)?, get(y, self.component)?)
    }
}

/// Convenience free function over [`PreorderSpec`].
pub fn compare(spec: &PreorderSpec, x: &Characterisation, y: &Characterisation) -> Result<ComparisonResult> {
    spec.compare(x, y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Greater,
    Less,
}

/// Where two characterisations first stop being equivalent.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FirstDifference {
    AllEquivalent,
    Strict { order: usize, direction: Direction },
    Incomparable { order: usize },
}

/// Preorders ranked from most to least preferred.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PreferenceSequence {
    orders: Vec<PreorderSpec>,
}

impl PreferenceSequence {
    pub fn new(orders: Vec<PreorderSpec>) -> Result<Self> {
        if orders.is_empty() {
            return Err(Error::EmptyPreferences);
        }
        for (i, o) in orders.iter().enumerate() {
            if orders[..i].iter().any(|p| p.component == o.component) {
                return Err(Error::DuplicateOrderComponent(o.component));
            }
        }
        Ok(Self { orders })
    }

    /// One order per named component, using each component's natural comparator.
    pub fn from_names<S: AsRef<str>>(schema: &Schema, names: &[S]) -> Result<Self> {
        let orders = names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                let index = schema.index_of(n).ok_or_else(|| Error::UnknownComponent(n.to_string()))?;
                PreorderSpec::for_component(schema, index)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(orders)
    }

    /// Every schema component, in schema order.
    pub fn from_schema(schema: &Schema) -> Result<Self> {
        Self::new(
            (0..schema.len())
                .map(|i| PreorderSpec::for_component(schema, i))
                .collect::<Result<Vec<_>>>()?,
        )
    }

    pub fn check_schema(&self, schema: &Schema) -> Result<()> {
        self.orders.iter().try_for_each(|o| o.check_schema(schema))
    }

    pub fn orders(&self) -> &[PreorderSpec] {
        &self.orders
    }

    pub fn len(&self) -> usize {
        self.orders.len()
    }

    pub fn is_empty(&self) -> bool {
        self.orders.is_empty()
    }

    pub fn order(&self, index: usize) -> Result<&PreorderSpec> {
        self.orders.get(index).ok_or(Error::OrderOutOfBounds {
            index,
            len: self.orders.len(),
        })
    }

    pub fn full_range(&self) -> RangeInclusive<usize> {
        0..=self.orders.len() - 1
    }

    /// Comparison of `x` against `y` under every order.
    pub fn compare_all(&self, x: &Characterisation, y: &Characterisation) -> Result<Vec<ComparisonResult>> {
        self.orders.iter().map(|o| o.compare(x, y)).collect()
    }

    fn check_range(&self, range: &RangeInclusive<usize>) -> Result<()> {
        if range.is_empty() {
            return Ok(());
        }
        if *range.end() >= self.len() {
            return Err(Error::OrderOutOfBounds {
                index: *range.end(),
                len: self.len(),
            });
        }
        Ok(())
    }

    fn all_in(
        &self,
        range: RangeInclusive<usize>,
        x: &Characterisation,
        y: &Characterisation,
        pred: impl Fn(ComparisonResult) -> bool,
    ) -> Result<bool> {
        self.check_range(&range)?;
        for i in range {
            if !pred(self.orders[i].compare(x, y)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `x ≽_i y` for every `i` in `range`; vacuously true on an empty range.
    pub fn geq_range(&self, range: RangeInclusive<usize>, x: &Characterisation, y: &Characterisation) -> Result<bool> {
        self.all_in(range, x, y, ComparisonResult::is_geq)
    }

    /// `x =_i y` for every `i` in `range`.
    pub fn eq_range(&self, range: RangeInclusive<usize>, x: &Characterisation, y: &Characterisation) -> Result<bool> {
        self.all_in(range, x, y, ComparisonResult::is_equivalent)
    }

    /// `x ≻_i y` for every `i` in `range`.
    pub fn strict_range(&self, range: RangeInclusive<usize>, x: &Characterisation, y: &Characterisation) -> Result<bool> {
        self.all_in(range, x, y, ComparisonResult::is_greater)
    }

    /// `x ≻_i y` for some `i` in `range`.
    pub fn exists_strict(&self, range: RangeInclusive<usize>, x: &Characterisation, y: &Characterisation) -> Result<bool> {
        self.check_range(&range)?;
        for i in range {
            if self.orders[i].compare(x, y)?.is_greater() {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn first_strict_order(&self, x: &Characterisation, y: &Characterisation) -> Result<FirstDifference> {
        for (order, o) in self.orders.iter().enumerate() {
            match o.compare(x, y)? {
                ComparisonResult::Equivalent => continue,
                ComparisonResult::Greater => {
                    return Ok(FirstDifference::Strict {
                        order,
                        direction: Direction::Greater,
                    })
                }
                ComparisonResult::Less => {
                    return Ok(FirstDifference::Strict {
                        order,
                        direction: Direction::Less,
                    })
                }
                ComparisonResult::Incomparable => return Ok(FirstDifference::Incomparable { order }),
            }
        }
        Ok(FirstDifference::AllEquivalent)
    }
}
