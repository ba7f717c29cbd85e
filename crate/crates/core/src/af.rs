//! Abstract argumentation frameworks and grounded semantics.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::model::{DEFAULT_ID, NEW_CASE_ID};

/// An argument of a mined framework.
///
/// The derived order (default, cases by id, new case) is the iteration
/// order used everywhere, which keeps exports byte-stable.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArgumentRef {
    Default,
    Case(String),
    NewCase,
}

impl ArgumentRef {
    pub fn case(id: impl Into<String>) -> Self {
        ArgumentRef::Case(id.into())
    }
}

impl fmt::Display for ArgumentRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ArgumentRef::Default => f.write_str(DEFAULT_ID),
            ArgumentRef::Case(id) => f.write_str(id),
            ArgumentRef::NewCase => f.write_str(NEW_CASE_ID),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AttackLabel {
    /// Attack on the order with this 0-based index.
    Order(usize),
    Incoherent,
    NewCase,
}

impl AttackLabel {
    pub fn kind(self) -> LabelKind {
        match self {
            AttackLabel::Order(_) => LabelKind::Order,
            AttackLabel::Incoherent => LabelKind::Incoherent,
            AttackLabel::NewCase => LabelKind::NewCase,
        }
    }
}

impl fmt::Display for AttackLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AttackLabel::Order(i) => write!(f, "{}", i + 1),
            AttackLabel::Incoherent => f.write_str("inc"),
            AttackLabel::NewCase => f.write_str("new"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LabelKind {
    Order,
    Incoherent,
    NewCase,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AttackEdge {
    pub attacker: ArgumentRef,
    pub target: ArgumentRef,
    pub label: AttackLabel,
}

impl AttackEdge {
    pub fn new(attacker: ArgumentRef, target: ArgumentRef, label: AttackLabel) -> Self {
        Self { attacker, target, label }
    }
}

impl fmt::Display for AttackEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {} [{}]", self.attacker, self.target, self.label)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ArgumentationFramework {
    arguments: BTreeSet<ArgumentRef>,
    attacks: BTreeSet<AttackEdge>,
}

impl ArgumentationFramework {
    pub fn new(arguments: impl IntoIterator<Item = ArgumentRef>) -> Self {
        Self {
            arguments: arguments.into_iter().collect(),
            attacks: BTreeSet::new(),
        }
    }

    /// Builds a framework, rejecting edges whose endpoints are not arguments.
    pub fn with_attacks(
        arguments: impl IntoIterator<Item = ArgumentRef>,
        attacks: impl IntoIterator<Item = AttackEdge>,
    ) -> Result<Self> {
        let mut af = Self::new(arguments);
        for edge in attacks {
            af.add_attack(edge)?;
        }
        Ok(af)
    }

    pub fn add_attack(&mut self, edge: AttackEdge) -> Result<bool> {
        for end in [&edge.attacker, &edge.target] {
            if !self.arguments.contains(end) {
                return Err(Error::UnknownArgument(end.to_string()));
            }
        }
        Ok(self.attacks.insert(edge))
    }

    pub fn arguments(&self) -> &BTreeSet<ArgumentRef> {
        &self.arguments
    }

    pub fn attacks(&self) -> &BTreeSet<AttackEdge> {
        &self.attacks
    }

    pub fn attacks_between(&self, attacker: &ArgumentRef, target: &ArgumentRef) -> bool {
        self.attacks.iter().any(|e| &e.attacker == attacker && &e.target == target)
    }

    /// Distinct (attacker, target) pairs, labels dropped.
    pub fn attack_pairs(&self, ignore: &[LabelKind]) -> BTreeSet<(ArgumentRef, ArgumentRef)> {
        self.attacks
            .iter()
            .filter(|e| !ignore.contains(&e.label.kind()))
            .map(|e| (e.attacker.clone(), e.target.clone()))
            .collect()
    }

    fn indexed(&self, ignore: &[LabelKind]) -> IndexedGraph<'_> {
        let args: Vec<&ArgumentRef> = self.arguments.iter().collect();
        let index: BTreeMap<&ArgumentRef, usize> = args.iter().enumerate().map(|(i, a)| (*a, i)).collect();
        let mut attackers = vec![Vec::new(); args.len()];
        let mut targets = vec![Vec::new(); args.len()];
        for e in &self.attacks {
            if ignore.contains(&e.label.kind()) {
                continue;
            }
            let (a, t) = (index[&e.attacker], index[&e.target]);
            if !attackers[t].contains(&a) {
                attackers[t].push(a);
                targets[a].push(t);
            }
        }
        IndexedGraph { args, attackers, targets }
    }
}

struct IndexedGraph<'a> {
    args: Vec<&'a ArgumentRef>,
    attackers: Vec<Vec<usize>>,
    targets: Vec<Vec<usize>>,
}

/// The layers `G_0 ⊆ G_1 ⊆ …` and their union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundedResult {
    pub layers: Vec<BTreeSet<ArgumentRef>>,
    pub grounded: BTreeSet<ArgumentRef>,
}

impl GroundedResult {
    pub fn contains(&self, arg: &ArgumentRef) -> bool {
        self.grounded.contains(arg)
    }

    /// Index of the first layer containing `arg`.
    pub fn layer_of(&self, arg: &ArgumentRef) -> Option<usize> {
        self.layers.iter().position(|l| l.contains(arg))
    }
}

/// Grounded extension by iterated defence: `G_0` is the unattacked
/// arguments and `G_{i+1}` is everything `G_i` defends, up to the fixpoint.
pub fn grounded_extension(af: &ArgumentationFramework) -> GroundedResult {
    let g = af.indexed(&[]);
    let n = g.args.len();
    let mut current: Vec<bool> = (0..n).map(|i| g.attackers[i].is_empty()).collect();
    let to_set = |members: &[bool]| -> BTreeSet<ArgumentRef> {
        members
            .iter()
            .enumerate()
            .filter(|(_, &m)| m)
            .map(|(i, _)| g.args[i].clone())
            .collect()
    };
    let mut layers = vec![to_set(&current)];

    loop {
        // Attacked by the current layer.
        let mut defeated = vec![false; n];
        for (a, &member) in current.iter().enumerate() {
            if member {
                for &t in &g.targets[a] {
                    defeated[t] = true;
                }
            }
        }
        let next: Vec<bool> = (0..n)
            .map(|b| g.attackers[b].iter().all(|&a| defeated[a]))
            .collect();
        if next == current {
            break;
        }
        current = next;
        layers.push(to_set(&current));
    }

    let grounded = layers.last().cloned().unwrap_or_default();
    GroundedResult { layers, grounded }
}

/// True iff the graph restricted to edges whose kind is not in `ignore` has no cycle.
pub fn is_acyclic(af: &ArgumentationFramework, ignore: &[LabelKind]) -> bool {
    let g = af.indexed(ignore);
    // Kahn's algorithm
    let n = g.args.len();
    let mut indegree: Vec<usize> = g.attackers.iter().map(Vec::len).collect();
    let mut queue: Vec<usize> = (0..n).filter(|&i| indegree[i] == 0).collect();
    let mut seen = 0;
    while let Some(v) = queue.pop() {
        seen += 1;
        for &t in &g.targets[v] {
            indegree[t] -= 1;
            if indegree[t] == 0 {
                queue.push(t);
            }
        }
    }
    seen == n
}

/// Every argument outside `set` is attacked by a member of `set`.
pub fn attacks_all_outside(af: &ArgumentationFramework, set: &BTreeSet<ArgumentRef>) -> bool {
    af.arguments()
        .iter()
        .filter(|a| !set.contains(*a))
        .all(|a| af.attacks().iter().any(|e| &e.target == a && set.contains(&e.attacker)))
}

/// No attack has both endpoints in `set`.
pub fn is_conflict_free(af: &ArgumentationFramework, set: &BTreeSet<ArgumentRef>) -> bool {
    !af.attacks()
        .iter()
        .any(|e| set.contains(&e.attacker) && set.contains(&e.target))
}
