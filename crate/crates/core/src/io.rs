//! Casebase documents (TOML) and framework export.
//!
//! A casebase document looks like:
//!
//! ```toml
//! preferences = ["H", "L"]
//!
//! [outcomes]
//! default = "-"
//! other = "+"
//!
//! [[schema]]
//! name = "H"
//! kind = "features"
//!
//! [[schema]]
//! name = "L"
//! kind = "features"
//!
//! [[cases]]
//! id = "C1"
//! outcome = "+"
//! values = { H = [], L = ["a", "b"] }
//! ```
//!
//! `kind` is one of `features`, `stages` (with `max_stage`) or `integer`
//! (with optional `min`, default 0). An optional `[default]` table gives the
//! default characterisation; without it the least element is used. A
//! new-cases document holds only `[[cases]]` entries, whose `outcome` is
//! optional.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::af::{ArgumentationFramework, AttackLabel};
use crate::error::{Error, Result};
use crate::model::{
    validate_casebase, Case, Casebase, Characterisation, Component, ComponentKind, ComponentSchema, OutcomeNames,
    Schema,
};
use crate::orders::PreferenceSequence;

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CasebaseDocument {
    preferences: Vec<String>,
    outcomes: OutcomesSection,
    schema: Vec<ComponentEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    default: Option<BTreeMap<String, ValueEntry>>,
    #[serde(default)]
    cases: Vec<CaseEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct OutcomesSection {
    default: String,
    other: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentEntry {
    name: String,
    kind: KindTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    max_stage: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    min: Option<i64>,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum KindTag {
    Features,
    Stages,
    Integer,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum ValueEntry {
    Features(Vec<String>),
    Number(i64),
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseEntry {
    id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    outcome: Option<String>,
    values: BTreeMap<String, ValueEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseListDocument {
    #[serde(default)]
    cases: Vec<CaseEntry>,
}

/// An unlabelled case read from a new-cases document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewCase {
    pub id: String,
    pub characterisation: Characterisation,
    /// Outcome name, when the document carries one.
    pub outcome: Option<String>,
}

fn parse_error(text: &str, err: toml::de::Error) -> Error {
    let offset = err.span().map(|s| s.start).unwrap_or(0).min(text.len());
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    Error::Parse {
        line,
        column,
        message: err.message().trim().to_string(),
    }
}

fn schema_from(entries: &[ComponentEntry]) -> Result<Schema> {
    entries
        .iter()
        .map(|e| {
            let kind = match (e.kind, e.max_stage, e.min) {
                (KindTag::Features, None, None) => ComponentKind::FeatureSet,
                (KindTag::Stages, Some(max_stage), None) => ComponentKind::StagePrefix { max_stage },
                (KindTag::Integer, None, min) => ComponentKind::Integer { min: min.unwrap_or(0) },
                (KindTag::Stages, None, _) => {
                    return Err(Error::InvalidArgument(format!(
                        "component `{}`: stages need `max_stage`",
                        e.name
                    )))
                }
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "component `{}`: option not valid for this kind",
                        e.name
                    )))
                }
            };
            Ok(ComponentSchema {
                name: e.name.clone(),
                kind,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Schema::new)
}

fn characterisation_from(schema: &Schema, owner: &str, values: &BTreeMap<String, ValueEntry>) -> Result<Characterisation> {
    if let Some(unknown) = values.keys().find(|k| schema.index_of(k).is_none()) {
        return Err(Error::InvalidArgument(format!(
            "case `{owner}`: unknown component `{unknown}`"
        )));
    }
    schema
        .components()
        .iter()
        .map(|c| {
            let value = values.get(&c.name).ok_or_else(|| {
                Error::InvalidArgument(format!("case `{owner}`: missing value for component `{}`", c.name))
            })?;
            match (c.kind, value) {
                (ComponentKind::FeatureSet, ValueEntry::Features(items)) => Ok(Component::features(items)),
                (ComponentKind::StagePrefix { .. }, ValueEntry::Number(k)) => u32::try_from(*k)
                    .map(Component::Stage)
                    .map_err(|_| {
                        Error::InvalidArgument(format!("case `{owner}`: stage `{}` must be non-negative", c.name))
                    }),
                (ComponentKind::Integer { .. }, ValueEntry::Number(v)) => Ok(Component::Integer(*v)),
                (kind, _) => Err(Error::InvalidArgument(format!(
                    "case `{owner}`: component `{}` expects a {} value",
                    c.name,
                    kind.label()
                ))),
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(Characterisation::new)
}

fn values_of(schema: &Schema, x: &Characterisation) -> BTreeMap<String, ValueEntry> {
    schema
        .components()
        .iter()
        .zip(x.components())
        .map(|(c, v)| {
            let value = match v {
                Component::Features(f) => ValueEntry::Features(f.iter().map(|s| s.to_string()).collect()),
                Component::Stage(k) => ValueEntry::Number(i64::from(*k)),
                Component::Integer(v) => ValueEntry::Number(*v),
            };
            (c.name.clone(), value)
        })
        .collect()
}

/// Parses a casebase document into a validated casebase and its preferences.
pub fn parse_casebase(text: &str) -> Result<(Casebase, PreferenceSequence)> {
    let doc: CasebaseDocument = toml::from_str(text).map_err(|e| parse_error(text, e))?;
    let schema = schema_from(&doc.schema)?;
    let outcomes = OutcomeNames::new(doc.outcomes.default, doc.outcomes.other);

    let default = doc
        .default
        .as_ref()
        .map(|values| characterisation_from(&schema, crate::model::DEFAULT_ID, values))
        .transpose()?;

    let mut seen = std::collections::HashSet::new();
    let mut cases = Vec::with_capacity(doc.cases.len());
    for entry in &doc.cases {
        if !seen.insert(entry.id.as_str()) {
            return Err(Error::DuplicateId(entry.id.clone()));
        }
        let name = entry
            .outcome
            .as_deref()
            .ok_or_else(|| Error::InvalidArgument(format!("case `{}`: missing outcome", entry.id)))?;
        let polarity = outcomes
            .polarity_of(name)
            .ok_or_else(|| Error::UnknownOutcome(name.to_string()))?;
        cases.push(Case::new(
            entry.id.clone(),
            characterisation_from(&schema, &entry.id, &entry.values)?,
            polarity,
        ));
    }

    let cb = Casebase::new(schema, outcomes, default, cases);
    let violations = validate_casebase(&cb);
    if !violations.is_empty() {
        return Err(Error::Invalid(violations));
    }
    let prefs = PreferenceSequence::from_names(cb.schema(), &doc.preferences)?;
    Ok((cb, prefs))
}

/// Canonical document text for a casebase; parses back to an equal value.
pub fn serialise_casebase(cb: &Casebase, prefs: &PreferenceSequence) -> String {
    let schema = cb.schema();
    let doc = CasebaseDocument {
        preferences: prefs
            .orders()
            .iter()
            .map(|o| schema.components()[o.component].name.clone())
            .collect(),
        outcomes: OutcomesSection {
            default: cb.outcomes().name(crate::model::Polarity::Default).to_string(),
            other: cb.outcomes().name(crate::model::Polarity::NonDefault).to_string(),
        },
        schema: schema
            .components()
            .iter()
            .map(|c| {
                let (kind, max_stage, min) = match c.kind {
                    ComponentKind::FeatureSet => (KindTag::Features, None, None),
                    ComponentKind::StagePrefix { max_stage } => (KindTag::Stages, Some(max_stage), None),
                    ComponentKind::Integer { min } => (KindTag::Integer, None, Some(min)),
                };
                ComponentEntry {
                    name: c.name.clone(),
                    kind,
                    max_stage,
                    min,
                }
            })
            .collect(),
        default: Some(values_of(schema, &cb.default_case().characterisation)),
        cases: cb
            .cases()
            .iter()
            .map(|c| CaseEntry {
                id: c.id.clone(),
                outcome: Some(cb.outcomes().name(c.outcome).to_string()),
                values: values_of(schema, &c.characterisation),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("casebase document serialises")
}

/// Reads a new-cases document against `schema`.
pub fn parse_new_cases(text: &str, schema: &Schema) -> Result<Vec<NewCase>> {
    let doc: CaseListDocument = toml::from_str(text).map_err(|e| parse_error(text, e))?;
    let mut seen = std::collections::HashSet::new();
    doc.cases
        .iter()
        .map(|entry| {
            if !seen.insert(entry.id.as_str()) {
                return Err(Error::DuplicateId(entry.id.clone()));
            }
            let characterisation = characterisation_from(schema, &entry.id, &entry.values)?;
            let rules = schema.check(&characterisation);
            if !rules.is_empty() {
                return Err(Error::Invalid(
                    rules
                        .into_iter()
                        .map(|rule| crate::model::Violation {
                            case_id: Some(entry.id.clone()),
                            rule,
                        })
                        .collect(),
                ));
            }
            Ok(NewCase {
                id: entry.id.clone(),
                characterisation,
                outcome: entry.outcome.clone(),
            })
        })
        .collect()
}

/// Reads a labelled case list (e.g. a test split) against a casebase's schema and outcomes.
pub fn parse_labelled_cases(text: &str, cb: &Casebase) -> Result<Vec<Case>> {
    parse_new_cases(text, cb.schema())?
        .into_iter()
        .map(|n| {
            let name = n
                .outcome
                .ok_or_else(|| Error::InvalidArgument(format!("case `{}`: missing outcome", n.id)))?;
            let polarity = cb
                .outcomes()
                .polarity_of(&name)
                .ok_or(Error::UnknownOutcome(name))?;
            Ok(Case::new(n.id, n.characterisation, polarity))
        })
        .collect()
}

/// Writes cases as a case-list document; outcomes are included when `cb` is given.
pub fn serialise_cases(schema: &Schema, cases: &[Case], outcomes: Option<&OutcomeNames>) -> String {
    let doc = CaseListDocument {
        cases: cases
            .iter()
            .map(|c| CaseEntry {
                id: c.id.clone(),
                outcome: outcomes.map(|o| o.name(c.outcome).to_string()),
                values: values_of(schema, &c.characterisation),
            })
            .collect(),
    };
    toml::to_string(&doc).expect("case list serialises")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    EdgeList,
}

fn quoted(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders a framework as Graphviz DOT or as the canonical edge list.
///
/// The edge list has one `attacker -> target [label]` line per attack,
/// sorted lexicographically. Labels are the 1-based order index, `inc`
/// or `new`.
pub fn export_framework(af: &ArgumentationFramework, format: ExportFormat) -> String {
    match format {
        ExportFormat::EdgeList => {
            let mut lines: Vec<String> = af.attacks().iter().map(ToString::to_string).collect();
            lines.sort();
            lines.into_iter().map(|l| l + "\n").collect()
        }
        ExportFormat::Dot => {
            let mut out = String::from("digraph af {\n");
            for arg in af.arguments() {
                let _ = writeln!(out, "  {};", quoted(&arg.to_string()));
            }
            for e in af.attacks() {
                let style = match e.label {
                    AttackLabel::NewCase => "style=dashed, color=red".to_string(),
                    label => format!("label={}", quoted(&label.to_string())),
                };
                let _ = writeln!(
                    out,
                    "  {} -> {} [{}];",
                    quoted(&e.attacker.to_string()),
                    quoted(&e.target.to_string()),
                    style
                );
            }
            out.push_str("}\n");
            out
        }
    }
}
