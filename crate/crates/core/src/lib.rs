//! Case-based classification by abstract argumentation with a sequence of
//! preference orders over case characterisations.
//!
//! A [`Casebase`] holds labelled cases and a default argument. A
//! [`PreferenceSequence`] lists the orders from most to least important.
//! [`AacbrP`] mines the attacks between cases once and then classifies new
//! cases through the grounded extension of the resulting framework.
//!
//! ```
//! use aacbrp::{AacbrP, Case, Casebase, Characterisation, Component, ComponentSchema,
//!              EngineConfig, OutcomeNames, Polarity, PreferenceSequence, Schema};
//!
//! let schema = Schema::new(vec![ComponentSchema::features("F"), ComponentSchema::stages("S", 2)]);
//! let x = |f: &[&str], s| Characterisation::new(vec![Component::features(f), Component::Stage(s)]);
//! let cb = Casebase::new(schema.clone(), OutcomeNames::new("-", "+"), None,
//!     vec![Case::new("c1", x(&["a"], 0), Polarity::NonDefault)]);
//! let prefs = PreferenceSequence::from_names(&schema, &["F", "S"]).unwrap();
//! let engine = AacbrP::new(cb, EngineConfig::new(prefs)).unwrap();
//! assert_eq!(engine.predict(&x(&["a", "b"], 1)).unwrap().outcome.name, "+");
//! assert_eq!(engine.predict(&x(&["b"], 1)).unwrap().outcome.name, "-");
//! ```

pub mod af;
pub mod classifier;
pub mod engine;
pub mod error;
pub mod eval;
pub mod io;
pub mod legacy;
pub mod model;
pub mod orders;

pub use af::{
    grounded_extension, is_acyclic, ArgumentRef, ArgumentationFramework, AttackEdge, AttackLabel, GroundedResult,
    LabelKind,
};
pub use classifier::{Classifier, ConstantDefault, Explainer};
pub use engine::{
    build_framework, casebase_attacks, check_regular, incoherent_attacks, is_coherent, nearest_cases,
    new_case_attacks, potential_attack_order, predict, preferred_cases, AacbrP, Coherence, EngineConfig,
    Prediction, RegularityViolation,
};
pub use error::{Error, Result};
pub use io::{export_framework, parse_casebase, parse_new_cases, serialise_casebase, ExportFormat, NewCase};
pub use legacy::{
    classic_attacks, classic_predict, frameworks_equal, stages_attacks, stages_predict, ClassicAacbr, ClassicOrder,
    FrameworkDiff, LegacyVariant, StagesAacbr, StagesVariant,
};
pub use model::{
    validate_casebase, Case, Casebase, Characterisation, Component, ComponentKind, ComponentSchema, Feature,
    FeatureSet, Outcome, OutcomeNames, Polarity, Schema, Violation, ViolationRule,
};
pub use orders::{
    compare, Comparator, ComparisonResult, Direction, FirstDifference, Preorder, PreferenceSequence, PreorderSpec,
};

/// Evaluation report with double-precision metrics.
pub type Report = eval::EvaluationReport<f64>;
/// Evaluation report with single-precision metrics.
pub type Report32 = eval::EvaluationReport<f32>;
