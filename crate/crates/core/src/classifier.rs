//! Common prediction interface over the argumentation engines and baselines.

use crate::engine::{AacbrP, Prediction};
use crate::error::Result;
use crate::legacy::{ClassicAacbr, StagesAacbr};
use crate::model::{Casebase, Characterisation, Polarity};

pub trait Classifier: Send + Sync {
    fn name(&self) -> String;

    fn casebase(&self) -> &Casebase;

    fn classify(&self, new_case: &Characterisation) -> Result<Polarity>;
}

/// Classifiers whose prediction comes with an argumentation framework.
pub trait Explainer: Classifier {
    fn explain(&self, new_case: &Characterisation) -> Result<Prediction>;
}

macro_rules! argumentation_classifier {
    ($ty:ty, $name:expr) => {
        impl Classifier for $ty {
            fn name(&self) -> String {
                ($name)(self)
            }

            fn casebase(&self) -> &Casebase {
                <$ty>::casebase(self)
            }

            fn classify(&self, new_case: &Characterisation) -> Result<Polarity> {
                Ok(self.predict(new_case)?.outcome.polarity)
            }
        }

        impl Explainer for $ty {
            fn explain(&self, new_case: &Characterisation) -> Result<Prediction> {
                self.predict(new_case)
            }
        }
    };
}

argumentation_classifier!(AacbrP, |_: &AacbrP| "aacbrp".to_string());
argumentation_classifier!(ClassicAacbr, |_: &ClassicAacbr| "classic".to_string());
argumentation_classifier!(StagesAacbr, |s: &StagesAacbr| match s.variant() {
    crate::legacy::StagesVariant::Verbatim => "stages".to_string(),
    crate::legacy::StagesVariant::ModifiedConcision => "stages-modified".to_string(),
});

/// Always predicts the default outcome.
#[derive(Clone, Debug)]
pub struct ConstantDefault {
    casebase: Casebase,
}

impl ConstantDefault {
    pub fn new(casebase: Casebase) -> Self {
        Self { casebase }
    }
}

impl Classifier for ConstantDefault {
    fn name(&self) -> String {
        "constant-default".to_string()
    }

    fn casebase(&self) -> &Casebase {
        &self.casebase
    }

    fn classify(&self, _new_case: &Characterisation) -> Result<Polarity> {
        Ok(Polarity::Default)
    }
}
