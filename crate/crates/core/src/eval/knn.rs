//! k-nearest-neighbour baseline over binary feature vectors.
//!
//! Feature-set components become one bit per feature seen in training;
//! stage and integer components are one-hot encoded. Distances are
//! Hamming distances over the packed vectors. Features absent from the
//! training vocabulary add the same amount to every distance, so they are
//! dropped without changing the ranking.

use std::collections::BTreeMap;

use crate::classifier::Classifier;
use crate::error::{Error, Result};
use crate::model::{Case, Casebase, Characterisation, Component, ComponentKind, Feature, Polarity};

#[derive(Clone, Debug)]
enum Encoding {
    Features(BTreeMap<Feature, usize>),
    OneHot(BTreeMap<i64, usize>),
}

#[derive(Clone, Debug)]
struct Vectoriser {
    encodings: Vec<(usize, Encoding)>,
    bits: usize,
}

impl Vectoriser {
    fn fit(cb: &Casebase) -> Self {
        let mut encodings = Vec::new();
        let mut bits = 0;
        for (i, comp) in cb.schema().components().iter().enumerate() {
            let enc = match comp.kind {
                ComponentKind::FeatureSet => {
                    let mut vocab = BTreeMap::new();
                    for case in cb.cases() {
                        if let Some(Component::Features(f)) = case.characterisation.component(i) {
                            for feat in f.iter() {
                                vocab.entry(feat.clone()).or_insert(0);
                            }
                        }
                    }
                    for slot in vocab.values_mut() {
                        *slot = bits;
                        bits += 1;
                    }
                    Encoding::Features(vocab)
                }
                ComponentKind::StagePrefix { max_stage } => {
                    let map = (0..=i64::from(max_stage)).map(|k| (k, bits + k as usize)).collect();
                    bits += max_stage as usize + 1;
                    Encoding::OneHot(map)
                }
                ComponentKind::Integer { .. } => {
                    let mut values: BTreeMap<i64, usize> = BTreeMap::new();
                    for case in cb.cases() {
                        if let Some(Component::Integer(v)) = case.characterisation.component(i) {
                            values.insert(*v, 0);
                        }
                    }
                    for slot in values.values_mut() {
                        *slot = bits;
                        bits += 1;
                    }
                    Encoding::OneHot(values)
                }
            };
            encodings.push((i, enc));
        }
        Self { encodings, bits }
    }

    fn encode(&self, x: &Characterisation) -> Vec<u64> {
        let mut words = vec![0u64; self.bits.div_ceil(64)];
        let mut set = |bit: usize| words[bit / 64] |= 1 << (bit % 64);
        for (i, enc) in &self.encodings {
            match (enc, x.component(*i)) {
                (Encoding::Features(vocab), Some(Component::Features(f))) => {
                    f.iter().filter_map(|feat| vocab.get(feat)).for_each(|&b| set(b));
                }
                (Encoding::OneHot(map), Some(Component::Stage(k))) => {
                    if let Some(&b) = map.get(&i64::from(*k)) {
                        set(b);
                    }
                }
                (Encoding::OneHot(map), Some(Component::Integer(v))) => {
                    if let Some(&b) = map.get(v) {
                        set(b);
                    }
                }
                _ => {}
            }
        }
        words
    }
}

pub fn hamming(a: &[u64], b: &[u64]) -> u32 {
    a.iter().zip(b).map(|(x, y)| (x ^ y).count_ones()).sum()
}

/// kNN classifier; ties in distance go to the smaller case id.
#[derive(Clone, Debug)]
pub struct Knn {
    casebase: Casebase,
    k: usize,
    vectoriser: Vectoriser,
    vectors: Vec<Vec<u64>>,
}

impl Knn {
    pub fn new(casebase: Casebase, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::InvalidArgument("k must be positive".into()));
        }
        let vectoriser = Vectoriser::fit(&casebase);
        let vectors = casebase
            .cases()
            .iter()
            .map(|c| vectoriser.encode(&c.characterisation))
            .collect();
        Ok(Self {
            casebase,
            k,
            vectoriser,
            vectors,
        })
    }

    /// The `k` nearest training cases, closest first.
    pub fn neighbours(&self, query: &Characterisation) -> Vec<(u32, &Case)> {
        let q = self.vectoriser.encode(query);
        let mut ranked: Vec<(u32, &Case)> = self
            .vectors
            .iter()
            .zip(self.casebase.cases())
            .map(|(v, c)| (hamming(&q, v), c))
            .collect();
        ranked.sort_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.id.cmp(&b.1.id)));
        ranked.truncate(self.k);
        ranked
    }

    pub fn predict(&self, query: &Characterisation) -> Polarity {
        majority(self.neighbours(query).iter().map(|(_, c)| c.outcome))
    }
}

/// Majority label; an even split goes to the first (closest) label and
/// an empty neighbourhood to the default outcome.
pub fn majority(labels: impl Iterator<Item = Polarity>) -> Polarity {
    let labels: Vec<Polarity> = labels.collect();
    let non_default = labels.iter().filter(|&&p| p == Polarity::NonDefault).count();
    let default = labels.len() - non_default;
    match non_default.cmp(&default) {
        std::cmp::Ordering::Greater => Polarity::NonDefault,
        std::cmp::Ordering::Less => Polarity::Default,
        std::cmp::Ordering::Equal => labels.first().copied().unwrap_or(Polarity::Default),
    }
}

pub fn knn_predict(train: &Casebase, query: &Characterisation, k: usize) -> Result<Polarity> {
    Ok(Knn::new(train.clone(), k)?.predict(query))
}

impl Classifier for Knn {
    fn name(&self) -> String {
        format!("knn(k={})", self.k)
    }

    fn casebase(&self) -> &Casebase {
        &self.casebase
    }

    fn classify(&self, new_case: &Characterisation) -> Result<Polarity> {
        Ok(self.predict(new_case))
    }
}
