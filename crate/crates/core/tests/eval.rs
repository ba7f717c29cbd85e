mod common;

use aacbrp::eval::knn::Knn;
use aacbrp::eval::synthetic::{random_casebase, random_characterisation, RandomSchema, RandomSpec};
use aacbrp::eval::{bench_scaling, evaluate, generate_synthetic, metrics_from_confusion, Confusion, SyntheticSpec};
use aacbrp::{AacbrP, Case, Classifier, ConstantDefault, EngineConfig, Polarity, Report};
use common::{knn_oracle, Neg, Pos};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn knn_spec() -> RandomSpec {
    RandomSpec {
        schema: RandomSchema::Mixed,
        max_cases: 30,
        alphabet: 6,
        coherent: false,
        ..RandomSpec::default()
    }
}

#[test]
fn knn_matches_exhaustive_oracle() {
    let mut compared = 0;
    for seed in 0..60 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cb, _) = random_casebase(&mut rng, &knn_spec());
        for k in [1, 3, 4] {
            let knn = Knn::new(cb.clone(), k).unwrap();
            for _ in 0..5 {
                let q = random_characterisation(&mut rng, cb.schema(), 6, 3);
                assert_eq!(knn.predict(&q), knn_oracle(&cb, &q, k), "seed {seed} k {k}");
                compared += 1;
            }
        }
    }
    assert_eq!(compared, 900);
}

#[test]
fn knn_ignores_training_order() {
    for seed in 0..40 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (cb, _) = random_casebase(&mut rng, &knn_spec());
        let mut shuffled = cb.cases().to_vec();
        shuffled.shuffle(&mut rng);
        let a = Knn::new(cb.clone(), 3).unwrap();
        let b = Knn::new(cb.with_cases(shuffled), 3).unwrap();
        for _ in 0..5 {
            let q = random_characterisation(&mut rng, cb.schema(), 6, 3);
            assert_eq!(a.predict(&q), b.predict(&q));
        }
    }
}

#[test]
fn constant_default_on_balanced_test() {
    let (cb, _) = common::example1();
    let test = vec![
        Case::new("t1", common::n1(), Neg),
        Case::new("t2", common::n2(), Pos),
    ];
    let r: Report = evaluate(&ConstantDefault::new(cb), &test, Neg, false).unwrap();
    assert_eq!(r.accuracy, 0.5);
}

#[test]
fn exact_copies_are_recovered() {
    let data = generate_synthetic(&SyntheticSpec {
        n_cases: 40,
        seed: 3,
        ..SyntheticSpec::default()
    })
    .unwrap();
    let engine = AacbrP::new(data.casebase.clone(), EngineConfig::new(data.preferences.clone())).unwrap();
    let copies: Vec<Case> = data.casebase.cases().to_vec();
    let r: Report = evaluate(&engine, &copies, Neg, true).unwrap();
    assert_eq!(r.accuracy, 1.0);
    assert_eq!(r.counts.total(), copies.len());
}

#[test]
fn parallel_evaluation_matches_sequential() {
    let data = generate_synthetic(&SyntheticSpec::default()).unwrap();
    let engine = AacbrP::new(data.casebase.clone(), EngineConfig::new(data.preferences.clone())).unwrap();
    let a: Report = evaluate(&engine, &data.test, Neg, false).unwrap();
    let b: Report = evaluate(&engine, &data.test, Neg, true).unwrap();
    assert_eq!(a, b);
    assert_eq!(engine.name(), "aacbrp");
}

#[test]
fn empty_casebase_bench_is_fast_and_stable() {
    let (cb, p) = common::tiered(vec![]);
    let points = bench_scaling(&cb, &p, 0, &[1, 4], 3).unwrap();
    assert!(points.iter().all(|pt| pt.casebase_attacks == 0));
    assert!(points.iter().all(|pt| pt.median.as_millis() < 50));
    assert_eq!(points[1].orders, 5);
}

proptest! {
    #[test]
    fn metric_bounds_and_swap(tp in 0usize..20, fp in 0usize..20, fn_ in 0usize..20, tn in 0usize..20) {
        prop_assume!(tp + fp + fn_ + tn > 0);
        let c = Confusion::new(tp, fp, fn_, tn);
        let (cb, _) = common::example1();
        let r = metrics_from_confusion::<f64>(c, cb.outcome(Polarity::Default)).unwrap();
        for v in [r.accuracy, r.precision, r.recall, r.f1] {
            prop_assert!((0.0..=1.0).contains(&v));
        }
        if r.precision == 0.0 && r.recall == 0.0 {
            prop_assert_eq!(r.f1, 0.0);
        }
        let s = metrics_from_confusion::<f64>(c.swapped(), cb.outcome(Polarity::NonDefault)).unwrap();
        prop_assert_eq!(s.counts.swapped(), c);
        prop_assert!((s.accuracy - r.accuracy).abs() < 1e-12);
    }
}
