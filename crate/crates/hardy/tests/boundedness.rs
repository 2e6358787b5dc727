mod common;

use hardy::boundedness::{compare_criteria, corpus, k2_sup_estimate, StripSamplingPlan, Thresholds, Verdict};
use hardy::model_space::reproducing_kernel;
use hardy::{InnerFunction, C64};
use proptest::prelude::*;
use rand::Rng;

#[test]
fn corpus_diagnostics_agree_with_known_answers() {
    let plan = StripSamplingPlan::default();
    for m in corpus() {
        let cmp = compare_criteria(&m.theta, &plan, &Thresholds::default()).unwrap();
        eprintln!(
            "{}: k2 {:?} growth {:.3} sup {:.4} | dy {:?} d' {} inf {:.3e} | lim {:?} last {:.6}",
            m.name,
            cmp.k2.verdict,
            cmp.k2.growth,
            cmp.k2.sup_estimate,
            cmp.dyakonov.verdict,
            cmp.dyakonov.derivative_bounded,
            cmp.dyakonov.strip_infimum,
            cmp.limit.verdict,
            cmp.limit.infima.last().unwrap().1
        );
        assert!(cmp.consistent(), "{}", m.name);
        let expected = if m.bounded { Verdict::BoundedEvidence } else { Verdict::UnboundedEvidence };
        assert_eq!(cmp.k2.verdict, expected, "{}", m.name);
    }
}

#[test]
fn exponential_sup_within_one_percent_of_two_lambda() {
    for lambda in [0.5, 1.0, 2.0] {
        let theta = hardy::InnerFunction::exp_inf(lambda).unwrap();
        let r = k2_sup_estimate(&theta, &StripSamplingPlan::default()).unwrap();
        // sup over y > 0 of (1 − e^{−2λy})/y is its limit 2λ at y → 0
        let oracle = 2.0 * lambda;
        assert!((r.sup_estimate - oracle).abs() <= 0.01 * oracle);
    }
}

#[test]
fn atom_maxima_grow_by_three_decades() {
    for m in corpus().into_iter().filter(|m| m.name.starts_with("atom")) {
        let r = k2_sup_estimate(&m.theta, &StripSamplingPlan::default()).unwrap();
        assert!(r.growth >= 1e3, "{} {}", m.name, r.growth);
    }
}

proptest! {
    #![proptest_config(common::config(10))]

    #[test]
    fn kernel_diagonal_matches_k2_quantity(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let n = rng.gen_range(1..4);
        let zeros = common::roots(&mut rng, n, |_| true);
        let theta = InnerFunction::new(C64::new(1.0, 0.0), zeros, rng.gen_range(0.0..2.0), vec![(rng.gen_range(-2.0..2.0), 0.5)]).unwrap();
        for _ in 0..100 {
            let w = C64::new(rng.gen_range(-5.0..5.0), rng.gen_range(0.05..5.0));
            let k = reproducing_kernel(&theta, w).unwrap();
            // the kernel formula evaluated on the diagonal, not the stored closed form
            let diagonal = k.eval(w).unwrap();
            let lhs = diagonal * 4.0 * std::f64::consts::PI * w.im;
            let rhs = 1.0 - theta.eval(w).unwrap().norm_sqr();
            prop_assert!((lhs - rhs).norm() < 1e-12);
        }
    }
}
