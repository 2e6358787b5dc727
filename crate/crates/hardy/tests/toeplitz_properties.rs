mod common;

use hardy::linalg;
use hardy::model_space::basis;
use hardy::rational_algebra::winding_index;
use hardy::toeplitz_kernels::{
    kernel_of, maximal_element, member, minimal_function, minimal_kernel, minimal_kernel_symbol, ToeplitzSymbol,
};
use hardy::{FactoredRational, PartialFractions, C64};
use proptest::prelude::*;

proptest! {
    #![proptest_config(common::config(100))]

    #[test]
    fn blaschke_multiplication_lowers_dimension(seed in any::<u64>(), deg in 0usize..9, k in 1usize..5) {
        let mut rng = common::rng(seed);
        let g = common::symbol(&mut rng, deg);
        let b = common::blaschke(&mut rng, k);
        let dim_g = kernel_of(&g).unwrap().dim();
        let dim_bg = kernel_of(&g.mul(&b.blaschke_rational())).unwrap().dim();
        prop_assert_eq!(dim_bg, dim_g.saturating_sub(k));
    }
}

proptest! {
    #![proptest_config(common::config(40))]

    #[test]
    fn invertible_outer_factor_transforms_kernel(seed in any::<u64>(), deg in 1usize..6) {
        let mut rng = common::rng(seed);
        let g = common::symbol_with_kernel(&mut rng, deg, 1);
        let outer = common::h_plus(&mut rng, 2);
        let lhs = kernel_of(&outer.mul(&g)).unwrap().partial_fractions();
        let rhs = kernel_of(&g).unwrap().times(&outer.inv().unwrap()).partial_fractions();
        prop_assert!(linalg::spans_equal(&lhs, &rhs));
    }

    #[test]
    fn invertible_minus_factor_keeps_kernel(seed in any::<u64>(), deg in 1usize..6) {
        let mut rng = common::rng(seed);
        let g = common::symbol_with_kernel(&mut rng, deg, 1);
        let hm = common::h_minus(&mut rng, 2);
        let lhs = kernel_of(&hm.mul(&g)).unwrap().partial_fractions();
        let rhs = kernel_of(&g).unwrap().partial_fractions();
        prop_assert!(linalg::spans_equal(&lhs, &rhs));
    }

    #[test]
    fn inner_times_smaller_kernel_is_strictly_inside(seed in any::<u64>(), deg in 1usize..7, k in 1usize..4) {
        let mut rng = common::rng(seed);
        let g = common::symbol_with_kernel(&mut rng, deg, 1);
        let theta = common::blaschke(&mut rng, k).blaschke_rational();
        let big = kernel_of(&g).unwrap().partial_fractions();
        prop_assume!(!big.is_empty());
        let image = kernel_of(&theta.mul(&g)).unwrap().times(&theta).partial_fractions();
        for f in &image {
            prop_assert!(linalg::in_span(&big, f));
        }
        prop_assert!(linalg::function_rank(&image) < big.len());
    }

    #[test]
    fn shifted_maximal_model_space_lies_in_kernel(seed in any::<u64>(), deg in 3usize..7, k in 1usize..3) {
        let mut rng = common::rng(seed);
        let g = common::symbol_with_kernel(&mut rng, deg, k + 1);
        let theta = common::blaschke(&mut rng, k);
        let form = theta.blaschke_rational();
        let ker_theta_g = kernel_of(&form.mul(&g)).unwrap();
        prop_assume!(!ker_theta_g.is_empty());
        let phi = maximal_element(&ker_theta_g).unwrap();
        let hm = common::h_minus(&mut rng, 1);
        let z0 = common::root(&mut rng, true);
        let f = hm.mul(&FactoredRational::linear(z0)).mul(&phi);
        let images = basis(&theta).unwrap().times(&f).partial_fractions();
        // coordinates outside H⁺ must cancel
        let mut keys: Vec<_> = images.iter().flat_map(|e| e.retain_poles(|p| p.im >= 0.0).keys()).collect();
        keys.extend(images.iter().flat_map(|e| PartialFractions::from_poly(e.poly().to_vec()).keys()));
        keys.sort();
        keys.dedup();
        let rows: Vec<Vec<C64>> = keys.iter().map(|key| images.iter().map(|e| e.coordinate(key)).collect()).collect();
        let combos = if rows.is_empty() {
            (0..images.len())
                .map(|i| (0..images.len()).map(|j| C64::new((i == j) as u8 as f64, 0.0)).collect())
                .collect()
        } else {
            linalg::nullspace(&rows, images.len(), 1e-10)
        };
        let small = ker_theta_g.partial_fractions();
        let symbol = ToeplitzSymbol::rational(g.clone());
        for c in combos {
            let h = PartialFractions::combination(&c, &images).project_plus().unwrap();
            prop_assert!(member(&h, &symbol).unwrap());
            let mut joint = small.clone();
            joint.push(h);
            prop_assert_eq!(linalg::function_rank(&joint), small.len() + 1);
        }
    }

    #[test]
    fn minimal_kernel_is_minimal(seed in any::<u64>(), poles in 1usize..5) {
        let mut rng = common::rng(seed);
        let phi = common::hardy_plus(&mut rng, poles);
        let symbol = minimal_kernel_symbol(&phi).unwrap();
        let kmin = kernel_of(&symbol).unwrap();
        prop_assert!(kmin.dim() >= 1);
        prop_assert!(linalg::in_span(&kmin.partial_fractions(), &phi.to_partial_fractions()));
        let smaller = ToeplitzSymbol::rational(FactoredRational::cayley().mul(&symbol));
        prop_assert!(!member(&phi.to_partial_fractions(), &smaller).unwrap());
    }

    #[test]
    fn minimal_function_outer_has_one_dimensional_minimal_kernel(seed in any::<u64>(), k in 1usize..5) {
        let mut rng = common::rng(seed);
        let theta = common::blaschke(&mut rng, k);
        let mf = minimal_function(&theta).unwrap();
        prop_assert_eq!(minimal_kernel(&mf.outer).unwrap().dim(), 1);
        let lambda = FactoredRational::lambda_plus().inv().unwrap();
        prop_assert_eq!(minimal_kernel(&lambda).unwrap().dim(), 1);
        prop_assert_eq!(winding_index(&theta.blaschke_rational()).unwrap(), k as i64);
    }
}
