#![allow(dead_code)]

use hardy::rational_algebra::Root;
use hardy::{FactoredRational, InnerFunction, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Root with `|Im| ∈ [0.3, 3]` on the requested side.
pub fn root(rng: &mut ChaCha8Rng, upper: bool) -> C64 {
    let im = rng.gen_range(0.3..3.0);
    C64::new(rng.gen_range(-3.0..3.0), if upper { im } else { -im })
}

pub fn roots(rng: &mut ChaCha8Rng, n: usize, side: impl Fn(&mut ChaCha8Rng) -> bool) -> Vec<Root> {
    (0..n)
        .map(|_| {
            let up = side(rng);
            (root(rng, up), 1)
        })
        .collect()
}

fn scale(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Bounded invertible symbol with `deg` zeros and `deg` poles on random sides.
pub fn symbol(rng: &mut ChaCha8Rng, deg: usize) -> FactoredRational {
    let zeros = roots(rng, deg, |r| r.gen_bool(0.5));
    let poles = roots(rng, deg, |r| r.gen_bool(0.5));
    FactoredRational::new(scale(rng), zeros, poles).unwrap()
}

/// Symbol whose kernel has dimension at least `min_dim`.
pub fn symbol_with_kernel(rng: &mut ChaCha8Rng, deg: usize, min_dim: usize) -> FactoredRational {
    let zeros = roots(rng, deg, |r| r.gen_bool(0.2));
    let mut poles = roots(rng, min_dim, |_| true);
    poles.extend(roots(rng, deg - min_dim, |r| r.gen_bool(0.5)));
    FactoredRational::new(scale(rng), zeros, poles).unwrap()
}

pub fn blaschke(rng: &mut ChaCha8Rng, deg: usize) -> InnerFunction {
    InnerFunction::blaschke(roots(rng, deg, |_| true)).unwrap()
}

/// Invertible in `H∞⁻`: zeros and poles in `C⁺`.
pub fn h_minus(rng: &mut ChaCha8Rng, deg: usize) -> FactoredRational {
    let zeros = roots(rng, deg, |_| true);
    let poles = roots(rng, deg, |_| true);
    FactoredRational::new(scale(rng), zeros, poles).unwrap()
}

/// Invertible in `H∞⁺`: zeros and poles in `C⁻`.
pub fn h_plus(rng: &mut ChaCha8Rng, deg: usize) -> FactoredRational {
    let zeros = roots(rng, deg, |_| false);
    let poles = roots(rng, deg, |_| false);
    FactoredRational::new(scale(rng), zeros, poles).unwrap()
}

/// Strictly proper rational with no real poles.
pub fn proper(rng: &mut ChaCha8Rng, poles: usize) -> FactoredRational {
    let zeros = rng.gen_range(0..poles);
    let zs = roots(rng, zeros, |r| r.gen_bool(0.5));
    let ps = roots(rng, poles, |r| r.gen_bool(0.5));
    FactoredRational::new(scale(rng), zs, ps).unwrap()
}

/// Strictly proper rational in `H⁺`.
pub fn hardy_plus(rng: &mut ChaCha8Rng, poles: usize) -> FactoredRational {
    let zeros = rng.gen_range(0..poles);
    let zs = roots(rng, zeros, |r| r.gen_bool(0.5));
    let ps = roots(rng, poles, |_| false);
    FactoredRational::new(scale(rng), zs, ps).unwrap()
}

/// Fixed case count without on-disk failure persistence.
pub fn config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        failure_persistence: None,
        ..Default::default()
    }
}
