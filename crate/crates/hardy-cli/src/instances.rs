//! Seeded random instances for the suite. Roots stay at least 0.3 away
//! from the real line and apart from each other, so that ranks are
//! decided well above round-off.

use hardy::rational_algebra::Root;
use hardy::{FactoredRational, InnerFunction, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// One generator per criterion, so adding instances to one criterion does
/// not shift another.
pub fn stream(seed: u64, criterion: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(criterion);
    rng
}

pub fn point(rng: &mut ChaCha8Rng, upper: bool) -> C64 {
    let im = rng.gen_range(0.3..3.0);
    C64::new(rng.gen_range(-3.0..3.0), if upper { im } else { -im })
}

/// Pseudo-hyperbolic distance `|z − w|/|z − w̄|` for points of `C⁺`.
fn separation(z: C64, w: C64) -> f64 {
    (z - w).norm() / (z - w.conj()).norm()
}

/// Lower half-plane points are compared through their reflections, since
/// zeros and poles on either side end up as poles of kernel elements.
fn fold(z: C64) -> C64 {
    if z.im < 0.0 {
        z.conj()
    } else {
        z
    }
}

/// Separation kept between all points of one generated instance.
pub const INSTANCE_SEPARATION: f64 = 0.3;

fn roots(rng: &mut ChaCha8Rng, n: usize, p_upper: f64, taken: &mut Vec<C64>) -> Vec<Root> {
    (0..n)
        .map(|_| loop {
            let up = rng.gen_bool(p_upper);
            let z = point(rng, up);
            if taken.iter().all(|w| separation(fold(z), *w) >= INSTANCE_SEPARATION) {
                taken.push(fold(z));
                break (z, 1);
            }
        })
        .collect()
}

fn scale(rng: &mut ChaCha8Rng) -> C64 {
    C64::from_polar(rng.gen_range(0.5..2.0), rng.gen_range(0.0..std::f64::consts::TAU))
}

/// Invertible symbol of degree `deg` (as many zeros as poles).
pub fn symbol(rng: &mut ChaCha8Rng, deg: usize) -> FactoredRational {
    let mut taken = Vec::new();
    let zeros = roots(rng, deg, 0.5, &mut taken);
    let poles = roots(rng, deg, 0.5, &mut taken);
    FactoredRational::new(scale(rng), zeros, poles).expect("finite data")
}

/// Symbol with `min_dim` of its poles forced into `C⁺` and its zeros
/// leaning towards `C⁻`, so that its kernel is usually large.
pub fn symbol_with_kernel(rng: &mut ChaCha8Rng, deg: usize, min_dim: usize) -> FactoredRational {
    assert!(min_dim <= deg);
    let mut taken = Vec::new();
    let zeros = roots(rng, deg, 0.2, &mut taken);
    let mut poles = roots(rng, min_dim, 1.0, &mut taken);
    poles.extend(roots(rng, deg - min_dim, 0.5, &mut taken));
    FactoredRational::new(scale(rng), zeros, poles).expect("finite data")
}

pub fn blaschke(rng: &mut ChaCha8Rng, deg: usize) -> InnerFunction {
    InnerFunction::blaschke(roots(rng, deg, 1.0, &mut Vec::new())).expect("zeros in C⁺")
}

/// Minimum pseudo-hyperbolic distance `|z − w|/|z − w̄|` between zeros drawn
/// together by [`separated_points`]. Rank decisions at the default
/// threshold assume poles this far apart.
pub const MIN_SEPARATION: f64 = 0.6;

/// `n` points in `C⁺` pairwise at least [`MIN_SEPARATION`] apart.
pub fn separated_points(rng: &mut ChaCha8Rng, n: usize) -> Vec<C64> {
    let mut out: Vec<C64> = Vec::with_capacity(n);
    let mut misses = 0;
    while out.len() < n {
        let z = point(rng, true);
        if out.iter().all(|w| separation(z, *w) >= MIN_SEPARATION) {
            out.push(z);
        } else {
            misses += 1;
            if misses > 1000 {
                out.clear();
                misses = 0;
            }
        }
    }
    out
}

/// Simple Blaschke products of the given degrees whose zeros, taken all
/// together, are separated.
pub fn separated_blaschke_family(rng: &mut ChaCha8Rng, degrees: &[usize]) -> Vec<InnerFunction> {
    let mut zeros = separated_points(rng, degrees.iter().sum()).into_iter();
    degrees
        .iter()
        .map(|&d| InnerFunction::blaschke(zeros.by_ref().take(d).map(|z| (z, 1)).collect()).expect("zeros in C⁺"))
        .collect()
}

/// Blaschke product with zeros drawn from a small shared pool, so that
/// several draws overlap.
pub fn pooled_blaschke(rng: &mut ChaCha8Rng, pool: &[C64], max_mult: u32) -> InnerFunction {
    loop {
        let zeros: Vec<Root> = pool.iter().map(|z| (*z, rng.gen_range(0..=max_mult))).collect();
        let theta = InnerFunction::blaschke(zeros).expect("zeros in C⁺");
        if !theta.is_constant() {
            return theta;
        }
    }
}

/// Blaschke product whose zeros stay separated from the zeros and poles
/// of `g`.
pub fn blaschke_apart(rng: &mut ChaCha8Rng, deg: usize, g: &FactoredRational) -> InnerFunction {
    let mut taken: Vec<C64> = g.zeros().iter().chain(g.poles()).map(|(z, _)| fold(*z)).collect();
    InnerFunction::blaschke(roots(rng, deg, 1.0, &mut taken)).expect("zeros in C⁺")
}

/// Invertible in `H∞⁻`.
pub fn h_minus(rng: &mut ChaCha8Rng, deg: usize) -> FactoredRational {
    let mut taken = Vec::new();
    let zeros = roots(rng, deg, 1.0, &mut taken);
    let poles = roots(rng, deg, 1.0, &mut taken);
    FactoredRational::new(scale(rng), zeros, poles).expect("finite data")
}

/// Strictly proper with no real poles.
pub fn proper(rng: &mut ChaCha8Rng, poles: usize) -> FactoredRational {
    let nz = rng.gen_range(0..poles);
    let mut taken = Vec::new();
    let zs = roots(rng, nz, 0.5, &mut taken);
    let ps = roots(rng, poles, 0.5, &mut taken);
    FactoredRational::new(scale(rng), zs, ps).expect("finite data")
}

pub fn complex(rng: &mut ChaCha8Rng) -> C64 {
    C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}
