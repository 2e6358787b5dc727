//! Rank, null-space and least-squares helpers on complex coordinate vectors.
//!
//! Ranks are decided on the normalized Gram matrix `G_ij = ⟨v_i, v_j⟩ /
//! (‖v_i‖‖v_j‖)`: a singular value counts when it exceeds the threshold
//! (default [`RANK_TOL`]). Families of strictly proper rationals without
//! real poles use the `L²(ℝ)` inner product; partial-fraction
//! coefficients are a poor metric for bases such as `rʲ/(ξ+i)`, which are
//! orthonormal up to scale but have coefficients growing like `2ʲ`.

use nalgebra::DMatrix;

use crate::rational_algebra::PartialFractions;
use crate::spectral_backend::BoundaryGrid;
use crate::C64;

/// Default threshold on singular values of normalized Gram matrices.
pub const RANK_TOL: f64 = 1e-9;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

fn norm(v: &[C64]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

/// Normalized Gram matrix of the nonzero vectors; zero vectors are dropped.
pub fn normalized_gram(vectors: &[Vec<C64>]) -> DMatrix<C64> {
    let unit: Vec<Vec<C64>> = vectors
        .iter()
        .filter_map(|v| {
            let n = norm(v);
            (n > 0.0).then(|| v.iter().map(|x| x / n).collect())
        })
        .collect();
    let k = unit.len();
    DMatrix::from_fn(k, k, |i, j| {
        unit[i]
            .iter()
            .zip(&unit[j])
            .map(|(a, b)| a.conj() * b)
            .sum::<C64>()
    })
}

/// Singular values of the normalized Gram matrix, descending.
pub fn gram_singular_values(vectors: &[Vec<C64>]) -> Vec<f64> {
    let g = normalized_gram(vectors);
    if g.nrows() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = g.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

pub fn rank_with_tol(vectors: &[Vec<C64>], tol: f64) -> usize {
    gram_singular_values(vectors).iter().filter(|s| **s > tol).count()
}

pub fn rank(vectors: &[Vec<C64>]) -> usize {
    rank_with_tol(vectors, RANK_TOL)
}

/// Ratio of extreme singular values of the normalized Gram matrix
/// (infinite when singular).
pub fn gram_condition_number(vectors: &[Vec<C64>]) -> f64 {
    let s = gram_singular_values(vectors);
    match (s.first(), s.last()) {
        (Some(hi), Some(lo)) if *lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// Orthonormal basis of `{x : A x = 0}` where `A` has the given rows and
/// `ncols` columns; singular values below `rel_tol · σ_max` count as zero.
pub fn nullspace(rows: &[Vec<C64>], ncols: usize, rel_tol: f64) -> Vec<Vec<C64>> {
    if ncols == 0 {
        return Vec::new();
    }
    let n = rows.len().max(ncols);
    // pad to a square matrix so the full right-singular basis is returned
    let a = DMatrix::from_fn(n, ncols, |i, j| rows.get(i).map(|r| r[j]).unwrap_or_else(zero));
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let cut = if smax > 0.0 { rel_tol * smax } else { 0.0 };
    (0..ncols)
        .filter(|&k| svd.singular_values[k] <= cut)
        .map(|k| (0..ncols).map(|j| v_t[(k, j)].conj()).collect())
        .collect()
}

/// Least-squares coefficients `c` minimizing `‖Σ c_j columns_j − target‖`,
/// together with the relative residual.
pub fn least_squares(columns: &[Vec<C64>], target: &[C64]) -> (Vec<C64>, f64) {
    let m = target.len();
    let k = columns.len();
    if k == 0 {
        return (Vec::new(), if norm(target) > 0.0 { 1.0 } else { 0.0 });
    }
    let a = DMatrix::from_fn(m.max(k), k, |i, j| columns[j].get(i).copied().unwrap_or_else(zero));
    let b = DMatrix::from_fn(m.max(k), 1, |i, _| target.get(i).copied().unwrap_or_else(zero));
    let svd = a.clone().svd(true, true);
    let x = svd.solve(&b, 1e-14).expect("SVD with U and V^T");
    let resid = &a * &x - &b;
    let scale = norm(target).max(1e-300);
    let r = resid.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt() / scale;
    (x.iter().copied().collect(), r)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// `∫ (ξ − p)^{−m} (ξ − s)^{−n} dξ` over `ℝ` for `p`, `s` off the line.
fn pair_integral(p: C64, m: usize, s: C64, n: usize) -> C64 {
    let two_pi_i = C64::new(0.0, 2.0 * std::f64::consts::PI);
    let order = (m + n - 1) as i32;
    if p.im < 0.0 && s.im > 0.0 {
        // residue at s
        let sign = if (n - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        two_pi_i * sign * binomial(m + n - 2, n - 1) * (s - p).powi(-order)
    } else if p.im > 0.0 && s.im < 0.0 {
        let sign = if (m - 1).is_multiple_of(2) { 1.0 } else { -1.0 };
        two_pi_i * sign * binomial(m + n - 2, m - 1) * (p - s).powi(-order)
    } else {
        zero()
    }
}

fn square_integrable(f: &PartialFractions) -> bool {
    f.poly().iter().all(|c| *c == zero()) && !f.has_real_poles()
}

/// `⟨f, g⟩ = ∫_ℝ f ḡ`, or `None` unless both are strictly proper without
/// real poles.
pub fn l2_inner(f: &PartialFractions, g: &PartialFractions) -> Option<C64> {
    if !square_integrable(f) || !square_integrable(g) {
        return None;
    }
    let mut acc = zero();
    for a in f.parts() {
        for b in g.parts() {
            for (i, ca) in a.coeffs.iter().enumerate() {
                for (j, cb) in b.coeffs.iter().enumerate() {
                    acc += ca * cb.conj() * pair_integral(a.pole, i + 1, b.pole.conj(), j + 1);
                }
            }
        }
    }
    Some(acc)
}

/// Quadrature size resolving every pole to round-off: the trapezoid rule on
/// the Cayley circle converges like `ρⁿ`, with `ρ < 1` the modulus of the
/// transformed pole or its reciprocal.
fn quadrature_size(fs: &[PartialFractions]) -> usize {
    let worst = fs
        .iter()
        .flat_map(|f| f.parts())
        .map(|part| {
            let w = ((part.pole - C64::new(0.0, 1.0)) / (part.pole + C64::new(0.0, 1.0))).norm();
            w.min(1.0 / w)
        })
        .fold(0.0, f64::max);
    let needed = if worst > 0.0 { 42.0 / -worst.ln() } else { 0.0 };
    (needed.max(256.0) as usize).next_power_of_two().min(1 << 16)
}

/// Singular values of the normalized `L²` Gram matrix, when all functions
/// are square integrable. They are computed as squares of the singular
/// values of the sampled functions, so round-off is not squared with them.
fn l2_gram_singular_values(fs: &[PartialFractions]) -> Option<Vec<f64>> {
    if !fs.iter().all(square_integrable) {
        return None;
    }
    let live: Vec<&PartialFractions> = fs.iter().filter(|f| !f.is_zero()).collect();
    if live.is_empty() {
        return Some(Vec::new());
    }
    let grid = BoundaryGrid::new(quadrature_size(fs)).ok()?;
    let (nodes, weights) = (grid.nodes(), grid.weights());
    let mut m = DMatrix::from_element(nodes.len(), live.len(), zero());
    for (j, f) in live.iter().enumerate() {
        for (i, (x, w)) in nodes.iter().zip(weights).enumerate() {
            m[(i, j)] = f.evaluate(C64::new(*x, 0.0)).ok()? * w.sqrt();
        }
        let n = m.column(j).norm();
        if n > 0.0 {
            m.column_mut(j).unscale_mut(n);
        }
    }
    let mut s: Vec<f64> = m.singular_values().iter().map(|v| v * v).collect();
    s.sort_by(|a, b| b.total_cmp(a));
    Some(s)
}

fn function_gram_singular_values(fs: &[PartialFractions]) -> Vec<f64> {
    l2_gram_singular_values(fs).unwrap_or_else(|| gram_singular_values(&PartialFractions::coordinate_matrix(fs)))
}

/// Rank of a family of rational functions: through the `L²` Gram matrix
/// when it exists, otherwise in partial-fraction coordinates.
pub fn function_rank(fs: &[PartialFractions]) -> usize {
    function_gram_singular_values(fs).iter().filter(|s| **s > RANK_TOL).count()
}

/// Condition number of the normalized Gram matrix of a family of rational
/// functions, in the same metric as [`function_rank`].
pub fn function_gram_condition(fs: &[PartialFractions]) -> f64 {
    let s = function_gram_singular_values(fs);
    match (s.first(), s.last()) {
        (Some(hi), Some(lo)) if *lo > 0.0 => hi / lo,
        (Some(_), Some(_)) => f64::INFINITY,
        _ => 1.0,
    }
}

/// `span(a) = span(b)`: both ranks equal the rank of the union.
pub fn spans_equal(a: &[PartialFractions], b: &[PartialFractions]) -> bool {
    let union: Vec<PartialFractions> = a.iter().chain(b).cloned().collect();
    let ru = function_rank(&union);
    function_rank(a) == ru && function_rank(b) == ru
}

/// `f ∈ span(basis)`.
pub fn in_span(basis: &[PartialFractions], f: &PartialFractions) -> bool {
    let mut all: Vec<PartialFractions> = basis.to_vec();
    all.push(f.clone());
    function_rank(&all) == function_rank(basis)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn rank_detects_dependence() {
        let a = vec![c(1.0, 0.0), c(0.0, 1.0), c(2.0, 0.0)];
        let b = vec![c(0.0, 1.0), c(-1.0, 0.0), c(0.0, 2.0)]; // i·a
        let d = vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)];
        assert_eq!(rank(&[a.clone(), b.clone()]), 1);
        assert_eq!(rank(&[a, b, d]), 2);
    }

    #[test]
    fn nullspace_of_wide_system() {
        let rows = vec![vec![c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)]];
        let ns = nullspace(&rows, 3, 1e-12);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert!((v[0] + v[1]).norm() < 1e-12);
        }
    }

    #[test]
    fn least_squares_exact_solution() {
        let cols = vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(1.0, 0.0), c(1.0, 0.0)]];
        let target = vec![c(3.0, 1.0), c(2.0, 0.0)];
        let (x, r) = least_squares(&cols, &target);
        assert!((x[0] - c(1.0, 1.0)).norm() < 1e-12);
        assert!((x[1] - c(2.0, 0.0)).norm() < 1e-12);
        assert!(r < 1e-12);
    }

    #[test]
    fn l2_inner_products() {
        use crate::FactoredRational;
        let pf = |f: FactoredRational| f.to_partial_fractions();
        let k = pf(FactoredRational::linear(c(0.0, -1.0)).inv().unwrap());
        // ∫ dξ/(ξ² + 1) = π
        assert!((l2_inner(&k, &k).unwrap() - c(std::f64::consts::PI, 0.0)).norm() < 1e-14);
        // ⟨1/(ξ+i), 1/(ξ+2i)⟩ = 2πi/(2i + i) = 2π/3
        let k2 = pf(FactoredRational::linear(c(0.0, -2.0)).inv().unwrap());
        assert!((l2_inner(&k, &k2).unwrap() - c(2.0 * std::f64::consts::PI / 3.0, 0.0)).norm() < 1e-14);
        assert!(l2_inner(&PartialFractions::from_poly(vec![c(1.0, 0.0)]), &k).is_none());
        // rʲ/(ξ+i) are orthogonal with equal norms
        let family: Vec<PartialFractions> = (0..12)
            .map(|j| pf(FactoredRational::cayley().powi(j).unwrap().mul(&FactoredRational::linear(c(0.0, -1.0)).inv().unwrap())))
            .collect();
        assert_eq!(function_rank(&family), 12);
        let cond = function_gram_condition(&family);
        assert!((cond - 1.0).abs() < 1e-9, "{cond}");
        // quadrature Gram against the residue inner products
        let pair = [k.clone(), k2.clone()];
        let exact = l2_inner(&k, &k2).unwrap().norm() / (l2_inner(&k, &k).unwrap().re * l2_inner(&k2, &k2).unwrap().re).sqrt();
        let s = function_gram_singular_values(&pair);
        assert!((s[0] - (1.0 + exact)).abs() < 1e-12 && (s[1] - (1.0 - exact)).abs() < 1e-12);
        let mut dependent = family.clone();
        dependent.push(family[3].add(&family[7].scaled(c(0.0, 2.0))));
        assert_eq!(function_rank(&dependent), 12);
    }

    #[test]
    fn condition_number_of_orthonormal_set() {
        let e1 = vec![c(1.0, 0.0), c(0.0, 0.0)];
        let e2 = vec![c(0.0, 0.0), c(0.0, 3.0)];
        assert!((gram_condition_number(&[e1, e2]) - 1.0).abs() < 1e-12);
    }
}
