//! Independent checks used by the suite. None of these call the kernel,
//! Wiener–Hopf or rank routines they are compared against.

use hardy::rational_algebra::Root;
use hardy::{FactoredRational, InnerFunction, C64};
use nalgebra::DMatrix;

fn poly_times_linear(p: &[C64], c: C64) -> Vec<C64> {
    let mut out = vec![C64::new(0.0, 0.0); p.len() + 1];
    for (k, a) in p.iter().enumerate() {
        out[k + 1] += a;
        out[k] -= a * c;
    }
    out
}

fn poly_from_roots(roots: &[Root]) -> Vec<C64> {
    let mut p = vec![C64::new(1.0, 0.0)];
    for &(z, m) in roots {
        for _ in 0..m {
            p = poly_times_linear(&p, z);
        }
    }
    p
}

/// Coefficients of `p` in powers of `ξ − c`, lowest first.
fn taylor_at(p: &[C64], c: C64, order: usize) -> Vec<C64> {
    let mut q = p.to_vec();
    let mut out = Vec::with_capacity(order);
    for _ in 0..order {
        if q.is_empty() {
            out.push(C64::new(0.0, 0.0));
            continue;
        }
        // synthetic division by (ξ − c)
        let n = q.len();
        let mut quot = vec![C64::new(0.0, 0.0); n - 1];
        let mut acc = C64::new(0.0, 0.0);
        for k in (0..n).rev() {
            acc = acc * c + q[k];
            if k > 0 {
                quot[k - 1] = acc;
            }
        }
        out.push(acc);
        q = quot;
    }
    out
}

/// Number of singular values above `rel_tol · σ_max` after normalizing the
/// rows of `m` and then its columns.
pub fn numeric_rank(rows: &[Vec<C64>], ncols: usize, rel_tol: f64) -> usize {
    if rows.is_empty() || ncols == 0 {
        return 0;
    }
    let mut m = DMatrix::<C64>::zeros(rows.len(), ncols);
    for (i, row) in rows.iter().enumerate() {
        let norm = row.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            continue;
        }
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = v / norm;
        }
    }
    for mut col in m.column_iter_mut() {
        let norm = col.iter().map(|v| v.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            col.unscale_mut(norm);
        }
    }
    let s = m.singular_values();
    let top = s.iter().cloned().fold(0.0, f64::max);
    s.iter().filter(|v| **v > rel_tol * top).count()
}

/// Dimension of the span of coordinate vectors. The Gram matrix would
/// square the condition number and push round-off above `rel_tol`, so the
/// vectors themselves go through the SVD.
pub fn span_rank(vectors: &[Vec<C64>], rel_tol: f64) -> usize {
    let len = vectors.iter().map(|v| v.len()).max().unwrap_or(0);
    numeric_rank(vectors, len, rel_tol)
}

/// `dim ker T_g` by brute force: the candidate space is
/// `{p/((ξ+i)^D Π_{zeros of g in C⁻}(ξ − z)) : deg p < D + #zeros in C⁻}`
/// with `D` the number of poles of `g` in `C⁺`, and `gφ ∈ H⁻` becomes the
/// vanishing of `(Π_{zeros in C⁺}(ξ − z))·p` to full order at every pole of
/// `gφ` in `C⁻`. The dimension is the nullity of that linear system.
pub fn brute_force_kernel_dim(g: &FactoredRational, rel_tol: f64) -> usize {
    let count = |roots: &[Root], upper: bool| -> u32 {
        roots.iter().filter(|(z, _)| (z.im > 0.0) == upper).map(|(_, m)| *m).sum()
    };
    let d = count(g.poles(), true) as usize;
    let lower_zeros = count(g.zeros(), false) as usize;
    let n = d + lower_zeros;
    if n == 0 {
        return 0;
    }
    let upper_zero_roots: Vec<Root> = g.zeros().iter().filter(|(z, _)| z.im > 0.0).copied().collect();
    let a = poly_from_roots(&upper_zero_roots);

    // poles of gφ in C⁻ with their orders
    let minus_i = C64::new(0.0, -1.0);
    let mut constraints: Vec<(C64, usize)> = g
        .poles()
        .iter()
        .filter(|(z, _)| z.im < 0.0)
        .map(|(z, m)| (*z, *m as usize))
        .collect();
    if d > 0 {
        match constraints.iter_mut().find(|(z, _)| *z == minus_i) {
            Some(slot) => slot.1 += d,
            None => constraints.push((minus_i, d)),
        }
    }
    // Newton-type basis for p: products over the constraint nodes first
    let mut nodes: Vec<C64> = constraints.iter().flat_map(|(z, m)| std::iter::repeat_n(*z, *m)).collect();
    nodes.resize(n.max(nodes.len()), C64::new(0.0, 0.0));
    let mut basis = Vec::with_capacity(n);
    let mut p = vec![C64::new(1.0, 0.0)];
    for node in nodes.iter().take(n) {
        basis.push(p.clone());
        p = poly_times_linear(&p, *node);
    }

    let mut rows: Vec<Vec<C64>> = Vec::new();
    for &(c, order) in &constraints {
        let per_column: Vec<Vec<C64>> = basis
            .iter()
            .map(|pj| {
                let mut prod = vec![C64::new(0.0, 0.0); a.len() + pj.len() - 1];
                for (i, x) in a.iter().enumerate() {
                    for (j, y) in pj.iter().enumerate() {
                        prod[i + j] += x * y;
                    }
                }
                taylor_at(&prod, c, order)
            })
            .collect();
        for k in 0..order {
            rows.push(per_column.iter().map(|col| col[k]).collect());
        }
    }
    n - numeric_rank(&rows, n, rel_tol)
}

/// Least common multiple of Blaschke products by maximal multiplicity.
pub fn lcm_by_multiplicity(thetas: &[InnerFunction]) -> Vec<Root> {
    let mut out: Vec<Root> = Vec::new();
    for t in thetas {
        for &(z, m) in t.zeros() {
            match out.iter_mut().find(|(w, _)| *w == z) {
                Some(slot) => slot.1 = slot.1.max(m),
                None => out.push((z, m)),
            }
        }
    }
    out.sort_by(|a, b| a.0.re.total_cmp(&b.0.re).then(a.0.im.total_cmp(&b.0.im)));
    out
}

/// `sup_{y>0} (1 − e^{−2λy})/y = 2λ`, attained as `y → 0`.
pub fn exponential_k2_sup(lambda: f64) -> f64 {
    2.0 * lambda
}

/// `e^{iλz}`.
pub fn exponential(lambda: f64, z: C64) -> C64 {
    (C64::new(0.0, lambda) * z).exp()
}
