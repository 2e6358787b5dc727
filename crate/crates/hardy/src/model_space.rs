//! Model spaces `K_θ = H⁺ ∩ θH⁻`: dimensions, bases, reproducing kernels,
//! the `f_k` family, the projection `P_θ = θP⁻θ̄P⁺` and the orthogonal
//! decomposition `K_{θ₁θ₂} = K_{θ₁} ⊕ θ₁K_{θ₂}`.
//!
//! Exact routines require a finite Blaschke `θ`; the spectral helpers accept
//! any multiplier sampled on a grid. The exponent `p` is metadata only.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp_rational::ExpRational;
use crate::inner_functions::{FrostmanShift, InnerFunction};
use crate::linalg;
use crate::rational_algebra::{wiener_hopf, FactoredRational, PartialFractions};
use crate::series::Series;
use crate::spectral_backend::{apply_model_projection, BoundaryGrid, GridFunction};
use crate::{C64, I};

/// Relative threshold for the exact membership tests.
pub const MEMBERSHIP_TOL: f64 = 1e-9;

/// Series coefficients below this are dropped when a Frostman factor is
/// expanded in powers of `θ`.
const SERIES_TOL: f64 = 1e-17;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModelSpaceHandle {
    pub theta: InnerFunction,
    /// Nominal exponent; every computation here is `p`-independent or runs
    /// at `p = 2`.
    pub p: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Dimension {
    Finite(usize),
    Infinite,
}

/// Linearly independent rational elements, optionally all multiplied by a
/// common cofactor.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct KernelBasis {
    pub elements: Vec<FactoredRational>,
    pub cofactor: Option<FactoredRational>,
}

impl KernelBasis {
    pub fn new(elements: Vec<FactoredRational>) -> Self {
        KernelBasis {
            elements,
            cofactor: None,
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Elements with the cofactor applied.
    pub fn resolved(&self) -> Vec<FactoredRational> {
        match &self.cofactor {
            Some(c) => self.elements.iter().map(|e| e.mul(c)).collect(),
            None => self.elements.clone(),
        }
    }

    pub fn partial_fractions(&self) -> Vec<PartialFractions> {
        self.resolved().iter().map(|e| e.to_partial_fractions()).collect()
    }

    /// Every element multiplied by `f`.
    pub fn times(&self, f: &FactoredRational) -> KernelBasis {
        KernelBasis::new(self.resolved().iter().map(|e| e.mul(f)).collect())
    }
}

impl ModelSpaceHandle {
    pub fn new(theta: InnerFunction, p: f64) -> Result<Self> {
        if !(p > 1.0 && p.is_finite()) {
            return Err(Error::BadParameter(format!("exponent {p} outside (1, ∞)")));
        }
        Ok(ModelSpaceHandle { theta, p })
    }

    /// Constant `θ` gives `K_θ = {0}`.
    pub fn is_trivial(&self) -> bool {
        self.theta.is_constant()
    }

    pub fn dimension(&self) -> Dimension {
        dimension(&self.theta)
    }

    pub fn basis(&self) -> Result<KernelBasis> {
        basis(&self.theta)
    }
}

pub fn dimension(theta: &InnerFunction) -> Dimension {
    if theta.has_singular_part() {
        Dimension::Infinite
    } else {
        Dimension::Finite(theta.blaschke_degree())
    }
}

fn finite_form(theta: &InnerFunction) -> Result<FactoredRational> {
    theta.rational_form().ok_or(Error::InfiniteDimensional)
}

/// `h₊·λ₊⁻¹rʲ`, `j < n`, from the factorization `θ = h₋ rⁿ h₊`.
pub fn basis(theta: &InnerFunction) -> Result<KernelBasis> {
    let form = finite_form(theta)?;
    if theta.is_constant() {
        return Ok(KernelBasis::default());
    }
    let wh = wiener_hopf(&form)?;
    let n = wh.index;
    let base = wh.h_plus.mul(&FactoredRational::lambda_plus().inv()?);
    let r = FactoredRational::cayley();
    let elements = (0..n).map(|j| base.mul(&r.powi(j as i32).expect("r^j"))).collect();
    Ok(KernelBasis::new(elements))
}

/// `k_w^θ(ξ) = (i/2π)(1 − conj(θ(w))θ(ξ))/(ξ − w̄)` and its value at `w`.
#[derive(Debug, Clone)]
pub struct ReproducingKernel {
    pub theta: InnerFunction,
    pub w: C64,
    pub theta_at_w: C64,
    /// `k_w^θ(w) = (1 − |θ(w)|²)/(4π Im w)`.
    pub self_value: f64,
}

impl ReproducingKernel {
    pub fn eval(&self, z: C64) -> Result<C64> {
        let denom = z - self.w.conj();
        if denom == C64::new(0.0, 0.0) {
            return Err(Error::PoleEvaluation(format!("{z}")));
        }
        let theta = self.theta.eval_continued(z)?;
        Ok(I / (2.0 * std::f64::consts::PI) * (1.0 - self.theta_at_w.conj() * theta) / denom)
    }

    pub fn to_exp_rational(&self) -> ExpRational {
        let c = I / (2.0 * std::f64::consts::PI);
        let cauchy = FactoredRational::linear(self.w.conj()).inv().expect("nonzero").scaled(c);
        ExpRational::from_rational(&cauchy).sub(
            &self
                .theta
                .to_exp_rational()
                .mul_rational(&cauchy)
                .scaled(self.theta_at_w.conj()),
        )
    }
}

pub fn reproducing_kernel(theta: &InnerFunction, w: C64) -> Result<ReproducingKernel> {
    if !(w.im > 0.0) {
        return Err(Error::LowerHalfPlane(format!("{w}")));
    }
    let theta_at_w = theta.eval(w)?;
    Ok(ReproducingKernel {
        theta: theta.clone(),
        w,
        theta_at_w,
        self_value: (1.0 - theta_at_w.norm_sqr()) / (4.0 * std::f64::consts::PI * w.im),
    })
}

/// Coefficients `a_j`, `j ≤ k`, of the Taylor polynomial at `−i` of
/// `λ₋ᵏθ̄`, in powers of `λ₊ = ξ + i`.
pub fn f_k_coefficients(theta: &InnerFunction, k: usize) -> Result<Vec<C64>> {
    let conj_series = theta.conj_taylor(-I, k + 1)?;
    let lambda_minus = Series::binomial(-2.0 * I, k as i64, k + 1);
    Ok(conj_series.mul(&lambda_minus).coeffs)
}

/// `f_k^θ = rᵏ/λ₊ − θ·(a₀ + a₁λ₊ + ⋯ + a_kλ₊ᵏ)/λ₊^{k+1}`; the polynomial
/// matches `λ₋ᵏθ̄` to order `k` at `−i`, which makes `θ̄f_k^θ` regular there.
pub fn f_k_family(theta: &InnerFunction, k: usize) -> Result<ExpRational> {
    let a = f_k_coefficients(theta, k)?;
    let lead = FactoredRational::new(C64::new(1.0, 0.0), vec![(I, k as u32)], vec![(-I, k as u32 + 1)])?;
    let theta_er = theta.to_exp_rational();
    let mut out = ExpRational::from_rational(&lead);
    for (j, aj) in a.iter().enumerate() {
        let term = FactoredRational::new(*aj, vec![], vec![(-I, (k + 1 - j) as u32)])?;
        out = out.sub(&theta_er.mul_rational(&term));
    }
    Ok(out)
}

fn relative_size(residual: &PartialFractions, reference: &PartialFractions) -> f64 {
    residual.max_abs() / reference.max_abs().max(1.0)
}

/// Exact test of `f ∈ K_θ`: `f ∈ H⁺` and `P⁺(θ̄f) = 0` up to round-off.
pub fn membership_residual(theta: &InnerFunction, f: &PartialFractions) -> Result<f64> {
    let form = finite_form(theta)?;
    let outside_plus = f.retain_poles(|p| p.im >= 0.0).add(&PartialFractions::from_poly(f.poly().to_vec()));
    let conj_part = f.mul_factored(&form.conj_boundary());
    let plus = conj_part
        .retain_poles(|p| p.im < 0.0)
        .add(&PartialFractions::from_poly(conj_part.poly().to_vec()));
    Ok(relative_size(&outside_plus, f).max(relative_size(&plus, f)))
}

pub fn is_member(theta: &InnerFunction, f: &PartialFractions) -> Result<bool> {
    Ok(membership_residual(theta, f)? <= MEMBERSHIP_TOL)
}

/// `P_θ f = θP⁻(θ̄P⁺f)` in exact arithmetic for finite Blaschke `θ`.
pub fn project_model_exact(theta: &InnerFunction, f: &PartialFractions) -> Result<PartialFractions> {
    let form = finite_form(theta)?;
    let plus = f.project_plus()?;
    let inner = plus.mul_factored(&form.conj_boundary()).project_minus()?;
    // the exact result is analytic in C⁺; drop round-off left at the zeros
    inner.mul_factored(&form).project_plus()
}

pub fn project_model_exact_rational(theta: &InnerFunction, f: &FactoredRational) -> Result<PartialFractions> {
    project_model_exact(theta, &f.to_partial_fractions())
}

/// `f = first + θ₁·second` with `first ∈ K_{θ₁}` and `second ∈ K_{θ₂}`.
#[derive(Debug, Clone)]
pub struct SumDecomposition {
    pub first: PartialFractions,
    pub second: PartialFractions,
    /// Relative coefficient distance between `first + θ₁·second` and `f`.
    pub reconstruction_residual: f64,
}

pub fn decompose_sum(
    theta1: &InnerFunction,
    theta2: &InnerFunction,
    f: &PartialFractions,
) -> Result<SumDecomposition> {
    let product = theta1.mul(theta2);
    let residual = membership_residual(&product, f)?;
    if residual > MEMBERSHIP_TOL {
        return Err(Error::NotAMember(residual));
    }
    let t1 = finite_form(theta1)?;
    let first = project_model_exact(theta1, f)?;
    let second = project_model_exact(theta2, &f.mul_factored(&t1.conj_boundary()))?;
    let rebuilt = first.add(&second.mul_factored(&t1));
    Ok(SumDecomposition {
        reconstruction_residual: relative_size(&rebuilt.sub(f), f),
        first,
        second,
    })
}

/// Condition number of the normalized Gram matrix of
/// `basis(K_{θ₁}) ∪ θ₁·basis(K_{θ₂})`; finite exactly when the sum is direct.
pub fn decomposition_gram_condition(theta1: &InnerFunction, theta2: &InnerFunction) -> Result<f64> {
    let t1 = finite_form(theta1)?;
    let mut fs = basis(theta1)?.partial_fractions();
    fs.extend(basis(theta2)?.times(&t1).partial_fractions());
    Ok(linalg::function_gram_condition(&fs))
}

/// `P̃ = h₊ P_{θ₂} h₊⁻¹ P⁺` on a grid, with optional `θ₁` for the range test.
#[derive(Debug, Clone)]
pub struct EquivalentProjection {
    pub theta2: GridFunction,
    pub h_plus: GridFunction,
    pub h_plus_inv: GridFunction,
    pub theta1: Option<GridFunction>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivalentProjectionDiagnostics {
    /// `sup |P̃(P̃f) − P̃f|`.
    pub idempotency_residual: f64,
    /// `‖P⁺(θ̄₁P̃f)‖₂`, when `θ₁` is known.
    pub range_residual: Option<f64>,
}

impl EquivalentProjection {
    /// `θ₁ = θ₂ = θ`, `h₊ = 1`.
    pub fn trivial(grid: &Arc<BoundaryGrid>, theta: &InnerFunction) -> Result<Self> {
        let t = GridFunction::from_inner(grid, theta)?;
        let one = GridFunction::from_fn(grid, |_| C64::new(1.0, 0.0));
        Ok(EquivalentProjection {
            theta2: t.clone(),
            h_plus: one.clone(),
            h_plus_inv: one,
            theta1: Some(t),
        })
    }

    /// `K_θ = h₊K_B` for the Frostman shift `B = (θ−a)/(1−āθ)`.
    pub fn frostman(grid: &Arc<BoundaryGrid>, shift: &FrostmanShift) -> Result<Self> {
        let theta = &shift.theta;
        Ok(EquivalentProjection {
            theta2: GridFunction::inner_power_series(grid, theta, &shift.b_power_coefficients(SERIES_TOL))?,
            h_plus: GridFunction::inner_power_series(grid, theta, &shift.h_plus_power_coefficients())?,
            h_plus_inv: GridFunction::inner_power_series(grid, theta, &shift.h_plus_inv_power_coefficients(SERIES_TOL))?,
            theta1: Some(GridFunction::from_inner(grid, theta)?),
        })
    }

    pub fn apply(&self, f: &GridFunction) -> GridFunction {
        let inner = self.h_plus_inv.mul(&f.project_plus());
        self.h_plus.mul(&apply_model_projection(&self.theta2, &inner))
    }

    pub fn diagnostics(&self, f: &GridFunction) -> EquivalentProjectionDiagnostics {
        let once = self.apply(f);
        let twice = self.apply(&once);
        EquivalentProjectionDiagnostics {
            idempotency_residual: twice.sup_distance(&once),
            range_residual: self
                .theta1
                .as_ref()
                .map(|t| t.conj().mul(&once).project_plus().l2_norm()),
        }
    }
}

fn spans_within(sub: &[PartialFractions], sup: &[PartialFractions]) -> bool {
    let mut all = sup.to_vec();
    all.extend_from_slice(sub);
    linalg::function_rank(&all) == linalg::function_rank(sup)
}

/// Outcome of the divisibility/inclusion equivalences for three finite
/// Blaschke products.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PrecReport {
    pub divides: bool,
    pub included: bool,
    pub strictly_divides: bool,
    pub strictly_included: bool,
    pub product_divides: bool,
    pub product_included: bool,
    /// `θ₁ ⪯ θ₃`.
    pub shift_premise: bool,
    /// `θ₁K_{θ₂} ⊂ K_{θ₃θ₂}`.
    pub shift_included: bool,
    /// Inclusion above is strict.
    pub shift_strict: bool,
    pub consistent: bool,
}

/// Checks, for finite Blaschke inputs by exact bases and rank tests:
/// `θ₂ ⪯ θ₁ ⇔ K_{θ₂} ⊂ K_{θ₁}`, the strict version,
/// `θ₂θ₃ ⪯ θ₁ ⇔ θ₃K_{θ₂} ⊂ K_{θ₁}`, and
/// `θ₁ ⪯ θ₃ ⇒ θ₁K_{θ₂} ⊂ K_{θ₃θ₂}` (strict for non-constant `θ₁`).
pub fn theorem_prec_checks(theta1: &InnerFunction, theta2: &InnerFunction, theta3: &InnerFunction) -> Result<PrecReport> {
    let t1 = finite_form(theta1)?;
    let t3 = finite_form(theta3)?;
    let b1 = basis(theta1)?.partial_fractions();
    let b2 = basis(theta2)?.partial_fractions();
    let b32 = basis(&theta3.mul(theta2))?.partial_fractions();

    let divides = theta2.divides(theta1);
    let included = spans_within(&b2, &b1);
    let strictly_divides = theta2.strictly_divides(theta1);
    let strictly_included = included && linalg::function_rank(&b2) < linalg::function_rank(&b1);
    let product_divides = theta2.mul(theta3).divides(theta1);
    let shifted: Vec<PartialFractions> = basis(theta2)?.times(&t3).partial_fractions();
    let product_included = spans_within(&shifted, &b1);
    let shift_premise = theta1.divides(theta3);
    let image: Vec<PartialFractions> = basis(theta2)?.times(&t1).partial_fractions();
    let shift_included = spans_within(&image, &b32);
    let shift_strict = shift_included && linalg::function_rank(&image) < linalg::function_rank(&b32);

    let shift_ok = !shift_premise || (shift_included && (theta1.is_constant() || shift_strict));
    let consistent = divides == included
        && strictly_divides == strictly_included
        && product_divides == product_included
        && shift_ok;
    Ok(PrecReport {
        divides,
        included,
        strictly_divides,
        strictly_included,
        product_divides,
        product_included,
        shift_premise,
        shift_included,
        shift_strict,
        consistent,
    })
}

/// `K_{θ₁} = K_{θˢ} ⊕ θˢK_{θ₁/θˢ}` when `θˢ ⪯ θ₁`: span equality and a
/// direct sum (rank equals dimension).
pub fn power_decomposition_holds(theta: &InnerFunction, theta1: &InnerFunction, s: u32) -> Result<bool> {
    let ts = theta.powu(s);
    if !ts.divides(theta1) {
        return Err(Error::BadParameter("θ^s does not divide θ₁".into()));
    }
    let ts_form = finite_form(&ts)?;
    let quotient = theta1.quotient(&ts)?;
    let mut parts = basis(&ts)?.partial_fractions();
    parts.extend(basis(&quotient)?.times(&ts_form).partial_fractions());
    let whole = basis(theta1)?.partial_fractions();
    Ok(linalg::spans_equal(&parts, &whole) && linalg::function_rank(&parts) == parts.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectral_backend::project_model_numeric;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn r() -> InnerFunction {
        InnerFunction::cayley()
    }

    fn r2i() -> InnerFunction {
        InnerFunction::blaschke_factor(c(0.0, 2.0)).unwrap()
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn dimension_examples() {
        assert_eq!(dimension(&r().powu(2)), Dimension::Finite(2));
        assert_eq!(dimension(&InnerFunction::exp_inf(1.0).unwrap()), Dimension::Infinite);
        assert_eq!(dimension(&InnerFunction::one()), Dimension::Finite(0));
        assert!(ModelSpaceHandle::new(r(), 1.0).is_err());
        assert!(ModelSpaceHandle::new(InnerFunction::one(), 2.0).unwrap().is_trivial());
    }

    #[test]
    fn basis_examples() {
        let b = basis(&r()).unwrap();
        assert_eq!(b.elements, vec![FactoredRational::lambda_plus().inv().unwrap()]);
        let b = basis(&r2i()).unwrap();
        assert_eq!(b.dim(), 1);
        assert_eq!(b.elements[0].poles(), &[(c(0.0, -2.0), 1)]);
        assert!(b.elements[0].zeros().is_empty());
        let b = basis(&r().powu(2)).unwrap();
        let second = FactoredRational::new(c(1.0, 0.0), vec![(I, 1)], vec![(-I, 2)]).unwrap();
        assert_eq!(b.elements, vec![FactoredRational::lambda_plus().inv().unwrap(), second]);
        assert!(matches!(basis(&InnerFunction::exp_inf(1.0).unwrap()), Err(Error::InfiniteDimensional)));
    }

    #[test]
    fn basis_elements_are_members() {
        let theta = InnerFunction::blaschke(vec![(c(0.5, 1.0), 2), (c(-1.0, 0.3), 1)]).unwrap();
        for e in basis(&theta).unwrap().partial_fractions() {
            assert!(is_member(&theta, &e).unwrap());
        }
        let outside = FactoredRational::linear(c(0.0, -3.0)).inv().unwrap().to_partial_fractions();
        assert!(!is_member(&theta, &outside).unwrap());
    }

    #[test]
    fn reproducing_kernel_examples() {
        let k = reproducing_kernel(&r(), I).unwrap();
        assert!((k.self_value - 0.25 / std::f64::consts::PI).abs() < 1e-15);
        assert!(close(k.eval(I).unwrap(), c(k.self_value, 0.0), 1e-15));
        // θ(w) = 0 makes the kernel independent of θ
        let k = reproducing_kernel(&r().powu(3), I).unwrap();
        assert!(close(k.eval(c(0.4, 0.0)).unwrap(), I / (2.0 * std::f64::consts::PI) / c(0.4, 1.0), 1e-15));
        assert!(matches!(reproducing_kernel(&r(), c(0.0, -1.0)), Err(Error::LowerHalfPlane(_))));
    }

    #[test]
    fn reproducing_identity_on_grid() {
        let grid = BoundaryGrid::new(1 << 12).unwrap();
        let theta = r().powu(3);
        let k = reproducing_kernel(&theta, c(0.0, 2.0)).unwrap();
        let kg = GridFunction::from_exp_rational(&grid, &k.to_exp_rational()).unwrap();
        for e in basis(&theta).unwrap().elements {
            let fg = GridFunction::from_rational(&grid, &e).unwrap();
            let value = e.evaluate(k.w).unwrap();
            assert!(close(fg.inner_product(&kg), value, 1e-7));
        }
    }

    #[test]
    fn f_k_examples() {
        // θ = r: a₀ = 0 and f₀ = 1/λ₊
        let f0 = f_k_family(&r(), 0).unwrap();
        let expected = FactoredRational::lambda_plus().inv().unwrap().to_partial_fractions();
        assert!(f0.as_rational().unwrap().distance(&expected) < 1e-15);
        // θ = e_λ: a₀ = e^{−λ}
        let lam = 0.7;
        let a = f_k_coefficients(&InnerFunction::exp_inf(lam).unwrap(), 0).unwrap();
        assert!(close(a[0], c((-lam).exp(), 0.0), 1e-15));
    }

    #[test]
    fn f_k_membership_on_grid() {
        let grid = BoundaryGrid::new(1 << 12).unwrap();
        for theta in [r().powu(3), InnerFunction::exp_inf(1.0).unwrap()] {
            let tg = GridFunction::from_inner(&grid, &theta).unwrap();
            for k in 0..=3 {
                let f = GridFunction::from_exp_rational(&grid, &f_k_family(&theta, k).unwrap()).unwrap();
                let resid = tg.conj().mul(&f).project_plus().l2_norm();
                assert!(resid < 1e-6, "k={k} resid={resid}");
                assert!(f.project_minus().l2_norm() < 1e-6);
            }
        }
    }

    #[test]
    fn exact_projection_examples() {
        let theta = r().powu(2);
        for e in basis(&theta).unwrap().partial_fractions() {
            assert!(project_model_exact(&theta, &e).unwrap().distance(&e) < 1e-14);
        }
        let killed = FactoredRational::new(c(1.0, 0.0), vec![(I, 2)], vec![(-I, 3)]).unwrap();
        assert!(project_model_exact_rational(&theta, &killed).unwrap().max_abs() < 1e-14);
        // P_r(1/(ξ+2i)) = c/(ξ+i): compare with the grid projection
        let f = FactoredRational::linear(c(0.0, -2.0)).inv().unwrap();
        let exact = project_model_exact_rational(&r(), &f).unwrap();
        assert!(exact.parts().len() == 1 && exact.parts()[0].pole == -I);
        let grid = BoundaryGrid::new(1 << 12).unwrap();
        let tg = GridFunction::from_inner(&grid, &r()).unwrap();
        let numeric = project_model_numeric(&tg, &GridFunction::from_rational(&grid, &f).unwrap());
        let exact_g = GridFunction::from_partial_fractions(&grid, &exact).unwrap();
        assert!(numeric.projected.sup_distance(&exact_g) < 1e-8);
    }

    #[test]
    fn decomposition_examples() {
        let f = FactoredRational::new(c(1.0, 0.0), vec![(I, 1)], vec![(-I, 2)]).unwrap().to_partial_fractions();
        let d = decompose_sum(&r(), &r(), &f).unwrap();
        assert!(d.reconstruction_residual < 1e-14);
        let inv = FactoredRational::lambda_plus().inv().unwrap().to_partial_fractions();
        let d = decompose_sum(&r(), &r(), &inv).unwrap();
        assert!(d.first.distance(&inv) < 1e-14 && d.second.max_abs() < 1e-14);
        let shifted = inv.mul_factored(&FactoredRational::cayley());
        let d = decompose_sum(&r(), &r(), &shifted).unwrap();
        assert!(d.first.max_abs() < 1e-14 && d.second.distance(&inv) < 1e-14);
        let outside = FactoredRational::linear(c(0.0, -3.0)).inv().unwrap().to_partial_fractions();
        assert!(matches!(decompose_sum(&r(), &r(), &outside), Err(Error::NotAMember(_))));
        assert!(decomposition_gram_condition(&r(), &r2i()).unwrap().is_finite());
    }

    #[test]
    fn equivalent_projection_trivial_and_wiener_hopf() {
        let grid = BoundaryGrid::new(1 << 12).unwrap();
        let theta = r().powu(2);
        let p = EquivalentProjection::trivial(&grid, &theta).unwrap();
        let f = GridFunction::from_rational(&grid, &FactoredRational::linear(c(1.0, -0.5)).inv().unwrap()).unwrap();
        let direct = apply_model_projection(&GridFunction::from_inner(&grid, &theta).unwrap(), &f);
        assert!(p.apply(&f).sup_distance(&direct) < 1e-10);
        // θ₁ = r_{2i}r_{3i}, θ₂ = r², h₊ = h₊-factor of θ₁
        let theta1 = InnerFunction::blaschke(vec![(c(0.0, 2.0), 1), (c(0.0, 3.0), 1)]).unwrap();
        let wh = wiener_hopf(&theta1.rational_form().unwrap()).unwrap();
        let hp = wh.h_plus;
        let ep = EquivalentProjection {
            theta2: GridFunction::from_inner(&grid, &theta).unwrap(),
            h_plus: GridFunction::from_rational(&grid, &hp).unwrap(),
            h_plus_inv: GridFunction::from_rational(&grid, &hp.inv().unwrap()).unwrap(),
            theta1: Some(GridFunction::from_inner(&grid, &theta1).unwrap()),
        };
        let d = ep.diagnostics(&f);
        assert!(d.idempotency_residual < 1e-8);
        assert!(d.range_residual.unwrap() < 1e-8);
    }

    #[test]
    fn frostman_equivalent_projection() {
        let grid = BoundaryGrid::new(1 << 12).unwrap();
        let e1 = InnerFunction::exp_inf(1.0).unwrap();
        let shift = crate::inner_functions::frostman_shift(&e1, c(0.5, 0.0)).unwrap();
        let p = EquivalentProjection::frostman(&grid, &shift).unwrap();
        let lam = crate::inner_functions::lambda_function(&e1, 0.0).unwrap();
        let f = GridFunction::from_exp_rational(&grid, &lam.to_exp_rational()).unwrap();
        assert!(p.apply(&f).sup_distance(&f) < 1e-6);
        let d = p.diagnostics(&GridFunction::from_rational(&grid, &FactoredRational::linear(c(0.3, -1.0)).inv().unwrap()).unwrap());
        assert!(d.idempotency_residual < 1e-6, "{d:?}");
        assert!(d.range_residual.unwrap() < 1e-6);
    }

    #[test]
    fn prec_examples() {
        let one = InnerFunction::one();
        let rep = theorem_prec_checks(&r().powu(2), &r(), &one).unwrap();
        assert!(rep.divides && rep.included && rep.consistent);
        let rep = theorem_prec_checks(&r().powu(2), &r2i(), &one).unwrap();
        assert!(!rep.divides && !rep.included && rep.consistent);
        for s in 0..=3 {
            assert!(power_decomposition_holds(&r(), &r().powu(3), s).unwrap());
        }
    }
}
