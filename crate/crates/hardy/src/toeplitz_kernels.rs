//! Toeplitz kernels `ker T_g = {φ ∈ H⁺ : gφ ∈ H⁻}` for rational symbols,
//! optionally multiplied by an inner function or its conjugate.
//!
//! Kernels come from the Wiener–Hopf factorization `g = h₋ rᵏ h₊`:
//! `ker T_g = h₊⁻¹ span{λ₊⁻¹rʲ : j < −κ}`. Minimal kernels, maximal and
//! minimal functions, the annihilation predicate and the decomposition
//! `ker T_g = ker T_{Bg} ⊕ λ_{z₁}φ₊K_B` are built on top.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp_rational::ExpRational;
use crate::inner_functions::{lambda_function, FrostmanShift, InnerFunction};
use crate::linalg;
use crate::model_space::{self, KernelBasis, MEMBERSHIP_TOL};
use crate::rational_algebra::{wiener_hopf, winding_index, FactoredRational, PartialFractions};
use crate::spectral_backend::{BoundaryGrid, GridFunction};
use crate::{C64, I};

/// Grid used when membership has to be decided spectrally.
pub const MEMBERSHIP_GRID: usize = 1 << 12;

/// Spectral membership threshold on `‖P⁺(gφ)‖₂ / max(1, ‖φ‖₂)`.
pub const SPECTRAL_MEMBERSHIP_TOL: f64 = 1e-8;

/// `conj(conj_inner) · rational · inner`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ToeplitzSymbol {
    pub rational: FactoredRational,
    pub conj_inner: Option<InnerFunction>,
    pub inner: Option<InnerFunction>,
}

impl ToeplitzSymbol {
    pub fn rational(g: FactoredRational) -> Self {
        ToeplitzSymbol {
            rational: g,
            conj_inner: None,
            inner: None,
        }
    }

    /// `θ̄·g`.
    pub fn conj_inner_times(theta: InnerFunction, g: FactoredRational) -> Self {
        ToeplitzSymbol {
            rational: g,
            conj_inner: Some(theta),
            inner: None,
        }
    }

    /// `θ·g`.
    pub fn inner_times(theta: InnerFunction, g: FactoredRational) -> Self {
        ToeplitzSymbol {
            rational: g,
            conj_inner: None,
            inner: Some(theta),
        }
    }

    /// The symbol as one rational function, when the inner parts are finite
    /// Blaschke products.
    pub fn total_rational(&self) -> Result<FactoredRational> {
        let mut g = self.rational.clone();
        if let Some(t) = &self.conj_inner {
            let form = t
                .rational_form()
                .ok_or_else(|| Error::Unsupported("conjugate of a singular inner factor".into()))?;
            g = g.mul(&form.conj_boundary());
        }
        if let Some(t) = &self.inner {
            let form = t
                .rational_form()
                .ok_or_else(|| Error::Unsupported("singular inner factor".into()))?;
            g = g.mul(&form);
        }
        Ok(g)
    }

    /// The symbol as an exponential-rational function.
    pub fn to_exp_rational(&self) -> ExpRational {
        let mut out = ExpRational::from_rational(&self.rational);
        if let Some(t) = &self.conj_inner {
            let atoms: Vec<(f64, f64)> = t.atoms().iter().map(|(a, m)| (*a, -m)).collect();
            out = out.mul_factor(-t.lambda_inf(), &t.blaschke_rational().conj_boundary(), &atoms);
        }
        if let Some(t) = &self.inner {
            out = out.mul_factor(t.lambda_inf(), &t.blaschke_rational(), t.atoms());
        }
        out
    }
}

fn in_hardy_plus(f: &PartialFractions) -> bool {
    let bad = f.retain_poles(|p| p.im >= 0.0).add(&PartialFractions::from_poly(f.poly().to_vec()));
    bad.max_abs() <= MEMBERSHIP_TOL * f.max_abs().max(1.0)
}

fn plus_part_size(f: &PartialFractions) -> f64 {
    f.retain_poles(|p| p.im < 0.0)
        .add(&PartialFractions::from_poly(f.poly().to_vec()))
        .max_abs()
}

/// `φ ∈ ker T_g`: exact when the symbol is rational, spectral otherwise.
pub fn member(phi: &PartialFractions, g: &ToeplitzSymbol) -> Result<bool> {
    if phi.is_zero() {
        return Ok(true);
    }
    if !in_hardy_plus(phi) {
        return Ok(false);
    }
    match g.total_rational() {
        Ok(total) => {
            let product = phi.mul_factored(&total);
            Ok(plus_part_size(&product) <= MEMBERSHIP_TOL * phi.max_abs().max(1.0))
        }
        Err(Error::Unsupported(_)) => {
            let grid = BoundaryGrid::new(MEMBERSHIP_GRID)?;
            let f = GridFunction::from_partial_fractions(&grid, phi)?;
            let symbol = GridFunction::from_exp_rational(&grid, &g.to_exp_rational())?;
            let resid = symbol.mul(&f).project_plus().l2_norm();
            Ok(resid <= SPECTRAL_MEMBERSHIP_TOL * f.l2_norm().max(1.0))
        }
        Err(e) => Err(e),
    }
}

pub fn member_rational(phi: &FactoredRational, g: &ToeplitzSymbol) -> Result<bool> {
    member(&phi.to_partial_fractions(), g)
}

/// Basis `h₊⁻¹λ₊⁻¹rʲ`, `j < −κ`, of `ker T_g`.
pub fn kernel(g: &ToeplitzSymbol) -> Result<KernelBasis> {
    kernel_of(&g.total_rational()?)
}

pub fn kernel_of(g: &FactoredRational) -> Result<KernelBasis> {
    let wh = wiener_hopf(g)?;
    if wh.index >= 0 {
        return Ok(KernelBasis::default());
    }
    let base = wh.h_plus.inv()?.mul(&FactoredRational::lambda_plus().inv()?);
    let r = FactoredRational::cayley();
    let elements = (0..-wh.index)
        .map(|j| base.mul(&r.powi(j as i32).expect("r^j")))
        .collect();
    Ok(KernelBasis::new(elements))
}

/// `max(0, −κ)`.
pub fn kernel_dimension(g: &FactoredRational) -> Result<usize> {
    Ok((-winding_index(g)?).max(0) as usize)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerOuterFactorization {
    pub inner: InnerFunction,
    pub outer: FactoredRational,
}

impl InnerOuterFactorization {
    pub fn reconstruct(&self) -> FactoredRational {
        self.inner.blaschke_rational().mul(&self.outer)
    }
}

fn check_hardy_plus(phi: &FactoredRational) -> Result<()> {
    if phi.is_zero() {
        return Err(Error::ZeroFunction);
    }
    if !phi.is_proper() || phi.degree() >= 0 {
        return Err(Error::NotProper("expected a rational in H⁺ vanishing at infinity".into()));
    }
    if !phi.poles_in_lower_half_plane() {
        return Err(Error::BadParameter("expected all poles in the lower half-plane".into()));
    }
    Ok(())
}

/// Blaschke product over the zeros in open `C⁺` times the remaining outer
/// factor (which may vanish on `ℝ`).
pub fn inner_outer(phi: &FactoredRational) -> Result<InnerOuterFactorization> {
    check_hardy_plus(phi)?;
    let zeros: Vec<_> = phi.zeros().iter().filter(|(z, _)| z.im > 0.0).copied().collect();
    let inner = InnerFunction::blaschke(zeros)?;
    let outer = phi.div(&inner.blaschke_rational())?;
    Ok(InnerOuterFactorization { inner, outer })
}

/// `Ī₊Ō₊/O₊` for `φ₊ = I₊O₊`.
pub fn minimal_kernel_symbol(phi: &FactoredRational) -> Result<FactoredRational> {
    let io = inner_outer(phi)?;
    io
        .inner
        .blaschke_rational()
        .conj_boundary()
        .mul(&io.outer.conj_boundary())
        .div(&io.outer)
}

/// `K_min(φ₊) = ker T_{Ī₊Ō₊/O₊}`.
pub fn minimal_kernel(phi: &FactoredRational) -> Result<KernelBasis> {
    kernel_of(&minimal_kernel_symbol(phi)?)
}

/// `θ̄φ₊` is a rational in `H⁻` with no zeros in open `C⁻`.
pub fn is_maximal_for(phi: &FactoredRational, theta: &InnerFunction) -> Result<bool> {
    let form = theta
        .rational_form()
        .ok_or_else(|| Error::Unsupported("maximality test needs a finite Blaschke product".into()))?;
    let q = form.conj_boundary().mul(phi);
    Ok(!q.is_zero()
        && q.degree() < 0
        && q.in_hardy_minus()
        && q.zeros().iter().all(|(z, _)| z.im >= 0.0))
}

/// A point of `ℝ` that is not an atom of `θ`.
fn regular_point(theta: &InnerFunction) -> f64 {
    (0..)
        .map(|k| k as f64 * 0.5)
        .find(|a| theta.atoms().iter().all(|(b, _)| b != a))
        .expect("finitely many atoms")
}

/// A maximal function of `K_θ`: `θ/(ξ − z₀)` at a Blaschke zero `z₀`, or
/// `θ₂Λ_{θ₁,a}` for purely singular `θ = θ₁θ₂`.
pub fn maximal_function(theta: &InnerFunction) -> Result<ExpRational> {
    if theta.is_constant() {
        return Err(Error::ConstantInner);
    }
    if let Some(&(z0, _)) = theta.zeros().first() {
        let q = theta.blaschke_rational().mul(&FactoredRational::linear(z0).inv()?);
        return Ok(ExpRational::term(theta.lambda_inf(), q.to_partial_fractions(), theta.atoms().to_vec()));
    }
    let a = regular_point(theta);
    let (theta1, theta2) = theta.split_at_point(a)?;
    let lam = lambda_function(&theta1, a)?.to_exp_rational();
    Ok(lam.mul_factor(theta2.lambda_inf(), &theta2.blaschke_rational(), theta2.atoms()))
}

/// The maximal function when `θ` is a finite Blaschke product.
pub fn maximal_function_rational(theta: &InnerFunction) -> Result<FactoredRational> {
    if theta.is_constant() {
        return Err(Error::ConstantInner);
    }
    let form = theta
        .rational_form()
        .ok_or_else(|| Error::Unsupported("singular inner function: use maximal_function".into()))?;
    let z0 = theta.zeros()[0].0;
    form.div(&FactoredRational::linear(z0))
}

/// `O₊ = h₊/λ₊` and `I₊ = rⁿ⁻¹` from `θ = h₋ rⁿ h₊`, so that `K_min(O₊) =
/// span{O₊}` and `K_min(I₊O₊) = K_θ`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MinimalFunction {
    pub outer: FactoredRational,
    pub inner: FactoredRational,
}

impl MinimalFunction {
    pub fn product(&self) -> FactoredRational {
        self.inner.mul(&self.outer)
    }
}

pub fn minimal_function(theta: &InnerFunction) -> Result<MinimalFunction> {
    if theta.is_constant() {
        return Err(Error::ConstantInner);
    }
    let form = theta
        .rational_form()
        .ok_or_else(|| Error::Unsupported("singular inner function: use minimal_function_frostman".into()))?;
    let wh = wiener_hopf(&form)?;
    let outer = wh.h_plus.mul(&FactoredRational::lambda_plus().inv()?);
    let inner = FactoredRational::cayley().powi(wh.index as i32 - 1)?;
    Ok(MinimalFunction { outer, inner })
}

/// Grid samples of `O₊ = h₊/λ_{z̄₀}` and `I₊O₊ = Bh₊/λ_{z₀}` for the
/// Frostman factorization `θ = h₋Bh₊`, where `z₀` is a zero of `B`.
pub fn minimal_function_frostman(
    grid: &std::sync::Arc<BoundaryGrid>,
    shift: &FrostmanShift,
    z0: C64,
) -> Result<(GridFunction, GridFunction)> {
    let at_zero = shift.b(z0)?;
    if at_zero.norm() > 1e-10 {
        return Err(Error::BadParameter(format!("B({z0}) = {at_zero} is not zero")));
    }
    let hp = GridFunction::inner_power_series(grid, &shift.theta, &shift.h_plus_power_coefficients())?;
    let b = GridFunction::inner_power_series(grid, &shift.theta, &shift.b_power_coefficients(1e-17))?;
    let outer = hp.mul(&GridFunction::from_rational(grid, &FactoredRational::linear(z0.conj()).inv()?)?);
    let product = b
        .mul(&hp)
        .mul(&GridFunction::from_rational(grid, &FactoredRational::linear(z0).inv()?)?);
    Ok((outer, product))
}

/// The inner function `θ` with `span(basis) = K_θ`, if there is one: `θ`
/// is read off the poles of the basis and then checked.
pub fn model_space_inner(basis: &KernelBasis) -> Result<Option<InnerFunction>> {
    let mut zeros: Vec<(C64, u32)> = Vec::new();
    for e in basis.resolved() {
        for &(p, m) in e.poles() {
            match zeros.iter_mut().find(|(z, _)| *z == p.conj()) {
                Some(slot) => slot.1 = slot.1.max(m),
                None => zeros.push((p.conj(), m)),
            }
        }
    }
    if zeros.iter().any(|(z, _)| z.im <= 0.0) {
        return Ok(None);
    }
    let theta = InnerFunction::blaschke(zeros)?;
    let candidate = model_space::basis(&theta)?.partial_fractions();
    Ok(linalg::spans_equal(&candidate, &basis.partial_fractions()).then_some(theta))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LcmKernel {
    pub theta: InnerFunction,
    pub basis: KernelBasis,
    /// `span(⋃ K_{θ_j}) = K_θ` by exact rank.
    pub spans_equal: bool,
}

/// `K_θ` for `θ = lcm(θ_j)` where `K_min(φ_j) = K_{θ_j}`.
pub fn lcm_min_kernel(phis: &[FactoredRational]) -> Result<LcmKernel> {
    if phis.is_empty() {
        return Err(Error::BadParameter("empty list".into()));
    }
    let mut thetas = Vec::with_capacity(phis.len());
    let mut union = Vec::new();
    for phi in phis {
        let kmin = minimal_kernel(phi)?;
        let theta = model_space_inner(&kmin)?
            .ok_or_else(|| Error::BadParameter("minimal kernel is not a model space".into()))?;
        union.extend(kmin.partial_fractions());
        thetas.push(theta);
    }
    let theta = InnerFunction::lcm(&thetas)?;
    let basis = model_space::basis(&theta)?;
    let spans_equal = linalg::spans_equal(&union, &basis.partial_fractions());
    Ok(LcmKernel {
        theta,
        basis,
        spans_equal,
    })
}

/// `θ` annihilates `ker T_g`: `ker T_{θg} = {0}`.
pub fn annihilates(theta: &InnerFunction, g: &ToeplitzSymbol) -> Result<bool> {
    let total = g.total_rational()?;
    if kernel_dimension(&total)? == 0 {
        return Err(Error::TrivialKernel);
    }
    let form = theta
        .rational_form()
        .ok_or_else(|| Error::Unsupported("annihilation test needs a finite Blaschke product".into()))?;
    Ok(kernel_dimension(&total.mul(&form))? == 0)
}

/// `ker T_g = ker T_{Bg} ⊕ λ_{z₁}φ₊K_B`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KernelDecomposition {
    pub ker_bg: KernelBasis,
    /// Maximal function of `ker T_{Bg}`.
    pub phi_plus: FactoredRational,
    pub complement: KernelBasis,
    pub kernel_dim: usize,
    pub union_rank: usize,
    pub intersection_rank: usize,
    /// `span(ker_bg ∪ complement) = ker T_g`.
    pub spans_kernel: bool,
}

/// The element of a Wiener–Hopf kernel basis with the highest `r`-power,
/// verified to have the whole kernel as its minimal kernel.
pub fn maximal_element(kernel_basis: &KernelBasis) -> Result<FactoredRational> {
    let top = kernel_basis.resolved().last().cloned().ok_or(Error::TrivialKernel)?;
    let kmin = minimal_kernel(&top)?;
    if !linalg::spans_equal(&kmin.partial_fractions(), &kernel_basis.partial_fractions()) {
        return Err(Error::Unsupported("top basis element is not maximal".into()));
    }
    Ok(top)
}

pub fn kernel_decompose(g: &ToeplitzSymbol, b: &InnerFunction) -> Result<KernelDecomposition> {
    let total = g.total_rational()?;
    let form = b
        .rational_form()
        .ok_or_else(|| Error::Unsupported("decomposition needs a finite Blaschke product".into()))?;
    let ker_g = kernel_of(&total)?;
    let (dim, degree) = (ker_g.dim(), b.blaschke_degree());
    if dim <= degree {
        return Err(Error::KernelTooSmall { dim, degree });
    }
    let ker_bg = kernel_of(&total.mul(&form))?;
    let phi_plus = maximal_element(&ker_bg)?;
    let z1 = b.zeros()[0].0;
    let shift = FactoredRational::linear(z1).mul(&phi_plus);
    let complement = model_space::basis(b)?.times(&shift);
    let mut union = ker_bg.partial_fractions();
    union.extend(complement.partial_fractions());
    let union_rank = linalg::function_rank(&union);
    let intersection_rank = ker_bg.dim() + complement.dim() - union_rank;
    let spans_kernel = linalg::spans_equal(&union, &ker_g.partial_fractions());
    Ok(KernelDecomposition {
        ker_bg,
        phi_plus,
        complement,
        kernel_dim: dim,
        union_rank,
        intersection_rank,
        spans_kernel,
    })
}

/// `ψ₊ = χ₊ + (PB)φ₊` with `χ₊ ∈ ker T_{Bg}`, found by peeling the zeros of
/// `B` off `ψ₋ = gψ₊` one at a time.
#[derive(Debug, Clone)]
pub struct Peeling {
    /// `χ₊ ∈ ker T_{Bg}`.
    pub kernel_part: PartialFractions,
    /// `(PB)φ₊ ∈ λ_{z₁}φ₊K_B`.
    pub complement_part: PartialFractions,
    /// Relative distance of `kernel_part` from `ker T_{Bg}` (membership).
    pub membership_residual: f64,
    /// Relative coefficient distance from the least-squares split in the
    /// bases of the decomposition.
    pub direct_solve_distance: f64,
}

pub fn peel_kernel_element(
    g: &ToeplitzSymbol,
    b: &InnerFunction,
    decomposition: &KernelDecomposition,
    psi_plus: &PartialFractions,
) -> Result<Peeling> {
    let total = g.total_rational()?;
    let form = b
        .rational_form()
        .ok_or_else(|| Error::Unsupported("peeling needs a finite Blaschke product".into()))?;
    let phi = &decomposition.phi_plus;
    let phi_minus = total.mul(&form).mul(phi);
    let mut psi = psi_plus.mul_factored(&total);
    let mut weight = FactoredRational::one();
    let mut coeff = PartialFractions::zero();
    // z₁ goes last so every tail product of Blaschke factors vanishes at z₁
    for &(z, m) in b.zeros().iter().rev() {
        let rz = FactoredRational::blaschke_factor(z);
        for _ in 0..m {
            let c = psi.evaluate(z.conj())? / phi_minus.evaluate(z.conj())?;
            coeff = coeff.add(&weight.to_partial_fractions().scaled(c));
            let reduced = psi.sub(&phi_minus.to_partial_fractions().scaled(c));
            psi = reduced.mul_factored(&rz).without_pole(z.conj());
            weight = weight.div(&rz)?;
        }
    }
    let complement_part = coeff.mul_factored(&form.mul(phi)).project_plus()?;
    let kernel_part = psi_plus.sub(&complement_part);
    let bg = ToeplitzSymbol::rational(total.mul(&form));
    let scale = psi_plus.max_abs().max(1.0);
    let membership_residual = if member(&kernel_part, &bg)? {
        plus_part_size(&kernel_part.mul_factored(&bg.rational)) / scale
    } else {
        f64::INFINITY
    };

    let ker_bg = decomposition.ker_bg.partial_fractions();
    let mut columns_fs = ker_bg.clone();
    columns_fs.extend(decomposition.complement.partial_fractions());
    columns_fs.push(psi_plus.clone());
    let coords = PartialFractions::coordinate_matrix(&columns_fs);
    let target = coords.last().expect("target column").clone();
    let (x, _) = linalg::least_squares(&coords[..coords.len() - 1], &target);
    let direct = PartialFractions::combination(&x[..ker_bg.len()], &ker_bg);
    Ok(Peeling {
        direct_solve_distance: direct.distance(&kernel_part) / scale,
        kernel_part,
        complement_part,
        membership_residual,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShiftedMaximalReport {
    pub phi_plus: FactoredRational,
    pub shifted: FactoredRational,
    pub min_kernel_dim: usize,
    pub target_dim: usize,
    pub spans_equal: bool,
}

/// `K_min(Bφ₊) = ker T_{B̄g}` for the maximal function `φ₊` of `ker T_g`.
pub fn shifted_maximal(g: &ToeplitzSymbol, b: &InnerFunction) -> Result<ShiftedMaximalReport> {
    let total = g.total_rational()?;
    let ker_g = kernel_of(&total)?;
    if ker_g.is_empty() {
        return Err(Error::TrivialKernel);
    }
    let phi_plus = maximal_element(&ker_g)?;
    let form = b
        .rational_form()
        .ok_or_else(|| Error::Unsupported("needs a finite Blaschke product".into()))?;
    let shifted = form.mul(&phi_plus);
    let lhs = minimal_kernel(&shifted)?;
    let rhs = kernel_of(&form.conj_boundary().mul(&total))?;
    Ok(ShiftedMaximalReport {
        phi_plus,
        shifted,
        min_kernel_dim: lhs.dim(),
        target_dim: rhs.dim(),
        spans_equal: linalg::spans_equal(&lhs.partial_fractions(), &rhs.partial_fractions()),
    })
}

/// `ηE ∩ H⁺ ⊂ E`: the subspace of `E` mapped into `H⁺` by `η` is found by
/// exact linear algebra on the coordinates outside `H⁺`, then its image is
/// rank-tested against `E`.
pub fn near_invariance_check(e: &[PartialFractions], eta: &FactoredRational) -> bool {
    if e.is_empty() {
        return true;
    }
    let images: Vec<PartialFractions> = e.iter().map(|f| f.mul_factored(eta)).collect();
    let mut keys: Vec<_> = images
        .iter()
        .flat_map(|f| {
            let mut outside = f.retain_poles(|p| p.im >= 0.0);
            outside = outside.add(&PartialFractions::from_poly(f.poly().to_vec()));
            outside.keys()
        })
        .collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<Vec<C64>> = keys
        .iter()
        .map(|k| images.iter().map(|f| f.coordinate(k)).collect())
        .collect();
    let combos = if rows.is_empty() {
        (0..e.len())
            .map(|i| (0..e.len()).map(|j| C64::new(if i == j { 1.0 } else { 0.0 }, 0.0)).collect())
            .collect()
    } else {
        linalg::nullspace(&rows, e.len(), 1e-10)
    };
    combos.iter().all(|c| {
        let h = PartialFractions::combination(c, &images);
        h.max_abs() <= MEMBERSHIP_TOL || linalg::in_span(e, &h)
    })
}

pub fn near_invariance_check_basis(e: &KernelBasis, eta: &FactoredRational) -> bool {
    near_invariance_check(&e.partial_fractions(), eta)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    True,
    Unknown,
}

/// Membership in the class of multipliers preserving `L_p ∩ ηH⁻ ⊂ H⁻`,
/// decided only through the sufficient condition "all poles in `C⁺ ∪ ℝ ∪
/// {∞}`".
pub fn ntilde_member(eta: &FactoredRational) -> Verdict {
    if eta.poles().iter().all(|(p, _)| p.im >= 0.0) {
        Verdict::True
    } else {
        Verdict::Unknown
    }
}

/// `ker T_g = h₊(θ̄₁ ker T_{θ̄₂} ∩ H⁺)` with `θ₁ = 1`, `θ₂ = r^{−κ}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyakonovRepresentation {
    pub h_plus: FactoredRational,
    pub theta1: InnerFunction,
    pub theta2: InnerFunction,
    /// `span(h₊·basis(K_{θ₂})) = ker T_g`.
    pub verified: bool,
}

pub fn dyakonov_representation(g: &ToeplitzSymbol) -> Result<DyakonovRepresentation> {
    let total = g.total_rational()?;
    let wh = wiener_hopf(&total)?;
    if wh.index >= 0 {
        return Err(Error::TrivialKernel);
    }
    let h_plus = wh.h_plus.inv()?;
    let theta2 = InnerFunction::cayley().powu((-wh.index) as u32);
    let image = model_space::basis(&theta2)?.times(&h_plus).partial_fractions();
    let verified = linalg::spans_equal(&image, &kernel_of(&total)?.partial_fractions());
    Ok(DyakonovRepresentation {
        h_plus,
        theta1: InnerFunction::one(),
        theta2,
        verified,
    })
}

/// `λ₊⁻¹` for tests and callers that need the standard outer function.
pub fn standard_outer() -> FactoredRational {
    FactoredRational::linear(-I).inv().expect("nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn rb() -> FactoredRational {
        FactoredRational::cayley().conj_boundary()
    }

    fn r() -> InnerFunction {
        InnerFunction::cayley()
    }

    fn fr(zeros: Vec<(C64, u32)>, poles: Vec<(C64, u32)>) -> FactoredRational {
        FactoredRational::new(c(1.0, 0.0), zeros, poles).unwrap()
    }

    #[test]
    fn member_examples() {
        let phi = standard_outer();
        assert!(member_rational(&phi, &ToeplitzSymbol::rational(rb())).unwrap());
        assert!(!member_rational(&phi, &ToeplitzSymbol::rational(FactoredRational::cayley())).unwrap());
        assert!(member(&PartialFractions::zero(), &ToeplitzSymbol::rational(FactoredRational::cayley())).unwrap());
    }

    #[test]
    fn member_with_singular_conjugate() {
        // Λ_{e_1,0} ∈ K_{e_1} = ker T_{ē_1}; a rational test element instead:
        // 1/(ξ+i) is not in ker T_{ē_1} since ē_1/(ξ+i) is not in H⁻
        let g = ToeplitzSymbol::conj_inner_times(InnerFunction::exp_inf(1.0).unwrap(), FactoredRational::one());
        assert!(!member_rational(&standard_outer(), &g).unwrap());
    }

    #[test]
    fn kernel_examples() {
        let k = kernel(&ToeplitzSymbol::rational(rb().powi(2).unwrap())).unwrap();
        assert_eq!(k.dim(), 2);
        let g = fr(vec![(c(0.0, -2.0), 1)], vec![(c(0.0, 2.0), 1)]);
        let k = kernel(&ToeplitzSymbol::rational(g)).unwrap();
        assert_eq!(k.elements, vec![FactoredRational::linear(c(0.0, -2.0)).inv().unwrap()]);
        let k = kernel(&ToeplitzSymbol::rational(fr(vec![(c(1.0, 1.0), 1)], vec![(c(-1.0, 2.0), 1)]))).unwrap();
        assert!(k.is_empty());
    }

    #[test]
    fn inner_outer_examples() {
        let io = inner_outer(&standard_outer()).unwrap();
        assert!(io.inner.is_constant());
        let phi = fr(vec![(I, 1)], vec![(-I, 2)]);
        let io = inner_outer(&phi).unwrap();
        assert_eq!(io.inner, r());
        assert_eq!(io.outer, standard_outer());
        assert_eq!(io.reconstruct(), phi);
        let phi = fr(vec![(c(1.0, 0.0), 1)], vec![(-I, 2)]);
        let io = inner_outer(&phi).unwrap();
        assert!(io.inner.is_constant());
        assert_eq!(io.outer, phi);
    }

    #[test]
    fn minimal_kernel_examples() {
        let k = minimal_kernel(&standard_outer()).unwrap();
        assert_eq!(k.dim(), 1);
        for phi in [fr(vec![(I, 1)], vec![(-I, 2)]), fr(vec![], vec![(-I, 2)])] {
            let k = minimal_kernel(&phi).unwrap();
            let target = model_space::basis(&r().powu(2)).unwrap();
            assert!(linalg::spans_equal(&k.partial_fractions(), &target.partial_fractions()));
            assert!(linalg::in_span(&k.partial_fractions(), &phi.to_partial_fractions()));
        }
        assert!(matches!(minimal_kernel(&FactoredRational::zero()), Err(Error::ZeroFunction)));
    }

    #[test]
    fn maximality_examples() {
        assert!(is_maximal_for(&standard_outer(), &r()).unwrap());
        assert!(!is_maximal_for(&fr(vec![], vec![(-I, 2)]), &r()).unwrap());
        assert!(is_maximal_for(&fr(vec![(I, 1)], vec![(-I, 2)]), &r().powu(2)).unwrap());
        assert_eq!(maximal_function_rational(&r().powu(2)).unwrap(), fr(vec![(I, 1)], vec![(-I, 2)]));
        assert_eq!(maximal_function_rational(&r()).unwrap(), standard_outer());
        let e = InnerFunction::exp_inf(1.0).unwrap();
        let m = maximal_function(&e).unwrap();
        let x = c(0.8, 0.0);
        assert!((m.evaluate(x).unwrap() - ((I * x).exp() - 1.0) / x).norm() < 1e-14);
    }

    #[test]
    fn minimal_function_examples() {
        let mf = minimal_function(&r()).unwrap();
        assert_eq!(mf.outer, standard_outer());
        assert_eq!(mf.inner, FactoredRational::one());
        let theta = r().powu(2);
        let mf = minimal_function(&theta).unwrap();
        assert_eq!(minimal_kernel(&mf.outer).unwrap().dim(), 1);
        let target = model_space::basis(&theta).unwrap().partial_fractions();
        let k = minimal_kernel(&mf.product()).unwrap().partial_fractions();
        assert!(linalg::spans_equal(&k, &target));
    }

    #[test]
    fn frostman_minimal_function_is_in_model_space() {
        let grid = BoundaryGrid::new(1 << 12).unwrap();
        let e1 = InnerFunction::exp_inf(1.0).unwrap();
        let shift = crate::inner_functions::frostman_shift(&e1, c(0.5, 0.0)).unwrap();
        let z0 = shift.zero_near(c(0.0, 0.7)).unwrap();
        assert!((z0 - c(0.0, 2.0_f64.ln())).norm() < 1e-12);
        let (_, product) = minimal_function_frostman(&grid, &shift, z0).unwrap();
        let theta = GridFunction::from_inner(&grid, &e1).unwrap();
        assert!(theta.conj().mul(&product).project_plus().l2_norm() < 1e-6);
        assert!(product.project_minus().l2_norm() < 1e-6);
    }

    #[test]
    fn lcm_examples() {
        let r2i = InnerFunction::blaschke_factor(c(0.0, 2.0)).unwrap();
        let phis = vec![maximal_function_rational(&r()).unwrap(), maximal_function_rational(&r2i).unwrap()];
        let out = lcm_min_kernel(&phis).unwrap();
        assert_eq!(out.basis.dim(), 2);
        assert!(out.spans_equal);
        let phis = vec![maximal_function_rational(&r()).unwrap(), maximal_function_rational(&r().powu(2)).unwrap()];
        assert_eq!(lcm_min_kernel(&phis).unwrap().theta, r().powu(2));
    }

    #[test]
    fn annihilation_examples() {
        let g3 = ToeplitzSymbol::rational(rb().powi(3).unwrap());
        assert!(!annihilates(&r().powu(2), &g3).unwrap());
        assert!(annihilates(&r().powu(3), &g3).unwrap());
        let r2i = InnerFunction::blaschke_factor(c(0.0, 2.0)).unwrap();
        assert!(annihilates(&r2i, &ToeplitzSymbol::rational(rb())).unwrap());
        let trivial = ToeplitzSymbol::rational(FactoredRational::one());
        assert!(matches!(annihilates(&r(), &trivial), Err(Error::TrivialKernel)));
    }

    #[test]
    fn decomposition_example() {
        let g = ToeplitzSymbol::rational(rb().powi(3).unwrap());
        let d = kernel_decompose(&g, &r()).unwrap();
        assert_eq!(d.ker_bg.dim(), 2);
        assert_eq!(d.phi_plus, fr(vec![(I, 1)], vec![(-I, 2)]));
        assert_eq!(d.complement.elements, vec![fr(vec![(I, 2)], vec![(-I, 3)])]);
        assert_eq!((d.union_rank, d.intersection_rank), (3, 0));
        assert!(d.spans_kernel);
        let g2 = ToeplitzSymbol::rational(rb().powi(2).unwrap());
        assert!(matches!(kernel_decompose(&g2, &r().powu(2)), Err(Error::KernelTooSmall { dim: 2, degree: 2 })));
    }

    #[test]
    fn peeling_matches_direct_solve() {
        let g = ToeplitzSymbol::rational(
            FactoredRational::new(
                c(0.5, 0.5),
                vec![(c(1.0, -0.5), 1), (c(-0.5, 2.0), 1), (c(0.7, -1.1), 1), (c(-2.0, -0.4), 1)],
                vec![(c(0.3, 1.2), 2), (c(2.0, 0.7), 2)],
            )
            .unwrap(),
        );
        let b = InnerFunction::blaschke(vec![(c(0.4, 1.5), 1), (c(-1.0, 0.6), 1)]).unwrap();
        let d = kernel_decompose(&g, &b).unwrap();
        let ker = kernel(&g).unwrap().partial_fractions();
        assert_eq!(ker.len(), 3);
        let psi = PartialFractions::combination(&[c(1.0, 0.5), c(-0.3, 2.0), c(0.7, 0.0)], &ker);
        let p = peel_kernel_element(&g, &b, &d, &psi).unwrap();
        assert!(p.membership_residual < 1e-10, "{}", p.membership_residual);
        assert!(p.direct_solve_distance < 1e-10, "{}", p.direct_solve_distance);
        assert!(p.kernel_part.add(&p.complement_part).distance(&psi) < 1e-12);
    }

    #[test]
    fn shifted_maximal_examples() {
        let rep = shifted_maximal(&ToeplitzSymbol::rational(rb()), &r()).unwrap();
        assert!(rep.spans_equal && rep.target_dim == 2);
        let r2i = InnerFunction::blaschke_factor(c(0.0, 2.0)).unwrap();
        let rep = shifted_maximal(&ToeplitzSymbol::rational(rb().powi(2).unwrap()), &r2i).unwrap();
        assert!(rep.spans_equal && rep.target_dim == 3);
        let rep = shifted_maximal(&ToeplitzSymbol::rational(rb()), &InnerFunction::one()).unwrap();
        assert!(rep.spans_equal);
    }

    #[test]
    fn near_invariance_examples() {
        let k2 = model_space::basis(&r().powu(2)).unwrap();
        assert!(near_invariance_check_basis(&k2, &rb()));
        let shifted = model_space::basis(&r()).unwrap().times(&FactoredRational::cayley());
        assert!(!near_invariance_check_basis(&shifted, &rb()));
        assert!(near_invariance_check_basis(&shifted, &FactoredRational::one()));
    }

    #[test]
    fn ntilde_examples() {
        assert_eq!(ntilde_member(&rb()), Verdict::True);
        assert_eq!(ntilde_member(&FactoredRational::lambda_minus()), Verdict::True);
        assert_eq!(ntilde_member(&standard_outer()), Verdict::Unknown);
    }

    #[test]
    fn dyakonov_examples() {
        let rep = dyakonov_representation(&ToeplitzSymbol::rational(rb())).unwrap();
        assert_eq!(rep.theta2, r());
        assert!(rep.h_plus.evaluate(c(0.3, 0.0)).unwrap().norm() > 0.0 && rep.verified);
        let g = fr(vec![(c(0.0, -2.0), 1)], vec![(c(0.0, 2.0), 1)]);
        let rep = dyakonov_representation(&ToeplitzSymbol::rational(g)).unwrap();
        assert!(rep.verified);
        let ratio = rep.h_plus.div(&fr(vec![(-I, 1)], vec![(c(0.0, -2.0), 1)])).unwrap();
        assert!(ratio.zeros().is_empty() && ratio.poles().is_empty());
        assert!(matches!(
            dyakonov_representation(&ToeplitzSymbol::rational(FactoredRational::one())),
            Err(Error::TrivialKernel)
        ));
    }
}
