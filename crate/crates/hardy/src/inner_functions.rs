//! Inner functions on the upper half-plane: a unimodular constant times a
//! finite Blaschke product times an atomic singular factor.
//!
//! `θ(z) = u · Π r_{z_j}(z)^{m_j} · e^{iλz} · Π exp(i m_k/(a_k − z))`
//!
//! Atoms carry no convergence constant. The divisibility order, LCM/GCD and
//! the splitting of Thm-style arguments act on the multiplicity data; the
//! Frostman shift returns evaluators because the shifted function is in
//! general an infinite Blaschke product.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exp_rational::ExpRational;
use crate::rational_algebra::{cmp_point, fmt_point, FactoredRational, Root};
use crate::series::Series;
use crate::{C64, I};

/// Tolerance for `|u| = 1` at construction and for `θ₁(a) = 1` checks.
pub const NORMALIZATION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct BlaschkePart {
    pub zeros: Vec<Root>,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SingularPart {
    /// Mass at infinity: the factor `e_λ`.
    pub lambda_inf: f64,
    /// `(position, mass)` pairs, sorted by position.
    pub atoms: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InnerFunction {
    pub unimodular: C64,
    pub blaschke: BlaschkePart,
    pub singular: SingularPart,
}

fn one() -> C64 {
    C64::new(1.0, 0.0)
}

fn merge_zeros(mut zeros: Vec<Root>) -> Vec<Root> {
    zeros.retain(|(_, m)| *m > 0);
    for (z, _) in zeros.iter_mut() {
        *z = C64::new(z.re + 0.0, z.im + 0.0);
    }
    zeros.sort_by(|a, b| cmp_point(&a.0, &b.0));
    let mut out: Vec<Root> = Vec::new();
    for (z, m) in zeros {
        match out.last_mut() {
            Some((w, n)) if *w == z => *n += m,
            _ => out.push((z, m)),
        }
    }
    out
}

fn merge_atoms(mut atoms: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    for (a, _) in atoms.iter_mut() {
        *a += 0.0;
    }
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::new();
    for (a, m) in atoms {
        match out.last_mut() {
            Some((b, n)) if *b == a => *n += m,
            _ => out.push((a, m)),
        }
    }
    out.retain(|(_, m)| *m > 0.0);
    out
}

impl InnerFunction {
    /// Validates and canonicalizes the three parts.
    pub fn new(unimodular: C64, zeros: Vec<Root>, lambda_inf: f64, atoms: Vec<(f64, f64)>) -> Result<Self> {
        if !unimodular.re.is_finite() || !unimodular.im.is_finite() || (unimodular.norm() - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::BadParameter(format!("|unimodular| = {} ≠ 1", unimodular.norm())));
        }
        if let Some((z, _)) = zeros.iter().find(|(z, _)| !(z.im > 0.0) || !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::BadParameter(format!("Blaschke zero {} not in the upper half-plane", fmt_point(*z))));
        }
        if !(lambda_inf >= 0.0) || !lambda_inf.is_finite() {
            return Err(Error::BadParameter(format!("negative or non-finite mass at infinity {lambda_inf}")));
        }
        if let Some((a, m)) = atoms.iter().find(|(a, m)| !(*m > 0.0) || !a.is_finite() || !m.is_finite()) {
            return Err(Error::BadParameter(format!("atom ({a}, {m}) needs finite position and positive mass")));
        }
        Ok(InnerFunction {
            unimodular,
            blaschke: BlaschkePart { zeros: merge_zeros(zeros) },
            singular: SingularPart {
                lambda_inf,
                atoms: merge_atoms(atoms),
            },
        })
    }

    pub fn constant(u: C64) -> Result<Self> {
        Self::new(u, Vec::new(), 0.0, Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(one()).expect("1 is unimodular")
    }

    /// `r = r_i`.
    pub fn cayley() -> Self {
        Self::blaschke(vec![(I, 1)]).expect("i is in C⁺")
    }

    pub fn blaschke(zeros: Vec<Root>) -> Result<Self> {
        Self::new(one(), zeros, 0.0, Vec::new())
    }

    /// `r_z = (ξ − z)/(ξ − z̄)`.
    pub fn blaschke_factor(z: C64) -> Result<Self> {
        Self::blaschke(vec![(z, 1)])
    }

    /// `e_λ(ξ) = e^{iλξ}`.
    pub fn exp_inf(lambda: f64) -> Result<Self> {
        Self::new(one(), Vec::new(), lambda, Vec::new())
    }

    /// `exp(i m/(a − ξ))`.
    pub fn atom(a: f64, mass: f64) -> Result<Self> {
        Self::new(one(), Vec::new(), 0.0, vec![(a, mass)])
    }

    pub fn zeros(&self) -> &[Root] {
        &self.blaschke.zeros
    }

    pub fn atoms(&self) -> &[(f64, f64)] {
        &self.singular.atoms
    }

    pub fn lambda_inf(&self) -> f64 {
        self.singular.lambda_inf
    }

    /// Total multiplicity of the Blaschke zeros.
    pub fn blaschke_degree(&self) -> usize {
        self.zeros().iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn has_singular_part(&self) -> bool {
        self.lambda_inf() > 0.0 || !self.atoms().is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.zeros().is_empty() && !self.has_singular_part()
    }

    pub fn is_finite_blaschke(&self) -> bool {
        !self.has_singular_part()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let zeros = self.zeros().iter().chain(other.zeros()).copied().collect();
        let atoms = self.atoms().iter().chain(other.atoms()).copied().collect();
        InnerFunction {
            unimodular: self.unimodular * other.unimodular,
            blaschke: BlaschkePart { zeros: merge_zeros(zeros) },
            singular: SingularPart {
                lambda_inf: self.lambda_inf() + other.lambda_inf(),
                atoms: merge_atoms(atoms),
            },
        }
    }

    pub fn powu(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn with_unimodular(&self, u: C64) -> Self {
        InnerFunction {
            unimodular: u,
            ..self.clone()
        }
    }

    /// `u · Π r_{z_j}^{m_j}` as a factored rational (the singular part is
    /// ignored).
    pub fn blaschke_rational(&self) -> FactoredRational {
        let zeros = self.zeros().to_vec();
        let poles = self.zeros().iter().map(|(z, m)| (z.conj(), *m)).collect();
        FactoredRational::new(self.unimodular, zeros, poles).expect("finite Blaschke data")
    }

    /// The rational function equal to `θ` when `θ` is a finite Blaschke
    /// product.
    pub fn rational_form(&self) -> Option<FactoredRational> {
        self.is_finite_blaschke().then(|| self.blaschke_rational())
    }

    /// `θ` as a one-term [`ExpRational`].
    pub fn to_exp_rational(&self) -> ExpRational {
        ExpRational::term(
            self.lambda_inf(),
            self.blaschke_rational().to_partial_fractions(),
            self.atoms().to_vec(),
        )
    }

    /// Value of the meromorphic continuation of `θ` (Blaschke factors and the
    /// exponential extend to `C`, atoms are singular only at their points).
    pub fn eval_continued(&self, z: C64) -> Result<C64> {
        let mut v = self.unimodular;
        for &(w, m) in self.zeros() {
            if z == w.conj() {
                return Err(Error::PoleEvaluation(fmt_point(z)));
            }
            v *= ((z - w) / (z - w.conj())).powu(m);
        }
        v *= (I * self.lambda_inf() * z).exp();
        for &(a, m) in self.atoms() {
            if z == C64::new(a, 0.0) {
                return Err(Error::AtomEvaluation(a));
            }
            v *= (I * m / (C64::new(a, 0.0) - z)).exp();
        }
        Ok(v)
    }

    /// `θ(z)` for `z` in the closed upper half-plane.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if z.im < 0.0 {
            return Err(Error::LowerHalfPlane(fmt_point(z)));
        }
        self.eval_continued(z)
    }

    /// `θ̄(z) := conj(θ(z̄))`, analytic in the lower half-plane.
    pub fn eval_conj_extension(&self, z: C64) -> Result<C64> {
        Ok(self.eval_continued(z.conj())?.conj())
    }

    /// Taylor coefficients of `θ` at `center` (any point off the singular
    /// set), up to `order` terms.
    pub fn taylor(&self, center: C64, order: usize) -> Result<Series> {
        let mut s = Series::constant(self.unimodular, order);
        for &(w, m) in self.zeros() {
            if center == w.conj() {
                return Err(Error::PoleEvaluation(fmt_point(center)));
            }
            s = s.mul(&Series::binomial(center - w, m as i64, order));
            s = s.mul(&Series::binomial(center - w.conj(), -(m as i64), order));
        }
        let mut expo = Series::constant(I * self.lambda_inf() * center, order);
        if order > 1 {
            expo.coeffs[1] = I * self.lambda_inf();
        }
        for &(a, m) in self.atoms() {
            let d = C64::new(a, 0.0) - center;
            if d == C64::new(0.0, 0.0) {
                return Err(Error::AtomEvaluation(a));
            }
            // i m/(d − t) = i m Σ t^k / d^{k+1}
            let mut pw = 1.0 / d;
            for coeff in expo.coeffs.iter_mut() {
                *coeff += I * m * pw;
                pw /= d;
            }
        }
        Ok(s.mul(&expo.exp()))
    }

    /// Taylor coefficients of `θ̄` at `center` in the lower half-plane.
    pub fn conj_taylor(&self, center: C64, order: usize) -> Result<Series> {
        let s = self.taylor(center.conj(), order)?;
        Ok(Series {
            coeffs: s.coeffs.iter().map(|c| c.conj()).collect(),
        })
    }

    /// `θ′(z)` by logarithmic differentiation,
    /// `θ′ = θ·(Σ m_j (1/(z−z_j) − 1/(z−z̄_j)) + iλ + Σ i m_k/(a_k−z)²)`.
    pub fn derivative(&self, z: C64) -> Result<C64> {
        if z.im < 0.0 {
            return Err(Error::LowerHalfPlane(fmt_point(z)));
        }
        if self.zeros().iter().any(|(w, _)| *w == z) {
            // the logarithmic derivative is singular at a zero; use the
            // product rule through the Taylor expansion instead
            return Ok(self.taylor(z, 2)?.coeffs[1]);
        }
        let theta = self.eval(z)?;
        let mut log_d = I * self.lambda_inf();
        for &(w, m) in self.zeros() {
            log_d += m as f64 * (1.0 / (z - w) - 1.0 / (z - w.conj()));
        }
        for &(a, m) in self.atoms() {
            log_d += I * m / (C64::new(a, 0.0) - z).powu(2);
        }
        Ok(theta * log_d)
    }

    /// `θ₂ ⪯ θ₁`: every multiplicity and mass of `self` is dominated by
    /// `other` (unimodular constants ignored).
    pub fn divides(&self, other: &Self) -> bool {
        let zeros_ok = self
            .zeros()
            .iter()
            .all(|(z, m)| other.zeros().iter().any(|(w, n)| w == z && n >= m));
        let atoms_ok = self
            .atoms()
            .iter()
            .all(|(a, m)| other.atoms().iter().any(|(b, n)| a == b && n >= m));
        zeros_ok && atoms_ok && self.lambda_inf() <= other.lambda_inf()
    }

    /// `θ₂ ≺ θ₁`: divides with a non-constant quotient.
    pub fn strictly_divides(&self, other: &Self) -> bool {
        self.divides(other) && !other.quotient(self).map(|q| q.is_constant()).unwrap_or(true)
    }

    /// `self / other` when `other ⪯ self`.
    pub fn quotient(&self, other: &Self) -> Result<Self> {
        if !other.divides(self) {
            return Err(Error::BadParameter("quotient of non-dividing inner functions".into()));
        }
        let zeros = self
            .zeros()
            .iter()
            .map(|(z, m)| {
                let n = other.zeros().iter().find(|(w, _)| w == z).map(|(_, n)| *n).unwrap_or(0);
                (*z, m - n)
            })
            .collect();
        let atoms = self
            .atoms()
            .iter()
            .map(|(a, m)| {
                let n = other.atoms().iter().find(|(b, _)| b == a).map(|(_, n)| *n).unwrap_or(0.0);
                (*a, m - n)
            })
            .collect();
        Ok(InnerFunction {
            unimodular: self.unimodular / other.unimodular,
            blaschke: BlaschkePart { zeros: merge_zeros(zeros) },
            singular: SingularPart {
                lambda_inf: self.lambda_inf() - other.lambda_inf(),
                atoms: merge_atoms(atoms),
            },
        })
    }

    /// Componentwise maximum of multiplicities and masses; unimodular 1.
    pub fn lcm(thetas: &[InnerFunction]) -> Result<Self> {
        Self::lattice(thetas, true)
    }

    /// Componentwise minimum of multiplicities and masses; unimodular 1.
    pub fn gcd(thetas: &[InnerFunction]) -> Result<Self> {
        Self::lattice(thetas, false)
    }

    fn lattice(thetas: &[InnerFunction], take_max: bool) -> Result<Self> {
        if thetas.is_empty() {
            return Err(Error::BadParameter("empty list".into()));
        }
        let mut points: Vec<C64> = thetas.iter().flat_map(|t| t.zeros().iter().map(|(z, _)| *z)).collect();
        points.sort_by(cmp_point);
        points.dedup();
        let mult = |t: &InnerFunction, z: C64| t.zeros().iter().find(|(w, _)| *w == z).map(|(_, m)| *m).unwrap_or(0);
        let zeros = points
            .iter()
            .map(|&z| {
                let ms = thetas.iter().map(|t| mult(t, z));
                (z, if take_max { ms.max().unwrap_or(0) } else { ms.min().unwrap_or(0) })
            })
            .collect();
        let mut positions: Vec<f64> = thetas.iter().flat_map(|t| t.atoms().iter().map(|(a, _)| *a)).collect();
        positions.sort_by(f64::total_cmp);
        positions.dedup();
        let mass = |t: &InnerFunction, a: f64| t.atoms().iter().find(|(b, _)| *b == a).map(|(_, m)| *m).unwrap_or(0.0);
        let atoms = positions
            .iter()
            .map(|&a| {
                let ms = thetas.iter().map(|t| mass(t, a));
                (a, if take_max { ms.fold(0.0, f64::max) } else { ms.fold(f64::INFINITY, f64::min) })
            })
            .collect();
        let lams = thetas.iter().map(|t| t.lambda_inf());
        let lambda_inf = if take_max { lams.fold(0.0, f64::max) } else { lams.fold(f64::INFINITY, f64::min) };
        Ok(InnerFunction {
            unimodular: one(),
            blaschke: BlaschkePart { zeros: merge_zeros(zeros) },
            singular: SingularPart {
                lambda_inf,
                atoms: merge_atoms(atoms),
            },
        })
    }

    /// Splits `θ = θ₁θ₂` with `θ₁` non-constant, analytic near `a` and
    /// normalized by `θ₁(a) = 1`.
    ///
    /// Selection: a Blaschke zero gives `θ₁` = that elementary factor; else
    /// `θ₁` collects the atoms farthest from `a` (those outside the largest
    /// symmetric open interval around `a` that still excludes an atom)
    /// together with `e_λ`; a pure `e_λ` gives `θ₁ = e_λ`.
    pub fn split_at_point(&self, a: f64) -> Result<(InnerFunction, InnerFunction)> {
        if self.is_constant() {
            return Err(Error::ConstantInner);
        }
        if self.atoms().iter().any(|(b, _)| *b == a) {
            return Err(Error::SplitPointIsAtom(a));
        }
        let raw1 = if let Some(&(z, _)) = self.zeros().first() {
            Self::blaschke_factor(z)?
        } else if !self.atoms().is_empty() {
            let radius = self.atoms().iter().map(|(b, _)| (b - a).abs()).fold(0.0, f64::max);
            let far: Vec<(f64, f64)> = self
                .atoms()
                .iter()
                .filter(|(b, _)| (b - a).abs() >= radius)
                .copied()
                .collect();
            Self::new(one(), Vec::new(), self.lambda_inf(), far)?
        } else {
            Self::exp_inf(self.lambda_inf())?
        };
        let at_a = raw1.eval(C64::new(a, 0.0))?;
        let u1 = 1.0 / at_a;
        let u1 = u1 / u1.norm();
        let theta1 = raw1.with_unimodular(u1);
        let theta2 = self.quotient(&theta1)?;
        Ok((theta1, theta2))
    }
}

/// `Λ_{θ₁,a}(ξ) = (θ₁(ξ) − 1)/(ξ − a)` with the removable singularity at
/// `ξ = a` filled in.
#[derive(Debug, Clone)]
pub struct LambdaFunction {
    pub theta1: InnerFunction,
    pub a: f64,
}

/// Below this distance from `a` the Taylor expansion replaces the quotient.
const LAMBDA_SERIES_RADIUS: f64 = 1e-3;

impl LambdaFunction {
    pub fn new(theta1: InnerFunction, a: f64) -> Result<Self> {
        let at_a = theta1.eval(C64::new(a, 0.0))?;
        if (at_a - one()).norm() > NORMALIZATION_TOL {
            return Err(Error::NotNormalizedAtA {
                a,
                value: format!("{at_a}"),
            });
        }
        Ok(LambdaFunction { theta1, a })
    }

    pub fn eval(&self, z: C64) -> Result<C64> {
        let t = z - self.a;
        if t.norm() < LAMBDA_SERIES_RADIUS {
            let s = self.theta1.taylor(C64::new(self.a, 0.0), 12)?;
            let tail = Series {
                coeffs: s.coeffs[1..].to_vec(),
            };
            return Ok(tail.eval(t));
        }
        Ok((self.theta1.eval_continued(z)? - 1.0) / t)
    }

    /// `θ₁/(ξ−a) − 1/(ξ−a)` as an [`ExpRational`] (each term has a real pole
    /// at `a`; the sum is regular).
    pub fn to_exp_rational(&self) -> ExpRational {
        let inv = FactoredRational::linear(C64::new(self.a, 0.0)).inv().expect("nonzero");
        self.theta1
            .to_exp_rational()
            .mul_rational(&inv)
            .sub(&ExpRational::from_rational(&inv))
    }
}

/// `Λ_{θ₁,a}`; errors unless `θ₁(a) = 1` within [`NORMALIZATION_TOL`].
pub fn lambda_function(theta1: &InnerFunction, a: f64) -> Result<LambdaFunction> {
    LambdaFunction::new(theta1.clone(), a)
}

/// Frostman shift `B = (θ − a)/(1 − āθ)`, `h₋ = 1 + aB̄`, `h₊ = 1/(1 + āB)`,
/// so that `θ = h₋ B h₊`.
///
/// Whether `B` is a Blaschke product holds only for almost every `a`; this is
/// an assumption, not something checked here.
#[derive(Debug, Clone)]
pub struct FrostmanShift {
    pub theta: InnerFunction,
    pub a: C64,
}

impl FrostmanShift {
    pub fn new(theta: &InnerFunction, a: C64) -> Result<Self> {
        if theta.is_constant() {
            return Err(Error::ConstantInner);
        }
        if !(a.norm() < 1.0) || a == C64::new(0.0, 0.0) {
            return Err(Error::BadParameter(format!("Frostman parameter {a} must satisfy 0 < |a| < 1")));
        }
        Ok(FrostmanShift {
            theta: theta.clone(),
            a,
        })
    }

    fn mobius(&self, t: C64) -> C64 {
        (t - self.a) / (1.0 - self.a.conj() * t)
    }

    /// `B(z)` on the closed upper half-plane.
    pub fn b(&self, z: C64) -> Result<C64> {
        Ok(self.mobius(self.theta.eval(z)?))
    }

    /// `h₊(z) = 1/(1 + āB(z))`.
    pub fn h_plus(&self, z: C64) -> Result<C64> {
        Ok(1.0 / (1.0 + self.a.conj() * self.b(z)?))
    }

    /// `h₋(z) = 1 + a·conj(B(z̄))`, using the continuation of `θ` below ℝ.
    pub fn h_minus(&self, z: C64) -> Result<C64> {
        let b_reflected = self.mobius(self.theta.eval_continued(z.conj())?);
        Ok(1.0 + self.a * b_reflected.conj())
    }

    /// A zero of `B` (a point with `θ(z) = a`) by Newton iteration from
    /// `guess`.
    pub fn zero_near(&self, guess: C64) -> Result<C64> {
        let mut z = guess;
        for _ in 0..100 {
            let step = (self.theta.eval(z)? - self.a) / self.theta.derivative(z)?;
            z -= step;
            if z.im <= 0.0 {
                return Err(Error::BadParameter("Newton iteration left the upper half-plane".into()));
            }
            if step.norm() <= 1e-15 * (1.0 + z.norm()) {
                return Ok(z);
            }
        }
        Err(Error::BadParameter(format!("no zero of the Frostman shift found near {guess}")))
    }

    fn geometric(&self, first: C64, tol: f64) -> Vec<C64> {
        let ratio = self.a.conj();
        let mut out = vec![first];
        while out.last().map(|c| c.norm() > tol).unwrap_or(false) && out.len() < 10_000 {
            let next = out[out.len() - 1] * ratio;
            out.push(next);
        }
        out
    }

    /// Coefficients of `B` as a power series in `θ`:
    /// `B = −a + Σ_{k≥1} ā^{k−1}(1−|a|²) θ^k`, truncated below `tol`.
    pub fn b_power_coefficients(&self, tol: f64) -> Vec<C64> {
        let mut out = vec![-self.a];
        out.extend(self.geometric(C64::new(1.0 - self.a.norm_sqr(), 0.0), tol));
        out
    }

    /// `h₊ = (1 − āθ)/(1 − |a|²)`.
    pub fn h_plus_power_coefficients(&self) -> Vec<C64> {
        let d = 1.0 - self.a.norm_sqr();
        vec![C64::new(1.0 / d, 0.0), -self.a.conj() / d]
    }

    /// `h₊⁻¹ = (1 − |a|²) Σ_k (āθ)^k`, truncated below `tol`.
    pub fn h_plus_inv_power_coefficients(&self, tol: f64) -> Vec<C64> {
        self.geometric(C64::new(1.0 - self.a.norm_sqr(), 0.0), tol)
    }
}

/// Builds the Frostman evaluators; errors for `|a| ≥ 1`, `a = 0` or constant
/// `θ`.
pub fn frostman_shift(theta: &InnerFunction, a: C64) -> Result<FrostmanShift> {
    FrostmanShift::new(theta, a)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn close(a: C64, b: C64, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    #[test]
    fn eval_examples() {
        let e1 = InnerFunction::exp_inf(1.0).unwrap();
        assert!(close(e1.eval(I).unwrap(), c((-1.0_f64).exp(), 0.0), 1e-15));
        assert_eq!(InnerFunction::cayley().eval(I).unwrap(), c(0.0, 0.0));
        let atom = InnerFunction::atom(0.0, 1.0).unwrap();
        for y in [0.5, 1.0, 3.0] {
            let v = atom.eval(c(0.0, y)).unwrap();
            assert!((v.norm() - (-1.0 / y).exp()).abs() < 1e-15);
        }
        assert!(matches!(atom.eval(c(0.0, 0.0)), Err(Error::AtomEvaluation(_))));
        assert!(matches!(e1.eval(c(0.0, -1.0)), Err(Error::LowerHalfPlane(_))));
    }

    #[test]
    fn construction_rejects_bad_data() {
        assert!(InnerFunction::new(c(2.0, 0.0), vec![], 0.0, vec![]).is_err());
        assert!(InnerFunction::blaschke(vec![(c(0.0, -1.0), 1)]).is_err());
        assert!(InnerFunction::exp_inf(-1.0).is_err());
        assert!(InnerFunction::atom(0.0, 0.0).is_err());
    }

    #[test]
    fn divisibility_examples() {
        let r = InnerFunction::cayley();
        assert!(r.divides(&r.powu(2)));
        let e1 = InnerFunction::exp_inf(1.0).unwrap();
        let e2 = InnerFunction::exp_inf(2.0).unwrap();
        assert!(e1.divides(&e2));
        assert!(e1.strictly_divides(&e2));
        assert!(!e1.strictly_divides(&e1));
        let r2i = InnerFunction::blaschke_factor(c(0.0, 2.0)).unwrap();
        assert!(!r2i.divides(&e1));
    }

    #[test]
    fn lattice_examples() {
        let r = InnerFunction::cayley();
        assert_eq!(InnerFunction::lcm(&[r.powu(2), r.powu(3)]).unwrap(), r.powu(3));
        let r2i = InnerFunction::blaschke_factor(c(0.0, 2.0)).unwrap();
        assert_eq!(InnerFunction::lcm(&[r.clone(), r2i.clone()]).unwrap(), r.mul(&r2i));
        let e1 = InnerFunction::exp_inf(1.0).unwrap();
        let e2 = InnerFunction::exp_inf(2.0).unwrap();
        assert_eq!(InnerFunction::gcd(&[e1.clone(), e2]).unwrap(), e1);
    }

    #[test]
    fn split_of_blaschke_square() {
        let r2 = InnerFunction::cayley().powu(2);
        let (t1, t2) = r2.split_at_point(0.0).unwrap();
        // r(0) = −1, so θ₁ = −r and θ₂ = −r
        assert!(close(t1.unimodular, c(-1.0, 0.0), 1e-15));
        assert!(close(t2.unimodular, c(-1.0, 0.0), 1e-15));
        assert_eq!(t1.mul(&t2).with_unimodular(one()), r2);
        assert!(close(t1.eval(c(0.0, 0.0)).unwrap(), one(), 1e-15));
    }

    #[test]
    fn split_of_two_atoms_and_of_exponential() {
        let th = InnerFunction::new(one(), vec![], 0.0, vec![(-1.0, 1.0), (1.0, 2.0)]).unwrap();
        let (t1, t2) = th.split_at_point(0.0).unwrap();
        assert_eq!(t1.atoms().len(), 2);
        assert!(t2.is_constant());
        assert!(close(t1.eval(c(0.0, 0.0)).unwrap(), one(), 1e-12));
        let e2 = InnerFunction::exp_inf(2.0).unwrap();
        let (t1, t2) = e2.split_at_point(3.0).unwrap();
        assert!(close(t1.unimodular, c(0.0, -6.0).exp(), 1e-14));
        assert!(t2.is_constant());
        assert!(close(t1.eval(c(3.0, 0.0)).unwrap(), one(), 1e-14));
        assert!(matches!(th.split_at_point(1.0), Err(Error::SplitPointIsAtom(_))));
        assert!(matches!(InnerFunction::one().split_at_point(0.0), Err(Error::ConstantInner)));
    }

    #[test]
    fn lambda_function_examples() {
        let e = InnerFunction::exp_inf(1.5).unwrap();
        let lam = lambda_function(&e, 0.0).unwrap();
        assert!(close(lam.eval(c(0.0, 0.0)).unwrap(), c(0.0, 1.5), 1e-14));
        let x = c(0.7, 0.0);
        assert!(close(lam.eval(x).unwrap(), ((I * 1.5 * x).exp() - 1.0) / x, 1e-14));
        // −r at 0: (−(ξ−i)/(ξ+i) − 1)/ξ = −2/(ξ+i)
        let minus_r = InnerFunction::cayley().with_unimodular(c(-1.0, 0.0));
        let lam = lambda_function(&minus_r, 0.0).unwrap();
        for xi in [c(0.0, 0.0), c(1e-5, 0.0), c(2.0, 0.0), c(-3.0, 1.0)] {
            assert!(close(lam.eval(xi).unwrap(), -2.0 / (xi + I), 1e-12), "{xi}");
        }
        assert!(matches!(lambda_function(&InnerFunction::cayley(), 0.0), Err(Error::NotNormalizedAtA { .. })));
    }

    #[test]
    fn lambda_exp_rational_agrees_with_closure() {
        let e = InnerFunction::exp_inf(1.0).unwrap();
        let lam = lambda_function(&e, 0.0).unwrap();
        let er = lam.to_exp_rational();
        for xi in [c(0.5, 0.0), c(-3.0, 0.0), c(2.0, 1.0)] {
            assert!(close(er.evaluate(xi).unwrap(), lam.eval(xi).unwrap(), 1e-13));
        }
    }

    #[test]
    fn derivative_examples() {
        let lam = 0.8;
        let e = InnerFunction::exp_inf(lam).unwrap();
        assert!(close(e.derivative(c(0.0, 0.0)).unwrap(), c(0.0, lam), 1e-15));
        let r = InnerFunction::cayley();
        // r′(ξ) = 2i/(ξ+i)²; at 0 this is −2i
        assert!(close(r.derivative(c(0.0, 0.0)).unwrap(), c(0.0, -2.0), 1e-15));
        assert!(close(r.derivative(I).unwrap(), 2.0 * I / (2.0 * I).powu(2), 1e-15));
        assert_eq!(InnerFunction::one().derivative(I).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn conj_taylor_of_exponential() {
        // ē_λ(z) = e^{−iλz}; at −i its value is e^{−λ}
        let e = InnerFunction::exp_inf(1.0).unwrap();
        let s = e.conj_taylor(-I, 3).unwrap();
        assert!(close(s.coeffs[0], c((-1.0_f64).exp(), 0.0), 1e-15));
        assert!(close(s.coeffs[1], -I * (-1.0_f64).exp(), 1e-15));
        let r = InnerFunction::cayley();
        assert!(r.conj_taylor(-I, 1).unwrap().coeffs[0].norm() < 1e-15);
    }

    #[test]
    fn frostman_examples() {
        let e = InnerFunction::exp_inf(1.0).unwrap();
        let f = frostman_shift(&e, c(0.5, 0.0)).unwrap();
        assert!(close(f.b(c(0.0, 0.0)).unwrap(), one(), 1e-15));
        for z in [c(0.3, 0.2), c(-2.0, 1.5), c(4.0, 0.0)] {
            let theta = e.eval(z).unwrap();
            let prod = f.h_minus(z).unwrap() * f.b(z).unwrap() * f.h_plus(z).unwrap();
            assert!(close(prod, theta, 1e-12));
        }
        assert!(matches!(frostman_shift(&e, c(1.0, 0.0)), Err(Error::BadParameter(_))));
        assert!(matches!(frostman_shift(&e, c(0.0, 0.0)), Err(Error::BadParameter(_))));
    }
}
