//! Rational functions on the line in factored form.
//!
//! A [`FactoredRational`] is `scale · Π (ξ − z)^m / Π (ξ − p)^n`. Roots are
//! supplied by the caller and compared exactly, so multiplication and
//! division cancel common factors without any root finding. Sums leave the
//! factored world and are represented by [`PartialFractions`].

mod partial_fractions;
mod wiener_hopf;

pub use partial_fractions::{CoordinateKey, PartialFractions, PolePart};
pub use wiener_hopf::{wiener_hopf, winding_index, WienerHopfFactorization};

use std::cmp::Ordering;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::{C64, I};

/// A root location together with its multiplicity.
pub type Root = (C64, u32);

/// `scale · Π (ξ − z_j)^{m_j} / Π (ξ − p_k)^{n_k}` in canonical form.
///
/// Canonical means: roots sorted lexicographically by `(re, im)`, equal roots
/// merged, no point shared by `zeros` and `poles`, and the identically zero
/// function stored with `scale = 0` and no roots.
#[derive(Debug, Clone, PartialEq)]
pub struct FactoredRational {
    scale: C64,
    zeros: Vec<Root>,
    poles: Vec<Root>,
}

pub(crate) fn cmp_point(a: &C64, b: &C64) -> Ordering {
    a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
}

pub(crate) fn fmt_point(z: C64) -> String {
    format!("({}, {})", z.re, z.im)
}

/// Maps `−0.0` components to `+0.0` so that bitwise and total-order
/// comparisons agree with numeric equality.
pub(crate) fn canon(z: C64) -> C64 {
    C64::new(z.re + 0.0, z.im + 0.0)
}

fn merge_roots(mut roots: Vec<Root>) -> Vec<Root> {
    roots.retain(|(_, m)| *m > 0);
    for (z, _) in roots.iter_mut() {
        *z = canon(*z);
    }
    roots.sort_by(|a, b| cmp_point(&a.0, &b.0));
    let mut out: Vec<Root> = Vec::with_capacity(roots.len());
    for (z, m) in roots {
        match out.last_mut() {
            Some((w, n)) if *w == z => *n += m,
            _ => out.push((z, m)),
        }
    }
    out
}

impl FactoredRational {
    /// Builds and canonicalizes; rejects non-finite data.
    pub fn new(scale: C64, zeros: Vec<Root>, poles: Vec<Root>) -> Result<Self> {
        let finite = |z: &C64| z.re.is_finite() && z.im.is_finite();
        if !finite(&scale) {
            return Err(Error::InvalidData("non-finite scale".into()));
        }
        if let Some((z, _)) = zeros.iter().chain(poles.iter()).find(|(z, _)| !finite(z)) {
            return Err(Error::InvalidData(format!("non-finite root {z}")));
        }
        Ok(Self::from_parts(scale, zeros, poles))
    }

    fn from_parts(scale: C64, zeros: Vec<Root>, poles: Vec<Root>) -> Self {
        if scale == C64::new(0.0, 0.0) {
            return Self::zero();
        }
        let scale = canon(scale);
        let mut zeros = merge_roots(zeros);
        let mut poles = merge_roots(poles);
        // cancel common points
        let (mut i, mut j) = (0, 0);
        while i < zeros.len() && j < poles.len() {
            match cmp_point(&zeros[i].0, &poles[j].0) {
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
                Ordering::Equal => {
                    let common = zeros[i].1.min(poles[j].1);
                    zeros[i].1 -= common;
                    poles[j].1 -= common;
                    i += 1;
                    j += 1;
                }
            }
        }
        zeros.retain(|(_, m)| *m > 0);
        poles.retain(|(_, m)| *m > 0);
        FactoredRational { scale, zeros, poles }
    }

    pub fn zero() -> Self {
        FactoredRational {
            scale: C64::new(0.0, 0.0),
            zeros: Vec::new(),
            poles: Vec::new(),
        }
    }

    pub fn constant(c: C64) -> Self {
        Self::from_parts(c, Vec::new(), Vec::new())
    }

    pub fn one() -> Self {
        Self::constant(C64::new(1.0, 0.0))
    }

    /// `ξ − z`.
    pub fn linear(z: C64) -> Self {
        Self::from_parts(C64::new(1.0, 0.0), vec![(z, 1)], Vec::new())
    }

    /// `λ₊ = ξ + i`.
    pub fn lambda_plus() -> Self {
        Self::linear(-I)
    }

    /// `λ₋ = ξ − i`.
    pub fn lambda_minus() -> Self {
        Self::linear(I)
    }

    /// `r = (ξ − i)/(ξ + i)`.
    pub fn cayley() -> Self {
        Self::from_parts(C64::new(1.0, 0.0), vec![(I, 1)], vec![(-I, 1)])
    }

    /// Elementary Blaschke factor `r_z = (ξ − z)/(ξ − z̄)`.
    pub fn blaschke_factor(z: C64) -> Self {
        Self::from_parts(C64::new(1.0, 0.0), vec![(z, 1)], vec![(z.conj(), 1)])
    }

    pub fn scale(&self) -> C64 {
        self.scale
    }

    pub fn zeros(&self) -> &[Root] {
        &self.zeros
    }

    pub fn poles(&self) -> &[Root] {
        &self.poles
    }

    pub fn is_zero(&self) -> bool {
        self.scale == C64::new(0.0, 0.0)
    }

    pub fn zero_count(&self) -> usize {
        self.zeros.iter().map(|(_, m)| *m as usize).sum()
    }

    pub fn pole_count(&self) -> usize {
        self.poles.iter().map(|(_, m)| *m as usize).sum()
    }

    /// Numerator degree minus denominator degree.
    pub fn degree(&self) -> i64 {
        self.zero_count() as i64 - self.pole_count() as i64
    }

    /// Strictly proper (vanishes at infinity) or identically zero.
    pub fn is_proper(&self) -> bool {
        self.is_zero() || self.degree() < 0
    }

    pub fn has_real_poles(&self) -> bool {
        self.poles.iter().any(|(p, _)| p.im == 0.0)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let zeros = self.zeros.iter().chain(other.zeros.iter()).copied().collect();
        let poles = self.poles.iter().chain(other.poles.iter()).copied().collect();
        Self::from_parts(self.scale * other.scale, zeros, poles)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidData("inverse of the zero function".into()));
        }
        Ok(Self::from_parts(
            1.0 / self.scale,
            self.poles.clone(),
            self.zeros.clone(),
        ))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn powi(&self, n: i32) -> Result<Self> {
        if n < 0 {
            return self.inv()?.powi(-n);
        }
        let n = n as u32;
        if n == 0 {
            return Ok(Self::one());
        }
        Ok(Self::from_parts(
            self.scale.powu(n),
            self.zeros.iter().map(|(z, m)| (*z, m * n)).collect(),
            self.poles.iter().map(|(p, m)| (*p, m * n)).collect(),
        ))
    }

    pub fn scaled(&self, c: C64) -> Self {
        Self::from_parts(self.scale * c, self.zeros.clone(), self.poles.clone())
    }

    /// Boundary conjugate: the rational function equal to `conj(f(ξ))` for
    /// real `ξ` (roots reflected across ℝ, scale conjugated).
    pub fn conj_boundary(&self) -> Self {
        Self::from_parts(
            self.scale.conj(),
            self.zeros.iter().map(|(z, m)| (z.conj(), *m)).collect(),
            self.poles.iter().map(|(p, m)| (p.conj(), *m)).collect(),
        )
    }

    pub fn evaluate(&self, z: C64) -> Result<C64> {
        if self.is_zero() {
            return Ok(C64::new(0.0, 0.0));
        }
        if let Some((p, _)) = self.poles.iter().find(|(p, _)| *p == z) {
            return Err(Error::PoleEvaluation(fmt_point(*p)));
        }
        let mut v = self.scale;
        for (w, m) in &self.zeros {
            v *= (z - w).powu(*m);
        }
        for (p, m) in &self.poles {
            v /= (z - p).powu(*m);
        }
        Ok(v)
    }

    /// Multiplicity of `z` as a zero (positive) or pole (negative).
    pub fn order_at(&self, z: C64) -> i64 {
        let find = |roots: &[Root]| roots.iter().find(|(w, _)| *w == z).map(|(_, m)| *m as i64);
        find(&self.zeros).unwrap_or(0) - find(&self.poles).unwrap_or(0)
    }

    pub fn to_partial_fractions(&self) -> PartialFractions {
        PartialFractions::from_factored(self)
    }

    /// Closed upper/lower half-plane tests on the roots.
    pub fn poles_in_lower_half_plane(&self) -> bool {
        self.poles.iter().all(|(p, _)| p.im < 0.0)
    }

    pub fn poles_in_upper_half_plane(&self) -> bool {
        self.poles.iter().all(|(p, _)| p.im > 0.0)
    }

    /// Member of `H_p⁺` for rational data: proper with poles in `C⁻`.
    pub fn in_hardy_plus(&self) -> bool {
        self.is_proper() && self.poles_in_lower_half_plane()
    }

    /// Member of `H_p⁻` for rational data: proper with poles in `C⁺`.
    pub fn in_hardy_minus(&self) -> bool {
        self.is_proper() && self.poles_in_upper_half_plane()
    }
}

/// `P⁺f`: the partial-fraction terms of `f` with poles in the lower
/// half-plane.
pub fn hardy_project_plus(f: &FactoredRational) -> Result<PartialFractions> {
    f.to_partial_fractions().project_plus()
}

/// `P⁻f = f − P⁺f`: the terms with poles in the upper half-plane.
pub fn hardy_project_minus(f: &FactoredRational) -> Result<PartialFractions> {
    f.to_partial_fractions().project_minus()
}

#[derive(Serialize, Deserialize)]
struct FactoredJson {
    scale: [f64; 2],
    zeros: Vec<[f64; 3]>,
    poles: Vec<[f64; 3]>,
}

fn roots_to_json(roots: &[Root]) -> Vec<[f64; 3]> {
    roots.iter().map(|(z, m)| [z.re, z.im, *m as f64]).collect()
}

fn roots_from_json<E: serde::de::Error>(rows: &[[f64; 3]]) -> std::result::Result<Vec<Root>, E> {
    rows.iter()
        .map(|[re, im, m]| {
            if *m < 1.0 || m.fract() != 0.0 {
                return Err(E::custom(format!("bad multiplicity {m}")));
            }
            Ok((C64::new(*re, *im), *m as u32))
        })
        .collect()
}

impl Serialize for FactoredRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FactoredJson {
            scale: [self.scale.re, self.scale.im],
            zeros: roots_to_json(&self.zeros),
            poles: roots_to_json(&self.poles),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for FactoredRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = FactoredJson::deserialize(d)?;
        let zeros = roots_from_json(&raw.zeros)?;
        let poles = roots_from_json(&raw.poles)?;
        FactoredRational::new(C64::new(raw.scale[0], raw.scale[1]), zeros, poles)
            .map_err(serde::de::Error::custom)
    }
}
