//! Partial-fraction (expanded) form of rational functions.
//!
//! `f(ξ) = Σ_j a_j ξ^j + Σ_p Σ_{k=1}^{m_p} c_{p,k} (ξ − p)^{−k}`.
//!
//! The coefficients at a pole are read off the Taylor series of the
//! remaining factors of the factored form, and the polynomial part from the
//! expansion at infinity. This is the representation in which sums, Hardy
//! projections and linear-algebra coordinates live.

use std::cmp::Ordering;

use super::{cmp_point, fmt_point, FactoredRational};
use crate::error::{Error, Result};
use crate::series::Series;
use crate::C64;

const ZERO: C64 = C64::new(0.0, 0.0);

/// Principal part `Σ_k coeffs[k−1] / (ξ − pole)^k` at one pole.
#[derive(Debug, Clone, PartialEq)]
pub struct PolePart {
    pub pole: C64,
    pub coeffs: Vec<C64>,
}

/// Sum of a polynomial (ascending coefficients) and principal parts sorted
/// by pole.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PartialFractions {
    poly: Vec<C64>,
    parts: Vec<PolePart>,
}

/// Identifies one coordinate of the expansion: a monomial degree, or a pole
/// (compared bitwise) together with an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoordinateKey {
    Poly(usize),
    Pole { re: u64, im: u64, order: usize },
}

/// `(1 + c·u)^e` truncated at `order`.
fn unit_binomial(c: C64, e: i64, order: usize) -> Series {
    let mut s = Series::binomial(C64::new(1.0, 0.0), e, order);
    let mut pw = C64::new(1.0, 0.0);
    for coeff in s.coeffs.iter_mut() {
        *coeff *= pw;
        pw *= c;
    }
    s
}

fn trim(v: &mut Vec<C64>) {
    while v.last() == Some(&ZERO) {
        v.pop();
    }
}

impl PartialFractions {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_poly(mut poly: Vec<C64>) -> Self {
        trim(&mut poly);
        PartialFractions { poly, parts: Vec::new() }
    }

    /// A single principal part `Σ_k coeffs[k−1]/(ξ − pole)^k`.
    pub fn from_part(pole: C64, coeffs: Vec<C64>) -> Self {
        let mut out = PartialFractions {
            poly: Vec::new(),
            parts: vec![PolePart { pole, coeffs }],
        };
        out.normalize();
        out
    }

    pub fn from_factored(f: &FactoredRational) -> Self {
        if f.is_zero() {
            return Self::zero();
        }
        let mut parts = Vec::with_capacity(f.poles().len());
        for &(p, m) in f.poles() {
            let m = m as usize;
            let mut g = Series::constant(f.scale(), m);
            for &(z, a) in f.zeros() {
                g = g.mul(&Series::binomial(p - z, a as i64, m));
            }
            for &(q, b) in f.poles() {
                if q != p {
                    g = g.mul(&Series::binomial(p - q, -(b as i64), m));
                }
            }
            // (ξ−p)^{−m} g(ξ): coefficient of (ξ−p)^{−k} is g_{m−k}
            let coeffs = (1..=m).map(|k| g.coeffs[m - k]).collect();
            parts.push(PolePart { pole: p, coeffs });
        }
        let mut poly = Vec::new();
        let d = f.degree();
        if d >= 0 {
            let order = d as usize + 1;
            let mut e = Series::constant(f.scale(), order);
            for &(z, a) in f.zeros() {
                e = e.mul(&unit_binomial(-z, a as i64, order));
            }
            for &(q, b) in f.poles() {
                e = e.mul(&unit_binomial(-q, -(b as i64), order));
            }
            // f = ξ^d Σ e_j ξ^{−j}
            poly = vec![ZERO; order];
            for j in 0..order {
                poly[d as usize - j] = e.coeffs[j];
            }
        }
        let mut out = PartialFractions { poly, parts };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        trim(&mut self.poly);
        for part in self.parts.iter_mut() {
            trim(&mut part.coeffs);
        }
        self.parts.retain(|p| !p.coeffs.is_empty());
        self.parts.sort_by(|a, b| cmp_point(&a.pole, &b.pole));
    }

    pub fn poly(&self) -> &[C64] {
        &self.poly
    }

    pub fn parts(&self) -> &[PolePart] {
        &self.parts
    }

    pub fn part_at(&self, pole: C64) -> Option<&PolePart> {
        self.parts.iter().find(|p| p.pole == pole)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty() && self.parts.is_empty()
    }

    /// True when the polynomial part vanishes.
    pub fn is_proper(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn has_real_poles(&self) -> bool {
        self.parts.iter().any(|p| p.pole.im == 0.0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.poly.len().max(other.poly.len());
        let poly = (0..n)
            .map(|k| {
                self.poly.get(k).copied().unwrap_or(ZERO) + other.poly.get(k).copied().unwrap_or(ZERO)
            })
            .collect();
        let mut parts: Vec<PolePart> = Vec::with_capacity(self.parts.len() + other.parts.len());
        let (mut i, mut j) = (0, 0);
        while i < self.parts.len() || j < other.parts.len() {
            let ord = match (self.parts.get(i), other.parts.get(j)) {
                (Some(a), Some(b)) => cmp_point(&a.pole, &b.pole),
                (Some(_), None) => Ordering::Less,
                _ => Ordering::Greater,
            };
            match ord {
                Ordering::Less => {
                    parts.push(self.parts[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    parts.push(other.parts[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let (a, b) = (&self.parts[i], &other.parts[j]);
                    let m = a.coeffs.len().max(b.coeffs.len());
                    let coeffs = (0..m)
                        .map(|k| {
                            a.coeffs.get(k).copied().unwrap_or(ZERO)
                                + b.coeffs.get(k).copied().unwrap_or(ZERO)
                        })
                        .collect();
                    parts.push(PolePart { pole: a.pole, coeffs });
                    i += 1;
                    j += 1;
                }
            }
        }
        let mut out = PartialFractions { poly, parts };
        out.normalize();
        out
    }

    pub fn scaled(&self, c: C64) -> Self {
        let mut out = PartialFractions {
            poly: self.poly.iter().map(|a| a * c).collect(),
            parts: self
                .parts
                .iter()
                .map(|p| PolePart {
                    pole: p.pole,
                    coeffs: p.coeffs.iter().map(|a| a * c).collect(),
                })
                .collect(),
        };
        out.normalize();
        out
    }

    /// Boundary conjugate: equals `conj(f(ξ))` on the real line.
    pub fn conj_boundary(&self) -> Self {
        let mut out = PartialFractions {
            poly: self.poly.iter().map(|a| a.conj()).collect(),
            parts: self
                .parts
                .iter()
                .map(|p| PolePart {
                    pole: super::canon(p.pole.conj()),
                    coeffs: p.coeffs.iter().map(|a| a.conj()).collect(),
                })
                .collect(),
        };
        out.normalize();
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    /// Linear combination `Σ c_j f_j`.
    pub fn combination(coeffs: &[C64], fs: &[PartialFractions]) -> Self {
        coeffs
            .iter()
            .zip(fs)
            .fold(Self::zero(), |acc, (c, f)| acc.add(&f.scaled(*c)))
    }

    pub fn evaluate(&self, z: C64) -> Result<C64> {
        let mut v = self.poly.iter().rev().fold(ZERO, |acc, a| acc * z + a);
        for part in &self.parts {
            if part.pole == z {
                return Err(Error::PoleEvaluation(fmt_point(z)));
            }
            let inv = 1.0 / (z - part.pole);
            let mut pw = inv;
            for c in &part.coeffs {
                v += c * pw;
                pw *= inv;
            }
        }
        Ok(v)
    }

    /// Product with a factored rational, expanded term by term.
    pub fn mul_factored(&self, g: &FactoredRational) -> Self {
        if g.is_zero() {
            return Self::zero();
        }
        let mut acc = Self::zero();
        for (j, a) in self.poly.iter().enumerate() {
            if *a == ZERO {
                continue;
            }
            let mono = FactoredRational::new(*a, vec![(ZERO, j as u32)], Vec::new())
                .expect("finite monomial");
            acc = acc.add(&mono.mul(g).to_partial_fractions());
        }
        for part in &self.parts {
            for (k, c) in part.coeffs.iter().enumerate() {
                if *c == ZERO {
                    continue;
                }
                let term = FactoredRational::new(*c, Vec::new(), vec![(part.pole, k as u32 + 1)])
                    .expect("finite term");
                acc = acc.add(&term.mul(g).to_partial_fractions());
            }
        }
        acc
    }

    fn check_projectable(&self) -> Result<()> {
        if !self.is_proper() {
            return Err(Error::NotProper(format!(
                "polynomial part of degree {}",
                self.poly.len() - 1
            )));
        }
        if let Some(p) = self.parts.iter().find(|p| p.pole.im == 0.0) {
            return Err(Error::RealPole(fmt_point(p.pole)));
        }
        Ok(())
    }

    /// `P⁺`: keep the principal parts at poles in the lower half-plane.
    pub fn project_plus(&self) -> Result<Self> {
        self.check_projectable()?;
        Ok(self.retain_poles(|p| p.im < 0.0))
    }

    /// `P⁻`: keep the principal parts at poles in the upper half-plane.
    pub fn project_minus(&self) -> Result<Self> {
        self.check_projectable()?;
        Ok(self.retain_poles(|p| p.im > 0.0))
    }

    /// Principal parts at poles selected by `keep`, dropping the polynomial.
    pub fn retain_poles(&self, keep: impl Fn(C64) -> bool) -> Self {
        PartialFractions {
            poly: Vec::new(),
            parts: self.parts.iter().filter(|p| keep(p.pole)).cloned().collect(),
        }
    }

    /// Removes the principal part at `pole` (used when it is known to vanish
    /// analytically and only round-off remains).
    pub fn without_pole(&self, pole: C64) -> Self {
        let mut out = self.clone();
        out.parts.retain(|p| p.pole != pole);
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.poly
            .iter()
            .chain(self.parts.iter().flat_map(|p| p.coeffs.iter()))
            .map(|c| c.norm())
            .fold(0.0, f64::max)
    }

    /// Zeroes every coefficient not exceeding `rel_tol · max_abs()`.
    pub fn pruned(&self, rel_tol: f64) -> Self {
        let cut = rel_tol * self.max_abs();
        let mut out = self.clone();
        for c in out.poly.iter_mut() {
            if c.norm() <= cut {
                *c = ZERO;
            }
        }
        for part in out.parts.iter_mut() {
            for c in part.coeffs.iter_mut() {
                if c.norm() <= cut {
                    *c = ZERO;
                }
            }
        }
        out.normalize();
        out
    }

    pub fn keys(&self) -> Vec<CoordinateKey> {
        let mut keys: Vec<CoordinateKey> = (0..self.poly.len()).map(CoordinateKey::Poly).collect();
        for part in &self.parts {
            for k in 0..part.coeffs.len() {
                keys.push(CoordinateKey::Pole {
                    re: part.pole.re.to_bits(),
                    im: part.pole.im.to_bits(),
                    order: k + 1,
                });
            }
        }
        keys
    }

    pub fn coordinate(&self, key: &CoordinateKey) -> C64 {
        match *key {
            CoordinateKey::Poly(j) => self.poly.get(j).copied().unwrap_or(ZERO),
            CoordinateKey::Pole { re, im, order } => {
                let pole = C64::new(f64::from_bits(re), f64::from_bits(im));
                self.part_at(pole)
                    .and_then(|p| p.coeffs.get(order - 1).copied())
                    .unwrap_or(ZERO)
            }
        }
    }

    /// Coordinate vectors of several functions over the union of their keys.
    pub fn coordinate_matrix(fs: &[PartialFractions]) -> Vec<Vec<C64>> {
        let mut keys: Vec<CoordinateKey> = fs.iter().flat_map(|f| f.keys()).collect();
        keys.sort();
        keys.dedup();
        fs.iter()
            .map(|f| keys.iter().map(|k| f.coordinate(k)).collect())
            .collect()
    }

    /// Relative distance `max|coeff(f − g)| / max(1, max|coeff f|, max|coeff g|)`.
    pub fn distance(&self, other: &Self) -> f64 {
        let scale = 1.0_f64.max(self.max_abs()).max(other.max_abs());
        self.sub(other).max_abs() / scale
    }
}
