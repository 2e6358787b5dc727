//! Finite sums `Σ_j e^{iμ_j ξ} R_j(ξ) A_j(ξ)` of rational functions `R_j`
//! times exponentials and atomic singular factors
//! `A_j(ξ) = Π exp(i m/(a − ξ))`.
//!
//! This is the closed-form carrier for the functions built from singular
//! inner functions (`Λ_{θ,a}`, `f_k^θ`, `k_w^θ`, maximal functions). It can
//! be evaluated anywhere off its singular set and is sampled channel by
//! channel by the spectral backend. Individual terms may have real poles
//! provided the sum is regular there.

use crate::error::{Error, Result};
use crate::rational_algebra::{FactoredRational, PartialFractions};
use crate::{C64, I};

/// Frequencies closer than this are merged into one channel.
pub const FREQ_TOL: f64 = 1e-12;

/// One term `e^{i·freq·ξ} · coeff(ξ) · Π exp(i m/(a − ξ))`; a negative mass
/// stands for the conjugate factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpTerm {
    pub freq: f64,
    pub coeff: PartialFractions,
    pub atoms: Vec<(f64, f64)>,
}

impl ExpTerm {
    pub fn atomic_factor(&self, z: C64) -> Result<C64> {
        let mut v = C64::new(1.0, 0.0);
        for &(a, m) in &self.atoms {
            if z == C64::new(a, 0.0) {
                return Err(Error::AtomEvaluation(a));
            }
            v *= (I * m / (C64::new(a, 0.0) - z)).exp();
        }
        Ok(v)
    }

    pub fn evaluate(&self, z: C64) -> Result<C64> {
        Ok((I * self.freq * z).exp() * self.coeff.evaluate(z)? * self.atomic_factor(z)?)
    }

    fn same_channel(&self, other: &ExpTerm) -> bool {
        (self.freq - other.freq).abs() <= FREQ_TOL && self.atoms == other.atoms
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ExpRational {
    terms: Vec<ExpTerm>,
}

fn canonical_atoms(mut atoms: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    atoms.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut out: Vec<(f64, f64)> = Vec::with_capacity(atoms.len());
    for (a, m) in atoms {
        match out.last_mut() {
            Some((b, n)) if *b == a => *n += m,
            _ => out.push((a, m)),
        }
    }
    out.retain(|(_, m)| *m != 0.0);
    out
}

impl ExpRational {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_partial_fractions(pf: PartialFractions) -> Self {
        Self::term(0.0, pf, Vec::new())
    }

    pub fn from_rational(f: &FactoredRational) -> Self {
        Self::from_partial_fractions(f.to_partial_fractions())
    }

    pub fn term(freq: f64, coeff: PartialFractions, atoms: Vec<(f64, f64)>) -> Self {
        let mut out = Self::zero();
        out.push(ExpTerm {
            freq,
            coeff,
            atoms: canonical_atoms(atoms),
        });
        out
    }

    fn push(&mut self, t: ExpTerm) {
        if t.coeff.is_zero() {
            return;
        }
        if let Some(slot) = self.terms.iter_mut().find(|s| s.same_channel(&t)) {
            slot.coeff = slot.coeff.add(&t.coeff);
        } else {
            self.terms.push(t);
        }
        self.terms.retain(|s| !s.coeff.is_zero());
        self.terms.sort_by(|a, b| a.freq.total_cmp(&b.freq));
    }

    pub fn terms(&self) -> &[ExpTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn has_atoms(&self) -> bool {
        self.terms.iter().any(|t| !t.atoms.is_empty())
    }

    /// The rational part when the function has no exponential or atomic
    /// factors.
    pub fn as_rational(&self) -> Option<PartialFractions> {
        match self.terms.as_slice() {
            [] => Some(PartialFractions::zero()),
            [t] if t.freq.abs() <= FREQ_TOL && t.atoms.is_empty() => Some(t.coeff.clone()),
            _ => None,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for t in &other.terms {
            out.push(t.clone());
        }
        out
    }

    pub fn scaled(&self, c: C64) -> Self {
        let mut out = Self::zero();
        for t in &self.terms {
            out.push(ExpTerm {
                coeff: t.coeff.scaled(c),
                ..t.clone()
            });
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    pub fn mul_rational(&self, g: &FactoredRational) -> Self {
        let mut out = Self::zero();
        for t in &self.terms {
            out.push(ExpTerm {
                coeff: t.coeff.mul_factored(g),
                ..t.clone()
            });
        }
        out
    }

    /// Multiplies by `e^{iμξ} g(ξ) Π exp(i m/(a − ξ))`.
    pub fn mul_factor(&self, freq: f64, g: &FactoredRational, atoms: &[(f64, f64)]) -> Self {
        let mut out = Self::zero();
        for t in &self.terms {
            let mut all = t.atoms.clone();
            all.extend_from_slice(atoms);
            out.push(ExpTerm {
                freq: t.freq + freq,
                coeff: t.coeff.mul_factored(g),
                atoms: canonical_atoms(all),
            });
        }
        out
    }

    /// Boundary conjugate: equals `conj(f(ξ))` for real `ξ`.
    pub fn conj_boundary(&self) -> Self {
        let mut out = Self::zero();
        for t in &self.terms {
            out.push(ExpTerm {
                freq: -t.freq,
                coeff: t.coeff.conj_boundary(),
                atoms: t.atoms.iter().map(|(a, m)| (*a, -m)).collect(),
            });
        }
        out
    }

    pub fn evaluate(&self, z: C64) -> Result<C64> {
        self.terms
            .iter()
            .try_fold(C64::new(0.0, 0.0), |acc, t| Ok(acc + t.evaluate(z)?))
    }
}
