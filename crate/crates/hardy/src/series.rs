//! Truncated power series in one complex variable.
//!
//! Used for Taylor expansions of factored rationals at a pole (partial
//! fractions), at infinity (polynomial parts) and of conjugate inner
//! functions at `−i`.

use crate::C64;

/// Coefficients `c_0, …, c_{n−1}` of `Σ c_k t^k`, truncated at order `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub coeffs: Vec<C64>,
}

impl Series {
    pub fn constant(c: C64, order: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); order];
        if order > 0 {
            coeffs[0] = c;
        }
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// `(d + t)^e` for integer `e`, expanded around `t = 0`; requires `d ≠ 0`
    /// when `e < 0`.
    pub fn binomial(d: C64, e: i64, order: usize) -> Self {
        let mut coeffs = vec![C64::new(0.0, 0.0); order];
        if order == 0 {
            return Series { coeffs };
        }
        if e >= 0 {
            // finite expansion, valid even when d = 0
            let mut binom = 1.0_f64;
            for (k, slot) in coeffs.iter_mut().enumerate() {
                if k as i64 > e {
                    break;
                }
                *slot = d.powi((e - k as i64) as i32) * binom;
                binom = binom * (e - k as i64) as f64 / (k as f64 + 1.0);
            }
            return Series { coeffs };
        }
        let inv = 1.0 / d;
        let mut term = d.powi(e as i32);
        for (k, slot) in coeffs.iter_mut().enumerate() {
            *slot = term;
            term = term * inv * ((e - k as i64) as f64 / (k as f64 + 1.0));
        }
        Series { coeffs }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        let mut out = vec![C64::new(0.0, 0.0); n];
        for (i, a) in self.coeffs.iter().take(n).enumerate() {
            if *a == C64::new(0.0, 0.0) {
                continue;
            }
            for (j, b) in other.coeffs.iter().take(n - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: C64) -> Series {
        Series {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        let n = self.order().min(other.order());
        Series {
            coeffs: (0..n).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }

    /// `exp(s)` via the recurrence `k·e_k = Σ_{j=1}^{k} j·s_j·e_{k−j}`.
    pub fn exp(&self) -> Series {
        let n = self.order();
        let mut out = vec![C64::new(0.0, 0.0); n];
        if n == 0 {
            return Series { coeffs: out };
        }
        out[0] = self.coeffs[0].exp();
        for k in 1..n {
            let mut acc = C64::new(0.0, 0.0);
            for j in 1..=k {
                acc += self.coeffs[j] * out[k - j] * j as f64;
            }
            out[k] = acc / k as f64;
        }
        Series { coeffs: out }
    }

    pub fn eval(&self, t: C64) -> C64 {
        self.coeffs
            .iter()
            .rev()
            .fold(C64::new(0.0, 0.0), |acc, c| acc * t + c)
    }
}
