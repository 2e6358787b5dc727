//! Winding index and Wiener–Hopf factorization `g = h₋ rᵏ h₊` of rational
//! symbols that are invertible on the line.

use serde::{Deserialize, Serialize};

use super::{fmt_point, FactoredRational, Root};
use crate::error::{Error, Result};
use crate::{C64, I};

/// `g = h₋ · rᵏ · h₊` with `h₊ ∈ GH∞⁺` (roots in `C⁻`) and `h₋ ∈ GH∞⁻`
/// (roots in `C⁺`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WienerHopfFactorization {
    pub h_minus: FactoredRational,
    pub index: i64,
    pub h_plus: FactoredRational,
}

impl WienerHopfFactorization {
    /// `h₋ rᵏ h₊` as a factored rational.
    pub fn reconstruct(&self) -> FactoredRational {
        let rk = FactoredRational::cayley()
            .powi(self.index as i32)
            .expect("r is invertible");
        self.h_minus.mul(&rk).mul(&self.h_plus)
    }
}

fn check_invertible(g: &FactoredRational) -> Result<()> {
    if g.is_zero() {
        return Err(Error::BoundaryZeroOrPole("identically zero symbol".into()));
    }
    if let Some((z, _)) = g.zeros().iter().chain(g.poles()).find(|(z, _)| z.im == 0.0) {
        return Err(Error::BoundaryZeroOrPole(fmt_point(*z)));
    }
    let (zeros, poles) = (g.zero_count(), g.pole_count());
    if zeros != poles {
        return Err(Error::DegreeMismatchAtInfinity { zeros, poles });
    }
    Ok(())
}

fn count_upper(roots: &[Root]) -> i64 {
    roots.iter().filter(|(z, _)| z.im > 0.0).map(|(_, m)| *m as i64).sum()
}

/// `κ = #zeros in C⁺ − #poles in C⁺`, counted with multiplicity.
pub fn winding_index(g: &FactoredRational) -> Result<i64> {
    check_invertible(g)?;
    Ok(count_upper(g.zeros()) - count_upper(g.poles()))
}

/// Pairs every root in `C⁻` with an anchor at `−i` inside `h₊` and every root
/// in `C⁺` with an anchor at `i` inside `h₋`; the anchors left over form `rᵏ`.
pub fn wiener_hopf(g: &FactoredRational) -> Result<WienerHopfFactorization> {
    check_invertible(g)?;
    let mut minus_zeros: Vec<Root> = Vec::new();
    let mut minus_poles: Vec<Root> = Vec::new();
    let mut plus_zeros: Vec<Root> = Vec::new();
    let mut plus_poles: Vec<Root> = Vec::new();
    for &(z, m) in g.zeros() {
        if z.im > 0.0 {
            minus_zeros.push((z, m));
            minus_poles.push((I, m));
        } else {
            plus_zeros.push((z, m));
            plus_poles.push((-I, m));
        }
    }
    for &(p, m) in g.poles() {
        if p.im > 0.0 {
            minus_poles.push((p, m));
            minus_zeros.push((I, m));
        } else {
            plus_poles.push((p, m));
            plus_zeros.push((-I, m));
        }
    }
    let h_minus = FactoredRational::new(g.scale(), minus_zeros, minus_poles)?;
    let h_plus = FactoredRational::new(C64::new(1.0, 0.0), plus_zeros, plus_poles)?;
    Ok(WienerHopfFactorization {
        h_minus,
        index: winding_index(g)?,
        h_plus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    /// Argument winding along ξ = −cot(τ/2), τ ∈ (0, 2π), which sweeps the
    /// whole line; the arc at infinity adds nothing for a finite nonzero limit.
    fn numeric_winding(g: &FactoredRational) -> f64 {
        let n = 200_000;
        let mut total = 0.0;
        let mut prev: Option<f64> = None;
        for k in 0..n {
            let tau = 2.0 * std::f64::consts::PI * (k as f64 + 0.5) / n as f64;
            let xi = -1.0 / (tau / 2.0).tan();
            let arg = g.evaluate(c(xi, 0.0)).unwrap().arg();
            if let Some(p) = prev {
                let mut d = arg - p;
                while d > std::f64::consts::PI {
                    d -= 2.0 * std::f64::consts::PI;
                }
                while d < -std::f64::consts::PI {
                    d += 2.0 * std::f64::consts::PI;
                }
                total += d;
            }
            prev = Some(arg);
        }
        total / (2.0 * std::f64::consts::PI)
    }

    #[test]
    fn index_of_cayley_and_conjugate() {
        let r = FactoredRational::cayley();
        assert_eq!(winding_index(&r).unwrap(), 1);
        assert!((numeric_winding(&r) - 1.0).abs() < 1e-3);
        let rbar = r.conj_boundary();
        assert_eq!(winding_index(&rbar).unwrap(), -1);
        assert!((numeric_winding(&rbar) + 1.0).abs() < 1e-3);
        assert_eq!(winding_index(&FactoredRational::constant(c(5.0, 0.0))).unwrap(), 0);
    }

    #[test]
    fn index_errors() {
        let real = FactoredRational::new(c(1.0, 0.0), vec![(c(1.0, 0.0), 1)], vec![(-I, 1)]).unwrap();
        assert!(matches!(winding_index(&real), Err(Error::BoundaryZeroOrPole(_))));
        let unbalanced = FactoredRational::new(c(1.0, 0.0), vec![], vec![(-I, 1)]).unwrap();
        assert!(matches!(
            winding_index(&unbalanced),
            Err(Error::DegreeMismatchAtInfinity { zeros: 0, poles: 1 })
        ));
    }

    #[test]
    fn factorization_of_cayley() {
        let wh = wiener_hopf(&FactoredRational::cayley()).unwrap();
        assert_eq!(wh.h_minus, FactoredRational::one());
        assert_eq!(wh.index, 1);
        assert_eq!(wh.h_plus, FactoredRational::one());
    }

    #[test]
    fn factorization_of_shifted_blaschke_factor() {
        let g = FactoredRational::blaschke_factor(c(0.0, 2.0));
        let wh = wiener_hopf(&g).unwrap();
        let h_minus = FactoredRational::new(c(1.0, 0.0), vec![(c(0.0, 2.0), 1)], vec![(I, 1)]).unwrap();
        let h_plus = FactoredRational::new(c(1.0, 0.0), vec![(-I, 1)], vec![(c(0.0, -2.0), 1)]).unwrap();
        assert_eq!(wh.h_minus, h_minus);
        assert_eq!(wh.index, 1);
        assert_eq!(wh.h_plus, h_plus);
        assert_eq!(wh.reconstruct(), g);
    }

    #[test]
    fn factorization_of_conjugate_square() {
        let g = FactoredRational::cayley().conj_boundary().powi(2).unwrap();
        let wh = wiener_hopf(&g).unwrap();
        assert_eq!(wh.index, -2);
        assert_eq!(wh.h_minus, FactoredRational::one());
        assert_eq!(wh.h_plus, FactoredRational::one());
    }

    #[test]
    fn numeric_oracle_on_mixed_symbol() {
        let g = FactoredRational::new(
            c(0.3, 2.0),
            vec![(c(1.0, 0.4), 2), (c(-2.0, -1.0), 1), (c(0.5, 3.0), 1)],
            vec![(c(0.0, -0.5), 3), (c(4.0, 0.9), 1)],
        )
        .unwrap();
        let k = winding_index(&g).unwrap();
        assert_eq!(k, 2);
        assert!((numeric_winding(&g) - k as f64).abs() < 1e-3);
        let wh = wiener_hopf(&g).unwrap();
        assert_eq!(wh.reconstruct(), g);
        assert!(wh.h_plus.zeros().iter().chain(wh.h_plus.poles()).all(|(z, _)| z.im < 0.0));
        assert!(wh.h_minus.zeros().iter().chain(wh.h_minus.poles()).all(|(z, _)| z.im > 0.0));
    }
}
