//! Sampled diagnostics for `K_θ ⊂ H∞⁺`.
//!
//! Three criteria are compared on a strip `0 < Im w ≤ y_max`:
//!
//! * the sup of `(1 − |θ(w)|²)/Im w`,
//! * the pair "θ′ bounded" and "`|θ|` bounded below on a thin strip",
//! * the boundary limit `inf{|θ(z)| : 0 < Im z < ε} → 1`.
//!
//! Sampling cannot prove a supremum finite, so every verdict is evidence
//! only. The Carleson sum for the zeros of a Blaschke product is exact.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::inner_functions::InnerFunction;
use crate::rational_algebra::Root;
use crate::C64;

/// Thresholds shared by the verdict rules.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct Thresholds {
    /// Growth of per-level maxima (largest over top level) flagging blow-up.
    pub growth: f64,
    /// Ratio of the two lowest levels below which a profile has plateaued.
    pub plateau: f64,
    /// `1 − inf|θ|` on the thinnest strip must be below this.
    pub limit_gap: f64,
    /// Width of the strip on which `|θ|` must stay bounded below.
    pub strip_eps: f64,
    /// Floor standing in for "> 0" on that strip.
    pub inf_floor: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds {
            growth: 10.0,
            plateau: 1.05,
            limit_gap: 1e-3,
            strip_eps: 0.1,
            inf_floor: 1e-3,
        }
    }
}

/// Heights and abscissae at which `θ` is sampled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StripSamplingPlan {
    pub y_min: f64,
    pub y_max: f64,
    pub y_count: usize,
    pub x_min: f64,
    pub x_max: f64,
    pub x_count: usize,
    /// Spacing divisor near atoms and real parts of Blaschke zeros.
    pub refinement: usize,
    /// Distance from an atom or zero within which spacing is refined.
    pub refine_radius: f64,
}

impl Default for StripSamplingPlan {
    fn default() -> Self {
        StripSamplingPlan {
            y_min: 1e-4,
            y_max: 1.0,
            y_count: 13,
            x_min: -50.0,
            x_max: 50.0,
            x_count: 2001,
            refinement: 16,
            refine_radius: 0.1,
        }
    }
}

impl StripSamplingPlan {
    pub fn validate(&self) -> Result<()> {
        let ok = self.y_min > 0.0
            && self.y_min < self.y_max
            && self.y_count >= 2
            && self.x_min < self.x_max
            && self.x_count >= 2
            && self.refinement >= 1
            && self.refine_radius >= 0.0;
        if ok {
            Ok(())
        } else {
            Err(Error::BadParameter(format!("invalid sampling plan {self:?}")))
        }
    }

    /// Geometric ladder from `y_max` down to `y_min`.
    pub fn ladder(&self) -> Vec<f64> {
        let ratio = (self.y_min / self.y_max).powf(1.0 / (self.y_count - 1) as f64);
        (0..self.y_count)
            .map(|k| if k + 1 == self.y_count { self.y_min } else { self.y_max * ratio.powi(k as i32) })
            .collect()
    }

    /// Uniform abscissae, refined near atoms and zeros, with those points
    /// themselves included.
    pub fn abscissae(&self, theta: &InnerFunction) -> Vec<f64> {
        let h = (self.x_max - self.x_min) / (self.x_count - 1) as f64;
        let mut xs: Vec<f64> = (0..self.x_count).map(|k| self.x_min + k as f64 * h).collect();
        let centers = theta.atoms().iter().map(|(a, _)| *a).chain(theta.zeros().iter().map(|(z, _)| z.re));
        let fine = h / self.refinement as f64;
        let steps = (self.refine_radius / fine).floor() as i64;
        for c in centers {
            if c < self.x_min || c > self.x_max {
                continue;
            }
            for k in -steps..=steps {
                xs.push(c + k as f64 * fine);
            }
        }
        xs.sort_by(f64::total_cmp);
        xs.dedup();
        xs
    }
}

/// Extremes of the sampled quantities on one horizontal line.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LevelProfile {
    pub y: f64,
    /// On the geometric ladder (as opposed to a zero height).
    pub on_ladder: bool,
    pub k2_max: f64,
    pub k2_arg_x: f64,
    pub modulus_min: f64,
    pub derivative_max: f64,
}

/// `log|θ(z)|`, accurate when `|θ| ≈ 1`.
pub fn log_modulus(theta: &InnerFunction, z: C64) -> f64 {
    let y = z.im;
    let mut s = -theta.lambda_inf() * y;
    for &(w, m) in theta.zeros() {
        // |z − w̄|² − |z − w|² = 4 Im z Im w
        let d = (z - w.conj()).norm_sqr();
        s += 0.5 * m as f64 * (-4.0 * y * w.im / d).ln_1p();
    }
    for &(a, m) in theta.atoms() {
        s -= m * y / ((z.re - a).powi(2) + y * y);
    }
    s
}

/// `(1 − |θ(w)|²)/Im w`.
pub fn k2_quantity(theta: &InnerFunction, w: C64) -> f64 {
    -(2.0 * log_modulus(theta, w)).exp_m1() / w.im
}

fn sample_levels(theta: &InnerFunction, plan: &StripSamplingPlan) -> Result<Vec<LevelProfile>> {
    plan.validate()?;
    if theta.is_constant() {
        return Err(Error::ConstantInner);
    }
    let xs = plan.abscissae(theta);
    let mut levels: Vec<(f64, bool)> = plan.ladder().into_iter().map(|y| (y, true)).collect();
    for &(z, _) in theta.zeros() {
        if z.im >= plan.y_min && z.im <= plan.y_max && !levels.iter().any(|(y, _)| *y == z.im) {
            levels.push((z.im, false));
        }
    }
    levels.sort_by(|a, b| b.0.total_cmp(&a.0));
    levels
        .into_iter()
        .map(|(y, on_ladder)| {
            let mut p = LevelProfile {
                y,
                on_ladder,
                k2_max: f64::NEG_INFINITY,
                k2_arg_x: xs[0],
                modulus_min: f64::INFINITY,
                derivative_max: 0.0,
            };
            // reduce in index order so maxima are reproducible
            for &x in &xs {
                let w = C64::new(x, y);
                let k2 = k2_quantity(theta, w);
                if k2 > p.k2_max {
                    p.k2_max = k2;
                    p.k2_arg_x = x;
                }
                p.modulus_min = p.modulus_min.min(log_modulus(theta, w).exp());
                p.derivative_max = p.derivative_max.max(theta.derivative(w)?.norm());
            }
            Ok(p)
        })
        .collect()
}

/// Sampled profile of `θ` over the strip, one entry per level (top first).
pub fn strip_profile(theta: &InnerFunction, plan: &StripSamplingPlan) -> Result<Vec<LevelProfile>> {
    sample_levels(theta, plan)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    BoundedEvidence,
    UnboundedEvidence,
    Inconclusive,
}

/// Shape of a per-level sequence read from the top level downwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Trend {
    Increasing,
    Decreasing,
    Constant,
    Mixed,
}

pub fn classify_trend(values: &[f64]) -> Trend {
    let tol = 1e-12;
    let (mut up, mut down) = (false, false);
    for w in values.windows(2) {
        let scale = w[0].abs().max(w[1].abs()).max(f64::MIN_POSITIVE);
        if w[1] - w[0] > tol * scale {
            up = true;
        } else if w[0] - w[1] > tol * scale {
            down = true;
        }
    }
    match (up, down) {
        (true, false) => Trend::Increasing,
        (false, true) => Trend::Decreasing,
        (false, false) => Trend::Constant,
        (true, true) => Trend::Mixed,
    }
}

fn growth_ratio(values: &[f64]) -> f64 {
    let top = values[0].max(f64::MIN_POSITIVE);
    values.iter().cloned().fold(f64::NEG_INFINITY, f64::max) / top
}

fn plateau_ratio(values: &[f64]) -> f64 {
    let n = values.len();
    let (a, b) = (values[n - 2], values[n - 1]);
    a.max(b) / a.min(b).max(f64::MIN_POSITIVE)
}

/// Growth rule first, then plateau.
fn growth_verdict(values: &[f64], t: &Thresholds) -> Verdict {
    if growth_ratio(values) >= t.growth {
        Verdict::UnboundedEvidence
    } else if plateau_ratio(values) < t.plateau {
        Verdict::BoundedEvidence
    } else {
        Verdict::Inconclusive
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundednessReport {
    pub sup_estimate: f64,
    pub arg_max: C64,
    pub trend: Trend,
    pub verdict: Verdict,
    /// Largest over top-level maximum.
    pub growth: f64,
    pub levels: Vec<LevelProfile>,
}

impl BoundednessReport {
    /// `y,k2_max,arg_x,modulus_min,derivative_max` per level.
    pub fn profile_csv(&self) -> String {
        let mut out = String::from("y,on_ladder,k2_max,arg_x,modulus_min,derivative_max\n");
        for l in &self.levels {
            out.push_str(&format!(
                "{:e},{},{:e},{},{:e},{:e}\n",
                l.y, l.on_ladder, l.k2_max, l.k2_arg_x, l.modulus_min, l.derivative_max
            ));
        }
        out
    }
}

pub fn k2_sup_estimate(theta: &InnerFunction, plan: &StripSamplingPlan) -> Result<BoundednessReport> {
    k2_sup_estimate_with(theta, plan, &Thresholds::default())
}

pub fn k2_sup_estimate_with(
    theta: &InnerFunction,
    plan: &StripSamplingPlan,
    t: &Thresholds,
) -> Result<BoundednessReport> {
    let levels = sample_levels(theta, plan)?;
    k2_report(levels, t)
}

fn k2_report(levels: Vec<LevelProfile>, t: &Thresholds) -> Result<BoundednessReport> {
    let maxima: Vec<f64> = levels.iter().map(|l| l.k2_max).collect();
    let best = levels
        .iter()
        .fold(&levels[0], |b, l| if l.k2_max > b.k2_max { l } else { b });
    let ladder: Vec<f64> = levels.iter().filter(|l| l.on_ladder).map(|l| l.k2_max).collect();
    Ok(BoundednessReport {
        sup_estimate: best.k2_max.max(0.0),
        arg_max: C64::new(best.k2_arg_x, best.y),
        trend: classify_trend(&ladder),
        verdict: growth_verdict(&maxima, t),
        growth: growth_ratio(&maxima),
        levels,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DyakonovReport {
    /// Largest sampled `|θ′|` over the strip.
    pub derivative_sup: f64,
    pub derivative_trend: Trend,
    /// `θ′` profile has plateaued towards the boundary.
    pub derivative_bounded: bool,
    /// Sampled `inf{|θ(z)| : 0 < Im z ≤ strip_eps}`.
    pub strip_infimum: f64,
    /// Per-level minima of `|θ|`, top level first.
    pub level_minima: Vec<(f64, f64)>,
    pub modulus_bounded_below: bool,
    pub verdict: Verdict,
}

pub fn dyakonov_check(theta: &InnerFunction, plan: &StripSamplingPlan) -> Result<DyakonovReport> {
    dyakonov_check_with(theta, plan, &Thresholds::default())
}

pub fn dyakonov_check_with(theta: &InnerFunction, plan: &StripSamplingPlan, t: &Thresholds) -> Result<DyakonovReport> {
    let levels = sample_levels(theta, plan)?;
    Ok(dyakonov_report(&levels, t))
}

fn dyakonov_report(levels: &[LevelProfile], t: &Thresholds) -> DyakonovReport {
    let ladder: Vec<f64> = levels.iter().filter(|l| l.on_ladder).map(|l| l.derivative_max).collect();
    let derivative_bounded = plateau_ratio(&ladder) < t.plateau;
    let strip_infimum = levels
        .iter()
        .filter(|l| l.y <= t.strip_eps)
        .map(|l| l.modulus_min)
        .fold(f64::INFINITY, f64::min);
    let modulus_bounded_below = strip_infimum > t.inf_floor;
    DyakonovReport {
        derivative_sup: levels.iter().map(|l| l.derivative_max).fold(0.0, f64::max),
        derivative_trend: classify_trend(&ladder),
        derivative_bounded,
        strip_infimum,
        level_minima: levels.iter().map(|l| (l.y, l.modulus_min)).collect(),
        modulus_bounded_below,
        verdict: if derivative_bounded && modulus_bounded_below {
            Verdict::BoundedEvidence
        } else {
            Verdict::UnboundedEvidence
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LimitVerdict {
    LimitOneEvidence,
    NoLimitOne,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundaryLimitReport {
    /// `(ε, inf{|θ(z)| : 0 < Im z ≤ ε})` along the ladder, widest first.
    pub infima: Vec<(f64, f64)>,
    pub verdict: LimitVerdict,
}

/// Strip infima along the plan's ladder of widths.
pub fn boundary_inf_limit(theta: &InnerFunction, plan: &StripSamplingPlan) -> Result<BoundaryLimitReport> {
    boundary_inf_limit_with(theta, plan, &Thresholds::default())
}

pub fn boundary_inf_limit_with(
    theta: &InnerFunction,
    plan: &StripSamplingPlan,
    t: &Thresholds,
) -> Result<BoundaryLimitReport> {
    let levels = sample_levels(theta, plan)?;
    Ok(limit_report(&levels, t))
}

fn limit_report(levels: &[LevelProfile], t: &Thresholds) -> BoundaryLimitReport {
    let infima: Vec<(f64, f64)> = levels
        .iter()
        .filter(|l| l.on_ladder)
        .map(|l| {
            let inf = levels
                .iter()
                .filter(|m| m.y <= l.y)
                .map(|m| m.modulus_min)
                .fold(f64::INFINITY, f64::min);
            (l.y, inf)
        })
        .collect();
    let values: Vec<f64> = infima.iter().map(|(_, v)| *v).collect();
    let last = *values.last().expect("at least two levels");
    let increasing = values.windows(2).all(|w| w[1] >= w[0]);
    BoundaryLimitReport {
        verdict: if last > 1.0 - t.limit_gap && increasing {
            LimitVerdict::LimitOneEvidence
        } else {
            LimitVerdict::NoLimitOne
        },
        infima,
    }
}

/// All three diagnostics from one sampling pass.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CriteriaComparison {
    pub k2: BoundednessReport,
    pub dyakonov: DyakonovReport,
    pub limit: BoundaryLimitReport,
}

impl CriteriaComparison {
    /// The three verdicts say the same thing.
    pub fn consistent(&self) -> bool {
        let bounded = self.k2.verdict == Verdict::BoundedEvidence;
        let unbounded = self.k2.verdict == Verdict::UnboundedEvidence;
        let dy = self.dyakonov.verdict == Verdict::BoundedEvidence;
        let lim = self.limit.verdict == LimitVerdict::LimitOneEvidence;
        (bounded && dy && lim) || (unbounded && !dy && !lim)
    }
}

pub fn compare_criteria(theta: &InnerFunction, plan: &StripSamplingPlan, t: &Thresholds) -> Result<CriteriaComparison> {
    let levels = sample_levels(theta, plan)?;
    let dyakonov = dyakonov_report(&levels, t);
    let limit = limit_report(&levels, t);
    Ok(CriteriaComparison {
        k2: k2_report(levels, t)?,
        dyakonov,
        limit,
    })
}

/// `Σ m_n y_n/(y_n² + (x − x_n)²)`.
pub fn carleson_sum(zeros: &[Root], x: f64) -> f64 {
    zeros
        .iter()
        .map(|&(z, m)| m as f64 * z.im / (z.im * z.im + (x - z.re).powi(2)))
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CarlesonReport {
    pub sup: f64,
    pub arg_sup: f64,
    pub inf_height: f64,
    /// `inf y_n` stays above the strip width of the thresholds.
    pub heights_separated: bool,
}

pub fn carleson_sup(zeros: &[Root], xs: &[f64]) -> CarlesonReport {
    carleson_sup_with(zeros, xs, &Thresholds::default())
}

pub fn carleson_sup_with(zeros: &[Root], xs: &[f64], t: &Thresholds) -> CarlesonReport {
    let (mut sup, mut arg_sup) = (f64::NEG_INFINITY, f64::NAN);
    for &x in xs {
        let s = carleson_sum(zeros, x);
        if s > sup {
            sup = s;
            arg_sup = x;
        }
    }
    let inf_height = zeros.iter().map(|(z, _)| z.im).fold(f64::INFINITY, f64::min);
    CarlesonReport {
        sup,
        arg_sup,
        inf_height,
        heights_separated: inf_height >= t.strip_eps,
    }
}

/// A named inner function of the comparison corpus.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusMember {
    pub name: String,
    pub theta: InnerFunction,
    /// Known answer: `K_θ ⊂ H∞⁺`.
    pub bounded: bool,
}

/// Exponentials, finite Blaschke products with zeros well inside `C⁺`,
/// atomic singular functions and a Blaschke product with zeros tending to
/// `ℝ` (truncated at fifty zeros).
pub fn corpus() -> Vec<CorpusMember> {
    let c = C64::new;
    let member = |name: &str, theta: Result<InnerFunction>, bounded| CorpusMember {
        name: name.to_string(),
        theta: theta.expect("corpus member"),
        bounded,
    };
    vec![
        member("e_0.5", InnerFunction::exp_inf(0.5), true),
        member("e_1", InnerFunction::exp_inf(1.0), true),
        member("e_2", InnerFunction::exp_inf(2.0), true),
        member(
            "blaschke_3",
            InnerFunction::blaschke(vec![(c(0.0, 1.0), 1), (c(1.0, 2.0), 1), (c(-2.0, 1.5), 1)]),
            true,
        ),
        member(
            "blaschke_5",
            InnerFunction::blaschke(vec![
                (c(0.5, 1.0), 1),
                (c(-1.0, 1.2), 1),
                (c(2.0, 1.5), 1),
                (c(-3.0, 2.0), 1),
                (c(4.0, 1.0), 1),
            ]),
            true,
        ),
        member("atom_0_1", InnerFunction::atom(0.0, 1.0), false),
        member("atoms_-1_1_1_2", InnerFunction::new(c(1.0, 0.0), vec![], 0.0, vec![(-1.0, 1.0), (1.0, 2.0)]), false),
        member(
            "blaschke_to_boundary_50",
            InnerFunction::blaschke((1..=50).map(|n| (c(n as f64, 1.0 / n as f64), 1)).collect()),
            false,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coarse() -> StripSamplingPlan {
        StripSamplingPlan {
            x_min: -10.0,
            x_max: 10.0,
            x_count: 401,
            ..Default::default()
        }
    }

    #[test]
    fn ladder_is_geometric() {
        let l = StripSamplingPlan::default().ladder();
        assert_eq!(l.len(), 13);
        assert_eq!((l[0], l[12]), (1.0, 1e-4));
        assert!((l[1] / l[0] - l[7] / l[6]).abs() < 1e-12);
        assert!(StripSamplingPlan { y_count: 1, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn abscissae_are_refined_near_atoms() {
        let plan = coarse();
        let xs = plan.abscissae(&InnerFunction::atom(0.3, 1.0).unwrap());
        assert!(xs.contains(&0.3));
        let near = xs.iter().filter(|x| (**x - 0.3).abs() <= 0.1).count();
        assert!(near > 16 * 4);
    }

    #[test]
    fn log_modulus_matches_direct_evaluation() {
        let theta = InnerFunction::new(
            C64::new(0.0, 1.0),
            vec![(C64::new(0.5, 0.7), 2)],
            1.5,
            vec![(-1.0, 0.5)],
        )
        .unwrap();
        for z in [C64::new(0.1, 0.3), C64::new(-2.0, 1.5), C64::new(0.5, 0.01)] {
            assert!((log_modulus(&theta, z) - theta.eval(z).unwrap().norm().ln()).abs() < 1e-12);
        }
    }

    #[test]
    fn exponential_sup_approaches_two_lambda() {
        let theta = InnerFunction::exp_inf(1.0).unwrap();
        let r = k2_sup_estimate(&theta, &coarse()).unwrap();
        assert!(r.sup_estimate >= 1.99 && r.sup_estimate <= 2.0, "{}", r.sup_estimate);
        assert_eq!(r.verdict, Verdict::BoundedEvidence);
        assert_eq!(r.trend, Trend::Increasing);
    }

    #[test]
    fn atom_blows_up() {
        let theta = InnerFunction::atom(0.0, 1.0).unwrap();
        let r = k2_sup_estimate(&theta, &coarse()).unwrap();
        assert_eq!(r.verdict, Verdict::UnboundedEvidence);
        let at_1e3 = r.levels.iter().find(|l| (l.y - 1e-3).abs() < 1e-4).unwrap();
        assert!(at_1e3.k2_max > 900.0);
        let d = dyakonov_check(&theta, &coarse()).unwrap();
        assert!(!d.modulus_bounded_below);
        let l = boundary_inf_limit(&theta, &coarse()).unwrap();
        assert_eq!(l.verdict, LimitVerdict::NoLimitOne);
    }

    #[test]
    fn cayley_is_bounded() {
        let r = k2_sup_estimate(&InnerFunction::cayley(), &coarse()).unwrap();
        assert_eq!(r.verdict, Verdict::BoundedEvidence);
        let l = boundary_inf_limit(&InnerFunction::cayley(), &coarse()).unwrap();
        assert_eq!(l.verdict, LimitVerdict::LimitOneEvidence);
        // zero at height 1 lies on the first strip
        assert!(l.infima[0].1 < 1e-12);
    }

    #[test]
    fn exponential_dyakonov_passes() {
        let d = dyakonov_check(&InnerFunction::exp_inf(1.0).unwrap(), &coarse()).unwrap();
        assert!(d.derivative_sup <= 1.0 + 1e-12);
        assert!(d.derivative_bounded && d.modulus_bounded_below);
        assert_eq!(d.verdict, Verdict::BoundedEvidence);
    }

    #[test]
    fn trends() {
        assert_eq!(classify_trend(&[1.0, 2.0, 3.0]), Trend::Increasing);
        assert_eq!(classify_trend(&[3.0, 2.0]), Trend::Decreasing);
        assert_eq!(classify_trend(&[1.0, 1.0]), Trend::Constant);
        assert_eq!(classify_trend(&[1.0, 2.0, 1.0]), Trend::Mixed);
    }

    #[test]
    fn carleson_examples() {
        assert_eq!(carleson_sum(&[(C64::new(0.0, 1.0), 1)], 0.0), 1.0);
        let shifted: Vec<Root> = (1..=200).map(|n| (C64::new(n as f64, 1.0), 1)).collect();
        let coth = 1.0 / std::f64::consts::PI.tanh();
        assert!(carleson_sum(&shifted, 0.0) < std::f64::consts::PI * coth);
        let to_boundary: Vec<Root> = (1..=50).map(|n| (C64::new(n as f64, 1.0 / n as f64), 1)).collect();
        let rep = carleson_sup(&to_boundary, &[0.0, 10.0, 50.0]);
        assert!(!rep.heights_separated);
        assert_eq!(rep.inf_height, 0.02);
        assert_eq!(rep.arg_sup, 50.0);
    }

    #[test]
    fn constant_inner_is_rejected() {
        assert!(matches!(
            k2_sup_estimate(&InnerFunction::one(), &coarse()),
            Err(Error::ConstantInner)
        ));
    }
}
