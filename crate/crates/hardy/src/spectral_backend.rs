//! Boundary-grid numerics on the real line through the Cayley map.
//!
//! Nodes are `ξ_k = −cot(τ_k/2)` with `τ_k = 2π(k + o)/N` (offset `o = ½`
//! by default), i.e. `ξ_k = i(1+ζ_k)/(1−ζ_k)` with `ζ_k = e^{iτ_k}`. The
//! weights `w_k = (π/N)(1 + ξ_k²)` integrate `dξ`. A function `f` on the line
//! is carried to the circle as `G = √π(ξ+i)f`, which is unitary from
//! `L²(ℝ)` onto `L²(𝕋, dτ/2π)` and maps `H²(C⁺)` onto the analytic modes
//! `n ≥ 0`.
//!
//! Factors `e^{iμξ}` have an essential singularity at `ζ = 1` and cannot be
//! resolved by any uniform grid. A [`GridFunction`] therefore stores channels
//! `Σ_μ e^{iμξ} g_μ(ξ)` with smooth `g_μ`. The exponential acts on the circle
//! as multiplication by the inner function `S_μ(ζ) = exp(−μ(1+ζ)/(1−ζ))`,
//! whose Taylor coefficients are `e^{−μ} L_k^{(−1)}(2μ)` (Laguerre). The
//! Riesz projections and the integrals of a channel then reduce to discrete
//! correlations of these coefficients with the Fourier modes of `g_μ`.

use std::fmt;
use std::io::Write;
use std::sync::Arc;

use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};
use crate::exp_rational::{ExpRational, FREQ_TOL};
use crate::inner_functions::InnerFunction;
use crate::rational_algebra::{FactoredRational, PartialFractions};
use crate::{C64, I};

/// Number of terms kept when a real pole is re-expanded around an anchor
/// below the axis; the pointwise remainder decays like `ξ^{−order−1}`.
const ANCHOR_ORDER: usize = 12;

/// Channels whose samples are below this fraction of the largest channel
/// are dropped.
const PRUNE_REL: f64 = 1e-18;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Uniform Cayley grid with precomputed transport factors and FFT plans.
pub struct BoundaryGrid {
    n: usize,
    offset: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
    lift: Vec<C64>,
    phase: Vec<C64>,
    fft: Arc<dyn Fft<f64>>,
    ifft: Arc<dyn Fft<f64>>,
    fft2: Arc<dyn Fft<f64>>,
    ifft2: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for BoundaryGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryGrid")
            .field("n", &self.n)
            .field("offset", &self.offset)
            .finish()
    }
}

impl BoundaryGrid {
    /// Grid of `n` nodes with the half-step offset.
    pub fn new(n: usize) -> Result<Arc<Self>> {
        Self::with_offset(n, 0.5)
    }

    /// Grid with `τ_k = 2π(k + offset)/n`; a different offset moves nodes
    /// off an atom.
    pub fn with_offset(n: usize, offset: f64) -> Result<Arc<Self>> {
        if n < 8 || !n.is_power_of_two() {
            return Err(Error::InvalidGrid(n));
        }
        if !(offset > 0.0 && offset < 1.0) {
            return Err(Error::BadParameter(format!("grid offset {offset} outside (0, 1)")));
        }
        let nf = n as f64;
        let nodes: Vec<f64> = (0..n)
            .map(|k| {
                let tau = 2.0 * std::f64::consts::PI * (k as f64 + offset) / nf;
                -1.0 / (tau / 2.0).tan()
            })
            .collect();
        let weights = nodes.iter().map(|x| std::f64::consts::PI / nf * (1.0 + x * x)).collect();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        let lift = nodes.iter().map(|x| sqrt_pi * C64::new(*x, 1.0)).collect();
        let phase = (0..n)
            .map(|i| {
                let m = signed_mode(i, n) as f64;
                C64::from_polar(1.0, -2.0 * std::f64::consts::PI * m * offset / nf)
            })
            .collect();
        let mut planner = FftPlanner::new();
        Ok(Arc::new(BoundaryGrid {
            n,
            offset,
            nodes,
            weights,
            lift,
            phase,
            fft: planner.plan_fft_forward(n),
            ifft: planner.plan_fft_inverse(n),
            fft2: planner.plan_fft_forward(2 * n),
            ifft2: planner.plan_fft_inverse(2 * n),
        }))
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn offset(&self) -> f64 {
        self.offset
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Fourier coefficients of `√π(ξ+i)f` in FFT order (index `i` holds the
    /// mode `signed_mode(i)`).
    pub fn to_coefficients(&self, samples: &[C64]) -> Vec<C64> {
        let mut buf: Vec<C64> = samples.iter().zip(&self.lift).map(|(f, l)| f * l).collect();
        self.fft.process(&mut buf);
        let nf = self.n as f64;
        for (c, p) in buf.iter_mut().zip(&self.phase) {
            *c *= p / nf;
        }
        buf
    }

    /// Inverse of [`Self::to_coefficients`].
    pub fn from_coefficients(&self, coeffs: &[C64]) -> Vec<C64> {
        let mut buf: Vec<C64> = coeffs.iter().zip(&self.phase).map(|(c, p)| c * p.conj()).collect();
        self.ifft.process(&mut buf);
        for (g, l) in buf.iter_mut().zip(&self.lift) {
            *g /= l;
        }
        buf
    }

    /// `out[m] = Σ_j t_j b_{m+j}` for `m < out_len`, by zero-padded FFT.
    fn correlate(&self, t: &[C64], b: &[C64], out_len: usize) -> Vec<C64> {
        let len = 2 * self.n;
        debug_assert!(t.len() + b.len() <= len);
        let mut x = vec![zero(); len];
        for (slot, v) in x.iter_mut().zip(t) {
            *slot = v.conj();
        }
        let mut y = vec![zero(); len];
        y[..b.len()].copy_from_slice(b);
        self.fft2.process(&mut x);
        self.fft2.process(&mut y);
        let mut r: Vec<C64> = x.iter().zip(&y).map(|(a, b)| a.conj() * b).collect();
        self.ifft2.process(&mut r);
        r.truncate(out_len);
        for v in r.iter_mut() {
            *v /= len as f64;
        }
        r
    }
}

/// Mode number stored at FFT index `i` on an `n`-point grid.
pub fn signed_mode(i: usize, n: usize) -> i64 {
    if i < n / 2 {
        i as i64
    } else {
        i as i64 - n as i64
    }
}

/// Taylor coefficients of `S_μ(ζ) = exp(−μ(1+ζ)/(1−ζ))`, `μ ≥ 0`:
/// `s_k = e^{−μ} L_k^{(−1)}(2μ)` by the three-term Laguerre recurrence.
pub fn shift_coefficients(mu: f64, len: usize) -> Vec<f64> {
    let x = 2.0 * mu;
    let mut s = Vec::with_capacity(len);
    let (mut prev, mut cur) = (0.0, (-mu).exp());
    for k in 0..len {
        s.push(cur);
        let next = if k == 0 {
            -x * cur
        } else {
            ((2 * k) as f64 - x) * cur / (k + 1) as f64 - (k as f64 - 1.0) * prev / (k + 1) as f64
        };
        prev = cur;
        cur = next;
    }
    s
}

/// One channel `e^{i·freq·ξ} g(ξ)` sampled at the grid nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    pub freq: f64,
    pub samples: Vec<C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

/// Sum of exponential channels on a [`BoundaryGrid`].
#[derive(Debug, Clone)]
pub struct GridFunction {
    grid: Arc<BoundaryGrid>,
    channels: Vec<Channel>,
}

fn sup(samples: &[C64]) -> f64 {
    samples.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

impl GridFunction {
    fn build(grid: &Arc<BoundaryGrid>, channels: Vec<Channel>) -> Self {
        let mut merged: Vec<Channel> = Vec::new();
        for ch in channels {
            match merged.iter_mut().find(|m| (m.freq - ch.freq).abs() <= FREQ_TOL) {
                Some(m) => {
                    for (a, b) in m.samples.iter_mut().zip(&ch.samples) {
                        *a += b;
                    }
                }
                None => merged.push(ch),
            }
        }
        let top = merged.iter().map(|c| sup(&c.samples)).fold(0.0, f64::max);
        merged.retain(|c| {
            let s = sup(&c.samples);
            s > 0.0 && s >= PRUNE_REL * top
        });
        merged.sort_by(|a, b| a.freq.total_cmp(&b.freq));
        GridFunction {
            grid: grid.clone(),
            channels: merged,
        }
    }

    pub fn zero(grid: &Arc<BoundaryGrid>) -> Self {
        Self::build(grid, Vec::new())
    }

    pub fn from_samples(grid: &Arc<BoundaryGrid>, samples: Vec<C64>) -> Result<Self> {
        if samples.len() != grid.size() {
            return Err(Error::InvalidData(format!(
                "{} samples for a grid of {}",
                samples.len(),
                grid.size()
            )));
        }
        Ok(Self::build(grid, vec![Channel { freq: 0.0, samples }]))
    }

    pub fn from_fn(grid: &Arc<BoundaryGrid>, f: impl Fn(f64) -> C64) -> Self {
        let samples = grid.nodes().iter().map(|x| f(*x)).collect();
        Self::build(grid, vec![Channel { freq: 0.0, samples }])
    }

    pub fn from_partial_fractions(grid: &Arc<BoundaryGrid>, f: &PartialFractions) -> Result<Self> {
        Self::from_exp_rational(grid, &ExpRational::from_partial_fractions(f.clone()))
    }

    pub fn from_rational(grid: &Arc<BoundaryGrid>, f: &FactoredRational) -> Result<Self> {
        Self::from_exp_rational(grid, &ExpRational::from_rational(f))
    }

    /// Boundary values of an inner function as channel `λ_inf`.
    pub fn from_inner(grid: &Arc<BoundaryGrid>, theta: &InnerFunction) -> Result<Self> {
        Self::from_exp_rational(grid, &theta.to_exp_rational())
    }

    /// `Σ_k coeffs[k]·θ^k`, channel `kλ_inf` per power.
    pub fn inner_power_series(grid: &Arc<BoundaryGrid>, theta: &InnerFunction, coeffs: &[C64]) -> Result<Self> {
        let base = Self::from_inner(grid, theta)?;
        let base_samples = match base.channels.as_slice() {
            [ch] => ch.samples.clone(),
            _ => return Err(Error::InvalidData("inner function without boundary values".into())),
        };
        let mut power = vec![C64::new(1.0, 0.0); grid.size()];
        let mut channels = Vec::with_capacity(coeffs.len());
        for (k, c) in coeffs.iter().enumerate() {
            channels.push(Channel {
                freq: k as f64 * theta.lambda_inf(),
                samples: power.iter().map(|p| c * p).collect(),
            });
            for (p, b) in power.iter_mut().zip(&base_samples) {
                *p *= b;
            }
        }
        Ok(Self::build(grid, channels))
    }

    /// Samples every term in its own channel. Real poles are re-expanded
    /// around `Re p − i`; the remainder, which is regular whenever the sum
    /// is, is evaluated pointwise into channel 0.
    pub fn from_exp_rational(grid: &Arc<BoundaryGrid>, f: &ExpRational) -> Result<Self> {
        let n = grid.size();
        let mut channels = Vec::new();
        let mut remainder = vec![zero(); n];
        let mut has_remainder = false;
        for term in f.terms() {
            let mut smooth = PartialFractions::from_poly(term.coeff.poly().to_vec()).add(&term.coeff.retain_poles(|p| p.im != 0.0));
            let real_parts: Vec<_> = term.coeff.parts().iter().filter(|p| p.pole.im == 0.0).cloned().collect();
            for part in &real_parts {
                let anchor = C64::new(part.pole.re, -1.0);
                let u = part.pole - anchor;
                for (k0, c) in part.coeffs.iter().enumerate() {
                    let k = k0 + 1;
                    let mut coeffs = vec![zero(); k + ANCHOR_ORDER - 1];
                    for j in 0..ANCHOR_ORDER {
                        coeffs[k + j - 1] = c * binomial(k + j - 1, j) * u.powu(j as u32);
                    }
                    smooth = smooth.add(&PartialFractions::from_part(anchor, coeffs));
                }
            }
            let mut samples = Vec::with_capacity(n);
            for (idx, &x) in grid.nodes().iter().enumerate() {
                let z = C64::new(x, 0.0);
                let atomic = term.atomic_factor(z).map_err(|_| Error::AtomOnGridNode(idx))?;
                samples.push(smooth.evaluate(z)? * atomic);
                if !real_parts.is_empty() {
                    has_remainder = true;
                    let mut r = zero();
                    for part in &real_parts {
                        let anchor = C64::new(part.pole.re, -1.0);
                        let u = part.pole - anchor;
                        let inv_p = 1.0 / (z - part.pole);
                        let inv_q = 1.0 / (z - anchor);
                        for (k0, c) in part.coeffs.iter().enumerate() {
                            let k = k0 + 1;
                            let mut trunc = zero();
                            for j in 0..ANCHOR_ORDER {
                                trunc += binomial(k + j - 1, j) * u.powu(j as u32) * inv_q.powu((k + j) as u32);
                            }
                            r += c * (inv_p.powu(k as u32) - trunc);
                        }
                    }
                    remainder[idx] += (I * term.freq * z).exp() * atomic * r;
                }
            }
            channels.push(Channel {
                freq: term.freq,
                samples,
            });
        }
        if has_remainder {
            channels.push(Channel {
                freq: 0.0,
                samples: remainder,
            });
        }
        Ok(Self::build(grid, channels))
    }

    pub fn grid(&self) -> &Arc<BoundaryGrid> {
        &self.grid
    }

    pub fn channels(&self) -> &[Channel] {
        &self.channels
    }

    /// Pointwise values `Σ_μ e^{iμξ_k} g_μ(ξ_k)`.
    pub fn values(&self) -> Vec<C64> {
        let mut v = vec![zero(); self.grid.size()];
        for ch in &self.channels {
            for ((slot, g), x) in v.iter_mut().zip(&ch.samples).zip(self.grid.nodes()) {
                *slot += (I * ch.freq * x).exp() * g;
            }
        }
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        let channels = self.channels.iter().chain(&other.channels).cloned().collect();
        Self::build(&self.grid, channels)
    }

    pub fn scaled(&self, c: C64) -> Self {
        let channels = self
            .channels
            .iter()
            .map(|ch| Channel {
                freq: ch.freq,
                samples: ch.samples.iter().map(|g| g * c).collect(),
            })
            .collect();
        Self::build(&self.grid, channels)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scaled(C64::new(-1.0, 0.0)))
    }

    /// Pointwise product; frequencies add.
    pub fn mul(&self, other: &Self) -> Self {
        let mut channels = Vec::with_capacity(self.channels.len() * other.channels.len());
        let size_a: Vec<f64> = self.channels.iter().map(|c| sup(&c.samples)).collect();
        let size_b: Vec<f64> = other.channels.iter().map(|c| sup(&c.samples)).collect();
        let top = size_a.iter().fold(0.0, |m: f64, v| m.max(*v)) * size_b.iter().fold(0.0, |m: f64, v| m.max(*v));
        for (a, sa) in self.channels.iter().zip(&size_a) {
            for (b, sb) in other.channels.iter().zip(&size_b) {
                if sa * sb < PRUNE_REL * top {
                    continue;
                }
                channels.push(Channel {
                    freq: a.freq + b.freq,
                    samples: a.samples.iter().zip(&b.samples).map(|(x, y)| x * y).collect(),
                });
            }
        }
        Self::build(&self.grid, channels)
    }

    /// Pointwise conjugate on the line.
    pub fn conj(&self) -> Self {
        let channels = self
            .channels
            .iter()
            .map(|ch| Channel {
                freq: -ch.freq,
                samples: ch.samples.iter().map(|g| g.conj()).collect(),
            })
            .collect();
        Self::build(&self.grid, channels)
    }

    fn back(&self, coeffs: Vec<C64>) -> Channel {
        Channel {
            freq: 0.0,
            samples: self.grid.from_coefficients(&coeffs),
        }
    }

    fn project_channel(&self, ch: &Channel, sign: Sign) -> Vec<Channel> {
        let n = self.grid.size();
        let half = n / 2;
        let c = self.grid.to_coefficients(&ch.samples);
        if ch.freq.abs() <= FREQ_TOL {
            let kept = c
                .iter()
                .enumerate()
                .map(|(i, v)| {
                    let analytic = signed_mode(i, n) >= 0;
                    if analytic == (sign == Sign::Plus) {
                        *v
                    } else {
                        zero()
                    }
                })
                .collect();
            return vec![self.back(kept)];
        }
        let s = shift_coefficients(ch.freq.abs(), half + 1);
        if ch.freq > 0.0 {
            // anti-analytic part of S·G: D_{−m} = Σ_j s_j c_{−(m+j)}
            let mut a = vec![zero(); half + 1];
            for (k, slot) in a.iter_mut().enumerate().skip(1) {
                *slot = c[(n - k) % n];
            }
            let s: Vec<C64> = s.iter().map(|v| C64::new(*v, 0.0)).collect();
            let d = self.grid.correlate(&s, &a, half + 1);
            let mut coeffs = vec![zero(); n];
            for m in 1..=half {
                coeffs[n - m] = d[m];
            }
            let minus = self.back(coeffs);
            match sign {
                Sign::Minus => vec![minus],
                Sign::Plus => vec![
                    ch.clone(),
                    Channel {
                        freq: 0.0,
                        samples: minus.samples.iter().map(|v| -v).collect(),
                    },
                ],
            }
        } else {
            // analytic part of S̄·G: E_m = Σ_j s̄_j c_{m+j}
            let b: Vec<C64> = c[..half].to_vec();
            let s: Vec<C64> = s[..half].iter().map(|v| C64::new(*v, 0.0)).collect();
            let e = self.grid.correlate(&s, &b, half);
            let mut coeffs = vec![zero(); n];
            coeffs[..half].copy_from_slice(&e);
            let plus = self.back(coeffs);
            match sign {
                Sign::Plus => vec![plus],
                Sign::Minus => vec![
                    ch.clone(),
                    Channel {
                        freq: 0.0,
                        samples: plus.samples.iter().map(|v| -v).collect(),
                    },
                ],
            }
        }
    }

    /// Riesz projection `P⁺` (analytic modes, constant mode included) or
    /// `P⁻`.
    pub fn riesz_project(&self, sign: Sign) -> Self {
        let channels = self
            .channels
            .iter()
            .flat_map(|ch| self.project_channel(ch, sign))
            .collect();
        Self::build(&self.grid, channels)
    }

    pub fn project_plus(&self) -> Self {
        self.riesz_project(Sign::Plus)
    }

    pub fn project_minus(&self) -> Self {
        self.riesz_project(Sign::Minus)
    }

    /// Circle coefficients of the pointwise values in FFT order (see
    /// [`signed_mode`]).
    pub fn transport_to_circle(&self) -> Vec<C64> {
        self.grid.to_coefficients(&self.values())
    }

    /// Inverse of [`Self::transport_to_circle`].
    pub fn from_circle(grid: &Arc<BoundaryGrid>, coeffs: &[C64]) -> Result<Self> {
        if coeffs.len() != grid.size() {
            return Err(Error::InvalidData(format!(
                "{} coefficients for a grid of {}",
                coeffs.len(),
                grid.size()
            )));
        }
        Self::from_samples(grid, grid.from_coefficients(coeffs))
    }

    /// `∫ e^{iμξ} h(ξ) dξ` for one channel product `h`.
    fn channel_integral(&self, freq: f64, h: &[C64]) -> C64 {
        let grid = &self.grid;
        if freq.abs() <= FREQ_TOL {
            return h.iter().zip(grid.weights()).map(|(v, w)| v * *w).sum();
        }
        let n = grid.size();
        let half = n / 2;
        // (1+ξ²)h on the circle, through the plain Fourier transform
        let lifted: Vec<C64> = h
            .iter()
            .zip(grid.nodes())
            .map(|(v, x)| v * (1.0 + x * x))
            .collect();
        let mut buf = lifted;
        grid.fft.process(&mut buf);
        for (c, p) in buf.iter_mut().zip(&grid.phase) {
            *c *= p / n as f64;
        }
        let pi = std::f64::consts::PI;
        let s = shift_coefficients(freq.abs(), half + 1);
        if freq > 0.0 {
            pi * (0..=half).map(|k| s[k] * buf[(n - k) % n]).sum::<C64>()
        } else {
            pi * (0..half).map(|k| s[k] * buf[k]).sum::<C64>()
        }
    }

    /// `⟨f, g⟩ = ∫ f ḡ dξ`.
    pub fn inner_product(&self, other: &Self) -> C64 {
        let product = self.mul(&other.conj());
        product
            .channels
            .iter()
            .map(|ch| self.channel_integral(ch.freq, &ch.samples))
            .sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.inner_product(self).re.max(0.0).sqrt()
    }

    pub fn sup_norm(&self) -> f64 {
        sup(&self.values())
    }

    pub fn sup_distance(&self, other: &Self) -> f64 {
        self.sub(other).sup_norm()
    }

    /// CSV rows `xi,weight,re,im` of the pointwise values.
    pub fn write_csv(&self, mut out: impl Write) -> std::io::Result<()> {
        writeln!(out, "xi,weight,re,im")?;
        for ((x, w), v) in self.grid.nodes().iter().zip(self.grid.weights()).zip(self.values()) {
            writeln!(out, "{x:e},{w:e},{:e},{:e}", v.re, v.im)?;
        }
        Ok(())
    }
}

/// Result of `P_θ f = θP⁻θ̄P⁺f` on the grid.
#[derive(Debug, Clone)]
pub struct ModelProjection {
    pub projected: GridFunction,
    /// `sup |P_θ(P_θ f) − P_θ f|`.
    pub idempotency_residual: f64,
}

/// `θP⁻(θ̄P⁺f)` for a multiplier `θ` given by its boundary values.
pub fn apply_model_projection(theta: &GridFunction, f: &GridFunction) -> GridFunction {
    theta.mul(&theta.conj().mul(&f.project_plus()).project_minus())
}

pub fn project_model_numeric(theta: &GridFunction, f: &GridFunction) -> ModelProjection {
    let projected = apply_model_projection(theta, f);
    let twice = apply_model_projection(theta, &projected);
    ModelProjection {
        idempotency_residual: twice.sup_distance(&projected),
        projected,
    }
}
