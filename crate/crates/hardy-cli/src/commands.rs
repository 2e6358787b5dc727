//! One function per subcommand. Each returns a JSON document and a CSV
//! table; the binary picks one according to `--format`.

use std::path::Path;

use hardy::boundedness::{compare_criteria, StripSamplingPlan};
use hardy::inner_functions::{frostman_shift, lambda_function};
use hardy::model_space::{basis, decompose_sum, decomposition_gram_condition, EquivalentProjection};
use hardy::rational_algebra::{winding_index, PartialFractions};
use hardy::toeplitz_kernels::{
    kernel, kernel_decompose, member_rational, minimal_kernel, model_space_inner, ToeplitzSymbol,
};
use hardy::{BoundaryGrid, FactoredRational, GridFunction, InnerFunction, C64};
use nalgebra::DMatrix;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::config::{ConfigError, RunConfig};
use crate::parse::{format_inner, format_rational, format_symbol, parse_inner, parse_rational, parse_symbol, ParseError};
use crate::suite::{run_criterion, run_suite, SuiteReport, CRITERIA};

#[derive(Debug, Error)]
pub enum CommandError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{0}")]
    Compute(#[from] hardy::Error),
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

/// A command result in both output formats.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub json: Value,
    pub csv: String,
    /// False when a verdict failed; maps to exit code 1.
    pub success: bool,
}

impl Output {
    fn ok(json: Value, csv: String) -> Self {
        Output {
            json,
            csv,
            success: true,
        }
    }
}

#[derive(Serialize)]
struct PoleView {
    pole: [f64; 2],
    coeffs: Vec<[f64; 2]>,
}

#[derive(Serialize)]
struct PartialFractionsView {
    poly: Vec<[f64; 2]>,
    parts: Vec<PoleView>,
}

fn pair(z: C64) -> [f64; 2] {
    [z.re, z.im]
}

fn pf_view(f: &PartialFractions) -> Value {
    let view = PartialFractionsView {
        poly: f.poly().iter().map(|c| pair(*c)).collect(),
        parts: f
            .parts()
            .iter()
            .map(|p| PoleView {
                pole: pair(p.pole),
                coeffs: p.coeffs.iter().map(|c| pair(*c)).collect(),
            })
            .collect(),
    };
    serde_json::to_value(view).expect("plain data")
}

fn rationals(fs: &[FactoredRational]) -> Vec<String> {
    fs.iter().map(format_rational).collect()
}

fn list_csv(header: &str, items: &[String]) -> String {
    let mut out = format!("index,{header}\n");
    for (i, s) in items.iter().enumerate() {
        out.push_str(&format!("{i},\"{s}\"\n"));
    }
    out
}

pub fn kernel_cmd(symbol: &str) -> Result<Output, CommandError> {
    let g = parse_symbol(symbol)?;
    let total = g.total_rational()?;
    let kb = kernel(&g)?;
    let elements = kb.resolved();
    let members = elements
        .iter()
        .map(|e| member_rational(e, &g))
        .collect::<hardy::Result<Vec<bool>>>()?;
    let text = rationals(&elements);
    let json = json!({
        "symbol": format_symbol(&g),
        "winding": winding_index(&total)?,
        "dimension": kb.dim(),
        "basis": text,
        "verification": { "members": members, "all_members": members.iter().all(|m| *m) },
    });
    Ok(Output::ok(json, list_csv("element", &text)))
}

pub fn kernel_decompose_cmd(symbol: &str, blaschke: &str) -> Result<Output, CommandError> {
    let g = parse_symbol(symbol)?;
    let b = parse_inner(blaschke)?;
    let d = kernel_decompose(&g, &b)?;
    let small = rationals(&d.ker_bg.resolved());
    let comp = rationals(&d.complement.resolved());
    let json = json!({
        "symbol": format_symbol(&g),
        "blaschke": format_inner(&b),
        "kernel_bg": small,
        "maximal_function": format_rational(&d.phi_plus),
        "complement": comp,
        "verification": {
            "kernel_dimension": d.kernel_dim,
            "union_rank": d.union_rank,
            "intersection_rank": d.intersection_rank,
            "spans_kernel": d.spans_kernel,
        },
    });
    let mut csv = String::from("part,index,element\n");
    for (part, items) in [("kernel_bg", &small), ("complement", &comp)] {
        for (i, s) in items.iter().enumerate() {
            csv.push_str(&format!("{part},{i},\"{s}\"\n"));
        }
    }
    let success = d.intersection_rank == 0 && d.spans_kernel;
    Ok(Output { json, csv, success })
}

pub fn minimal_kernel_cmd(phi: &str) -> Result<Output, CommandError> {
    let phi = parse_rational(phi)?;
    let kb = minimal_kernel(&phi)?;
    let text = rationals(&kb.resolved());
    let theta = model_space_inner(&kb)?;
    let json = json!({
        "phi": format_rational(&phi),
        "dimension": kb.dim(),
        "basis": text,
        "model_space": theta.as_ref().map(format_inner),
    });
    Ok(Output::ok(json, list_csv("element", &text)))
}

pub fn model_basis_cmd(theta: &str) -> Result<Output, CommandError> {
    let theta = parse_inner(theta)?;
    let kb = basis(&theta)?;
    let text = rationals(&kb.resolved());
    let json = json!({ "theta": format_inner(&theta), "dimension": kb.dim(), "basis": text });
    Ok(Output::ok(json, list_csv("element", &text)))
}

pub fn decompose_cmd(theta1: &str, theta2: &str, f: &str) -> Result<Output, CommandError> {
    let (t1, t2) = (parse_inner(theta1)?, parse_inner(theta2)?);
    let f = parse_rational(f)?;
    let d = decompose_sum(&t1, &t2, &f.to_partial_fractions())?;
    let cond = decomposition_gram_condition(&t1, &t2)?;
    let json = json!({
        "theta1": format_inner(&t1),
        "theta2": format_inner(&t2),
        "f": format_rational(&f),
        "first": pf_view(&d.first),
        "second": pf_view(&d.second),
        "verification": {
            "reconstruction_residual": d.reconstruction_residual,
            "gram_condition": cond,
        },
    });
    let csv = format!(
        "reconstruction_residual,gram_condition\n{:e},{:e}\n",
        d.reconstruction_residual, cond
    );
    Ok(Output::ok(json, csv))
}

pub fn boundedness_cmd(theta: &str, plan: Option<&Path>, cfg: &RunConfig) -> Result<Output, CommandError> {
    let theta = parse_inner(theta)?;
    let plan: StripSamplingPlan = match plan {
        Some(p) => {
            let text = std::fs::read_to_string(p).map_err(|source| ConfigError::Io {
                path: p.to_path_buf(),
                source,
            })?;
            serde_json::from_str(&text).map_err(ConfigError::from)?
        }
        None => StripSamplingPlan::default(),
    };
    plan.validate()?;
    let cmp = compare_criteria(&theta, &plan, &cfg.tolerances.boundedness)?;
    let json = json!({
        "theta": format_inner(&theta),
        "k2": {
            "sup_estimate": cmp.k2.sup_estimate,
            "arg_max": pair(cmp.k2.arg_max),
            "trend": cmp.k2.trend,
            "growth": cmp.k2.growth,
            "verdict": cmp.k2.verdict,
        },
        "dyakonov": {
            "derivative_sup": cmp.dyakonov.derivative_sup,
            "derivative_bounded": cmp.dyakonov.derivative_bounded,
            "strip_infimum": cmp.dyakonov.strip_infimum,
            "modulus_bounded_below": cmp.dyakonov.modulus_bounded_below,
            "verdict": cmp.dyakonov.verdict,
        },
        "boundary_limit": { "infima": cmp.limit.infima, "verdict": cmp.limit.verdict },
        "consistent": cmp.consistent(),
        "note": "sampling evidence, not a proof",
    });
    let csv = cmp.k2.profile_csv();
    Ok(Output {
        json,
        csv,
        success: cmp.consistent(),
    })
}

pub fn frostman_cmd(theta: &str, a: C64, cfg: &RunConfig) -> Result<Output, CommandError> {
    let theta = parse_inner(theta)?;
    let shift = frostman_shift(&theta, a)?;
    let grid = BoundaryGrid::new(cfg.grid_size)?;
    let projection = EquivalentProjection::frostman(&grid, &shift)?;
    let probe = GridFunction::from_rational(&grid, &FactoredRational::linear(C64::new(0.3, -1.0)).inv()?)?;
    let diag = projection.diagnostics(&probe);
    // h₋·b·h₊ against θ at a few points of the closed upper half-plane
    let mut worst = 0.0f64;
    for z in [C64::new(0.0, 1.0), C64::new(1.5, 0.5), C64::new(-2.0, 0.0), C64::new(0.7, 2.0)] {
        let product = shift.h_minus(z)? * shift.b(z)? * shift.h_plus(z)?;
        let exact = theta.eval(z)?;
        worst = worst.max((product - exact).norm() / exact.norm().max(1.0));
    }
    let mut json = json!({
        "theta": format_inner(&theta),
        "a": pair(a),
        "b_power_coefficients": shift.b_power_coefficients(1e-14).iter().map(|c| pair(*c)).collect::<Vec<_>>(),
        "factorization_residual": worst,
        "projection": {
            "grid_size": cfg.grid_size,
            "idempotency_residual": diag.idempotency_residual,
            "range_residual": diag.range_residual,
        },
    });
    if theta.zeros().is_empty() && theta.atoms().is_empty() && theta.lambda_inf() > 0.0 {
        let lam = GridFunction::from_exp_rational(&grid, &lambda_function(&theta, 0.0)?.to_exp_rational())?;
        json["projection"]["lambda_fixed_residual"] = json!(projection.apply(&lam).sup_distance(&lam));
    }
    let csv = format!(
        "factorization_residual,idempotency_residual\n{:e},{:e}\n",
        worst, diag.idempotency_residual
    );
    Ok(Output::ok(json, csv))
}

pub fn suite_cmd(cfg: &RunConfig, criterion: Option<usize>) -> Result<Output, CommandError> {
    let report = match criterion {
        Some(id) if (1..=CRITERIA.len()).contains(&id) => {
            let c = run_criterion(cfg, id);
            SuiteReport {
                seed: cfg.seed,
                grid_size: cfg.grid_size,
                all_pass: c.pass,
                criteria: vec![c],
            }
        }
        Some(id) => return Err(CommandError::Usage(format!("no criterion {id}"))),
        None => run_suite(cfg),
    };
    Ok(Output {
        json: serde_json::to_value(&report).expect("plain data"),
        csv: report.to_csv(),
        success: report.all_pass,
    })
}

/// Smallest value of `‖P⁺(gφ)‖/‖φ‖` over `φ ∈ span{(ξ+i)^{-1-k} : k < count}`,
/// from the Gram matrices of the candidates and of their residuals.
fn span_residual(candidates: &[GridFunction], residuals: &[GridFunction]) -> f64 {
    let n = candidates.len();
    let gram = |fs: &[GridFunction]| DMatrix::<C64>::from_fn(n, n, |i, j| fs[j].inner_product(&fs[i]));
    let Some(chol) = gram(candidates).cholesky() else {
        return f64::NAN;
    };
    let l_inv = chol.l().try_inverse().expect("triangular with positive diagonal");
    let m = &l_inv * gram(residuals) * l_inv.adjoint();
    let m = (&m + m.adjoint()).scale(0.5);
    m.symmetric_eigenvalues().iter().cloned().fold(f64::INFINITY, f64::min).max(0.0).sqrt()
}

const DEMO_NARRATIVE: &str = "\
Symbol g(x) = e^{ix}·e^{i/x}, the product of the inner function e^{ix} with the \
conjugate of the singular inner function exp(-i/x) (a point mass at 0). \
Analytic argument: T_{e^{i/x}} has trivial kernel since its conjugate symbol is \
inner, and multiplying by the inner e^{ix} cannot create kernel; Coburn's lemma \
then makes ker T_g trivial. The table below only shows how far candidate kernel \
elements are from membership as the grid is refined. It is NOT a verdict: the \
essential singularity at 0 cannot be resolved by sampling.";

pub fn demo_annihilation_cmd(max_candidates: usize) -> Result<Output, CommandError> {
    let e1 = InnerFunction::exp_inf(1.0)?;
    let atom = InnerFunction::new(C64::new(1.0, 0.0), Vec::new(), 0.0, vec![(0.0, 1.0)])?;
    let symbol = ToeplitzSymbol {
        rational: FactoredRational::constant(C64::new(1.0, 0.0)),
        conj_inner: Some(atom),
        inner: Some(e1),
    };
    let g = symbol.to_exp_rational();
    let mut rows = Vec::new();
    let mut csv = String::from("grid_size,candidates,min_relative_residual\n");
    for log_n in [10u32, 12, 14] {
        let grid = BoundaryGrid::new(1 << log_n)?;
        let gg = GridFunction::from_exp_rational(&grid, &g)?;
        let mut candidates = Vec::new();
        let mut residuals = Vec::new();
        for k in 0..max_candidates {
            let phi = FactoredRational::linear(C64::new(0.0, -1.0)).powi(-(k as i32) - 1)?;
            let f = GridFunction::from_rational(&grid, &phi)?;
            residuals.push(gg.mul(&f).project_plus());
            candidates.push(f);
            let r = span_residual(&candidates, &residuals);
            csv.push_str(&format!("{},{},{:e}\n", 1usize << log_n, k + 1, r));
            rows.push(json!({ "grid_size": 1usize << log_n, "candidates": k + 1, "min_relative_residual": r }));
        }
    }
    let json = json!({ "label": "NON-VERDICT", "narrative": DEMO_NARRATIVE, "residual_trend": rows });
    Ok(Output::ok(json, csv))
}
