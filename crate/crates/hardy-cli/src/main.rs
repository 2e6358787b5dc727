use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hardy::C64;
use hardy_cli::commands::{self, CommandError, Output};
use hardy_cli::config::{ConfigError, OutputFormat, RunConfig};

/// Toeplitz kernels, model spaces and boundedness evidence for symbols on
/// the real line.
#[derive(Parser)]
#[command(name = "hardy", version)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Basis of ker T_g.
    Kernel {
        #[arg(long)]
        symbol: String,
    },
    /// Split ker T_g into ker T_{Bg} and its complement.
    KernelDecompose {
        #[arg(long)]
        symbol: String,
        #[arg(long)]
        blaschke: String,
    },
    /// Minimal kernel containing a rational function.
    MinimalKernel {
        #[arg(long)]
        phi: String,
    },
    /// Basis of the model space of a finite Blaschke product.
    ModelBasis {
        #[arg(long)]
        theta: String,
    },
    /// Split f in K_{θ₁θ₂} into K_{θ₁} ⊕ θ₁K_{θ₂}.
    Decompose {
        #[arg(long)]
        theta1: String,
        #[arg(long)]
        theta2: String,
        #[arg(long)]
        f: String,
    },
    /// Sampling evidence on the boundedness of the model space kernels.
    Boundedness {
        #[arg(long)]
        theta: String,
        /// JSON strip sampling plan.
        #[arg(long)]
        plan: Option<PathBuf>,
        /// Also write the per-level profile as CSV.
        #[arg(long)]
        emit_profile: Option<PathBuf>,
    },
    /// Frostman shift of an inner function and its projection diagnostics.
    Frostman {
        #[arg(long)]
        theta: String,
        #[arg(long, allow_hyphen_values = true)]
        a_re: f64,
        #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
        a_im: f64,
    },
    /// Run the acceptance criteria.
    Suite {
        /// Run one criterion only.
        #[arg(long)]
        criterion: Option<usize>,
    },
    /// Residual trend for e^{ix}·e^{i/x}; a demonstration, not a verdict.
    DemoAnnihilation {
        #[arg(long, default_value_t = 4)]
        candidates: usize,
    },
}

fn config(cli: &Cli) -> Result<RunConfig, ConfigError> {
    let mut cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(format) = cli.format {
        cfg.output.format = format;
    }
    if let Some(out) = &cli.out {
        cfg.output.path = Some(out.clone());
    }
    Ok(cfg)
}

fn write(path: Option<&PathBuf>, text: &str) -> Result<(), CommandError> {
    let io = |source| CommandError::Io {
        path: path.map_or("stdout".into(), |p| p.display().to_string()),
        source,
    };
    match path {
        Some(p) => std::fs::write(p, text).map_err(io),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(io),
    }
}

fn run(cli: &Cli) -> Result<Output, CommandError> {
    let cfg = config(cli)?;
    let output = match &cli.command {
        Command::Kernel { symbol } => commands::kernel_cmd(symbol)?,
        Command::KernelDecompose { symbol, blaschke } => commands::kernel_decompose_cmd(symbol, blaschke)?,
        Command::MinimalKernel { phi } => commands::minimal_kernel_cmd(phi)?,
        Command::ModelBasis { theta } => commands::model_basis_cmd(theta)?,
        Command::Decompose { theta1, theta2, f } => commands::decompose_cmd(theta1, theta2, f)?,
        Command::Boundedness {
            theta,
            plan,
            emit_profile,
        } => {
            let out = commands::boundedness_cmd(theta, plan.as_deref(), &cfg)?;
            if let Some(path) = emit_profile {
                write(Some(path), &out.csv)?;
            }
            out
        }
        Command::Frostman { theta, a_re, a_im } => commands::frostman_cmd(theta, C64::new(*a_re, *a_im), &cfg)?,
        Command::Suite { criterion } => commands::suite_cmd(&cfg, *criterion)?,
        Command::DemoAnnihilation { candidates } => commands::demo_annihilation_cmd(*candidates)?,
    };
    let text = match cfg.output.format {
        OutputFormat::Json => serde_json::to_string_pretty(&output.json).expect("plain data") + "\n",
        OutputFormat::Csv => output.csv.clone(),
    };
    write(cfg.output.path.as_ref(), &text)?;
    Ok(output)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) if out.success => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
