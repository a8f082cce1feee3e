//! Argument parsing and dispatch for the `qwalk` binary.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::bundled;
use crate::commands::{self, LiftTarget, Settings, DEFAULT_TOL};
use crate::error::{CliError, CliResult};
use crate::examples;
use crate::render;
use crate::report::Report;

#[derive(Debug, Parser)]
#[command(name = "qwalk", version, about = "Spectra, eigenvectors and determinant identities of quaternionic Szegedy walks")]
pub struct Cli {
    /// Tolerance for identity checks, oracle matching and eigenvector residuals.
    #[arg(long, global = true, env = "QWALK_TOL", default_value_t = DEFAULT_TOL)]
    pub tol: f64,

    /// Also write the machine-readable result to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Full right spectrum of the walk's transition matrix.
    Spectrum {
        /// Instance file or bundled instance name.
        instance: String,
        /// Diagonalize ψ(U) directly and diff against the mapped spectrum.
        #[arg(long)]
        oracle: bool,
        /// Lift eigenvectors and compute the ±1 eigenspaces.
        #[arg(long)]
        eigenvectors: bool,
        /// Report a direct spectrum even when the unitarity condition fails.
        #[arg(long)]
        force: bool,
    },
    /// Structural identities, unitarity and determinant formulas.
    Verify(VerifyArgs),
    /// Lift W̃-eigenvectors to eigenvectors of U.
    Lift {
        instance: String,
        /// Eigenvalue of ψ(W̃) to lift.
        #[arg(long, allow_hyphen_values = true, conflicts_with = "all", required_unless_present = "all")]
        mu: Option<f64>,
        /// Every eigenvalue, plus the ±1 eigenvectors.
        #[arg(long)]
        all: bool,
    },
    /// Run the golden examples.
    Examples,
    /// Print a bundled instance or a seeded random one.
    Generate {
        /// Bundled instance name.
        #[arg(conflicts_with = "random", required_unless_present = "random")]
        name: Option<String>,
        /// Graph spec such as K4, P3, C5, star3+loop or K3+loops.
        #[arg(long, requires = "seed")]
        random: Option<String>,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Instance file or bundled instance name.
    #[arg(conflicts_with = "random", required_unless_present = "random")]
    pub instance: Option<String>,
    /// Graph spec for random instances.
    #[arg(long)]
    pub random: Option<String>,
    /// First seed of the random batch.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    /// Sample points on |t| = 1/4 for the determinant identities.
    #[arg(long, default_value_t = 8)]
    pub samples: usize,
    /// Random phase for the sample points.
    #[arg(long)]
    pub sample_seed: Option<u64>,
}

/// What a run produced: text for stdout and whether every check passed.
pub struct Outcome {
    pub stdout: String,
    pub pass: bool,
}

fn write_output(path: &Option<PathBuf>, text: &str) -> CliResult<()> {
    if let Some(p) = path {
        fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn finish(mut report: Report, output: &Option<PathBuf>) -> CliResult<Outcome> {
    report.finish();
    write_output(output, &report.to_json())?;
    Ok(Outcome { stdout: render::report(&report), pass: report.pass })
}

pub fn run(cli: Cli) -> CliResult<Outcome> {
    if !(cli.tol.is_finite() && cli.tol > 0.0) {
        return Err(CliError::Input(format!("--tol must be a positive number, got {}", cli.tol)));
    }
    let mut s = Settings { tol: cli.tol, ..Settings::default() };
    match cli.command {
        Command::Spectrum { instance, oracle, eigenvectors, force } => {
            let inst = commands::load_instance(&instance)?;
            s.oracle = oracle;
            s.eigenvectors = eigenvectors;
            s.force = force;
            let mut report = Report::new("spectrum", s.tol);
            report.seeds.extend(inst.seed);
            report.instances.push(commands::spectrum(&inst, &s)?);
            finish(report, &cli.output)
        }
        Command::Verify(v) => {
            if v.samples == 0 {
                return Err(CliError::Input("--samples must be at least 1".into()));
            }
            s.samples = v.samples;
            s.sample_seed = v.sample_seed;
            let mut report = match (&v.instance, &v.random) {
                (_, Some(spec)) => commands::verify_random(spec, v.seed, v.count, &s)?,
                (Some(path), None) => {
                    let inst = commands::load_instance(path)?;
                    let mut r = Report::new("verify", s.tol);
                    r.seeds.extend(inst.seed);
                    r.instances.push(commands::verify(&inst, &s)?);
                    r
                }
                (None, None) => return Err(CliError::Input("verify needs an instance or --random".into())),
            };
            report.seeds.extend(v.sample_seed);
            finish(report, &cli.output)
        }
        Command::Lift { instance, mu, all } => {
            let inst = commands::load_instance(&instance)?;
            let target = match (mu, all) {
                (_, true) => LiftTarget::All,
                (Some(m), false) => LiftTarget::Mu(m),
                (None, false) => return Err(CliError::Input("lift needs --mu or --all".into())),
            };
            let mut report = Report::new("lift", s.tol);
            report.seeds.extend(inst.seed);
            report.instances.push(commands::lift(&inst, target, &s)?);
            finish(report, &cli.output)
        }
        Command::Examples => {
            let mut report = Report::new("examples", s.tol);
            report.examples = examples::run()?;
            finish(report, &cli.output)
        }
        Command::Generate { name, random, seed } => {
            let text = match (name, random, seed) {
                (_, Some(spec), Some(seed)) => commands::generate(&spec, seed)?.2,
                (Some(name), None, _) => bundled::bundled(&name)
                    .ok_or_else(|| {
                        CliError::Input(format!("no bundled instance {name} (bundled: {})", bundled::names().join(", ")))
                    })?
                    .to_string(),
                _ => return Err(CliError::Input("generate needs a bundled name or --random SPEC --seed S".into())),
            };
            write_output(&cli.output, &text)?;
            Ok(Outcome { stdout: text, pass: true })
        }
    }
}
