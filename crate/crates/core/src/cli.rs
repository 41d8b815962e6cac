//! Command-line front end.
//!
//! Exit codes: 0 when every check passes, 1 when a verification fails and 2
//! for usage, input or IO errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::error::Error;
use crate::solitons::{self, SolitonSpec};
use crate::superpoly::Frame;
use crate::tau::TauPair;
use crate::tolerances;
use crate::verify::{self, Grid, IdentityReport, PdeForm};

#[derive(Debug, Parser)]
#[command(name = "susy-gardner", version, about = "Exact tau functions of the supersymmetric Gardner equation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build a tau pair from a JSON soliton spec.
    Build {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Overrides the spec's sigma.
        #[arg(long, allow_hyphen_values = true)]
        sigma: Option<f64>,
        /// Frame of the written tau pair.
        #[arg(long, default_value = "XT")]
        frame: Frame,
    },
    /// Run a verifier.
    Verify {
        #[command(subcommand)]
        check: VerifyCommand,
    },
    /// Sample the components of the superfield on a grid and write CSV.
    Sample {
        #[arg(long)]
        tau: PathBuf,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        out: PathBuf,
    },
    /// Long-wave limit of the one-soliton towards the lump.
    Limit {
        #[arg(long, allow_hyphen_values = true)]
        sigma: f64,
        #[arg(long, allow_hyphen_values = true)]
        k0: f64,
        /// Comma-separated, strictly decreasing.
        #[arg(long, value_delimiter = ',')]
        eps: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Interaction asymptotics of a mixed lump-soliton tau pair.
    Asymptotics {
        #[arg(long)]
        tau: PathBuf,
        /// Comma-separated times.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        times: Vec<f64>,
        #[arg(long, default_value_t = tolerances::ASYMPTOTIC)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum VerifyCommand {
    /// Exact residuals of both bilinear equations.
    Bilinear {
        #[arg(long)]
        tau: PathBuf,
        /// Frame to check in; defaults to the file's frame.
        #[arg(long)]
        frame: Option<Frame>,
        #[arg(long, default_value_t = tolerances::EXACT)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Nonlinear equation at seeded random points, in the laboratory frame.
    Pde {
        #[arg(long)]
        tau: PathBuf,
        #[arg(long, default_value = "superfield")]
        form: PdeForm,
        #[arg(long, default_value_t = 16)]
        points: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Points are drawn from [-range, range]².
        #[arg(long, default_value_t = 10.0)]
        range: f64,
        #[arg(long, default_value_t = tolerances::JET)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Product identity and super-Hirota closed forms on random inputs.
    Identities {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = tolerances::EXACT)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct GridArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub xmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub xmax: f64,
    #[arg(long)]
    pub nx: usize,
    #[arg(long, allow_hyphen_values = true)]
    pub tmin: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub tmax: f64,
    #[arg(long)]
    pub nt: usize,
}

impl GridArgs {
    fn grid(self) -> Result<Grid, Error> {
        Grid::new(self.xmin, self.xmax, self.nx, self.tmin, self.tmax, self.nt)
    }
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

/// A failure that prevented the command from running.
#[derive(Debug)]
pub struct UsageError(pub String);

impl From<Error> for UsageError {
    fn from(e: Error) -> Self {
        UsageError(e.to_string())
    }
}

type CliResult = Result<Outcome, UsageError>;

fn read(path: &Path) -> Result<String, UsageError> {
    fs::read_to_string(path).map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), UsageError> {
    fs::write(path, text).map_err(|e| UsageError(format!("cannot write {}: {e}", path.display())))
}

fn distinct(input: &Path, output: &Path) -> Result<(), UsageError> {
    if input == output {
        return Err(UsageError(format!(
            "input and output are the same file: {}",
            input.display()
        )));
    }
    Ok(())
}

fn positive(name: &str, v: f64) -> Result<(), UsageError> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(UsageError(format!("--{name} must be a positive number, got {v}")));
    }
    Ok(())
}

fn load_tau(path: &Path) -> Result<TauPair, UsageError> {
    TauPair::from_json(&read(path)?)
        .map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

fn write_report<T: Serialize>(out: Option<&Path>, report: &T) -> Result<(), UsageError> {
    if let Some(path) = out {
        let text = serde_json::to_string_pretty(report).expect("reports serialize");
        write(path, &(text + "\n"))?;
    }
    Ok(())
}

fn build(config: &Path, out: &Path, sigma: Option<f64>, frame: Frame) -> CliResult {
    distinct(config, out)?;
    let mut spec: SolitonSpec = serde_json::from_str(&read(config)?)
        .map_err(|e| UsageError(format!("{}: malformed soliton spec: {e}", config.display())))?;
    if let Some(s) = sigma {
        spec.sigma = s;
    }
    let tau = solitons::build(&spec)?.to_frame(frame);
    write(out, &(tau.to_json() + "\n"))?;
    println!(
        "built {:?} ({}, sigma = {}, {} generators, frame {}) -> {}",
        spec.kind,
        spec.regime,
        spec.sigma,
        tau.num_generators(),
        frame,
        out.display()
    );
    Ok(Outcome::Pass)
}

fn verify(check: &VerifyCommand) -> CliResult {
    match check {
        VerifyCommand::Bilinear { tau, frame, tol, out } => {
            positive("tol", *tol)?;
            let mut pair = load_tau(tau)?;
            if let Some(frame) = frame {
                pair = pair.to_frame(*frame);
            }
            let reports = verify::bilinear_residual(&pair, *tol)?;
            for r in &reports {
                println!("{}", r.summary());
            }
            write_report(out.as_deref(), &reports)?;
            Ok(Outcome::from_pass(reports.iter().all(|r| r.pass)))
        }
        VerifyCommand::Pde {
            tau,
            form,
            points,
            seed,
            range,
            tol,
            out,
        } => {
            positive("tol", *tol)?;
            positive("range", *range)?;
            if *points == 0 {
                return Err(UsageError("--points must be at least 1".into()));
            }
            let pair = load_tau(tau)?.to_frame(Frame::Xt);
            let pts = verify::random_points(*seed, *points, -range, *range);
            println!("seed {seed}, {points} points in [-{range}, {range}]^2");
            let report = verify::pde_residual(&pair, *form, &pts, *tol)?;
            println!("{}", report.summary());
            write_report(out.as_deref(), &report)?;
            Ok(Outcome::from_pass(report.pass))
        }
        VerifyCommand::Identities { seed, tol, out } => {
            positive("tol", *tol)?;
            let report = verify::identity_suite(*seed, *tol)?;
            let (p, n) = IdentityReport::count(&report.product_identity);
            let (ap, an) = IdentityReport::count(&report.closed_forms);
            println!("seed {seed}");
            println!("product identity: {p}/{n} checks pass");
            println!("super-Hirota closed forms: {ap}/{an} checks pass");
            for c in report.product_identity.iter().chain(&report.closed_forms) {
                if !c.pass {
                    println!("  FAIL {} max_abs={:.3e}", c.name, c.max_abs);
                }
            }
            write_report(out.as_deref(), &report)?;
            Ok(Outcome::from_pass(report.pass()))
        }
    }
}

fn sample(tau: &Path, grid: GridArgs, out: &Path) -> CliResult {
    distinct(tau, out)?;
    let pair = load_tau(tau)?;
    let sample = verify::components(&pair, &grid.grid()?)?;
    write(out, &sample.to_csv())?;
    let names: Vec<String> = sample
        .monomials
        .iter()
        .map(|&m| crate::grassmann::monomial_name(m))
        .collect();
    println!(
        "{} x {} grid in frame {}; components: {}",
        grid.nx,
        grid.nt,
        sample.frame,
        names.join(", ")
    );
    println!("max |imaginary part| = {:.3e}", sample.max_imag());
    println!(
        "Gardner finite-difference residual of the theta component = {:.3e}",
        sample.gardner_fd_residual
    );
    println!("wrote {}", out.display());
    Ok(Outcome::Pass)
}

/// Grid on which the long-wave limit is compared.
pub fn longwave_grid() -> Grid {
    Grid::new(-5.0, 5.0, 21, -5.0, 5.0, 21).expect("static grid")
}

fn limit(sigma: f64, k0: f64, eps: &[f64], out: Option<&Path>) -> CliResult {
    let table = verify::longwave_convergence(sigma, k0, eps, &longwave_grid())?;
    println!("{:>10} {:>14} {:>10} {:>8}", "eps", "deviation", "ratio", "order");
    for row in &table.rows {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |v| format!("{v:.3}"));
        println!(
            "{:>10.3e} {:>14.6e} {:>10} {:>8}",
            row.eps,
            row.deviation,
            fmt(row.ratio),
            fmt(row.order)
        );
    }
    write_report(out, &table)?;
    let pass = table.min_order().is_none_or(|o| o >= 1.0);
    println!("minimum observed order: {}", table.min_order().map_or("-".into(), |o| format!("{o:.3}")));
    Ok(Outcome::from_pass(pass))
}

fn asymptotics(tau: &Path, times: &[f64], tol: f64, out: Option<&Path>) -> CliResult {
    positive("tol", tol)?;
    if times.is_empty() {
        return Err(UsageError("--times needs at least one value".into()));
    }
    let pair = load_tau(tau)?.to_frame(Frame::XT);
    let report = verify::asymptotic_shift_check(&pair, times, tol)?;
    for r in report.soliton_frame.iter().chain(&report.rational_frame) {
        println!(
            "T = {:>8}  {:<13} max_dev = {:.3e} {}",
            r.t,
            r.target,
            r.max_dev,
            if r.pass { "PASS" } else { "FAIL" }
        );
    }
    for s in &report.shifts {
        println!(
            "T = {:>8}  shift 1: {:.6}  theta*xi1: {:.6}  theta*xi2: {:.6}  xi1*xi2: {:.6}",
            s.t, s.scalar, s.theta_xi10, s.theta_xi2, s.xi10_xi2
        );
    }
    write_report(out, &report)?;
    Ok(Outcome::from_pass(
        report.soliton_frame_pass() && report.rational_frame_pass(),
    ))
}

/// Runs a parsed command.
pub fn run(cli: &Cli) -> CliResult {
    match &cli.command {
        Command::Build {
            config,
            out,
            sigma,
            frame,
        } => build(config, out, *sigma, *frame),
        Command::Verify { check } => verify(check),
        Command::Sample { tau, grid, out } => sample(tau, *grid, out),
        Command::Limit { sigma, k0, eps, out } => limit(*sigma, *k0, eps, out.as_deref()),
        Command::Asymptotics { tau, times, tol, out } => asymptotics(tau, times, *tol, out.as_deref()),
    }
}

/// Entry point of the binary.
pub fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
