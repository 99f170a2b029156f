//! `pdmchan`: spectra, degeneracies, wavefunctions and self-verification for a
//! particle with mass `sech²(qx)` in a semi-infinite channel.

mod config;
mod output;

use std::fs;
use std::io::{self, Write};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use pdmchan_core::analytic::{
    degeneracy_report, enumerate_spectrum_with_tol, psi, DegeneracyKind, Point, QuantumNumbers, DEGENERACY_REL_TOL,
};
use pdmchan_core::verify::{run_suite, SuiteConfig};

use config::{CommonArgs, Format, GeometryArg, RunConfig};
use output::Sample;

#[derive(Debug)]
pub enum CliError {
    /// Bad flags, configuration or quantum numbers (exit 2).
    Usage(String),
    Runtime(anyhow::Error),
}

impl From<anyhow::Error> for CliError {
    fn from(e: anyhow::Error) -> Self {
        CliError::Runtime(e)
    }
}

#[derive(Parser)]
#[command(
    name = "pdmchan",
    version,
    about = "Position-dependent-mass particle in a semi-infinite channel"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Closed-form energy levels within the caps.
    Spectrum(CommonArgs),
    /// Degenerate levels with their symmetry tags.
    Degeneracies(CommonArgs),
    /// Samples one eigenfunction on a grid of points.
    Wavefunction {
        #[command(flatten)]
        common: CommonArgs,
        #[command(flatten)]
        wave: WaveArgs,
    },
    /// Runs every consistency check; exits 1 if any fails.
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Args)]
struct WaveArgs {
    #[arg(long, default_value_t = 0)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    l: u32,
    #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
    m: i32,
    #[arg(long, default_value_t = 1)]
    s: u32,
    /// `start:stop:count` or a single value.
    #[arg(long, default_value = "0:6:61", allow_hyphen_values = true)]
    x: String,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    rho: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    phi: Option<String>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("PDMCHAN_LOG", "warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Runtime(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Spectrum(common) => spectrum(&RunConfig::resolve(&common)?),
        Command::Degeneracies(common) => degeneracies(&RunConfig::resolve(&common)?),
        Command::Wavefunction { common, wave } => wavefunction(&RunConfig::resolve(&common)?, &wave),
        Command::Verify { common, inject_fault } => verify(&RunConfig::resolve(&common)?, inject_fault),
    }
}

fn emit(cfg: &RunConfig, text: &str) -> anyhow::Result<()> {
    match &cfg.output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn spectrum(cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let model = cfg.model()?;
    let entries = enumerate_spectrum_with_tol(&model, cfg.caps, DEGENERACY_REL_TOL)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    for w in model.warnings() {
        log::warn!("{w}");
    }
    let text = match cfg.format {
        Format::Csv => output::spectrum_csv(cfg, &entries),
        Format::Json => output::spectrum_json(cfg, &entries),
    };
    emit(cfg, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn degeneracies(cfg: &RunConfig) -> Result<ExitCode, CliError> {
    let model = cfg.model()?;
    let tol = cfg.tol.unwrap_or(DEGENERACY_REL_TOL);
    let entries = enumerate_spectrum_with_tol(&model, cfg.caps, tol).map_err(|e| CliError::Usage(e.to_string()))?;
    let classes: Vec<_> = degeneracy_report(&entries)
        .into_iter()
        .filter(|c| c.kind != DegeneracyKind::None)
        .collect();
    let text = match cfg.format {
        Format::Csv => output::degeneracies_csv(cfg, &classes),
        Format::Json => output::degeneracies_json(cfg, &classes, tol),
    };
    emit(cfg, &text)?;
    Ok(ExitCode::SUCCESS)
}

/// Parses `start:stop:count` or a single value.
fn parse_range(flag: &str, spec: &str) -> Result<Vec<f64>, CliError> {
    let bad = || {
        CliError::Usage(format!(
            "--{flag}: expected `start:stop:count` or a number, got `{spec}`"
        ))
    };
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |s: &str| s.trim().parse::<f64>().ok().filter(|v| v.is_finite());
    match parts.as_slice() {
        [v] => Ok(vec![num(v).ok_or_else(bad)?]),
        [a, b, c] => {
            let (a, b) = (num(a).ok_or_else(bad)?, num(b).ok_or_else(bad)?);
            let count: usize = c.trim().parse().map_err(|_| bad())?;
            match count {
                0 => Err(bad()),
                1 => Ok(vec![a]),
                _ => Ok((0..count)
                    .map(|i| a + (b - a) * i as f64 / (count - 1) as f64)
                    .collect()),
            }
        }
        _ => Err(bad()),
    }
}

fn wavefunction(cfg: &RunConfig, w: &WaveArgs) -> Result<ExitCode, CliError> {
    let model = cfg.model()?;
    let (qn, axes) = match cfg.geometry {
        GeometryArg::Parallel => {
            let m =
                u32::try_from(w.m).map_err(|_| CliError::Usage("--m must be >= 0 for the parallel channel".into()))?;
            (
                QuantumNumbers::Parallel { n: w.n, l: w.l, m },
                [
                    parse_range("x", &w.x)?,
                    parse_range("y", w.y.as_deref().unwrap_or("0"))?,
                    parse_range("z", w.z.as_deref().unwrap_or("0"))?,
                ],
            )
        }
        GeometryArg::Cylinder => {
            if w.s == 0 {
                return Err(CliError::Usage("--s must be >= 1".into()));
            }
            (
                QuantumNumbers::Cylinder { n: w.n, m: w.m, s: w.s },
                [
                    parse_range("x", &w.x)?,
                    parse_range("rho", w.rho.as_deref().unwrap_or("0"))?,
                    parse_range("phi", w.phi.as_deref().unwrap_or("0"))?,
                ],
            )
        }
    };
    let mut samples = Vec::with_capacity(axes.iter().map(Vec::len).product());
    for &a in &axes[0] {
        for &b in &axes[1] {
            for &c in &axes[2] {
                let point = match cfg.geometry {
                    GeometryArg::Parallel => Point::Cartesian { x: a, y: b, z: c },
                    GeometryArg::Cylinder => Point::Cylindrical { x: a, rho: b, phi: c },
                };
                let value = psi(&model, qn, point).map_err(|e| CliError::Usage(e.to_string()))?;
                samples.push(Sample {
                    coords: [a, b, c],
                    re: value.re,
                    im: value.im,
                });
            }
        }
    }
    let text = match cfg.format {
        Format::Csv => output::wavefunction_csv(cfg.geometry, &samples),
        Format::Json => output::wavefunction_json(cfg, &qn, &samples),
    };
    emit(cfg, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn verify(cfg: &RunConfig, inject_fault: bool) -> Result<ExitCode, CliError> {
    let model = cfg.model()?;
    let mut suite = SuiteConfig::new(cfg.caps, cfg.grid()?);
    if let Some(tol) = cfg.tol {
        suite.rel_tol = tol;
    }
    if inject_fault {
        suite.fault_energy_scale = 1.01;
    }
    let report = run_suite(&model, &suite).context("verification could not run")?;
    let summary = output::verify_summary(&report);
    let json = output::verify_json(cfg, &report);
    match (&cfg.output, cfg.format) {
        (Some(path), _) => {
            print!("{summary}");
            fs::write(path, json).with_context(|| format!("writing {}", path.display()))?;
        }
        (None, Format::Json) => {
            eprint!("{summary}");
            print!("{json}");
        }
        (None, Format::Csv) => print!("{summary}"),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
