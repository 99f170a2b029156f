//! Run configuration: command-line flags override `key = value` config files,
//! which override the built-in defaults.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use pdmchan_core::analytic::Caps;
use pdmchan_core::model::{AmbiguityParams, ChannelModel, Geometry};
use pdmchan_core::numeric::Grid1D;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GeometryArg {
    Parallel,
    Cylinder,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// Flags shared by every subcommand.
#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[arg(long, value_enum)]
    pub geometry: Option<GeometryArg>,
    #[arg(long, allow_hyphen_values = true)]
    pub q: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub k: Option<f64>,
    /// Cylinder radius.
    #[arg(long = "R", allow_hyphen_values = true)]
    pub radius: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<f64>,
    #[arg(long)]
    pub n_max: Option<u32>,
    #[arg(long)]
    pub l_max: Option<u32>,
    #[arg(long)]
    pub m_max: Option<u32>,
    #[arg(long)]
    pub s_max: Option<u32>,
    /// Interior points of the finite-difference grid.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Truncation of the x-domain (default 12/q).
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// `key = value` configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Degeneracy grouping tolerance (`degeneracies`) or cross-validation
    /// tolerance (`verify`).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Report energies divided by q².
    #[arg(long)]
    pub in_units_of_q2: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub geometry: GeometryArg,
    pub q: f64,
    pub k: f64,
    pub radius: f64,
    pub alpha: f64,
    pub beta: f64,
    pub caps: Caps,
    pub grid_points: usize,
    pub x_max: Option<f64>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub tol: Option<f64>,
    pub in_units_of_q2: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            geometry: GeometryArg::Parallel,
            q: 1.0,
            k: 1.0,
            radius: 1.0,
            alpha: 0.0,
            beta: -1.0,
            caps: Caps::default(),
            grid_points: 8000,
            x_max: None,
            format: Format::Csv,
            output: None,
            tol: None,
            in_units_of_q2: false,
        }
    }
}

impl RunConfig {
    pub fn resolve(args: &CommonArgs) -> Result<Self, CliError> {
        let mut cfg = Self::default();
        if let Some(path) = &args.config {
            cfg.apply_file(path)?;
        }
        cfg.apply_flags(args);
        cfg.model()?;
        cfg.grid()?;
        if let Some(tol) = cfg.tol {
            if tol.is_nan() || tol < 0.0 {
                return Err(CliError::Usage(format!("--tol must be >= 0, got {tol}")));
            }
        }
        Ok(cfg)
    }

    fn apply_flags(&mut self, a: &CommonArgs) {
        macro_rules! take {
            ($($field:ident => $target:expr),* $(,)?) => {
                $(if let Some(v) = a.$field.clone() { $target = v; })*
            };
        }
        take! {
            geometry => self.geometry,
            q => self.q,
            k => self.k,
            radius => self.radius,
            alpha => self.alpha,
            beta => self.beta,
            n_max => self.caps.n_max,
            l_max => self.caps.l_max,
            m_max => self.caps.m_max,
            s_max => self.caps.s_max,
            grid_points => self.grid_points,
            format => self.format,
        }
        if a.x_max.is_some() {
            self.x_max = a.x_max;
        }
        if a.output.is_some() {
            self.output = a.output.clone();
        }
        if a.tol.is_some() {
            self.tol = a.tol;
        }
        self.in_units_of_q2 |= a.in_units_of_q2;
    }

    fn apply_file(&mut self, path: &Path) -> Result<(), CliError> {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Usage(format!("{}:{}: expected `key = value`", path.display(), lineno + 1)))?;
            self.set(key.trim(), value.trim())
                .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), lineno + 1)))?;
        }
        Ok(())
    }

    fn set(&mut self, key: &str, value: &str) -> Result<(), String> {
        fn num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, String> {
            v.parse().map_err(|_| format!("invalid value `{v}` for `{key}`"))
        }
        match key.replace('-', "_").as_str() {
            "geometry" => {
                self.geometry = GeometryArg::from_str(value, true).map_err(|_| format!("unknown geometry `{value}`"))?
            }
            "q" => self.q = num(key, value)?,
            "k" => self.k = num(key, value)?,
            "R" | "r" | "radius" => self.radius = num(key, value)?,
            "alpha" => self.alpha = num(key, value)?,
            "beta" => self.beta = num(key, value)?,
            "n_max" => self.caps.n_max = num(key, value)?,
            "l_max" => self.caps.l_max = num(key, value)?,
            "m_max" => self.caps.m_max = num(key, value)?,
            "s_max" => self.caps.s_max = num(key, value)?,
            "grid_points" => self.grid_points = num(key, value)?,
            "x_max" => self.x_max = Some(num(key, value)?),
            "format" => self.format = Format::from_str(value, true).map_err(|_| format!("unknown format `{value}`"))?,
            "output" => self.output = Some(PathBuf::from(value)),
            "tol" => self.tol = Some(num(key, value)?),
            "in_units_of_q2" => self.in_units_of_q2 = num(key, value)?,
            other => return Err(format!("unknown key `{other}`")),
        }
        Ok(())
    }

    pub fn model(&self) -> Result<ChannelModel, CliError> {
        let geometry = match self.geometry {
            GeometryArg::Parallel => Geometry::Parallelepipedal,
            GeometryArg::Cylinder => Geometry::Cylindrical { radius: self.radius },
        };
        ChannelModel::new(geometry, self.q, self.k, AmbiguityParams::new(self.alpha, self.beta))
            .map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn grid(&self) -> Result<Grid1D, CliError> {
        let x_max = self.x_max.unwrap_or(12.0 / self.q);
        Grid1D::new(0.0, x_max, self.grid_points).map_err(|e| CliError::Usage(e.to_string()))
    }

    /// Divisor applied to reported energies.
    pub fn energy_unit(&self) -> f64 {
        if self.in_units_of_q2 {
            self.q * self.q
        } else {
            1.0
        }
    }
}
