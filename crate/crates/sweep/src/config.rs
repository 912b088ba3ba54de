//! Sweep configuration: a TOML file plus command-line overrides.
//!
//! Keys (all lengths in cm, densities in cm⁻³):
//!
//! ```toml
//! gamma = 2.4e-5          # required, > 0
//! radius = 1e-4           # required, > 0
//! n_total = 1e6           # required, > 0
//! t_min = 0.2             # default 0.2
//! t_max = 2.0             # default 2.0
//! t_steps = 61            # default 61, >= 2
//! densities = [1e14]      # explicit list, or the linear grid below
//! n_min = 1e13            # default 1e13
//! n_max = 2e14            # default 2e14
//! n_steps = 41            # default 41
//! l_ab = "infinite"       # "infinite" or a distance > 2 * radius
//! oracle_samples = 0      # Monte Carlo draws per integral, 0 disables
//! seed = 1
//! paper_constants = true  # 2.612 instead of the full-precision zeta(3/2)
//! workers = 4             # default: all cores
//! csv = "sweep.csv"
//! svg = "sweep.svg"       # optional
//! ```

use std::fmt;
use std::path::PathBuf;

use bec_entangle::montecarlo::MIN_SAMPLES;
use bec_entangle::{Separation, ZetaConstant};
use serde::Deserialize;

pub const DEFAULT_T_MIN: f64 = 0.2;
pub const DEFAULT_T_MAX: f64 = 2.0;
pub const DEFAULT_T_STEPS: usize = 61;
pub const DEFAULT_N_MIN: f64 = 1e13;
pub const DEFAULT_N_MAX: f64 = 2e14;
pub const DEFAULT_N_STEPS: usize = 41;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_CSV: &str = "sweep.csv";

#[derive(Debug, Clone, PartialEq)]
pub enum ConfigError {
    Parse(String),
    Invalid(Vec<String>),
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConfigError::Parse(msg) => write!(f, "config parse error: {msg}"),
            ConfigError::Invalid(list) => {
                write!(f, "invalid config ({} problem{}):", list.len(), if list.len() == 1 { "" } else { "s" })?;
                for item in list {
                    write!(f, "\n  - {item}")?;
                }
                Ok(())
            }
        }
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum RawSeparation {
    Distance(f64),
    Keyword(String),
}

/// The file as written, every key optional.
#[derive(Debug, Clone, Default, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawConfig {
    pub gamma: Option<f64>,
    pub radius: Option<f64>,
    pub n_total: Option<f64>,
    pub t_min: Option<f64>,
    pub t_max: Option<f64>,
    pub t_steps: Option<usize>,
    pub densities: Option<Vec<f64>>,
    pub n_min: Option<f64>,
    pub n_max: Option<f64>,
    pub n_steps: Option<usize>,
    pub l_ab: Option<RawSeparation>,
    pub oracle_samples: Option<u64>,
    pub seed: Option<u64>,
    pub paper_constants: Option<bool>,
    pub workers: Option<usize>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

/// Values given on the command line; `Some` wins over the file.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub oracle_samples: Option<u64>,
    pub workers: Option<usize>,
    pub paper_constants: Option<bool>,
    pub csv: Option<PathBuf>,
    pub svg: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub t_min: f64,
    pub t_max: f64,
    pub t_steps: usize,
    pub densities: Vec<f64>,
    pub radius: f64,
    pub gamma: f64,
    pub n_total: f64,
    pub l_ab: Separation<f64>,
    pub oracle_samples: u64,
    pub seed: u64,
    pub paper_constants: bool,
    pub workers: Option<usize>,
    pub csv: PathBuf,
    pub svg: Option<PathBuf>,
}

impl SweepConfig {
    /// t_min, ..., t_max with t_steps points; the end points are exact.
    pub fn temperatures(&self) -> Vec<f64> {
        linspace(self.t_min, self.t_max, self.t_steps)
    }

    pub fn zeta(&self) -> ZetaConstant {
        if self.paper_constants { ZetaConstant::Rounded } else { ZetaConstant::Exact }
    }

    /// Number of (t, n) grid points.
    pub fn len(&self) -> usize {
        self.t_steps * self.densities.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

pub fn linspace(lo: f64, hi: f64, steps: usize) -> Vec<f64> {
    match steps {
        0 => Vec::new(),
        1 => vec![lo],
        _ => {
            let last = (steps - 1) as f64;
            (0..steps)
                .map(|i| if i + 1 == steps { hi } else { lo + (hi - lo) * (i as f64 / last) })
                .collect()
        }
    }
}

pub fn parse_raw(text: &str) -> Result<RawConfig, ConfigError> {
    toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string().trim_end().to_string()))
}

impl RawConfig {
    pub fn apply(&mut self, o: &Overrides) {
        if o.seed.is_some() {
            self.seed = o.seed;
        }
        if o.oracle_samples.is_some() {
            self.oracle_samples = o.oracle_samples;
        }
        if o.workers.is_some() {
            self.workers = o.workers;
        }
        if o.paper_constants.is_some() {
            self.paper_constants = o.paper_constants;
        }
        if o.csv.is_some() {
            self.csv = o.csv.clone();
        }
        if o.svg.is_some() {
            self.svg = o.svg.clone();
        }
    }

    /// Fills defaults and checks every range, reporting all violations.
    pub fn validate(&self) -> Result<SweepConfig, ConfigError> {
        let mut errs = Vec::new();
        let mut required = |name: &str, v: Option<f64>| match v {
            None => {
                errs.push(format!("{name}: missing required key"));
                f64::NAN
            }
            Some(x) if !(x > 0.0 && x.is_finite()) => {
                errs.push(format!("{name}: must be finite and > 0, got {x}"));
                x
            }
            Some(x) => x,
        };
        let gamma = required("gamma", self.gamma);
        let radius = required("radius", self.radius);
        let n_total = required("n_total", self.n_total);

        let t_min = self.t_min.unwrap_or(DEFAULT_T_MIN);
        let t_max = self.t_max.unwrap_or(DEFAULT_T_MAX);
        let t_steps = self.t_steps.unwrap_or(DEFAULT_T_STEPS);
        if !(t_min > 0.0 && t_min.is_finite()) {
            errs.push(format!("t_min: must be finite and > 0, got {t_min}"));
        }
        if !(t_max.is_finite() && t_max > t_min) {
            errs.push(format!("t_max: must be finite and > t_min = {t_min}, got {t_max} (degenerate grid)"));
        }
        if t_steps < 2 {
            errs.push(format!("t_steps: must be >= 2, got {t_steps}"));
        }

        let densities = match &self.densities {
            Some(list) => {
                for key in [("n_min", self.n_min.is_some()), ("n_max", self.n_max.is_some()), ("n_steps", self.n_steps.is_some())] {
                    if key.1 {
                        errs.push(format!("{}: cannot be combined with an explicit densities list", key.0));
                    }
                }
                if list.is_empty() {
                    errs.push("densities: list is empty".to_string());
                }
                for (i, &n) in list.iter().enumerate() {
                    if !(n > 0.0 && n.is_finite()) {
                        errs.push(format!("densities[{i}]: must be finite and > 0, got {n}"));
                    }
                }
                list.clone()
            }
            None => {
                let n_min = self.n_min.unwrap_or(DEFAULT_N_MIN);
                let n_max = self.n_max.unwrap_or(DEFAULT_N_MAX);
                let n_steps = self.n_steps.unwrap_or(DEFAULT_N_STEPS);
                if !(n_min > 0.0 && n_min.is_finite()) {
                    errs.push(format!("n_min: must be finite and > 0, got {n_min}"));
                }
                if n_steps == 0 {
                    errs.push("n_steps: must be >= 1".to_string());
                }
                if n_steps == 1 && n_max != n_min {
                    errs.push(format!("n_steps: a single density needs n_max = n_min, got {n_min} and {n_max}"));
                }
                if n_steps > 1 && !(n_max.is_finite() && n_max > n_min) {
                    errs.push(format!("n_max: must be finite and > n_min = {n_min}, got {n_max}"));
                }
                linspace(n_min, n_max, n_steps)
            }
        };

        let l_ab = match &self.l_ab {
            None => Separation::Infinite,
            Some(RawSeparation::Keyword(k)) if k.eq_ignore_ascii_case("infinite") => Separation::Infinite,
            Some(RawSeparation::Keyword(k)) => {
                errs.push(format!("l_ab: expected \"infinite\" or a distance in cm, got \"{k}\""));
                Separation::Infinite
            }
            Some(RawSeparation::Distance(d)) => {
                if !(d.is_finite() && *d > 2.0 * radius) {
                    errs.push(format!("l_ab: must be finite and > 2 * radius = {}, got {d}", 2.0 * radius));
                }
                Separation::Finite(*d)
            }
        };

        let oracle_samples = self.oracle_samples.unwrap_or(0);
        if oracle_samples != 0 && oracle_samples < MIN_SAMPLES {
            errs.push(format!("oracle_samples: must be 0 or >= {MIN_SAMPLES}, got {oracle_samples}"));
        }
        if self.workers == Some(0) {
            errs.push("workers: must be >= 1".to_string());
        }

        if !errs.is_empty() {
            return Err(ConfigError::Invalid(errs));
        }
        Ok(SweepConfig {
            t_min,
            t_max,
            t_steps,
            densities,
            radius,
            gamma,
            n_total,
            l_ab,
            oracle_samples,
            seed: self.seed.unwrap_or(DEFAULT_SEED),
            paper_constants: self.paper_constants.unwrap_or(true),
            workers: self.workers,
            csv: self.csv.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_CSV)),
            svg: self.svg.clone(),
        })
    }
}

/// Parses, fills defaults and range-checks a config file's text.
pub fn validate_config(text: &str) -> Result<SweepConfig, ConfigError> {
    parse_raw(text)?.validate()
}

/// [`validate_config`] with command-line overrides applied first.
pub fn load_config(text: &str, overrides: &Overrides) -> Result<SweepConfig, ConfigError> {
    let mut raw = parse_raw(text)?;
    raw.apply(overrides);
    raw.validate()
}
