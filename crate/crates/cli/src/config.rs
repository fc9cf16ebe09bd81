use std::path::PathBuf;

use rabi_core::exact::DEFAULT_N_MAX;
use rabi_core::{FixedPointOptions, Method, ModelParams};
use thiserror::Error;

use crate::args::{CliCommand, Flags};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("missing --{0}")]
    Missing(&'static str),
    #[error("invalid --{flag}: {reason}")]
    Invalid { flag: &'static str, reason: String },
}

fn invalid(flag: &'static str, reason: impl Into<String>) -> ConfigError {
    ConfigError::Invalid { flag, reason: reason.into() }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Dynamics,
    Compare,
}

impl Command {
    pub fn as_str(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Dynamics => "dynamics",
            Command::Compare => "compare",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Coupling {
    Single(f64),
    /// Inclusive linear grid in g (equivalently in g/ω).
    Sweep {
        min: f64,
        max: f64,
        steps: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// Figure preset the run was derived from.
    pub preset: Option<u8>,
    pub omega_q: f64,
    pub omega: f64,
    pub coupling: Coupling,
    pub n_max: usize,
    pub t_max: f64,
    pub dt: f64,
    pub methods: Vec<Method>,
    pub levels: usize,
    pub normalize_trwa: bool,
    pub output: Option<PathBuf>,
    pub tol: f64,
}

impl RunConfig {
    fn base(command: Command) -> Self {
        Self {
            command,
            preset: None,
            omega_q: f64::NAN,
            omega: f64::NAN,
            coupling: Coupling::Single(f64::NAN),
            n_max: DEFAULT_N_MAX,
            t_max: 60.0,
            dt: 0.02,
            methods: Method::ALL.to_vec(),
            levels: 4,
            normalize_trwa: false,
            output: None,
            tol: FixedPointOptions::default().tol,
        }
    }

    /// Parameters of figure `id`: 1 and 2 are level sweeps over g/ω ∈ [0, 2]
    /// with 81 points, 3 to 5 are P(t) comparisons over t ∈ [0, 60].
    pub fn preset(id: u8) -> Result<Self, ConfigError> {
        let sweep = |omega_q: f64, omega: f64| {
            let mut cfg = Self::base(Command::Spectrum);
            cfg.omega_q = omega_q;
            cfg.omega = omega;
            cfg.coupling = Coupling::Sweep { min: 0.0, max: 2.0 * omega, steps: 81 };
            cfg.methods = vec![Method::Exact, Method::Trwa];
            cfg
        };
        let dynamics = |omega_q: f64, omega: f64, g: f64| {
            let mut cfg = Self::base(Command::Compare);
            cfg.omega_q = omega_q;
            cfg.omega = omega;
            cfg.coupling = Coupling::Single(g);
            cfg
        };
        let mut cfg = match id {
            1 => sweep(1.0, 0.5),
            2 => sweep(0.5, 1.0),
            3 => dynamics(1.0, 0.5, 0.4),
            4 => dynamics(0.5, 1.0, 0.5),
            5 => dynamics(0.25, 1.0, 1.0),
            other => return Err(invalid("figure", format!("no preset {other}, expected 1-5"))),
        };
        cfg.preset = Some(id);
        Ok(cfg)
    }

    pub fn from_cli(command: CliCommand) -> Result<Self, ConfigError> {
        let (mut cfg, flags) = match command {
            CliCommand::Spectrum(f) => (Self::base(Command::Spectrum), f),
            CliCommand::Dynamics(f) => (Self::base(Command::Dynamics), f),
            CliCommand::Compare(f) => (Self::base(Command::Compare), f),
            CliCommand::Figure { id, flags } => (Self::preset(id)?, flags),
        };
        cfg.apply(flags)?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn apply(&mut self, f: Flags) -> Result<(), ConfigError> {
        if let Some(v) = f.omega_q {
            self.omega_q = v;
        }
        if let Some(v) = f.omega {
            self.omega = v;
        }
        if let Some(g) = f.g {
            self.coupling = Coupling::Single(g);
        } else if f.g_min.is_some() || f.g_max.is_some() || f.g_steps.is_some() {
            let (min, max, steps) = match self.coupling {
                Coupling::Sweep { min, max, steps } => (Some(min), Some(max), Some(steps)),
                Coupling::Single(_) => (None, None, None),
            };
            self.coupling = Coupling::Sweep {
                min: f.g_min.or(min).ok_or(ConfigError::Missing("g-min"))?,
                max: f.g_max.or(max).ok_or(ConfigError::Missing("g-max"))?,
                steps: f.g_steps.or(steps).ok_or(ConfigError::Missing("g-steps"))?,
            };
        }
        if let Some(v) = f.n_max {
            self.n_max = v;
        }
        if let Some(v) = f.t_max {
            self.t_max = v;
        }
        if let Some(v) = f.dt {
            self.dt = v;
        }
        if let Some(mut v) = f.methods {
            v.sort();
            v.dedup();
            self.methods = v;
        }
        if let Some(v) = f.levels {
            self.levels = v;
        }
        if f.normalize_trwa {
            self.normalize_trwa = true;
        }
        if f.output.is_some() {
            self.output = f.output;
        }
        if let Some(v) = f.tol {
            self.tol = v;
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.omega_q.is_nan() {
            return Err(ConfigError::Missing("omega-q"));
        }
        if self.omega.is_nan() {
            return Err(ConfigError::Missing("omega"));
        }
        if let Coupling::Single(g) = self.coupling {
            if g.is_nan() {
                return Err(ConfigError::Missing("g"));
            }
        }
        for g in self.g_grid() {
            ModelParams::new(self.omega_q, self.omega, g).map_err(|e| invalid("omega-q/omega/g", e.to_string()))?;
        }
        if let Coupling::Sweep { min, max, steps } = self.coupling {
            if steps < 2 {
                return Err(invalid("g-steps", format!("need at least 2 points, got {steps}")));
            }
            if max.is_nan() || max < min {
                return Err(invalid("g-max", format!("{max} is below g-min {min}")));
            }
            if self.command != Command::Spectrum {
                return Err(invalid("g-min", "coupling sweeps are only supported by spectrum"));
            }
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(invalid("dt", format!("must be > 0, got {}", self.dt)));
        }
        if !(self.t_max > 0.0 && self.t_max.is_finite()) {
            return Err(invalid("t-max", format!("must be > 0, got {}", self.t_max)));
        }
        if self.methods.is_empty() {
            return Err(invalid("methods", "at least one method is required"));
        }
        if self.command == Command::Compare && !self.methods.contains(&Method::Exact) {
            return Err(invalid("methods", "compare needs exact as the reference"));
        }
        if self.levels == 0 || self.levels > 2 * (self.n_max + 1) {
            return Err(invalid("levels", format!("must be in 1..={}", 2 * (self.n_max + 1))));
        }
        if self.tol.is_nan() || self.tol <= 0.0 {
            return Err(invalid("tol", format!("must be > 0, got {}", self.tol)));
        }
        Ok(())
    }

    /// Coupling values of the run, in grid order.
    pub fn g_grid(&self) -> Vec<f64> {
        match self.coupling {
            Coupling::Single(g) => vec![g],
            Coupling::Sweep { min, max, steps } => {
                let last = steps.saturating_sub(1).max(1) as f64;
                (0..steps).map(|i| min + (max - min) * i as f64 / last).collect()
            }
        }
    }

    pub fn fixed_point(&self) -> FixedPointOptions {
        FixedPointOptions { tol: self.tol, ..FixedPointOptions::default() }
    }
}
