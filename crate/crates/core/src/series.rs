//! Sampled `P(t)` curves for several methods on a common time grid, and the
//! deviation metrics between them.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Solver that produced a curve or a spectrum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Exact,
    Trwa,
    Rwa,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Exact, Method::Trwa, Method::Rwa];

    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Trwa => "trwa",
            Method::Rwa => "rwa",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exact" => Ok(Method::Exact),
            "trwa" => Ok(Method::Trwa),
            "rwa" => Ok(Method::Rwa),
            other => Err(Error::InvalidArgument(format!("unknown method '{other}'"))),
        }
    }
}

/// Uniform grid `t_i = i·dt` for `i = 0..=round(t_max/dt)`.
pub fn uniform_grid(t_max: f64, dt: f64) -> Result<Vec<f64>> {
    if !(dt > 0.0 && dt.is_finite()) {
        return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
    }
    if !(t_max > 0.0 && t_max.is_finite()) {
        return Err(Error::InvalidArgument(format!("t_max must be > 0, got {t_max}")));
    }
    let steps = (t_max / dt).round() as usize;
    Ok((0..=steps).map(|i| i as f64 * dt).collect())
}

/// Checks that `times` is non-empty, finite, non-negative and ascending.
pub fn validate_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("time grid is empty".into()));
    }
    if times.iter().any(|t| !t.is_finite() || *t < 0.0) {
        return Err(Error::InvalidArgument("times must be finite and >= 0".into()));
    }
    if times.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("times must be ascending".into()));
    }
    Ok(())
}

/// Deviation of one method's curve from a reference curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation {
    pub method: Method,
    pub reference: Method,
    /// `max_t |P_method − P_reference|`.
    pub max_abs: f64,
    /// Trapezoidal time average of `|P_method − P_reference|` over the window.
    pub time_avg: f64,
}

impl Deviation {
    pub fn between(times: &[f64], method: (Method, &[f64]), reference: (Method, &[f64])) -> Self {
        let diff: Vec<f64> = method.1.iter().zip(reference.1).map(|(a, b)| (a - b).abs()).collect();
        let max_abs = diff.iter().copied().fold(0.0, f64::max);
        let span = times.last().unwrap_or(&0.0) - times.first().unwrap_or(&0.0);
        let time_avg = if span > 0.0 {
            let area: f64 =
                times.windows(2).zip(diff.windows(2)).map(|(t, d)| 0.5 * (t[1] - t[0]) * (d[0] + d[1])).sum();
            area / span
        } else {
            diff.iter().sum::<f64>() / diff.len().max(1) as f64
        };
        Self { method: method.0, reference: reference.0, max_abs, time_avg }
    }
}

#[derive(Debug, Clone, PartialEq)]
struct Column {
    method: Method,
    values: Vec<f64>,
}

/// `P(t)` columns sharing one time grid. Whenever an exact column is present,
/// `metrics` holds the deviation of every other column from it.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeSeries {
    times: Vec<f64>,
    columns: Vec<Column>,
    metrics: Vec<Deviation>,
}

impl TimeSeries {
    pub fn new(times: Vec<f64>) -> Result<Self> {
        validate_times(&times)?;
        Ok(Self { times, columns: Vec::new(), metrics: Vec::new() })
    }

    pub fn single(times: Vec<f64>, method: Method, values: Vec<f64>) -> Result<Self> {
        let mut s = Self::new(times)?;
        s.push(method, values)?;
        Ok(s)
    }

    /// Adds (or replaces) the column for `method`.
    pub fn push(&mut self, method: Method, values: Vec<f64>) -> Result<()> {
        if values.len() != self.times.len() {
            return Err(Error::InvalidArgument(format!(
                "column {method} has {} samples, grid has {}",
                values.len(),
                self.times.len()
            )));
        }
        match self.columns.iter_mut().find(|c| c.method == method) {
            Some(c) => c.values = values,
            None => self.columns.push(Column { method, values }),
        }
        self.columns.sort_by_key(|c| c.method);
        self.metrics = self.compute_metrics();
        Ok(())
    }

    /// Merges the columns of `other`, which must share this grid.
    pub fn merge(&mut self, other: TimeSeries) -> Result<()> {
        if other.times != self.times {
            return Err(Error::InvalidArgument("cannot merge series on different grids".into()));
        }
        for c in other.columns {
            self.push(c.method, c.values)?;
        }
        Ok(())
    }

    pub fn times(&self) -> &[f64] {
        &self.times
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    pub fn methods(&self) -> impl Iterator<Item = Method> + '_ {
        self.columns.iter().map(|c| c.method)
    }

    pub fn column(&self, method: Method) -> Option<&[f64]> {
        self.columns.iter().find(|c| c.method == method).map(|c| c.values.as_slice())
    }

    pub fn metrics(&self) -> &[Deviation] {
        &self.metrics
    }

    pub fn metric(&self, method: Method) -> Option<&Deviation> {
        self.metrics.iter().find(|d| d.method == method)
    }

    /// Deviations of every non-exact column from the exact one.
    pub fn compute_metrics(&self) -> Vec<Deviation> {
        let Some(exact) = self.column(Method::Exact) else {
            return Vec::new();
        };
        self.columns
            .iter()
            .filter(|c| c.method != Method::Exact)
            .map(|c| Deviation::between(&self.times, (c.method, &c.values), (Method::Exact, exact)))
            .collect()
    }
}
