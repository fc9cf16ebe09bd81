//! The three run modes. Every run produces a self-describing CSV document and
//! a convergence flag; failures at one grid point or in one method are marked
//! in the output while the rest is still computed.

use rabi_core::exact::{ExactPropagator, PROBE_STEP, PROBE_TOL};
use rabi_core::rwa::{p_rwa, spectrum_rwa_levels};
use rabi_core::series::uniform_grid;
use rabi_core::trwa::Trwa;
use rabi_core::{exact, Method, ModelParams, TimeSeries};
use rayon::prelude::*;

use crate::config::{Command, Coupling, RunConfig};
use crate::csv::{field_safe, fmt_num, CsvDoc};

/// Rendered CSV plus whether every requested computation converged.
#[derive(Debug, Clone)]
pub struct Report {
    pub text: String,
    pub converged: bool,
}

pub fn run(cfg: &RunConfig) -> Report {
    match cfg.command {
        Command::Spectrum => run_spectrum(cfg),
        Command::Dynamics => run_dynamics(cfg),
        Command::Compare => run_compare(cfg),
    }
}

fn common_meta(doc: &mut CsvDoc, cfg: &RunConfig) {
    doc.meta("tool", format!("rabi {}", env!("CARGO_PKG_VERSION")));
    doc.meta("command", cfg.command.as_str());
    if let Some(id) = cfg.preset {
        doc.meta("preset", format!("figure{id}"));
    }
    doc.meta("omega_q", fmt_num(cfg.omega_q));
    doc.meta("omega", fmt_num(cfg.omega));
    match cfg.coupling {
        Coupling::Single(g) => doc.meta("g", fmt_num(g)),
        Coupling::Sweep { min, max, steps } => {
            doc.meta("g_min", fmt_num(min));
            doc.meta("g_max", fmt_num(max));
            doc.meta("g_steps", steps.to_string());
        }
    }
    doc.meta("methods", cfg.methods.iter().map(Method::as_str).collect::<Vec<_>>().join(";"));
    if cfg.methods.contains(&Method::Exact) {
        doc.meta("n_max", cfg.n_max.to_string());
        doc.meta("truncation_probe", format!("n_max+{PROBE_STEP} tol {}", fmt_num(PROBE_TOL)));
    }
    if cfg.methods.contains(&Method::Trwa) {
        doc.meta("fixed_point_tol", fmt_num(cfg.tol));
    }
}

fn level_name(i: usize) -> String {
    if i == 0 {
        "Eg".to_string()
    } else {
        format!("E{i}")
    }
}

struct PointResult {
    fields: Vec<String>,
    status: Vec<String>,
    residual: Option<f64>,
}

fn spectrum_point(cfg: &RunConfig, g: f64) -> PointResult {
    let k = cfg.levels;
    let mut fields = vec![fmt_num(g / cfg.omega)];
    let mut status = Vec::new();
    let mut residual = None;
    let model = match ModelParams::new(cfg.omega_q, cfg.omega, g) {
        Ok(m) => m,
        Err(e) => {
            fields.extend(std::iter::repeat_n("nan".to_string(), k * cfg.methods.len()));
            return PointResult { fields, status: vec![format!("error:{}", field_safe(&e.to_string()))], residual };
        }
    };
    for method in &cfg.methods {
        let levels = match method {
            Method::Exact => exact::spectrum_exact(&model, cfg.n_max, k).map(|s| {
                if !s.converged {
                    status.push("exact:unconverged".to_string());
                }
                s.levels
            }),
            Method::Trwa => Trwa::new(&model, &cfg.fixed_point()).map(|t| {
                residual = Some(t.params().residual);
                t.spectrum(k).levels
            }),
            Method::Rwa => Ok(spectrum_rwa_levels(&model, k).levels),
        };
        match levels {
            Ok(l) => fields.extend(l.into_iter().map(fmt_num)),
            Err(e) => {
                status.push(format!("{method}:error:{}", field_safe(&e.to_string())));
                fields.extend(std::iter::repeat_n("nan".to_string(), k));
            }
        }
    }
    PointResult { fields, status, residual }
}

/// Lowest levels per method at every grid point.
///
/// Columns: `g_over_omega`, then `<method>_Eg, <method>_E1, …` for each
/// requested method in the order exact, trwa, rwa, then `status`. Energies
/// are in absolute units; each method's levels are ascending.
pub fn run_spectrum(cfg: &RunConfig) -> Report {
    let mut doc = CsvDoc::default();
    common_meta(&mut doc, cfg);
    doc.meta("levels", cfg.levels.to_string());
    doc.meta("energy_units", "absolute");

    let points: Vec<PointResult> = cfg.g_grid().into_par_iter().map(|g| spectrum_point(cfg, g)).collect();

    let max_residual =
        points.iter().filter_map(|p| p.residual).fold(None, |acc: Option<f64>, r| Some(acc.map_or(r, |a| a.max(r))));
    if let Some(r) = max_residual {
        doc.meta("max_fixed_point_residual", fmt_num(r));
    }

    let mut header = vec!["g_over_omega".to_string()];
    for method in &cfg.methods {
        header.extend((0..cfg.levels).map(|i| format!("{method}_{}", level_name(i))));
    }
    header.push("status".to_string());
    doc.header(header);

    let mut converged = true;
    for p in points {
        let mut fields = p.fields;
        if p.status.is_empty() {
            fields.push("ok".to_string());
        } else {
            converged = false;
            fields.push(p.status.join(";"));
        }
        doc.row(fields);
    }
    Report { text: doc.render(), converged }
}

fn single_g(cfg: &RunConfig) -> f64 {
    match cfg.coupling {
        Coupling::Single(g) => g,
        Coupling::Sweep { min, .. } => min,
    }
}

/// Computes every requested column; failed methods become NaN columns and
/// add `error.<method>` metadata.
/// One method's column (or error message) plus the metadata it reports.
type ColumnResult = (Method, Result<Vec<f64>, String>, Vec<(String, String)>);

fn dynamics_series(cfg: &RunConfig, doc: &mut CsvDoc) -> (TimeSeries, bool) {
    let times = uniform_grid(cfg.t_max, cfg.dt).expect("grid validated with the config");
    let mut series = TimeSeries::new(times.clone()).expect("uniform grid is valid");
    let mut converged = true;
    let model = match ModelParams::new(cfg.omega_q, cfg.omega, single_g(cfg)) {
        Ok(m) => m,
        Err(e) => {
            doc.meta("error", field_safe(&e.to_string()));
            for &m in &cfg.methods {
                series.push(m, vec![f64::NAN; times.len()]).expect("length matches");
            }
            return (series, false);
        }
    };
    doc.meta("t_max", fmt_num(cfg.t_max));
    doc.meta("dt", fmt_num(cfg.dt));

    let columns: Vec<ColumnResult> = cfg
        .methods
        .par_iter()
        .map(|&method| {
            let mut meta = Vec::new();
            let values = match method {
                Method::Exact => exact_column(&model, cfg.n_max, &times, &mut meta),
                Method::Trwa => trwa_column(cfg, &model, &times, &mut meta),
                Method::Rwa => p_rwa(&model, &times)
                    .map(|s| s.column(Method::Rwa).expect("rwa column").to_vec())
                    .map_err(|e| e.to_string()),
            };
            (method, values, meta)
        })
        .collect();

    for (method, values, meta) in columns {
        for (k, v) in meta {
            doc.meta(k, v);
        }
        let values = values.unwrap_or_else(|msg| {
            converged = false;
            doc.meta(format!("error.{method}"), field_safe(&msg));
            vec![f64::NAN; times.len()]
        });
        series.push(method, values).expect("length matches");
    }
    (series, converged)
}

fn exact_column(
    m: &ModelParams,
    n_max: usize,
    times: &[f64],
    meta: &mut Vec<(String, String)>,
) -> Result<Vec<f64>, String> {
    let base = ExactPropagator::new(m, n_max).map_err(|e| e.to_string())?;
    let probe = ExactPropagator::new(m, n_max + PROBE_STEP).map_err(|e| e.to_string())?;
    let values: Vec<f64> = times.iter().map(|&t| base.inversion(t)).collect();
    let shift = times.iter().zip(&values).map(|(&t, p)| (probe.inversion(t) - p).abs()).fold(0.0, f64::max);
    meta.push(("exact.truncation_shift".into(), fmt_num(shift)));
    if shift >= PROBE_TOL {
        return Err(format!("truncation not converged: P(t) moved by {} under n_max+{PROBE_STEP}", fmt_num(shift)));
    }
    Ok(values)
}

fn trwa_column(
    cfg: &RunConfig,
    m: &ModelParams,
    times: &[f64],
    meta: &mut Vec<(String, String)>,
) -> Result<Vec<f64>, String> {
    let trwa = Trwa::new(m, &cfg.fixed_point()).map_err(|e| e.to_string())?;
    let p = trwa.params();
    for (k, v) in [
        ("xi", p.xi),
        ("eta", p.eta),
        ("alpha", p.alpha),
        ("g_prime", p.g_prime),
        ("phi_0", p.phi_0),
        ("phi_1", p.phi_1),
        ("residual", p.residual),
    ] {
        meta.push((format!("trwa.{k}"), fmt_num(v)));
    }
    if cfg.normalize_trwa {
        meta.push(("trwa.normalized".into(), "divided by 1+alpha^2 (extension)".into()));
    }
    let s = trwa.evolve(times, cfg.normalize_trwa).map_err(|e| e.to_string())?;
    Ok(s.column(Method::Trwa).expect("trwa column").to_vec())
}

fn write_series(doc: &mut CsvDoc, series: &TimeSeries) {
    let methods: Vec<Method> = series.methods().collect();
    let mut header = vec!["t".to_string()];
    header.extend(methods.iter().map(|m| format!("P_{m}")));
    doc.header(header);
    for (i, t) in series.times().iter().enumerate() {
        let mut row = vec![fmt_num(*t)];
        row.extend(methods.iter().map(|&m| fmt_num(series.column(m).expect("listed method")[i])));
        doc.row(row);
    }
}

/// `t, P_exact, P_trwa, P_rwa` (requested subset, in that order).
pub fn run_dynamics(cfg: &RunConfig) -> Report {
    let mut doc = CsvDoc::default();
    common_meta(&mut doc, cfg);
    let (series, converged) = dynamics_series(cfg, &mut doc);
    write_series(&mut doc, &series);
    Report { text: doc.render(), converged }
}

/// Dynamics CSV followed by `# metric.<method>.max_abs=` and
/// `# metric.<method>.time_avg=` lines, deviations from the exact curve.
pub fn run_compare(cfg: &RunConfig) -> Report {
    let mut doc = CsvDoc::default();
    common_meta(&mut doc, cfg);
    let (series, converged) = dynamics_series(cfg, &mut doc);
    write_series(&mut doc, &series);
    for d in series.metrics() {
        doc.trailer(format!("metric.{}.max_abs", d.method), fmt_num(d.max_abs));
        doc.trailer(format!("metric.{}.time_avg", d.method), fmt_num(d.time_avg));
    }
    Report { text: doc.render(), converged }
}
