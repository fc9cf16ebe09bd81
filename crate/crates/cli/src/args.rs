use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rabi_core::Method;

/// Spectra and inversion dynamics of a two-level system coupled to a quantum
/// oscillator: exact diagonalization, transformed RWA and ordinary RWA.
#[derive(Debug, Parser)]
#[command(name = "rabi", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Lowest levels over a coupling sweep (or at a single g).
    Spectrum(Flags),
    /// P(t) from |↑⟩|0⟩ for each requested method.
    Dynamics(Flags),
    /// P(t) plus deviation metrics of each approximation from the exact curve.
    Compare(Flags),
    /// Figure presets 1-5; explicit flags override the preset.
    Figure {
        #[arg(value_parser = clap::value_parser!(u8).range(1..=5))]
        id: u8,
        #[command(flatten)]
        flags: Flags,
    },
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Level splitting Ω.
    #[arg(long)]
    pub omega_q: Option<f64>,
    /// Oscillator frequency ω.
    #[arg(long)]
    pub omega: Option<f64>,
    /// Coupling g (single point).
    #[arg(long, conflicts_with_all = ["g_min", "g_max", "g_steps"])]
    pub g: Option<f64>,
    /// Sweep start, absolute g.
    #[arg(long)]
    pub g_min: Option<f64>,
    /// Sweep end, absolute g (inclusive).
    #[arg(long)]
    pub g_max: Option<f64>,
    /// Number of sweep points (≥ 2).
    #[arg(long)]
    pub g_steps: Option<usize>,
    /// Fock truncation of the exact solver.
    #[arg(long)]
    pub n_max: Option<usize>,
    /// End of the time window.
    #[arg(long)]
    pub t_max: Option<f64>,
    /// Time step.
    #[arg(long)]
    pub dt: Option<f64>,
    /// Comma-separated subset of exact,trwa,rwa.
    #[arg(long, value_delimiter = ',')]
    pub methods: Option<Vec<Method>>,
    /// Number of levels per method, ground state included.
    #[arg(long)]
    pub levels: Option<usize>,
    /// Divide the TRWA P(t) by 1 + α² (extension; off by default).
    #[arg(long)]
    pub normalize_trwa: bool,
    /// Output file; standard output when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Fixed-point tolerance for the displacement parameter.
    #[arg(long)]
    pub tol: Option<f64>,
}
