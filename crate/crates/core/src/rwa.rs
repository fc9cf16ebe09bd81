//! Ordinary rotating-wave approximation,
//! `H_RWA = ½Ωσx + ω b†b + ½g (b†|s₁⟩⟨s₂| + b|s₂⟩⟨s₁|)`.

use crate::error::Result;
use crate::params::ModelParams;
use crate::series::{validate_times, Method, TimeSeries};
use crate::spectrum::{lowest_levels, Spectrum};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaParams {
    /// `Φ₀,RWA = √((Ω − ω)² + g²)`.
    pub phi_0_rwa: f64,
}

impl RwaParams {
    pub fn new(m: &ModelParams) -> Self {
        Self { phi_0_rwa: m.detuning().hypot(m.g()) }
    }
}

/// Ground level `−Ω/2` and the doublet
/// `(n+½)ω ∓ ½√((ω−Ω)² + g²(n+1))` from the `{|s₁,n+1⟩, |s₂,n⟩}` block.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RwaLevels {
    pub ground: f64,
    pub lower: f64,
    pub upper: f64,
}

pub fn spectrum_rwa(m: &ModelParams, n: usize) -> RwaLevels {
    let center = (n as f64 + 0.5) * m.omega();
    let half = 0.5 * ((m.omega() - m.omega_q()).powi(2) + m.g() * m.g() * (n + 1) as f64).sqrt();
    RwaLevels { ground: -0.5 * m.omega_q(), lower: center - half, upper: center + half }
}

/// Lowest `k` RWA levels, ascending.
pub fn spectrum_rwa_levels(m: &ModelParams, k: usize) -> Spectrum {
    let (omega, g) = (m.omega(), m.g());
    let split = (omega - m.omega_q()).abs();
    lowest_levels(
        Method::Rwa,
        -0.5 * m.omega_q(),
        k,
        |n| {
            let l = spectrum_rwa(m, n);
            (l.lower, l.upper)
        },
        |n| (n as f64 + 0.5) * omega - 0.5 * (split + g * ((n + 1) as f64).sqrt()),
        (g / (4.0 * omega)).powi(2).ceil() as usize,
    )
}

/// `P_RWA(t) = cos(Φt/2) cos((Ω+ω)t/2) − ((Ω−ω)/Φ) sin(Φt/2) sin((Ω+ω)t/2)`
/// with `Φ = Φ₀,RWA`; the ratio is taken as 0 when `Φ = 0`.
pub fn inversion_rwa(m: &ModelParams, t: f64) -> f64 {
    let phi = RwaParams::new(m).phi_0_rwa;
    let ratio = if phi > 0.0 { m.detuning() / phi } else { 0.0 };
    let sum = 0.5 * (m.omega_q() + m.omega()) * t;
    (0.5 * phi * t).cos() * sum.cos() - ratio * (0.5 * phi * t).sin() * sum.sin()
}

pub fn p_rwa(m: &ModelParams, times: &[f64]) -> Result<TimeSeries> {
    validate_times(times)?;
    let values = times.iter().map(|&t| inversion_rwa(m, t)).collect();
    TimeSeries::single(times.to_vec(), Method::Rwa, values)
}
