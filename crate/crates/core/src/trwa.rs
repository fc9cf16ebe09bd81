//! Transformed rotating-wave approximation.
//!
//! After the displacement `exp(S)` the Hamiltonian keeps only rotating-wave
//! terms with renormalized splitting `ηΩ` and coupling `g′`, so the spectrum
//! and the dynamics have Jaynes–Cummings-like closed forms.
//!
//! States `|s₁⟩, |s₂⟩` are the σx eigenstates with eigenvalues −1 and +1.
//! The dynamics are written in the interaction picture of
//! `H₀′ = ½ηΩσx + ω b†b − (g²/4ω)ξ(2−ξ)`, with the initial state
//! `exp(S)|↑⟩|0⟩` expanded to first order in `α = gξ/2ω`.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::{solve_displacement, FixedPointOptions, ModelParams, TrwaParams};
use crate::series::{validate_times, Method, TimeSeries};
use crate::spectrum::{lowest_levels, Spectrum};

/// `Φ` below which `sin(Φt/2)/Φ` is replaced by its limit `t/2`.
const PHI_EPS: f64 = 1e-14;

/// `sin(Φt/2) / Φ`, continuous at `Φ = 0`.
fn half_sinc(phi: f64, t: f64) -> f64 {
    if phi < PHI_EPS {
        0.5 * t
    } else {
        (0.5 * phi * t).sin() / phi
    }
}

/// Interaction-picture amplitudes on `|s₁,0⟩, |s₂,0⟩, |s₁,1⟩, |s₂,1⟩, |s₁,2⟩`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrwaAmplitudes {
    pub t: f64,
    pub c10: Complex64,
    pub c20: Complex64,
    pub c11: Complex64,
    pub c21: Complex64,
    pub c12: Complex64,
}

impl TrwaAmplitudes {
    /// `(|c10|², |c20|² + |c11|², |c21|² + |c12|²)`, each conserved in time.
    pub fn sub_norms(&self) -> (f64, f64, f64) {
        (self.c10.norm_sqr(), self.c20.norm_sqr() + self.c11.norm_sqr(), self.c21.norm_sqr() + self.c12.norm_sqr())
    }
}

/// TRWA solution for one parameter point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Trwa {
    model: ModelParams,
    params: TrwaParams,
}

impl Trwa {
    pub fn new(model: &ModelParams, opts: &FixedPointOptions) -> Result<Self> {
        Ok(Self { model: *model, params: solve_displacement(model, opts)? })
    }

    pub fn model(&self) -> &ModelParams {
        &self.model
    }

    pub fn params(&self) -> &TrwaParams {
        &self.params
    }

    /// `E_g = −½ηΩ − (g²/4ω)ξ(2−ξ)`, energy of `|s₁⟩|0⟩`.
    pub fn ground_energy(&self) -> f64 {
        -0.5 * self.params.dressed_splitting(&self.model) - self.params.polaron_shift(&self.model)
    }

    /// `(E_{2n+1}, E_{2n+2}) = (n+½)ω ∓ ½√((ω−ηΩ)² + g′²(n+1)) − (g²/4ω)ξ(2−ξ)`.
    pub fn excited_pair(&self, n: usize) -> (f64, f64) {
        excited_pair_with(
            self.model.omega(),
            self.params.dressed_splitting(&self.model),
            self.params.g_prime,
            self.params.polaron_shift(&self.model),
            n,
        )
    }

    /// Lowest `k` TRWA levels (ground state included), ascending.
    pub fn spectrum(&self, k: usize) -> Spectrum {
        let omega = self.model.omega();
        let split = (omega - self.params.dressed_splitting(&self.model)).abs();
        let g_prime = self.params.g_prime;
        let shift = self.params.polaron_shift(&self.model);
        // (n+½)ω − ½(|ω−ηΩ| + g′√(n+1)) − shift grows with n once √(n+1) ≥ g′/4ω
        let monotone_from = (g_prime / (4.0 * omega)).powi(2).ceil() as usize;
        lowest_levels(
            Method::Trwa,
            self.ground_energy(),
            k,
            |n| self.excited_pair(n),
            |n| (n as f64 + 0.5) * omega - 0.5 * (split + g_prime * ((n + 1) as f64).sqrt()) - shift,
            monotone_from,
        )
    }

    /// Closed-form amplitudes at time `t`.
    pub fn amplitudes(&self, t: f64) -> TrwaAmplitudes {
        let p = &self.params;
        let split = p.dressed_splitting(&self.model) - self.model.omega();
        let a = p.alpha;
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let i = Complex64::i();

        let cos0 = (0.5 * p.phi_0 * t).cos();
        let sin0 = half_sinc(p.phi_0, t);
        let cos1 = (0.5 * p.phi_1 * t).cos();
        let sin1 = half_sinc(p.phi_1, t);
        let fwd = Complex64::from_polar(1.0, 0.5 * split * t);
        let back = fwd.conj();

        let c20 = s * ((cos0 - i * split * sin0) - a * i * p.g_prime * sin0) * fwd;
        let c11 = s * (a * (cos0 + i * split * sin0) - i * p.g_prime * sin0) * back;
        let c21 = a * s * (cos1 - i * split * sin1) * fwd;
        let c12 = -a * s * i * std::f64::consts::SQRT_2 * p.g_prime * sin1 * back;

        TrwaAmplitudes { t, c10: Complex64::new(s, 0.0), c20, c11, c21, c12 }
    }

    /// `P(t) = 2 Re[(C₂₀* C₁₀ + C₂₁* C₁₁) e^{iηΩt}]`.
    ///
    /// Equals `1 + α²` at `t = 0` because the initial state is only normalized
    /// to first order in α.
    pub fn inversion(&self, t: f64) -> f64 {
        let c = self.amplitudes(t);
        let phase = Complex64::from_polar(1.0, self.params.dressed_splitting(&self.model) * t);
        2.0 * ((c.c20.conj() * c.c10 + c.c21.conj() * c.c11) * phase).re
    }

    /// `P(t)` on a grid; `normalize` divides by `1 + α²`.
    pub fn evolve(&self, times: &[f64], normalize: bool) -> Result<TimeSeries> {
        validate_times(times)?;
        let scale = if normalize { 1.0 / (1.0 + self.params.alpha * self.params.alpha) } else { 1.0 };
        let values = times.iter().map(|&t| scale * self.inversion(t)).collect();
        TimeSeries::single(times.to_vec(), Method::Trwa, values)
    }
}

/// Jaynes–Cummings-form doublet `(n+½)ω ∓ ½√((ω−Δ)² + G²(n+1)) − shift` for
/// splitting `Δ` and coupling `G`.
pub(crate) fn excited_pair_with(omega: f64, splitting: f64, coupling: f64, shift: f64, n: usize) -> (f64, f64) {
    let center = (n as f64 + 0.5) * omega - shift;
    let half = 0.5 * (omega - splitting).hypot(coupling * ((n + 1) as f64).sqrt());
    (center - half, center + half)
}

/// TRWA ground energy with default fixed-point options.
pub fn energy_ground_trwa(m: &ModelParams) -> Result<f64> {
    Ok(Trwa::new(m, &FixedPointOptions::default())?.ground_energy())
}

/// TRWA doublet `(E_{2n+1}, E_{2n+2})` with default fixed-point options.
pub fn energy_excited_trwa(m: &ModelParams, n: usize) -> Result<(f64, f64)> {
    Ok(Trwa::new(m, &FixedPointOptions::default())?.excited_pair(n))
}

pub fn amplitudes_trwa(m: &ModelParams, t: f64) -> Result<TrwaAmplitudes> {
    Ok(Trwa::new(m, &FixedPointOptions::default())?.amplitudes(t))
}

/// Raw TRWA `P(t)` (no normalization) with default fixed-point options.
pub fn p_trwa(m: &ModelParams, times: &[f64]) -> Result<TimeSeries> {
    Trwa::new(m, &FixedPointOptions::default())?.evolve(times, false)
}

pub fn spectrum_trwa(m: &ModelParams, k: usize) -> Result<Spectrum> {
    Ok(Trwa::new(m, &FixedPointOptions::default())?.spectrum(k))
}
