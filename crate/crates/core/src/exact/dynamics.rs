use num_complex::Complex64;

use super::basis::{Spin, TruncatedBasis};
use super::Diagonalized;
use crate::error::Result;
use crate::params::ModelParams;
use crate::series::{validate_times, Method, TimeSeries};

/// Complex amplitudes over a [`TruncatedBasis`] with their cached norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<Complex64>,
    norm: f64,
}

impl StateVector {
    pub fn new(amplitudes: Vec<Complex64>) -> Self {
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        Self { amplitudes, norm }
    }

    /// `|↑⟩|0⟩`.
    pub fn initial(basis: &TruncatedBasis) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); basis.dim()];
        amplitudes[basis.index(Spin::Up, 0)] = Complex64::new(1.0, 0.0);
        Self { amplitudes, norm: 1.0 }
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.norm
    }

    /// `⟨σz⟩`, unnormalized.
    pub fn sz_expectation(&self, basis: &TruncatedBasis) -> f64 {
        self.amplitudes.iter().enumerate().map(|(i, a)| basis.state(i).0.sz() * a.norm_sqr()).sum()
    }
}

/// Eigenstates whose overlap with the initial state is below this are
/// dropped from the spectral sum for `P(t)`.
const OVERLAP_CUTOFF: f64 = 1e-15;

/// Spectral propagator `|ψ(t)⟩ = Σ_k c_k e^{−iE_k t} |v_k⟩` from `|↑⟩|0⟩`.
#[derive(Debug, Clone)]
pub struct ExactPropagator {
    diag: Diagonalized,
    // c_k = ⟨v_k|ψ(0)⟩
    overlaps: Vec<f64>,
    // eigenstates with |c_k| above the cutoff
    active: Vec<usize>,
    // ⟨v_k|σz|v_l⟩ · c_k · c_l over the active set, row-major
    weighted_sz: Vec<f64>,
}

impl ExactPropagator {
    pub fn new(m: &ModelParams, n_max: usize) -> Result<Self> {
        Ok(Self::from_diagonalized(Diagonalized::new(m, n_max)?))
    }

    pub fn from_diagonalized(diag: Diagonalized) -> Self {
        let start = diag.basis().index(Spin::Up, 0);
        let eigen = diag.eigen();
        let overlaps: Vec<f64> = (0..eigen.dim()).map(|k| eigen.component(start, k)).collect();
        let active: Vec<usize> = (0..eigen.dim()).filter(|&k| overlaps[k].abs() > OVERLAP_CUTOFF).collect();
        let sz = diag.basis().sz_diagonal();
        let columns: Vec<Vec<f64>> = active.iter().map(|&k| eigen.vector(k)).collect();
        let mut weighted_sz = vec![0.0; active.len() * active.len()];
        for (a, va) in columns.iter().enumerate() {
            for (b, vb) in columns.iter().enumerate().take(a + 1) {
                let m: f64 = va.iter().zip(vb).zip(&sz).map(|((x, y), s)| x * y * s).sum();
                let w = m * overlaps[active[a]] * overlaps[active[b]];
                weighted_sz[a * active.len() + b] = w;
                weighted_sz[b * active.len() + a] = w;
            }
        }
        Self { diag, overlaps, active, weighted_sz }
    }

    pub fn basis(&self) -> TruncatedBasis {
        self.diag.basis()
    }

    pub fn state(&self, t: f64) -> StateVector {
        let eigen = self.diag.eigen();
        let dim = eigen.dim();
        let coeffs: Vec<Complex64> =
            self.overlaps.iter().zip(eigen.values()).map(|(c, e)| Complex64::from_polar(*c, -e * t)).collect();
        let amplitudes = (0..dim).map(|i| (0..dim).map(|k| coeffs[k] * eigen.component(i, k)).sum()).collect();
        StateVector::new(amplitudes)
    }

    /// `P(t) = Σ_kl c_k c_l e^{i(E_k−E_l)t} ⟨v_k|σz|v_l⟩`.
    pub fn inversion(&self, t: f64) -> f64 {
        let values = self.diag.eigen().values();
        let phases: Vec<Complex64> = self.active.iter().map(|&k| Complex64::from_polar(1.0, -values[k] * t)).collect();
        let n = self.active.len();
        (0..n)
            .map(|a| {
                let row = &self.weighted_sz[a * n..(a + 1) * n];
                let w: Complex64 = row.iter().zip(&phases).map(|(s, z)| s * z).sum();
                (phases[a].conj() * w).re
            })
            .sum()
    }
}

/// Exact `P(t)` on `times` at truncation `n_max`.
pub fn evolve_exact(m: &ModelParams, n_max: usize, times: &[f64]) -> Result<TimeSeries> {
    validate_times(times)?;
    let prop = ExactPropagator::new(m, n_max)?;
    let values = times.iter().map(|&t| prop.inversion(t)).collect();
    TimeSeries::single(times.to_vec(), Method::Exact, values)
}
