//! Numerically exact reference: the model Hamiltonian in a truncated
//! spin ⊗ Fock basis, diagonalized densely.

mod basis;
mod dynamics;
mod eigen;
mod hamiltonian;

use std::ops::Range;

pub use basis::{Spin, TruncatedBasis};
pub use dynamics::{evolve_exact, ExactPropagator, StateVector};
pub use eigen::{eigendecompose, Eigen};
pub use hamiltonian::{build_hamiltonian, parity_operator, SymmetricMatrix};

use crate::error::{Error, Result};
use crate::params::ModelParams;
use crate::series::Method;
use crate::spectrum::Spectrum;

/// Default Fock truncation.
pub const DEFAULT_N_MAX: usize = 80;
/// Truncation increment of the convergence probe.
pub const PROBE_STEP: usize = 20;
/// Largest level shift under the probe for a spectrum to count as converged.
pub const PROBE_TOL: f64 = 1e-8;
/// Levels closer than `DEGENERACY_TOL · max(1, |E|)` are treated as degenerate.
pub const DEGENERACY_TOL: f64 = 1e-9;

/// Diagonalized model at one truncation.
///
/// Within each degenerate cluster the eigenvectors are rotated into parity
/// eigenstates and ordered odd sector (Π = −1) first, so the level order is
/// deterministic.
#[derive(Debug, Clone)]
pub struct Diagonalized {
    basis: TruncatedBasis,
    eigen: Eigen,
    clusters: Vec<Range<usize>>,
}

impl Diagonalized {
    pub fn new(m: &ModelParams, n_max: usize) -> Result<Self> {
        let basis = TruncatedBasis::new(n_max);
        let h = build_hamiltonian(m, n_max);
        let mut eigen = eigendecompose(&h)?;
        let clusters = degenerate_clusters(eigen.values());
        let parity = parity_operator(n_max);
        for c in clusters.iter().filter(|c| c.len() > 1) {
            let k = c.len();
            let vecs: Vec<Vec<f64>> = c.clone().map(|j| eigen.vector(j)).collect();
            let mut proj = SymmetricMatrix::zeros(k);
            for (a, va) in vecs.iter().enumerate() {
                let pa = parity.mul_vec(va);
                for (b, vb) in vecs.iter().enumerate().take(a + 1) {
                    proj.set(a, b, dot(&pa, vb));
                }
            }
            let rot = eigendecompose(&proj)?;
            let w: Vec<f64> =
                (0..k).flat_map(|a| (0..k).map(move |b| (a, b))).map(|(a, b)| rot.component(a, b)).collect();
            eigen.rotate_columns(c.clone(), &w);
        }
        Ok(Self { basis, eigen, clusters })
    }

    pub fn basis(&self) -> TruncatedBasis {
        self.basis
    }

    pub fn eigen(&self) -> &Eigen {
        &self.eigen
    }

    pub fn levels(&self) -> &[f64] {
        self.eigen.values()
    }

    /// Index ranges of (possibly singleton) degenerate clusters, ascending.
    pub fn clusters(&self) -> &[Range<usize>] {
        &self.clusters
    }

    /// `⟨v_k| Π |v_k⟩` for every eigenvector.
    pub fn parity_expectations(&self) -> Vec<f64> {
        let p = parity_operator(self.basis.n_max());
        (0..self.basis.dim())
            .map(|k| {
                let v = self.eigen.vector(k);
                dot(&p.mul_vec(&v), &v)
            })
            .collect()
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn degenerate_clusters(values: &[f64]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    for i in 1..=values.len() {
        let split = i == values.len() || values[i] - values[i - 1] > DEGENERACY_TOL * values[i].abs().max(1.0);
        if split {
            out.push(start..i);
            start = i;
        }
    }
    out
}

/// Lowest `k` exact levels at truncation `n_max`, with a convergence probe
/// at `n_max + 20`.
pub fn spectrum_exact(m: &ModelParams, n_max: usize, k: usize) -> Result<Spectrum> {
    let dim = TruncatedBasis::new(n_max).dim();
    if k > dim {
        return Err(Error::InvalidArgument(format!("requested {k} levels but basis has {dim} states")));
    }
    let base = eigendecompose(&build_hamiltonian(m, n_max))?;
    let probe = eigendecompose(&build_hamiltonian(m, n_max + PROBE_STEP))?;
    let levels = base.values()[..k].to_vec();
    let converged = levels.iter().zip(probe.values()).all(|(a, b)| (a - b).abs() < PROBE_TOL);
    Ok(Spectrum { levels, method: Method::Exact, n_max: Some(n_max), converged })
}

/// Parity of one level, or of a degenerate cluster as a whole.
#[derive(Debug, Clone, PartialEq)]
pub enum ParityExpectation {
    /// Non-degenerate level with `⟨Π⟩`, ±1 up to rounding.
    Definite { level: usize, energy: f64, expectation: f64 },
    /// Degenerate cluster; `trace` is `Tr(P Π)` over the cluster's projector.
    Degenerate { levels: Range<usize>, energy: f64, trace: f64 },
}

/// Parity `Π = σx (−1)^{b†b}` of every eigenstate at truncation `n_max`.
pub fn parity_check(m: &ModelParams, n_max: usize) -> Result<Vec<ParityExpectation>> {
    let diag = Diagonalized::new(m, n_max)?;
    let expect = diag.parity_expectations();
    Ok(diag
        .clusters()
        .iter()
        .map(|c| {
            let energy = diag.levels()[c.start];
            if c.len() == 1 {
                ParityExpectation::Definite { level: c.start, energy, expectation: expect[c.start] }
            } else {
                ParityExpectation::Degenerate { levels: c.clone(), energy, trace: expect[c.clone()].iter().sum() }
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(omega_q: f64, omega: f64, g: f64) -> ModelParams {
        ModelParams::new(omega_q, omega, g).unwrap()
    }

    #[test]
    fn single_fock_state_eigenvalues() {
        let e = eigendecompose(&build_hamiltonian(&params(1.4, 0.3, 2.0), 0)).unwrap();
        assert!((e.values()[0] + 0.7).abs() < 1e-15);
        assert!((e.values()[1] - 0.7).abs() < 1e-15);
    }

    #[test]
    fn decoupled_levels() {
        let e = eigendecompose(&build_hamiltonian(&params(1.0, 0.5, 0.0), 3)).unwrap();
        let mut expected: Vec<f64> = (0..4).flat_map(|n| [0.5 * n as f64 - 0.5, 0.5 * n as f64 + 0.5]).collect();
        expected.sort_by(f64::total_cmp);
        for (a, b) in e.values().iter().zip(&expected) {
            assert!((a - b).abs() < 1e-14);
        }
    }

    #[test]
    fn displaced_oscillator_levels() {
        // Ω = 0: every level n − g²/4ω appears once per spin orientation.
        let e = eigendecompose(&build_hamiltonian(&params(0.0, 1.0, 0.8), 40)).unwrap();
        for n in 0..5 {
            let target = n as f64 - 0.16;
            assert!((e.values()[2 * n] - target).abs() < 1e-10);
            assert!((e.values()[2 * n + 1] - target).abs() < 1e-10);
        }
    }

    #[test]
    fn spectrum_examples() {
        let s = spectrum_exact(&params(1.0, 0.5, 0.0), 80, 4).unwrap();
        for (a, b) in s.levels.iter().zip([-0.5, 0.0, 0.5, 0.5]) {
            assert!((a - b).abs() < 1e-12);
        }
        assert!(s.converged);
        assert_eq!(s.n_max, Some(80));

        let s = spectrum_exact(&params(0.0, 1.0, 1.0), 80, 4).unwrap();
        for (a, b) in s.levels.iter().zip([-0.25, -0.25, 0.75, 0.75]) {
            assert!((a - b).abs() < 1e-10);
        }

        assert!(spectrum_exact(&params(1.0, 1.0, 0.1), 1, 5).is_err());
    }

    #[test]
    fn figure_one_reference_levels() {
        // Frozen from an independent LAPACK diagonalization at n_max = 80
        // (identical at n_max = 100).
        let s = spectrum_exact(&params(1.0, 0.5, 0.4), 80, 4).unwrap();
        let reference = [-0.527664128481296, -0.117920625197022, 0.313454229445296, 0.557905970029732];
        for (a, b) in s.levels.iter().zip(reference) {
            assert!((a - b).abs() < 1e-10, "{a} vs {b}");
        }
        assert!(s.converged);
    }

    #[test]
    fn unconverged_truncation_is_flagged() {
        let s = spectrum_exact(&params(1.0, 0.5, 2.0), 5, 4).unwrap();
        assert!(!s.converged);
    }

    #[test]
    fn parity_of_ground_state() {
        let checks = parity_check(&params(1.0, 0.5, 0.4), 80).unwrap();
        match &checks[0] {
            ParityExpectation::Definite { level: 0, expectation, .. } => assert!((expectation + 1.0).abs() < 1e-8),
            other => panic!("unexpected {other:?}"),
        }
        let checks = parity_check(&params(1.0, 0.5, 0.0), 10).unwrap();
        match &checks[0] {
            ParityExpectation::Definite { expectation, .. } => assert!((expectation + 1.0).abs() < 1e-14),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parity_at_single_fock_state() {
        let checks = parity_check(&params(0.9, 1.0, 0.3), 0).unwrap();
        let values: Vec<f64> = checks
            .iter()
            .map(|c| match c {
                ParityExpectation::Definite { expectation, .. } => *expectation,
                other => panic!("unexpected {other:?}"),
            })
            .collect();
        assert!((values[0] + 1.0).abs() < 1e-14);
        assert!((values[1] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn degenerate_clusters_are_parity_resolved() {
        // g = 0, Ω = 2ω: (↑↓ mixtures) give exact crossings between sectors.
        let d = Diagonalized::new(&params(1.0, 0.5, 0.0), 6).unwrap();
        let parities = d.parity_expectations();
        for c in d.clusters() {
            for k in c.clone() {
                assert!((parities[k].abs() - 1.0).abs() < 1e-12);
            }
            // odd sector first
            assert!(parities[c.clone()].windows(2).all(|w| w[0] <= w[1] + 1e-12));
        }
        assert!(d.clusters().iter().any(|c| c.len() == 2));
        assert!(d.eigen().orthonormality_error() < 1e-12);
        let h = build_hamiltonian(&params(1.0, 0.5, 0.0), 6);
        assert!(d.eigen().max_residual(&h) < 1e-12);

        let checks = parity_check(&params(1.0, 0.5, 0.0), 6).unwrap();
        let degenerate = checks.iter().find_map(|c| match c {
            ParityExpectation::Degenerate { levels, trace, .. } => Some((levels.len(), *trace)),
            _ => None,
        });
        let (len, trace) = degenerate.unwrap();
        assert_eq!(len, 2);
        assert!(trace.abs() < 1e-12);
    }
}
