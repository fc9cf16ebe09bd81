//! Model parameters and the self-consistent displacement of the transformed
//! Hamiltonian.
//!
//! The unitary `exp(S)` with `S = (g ξ / 2ω) σz (b† − b)` displaces the
//! oscillator by a fraction `ξ` of the full adiabatic displacement. Removing
//! the counter-rotating part of the transformed one-boson coupling fixes `ξ`
//! through the pair of conditions
//!
//! ```text
//! η = exp(−g² ξ² / 2ω²)
//! ξ = ω / (ω + η Ω)
//! ```
//!
//! which [`solve_displacement`] solves as a scalar fixed point in `ξ`.

use crate::error::{Error, Result};

/// Physical parameters `(Ω, ω, g)` of
/// `H = ½ Ω σx + ω b†b + ½ g (b† + b) σz`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    omega_q: f64,
    omega: f64,
    g: f64,
}

impl ModelParams {
    /// Level splitting `omega_q` (Ω), oscillator frequency `omega` (ω) and
    /// coupling `g`. Requires `ω > 0`, `Ω ≥ 0`, `g ≥ 0`, all finite.
    pub fn new(omega_q: f64, omega: f64, g: f64) -> Result<Self> {
        if !(omega_q.is_finite() && omega.is_finite() && g.is_finite()) {
            return Err(Error::InvalidParams(format!(
                "non-finite parameter (omega_q={omega_q}, omega={omega}, g={g})"
            )));
        }
        if omega <= 0.0 {
            return Err(Error::InvalidParams(format!("omega must be > 0, got {omega}")));
        }
        if omega_q < 0.0 {
            return Err(Error::InvalidParams(format!("omega_q must be >= 0, got {omega_q}")));
        }
        if g < 0.0 {
            return Err(Error::InvalidParams(format!("g must be >= 0, got {g}")));
        }
        Ok(Self { omega_q, omega, g })
    }

    pub fn omega_q(&self) -> f64 {
        self.omega_q
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn g(&self) -> f64 {
        self.g
    }

    /// Detuning `Ω − ω`.
    pub fn detuning(&self) -> f64 {
        self.omega_q - self.omega
    }

    /// Copy with a different coupling, used by sweeps.
    pub fn with_g(&self, g: f64) -> Result<Self> {
        Self::new(self.omega_q, self.omega, g)
    }

    /// Dressing factor `η(ξ) = exp(−g² ξ² / 2ω²)`.
    pub fn dressing(&self, xi: f64) -> f64 {
        let r = self.g * xi / self.omega;
        (-0.5 * r * r).exp()
    }

    /// Right-hand side of the displacement condition, `ω / (ω + η(ξ) Ω)`.
    pub fn displacement_map(&self, xi: f64) -> f64 {
        self.omega / (self.omega + self.dressing(xi) * self.omega_q)
    }
}

/// Convergence controls for [`solve_displacement`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FixedPointOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        Self { tol: 1e-12, max_iter: 500 }
    }
}

/// Converged displacement `(ξ, η)` and the constants derived from it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrwaParams {
    /// Displacement fraction ξ, `0 < ξ ≤ 1`.
    pub xi: f64,
    /// Dressing factor η, `0 < η ≤ 1`.
    pub eta: f64,
    /// First-order initial-state displacement `α = g ξ / 2ω`.
    pub alpha: f64,
    /// Renormalized coupling `g′ = 2 g η Ω / (ω + η Ω)`.
    pub g_prime: f64,
    /// `Φ₀ = √((ηΩ − ω)² + g′²)`.
    pub phi_0: f64,
    /// `Φ₁ = √((ηΩ − ω)² + 2 g′²)`.
    pub phi_1: f64,
    /// `|ξ − ω / (ω + η Ω)|` at the returned pair.
    pub residual: f64,
    /// Iterations spent (0 for closed-form cases).
    pub iterations: usize,
}

impl TrwaParams {
    fn from_xi(m: &ModelParams, xi: f64, iterations: usize) -> Self {
        let eta = m.dressing(xi);
        let residual = (xi - m.omega / (m.omega + eta * m.omega_q)).abs();
        let g_prime = 2.0 * m.g * eta * m.omega_q / (m.omega + eta * m.omega_q);
        let split = eta * m.omega_q - m.omega;
        Self {
            xi,
            eta,
            alpha: m.g * xi / (2.0 * m.omega),
            g_prime,
            phi_0: split.hypot(g_prime),
            phi_1: split.hypot(std::f64::consts::SQRT_2 * g_prime),
            residual,
            iterations,
        }
    }

    /// Effective splitting `ηΩ` of the transformed two-level system.
    pub fn dressed_splitting(&self, m: &ModelParams) -> f64 {
        self.eta * m.omega_q
    }

    /// Constant energy shift `(g²/4ω) ξ (2 − ξ)` of the transformed Hamiltonian.
    pub fn polaron_shift(&self, m: &ModelParams) -> f64 {
        m.g * m.g / (4.0 * m.omega) * self.xi * (2.0 - self.xi)
    }
}

/// Solves `ξ = ω / (ω + η(ξ) Ω)` with `η(ξ) = exp(−g²ξ²/2ω²)`.
///
/// Plain iteration starts from `ξ₀ = ω/(ω+Ω)`. The map is increasing in `ξ`,
/// so the iterates climb monotonically to the smallest fixed point; if the
/// observed contraction is too weak to finish within the budget (or the
/// residual grows), the remaining iterations bisect on `[ξ_k, 1]`.
pub fn solve_displacement(m: &ModelParams, opts: &FixedPointOptions) -> Result<TrwaParams> {
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tol must be > 0, got {}", opts.tol)));
    }
    if opts.max_iter == 0 {
        return Err(Error::InvalidArgument("max_iter must be >= 1".into()));
    }
    if m.omega_q == 0.0 {
        return Ok(TrwaParams::from_xi(m, 1.0, 0));
    }
    if m.g == 0.0 {
        return Ok(TrwaParams::from_xi(m, m.omega / (m.omega + m.omega_q), 0));
    }

    let residual_at = |xi: f64| m.displacement_map(xi) - xi;

    let mut xi = m.omega / (m.omega + m.omega_q);
    let mut r = residual_at(xi);
    let mut iter = 0;
    while iter < opts.max_iter {
        if r.abs() < opts.tol {
            return Ok(TrwaParams::from_xi(m, xi, iter));
        }
        let next = xi + r;
        let r_next = residual_at(next);
        iter += 1;
        let rate = r_next.abs() / r.abs();
        xi = next;
        r = r_next;
        if rate >= 1.0 || (rate > 0.9 && iter > 50) {
            break;
        }
    }

    // Bisection on map(ξ) − ξ, which is positive below the smallest root and
    // non-positive at ξ = 1.
    let (mut lo, mut hi) = if r > 0.0 { (xi, 1.0) } else { (0.0, xi) };
    while iter < opts.max_iter {
        if r.abs() < opts.tol {
            return Ok(TrwaParams::from_xi(m, xi, iter));
        }
        xi = 0.5 * (lo + hi);
        r = residual_at(xi);
        iter += 1;
        if r > 0.0 {
            lo = xi;
        } else {
            hi = xi;
        }
    }
    if r.abs() < opts.tol {
        return Ok(TrwaParams::from_xi(m, xi, iter));
    }
    Err(Error::FixedPointNotConverged { iterations: iter, residual: r.abs() })
}

/// Renormalized coupling `g′ = 2 g η Ω / (ω + η Ω)`.
pub fn renormalized_coupling(t: &TrwaParams, m: &ModelParams) -> f64 {
    2.0 * m.g * t.eta * m.omega_q / (m.omega + t.eta * m.omega_q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn solve(omega_q: f64, omega: f64, g: f64) -> TrwaParams {
        let m = ModelParams::new(omega_q, omega, g).unwrap();
        solve_displacement(&m, &FixedPointOptions::default()).unwrap()
    }

    // Independent route: bisection on ξ ∈ (0, 1] to a bracket width of 1e-15.
    fn bisect_xi(omega_q: f64, omega: f64, g: f64) -> f64 {
        let f = |x: f64| x - omega / (omega + (-(g * x / omega).powi(2) / 2.0).exp() * omega_q);
        let (mut lo, mut hi) = (0.0_f64, 1.0_f64);
        while hi - lo > 1e-15 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(ModelParams::new(1.0, 0.0, 0.1).is_err());
        assert!(ModelParams::new(-1.0, 1.0, 0.1).is_err());
        assert!(ModelParams::new(1.0, 1.0, -0.1).is_err());
        assert!(ModelParams::new(f64::NAN, 1.0, 0.1).is_err());
    }

    #[test]
    fn zero_coupling_is_undressed() {
        let t = solve(1.0, 0.5, 0.0);
        assert_eq!(t.eta, 1.0);
        assert!((t.xi - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(t.g_prime, 0.0);
        assert_eq!(t.alpha, 0.0);
    }

    #[test]
    fn zero_splitting_gives_full_displacement() {
        let t = solve(0.0, 1.0, 0.7);
        assert_eq!(t.xi, 1.0);
        assert!((t.eta - (-0.245_f64).exp()).abs() < 1e-15);
        assert_eq!(t.g_prime, 0.0);
    }

    #[test]
    fn matches_bisection_oracle() {
        // ξ, η frozen from a 200-step bisection at double precision.
        let t = solve(0.5, 1.0, 0.5);
        assert!((t.xi - 0.6793614141237552).abs() < 1e-12);
        assert!((t.eta - 0.9439411164963103).abs() < 1e-12);
        assert!((t.xi - bisect_xi(0.5, 1.0, 0.5)).abs() < 1e-12);

        let t = solve(1.0, 0.5, 0.4);
        assert!((t.xi - 0.3416865765650079).abs() < 1e-12);
        assert!((t.eta - 0.9633293617400042).abs() < 1e-12);
    }

    #[test]
    fn renormalized_coupling_forms_agree() {
        let m = ModelParams::new(1.0, 0.5, 0.4).unwrap();
        let t = solve_displacement(&m, &FixedPointOptions::default()).unwrap();
        let g1 = renormalized_coupling(&t, &m);
        let g2 = 2.0 * m.g() * t.eta * m.omega_q() * t.xi / m.omega();
        assert!((g1 - 0.5266507387479937).abs() < 1e-12);
        assert!((g1 - g2).abs() < 1e-12);
        assert_eq!(g1, t.g_prime);

        assert_eq!(renormalized_coupling(&solve(1.0, 0.5, 0.0), &m.with_g(0.0).unwrap()), 0.0);
        let m0 = ModelParams::new(0.0, 0.5, 0.4).unwrap();
        assert_eq!(renormalized_coupling(&solve(0.0, 0.5, 0.4), &m0), 0.0);
    }

    #[test]
    fn reports_non_convergence() {
        let m = ModelParams::new(1.0, 0.5, 0.9).unwrap();
        let err = solve_displacement(&m, &FixedPointOptions { tol: 1e-12, max_iter: 2 }).unwrap_err();
        match err {
            Error::FixedPointNotConverged { iterations, residual } => {
                assert_eq!(iterations, 2);
                assert!(residual > 0.0);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bisection_fallback_handles_weak_contraction() {
        // Large Ω/ω and g/ω make the map's slope near the root close to one.
        let m = ModelParams::new(20.0, 1.0, 6.0).unwrap();
        let t = solve_displacement(&m, &FixedPointOptions::default()).unwrap();
        assert!(t.residual < 1e-12);
    }

    #[test]
    fn limits() {
        assert!(solve(1e-9, 1.0, 1.0).xi > 1.0 - 1e-8);
        assert!(solve(1e6, 1.0, 0.5).xi < 1e-5);
        let etas: Vec<f64> = [1e-2, 1e-3, 1e-4, 1e-5].iter().map(|&g| solve(1.0, 1.0, g).eta).collect();
        assert!(etas.windows(2).all(|w| w[1] >= w[0]));
        assert!(1.0 - etas[3] < 1e-10);
    }

    #[test]
    fn xi_non_decreasing_in_g() {
        for &(omega_q, omega) in &[(1.0, 0.5), (0.5, 1.0), (0.25, 1.0), (2.0, 0.1)] {
            let mut prev = 0.0;
            for i in 0..=40 {
                let g = 2.0 * omega * i as f64 / 40.0;
                let xi = solve(omega_q, omega, g).xi;
                assert!(xi >= prev - 1e-14, "xi decreased at g={g}");
                prev = xi;
            }
        }
    }

    proptest! {
        #[test]
        fn fixed_point_consistency(
            omega_q in 0.0f64..5.0,
            omega in 0.05f64..3.0,
            ratio in 0.0f64..3.0,
        ) {
            let m = ModelParams::new(omega_q, omega, ratio * omega).unwrap();
            let t = solve_displacement(&m, &FixedPointOptions::default()).unwrap();
            prop_assert!(t.xi > 0.0 && t.xi <= 1.0);
            prop_assert!(t.eta > 0.0 && t.eta <= 1.0);
            prop_assert!((t.eta - m.dressing(t.xi)).abs() < 1e-12);
            prop_assert!((t.xi - m.displacement_map(t.xi)).abs() < 1e-12);
            prop_assert_eq!(t.alpha, m.g() * t.xi / (2.0 * m.omega()));
            prop_assert!(t.phi_0 <= t.phi_1);
        }
    }
}
