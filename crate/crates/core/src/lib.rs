//! Solvers for a two-level system coupled to a single quantum oscillator,
//! `H = ½ Ω σx + ω b†b + ½ g (b† + b) σz`.
//!
//! Three routes to the spectrum and to the inversion `P(t) = ⟨σz⟩(t)` from
//! the initial state `|↑⟩|0⟩`:
//!
//! * [`exact`]: dense diagonalization in a truncated Fock basis.
//! * [`trwa`]: the transformed rotating-wave approximation, closed form on top
//!   of the self-consistent displacement in [`params`].
//! * [`rwa`]: the ordinary rotating-wave approximation.

pub mod error;
pub mod exact;
pub mod params;
pub mod rwa;
pub mod series;
pub mod spectrum;
pub mod trwa;

pub use error::{Error, Result};
pub use params::{renormalized_coupling, solve_displacement, FixedPointOptions, ModelParams, TrwaParams};
pub use series::{Deviation, Method, TimeSeries};
pub use spectrum::Spectrum;
