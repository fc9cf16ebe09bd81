use super::basis::{Spin, TruncatedBasis};
use crate::params::ModelParams;

/// Dense real symmetric matrix, row-major. Writes go through
/// [`set`](Self::set), which stores both `(i, j)` and `(j, i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    /// Builds from a row-major buffer, symmetrizing from the lower triangle.
    pub fn from_lower(dim: usize, rows: &[f64]) -> Self {
        assert_eq!(rows.len(), dim * dim, "buffer does not match dimension");
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..=i {
                m.set(i, j, rows[i * dim + j]);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        (0..self.dim).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.get(i, j).to_bits() == self.get(j, i).to_bits()))
    }
}

/// Matrix of `H = ½ Ω σx + ω b†b + ½ g (b† + b) σz` in the truncated basis.
///
/// Diagonal `ω n`; `Ω/2` between `(↑, n)` and `(↓, n)`; `± (g/2) √(n+1)`
/// between `(s, n)` and `(s, n+1)` with `+` for ↑ and `−` for ↓.
pub fn build_hamiltonian(m: &ModelParams, n_max: usize) -> SymmetricMatrix {
    let basis = TruncatedBasis::new(n_max);
    let mut h = SymmetricMatrix::zeros(basis.dim());
    for n in 0..=n_max {
        let up = basis.index(Spin::Up, n);
        let down = basis.index(Spin::Down, n);
        h.set(up, up, m.omega() * n as f64);
        h.set(down, down, m.omega() * n as f64);
        h.set(up, down, 0.5 * m.omega_q());
        if n < n_max {
            let c = 0.5 * m.g() * ((n + 1) as f64).sqrt();
            for spin in [Spin::Up, Spin::Down] {
                h.set(basis.index(spin, n), basis.index(spin, n + 1), spin.sz() * c);
            }
        }
    }
    h
}

/// Parity `Π = σx (−1)^{b†b}`: maps `(s, n)` to `(−1)^n (s̄, n)`.
pub fn parity_operator(n_max: usize) -> SymmetricMatrix {
    let basis = TruncatedBasis::new(n_max);
    let mut p = SymmetricMatrix::zeros(basis.dim());
    for n in 0..=n_max {
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        p.set(basis.index(Spin::Up, n), basis.index(Spin::Down, n), sign);
    }
    p
}
