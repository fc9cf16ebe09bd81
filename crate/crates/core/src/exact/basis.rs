/// σz eigenstate of the two-level system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Spin {
    Up,
    Down,
}

impl Spin {
    /// σz eigenvalue, +1 for up.
    pub fn sz(self) -> f64 {
        match self {
            Spin::Up => 1.0,
            Spin::Down => -1.0,
        }
    }

    fn offset(self) -> usize {
        match self {
            Spin::Up => 0,
            Spin::Down => 1,
        }
    }

    pub fn flip(self) -> Spin {
        match self {
            Spin::Up => Spin::Down,
            Spin::Down => Spin::Up,
        }
    }
}

/// Product basis `{|s⟩|n⟩ : s ∈ {↑, ↓}, 0 ≤ n ≤ n_max}`, spin index fastest:
/// state `(s, n)` sits at `2n + s` with `s = 0` for ↑ and `s = 1` for ↓.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruncatedBasis {
    n_max: usize,
}

impl TruncatedBasis {
    pub fn new(n_max: usize) -> Self {
        Self { n_max }
    }

    pub fn n_max(&self) -> usize {
        self.n_max
    }

    pub fn dim(&self) -> usize {
        2 * (self.n_max + 1)
    }

    pub fn index(&self, spin: Spin, n: usize) -> usize {
        debug_assert!(n <= self.n_max);
        2 * n + spin.offset()
    }

    /// Inverse of [`index`](Self::index).
    pub fn state(&self, i: usize) -> (Spin, usize) {
        let spin = if i.is_multiple_of(2) { Spin::Up } else { Spin::Down };
        (spin, i / 2)
    }

    /// σz eigenvalue of each basis state.
    pub fn sz_diagonal(&self) -> Vec<f64> {
        (0..self.dim()).map(|i| self.state(i).0.sz()).collect()
    }
}
