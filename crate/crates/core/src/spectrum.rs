use crate::series::Method;

/// Lowest energy levels from one method, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub levels: Vec<f64>,
    pub method: Method,
    /// Fock truncation, for the exact method only.
    pub n_max: Option<usize>,
    /// For the exact method: every level moved by less than the probe
    /// tolerance when the truncation was raised. Always true for closed forms.
    pub converged: bool,
}

impl Spectrum {
    /// Closed-form spectrum from an unordered set of levels; keeps the lowest `k`.
    pub(crate) fn closed_form(method: Method, mut levels: Vec<f64>, k: usize) -> Self {
        levels.sort_by(f64::total_cmp);
        levels.truncate(k);
        Self { levels, method, n_max: None, converged: true }
    }

    pub fn ground(&self) -> Option<f64> {
        self.levels.first().copied()
    }
}

/// Lowest `k` levels of a ground state plus doublets `pair(n)`, n = 0, 1, ….
///
/// `floor(n)` must bound the lower member of doublet `n` from below and be
/// non-decreasing for `n ≥ monotone_from`.
pub(crate) fn lowest_levels(
    method: Method,
    ground: f64,
    k: usize,
    pair: impl Fn(usize) -> (f64, f64),
    floor: impl Fn(usize) -> f64,
    monotone_from: usize,
) -> Spectrum {
    if k == 0 {
        return Spectrum::closed_form(method, Vec::new(), 0);
    }
    let mut levels = vec![ground];
    let mut n = 0;
    loop {
        let (lo, hi) = pair(n);
        levels.push(lo);
        levels.push(hi);
        n += 1;
        if levels.len() > k && n >= monotone_from {
            let mut sorted = levels.clone();
            sorted.sort_by(f64::total_cmp);
            if floor(n) > sorted[k - 1] {
                break;
            }
        }
    }
    Spectrum::closed_form(method, levels, k)
}
