//! Entropy accounting, error norms and convergence rates.

use crate::eos::Eos;
use crate::error::{Error, Result};
use crate::state::{entropy_eta, Prim};

/// Pairwise sum with a fixed recursion order, so results do not depend on
/// thread count.
pub fn pairwise_sum(xs: &[f64]) -> f64 {
    const LEAF: usize = 32;
    if xs.len() <= LEAF {
        return xs.iter().sum();
    }
    let mid = xs.len() / 2;
    pairwise_sum(&xs[..mid]) + pairwise_sum(&xs[mid..])
}

/// `Σᵢ η(Vᵢ) ΔV` over interior cells.
pub fn total_entropy(eos: &Eos, prims: &[Prim], cell_volume: f64) -> f64 {
    let etas: Vec<f64> = prims.iter().map(|p| entropy_eta(eos, p)).collect();
    pairwise_sum(&etas) * cell_volume
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Norms {
    pub l1: f64,
    pub l2: f64,
}

/// Volume-weighted `l¹` and `l²` norms of `numerical − exact`.
pub fn error_norms(numerical: &[f64], exact: &[f64], cell_volume: f64) -> Result<Norms> {
    if numerical.len() != exact.len() {
        return Err(Error::Config(format!(
            "error norms need equal lengths, got {} and {}",
            numerical.len(),
            exact.len()
        )));
    }
    let abs: Vec<f64> = numerical.iter().zip(exact).map(|(a, b)| (a - b).abs()).collect();
    let sq: Vec<f64> = abs.iter().map(|e| e * e).collect();
    Ok(Norms { l1: pairwise_sum(&abs) * cell_volume, l2: (pairwise_sum(&sq) * cell_volume).sqrt() })
}

/// Observed orders `ln(e_prev/e) / ln(N/N_prev)` between successive
/// resolutions; the first entry and any entry with a zero error are `None`.
pub fn convergence_rates(table: &[(usize, f64)]) -> Vec<Option<f64>> {
    let mut rates = Vec::with_capacity(table.len());
    rates.push(None);
    for w in table.windows(2) {
        let ((n0, e0), (n1, e1)) = (w[0], w[1]);
        let rate =
            if e0 > 0.0 && e1 > 0.0 && n1 != n0 { Some((e0 / e1).ln() / (n1 as f64 / n0 as f64).ln()) } else { None };
        rates.push(rate);
    }
    rates
}

/// One row of an accuracy table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorRow {
    pub n: usize,
    pub l1: f64,
    pub l1_order: Option<f64>,
    pub l2: f64,
    pub l2_order: Option<f64>,
}

/// Builds the accuracy table from `(N, norms)` pairs in increasing `N`.
pub fn error_table(results: &[(usize, Norms)]) -> Vec<ErrorRow> {
    let l1: Vec<(usize, f64)> = results.iter().map(|(n, e)| (*n, e.l1)).collect();
    let l2: Vec<(usize, f64)> = results.iter().map(|(n, e)| (*n, e.l2)).collect();
    let (r1, r2) = (convergence_rates(&l1), convergence_rates(&l2));
    results
        .iter()
        .enumerate()
        .map(|(i, (n, e))| ErrorRow { n: *n, l1: e.l1, l1_order: r1[i], l2: e.l2, l2_order: r2[i] })
        .collect()
}

/// Time series of the total entropy.
///
/// `total` is the raw `Σ η ΔV`; `balanced` adds the entropy that has left
/// through non-periodic boundaries, so that it is constant for an
/// entropy-conservative scheme and non-increasing for an entropy-stable one
/// whatever the boundary conditions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EntropyTrace {
    pub t: Vec<f64>,
    pub total: Vec<f64>,
    pub balanced: Vec<f64>,
    pub gamma: Vec<f64>,
}

impl EntropyTrace {
    pub fn push(&mut self, t: f64, total: f64, balanced: f64, gamma: Option<f64>) {
        debug_assert!(self.t.last().is_none_or(|&last| t >= last));
        self.t.push(t);
        self.total.push(total);
        self.balanced.push(balanced);
        if let Some(g) = gamma {
            self.gamma.push(g);
        }
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn has_gamma(&self) -> bool {
        !self.gamma.is_empty()
    }

    /// `max |ℰ(t) − ℰ(0)| / |ℰ(0)|` of the balanced series.
    pub fn max_relative_drift(&self) -> f64 {
        let Some(&e0) = self.balanced.first() else { return 0.0 };
        let scale = e0.abs().max(f64::MIN_POSITIVE);
        self.balanced.iter().map(|e| (e - e0).abs()).fold(0.0, f64::max) / scale
    }

    /// Largest step-to-step increase of the balanced series.
    pub fn max_increase(&self) -> f64 {
        self.balanced.windows(2).map(|w| w[1] - w[0]).fold(f64::NEG_INFINITY, f64::max).max(0.0)
    }

    /// True when no step raises the balanced series by more than `tol`.
    pub fn is_non_increasing(&self, tol: f64) -> bool {
        self.balanced.windows(2).all(|w| w[1] - w[0] <= tol)
    }

    /// Number of steps that raise the balanced series by more than `tol`.
    pub fn increases(&self, tol: f64) -> usize {
        self.balanced.windows(2).filter(|w| w[1] - w[0] > tol).count()
    }
}
