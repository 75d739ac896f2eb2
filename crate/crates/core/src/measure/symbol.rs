//! Zero sets of trigonometric symbols `m(θ) = Σ_k c_k e^{2πi k·θ}` on the
//! torus `T^d`, sampled at cell centers of a uniform grid.
//!
//! The fraction of cells with `|m| < τ` behaves like `τ^α` for small `τ`; the
//! fitted `α` is also the critical exponent for `1/|m| ∈ L^q` (integrable
//! iff `q < α`).

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct TrigPolynomial {
    dim: usize,
    terms: Vec<(Vec<i64>, Complex64)>,
}

impl TrigPolynomial {
    pub fn new(dim: usize, terms: Vec<(Vec<i64>, Complex64)>) -> Result<Self> {
        if !(1..=3).contains(&dim) {
            return Err(Error::InvalidInput(format!("dimension {dim} must be 1, 2 or 3")));
        }
        if let Some((k, _)) = terms.iter().find(|(k, _)| k.len() != dim) {
            return Err(Error::InvalidInput(format!("multi-index {k:?} has wrong length")));
        }
        if terms.iter().all(|(_, c)| c.norm() == 0.0) {
            return Err(Error::InvalidInput("zero polynomial".into()));
        }
        Ok(TrigPolynomial { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn eval(&self, theta: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(k, c)| {
                let phase: f64 = k.iter().zip(theta).map(|(&ki, &t)| ki as f64 * t).sum();
                c * Complex64::from_polar(1.0, TAU * phase)
            })
            .sum()
    }
}

#[derive(Debug, Clone)]
pub struct SymbolReport {
    pub resolution: usize,
    /// `(τ, fraction of cells with |m| < τ)`.
    pub rows: Vec<(f64, f64)>,
    /// Least-squares slope of log fraction against log τ over resolved rows.
    pub fitted_exponent: Option<f64>,
    pub min_abs: f64,
}

/// Cells needed below a threshold for its row to enter the fit.
pub const MIN_RESOLVED_CELLS: usize = 20;

pub fn symbol_zero_diagnostics(
    poly: &TrigPolynomial,
    resolution: usize,
    thresholds: &[f64],
) -> Result<SymbolReport> {
    if !(1..=512).contains(&resolution) {
        return Err(Error::InvalidInput(format!("resolution {resolution} must be in 1..=512")));
    }
    let cells = resolution.pow(poly.dim as u32);
    let mut magnitudes = Vec::with_capacity(cells);
    let mut theta = vec![0.0; poly.dim];
    for cell in 0..cells {
        let mut rest = cell;
        for t in theta.iter_mut() {
            *t = ((rest % resolution) as f64 + 0.5) / resolution as f64;
            rest /= resolution;
        }
        magnitudes.push(poly.eval(&theta).norm());
    }
    magnitudes.sort_by(f64::total_cmp);
    let below = |tau: f64| magnitudes.partition_point(|&m| m < tau);

    let rows: Vec<(f64, f64)> =
        thresholds.iter().map(|&tau| (tau, below(tau) as f64 / cells as f64)).collect();
    let fit_points: Vec<(f64, f64)> = thresholds
        .iter()
        .zip(&rows)
        .filter(|(&tau, &(_, frac))| below(tau) >= MIN_RESOLVED_CELLS && frac < 0.5)
        .map(|(&tau, &(_, frac))| (tau.ln(), frac.ln()))
        .collect();
    Ok(SymbolReport {
        resolution,
        rows,
        fitted_exponent: slope(&fit_points),
        min_abs: magnitudes.first().copied().unwrap_or(0.0),
    })
}

fn slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// `τ_0, τ_0/2, …` (`count` values).
pub fn dyadic_thresholds(start: f64, count: usize) -> Vec<f64> {
    (0..count).map(|i| start / 2f64.powi(i as i32)).collect()
}
