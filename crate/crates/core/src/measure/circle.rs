//! Circle-measure stand-ins on `T ≈ Z/N`.
//!
//! Two classical models, each carrying one half of what a singular measure
//! with `ℓ^p` coefficients needs:
//!
//! * Cantor-type sets (digits restricted in base `b`): support density
//!   `(|D|/b)^m → 0`, but coefficients that do not decay.
//! * Riesz products `Π (1 + a_j cos 2π n_j t)`: explicit `ℓ^p` coefficients
//!   for every `p > 2`, but full support.
//!
//! Frequencies are signed, `-N/2 < n ≤ N/2`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::FiniteAbelianGroup;

use super::TruncatedMeasure;

#[derive(Debug, Clone, PartialEq)]
pub enum CircleMeasureModel {
    Cantor { resolution: usize, base: usize, digits: Vec<usize> },
    Riesz { resolution: usize, coefficients: Vec<f64>, frequencies: Vec<u64> },
}

impl CircleMeasureModel {
    pub fn resolution(&self) -> usize {
        match self {
            CircleMeasureModel::Cantor { resolution, .. } | CircleMeasureModel::Riesz { resolution, .. } => {
                *resolution
            }
        }
    }

    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        FiniteAbelianGroup::cyclic(self.resolution())
    }

    pub fn measure(&self) -> Result<TruncatedMeasure> {
        match self {
            CircleMeasureModel::Cantor { resolution, base, digits } => {
                let support = cantor_support(*resolution, *base, digits)?;
                TruncatedMeasure::uniform_on(self.group()?, &support)
            }
            CircleMeasureModel::Riesz { resolution, coefficients, frequencies } => {
                let density = riesz_density(coefficients, frequencies, *resolution)?;
                TruncatedMeasure::from_weights(self.group()?, &density)
            }
        }
    }

    /// Coefficients on `Z/N`. For Riesz products these come from the product
    /// expansion, not from transforming the density.
    pub fn mu_hat(&self) -> Result<GroupFunction> {
        match self {
            CircleMeasureModel::Cantor { .. } => Ok(self.measure()?.mu_hat()),
            CircleMeasureModel::Riesz { resolution, coefficients, frequencies } => {
                riesz_product_coefficients(coefficients, frequencies, *resolution)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            CircleMeasureModel::Cantor { resolution, base, digits } => {
                format!("cantor N={resolution} base={base} digits={digits:?}")
            }
            CircleMeasureModel::Riesz { resolution, coefficients, frequencies } => {
                format!("riesz N={resolution} J={} n={frequencies:?} a={coefficients:?}", coefficients.len())
            }
        }
    }
}

/// Signed frequency of index `i` on `Z/N`: `-N/2 < n ≤ N/2`.
pub fn signed_frequency(i: usize, n: usize) -> i64 {
    if 2 * i > n {
        i as i64 - n as i64
    } else {
        i as i64
    }
}

/// Residues of `Z/N` whose `m` base-`b` digits all lie in `digits`.
pub fn cantor_support(resolution: usize, base: usize, digits: &[usize]) -> Result<Vec<usize>> {
    if base < 2 {
        return Err(Error::InvalidInput(format!("base {base} must be at least 2")));
    }
    let mut m = 0u32;
    let mut power = 1usize;
    while power < resolution {
        power = power
            .checked_mul(base)
            .ok_or_else(|| Error::InvalidInput("resolution overflows".into()))?;
        m += 1;
    }
    if power != resolution {
        return Err(Error::InvalidInput(format!("N = {resolution} is not a power of base {base}")));
    }
    if let Some(d) = digits.iter().find(|&&d| d >= base) {
        return Err(Error::InvalidInput(format!("digit {d} out of range for base {base}")));
    }
    let mut allowed = vec![false; base];
    for &d in digits {
        allowed[d] = true;
    }
    Ok((0..resolution)
        .filter(|&x| {
            let mut x = x;
            (0..m).all(|_| {
                let ok = allowed[x % base];
                x /= base;
                ok
            })
        })
        .collect())
}

fn check_riesz(coefficients: &[f64], frequencies: &[u64]) -> Result<()> {
    if coefficients.len() != frequencies.len() {
        return Err(Error::InvalidInput(format!(
            "{} coefficients but {} frequencies",
            coefficients.len(),
            frequencies.len()
        )));
    }
    if let Some(a) = coefficients.iter().find(|&&a| !(a > 0.0 && a <= 1.0)) {
        return Err(Error::InvalidInput(format!("coefficient {a} outside (0, 1]")));
    }
    if frequencies.first().is_some_and(|&n| n == 0) {
        return Err(Error::InvalidInput("frequencies must be positive".into()));
    }
    for w in frequencies.windows(2) {
        if w[1] < 3 * w[0] {
            return Err(Error::Lacunarity(format!("{} < 3 * {}", w[1], w[0])));
        }
    }
    Ok(())
}

fn check_resolution(frequencies: &[u64], resolution: usize) -> Result<()> {
    let total: u64 = frequencies.iter().sum();
    if 2 * total >= resolution as u64 {
        return Err(Error::InvalidInput(format!(
            "frequency sum {total} must stay below N/2 = {}",
            resolution as f64 / 2.0
        )));
    }
    Ok(())
}

/// Every `(Σ ε_j n_j, Π (a_j/2)^{|ε_j|})` for `ε ∈ {-1, 0, 1}^J`, sorted by
/// frequency. Lacunarity makes the frequencies pairwise distinct.
pub fn riesz_coefficients_sparse(coefficients: &[f64], frequencies: &[u64]) -> Result<Vec<(i64, f64)>> {
    check_riesz(coefficients, frequencies)?;
    let mut terms: Vec<(i64, f64)> = vec![(0, 1.0)];
    for (&a, &n) in coefficients.iter().zip(frequencies) {
        let half = a / 2.0;
        let n = n as i64;
        let mut next = Vec::with_capacity(terms.len() * 3);
        for &(f, v) in &terms {
            next.push((f - n, v * half));
            next.push((f, v));
            next.push((f + n, v * half));
        }
        terms = next;
    }
    terms.sort_by_key(|t| t.0);
    if terms.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Lacunarity("coefficient frequencies collide".into()));
    }
    Ok(terms)
}

pub fn riesz_product_coefficients(
    coefficients: &[f64],
    frequencies: &[u64],
    resolution: usize,
) -> Result<GroupFunction> {
    check_riesz(coefficients, frequencies)?;
    check_resolution(frequencies, resolution)?;
    let group = FiniteAbelianGroup::cyclic(resolution)?;
    let mut values = vec![Complex64::new(0.0, 0.0); resolution];
    for (f, v) in riesz_coefficients_sparse(coefficients, frequencies)? {
        values[f.rem_euclid(resolution as i64) as usize] = Complex64::new(v, 0.0);
    }
    GroupFunction::new(group, values)
}

/// `‖μ̂‖_p^p = Π (1 + 2 (a_j/2)^p)` for a Riesz product.
pub fn riesz_norm_pow_closed_form(coefficients: &[f64], p: f64) -> f64 {
    coefficients.iter().map(|&a| 1.0 + 2.0 * (a / 2.0).powf(p)).product()
}

/// Probability weights `Π_j (1 + a_j cos(2π n_j t / N)) / N` on `Z/N`.
pub fn riesz_density(coefficients: &[f64], frequencies: &[u64], resolution: usize) -> Result<Vec<f64>> {
    check_riesz(coefficients, frequencies)?;
    check_resolution(frequencies, resolution)?;
    let n = resolution as f64;
    Ok((0..resolution)
        .map(|t| {
            coefficients
                .iter()
                .zip(frequencies)
                .map(|(&a, &f)| {
                    let phase = ((f as usize * t) % resolution) as f64 / n;
                    1.0 + a * (TAU * phase).cos()
                })
                .product::<f64>()
                / n
        })
        .collect())
}

/// `sup_{|n| > R} |μ̂(n)|` for each radius `R`: an empirical look at
/// vanishing at infinity.
pub fn coefficient_tail_sup(mu_hat: &GroupFunction, radii: &[usize]) -> Vec<(usize, f64)> {
    let n = mu_hat.values().len();
    radii
        .iter()
        .map(|&r| {
            let sup = mu_hat
                .values()
                .iter()
                .enumerate()
                .filter(|(i, _)| signed_frequency(*i, n).unsigned_abs() as usize > r)
                .map(|(_, v)| v.norm())
                .fold(0.0, f64::max);
            (r, sup)
        })
        .collect()
}
