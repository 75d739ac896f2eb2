//! Smooth cutoffs on the discretized circle and the decay of their Fourier
//! coefficients.
//!
//! `σ = 0` on the closed inner set, `σ = 1` off the open outer set, and on the
//! gap
//!
//! ```text
//! σ(t) = ψ(s) / (ψ(s) + ψ(1 - s)),   ψ(s) = exp(-1/s),   s = d_in / (d_in + d_out),
//! ```
//!
//! where `d_in` is the distance to the inner set and `d_out` the distance to
//! the complement of the outer set. Normalizing by the local gap width keeps
//! the step equally smooth on wide and narrow gaps. Arcs are given in circle units (`[0, 1)`)
//! so the same cutoff can be sampled at several resolutions.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::dft;
use crate::function::GroupFunction;
use crate::group::FiniteAbelianGroup;

use super::circle::signed_frequency;

/// Closed arc `{t : dist(t, center) ≤ half_width}` in circle units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub center: f64,
    pub half_width: f64,
}

impl Arc {
    pub fn new(center: f64, half_width: f64) -> Result<Self> {
        if !(center.is_finite() && half_width.is_finite() && (0.0..0.5).contains(&half_width)) {
            return Err(Error::InvalidInput(format!("bad arc center={center} half_width={half_width}")));
        }
        Ok(Arc { center: center.rem_euclid(1.0), half_width })
    }
}

fn circle_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(1.0);
    d.min(1.0 - d)
}

#[derive(Debug, Clone)]
pub struct DecayRow {
    pub order: u32,
    /// `max_n |S(n)| (1 + |n|)^order`.
    pub max_weighted: f64,
}

#[derive(Debug, Clone)]
pub struct SmoothCutoff {
    pub resolution: usize,
    pub sigma: Vec<f64>,
    /// `S = dft(σ) / N`, the convolution kernel with multiplier `σ`.
    pub kernel: GroupFunction,
    pub decay: Vec<DecayRow>,
    pub l1_norm: f64,
}

impl SmoothCutoff {
    pub fn max_imaginary(&self) -> f64 {
        self.kernel.values().iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    pub fn weighted(&self, order: u32) -> Option<f64> {
        self.decay.iter().find(|r| r.order == order).map(|r| r.max_weighted)
    }
}

// ψ(s)/(ψ(s)+ψ(1-s)) = 1/(1 + exp(1/s - 1/(1-s)))
fn transition(d_in: f64, d_out: f64) -> f64 {
    if d_in <= 0.0 {
        return 0.0;
    }
    if d_out <= 0.0 {
        return 1.0;
    }
    let s = d_in / (d_in + d_out);
    let x = s.recip() - (1.0 - s).recip();
    if x > 700.0 {
        0.0
    } else {
        1.0 / (1.0 + x.exp())
    }
}

/// For each inner arc, the outer arc containing it with a grid gap.
fn assign(outer: &[Arc], inner: &[Arc], resolution: usize) -> Result<Vec<usize>> {
    for (i, a) in outer.iter().enumerate() {
        for b in &outer[i + 1..] {
            if circle_dist(a.center, b.center) <= a.half_width + b.half_width {
                return Err(Error::InvalidInput("outer arcs must be disjoint".into()));
            }
        }
    }
    let grid = 1.0 / resolution as f64;
    inner
        .iter()
        .map(|arc| {
            outer
                .iter()
                .position(|o| circle_dist(arc.center, o.center) + arc.half_width + grid <= o.half_width)
                .ok_or_else(|| {
                    Error::Containment(format!(
                        "inner arc at {} (half width {}) is not inside an outer arc with a grid gap",
                        arc.center, arc.half_width
                    ))
                })
        })
        .collect()
}

/// Samples at `t = i / N`. Inside an outer arc only the inner arcs it
/// contains are consulted, so `σ` stays smooth between distinct arcs.
pub fn sample_cutoff(outer: &[Arc], inner: &[Arc], resolution: usize) -> Result<Vec<f64>> {
    if resolution == 0 {
        return Err(Error::InvalidInput("resolution must be positive".into()));
    }
    let owner = assign(outer, inner, resolution)?;
    Ok((0..resolution)
        .map(|i| {
            let t = i as f64 / resolution as f64;
            let Some((o, arc)) = outer.iter().enumerate().find(|(_, a)| circle_dist(t, a.center) < a.half_width)
            else {
                return 1.0;
            };
            let d_out = arc.half_width - circle_dist(t, arc.center);
            let d_in = inner
                .iter()
                .zip(&owner)
                .filter(|(_, &w)| w == o)
                .map(|(a, _)| (circle_dist(t, a.center) - a.half_width).max(0.0))
                .fold(f64::INFINITY, f64::min);
            if d_in.is_infinite() {
                1.0
            } else {
                transition(d_in, d_out)
            }
        })
        .collect())
}

pub fn smooth_cutoff_coefficients(
    outer: &[Arc],
    inner: &[Arc],
    resolution: usize,
    smoothness_order: u32,
) -> Result<SmoothCutoff> {
    let sigma = sample_cutoff(outer, inner, resolution)?;
    let group = FiniteAbelianGroup::cyclic(resolution)?;
    let kernel = dft(&GroupFunction::from_real(group, &sigma)?).scaled(1.0 / resolution as f64);
    let decay = (0..=smoothness_order)
        .map(|order| {
            let max_weighted = kernel
                .values()
                .iter()
                .enumerate()
                .map(|(i, v): (usize, &Complex64)| {
                    let n = signed_frequency(i, resolution).unsigned_abs() as f64;
                    v.norm() * (1.0 + n).powi(order as i32)
                })
                .fold(0.0, f64::max);
            DecayRow { order, max_weighted }
        })
        .collect();
    let l1_norm = kernel.values().iter().map(|v| v.norm()).sum();
    Ok(SmoothCutoff { resolution, sigma, kernel, decay, l1_norm })
}
