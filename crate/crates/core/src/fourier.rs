//! Characters, Fourier transform and convolution on finite abelian groups.
//!
//! Convention: `f̂(g) = Σ_x f(x) <g, x>` with the canonical pairing
//! `<g, x> = exp(+2πi Σ_m g_m x_m / n_m)`. With this sign the uniform
//! probability on `Z/c ∖ {0}` transforms to `1` at `0` and `-1/(c-1)`
//! elsewhere, with no conjugation.
//!
//! The transform is applied one cyclic factor at a time (a naive DFT along
//! each axis), so the cost is `|G| · Σ n_m`.

use std::f64::consts::TAU;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::function::GroupFunction;
use crate::group::{FiniteAbelianGroup, GroupElement};

pub fn pairing(g: &GroupElement, x: &GroupElement, group: &FiniteAbelianGroup) -> Result<Complex64> {
    group.check(g)?;
    group.check(x)?;
    let mut phase = 0.0;
    for ((&a, &b), &n) in g.coords().iter().zip(x.coords()).zip(group.factors()) {
        phase += ((a * b) % n) as f64 / n as f64;
    }
    Ok(root_of_unity(phase.fract()))
}

fn root_of_unity(turns: f64) -> Complex64 {
    let (s, c) = (TAU * turns).sin_cos();
    Complex64::new(c, s)
}

// exp(sign * 2πi k / n) for k in 0..n, built from the first octant so that
// symmetric entries agree exactly.
fn roots(n: usize, sign: f64) -> Vec<Complex64> {
    (0..n)
        .map(|k| {
            let (s, c) = exact_sin_cos(k, n);
            Complex64::new(c, sign * s)
        })
        .collect()
}

fn exact_sin_cos(k: usize, n: usize) -> (f64, f64) {
    // reduce to the first quadrant using 4k/n
    let k4 = 4 * k;
    let quadrant = k4 / n;
    let rem = k4 % n;
    if rem == 0 {
        return match quadrant % 4 {
            0 => (0.0, 1.0),
            1 => (1.0, 0.0),
            2 => (0.0, -1.0),
            _ => (-1.0, 0.0),
        };
    }
    let angle = TAU * rem as f64 / (4 * n) as f64;
    let (s, c) = angle.sin_cos();
    match quadrant % 4 {
        0 => (s, c),
        1 => (c, -s),
        2 => (-s, -c),
        _ => (-c, s),
    }
}

fn transform(f: &GroupFunction, sign: f64) -> Vec<Complex64> {
    let group = f.group();
    let mut data = f.values().to_vec();
    let mut scratch = Vec::new();
    let mut stride = group.order();
    for &n in group.factors() {
        stride /= n;
        if n == 1 {
            continue;
        }
        let w = roots(n, sign);
        scratch.resize(n, Complex64::new(0.0, 0.0));
        let block = n * stride;
        for base in (0..data.len()).step_by(block) {
            for offset in 0..stride {
                let start = base + offset;
                for (g, slot) in scratch.iter_mut().enumerate() {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for x in 0..n {
                        acc += data[start + x * stride] * w[(g * x) % n];
                    }
                    *slot = acc;
                }
                for (x, v) in scratch.iter().enumerate() {
                    data[start + x * stride] = *v;
                }
            }
        }
    }
    data
}

pub fn dft(f: &GroupFunction) -> GroupFunction {
    GroupFunction::new(f.group().clone(), transform(f, 1.0)).expect("transform preserves length")
}

/// Inverse of [`dft`]: conjugate pairing and `1/|G|` normalization.
pub fn idft(f: &GroupFunction) -> GroupFunction {
    let scale = 1.0 / f.group().order() as f64;
    let values = transform(f, -1.0).into_iter().map(|v| v * scale).collect();
    GroupFunction::new(f.group().clone(), values).expect("transform preserves length")
}

/// `(f * g)(x) = Σ_y f(y) g(x - y)`.
pub fn convolve(f: &GroupFunction, g: &GroupFunction) -> Result<GroupFunction> {
    f.same_group(g)?;
    let group = f.group();
    let n = group.order();
    let mut out = vec![Complex64::new(0.0, 0.0); n];
    let fv = f.values();
    let gv = g.values();
    for (y, &fy) in fv.iter().enumerate() {
        if fy.re == 0.0 && fy.im == 0.0 {
            continue;
        }
        for (x, slot) in out.iter_mut().enumerate() {
            *slot += fy * gv[group.sub_index(x, y)];
        }
    }
    GroupFunction::new(group.clone(), out)
}

/// `Σ |f(x)|^p` (counting measure).
pub fn lp_norm_pow(f: &GroupFunction, p: f64) -> Result<f64> {
    check_exponent(p)?;
    Ok(f.values().iter().map(|v| v.norm().powf(p)).sum())
}

pub fn lp_norm(f: &GroupFunction, p: f64) -> Result<f64> {
    let scale = f.max_abs();
    if scale == 0.0 {
        check_exponent(p)?;
        return Ok(0.0);
    }
    // scale out the maximum so large p does not overflow
    let s: f64 = lp_norm_pow(&f.scaled(1.0 / scale), p)?;
    Ok(scale * s.powf(1.0 / p))
}

pub fn check_exponent(p: f64) -> Result<()> {
    if p.is_finite() && p >= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidExponent(p))
    }
}
