//! Numerical tolerances. Every comparison in the crate and its test suites
//! draws from this table.

/// Relative agreement of closed forms with transform-based oracles.
pub const CLOSED_FORM_REL: f64 = 1e-12;

/// Round trip `idft(dft(f)) = f`, relative per entry.
pub const ROUND_TRIP_REL: f64 = 1e-12;

/// Plancherel and convolution theorem, relative.
pub const TRANSFORM_REL: f64 = 1e-10;

/// Pairing bimultiplicativity, absolute.
pub const PAIRING_ABS: f64 = 1e-14;

/// Telescoping `S_{i+1} * S_i = S_i`, absolute per entry.
pub const TELESCOPING_ABS: f64 = 1e-10;

/// `S_i * (translate of mu-hat) = 0`, absolute per entry.
pub const ANNIHILATION_ABS: f64 = 1e-10;

/// Tensor-norm multiplicativity and the Riesz norm identity, relative.
pub const PRODUCT_NORM_REL: f64 = 1e-9;

/// Probability mass and `mu-hat(0) = 1`.
pub const PROBABILITY_ABS: f64 = 1e-12;

/// Rank decisions: residuals at or below this are dependent.
pub const RANK_PIVOT: f64 = 1e-8;

/// Rank decisions: residuals at or above this are independent. Anything
/// between `RANK_PIVOT` and this is reported as ill-conditioned.
pub const RANK_GAP: f64 = 1e-4;

/// Residual of a translate after projection onto a claimed invariant span.
pub const INVARIANCE_RESIDUAL: f64 = 1e-8;

/// Singular value threshold for approximate kernels of smooth multipliers.
pub const SINGULAR_VALUE: f64 = 1e-8;

/// Isometry of the coset unpacking map, relative.
pub const ISOMETRY_REL: f64 = 1e-12;

/// Relative difference helper used across the suites.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    let scale = a.abs().max(b.abs());
    if scale == 0.0 {
        0.0
    } else {
        (a - b).abs() / scale
    }
}
