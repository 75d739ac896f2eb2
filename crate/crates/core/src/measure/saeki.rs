//! `Σ_n |μ̂(n)|² φ₀(|μ̂(n)|)` for the two weight functions of interest.
//!
//! With `φ₀(x) = x^{p-2}` the sum is exactly `‖μ̂‖_p^p`. With
//! `φ₀(x) = exp(-√|log x|)` finiteness puts `μ̂` in every `ℓ^p`, `p > 2`.

use crate::error::{Error, Result};
use crate::function::GroupFunction;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Phi0 {
    /// `x ↦ x^e`, `e > 0`.
    Power(f64),
    /// `x ↦ exp(-√|log x|)`.
    ExpSqrtLog,
}

impl Phi0 {
    /// The power weight for exponent `p`.
    pub fn for_exponent(p: f64) -> Result<Self> {
        let phi = Phi0::Power(p - 2.0);
        phi.validate()?;
        Ok(phi)
    }

    pub fn validate(&self) -> Result<()> {
        match *self {
            Phi0::Power(e) if !(e.is_finite() && e > 0.0) => {
                Err(Error::InvalidInput(format!("power weight x^{e} does not vanish at 0")))
            }
            _ => Ok(()),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        let x = x.abs();
        if x == 0.0 {
            return 0.0;
        }
        match *self {
            Phi0::Power(e) => x.powf(e),
            Phi0::ExpSqrtLog => (-x.ln().abs().sqrt()).exp(),
        }
    }

    pub fn name(&self) -> String {
        match self {
            Phi0::Power(e) => format!("power({e})"),
            Phi0::ExpSqrtLog => "exp_sqrt_log".to_string(),
        }
    }
}

/// Sum over magnitudes, for coefficient lists that are not materialized as a
/// [`GroupFunction`].
pub fn saeki_sum(magnitudes: impl IntoIterator<Item = f64>, phi: Phi0) -> Result<f64> {
    phi.validate()?;
    Ok(magnitudes.into_iter().map(|x| x * x * phi.eval(x)).sum())
}

pub fn saeki_diagnostic(mu_hat: &GroupFunction, phi: Phi0) -> Result<f64> {
    saeki_sum(mu_hat.values().iter().map(|v| v.norm()), phi)
}
