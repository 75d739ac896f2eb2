//! Singular measures on finite models and their summability diagnostics.

pub mod circle;
pub mod cutoff;
pub mod product;
pub mod saeki;
pub mod series;
pub mod symbol;
mod truncated;

pub use circle::{cantor_support, riesz_coefficients_sparse, riesz_product_coefficients, CircleMeasureModel};
pub use cutoff::{smooth_cutoff_coefficients, Arc, SmoothCutoff};
pub use product::{
    build_truncated_measure, lp_norm_factor_closed_form, lp_norm_truncated_product, mu_hat_factor,
    regroup_schedule, support_density_decay, support_haar_density, ProductMeasureSpec,
};
pub use saeki::{saeki_diagnostic, Phi0};
pub use series::{lp_series_tail, SeriesReport};
pub use symbol::{symbol_zero_diagnostics, SymbolReport, TrigPolynomial};
pub use truncated::TruncatedMeasure;
