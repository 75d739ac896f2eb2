//! Fixtures shared by the benchmarks.

use thinex_core::measure::build_truncated_measure;
use thinex_core::{
    build_neighborhoods, FiniteAbelianGroup, GroupFunction, NeighborhoodStrategy, ProductMeasureSpec, Result,
    TruncatedMeasure,
};
use thinex_core::{exhaustion::CutoffFamily, Complex64};

/// Deterministic non-symmetric test function.
pub fn wave(group: &FiniteAbelianGroup) -> GroupFunction {
    let values = (0..group.order())
        .map(|i| {
            let t = i as f64;
            Complex64::new((0.37 * t).sin() + 0.1, (0.11 * t * t).cos())
        })
        .collect();
    GroupFunction::new(group.clone(), values).expect("length matches")
}

/// Regrouped product measure over `Z/2` with its cylinder family.
pub fn product_model(depth: usize) -> Result<(TruncatedMeasure, CutoffFamily)> {
    let two = FiniteAbelianGroup::cyclic(2)?;
    let spec = ProductMeasureSpec::regrouped(two.clone(), two, depth)?;
    let mu = build_truncated_measure(&spec)?;
    let strategy = NeighborhoodStrategy::QuotientCylinder { prefixes: mu.cylinder_prefixes() };
    let fam = build_neighborhoods(&mu.support(), mu.group(), &strategy)?;
    Ok((mu, fam))
}
