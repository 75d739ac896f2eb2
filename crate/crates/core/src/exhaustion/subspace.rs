//! Translation-invariant subspaces of `ℓ²(G)`: kernels of cutoff multipliers
//! and cyclic subspaces generated by a single vector.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::fourier::{dft, idft};
use crate::function::GroupFunction;
use crate::group::FiniteAbelianGroup;
use crate::linalg::{approximate_null_space, incremental_basis, pivoted_basis, OrthoBasis};
use crate::tolerance::SINGULAR_VALUE;

/// Spectra below this fraction of the largest value count as zero.
pub const SPECTRUM_REL: f64 = 1e-9;

#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    ambient: FiniteAbelianGroup,
    basis: Vec<GroupFunction>,
    fourier_support: Option<Vec<usize>>,
    approximate: bool,
}

impl SubspaceBasis {
    pub(crate) fn from_parts(
        ambient: FiniteAbelianGroup,
        basis: Vec<GroupFunction>,
        fourier_support: Option<Vec<usize>>,
        approximate: bool,
    ) -> Self {
        SubspaceBasis { ambient, basis, fourier_support, approximate }
    }

    pub fn ambient_group(&self) -> &FiniteAbelianGroup {
        &self.ambient
    }

    pub fn basis(&self) -> &[GroupFunction] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Frequencies carrying the subspace, when known exactly.
    pub fn fourier_support(&self) -> Option<&[usize]> {
        self.fourier_support.as_deref()
    }

    /// True when the basis came from a numerical null space.
    pub fn is_approximate(&self) -> bool {
        self.approximate
    }

    pub fn columns(&self) -> Vec<Vec<Complex64>> {
        self.basis.iter().map(|b| b.values().to_vec()).collect()
    }

    pub fn orthonormal(&self) -> Result<OrthoBasis> {
        pivoted_basis(&self.columns())
    }

    /// Largest relative residual of `τ_a b` against the span, over basis
    /// vectors `b` and the given shifts `a`.
    pub fn invariance_residual_under(&self, shifts: &[usize]) -> Result<f64> {
        let q = self.orthonormal()?;
        let mut worst: f64 = 0.0;
        for b in &self.basis {
            for &a in shifts {
                worst = worst.max(q.relative_residual(b.translate(a).values()));
            }
        }
        Ok(worst)
    }

    /// Residual under the factor generators, which suffices for invariance
    /// under the whole group.
    pub fn invariance_residual(&self) -> Result<f64> {
        let g = &self.ambient;
        let shifts: Vec<usize> = (0..g.rank()).map(|m| g.index_of(&g.unit(m))).collect();
        self.invariance_residual_under(&shifts)
    }

    /// Residual under every element of the group.
    pub fn invariance_residual_exhaustive(&self) -> Result<f64> {
        let shifts: Vec<usize> = (0..self.ambient.order()).collect();
        self.invariance_residual_under(&shifts)
    }
}

/// Kernel of convolution by the kernel with multiplier `σ`, i.e. functions
/// whose spectrum vanishes where `σ ≠ 0`.
///
/// Indicator multipliers give the exact character basis `{dft(δ_y) : σ(y) = 1}`.
/// Any other multiplier gives the numerical kernel of `Id - C_S`, flagged
/// approximate.
pub fn kernel_subspace(sigma: &GroupFunction) -> Result<SubspaceBasis> {
    let g = sigma.group().clone();
    let indicator: Option<Vec<bool>> = sigma
        .values()
        .iter()
        .map(|v| match (v.re, v.im) {
            (r, i) if r == 0.0 && i == 0.0 => Some(false),
            (r, i) if r == 1.0 && i == 0.0 => Some(true),
            _ => None,
        })
        .collect();
    if let Some(ind) = indicator {
        let support: Vec<usize> = (0..g.order()).filter(|&y| ind[y]).collect();
        let basis = support.iter().map(|&y| dft(&GroupFunction::delta(&g, y))).collect();
        return Ok(SubspaceBasis::from_parts(g, basis, Some(support), false));
    }

    let n = g.order();
    let kernel = dft(sigma).scaled(1.0 / n as f64);
    // (C_S f)(x) = Σ_y S(x - y) f(y)
    let matrix: Vec<Vec<Complex64>> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| {
                    let id = if x == y { Complex64::new(1.0, 0.0) } else { Complex64::new(0.0, 0.0) };
                    id - kernel.values()[g.sub_index(x, y)]
                })
                .collect()
        })
        .collect();
    let (vectors, _) = approximate_null_space(&matrix, SINGULAR_VALUE);
    let basis = vectors.into_iter().map(|v| GroupFunction::new(g.clone(), v)).collect::<Result<Vec<_>>>()?;
    Ok(SubspaceBasis::from_parts(g, basis, None, true))
}

/// Span of all translates of `v`, with the support of its spectrum. The two
/// must agree in dimension; a mismatch is a law violation.
pub fn cyclic_invariant_subspace(v: &GroupFunction) -> Result<SubspaceBasis> {
    if v.is_zero() {
        return Err(Error::InvalidInput("cyclic subspace of the zero function".into()));
    }
    let g = v.group().clone();
    let spectrum = idft(v);
    let cutoff = SPECTRUM_REL * spectrum.max_abs();
    let fourier_support = spectrum.support(cutoff);

    let ortho = incremental_basis((0..g.order()).map(|a| v.translate(a).into_values()))?;
    if ortho.rank() != fourier_support.len() {
        return Err(Error::LawViolation(format!(
            "translates of v span {} dimensions but its spectrum has {} points",
            ortho.rank(),
            fourier_support.len()
        )));
    }
    let basis = ortho.pivots.iter().map(|&a| v.translate(a)).collect();
    Ok(SubspaceBasis::from_parts(g, basis, Some(fourier_support), false))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::TruncatedMeasure;

    #[test]
    fn indicator_kernel_is_spanned_by_characters() {
        let g = FiniteAbelianGroup::new(vec![2, 3]).unwrap();
        let sigma = GroupFunction::from_real(g.clone(), &[0.0, 1.0, 1.0, 0.0, 0.0, 1.0]).unwrap();
        let e = kernel_subspace(&sigma).unwrap();
        assert_eq!(e.dim(), 3);
        assert!(!e.is_approximate());
        assert!(e.invariance_residual_exhaustive().unwrap() < 1e-12);
        // convolution by S fixes every basis vector
        let s = dft(&sigma).scaled(1.0 / 6.0);
        for b in e.basis() {
            let c = crate::fourier::convolve(&s, b).unwrap();
            assert!(c.max_abs_diff(b).unwrap() < 1e-12);
        }
    }

    #[test]
    fn numerical_kernel_agrees_with_characters() {
        let g = FiniteAbelianGroup::cyclic(8).unwrap();
        // not exactly 0/1, but the kernel of Id - C_S is still where σ = 1
        let sigma = GroupFunction::from_real(g, &[0.0, 1.0, 0.5, 1.0, 0.25, 1.0, 0.0, 0.75]).unwrap();
        let e = kernel_subspace(&sigma).unwrap();
        assert!(e.is_approximate());
        assert_eq!(e.dim(), 3);
        assert!(e.invariance_residual().unwrap() < 1e-8);
    }

    #[test]
    fn cyclic_subspace_of_a_measure_transform() {
        let g = FiniteAbelianGroup::cyclic(9).unwrap();
        let mu = TruncatedMeasure::uniform_on(g, &[1, 4, 5]).unwrap();
        let f = cyclic_invariant_subspace(&mu.mu_hat()).unwrap();
        assert_eq!(f.dim(), 3);
        assert_eq!(f.fourier_support().unwrap(), &[1, 4, 5]);
        assert!(f.invariance_residual_exhaustive().unwrap() < 1e-10);
    }

    #[test]
    fn rejects_zero_vector() {
        let g = FiniteAbelianGroup::cyclic(3).unwrap();
        assert!(cyclic_invariant_subspace(&GroupFunction::zeros(&g)).is_err());
    }
}
