//! Rank decisions for invariant subspaces.
//!
//! Ranks are decided by column-pivoted Gram-Schmidt with two passes of
//! re-orthogonalization. Columns are normalized first; a residual at or below
//! [`RANK_PIVOT`] is dependent, one at or above [`RANK_GAP`] is independent,
//! and anything in between is an [`Error::IllConditioned`] hard error.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::{RANK_GAP, RANK_PIVOT};

/// Orthonormal basis of a column span plus the pivot columns that produced it.
#[derive(Debug, Clone)]
pub struct OrthoBasis {
    pub q: Vec<Vec<Complex64>>,
    pub pivots: Vec<usize>,
    /// Smallest accepted residual, 1.0 when the span is empty.
    pub min_accepted: f64,
    /// Largest rejected residual, 0.0 when every column was accepted.
    pub max_rejected: f64,
}

impl OrthoBasis {
    pub fn rank(&self) -> usize {
        self.q.len()
    }

    /// `‖v - P v‖ / ‖v‖` for the orthogonal projection `P` onto the span.
    pub fn relative_residual(&self, v: &[Complex64]) -> f64 {
        let norm = norm2(v);
        if norm == 0.0 {
            return 0.0;
        }
        let mut r = v.to_vec();
        for _ in 0..2 {
            for q in &self.q {
                let c = inner(q, &r);
                axpy(&mut r, -c, q);
            }
        }
        norm2(&r) / norm
    }
}

pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm2(a: &[Complex64]) -> f64 {
    a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt()
}

fn axpy(y: &mut [Complex64], a: Complex64, x: &[Complex64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += a * xi;
    }
}

pub fn pivoted_basis(columns: &[Vec<Complex64>]) -> Result<OrthoBasis> {
    let mut residuals: Vec<Vec<Complex64>> = columns
        .iter()
        .map(|c| {
            let n = norm2(c);
            if n == 0.0 {
                c.clone()
            } else {
                c.iter().map(|v| v / n).collect()
            }
        })
        .collect();
    let mut norms: Vec<f64> = residuals.iter().map(|r| norm2(r)).collect();
    let mut remaining: Vec<usize> = (0..columns.len()).collect();
    let mut basis = OrthoBasis { q: Vec::new(), pivots: Vec::new(), min_accepted: 1.0, max_rejected: 0.0 };

    while let Some(pos) =
        (0..remaining.len()).max_by(|&a, &b| norms[remaining[a]].total_cmp(&norms[remaining[b]]))
    {
        let j = remaining[pos];
        let mut r = residuals[j].clone();
        for q in &basis.q {
            let c = inner(q, &r);
            axpy(&mut r, -c, q);
        }
        let rn = norm2(&r);
        if rn <= RANK_PIVOT {
            // column j had the largest residual, so the rest are dependent too
            basis.max_rejected = rn;
            break;
        }
        if rn < RANK_GAP {
            return Err(Error::IllConditioned { residual: rn });
        }
        remaining.swap_remove(pos);
        let q: Vec<Complex64> = r.iter().map(|v| v / rn).collect();
        for &k in &remaining {
            let c = inner(&q, &residuals[k]);
            axpy(&mut residuals[k], -c, &q);
            norms[k] = norm2(&residuals[k]);
        }
        basis.min_accepted = basis.min_accepted.min(rn);
        basis.pivots.push(j);
        basis.q.push(q);
    }
    Ok(basis)
}

/// Greedy basis over a column stream, in order, without pivoting. Memory stays
/// at the size of the basis, which matters for spans of all translates.
pub fn incremental_basis(columns: impl IntoIterator<Item = Vec<Complex64>>) -> Result<OrthoBasis> {
    let mut basis = OrthoBasis { q: Vec::new(), pivots: Vec::new(), min_accepted: 1.0, max_rejected: 0.0 };
    for (j, col) in columns.into_iter().enumerate() {
        let n = norm2(&col);
        if n == 0.0 {
            continue;
        }
        let mut r: Vec<Complex64> = col.iter().map(|v| v / n).collect();
        for _ in 0..2 {
            for q in &basis.q {
                let c = inner(q, &r);
                axpy(&mut r, -c, q);
            }
        }
        let rn = norm2(&r);
        if rn <= RANK_PIVOT {
            basis.max_rejected = basis.max_rejected.max(rn);
            continue;
        }
        if rn < RANK_GAP {
            return Err(Error::IllConditioned { residual: rn });
        }
        basis.min_accepted = basis.min_accepted.min(rn);
        basis.pivots.push(j);
        basis.q.push(r.iter().map(|v| v / rn).collect());
    }
    Ok(basis)
}

pub fn rank(columns: &[Vec<Complex64>]) -> Result<usize> {
    Ok(pivoted_basis(columns)?.rank())
}

/// Right singular vectors of `m` (square, row-major) whose singular values are
/// below `threshold`, with the singular values themselves.
pub fn approximate_null_space(
    m: &[Vec<Complex64>],
    threshold: f64,
) -> (Vec<Vec<Complex64>>, Vec<f64>) {
    let n = m.len();
    let mat = DMatrix::from_fn(n, n, |i, j| m[i][j]);
    let svd = mat.svd(false, true);
    let v_t = svd.v_t.expect("requested V^T");
    let mut vectors = Vec::new();
    let mut values = Vec::new();
    for (k, &s) in svd.singular_values.iter().enumerate() {
        if s < threshold {
            vectors.push((0..n).map(|j| v_t[(k, j)].conj()).collect());
            values.push(s);
        }
    }
    (vectors, values)
}
