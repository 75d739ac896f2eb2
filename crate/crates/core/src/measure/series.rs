//! Partial sums of `Σ_n k^n (k^n - 1)^{1-p}`, the series whose finiteness
//! separates `p > 2` from `p ≤ 2`.
//!
//! Writing `term_n = k^{n(2-p)} (1 - k^{-n})^{1-p}`, the second factor
//! decreases in `n` when `p > 1`, so for `p > 2` the tail after `n` is at most
//! `(1 - k^{-(n+1)})^{1-p} r^{n+1} / (1 - r)` with `r = k^{2-p}`. For `p ≤ 2`
//! every term is at least 1 and the partial sums grow at least linearly.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesRow {
    pub n: usize,
    pub term: f64,
    pub partial_sum: f64,
    /// `term_n / term_{n-1}`; absent for `n = 1`.
    pub ratio: Option<f64>,
    /// Upper bound on `Σ_{m > n} term_m`; present only when `p > 2`.
    pub tail_bound: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct SeriesReport {
    pub k: u64,
    pub p: f64,
    pub rows: Vec<SeriesRow>,
    /// `k^{2-p}`, the limit of consecutive term ratios.
    pub ratio_limit: f64,
    pub convergent: bool,
}

impl SeriesReport {
    /// First `n` whose tail bound is below `eps`.
    pub fn first_tail_below(&self, eps: f64) -> Option<usize> {
        self.rows.iter().find(|r| r.tail_bound.is_some_and(|t| t < eps)).map(|r| r.n)
    }

    /// First `n` whose partial sum exceeds `bound`.
    pub fn first_partial_above(&self, bound: f64) -> Option<usize> {
        self.rows.iter().find(|r| r.partial_sum > bound).map(|r| r.n)
    }

    pub fn final_ratio(&self) -> Option<f64> {
        self.rows.last().and_then(|r| r.ratio)
    }

    pub fn partial_sums_increasing(&self) -> bool {
        self.rows.windows(2).all(|w| w[1].partial_sum > w[0].partial_sum)
    }
}

pub fn series_term(k: u64, p: f64, n: usize) -> f64 {
    let lk = (k as f64).ln();
    let nf = n as f64;
    let shrink = (-(k as f64).powf(-nf)).ln_1p();
    (nf * lk * (2.0 - p) + (1.0 - p) * shrink).exp()
}

pub fn lp_series_tail(k: u64, p: f64, n_max: usize) -> Result<SeriesReport> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} must be at least 2")));
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    if n_max < 1 {
        return Err(Error::InvalidInput("n_max must be at least 1".into()));
    }
    let r = (k as f64).powf(2.0 - p);
    let convergent = p > 2.0;
    let mut rows: Vec<SeriesRow> = Vec::with_capacity(n_max);
    let mut partial = 0.0;
    for n in 1..=n_max {
        let term = series_term(k, p, n);
        partial += term;
        let ratio = rows.last().map(|prev| term / prev.term);
        let tail_bound = convergent.then(|| {
            let next = (n + 1) as f64;
            let correction = (-(k as f64).powf(-next)).ln_1p() * (1.0 - p);
            (correction + next * r.ln()).exp() / (1.0 - r)
        });
        rows.push(SeriesRow { n, term, partial_sum: partial, ratio, tail_bound });
    }
    Ok(SeriesReport { k, p, rows, ratio_limit: r, convergent })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_match_direct_formula() {
        for (k, p, n) in [(2u64, 3.0, 1usize), (2, 2.5, 5), (3, 4.0, 3), (5, 2.1, 7)] {
            let c = (k as f64).powi(n as i32);
            let direct = c * (c - 1.0).powf(1.0 - p);
            assert!((series_term(k, p, n) - direct).abs() <= 1e-13 * direct);
        }
    }

    #[test]
    fn p_equal_two_is_unbounded() {
        let r = lp_series_tail(2, 2.0, 60).unwrap();
        assert!(!r.convergent);
        assert!(r.rows.iter().all(|row| row.term >= 1.0));
        assert!((r.rows.last().unwrap().term - 1.0).abs() < 1e-15);
        assert!(r.first_partial_above(50.0).unwrap() <= 60);
        assert!(r.rows.iter().all(|row| row.tail_bound.is_none()));
    }

    #[test]
    fn p_three_ratio_tends_to_one_half() {
        let r = lp_series_tail(2, 3.0, 30).unwrap();
        assert!((r.final_ratio().unwrap() - 0.5).abs() < 1e-6);
    }

    #[test]
    fn p_two_and_a_half_is_cauchy() {
        let r = lp_series_tail(2, 2.5, 60).unwrap();
        assert!(r.partial_sums_increasing());
        assert!(r.first_tail_below(1e-6).unwrap() <= 50);
    }

    #[test]
    fn tail_bound_dominates_brute_force_tail() {
        // summed directly: total - partial cancels to noise for small tails
        let r = lp_series_tail(3, 2.7, 80).unwrap();
        for (i, row) in r.rows.iter().take(40).enumerate() {
            let tail: f64 = r.rows[i + 1..].iter().rev().map(|x| x.term).sum();
            assert!(row.tail_bound.unwrap() >= tail, "n = {}", row.n);
        }
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(lp_series_tail(1, 3.0, 10).is_err());
        assert!(lp_series_tail(2, 1.0, 10).is_err());
        assert!(lp_series_tail(2, 3.0, 0).is_err());
    }
}
