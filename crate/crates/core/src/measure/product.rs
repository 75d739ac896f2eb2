//! The explicit product measure on `A_0 × Π_j A_j`.
//!
//! `μ = Π μ_j` with `μ_0` uniform on `A_0` and `μ_j` uniform on `A_j ∖ {0}`.
//! In the regrouped form `A_j = B^n` with `c_j = k^n` occurring exactly `k^n`
//! times, `k = |B|`. Only finite truncations at depth `J` are built; limits
//! are reported as monotone trends plus explicit tail bounds.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::fourier::{dft, lp_norm_pow};
use crate::function::GroupFunction;
use crate::group::FiniteAbelianGroup;

use super::TruncatedMeasure;

/// First `count` entries of `c_1, c_2, …` where `k^n` occurs `k^n` times.
pub fn regroup_schedule(k: u64, count: usize) -> Result<Vec<u64>> {
    Ok(regroup_exponents(k, count)?
        .into_iter()
        .map(|n| k.pow(n as u32))
        .collect())
}

// the block exponent n for each j
fn regroup_exponents(k: u64, count: usize) -> Result<Vec<usize>> {
    if k < 2 {
        return Err(Error::InvalidInput(format!("k = {k} must be at least 2")));
    }
    let mut out = Vec::with_capacity(count);
    let mut n = 1usize;
    while out.len() < count {
        let c = k
            .checked_pow(n as u32)
            .ok_or_else(|| Error::InvalidInput(format!("k^{n} overflows")))?;
        let take = (c as usize).min(count - out.len());
        out.extend(std::iter::repeat_n(n, take));
        n += 1;
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ProductMeasureSpec {
    a0: FiniteAbelianGroup,
    base: Option<FiniteAbelianGroup>,
    blocks: Vec<FiniteAbelianGroup>,
}

impl ProductMeasureSpec {
    /// `A_j = B^n` following the regrouping schedule, for `j = 1..=depth`.
    pub fn regrouped(a0: FiniteAbelianGroup, base: FiniteAbelianGroup, depth: usize) -> Result<Self> {
        let k = base.order() as u64;
        if k < 2 {
            return Err(Error::InvalidInput("base group B must be nontrivial".into()));
        }
        let blocks = regroup_exponents(k, depth)?
            .into_iter()
            .map(|n| base.power(n))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProductMeasureSpec { a0, base: Some(base), blocks })
    }

    /// Arbitrary factors `A_1, …, A_J`, each of order at least 2.
    pub fn explicit(a0: FiniteAbelianGroup, blocks: Vec<FiniteAbelianGroup>) -> Result<Self> {
        if let Some(b) = blocks.iter().find(|b| b.order() < 2) {
            return Err(Error::InvalidInput(format!("block {b} has order < 2")));
        }
        Ok(ProductMeasureSpec { a0, base: None, blocks })
    }

    pub fn a0(&self) -> &FiniteAbelianGroup {
        &self.a0
    }

    pub fn base(&self) -> Option<&FiniteAbelianGroup> {
        self.base.as_ref()
    }

    pub fn k(&self) -> Option<usize> {
        self.base.as_ref().map(|b| b.order())
    }

    pub fn depth(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[FiniteAbelianGroup] {
        &self.blocks
    }

    /// `c_j = |A_j|`.
    pub fn schedule(&self) -> Vec<u64> {
        self.blocks.iter().map(|b| b.order() as u64).collect()
    }

    /// The same construction truncated at a smaller depth.
    pub fn truncate(&self, depth: usize) -> ProductMeasureSpec {
        ProductMeasureSpec {
            a0: self.a0.clone(),
            base: self.base.clone(),
            blocks: self.blocks[..depth.min(self.blocks.len())].to_vec(),
        }
    }

    /// `A_0 ⊕ A_1 ⊕ … ⊕ A_J`, with order-1 factors of `A_0` dropped.
    pub fn group(&self) -> Result<FiniteAbelianGroup> {
        let mut factors: Vec<usize> = self.a0_factors();
        for b in &self.blocks {
            factors.extend_from_slice(b.factors());
        }
        FiniteAbelianGroup::new(factors)
    }

    fn a0_factors(&self) -> Vec<usize> {
        self.a0.factors().iter().copied().filter(|&n| n > 1).collect()
    }

    pub fn exact_group_order(&self) -> BigUint {
        self.schedule()
            .iter()
            .fold(BigUint::from(self.a0.order()), |acc, &c| acc * BigUint::from(c))
    }

    /// `|A_0| · Π (c_j - 1)`.
    pub fn exact_support_size(&self) -> BigUint {
        self.schedule()
            .iter()
            .fold(BigUint::from(self.a0.order()), |acc, &c| acc * BigUint::from(c - 1))
    }

    pub fn describe(&self) -> String {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        match &self.base {
            Some(b) => format!("product A0={} B={} k={} J={}", self.a0, b, b.order(), self.depth()),
            None => format!("product A0={} blocks={}", self.a0, blocks.join(";")),
        }
    }
}

pub fn build_truncated_measure(spec: &ProductMeasureSpec) -> Result<TruncatedMeasure> {
    let group = spec.group()?;
    let a0_rank = spec.a0_factors().len();
    let block_ranks: Vec<usize> = spec.blocks.iter().map(|b| b.rank()).collect();
    let a0_mass = 1.0 / spec.a0.order() as f64;
    let block_mass: Vec<f64> = spec.schedule().iter().map(|&c| 1.0 / (c - 1) as f64).collect();

    let mut coords = vec![0usize; group.rank()];
    let mut weights = vec![0.0; group.order()];
    for (i, w) in weights.iter_mut().enumerate() {
        group.write_coords(i, &mut coords);
        let mut v = a0_mass;
        let mut start = a0_rank;
        for (&r, &m) in block_ranks.iter().zip(&block_mass) {
            if coords[start..start + r].iter().all(|&c| c == 0) {
                v = 0.0;
                break;
            }
            v *= m;
            start += r;
        }
        *w = v;
    }
    let mut layout = vec![a0_rank];
    layout.extend(block_ranks);
    Ok(TruncatedMeasure::from_weights(group, &weights)?.with_blocks(layout))
}

/// `μ̂_j` at a dual point: 1 at zero, `-1/(c-1)` elsewhere.
pub fn mu_hat_factor(c: u64, zero: bool) -> Result<f64> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("c = {c} must be at least 2")));
    }
    Ok(if zero { 1.0 } else { -1.0 / (c - 1) as f64 })
}

/// `‖μ̂_j‖_p^p = 1 + (c-1)^{1-p}`.
pub fn lp_norm_factor_closed_form(c: u64, p: f64) -> Result<f64> {
    if c < 2 {
        return Err(Error::InvalidInput(format!("c = {c} must be at least 2")));
    }
    if !(p.is_finite() && p > 1.0) {
        return Err(Error::InvalidExponent(p));
    }
    Ok(1.0 + ((c - 1) as f64).powf(1.0 - p))
}

/// `‖μ̂_A‖_p^p` for the uniform probability on `A ∖ {0}`, by transforming the
/// density.
pub fn factor_norm_by_transform(a: &FiniteAbelianGroup, p: f64) -> Result<f64> {
    let support: Vec<usize> = (1..a.order()).collect();
    let mu = TruncatedMeasure::uniform_on(a.clone(), &support)?;
    lp_norm_pow(&mu.mu_hat(), p)
}

/// Exact `Π_{j ≤ J} (1 - 1/c_j)`.
pub fn support_haar_density(spec: &ProductMeasureSpec) -> BigRational {
    spec.schedule().iter().fold(BigRational::one(), |acc, &c| {
        acc * BigRational::new(BigUint::from(c - 1).into(), BigUint::from(c).into())
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityRow {
    pub depth: usize,
    pub density: BigRational,
    pub harmonic: BigRational,
    /// `Some(n)` when depth `J` closes the `n`-th block of equal `c_j`.
    pub block_closed: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct DensityDecayReport {
    pub rows: Vec<DensityRow>,
    pub strictly_decreasing: bool,
    /// `Σ 1/c_j` at the end of each closed block.
    pub harmonic_at_block_ends: Vec<BigRational>,
}

impl DensityDecayReport {
    /// Every closed block `n` has pushed `Σ 1/c_j` to at least `n`.
    pub fn harmonic_grows_by_blocks(&self) -> bool {
        self.harmonic_at_block_ends
            .iter()
            .enumerate()
            .all(|(i, h)| *h >= BigRational::from_integer((i + 1).into()))
    }
}

/// Support density and `Σ 1/c_j` for `J = 0..=j_max` under the regrouping
/// schedule for `k`.
pub fn support_density_decay(k: u64, j_max: usize) -> Result<DensityDecayReport> {
    if j_max < 1 {
        return Err(Error::InvalidInput("J_max must be at least 1".into()));
    }
    let schedule = regroup_schedule(k, j_max)?;
    let mut rows = vec![DensityRow {
        depth: 0,
        density: BigRational::one(),
        harmonic: BigRational::zero(),
        block_closed: None,
    }];
    let mut block_ends = Vec::new();
    for (j, &c) in schedule.iter().enumerate() {
        let prev = rows.last().expect("seeded");
        let density = &prev.density * BigRational::new(BigUint::from(c - 1).into(), BigUint::from(c).into());
        let harmonic = &prev.harmonic + BigRational::new(1.into(), BigUint::from(c).into());
        let closes = schedule.get(j + 1).is_none_or(|&next| next != c) && block_is_full(&schedule, j, c);
        let block_closed = closes.then(|| block_ends.len() + 1);
        if closes {
            block_ends.push(harmonic.clone());
        }
        rows.push(DensityRow { depth: j + 1, density, harmonic, block_closed });
    }
    let strictly_decreasing = rows.windows(2).all(|w| w[1].density < w[0].density);
    Ok(DensityDecayReport { rows, strictly_decreasing, harmonic_at_block_ends: block_ends })
}

// the run of value c ending at j has length c
fn block_is_full(schedule: &[u64], j: usize, c: u64) -> bool {
    let run = schedule[..=j].iter().rev().take_while(|&&v| v == c).count();
    run as u64 == c
}

/// `‖μ̂‖_p^p` of the truncation from factor closed forms; the `A_0` factor is
/// taken from the transform of the uniform measure on `A_0`.
pub fn lp_norm_truncated_product(spec: &ProductMeasureSpec, p: f64) -> Result<f64> {
    let a0_uniform = GroupFunction::constant(spec.a0(), (1.0 / spec.a0().order() as f64).into());
    let mut total = lp_norm_pow(&dft(&a0_uniform), p)?;
    for c in spec.schedule() {
        total *= lp_norm_factor_closed_form(c, p)?;
    }
    Ok(total)
}
