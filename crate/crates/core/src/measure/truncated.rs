use crate::error::{Error, Result};
use crate::fourier::dft;
use crate::function::GroupFunction;
use crate::group::FiniteAbelianGroup;
use crate::tolerance::PROBABILITY_ABS;

/// A probability measure on a finite group (the dual-side model), stored as
/// its weights.
#[derive(Debug, Clone)]
pub struct TruncatedMeasure {
    group: FiniteAbelianGroup,
    weights: GroupFunction,
    support_size: usize,
    // leading factor counts of each block (A_0 first); empty when unstructured
    blocks: Vec<usize>,
}

impl TruncatedMeasure {
    pub fn from_weights(group: FiniteAbelianGroup, weights: &[f64]) -> Result<Self> {
        if let Some(w) = weights.iter().find(|w| !w.is_finite() || **w < 0.0) {
            return Err(Error::InvalidInput(format!("weight {w} is not a non-negative number")));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > PROBABILITY_ABS {
            return Err(Error::InvalidInput(format!("weights sum to {total}, not 1")));
        }
        let support_size = weights.iter().filter(|&&w| w > 0.0).count();
        let weights = GroupFunction::from_real(group.clone(), weights)?;
        Ok(TruncatedMeasure { group, weights, support_size, blocks: Vec::new() })
    }

    /// Uniform probability on the given element indices.
    pub fn uniform_on(group: FiniteAbelianGroup, support: &[usize]) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidInput("uniform measure on an empty set".into()));
        }
        let mut w = vec![0.0; group.order()];
        let mass = 1.0 / support.len() as f64;
        for &i in support {
            if i >= group.order() {
                return Err(Error::InvalidInput(format!("index {i} outside group {group}")));
            }
            w[i] = mass;
        }
        // renormalize against rounding in the sum
        let total: f64 = w.iter().sum();
        w.iter_mut().for_each(|v| *v /= total);
        TruncatedMeasure::from_weights(group, &w)
    }

    pub fn dirac(group: FiniteAbelianGroup, index: usize) -> Result<Self> {
        TruncatedMeasure::uniform_on(group, &[index])
    }

    pub(crate) fn with_blocks(mut self, blocks: Vec<usize>) -> Self {
        self.blocks = blocks;
        self
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn weights(&self) -> &GroupFunction {
        &self.weights
    }

    pub fn support_size(&self) -> usize {
        self.support_size
    }

    /// Indices with strictly positive weight.
    pub fn support(&self) -> Vec<usize> {
        self.weights.support(0.0)
    }

    pub fn total_mass(&self) -> f64 {
        self.weights.values().iter().map(|v| v.re).sum()
    }

    /// Fourier-Stieltjes coefficients on the group side.
    pub fn mu_hat(&self) -> GroupFunction {
        dft(&self.weights)
    }

    /// Number of cyclic factors in `A_0` and in each `A_j`.
    pub fn block_factor_counts(&self) -> &[usize] {
        &self.blocks
    }

    /// Factor prefixes `|A_0| + … + |A_i|` (in factor counts) for `i = 1..=J`:
    /// the coordinates a level-`i` cylinder looks at.
    pub fn cylinder_prefixes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut acc = self.blocks.first().copied().unwrap_or(0);
        for &b in self.blocks.iter().skip(1) {
            acc += b;
            out.push(acc);
        }
        out
    }
}
