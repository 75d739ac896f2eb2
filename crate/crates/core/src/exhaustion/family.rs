//! Nested neighborhoods `U_1 ⊇ U_2 ⊇ … ⊇ K` of a support set, their cutoff
//! multipliers `σ_i = 1_{U_i^∁}` and the convolution kernels `S_i`.

use crate::error::{Error, Result};
use crate::fourier::{convolve, dft};
use crate::function::GroupFunction;
use crate::group::{quotient_map, FiniteAbelianGroup};
use crate::tolerance::TELESCOPING_ABS;

#[derive(Debug, Clone, PartialEq)]
pub enum NeighborhoodStrategy {
    /// Balls `{x : d(x, K) ≤ r_i}` for non-increasing radii, `d` the sum of
    /// circular coordinate distances.
    MetricShrink { radii: Vec<usize> },
    /// Cylinders `π_i^{-1}(π_i(K))` where `π_i` kills every factor from
    /// position `prefixes[i]` on; prefixes must be non-decreasing.
    QuotientCylinder { prefixes: Vec<usize> },
}

#[derive(Debug, Clone)]
pub struct CutoffLevel {
    pub neighborhood: Vec<bool>,
    /// Multiplier on the dual side.
    pub sigma: GroupFunction,
    /// `S = dft(σ) / |G|`: convolution by `S` multiplies spectra by `σ`.
    pub kernel: GroupFunction,
}

impl CutoffLevel {
    /// The multiplier as exact 0/1 integers, if it is an indicator.
    pub fn indicator(&self) -> Option<Vec<u8>> {
        self.sigma
            .values()
            .iter()
            .map(|v| match (v.re, v.im) {
                (r, i) if r == 0.0 && i == 0.0 => Some(0),
                (r, i) if r == 1.0 && i == 0.0 => Some(1),
                _ => None,
            })
            .collect()
    }

    pub fn neighborhood_size(&self) -> usize {
        self.neighborhood.iter().filter(|&&b| b).count()
    }

    /// `|U_i^∁|`.
    pub fn complement_size(&self) -> usize {
        self.neighborhood.len() - self.neighborhood_size()
    }
}

#[derive(Debug, Clone)]
pub struct CutoffFamily {
    group: FiniteAbelianGroup,
    levels: Vec<CutoffLevel>,
}

/// `dft(σ) / |G|`.
pub fn kernel_of_multiplier(sigma: &GroupFunction) -> GroupFunction {
    dft(sigma).scaled(1.0 / sigma.group().order() as f64)
}

impl CutoffFamily {
    /// Indicator family from raw neighborhoods. Nesting is not enforced here;
    /// [`verify_telescoping`] reports it.
    pub fn from_neighborhoods(group: &FiniteAbelianGroup, sets: Vec<Vec<bool>>) -> Result<Self> {
        let levels = sets
            .into_iter()
            .map(|u| {
                if u.len() != group.order() {
                    return Err(Error::InvalidInput("neighborhood mask has wrong length".into()));
                }
                let values: Vec<f64> = u.iter().map(|&inside| if inside { 0.0 } else { 1.0 }).collect();
                let sigma = GroupFunction::from_real(group.clone(), &values)?;
                let kernel = kernel_of_multiplier(&sigma);
                Ok(CutoffLevel { neighborhood: u, sigma, kernel })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CutoffFamily { group: group.clone(), levels })
    }

    /// Family from explicit element-index sets.
    pub fn from_index_sets(group: &FiniteAbelianGroup, sets: &[Vec<usize>]) -> Result<Self> {
        let masks = sets
            .iter()
            .map(|s| {
                let mut mask = vec![false; group.order()];
                for &i in s {
                    *mask.get_mut(i).ok_or_else(|| Error::InvalidInput(format!("index {i} outside {group}")))? =
                        true;
                }
                Ok(mask)
            })
            .collect::<Result<Vec<_>>>()?;
        CutoffFamily::from_neighborhoods(group, masks)
    }

    /// Smooth (non-indicator) multipliers, for diagnostics only. The
    /// neighborhood of a level is where `σ < 1`.
    pub fn from_smooth(group: &FiniteAbelianGroup, sigmas: Vec<Vec<f64>>) -> Result<Self> {
        let levels = sigmas
            .into_iter()
            .map(|s| {
                let neighborhood = s.iter().map(|&v| v < 1.0).collect();
                let sigma = GroupFunction::from_real(group.clone(), &s)?;
                let kernel = kernel_of_multiplier(&sigma);
                Ok(CutoffLevel { neighborhood, sigma, kernel })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CutoffFamily { group: group.clone(), levels })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn levels(&self) -> &[CutoffLevel] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn is_nested(&self) -> bool {
        self.levels.windows(2).all(|w| {
            w[1].neighborhood.iter().zip(&w[0].neighborhood).all(|(&inner, &outer)| !inner || outer)
        })
    }

    pub fn neighborhood_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.neighborhood_size()).collect()
    }

    /// Levels in a different order (used to break nesting on purpose).
    pub fn reordered(&self, order: &[usize]) -> CutoffFamily {
        CutoffFamily { group: self.group.clone(), levels: order.iter().map(|&i| self.levels[i].clone()).collect() }
    }
}

fn circular_distance(group: &FiniteAbelianGroup, a: usize, b: usize, ca: &mut [usize], cb: &mut [usize]) -> usize {
    group.write_coords(a, ca);
    group.write_coords(b, cb);
    ca.iter()
        .zip(cb.iter())
        .zip(group.factors())
        .map(|((&x, &y), &n)| {
            let d = x.abs_diff(y);
            d.min(n - d)
        })
        .sum()
}

pub fn build_neighborhoods(
    support: &[usize],
    group: &FiniteAbelianGroup,
    strategy: &NeighborhoodStrategy,
) -> Result<CutoffFamily> {
    if support.is_empty() {
        return Err(Error::InvalidInput("support set K is empty".into()));
    }
    if let Some(&i) = support.iter().find(|&&i| i >= group.order()) {
        return Err(Error::InvalidInput(format!("support index {i} outside {group}")));
    }
    let mut in_k = vec![false; group.order()];
    for &i in support {
        in_k[i] = true;
    }
    if in_k.iter().all(|&b| b) {
        return Err(Error::InvalidInput("K is the whole group; no room for neighborhoods".into()));
    }
    let masks: Vec<Vec<bool>> = match strategy {
        NeighborhoodStrategy::MetricShrink { radii } => {
            if radii.is_empty() || radii.windows(2).any(|w| w[1] > w[0]) {
                return Err(Error::InvalidInput("radii must be non-empty and non-increasing".into()));
            }
            let mut ca = vec![0; group.rank()];
            let mut cb = vec![0; group.rank()];
            let dist: Vec<usize> = (0..group.order())
                .map(|x| {
                    support
                        .iter()
                        .map(|&k| circular_distance(group, x, k, &mut ca, &mut cb))
                        .min()
                        .expect("K is non-empty")
                })
                .collect();
            radii.iter().map(|&r| dist.iter().map(|&d| d <= r).collect()).collect()
        }
        NeighborhoodStrategy::QuotientCylinder { prefixes } => {
            if prefixes.is_empty()
                || prefixes.windows(2).any(|w| w[1] < w[0])
                || prefixes.iter().any(|&p| p > group.rank())
            {
                return Err(Error::InvalidInput(format!(
                    "prefixes must be non-empty, non-decreasing and at most {}",
                    group.rank()
                )));
            }
            prefixes
                .iter()
                .map(|&p| {
                    let kill: Vec<_> = (p..group.rank()).map(|m| group.unit(m)).collect();
                    let q = quotient_map(group, &kill)?;
                    let mut image: Vec<usize> = support.iter().map(|&k| q.project_index(k)).collect();
                    image.sort_unstable();
                    image.dedup();
                    Ok(q.preimage(&image))
                })
                .collect::<Result<Vec<_>>>()?
        }
    };
    let fam = CutoffFamily::from_neighborhoods(group, masks)?;
    debug_assert!(fam.is_nested());
    Ok(fam)
}

#[derive(Debug, Clone)]
pub struct TelescopingReport {
    /// Per consecutive pair: `σ_{i+1} σ_i = σ_i` (exact for indicators).
    pub multiplier_ok: Vec<bool>,
    /// Per consecutive pair: `max |S_{i+1} * S_i - S_i|`.
    pub kernel_deviation: Vec<f64>,
    pub holds: bool,
}

pub fn telescoping_report(fam: &CutoffFamily) -> Result<TelescopingReport> {
    let mut multiplier_ok = Vec::new();
    let mut kernel_deviation = Vec::new();
    for w in fam.levels.windows(2) {
        let (cur, next) = (&w[0], &w[1]);
        let ok = match (cur.indicator(), next.indicator()) {
            (Some(a), Some(b)) => a.iter().zip(&b).all(|(&s_i, &s_next)| s_next * s_i == s_i),
            _ => cur
                .sigma
                .values()
                .iter()
                .zip(next.sigma.values())
                .all(|(s_i, s_next)| (s_next * s_i - s_i).norm() <= TELESCOPING_ABS),
        };
        multiplier_ok.push(ok);
        let product = convolve(&next.kernel, &cur.kernel)?;
        kernel_deviation.push(product.max_abs_diff(&cur.kernel)?);
    }
    let holds = multiplier_ok.iter().all(|&b| b) && kernel_deviation.iter().all(|&d| d <= TELESCOPING_ABS);
    Ok(TelescopingReport { multiplier_ok, kernel_deviation, holds })
}

/// `σ_{i+1} σ_i = σ_i` exactly and `S_{i+1} * S_i = S_i` within tolerance,
/// for every consecutive pair.
pub fn verify_telescoping(fam: &CutoffFamily) -> bool {
    telescoping_report(fam).map(|r| r.holds).unwrap_or(false)
}
