//! Induction of an exhaustion model from a subgroup `H ≤ G`.
//!
//! With a section `s : G/H → G` (lexicographically least coset
//! representatives) every `y ∈ G` is uniquely `s(x) + h`, so
//! `Φ : ⊕_{x ∈ G/H} ℓ^p(H) → ℓ^p(G)` is a relabelling and hence an isometry.
//! Translation by `g` becomes
//!
//! ```text
//! (g.ξ)(x) = c(g, x - g) . ξ(x - g),   c(g, x) = g + s(x) - s(x + g) ∈ H,
//! ```
//!
//! so blockwise copies of an `H`-invariant subspace are `G`-invariant.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::fourier::lp_norm_pow;
use crate::function::GroupFunction;
use crate::group::{quotient_map, FiniteAbelianGroup, GroupElement};
use crate::tolerance::{INVARIANCE_RESIDUAL, ISOMETRY_REL};

use super::certificate::{certify_model, ExhaustionModel, ThinnessCertificate};
use super::subspace::SubspaceBasis;

/// Exponents used for the isometry check.
pub const ISOMETRY_EXPONENTS: [f64; 3] = [2.5, 3.0, 4.0];

#[derive(Debug, Clone)]
pub struct InducedExhaustion {
    pub model: ExhaustionModel,
    pub certificate: ThinnessCertificate,
    /// `[G : H]`.
    pub index: usize,
    /// `s(x)` as a `G` index, for each quotient index `x`.
    pub section: Vec<usize>,
    /// `ι(h)` as a `G` index, for each index `h` of the `H` model.
    pub embedding: Vec<usize>,
    /// `c(g, x) ∈ H` for all `g, x`, plus the cocycle condition.
    pub cocycle_ok: bool,
    /// `Φ^{-1} τ_g Φ` equals the cocycle action for every `g`.
    pub action_ok: bool,
    pub invariance_residual: f64,
    pub isometry_max_rel_dev: f64,
    /// Dimensions are `[G:H]` times those of the `H` model.
    pub dims_scale_ok: bool,
}

impl InducedExhaustion {
    pub fn holds(&self) -> bool {
        self.cocycle_ok
            && self.action_ok
            && self.dims_scale_ok
            && self.certificate.verdict
            && self.invariance_residual <= INVARIANCE_RESIDUAL
            && self.isometry_max_rel_dev <= ISOMETRY_REL
    }
}

struct Layout {
    h_order: usize,
    section: Vec<usize>,
    embedding: Vec<usize>,
    inverse_embedding: Vec<Option<usize>>,
    project: Vec<usize>,
}

impl Layout {
    fn phi(&self, g: &FiniteAbelianGroup, x: usize, h: usize) -> usize {
        g.add_index(self.section[x], self.embedding[h])
    }

    /// `c(g, x)` as an `H` index, `None` if it falls outside `H`.
    fn cocycle(&self, g: &FiniteAbelianGroup, q: &FiniteAbelianGroup, gi: usize, x: usize) -> Option<usize> {
        let gx = q.add_index(self.project[gi], x);
        let c = g.sub_index(g.add_index(gi, self.section[x]), self.section[gx]);
        self.inverse_embedding[c]
    }
}

fn embed_blocks(
    g: &FiniteAbelianGroup,
    layout: &Layout,
    cosets: usize,
    sub: &SubspaceBasis,
) -> Result<SubspaceBasis> {
    let mut basis = Vec::with_capacity(cosets * sub.dim());
    for x in 0..cosets {
        for b in sub.basis() {
            let mut v = vec![Complex64::new(0.0, 0.0); g.order()];
            for (h, &val) in b.values().iter().enumerate() {
                v[layout.phi(g, x, h)] = val;
            }
            basis.push(GroupFunction::new(g.clone(), v)?);
        }
    }
    Ok(SubspaceBasis::from_parts(g.clone(), basis, None, sub.is_approximate()))
}

fn random_values(rng: &mut ChaCha8Rng, n: usize) -> Vec<Complex64> {
    (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect()
}

pub fn induce_exhaustion(
    h_model: &ExhaustionModel,
    g: &FiniteAbelianGroup,
    h_gens: &[GroupElement],
    seed: u64,
) -> Result<InducedExhaustion> {
    for x in h_gens {
        g.check(x)?;
    }
    let orders: Vec<usize> = h_gens.iter().map(|x| g.element_order(x)).collect();
    let h = h_model.group();
    if h.factors() != orders.as_slice() {
        return Err(Error::NotASubgroup(format!(
            "model group {h} does not match generator orders {orders:?}"
        )));
    }

    // ι(k) = Σ k_i h_i
    let mut embedding = Vec::with_capacity(h.order());
    for k in h.elements() {
        let mut y = g.zero();
        for (&ki, gen) in k.coords().iter().zip(h_gens) {
            y = g.add(&y, &g.scale(gen, ki));
        }
        embedding.push(g.index_of(&y));
    }
    let mut inverse_embedding = vec![None; g.order()];
    for (hi, &gi) in embedding.iter().enumerate() {
        if inverse_embedding[gi].replace(hi).is_some() {
            return Err(Error::NotASubgroup("generators are not independent".into()));
        }
    }

    let h_cert = certify_model(h_model)?;
    if h_cert.dim_f == 0 || h_cert.intersection_dims.iter().any(|&d| d != 0) {
        return Err(Error::NotThin(format!(
            "H model has dim F = {} and intersections {:?}",
            h_cert.dim_f, h_cert.intersection_dims
        )));
    }

    let qmap = quotient_map(g, h_gens)?;
    let q = qmap.target().clone();
    let project: Vec<usize> = (0..g.order()).map(|i| qmap.project_index(i)).collect();
    let mut section = vec![usize::MAX; q.order()];
    for (i, &x) in project.iter().enumerate() {
        if section[x] == usize::MAX {
            section[x] = i;
        }
    }
    let index = q.order();
    if index * h.order() != g.order() {
        return Err(Error::NotASubgroup(format!("|G/H| |H| = {} ≠ |G|", index * h.order())));
    }
    let layout = Layout { h_order: h.order(), section, embedding, inverse_embedding, project };

    // g + s(x) = s(x + g) + c(g, x) with c(g, x) ∈ H, for every pair
    let mut cocycle = vec![0usize; g.order() * index];
    let mut cocycle_ok = true;
    for gi in 0..g.order() {
        for x in 0..index {
            match layout.cocycle(g, &q, gi, x) {
                Some(c) => cocycle[gi * index + x] = c,
                None => cocycle_ok = false,
            }
        }
    }
    // c(a + b, x) = c(a, x + b) + c(b, x), with a over the factor generators
    if cocycle_ok {
        for m in 0..g.rank() {
            let a = g.index_of(&g.unit(m));
            for b in 0..g.order() {
                for x in 0..index {
                    let lhs = cocycle[g.add_index(a, b) * index + x];
                    let rhs = h.add_index(cocycle[a * index + q.add_index(x, layout.project[b])], cocycle[b * index + x]);
                    cocycle_ok &= lhs == rhs;
                }
            }
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let hn = layout.h_order;

    // Φ^{-1} τ_g Φ ξ against the cocycle action
    let xi = random_values(&mut rng, g.order());
    let mut f = vec![Complex64::new(0.0, 0.0); g.order()];
    for x in 0..index {
        for hh in 0..hn {
            f[layout.phi(g, x, hh)] = xi[x * hn + hh];
        }
    }
    let mut action_ok = cocycle_ok;
    if cocycle_ok {
        'outer: for gi in 0..g.order() {
            let pg = layout.project[gi];
            for x in 0..index {
                let src = q.sub_index(x, pg);
                let kappa = cocycle[gi * index + src];
                for hh in 0..hn {
                    let lhs = f[g.sub_index(layout.phi(g, x, hh), gi)];
                    let rhs = xi[src * hn + h.sub_index(hh, kappa)];
                    if lhs != rhs {
                        action_ok = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let mut isometry_max_rel_dev: f64 = 0.0;
    for p in ISOMETRY_EXPONENTS {
        let xi = random_values(&mut rng, g.order());
        let mut f = vec![Complex64::new(0.0, 0.0); g.order()];
        let mut block_sum = 0.0;
        for x in 0..index {
            let block = xi[x * hn..(x + 1) * hn].to_vec();
            for (hh, &v) in block.iter().enumerate() {
                f[layout.phi(g, x, hh)] = v;
            }
            block_sum += lp_norm_pow(&GroupFunction::new(h.clone(), block)?, p)?;
        }
        let whole = lp_norm_pow(&GroupFunction::new(g.clone(), f)?, p)?;
        isometry_max_rel_dev = isometry_max_rel_dev.max((whole - block_sum).abs() / block_sum);
    }

    let levels = h_model.levels().iter().map(|e| embed_blocks(g, &layout, index, e)).collect::<Result<Vec<_>>>()?;
    let f_sub = embed_blocks(g, &layout, index, h_model.f())?;
    let mut invariance_residual: f64 = 0.0;
    for s in levels.iter().chain(std::iter::once(&f_sub)) {
        invariance_residual = invariance_residual.max(s.invariance_residual()?);
    }
    let label = format!("induced from [{}] into G={} with index {}", h_model.label(), g, index);
    let model = ExhaustionModel::new(levels, f_sub, label)?;
    let certificate = certify_model(&model)?;
    let dims_scale_ok = certificate.dims_e.iter().zip(&h_cert.dims_e).all(|(&a, &b)| a == b * index)
        && certificate.dim_f == h_cert.dim_f * index
        && certificate.dims_e.len() == h_cert.dims_e.len();

    Ok(InducedExhaustion {
        model,
        certificate,
        index,
        section: layout.section,
        embedding: layout.embedding,
        cocycle_ok,
        action_ok,
        invariance_residual,
        isometry_max_rel_dev,
        dims_scale_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exhaustion::family::CutoffFamily;
    use crate::measure::TruncatedMeasure;

    fn point_model(h: &FiniteAbelianGroup) -> ExhaustionModel {
        let last = h.order() - 1;
        let mu = TruncatedMeasure::dirac(h.clone(), last).unwrap();
        let fam = CutoffFamily::from_index_sets(h, &[(1..h.order()).collect()]).unwrap();
        ExhaustionModel::from_family(&fam, &mu).unwrap()
    }

    #[test]
    fn klein_into_z4_squared() {
        let g = FiniteAbelianGroup::new(vec![4, 4]).unwrap();
        let gens = vec![g.element(vec![2, 0]).unwrap(), g.element(vec![0, 2]).unwrap()];
        let h = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        let ind = induce_exhaustion(&point_model(&h), &g, &gens, 7).unwrap();
        assert_eq!(ind.index, 4);
        assert_eq!(ind.certificate.dims_e, vec![4]);
        assert_eq!(ind.certificate.dim_f, 4);
        assert_eq!(ind.certificate.intersection_dims, vec![0]);
        assert!(ind.holds(), "{ind:?}");
    }

    #[test]
    fn non_split_subgroup() {
        // ⟨(1,1)⟩ ≅ Z/4 in Z/4 ⊕ Z/2 has no complement that is a coordinate
        let g = FiniteAbelianGroup::new(vec![4, 2]).unwrap();
        let gens = vec![g.element(vec![1, 1]).unwrap()];
        let h = FiniteAbelianGroup::cyclic(4).unwrap();
        let ind = induce_exhaustion(&point_model(&h), &g, &gens, 1).unwrap();
        assert_eq!(ind.index, 2);
        assert!(ind.holds());
    }

    #[test]
    fn trivial_and_full_index() {
        let g = FiniteAbelianGroup::cyclic(6).unwrap();
        let all = induce_exhaustion(&point_model(&g), &g, &[g.unit(0)], 3).unwrap();
        assert_eq!(all.index, 1);
        assert!(all.holds());
    }

    #[test]
    fn dependent_generators_rejected() {
        let g = FiniteAbelianGroup::cyclic(4).unwrap();
        let gens = vec![g.element(vec![2]).unwrap(), g.element(vec![2]).unwrap()];
        let h = FiniteAbelianGroup::new(vec![2, 2]).unwrap();
        assert!(matches!(
            induce_exhaustion(&point_model(&h), &g, &gens, 0),
            Err(Error::NotASubgroup(_))
        ));
    }

    #[test]
    fn non_thin_model_rejected() {
        let h = FiniteAbelianGroup::cyclic(3).unwrap();
        let mu = TruncatedMeasure::dirac(h.clone(), 2).unwrap();
        let fam = CutoffFamily::from_index_sets(&h, &[vec![0]]).unwrap();
        let model = ExhaustionModel::from_family(&fam, &mu).unwrap();
        let g = FiniteAbelianGroup::cyclic(9).unwrap();
        let gens = vec![g.element(vec![3]).unwrap()];
        assert!(matches!(induce_exhaustion(&model, &g, &gens, 0), Err(Error::NotThin(_))));
    }
}
