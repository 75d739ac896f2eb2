//! Exhaustion models `(E_i, F)` and thinness certificates.

use num_complex::Complex64;
use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fourier::convolve;
use crate::group::FiniteAbelianGroup;
use crate::linalg::pivoted_basis;
use crate::measure::TruncatedMeasure;
use crate::tolerance;

use super::family::CutoffFamily;
use super::subspace::{cyclic_invariant_subspace, kernel_subspace, SubspaceBasis};

/// Result of checking `S_i * τ_a μ̂ = 0` for every level and translate.
#[derive(Debug, Clone, PartialEq)]
pub struct PuCheck {
    pub holds: bool,
    /// First `(level, atom)` with the atom outside `U_level`.
    pub witness: Option<(usize, usize)>,
    /// `max_i max_x |(S_i * μ̂)(x)|`; translates have the same maximum.
    pub max_deviation: f64,
}

pub fn pu_kernel_check(fam: &CutoffFamily, mu: &TruncatedMeasure) -> Result<PuCheck> {
    if fam.group() != mu.group() {
        return Err(Error::GroupMismatch { left: fam.group().to_string(), right: mu.group().to_string() });
    }
    let atoms = mu.support();
    let mu_hat = mu.mu_hat();
    let mut witness = None;
    let mut max_deviation: f64 = 0.0;
    for (i, level) in fam.levels().iter().enumerate() {
        if witness.is_none() {
            witness = atoms.iter().find(|&&y| !level.neighborhood[y]).map(|&y| (i, y));
        }
        // convolution commutes with translation, so one product covers all τ_a μ̂
        max_deviation = max_deviation.max(convolve(&level.kernel, &mu_hat)?.max_abs());
    }
    Ok(PuCheck {
        holds: witness.is_none() && max_deviation <= tolerance::ANNIHILATION_ABS,
        witness,
        max_deviation,
    })
}

#[derive(Debug, Clone)]
pub struct ExhaustionModel {
    group: FiniteAbelianGroup,
    levels: Vec<SubspaceBasis>,
    f: SubspaceBasis,
    label: String,
}

impl ExhaustionModel {
    pub fn new(levels: Vec<SubspaceBasis>, f: SubspaceBasis, label: impl Into<String>) -> Result<Self> {
        let group = f.ambient_group().clone();
        if let Some(e) = levels.iter().find(|e| e.ambient_group() != &group) {
            return Err(Error::GroupMismatch { left: e.ambient_group().to_string(), right: group.to_string() });
        }
        Ok(ExhaustionModel { group, levels, f, label: label.into() })
    }

    /// `E_i = ker(Id - S_i)` for each level and `F` the cyclic subspace of `μ̂`.
    pub fn from_family(fam: &CutoffFamily, mu: &TruncatedMeasure) -> Result<Self> {
        if fam.group() != mu.group() {
            return Err(Error::GroupMismatch { left: fam.group().to_string(), right: mu.group().to_string() });
        }
        if fam.levels().iter().any(|l| l.indicator().is_none()) {
            return Err(Error::InvalidInput("certificates need indicator cutoffs".into()));
        }
        let levels = fam.levels().iter().map(|l| kernel_subspace(&l.sigma)).collect::<Result<Vec<_>>>()?;
        let f = cyclic_invariant_subspace(&mu.mu_hat())?;
        let label = format!("G={} levels={}", fam.group(), fam.len());
        ExhaustionModel::new(levels, f, label)
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn levels(&self) -> &[SubspaceBasis] {
        &self.levels
    }

    pub fn f(&self) -> &SubspaceBasis {
        &self.f
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// `dim(E_i ∩ F) = dim E_i + dim F - rank[E_i | F]`.
    pub fn intersection_dims(&self) -> Result<Vec<usize>> {
        let f_cols = self.f.columns();
        let dim_f = pivoted_basis(&f_cols)?.rank();
        self.levels
            .iter()
            .map(|e| {
                let mut cols: Vec<Vec<Complex64>> = e.columns();
                cols.extend(f_cols.iter().cloned());
                let r = pivoted_basis(&cols)?.rank();
                let dim_e = pivoted_basis(&e.columns())?.rank();
                Ok(dim_e + dim_f - r)
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Tolerances {
    pub rank_pivot: f64,
    pub rank_gap: f64,
    pub telescoping_abs: f64,
    pub annihilation_abs: f64,
    pub invariance_residual: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rank_pivot: tolerance::RANK_PIVOT,
            rank_gap: tolerance::RANK_GAP,
            telescoping_abs: tolerance::TELESCOPING_ABS,
            annihilation_abs: tolerance::ANNIHILATION_ABS,
            invariance_residual: tolerance::INVARIANCE_RESIDUAL,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct Provenance {
    pub spec_sha256: Option<String>,
    pub seed: Option<u64>,
    pub tolerances: Tolerances,
}

fn ratios_as_strings<S: Serializer>(ratios: &[Ratio<u64>], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ratios.iter().map(|r| format!("{}/{}", r.numer(), r.denom())))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThinnessCertificate {
    pub model: String,
    #[serde(rename = "dims_E")]
    pub dims_e: Vec<usize>,
    #[serde(rename = "dim_F")]
    pub dim_f: usize,
    pub intersection_dims: Vec<usize>,
    /// `dim E_i / |G|`.
    #[serde(serialize_with = "ratios_as_strings")]
    pub density_profile: Vec<Ratio<u64>>,
    pub verdict: bool,
    pub provenance: Provenance,
}

fn strictly_increasing(v: &[Ratio<u64>]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

/// Certificate from the subspaces alone: nonzero `F`, trivial intersections
/// and a strictly increasing density profile.
pub fn certify_model(model: &ExhaustionModel) -> Result<ThinnessCertificate> {
    let order = model.group.order() as u64;
    let dims_e: Vec<usize> = model.levels.iter().map(|e| e.dim()).collect();
    let dim_f = model.f.dim();
    let intersection_dims = model.intersection_dims()?;
    let density_profile: Vec<Ratio<u64>> = dims_e.iter().map(|&d| Ratio::new(d as u64, order)).collect();
    let verdict = dim_f >= 1 && intersection_dims.iter().all(|&d| d == 0) && strictly_increasing(&density_profile);
    Ok(ThinnessCertificate {
        model: model.label.clone(),
        dims_e,
        dim_f,
        intersection_dims,
        density_profile,
        verdict,
        provenance: Provenance::default(),
    })
}

/// Certificate for a cutoff family and a measure, with the finite-model
/// dimension laws checked against the combinatorics of the neighborhoods:
///
/// * `dim E_i = |U_i^∁|`,
/// * `dim F = |supp μ|`,
/// * `dim(E_i ∩ F) = |supp μ ∩ U_i^∁|`.
///
/// A mismatch means the numerics disagree with the exact count and is an
/// error, not a negative verdict.
pub fn thinness_certificate(fam: &CutoffFamily, mu: &TruncatedMeasure) -> Result<ThinnessCertificate> {
    let model = ExhaustionModel::from_family(fam, mu)?;
    let cert = certify_model(&model)?;
    let atoms = mu.support();
    for (i, level) in fam.levels().iter().enumerate() {
        if cert.dims_e[i] != level.complement_size() {
            return Err(Error::LawViolation(format!(
                "dim E_{} = {} but |U^c| = {}",
                i + 1,
                cert.dims_e[i],
                level.complement_size()
            )));
        }
        let outside = atoms.iter().filter(|&&y| !level.neighborhood[y]).count();
        if cert.intersection_dims[i] != outside {
            return Err(Error::LawViolation(format!(
                "dim(E_{} ∩ F) = {} but {} atoms lie outside U_{}",
                i + 1,
                cert.intersection_dims[i],
                outside,
                i + 1
            )));
        }
    }
    if cert.dim_f != mu.support_size() {
        return Err(Error::LawViolation(format!("dim F = {} but |supp μ| = {}", cert.dim_f, mu.support_size())));
    }
    Ok(cert)
}

/// Profile strictly increasing, bounded by `limit` and ending there.
pub fn density_profile_check(cert: &ThinnessCertificate, limit: Ratio<u64>) -> bool {
    strictly_increasing(&cert.density_profile)
        && cert.density_profile.iter().all(|&d| d <= limit)
        && cert.density_profile.last() == Some(&limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exhaustion::family::{build_neighborhoods, NeighborhoodStrategy};

    fn klein_cube() -> (FiniteAbelianGroup, TruncatedMeasure) {
        let g = FiniteAbelianGroup::new(vec![2, 2, 2]).unwrap();
        let k = g.index_of(&g.element(vec![1, 1, 1]).unwrap());
        (g.clone(), TruncatedMeasure::dirac(g, k).unwrap())
    }

    #[test]
    fn point_mass_on_cube_is_thin() {
        let (g, mu) = klein_cube();
        let fam = build_neighborhoods(
            &mu.support(),
            &g,
            &NeighborhoodStrategy::QuotientCylinder { prefixes: vec![1, 2, 3] },
        )
        .unwrap();
        let cert = thinness_certificate(&fam, &mu).unwrap();
        assert_eq!(cert.dims_e, vec![4, 6, 7]);
        assert_eq!(cert.dim_f, 1);
        assert_eq!(cert.intersection_dims, vec![0, 0, 0]);
        assert!(cert.verdict);
        assert!(density_profile_check(&cert, Ratio::new(7, 8)));
        assert!(pu_kernel_check(&fam, &mu).unwrap().holds);
    }

    #[test]
    fn neighborhood_missing_an_atom_fails() {
        let (g, mu) = klein_cube();
        let fam = CutoffFamily::from_index_sets(&g, &[vec![0, 1, 2, 3]]).unwrap();
        let pu = pu_kernel_check(&fam, &mu).unwrap();
        assert!(!pu.holds);
        assert_eq!(pu.witness, Some((0, 7)));
        assert!(pu.max_deviation > 0.1);
        let cert = thinness_certificate(&fam, &mu).unwrap();
        assert_eq!(cert.intersection_dims, vec![1]);
        assert!(!cert.verdict);
    }

    #[test]
    fn certificate_json_field_order() {
        let (g, mu) = klein_cube();
        let fam = CutoffFamily::from_index_sets(&g, &[vec![7, 6]]).unwrap();
        let cert = thinness_certificate(&fam, &mu).unwrap();
        let json = serde_json::to_string(&cert).unwrap();
        let order = ["model", "dims_E", "dim_F", "intersection_dims", "density_profile", "verdict", "provenance"];
        let positions: Vec<usize> = order.iter().map(|k| json.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(positions.windows(2).all(|w| w[0] < w[1]));
        assert!(json.contains("\"density_profile\":[\"3/4\"]"), "{json}");
    }
}
