//! Invariant exhaustions `E_1 ⊆ E_2 ⊆ …` built from nested neighborhoods of a
//! measure's support, and the thinness certificates that compare them with
//! the cyclic subspace `F` of `μ̂`.

mod certificate;
mod family;
mod induce;
mod subspace;

pub use certificate::{
    certify_model, density_profile_check, pu_kernel_check, thinness_certificate, ExhaustionModel, Provenance,
    PuCheck, ThinnessCertificate, Tolerances,
};
pub use family::{
    build_neighborhoods, kernel_of_multiplier, telescoping_report, verify_telescoping, CutoffFamily, CutoffLevel,
    NeighborhoodStrategy, TelescopingReport,
};
pub use induce::{induce_exhaustion, InducedExhaustion, ISOMETRY_EXPONENTS};
pub use subspace::{cyclic_invariant_subspace, kernel_subspace, SubspaceBasis, SPECTRUM_REL};
