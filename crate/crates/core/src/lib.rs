//! Finite abelian harmonic analysis and thin invariant exhaustions.
//!
//! Everything here runs on finite models: a finite abelian group `G` stands in
//! for both the discrete group and (through the canonical pairing) its dual.
//! Measures live on the dual side as densities, their Fourier-Stieltjes
//! coefficients live on the group side, and invariant subspaces of `ℓ^p G`
//! are spans of translates.
//!
//! The crate is split into three layers:
//!
//! * [`group`], [`function`], [`fourier`]: exact character theory, transforms
//!   and convolution on `⊕ Z/n_m`.
//! * [`measure`]: the infinite product measure with its closed forms (through
//!   finite truncations), circle-measure stand-ins, summability diagnostics,
//!   smooth cutoffs and trigonometric symbols.
//! * [`exhaustion`]: cutoff families, kernel subspaces `E_i = ker(Id - S_i)`,
//!   cyclic subspaces `F`, thinness certificates and induction from
//!   subgroups.

pub mod error;
pub mod exhaustion;
pub mod fourier;
pub mod function;
pub mod group;
pub mod linalg;
pub mod measure;
pub mod spec_file;
pub mod tolerance;

pub use error::{Error, Result};
pub use exhaustion::{
    build_neighborhoods, cyclic_invariant_subspace, density_profile_check, induce_exhaustion,
    kernel_subspace, pu_kernel_check, thinness_certificate, verify_telescoping, CutoffFamily,
    ExhaustionModel, InducedExhaustion, NeighborhoodStrategy, PuCheck, SubspaceBasis,
    ThinnessCertificate,
};
pub use fourier::{convolve, dft, idft, lp_norm, lp_norm_pow, pairing};
pub use function::GroupFunction;
pub use group::{quotient_map, FiniteAbelianGroup, GroupElement, QuotientMap};
pub use measure::{ProductMeasureSpec, TruncatedMeasure};
pub use num_complex::Complex64;
