//! Exact signed Minkowski decompositions and volumes of matroid polytopes,
//! independent set polytopes and truncation flag matroid polytopes.
//!
//! Matroids live on the ground set `[n] = {1, …, n}` with `n ≤ 20`; subsets
//! are [`SubsetMask`] bitmasks. Coefficients are invariants of contractions:
//! the signed beta invariant for matroid and independent set polytopes, the
//! signed gamma invariant for truncation flag polytopes. Volumes come from
//! tuple sums of these coefficients and are cross-checked by the brute-force
//! [`geometry`] module.

pub mod catalog;
pub mod decomposition;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod matroid;
pub mod subset;
pub mod volume;

pub use catalog::{catalog, graphic, uniform, CatalogEntry, Graph};
pub use decomposition::{
    decompose_base_polytope, decompose_independent_polytope, decompose_truncation_flag, Family,
    ProfileKind, SignedDecomposition, ZProfile,
};
pub use error::{DecompositionError, GeometryError, MatroidError, VolumeError};
pub use matroid::Matroid;
pub use subset::SubsetMask;
