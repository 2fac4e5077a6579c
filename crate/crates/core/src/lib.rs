//! Simple spines of PL manifolds dual to triangulations.
//!
//! The crate builds the spine dual to a triangulation and a vertex partition,
//! counts its vertices, checks it is a spine by collapsing the complementary
//! regions, stratifies it, computes the nerve of the pair through Stein
//! factorization, drills it along subcomplexes, and computes homology over the
//! two-element field.

pub mod collapse;
pub mod complex;
pub mod derived;
pub mod drill;
pub mod error;
pub mod format;
pub mod gf2;
pub mod homology;
pub mod iso;
pub mod manifold;
pub mod models;
pub mod nerve;
pub mod normal;
pub mod ops;
pub mod partition;
pub mod search;
pub mod spine;
pub mod strata;

pub use complex::{Complex, Simplex};
pub use derived::{derived, derived_map, DerivedComplex, SimplicialMap};
pub use drill::{cut_along_hypersurface, drill, DrillResult, DrillSite, HypersurfaceCut};
pub use error::{Error, Result};
pub use nerve::{nerve, nerve_checks, stein, NervePair, NerveReport, SteinFactorization};
pub use normal::{enumerate_normal_discs, NormalDisc};
pub use partition::VertexPartition;
pub use search::{search_min_vertices, SearchBudget, SearchResult};
pub use spine::{
    dual_spine, regions, verify_spine, Certificate, SpineComplex, SpineReport, Tower, VerifyOptions,
};
pub use strata::{assign_types, stratum_components, Stratification};
