//! Exact lattice and Diophantine arithmetic for special cubic fourfolds.
//!
//! * [`diophantine`] decides Hassett's conditions `(*)`, `(**)`, `(***)` on a
//!   discriminant, with `(***)` settled through `x² − 2d·y² = −3`.
//! * [`lattice`] and [`normal_form`] handle the rank-3 intersection matrices
//!   `⟨H², Q, Σ⟩` and `⟨H², S, Σ⟩` and their normal forms.
//! * [`families`] checks the polynomial witness families as identities in `k`.
//!
//! All arithmetic is exact over arbitrary-precision integers.

pub mod arith;
pub mod diophantine;
pub mod error;
pub mod families;
pub mod lattice;
pub mod normal_form;
pub mod pell;
pub mod poly;

pub use diophantine::{
    condition_double_star, condition_star, condition_triple_star, triple_star_bruteforce,
    ConditionReport, Witness,
};
pub use error::{Error, Result};
pub use families::{
    derive_form, dp6_residue_equivalence_check, family, family_catalog, verify_family_numeric,
    verify_family_symbolic, FamilyId, FamilySpec, FormSource,
};
pub use lattice::{discriminant, restrict_form, GramMatrix, QuadraticForm, SymbolicGram};
pub use normal_form::{
    canonical_gram, normalize, normalize_dp6, normalize_plane, CanonicalForm, CaseId, Geometry,
    MarkedClassData,
};
pub use pell::{cf_sqrt, pell_solve, PellSolution};
pub use poly::IntPolynomial;
