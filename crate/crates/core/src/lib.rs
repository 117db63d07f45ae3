//! skewcalc: exact symbolic computation for connected graded algebras
//! presented by generators and relations.
//!
//! The crate provides a parametric coefficient field, free-algebra
//! arithmetic with degree-bounded diamond-lemma completion, an algebra
//! catalog with graded-morphism checks, graded twists and the twist
//! identity for distinguished automorphisms, coaction-pattern derivation,
//! locally nilpotent derivation searches, and the full automorphism group
//! calculus of the cubic unipotent algebra a5.

pub mod algebras;
pub mod hopf;
pub mod linalg;
pub mod ncpoly;
pub mod presentation;
pub mod scalars;
pub mod twistnak;

pub use algebras::{
    center_bounded, check_morphism, eigenvectors_bounded, is_graded_automorphism,
    normalizing_map, AlgebraError, GradedMap, MorphismCheck, Normality, Presentation,
};
pub use hopf::{
    conjugation_map, derive_pattern, power_closed_form, CoactionPattern,
    ConjugationMap, EntryState, HopfError, PatternMode,
};
pub use linalg::{LinalgError, Matrix, PivotLog};
pub use presentation::{parse_expr, parse_presentation, parse_scalar, ParseError};
pub use twistnak::{
    quotient_nakayama, twist_nakayama, twist_presentation, NakayamaRecord, Provenance,
    TwistConvention, TwistData, TwistError,
};
pub use ncpoly::rewrite::{complete, extend_budget, RewriteError, RewriteSystem, Rule};
pub use ncpoly::{GenSet, NcPoly, Word};
pub use scalars::{
    format_scalar, root_of_unity_status, Assumption, ParamRing, ParamScalar,
    RootOfUnityStatus, ScalarError,
};
