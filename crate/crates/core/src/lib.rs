//! Exact-arithmetic library for invariant almost Hermitian geometry on
//! generalized flag manifolds with two or three isotropy summands.
//!
//! The pipeline goes: root systems ([`root_system`]) -> isotropy
//! decompositions and zero-sum triples ([`flag_manifold`]) -> Weyl-basis
//! structure constants ([`structure_constants`]) -> Gray-Hervella norm
//! components and scalar-curvature gaps ([`hermitian_geometry`]) -> exact
//! solutions of `2*s1 - s = 0` in quadratic surd fields ([`klsc_solver`]).
//!
//! All arithmetic is exact: `BigRational` coefficients throughout, and
//! elements `a + b*sqrt(d)` of real quadratic fields for solution values.

pub mod flag_manifold;
pub mod hermitian_geometry;
pub mod klsc_solver;
pub mod poly;
pub mod root_system;
pub mod structure_constants;
pub mod surd;

pub use flag_manifold::{
    catalog, decompose, enumerate_triples, CatalogEntry, FamilyKind, FlagDecomposition, FlagSpec,
    Summand, Triple,
};
pub use hermitian_geometry::{
    curvature_norms, gray_hervella_class, scalar_gap, scalar_gap_s2, triple_type,
    AlmostComplexStructure, GrayHervellaClass, NormBundle, TripleType,
};
pub use klsc_solver::{gap_polynomial, solve, verify, GapPolynomial, SolutionFamily};
pub use root_system::{
    build_root_system, coefficient_heights, root_string, Family, Root, RootFamily, RootSystem,
};
pub use structure_constants::{kl_constants, m_squared, KlConstants};
pub use surd::{Scalar, Surd};

/// Exact rational scalar used everywhere.
pub type Rat = num::BigRational;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Shorthand for the rational `n/d`.
pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Errors surfaced by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid rank {rank} for family {family}")]
    InvalidRank { family: char, rank: usize },
    #[error("root string undefined for beta = ±alpha")]
    DegenerateRootString,
    #[error("{0} is not a root")]
    NotARoot(String),
    #[error("sign string length {got} does not match summand count {expected}")]
    SignCountMismatch { got: usize, expected: usize },
    #[error("metric length {got} does not match summand count {expected}")]
    MetricCountMismatch { got: usize, expected: usize },
    #[error("unsupported summand count {0} (expected 2 or 3)")]
    UnsupportedSummandCount(usize),
    #[error("incompatible surd fields sqrt({0}) and sqrt({1})")]
    IncompatibleSurds(i64, i64),
    #[error("constraint {0:?} is not applicable to this flag/structure")]
    InapplicableConstraint(String),
    #[error("residual equation is not univariate: {0} free variables remain")]
    NotUnivariate(usize),
    #[error("unknown flag name {0:?}")]
    UnknownFlag(String),
}

pub type Result<T> = std::result::Result<T, Error>;
