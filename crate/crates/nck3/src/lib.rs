//! Exact-arithmetic invariants of non-commutative K3 surfaces.
//!
//! The crate computes, over arbitrary-precision integers and rationals,
//! the lattice-theoretic and stability-theoretic data attached to K3
//! categories: Mukai pairings on integer lattices, associated-K3 criteria,
//! moduli-space dimensions and polarization degrees, tilt-stability central
//! charges and walls, Clifford-twisted Chern characters, Serre-functor
//! words, and period-domain membership. No floating point is used anywhere;
//! every answer is an exact integer or a reduced fraction.
//!
//! The companion command-line tool `nck3` exposes every operation over JSON.
//! A guide with worked examples lives in `book/`; its code snippets are
//! compiled and run by `cargo test --doc` through the [`guide`] module.

pub mod clifford;
pub mod jsonio;
pub mod kuznetsov;
pub mod lattice;
pub mod linalg;
pub mod mukai;
pub mod period;
pub mod ratio;
pub mod tilt;
pub mod words;

mod guide;

pub use lattice::{catalog, LatticeModel, LatticeVector, Sublattice};
pub use ratio::{int, rat, rat_from_str, rat_to_string};

/// Arbitrary-precision integer used throughout the crate.
pub type Int = num_bigint::BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = num_rational::BigRational;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected length {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("the zero vector is not allowed here")]
    ZeroVector,
    #[error("gram matrix is degenerate")]
    DegenerateGram,
    #[error("lattice is not negative definite; exact enumeration is unbounded")]
    NotNegativeDefinite,
    #[error("invalid lattice: {0}")]
    InvalidLattice(String),
    #[error("unknown catalog lattice `{0}`")]
    UnknownLattice(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("({0}, {1}) is not a coprime pair")]
    NotCoprime(String, String),
    #[error("vector is imprimitive; only primitive classes are supported here")]
    Imprimitive,
    #[error("central charge vanishes on this class")]
    ZeroCharge,
    #[error("alpha^2 must be positive")]
    NonPositiveAlpha,
    #[error("expected {expected} classes, got {got}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("slope is infinite at the evaluation point (Im Z = 0)")]
    InfiniteSlope,
    #[error("inconsistent decomposition: degree-0 dimension {have} is smaller than the exceptional count {need}")]
    InconsistentDecomposition { have: u64, need: u64 },
    #[error("discriminant of the class is negative; no semistable class exists")]
    NegativeDiscriminant,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("membership is undecidable by enumeration: {0}")]
    Undecidable(String),
}

pub type Result<T> = std::result::Result<T, Error>;
