use num_bigint::BigInt;
use thiserror::Error;

use crate::pell::PellSolution;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("factorize requires n >= 2, got {0}")]
    FactorizeDomain(BigInt),

    #[error("square root of negative integer {0}")]
    NegativeSqrt(BigInt),

    #[error("{what} requires an argument >= {min}, got {got}")]
    BelowMinimum {
        what: &'static str,
        min: i64,
        got: BigInt,
    },

    #[error("gram matrix is not symmetric at ({row}, {col})")]
    Asymmetric { row: usize, col: usize },

    #[error("gram matrix must be square with rank 1..=3, got {rows} rows")]
    BadShape { rows: usize },

    #[error("basis labels must be {expected} distinct names")]
    BadLabels { expected: usize },

    #[error("cannot parse gram matrix: {0}")]
    Parse(String),

    #[error("operation requires a rank-{expected} gram matrix, got rank {got}")]
    WrongRank { expected: usize, got: usize },

    #[error("first basis vector must have square 3, got {0}")]
    NotHyperplaneSquare(String),

    #[error("non-constant entry at ({row}, {col}); only the last diagonal slot may depend on k")]
    PolynomialOutsideSigmaSlot { row: usize, col: usize },

    #[error("admissibility violated: 3s - m^2 = {value} is {residue} mod 6, expected 0 or 2")]
    Admissibility { value: BigInt, residue: u8 },

    #[error("pairing {0} is outside the supported range")]
    InvalidPairing(BigInt),

    #[error("case {case} is not valid for geometry {geometry}")]
    InvalidCase {
        geometry: &'static str,
        case: &'static str,
    },

    #[error("{0} is a perfect square; its square root has no periodic continued fraction")]
    SquareRadicand(BigInt),

    #[error("N = {n} has |N| >= sqrt(D) for D = {d}; convergent search is incomplete there")]
    OutsideConvergentRegime { d: BigInt, n: BigInt },

    #[error("D must be positive, got {0}")]
    NonPositiveRadicand(BigInt),

    #[error("N must be nonzero")]
    ZeroNorm,

    #[error("({a}, {n}) is not a witness for d = {d}")]
    NotAWitness { d: BigInt, a: BigInt, n: BigInt },

    #[error("claimed solution {0} does not hold")]
    NotASolution(Box<PellSolution>),

    #[error("k range is empty: {min} > {max}")]
    EmptyRange { min: BigInt, max: BigInt },
}

pub type Result<T> = std::result::Result<T, Error>;
