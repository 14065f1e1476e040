use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::Point;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
#[serde(tag = "kind", content = "detail", rename_all = "snake_case")]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("join of an empty point set")]
    EmptyJoin,

    #[error("empty point set")]
    EmptyPointSet,

    #[error("invalid box: lower corner {lo} is not below upper corner {hi}")]
    InvalidBox { lo: Point, hi: Point },

    #[error("point {0} is not a member of the set")]
    NotAMember(Point),

    #[error("point {0} is not a vertex of the complex")]
    NotAVertex(Point),

    #[error("non-integer value {0} where an integer is required")]
    NonInteger(String),

    #[error("negative exponent in {0}")]
    NegativeExponent(Point),

    #[error("basis columns are linearly dependent (rank {rank} < {columns})")]
    DependentBasis { rank: usize, columns: usize },

    #[error("lattice has more basis columns ({columns}) than ambient dimension {ambient}")]
    TooManyColumns { columns: usize, ambient: usize },

    #[error("positivity violated: {witness} is a nonzero lattice point in the nonnegative orthant")]
    PositivityViolated { witness: Point },

    #[error("set is not generic: {first} and {second} are neighbors sharing coordinate {coordinate}")]
    NotGeneric {
        first: Point,
        second: Point,
        coordinate: usize,
    },

    #[error("{redundant} is not a minimal generator: {dominating} lies below it")]
    NotMinimalGenerator { redundant: Point, dominating: Point },

    #[error("{point} is not a vertex: {witness} lies strictly below it")]
    StrictlyDominated { point: Point, witness: Point },

    #[error("region is unbounded along variable {0}")]
    UnboundedRegion(usize),

    #[error("oracle guard exceeded: {size} points, limit {limit}")]
    OracleGuard { size: usize, limit: usize },

    #[error("witness radius {radius} too small: {point} lies strictly below the join of candidate {candidate}")]
    WitnessRadiusInsufficient {
        radius: i64,
        candidate: Point,
        point: Point,
    },

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("internal invariant failed: {0}")]
    Invariant(String),
}
