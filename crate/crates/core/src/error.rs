use thiserror::Error;

/// Errors reported by design construction, analysis and enumeration.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("a design needs at least one factor")]
    EmptyDesign,

    #[error("factor {index} declares {value} levels; every factor needs at least 2")]
    InvalidLevelCount { index: usize, value: u32 },

    #[error("design cardinality overflows the supported range")]
    DesignTooLarge,

    #[error("expected {expected} entries, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("entry {value} at position {index} is outside [0, {bound})")]
    EntryOutOfRange {
        index: usize,
        value: u32,
        bound: u32,
    },

    #[error("a fraction needs at least one point")]
    EmptyFraction,

    #[error("point multiplicities must be positive")]
    ZeroMultiplicity,

    #[error("operation is defined for single-replicate fractions only; found a point with multiplicity {multiplicity}")]
    NotSingleReplicate { multiplicity: u64 },

    #[error(
        "operation requires a symmetric design with a prime number of levels \
         (got levels {levels:?}); outside that case the per-order sums of mean \
         aberrations do not reproduce the GWLP"
    )]
    NotSymmetricPrime { levels: Vec<u32> },

    #[error("interaction order {order} is outside 1..={max}")]
    OrderOutOfRange { order: usize, max: usize },

    #[error("level-count vector has {got} entries, expected {expected}")]
    CountLength { expected: usize, got: usize },

    #[error("level counts for {alpha} sum to {got}, expected the run size {expected}")]
    CountSum {
        alpha: String,
        expected: u64,
        got: u64,
    },

    #[error("count family violates {constraint} at {alpha}")]
    FamilyConstraint {
        constraint: &'static str,
        alpha: String,
    },

    #[error("count family is missing an assignment for {alpha}")]
    FamilyIncomplete { alpha: String },

    #[error("permutation average is limited to t <= {max}; got t = {t}")]
    PermutationSpaceTooLarge { t: u64, max: u64 },

    #[error("enumeration space of {required} candidates exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u64 },

    #[error("inconsistent enumeration request: {0}")]
    InconsistentEnumeration(String),
}

pub type Result<T> = std::result::Result<T, Error>;
