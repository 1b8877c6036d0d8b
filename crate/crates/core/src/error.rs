//! Crate-wide error type.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("characteristic {0} is not prime")]
    NotPrime(u64),
    #[error("field size {0} exceeds the supported cap {1}")]
    FieldTooLarge(u64, u64),
    #[error("polynomial {0} is not irreducible")]
    NotIrreducible(String),
    #[error("operands live over different coefficient fields")]
    MixedField,
    #[error("operands live at different places")]
    MixedPlace,
    #[error("zero operand where a nonzero value is required")]
    ZeroOperand,
    #[error("division by zero")]
    DivisionByZero,
    #[error("enumeration size {0} exceeds the cap {1}")]
    EnumerationCap(u64, u64),
    #[error("factorial argument {0} exceeds the cap {1}")]
    FactorialCap(u64, u64),
    #[error("requested precision {requested} does not exceed the valuation {valuation}")]
    PrecisionBelowValuation { requested: i64, valuation: i64 },
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("precision target {target} not attained (got {attained}): {context}")]
    PrecisionNotAttained {
        target: i64,
        attained: i64,
        context: String,
    },
    #[error("Newton polygon needs at least two finite-valuation points, got {0}")]
    DegenerateNewtonInput(usize),
    #[error("module is not integral at the place; run stable_model first")]
    NonIntegralModel,
    #[error("candidate vectors do not form a basis of the lattice")]
    NotABasis,
    #[error("norm bound is smaller than the first lattice vector norm")]
    BoundTooSmall,
    #[error("epsilon must be positive")]
    NonpositiveEpsilon,
    #[error("Gardeyn norm requires negative valuation, got {0}")]
    NonNegativeValuation(i64),
    #[error("negative valuation {0} where an integral value is required")]
    NegativeValuation(i64),
    #[error("torsion representatives are not rational over the base completion: {0}")]
    IrrationalRepresentative(String),
    #[error("inconsistent norm root indices: {0} vs {1}")]
    InconsistentRootIndex(u32, u32),
    #[error("reconstruction inconsistency: {0}")]
    Inconsistency(String),
    #[error("input exceeds the size cap: {0}")]
    SizeCap(String),
    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }
}
