use thiserror::Error;

use crate::ideals::Ideal;
use crate::ring::ElementId;
use crate::ringspec::SpecError;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("ring must be nonzero (order {order} < 2)")]
    NonzeroRingRequired { order: u64 },

    #[error("ring order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: u128, cap: usize },

    #[error("polynomial modulus {0} is not monic of degree >= 1")]
    MonicModulusRequired(String),

    #[error("polynomial quotients need a Zn base ring, got {0}")]
    UnsupportedBaseRing(String),

    #[error("malformed ring tables: {0}")]
    MalformedTables(String),

    #[error("ideal lattice search exceeded its budget of {budget} ideals")]
    LatticeBudgetExceeded { budget: usize },

    #[error("cannot form a quotient by the whole ring")]
    ImproperIdealQuotient,

    #[error("gate failed: zero-divisors generate the whole ring (unit {witness_name})")]
    GateFailed {
        unit_witness: ElementId,
        witness_name: String,
    },

    #[error("no smallest prime over the zero-divisors: {} minimal primes", primes.len())]
    NonUniqueMinimalPrime { primes: Vec<Ideal> },

    #[error("quotient is not an integral domain: {a_name} * {b_name} = 0")]
    PropositionViolated {
        a: ElementId,
        b: ElementId,
        a_name: String,
        b_name: String,
    },

    #[error(transparent)]
    Spec(#[from] SpecError),
}

impl Error {
    /// Short stable identifier, used in JSON output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonzeroRingRequired { .. } => "NonzeroRingRequired",
            Error::OrderCapExceeded { .. } => "OrderCapExceeded",
            Error::MonicModulusRequired(_) => "MonicModulusRequired",
            Error::UnsupportedBaseRing(_) => "UnsupportedBaseRing",
            Error::MalformedTables(_) => "MalformedTables",
            Error::LatticeBudgetExceeded { .. } => "LatticeBudgetExceeded",
            Error::ImproperIdealQuotient => "ImproperIdealQuotient",
            Error::GateFailed { .. } => "GateFailed",
            Error::NonUniqueMinimalPrime { .. } => "NonUniqueMinimalPrime",
            Error::PropositionViolated { .. } => "PropositionViolated",
            Error::Spec(SpecError::Parse { .. }) => "ParseError",
            Error::Spec(SpecError::Semantic { .. }) => "SemanticError",
        }
    }
}
