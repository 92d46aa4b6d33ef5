use alloc::string::String;

use crate::dist::PmfKind;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid pmf: {0}")]
    InvalidPmf(String),

    #[error("expected a {expected} law, got a {found} law")]
    WrongKind { expected: PmfKind, found: PmfKind },

    #[error("invalid {name}: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("infeasible mean {mean}: must lie in [{min}, {max}]")]
    InfeasibleMean { mean: f64, min: f64, max: f64 },

    #[error("t must be at least k_max (t = {t}, k_max = {k_max})")]
    HorizonTooShort { t: u64, k_max: u32 },

    #[error("epsilon must lie in (0, 1), got {0}")]
    InvalidEpsilon(f64),

    #[error("invalid theta search bracket [{low}, {high}]")]
    InvalidBracket { low: f64, high: f64 },

    #[error("arrivals decrease at slot {slot}")]
    DecreasingArrivals { slot: usize },

    #[error("length mismatch: {what}")]
    LengthMismatch { what: &'static str },

    #[error("simulation horizon {sim_t} differs from query horizon {query_t}")]
    HorizonMismatch { query_t: u64, sim_t: u64 },
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
