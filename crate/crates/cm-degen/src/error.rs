use thiserror::Error;

use crate::catalog::{IndecId, SingularitySpec};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid singularity spec: {0}")]
    InvalidSpec(String),

    #[error("unknown indecomposable {id} for ring {spec}")]
    UnknownId { spec: SingularitySpec, id: IndecId },

    #[error("operands live over different rings: {0} vs {1}")]
    SpecMismatch(SingularitySpec, SingularitySpec),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("degree bound did not stabilize below cap {cap} (last rounds: {last:?})")]
    NonStabilizing { cap: u32, last: Vec<(u32, u64)> },

    #[error("field modulus {0} is not a prime congruent to 1 mod 4")]
    BadModulus(u64),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
