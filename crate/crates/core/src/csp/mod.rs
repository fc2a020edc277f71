//! A minimal finite-domain constraint engine.
//!
//! Domains are bitsets over small non-negative integers. Propagation runs a
//! constraint-oriented FIFO queue to a fixpoint; search is depth-first with static
//! variable order (model order) and ascending values. [`oracle_dc`] is the
//! exhaustive ground truth used to test every propagator.

use alloc::string::String;
use alloc::vec::Vec;

mod domain;
mod model;
mod oracle;
mod search;

pub use domain::{Domain, DomainIter, Value, VarId, MAX_VALUE};
pub use model::{Constraint, Model, Term};
pub use oracle::{oracle_dc, DEFAULT_ORACLE_CAP};
pub use search::{propagate_fixpoint, propagate_from, solve, SearchConfig, SearchResult, Stats, Status};

/// Some domain became empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Wipeout;

/// Result of a filtering operation: pruned domains, or a wipeout.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Consistent(Vec<Domain>),
    Wipeout,
}

impl Outcome {
    pub fn domains(&self) -> Option<&[Domain]> {
        match self {
            Outcome::Consistent(d) => Some(d),
            Outcome::Wipeout => None,
        }
    }

    pub fn is_wipeout(&self) -> bool {
        matches!(self, Outcome::Wipeout)
    }

    /// Panics on wipeout.
    pub fn unwrap(self) -> Vec<Domain> {
        match self {
            Outcome::Consistent(d) => d,
            Outcome::Wipeout => panic!("called `Outcome::unwrap` on a wipeout"),
        }
    }
}

impl From<Result<Vec<Domain>, Wipeout>> for Outcome {
    fn from(r: Result<Vec<Domain>, Wipeout>) -> Self {
        match r {
            Ok(d) => Outcome::Consistent(d),
            Err(Wipeout) => Outcome::Wipeout,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CspError {
    #[error("variable `{name}` has an empty domain")]
    EmptyDomain { name: String },
    #[error("variable {var} does not exist (model has {num_vars})")]
    UnknownVariable { var: VarId, num_vars: usize },
    #[error("invalid constraint: {message}")]
    InvalidConstraint { message: String },
    #[error("search space of {size} assignments exceeds the oracle cap of {cap}")]
    OracleCap { size: u128, cap: u128 },
}
