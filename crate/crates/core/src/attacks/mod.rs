//! Attacks on SDPKE instantiations.
//!
//! Every attack returns an [`AttackOutcome`]. When the transcript carries the
//! true key (test mode) `success` means the recovered key matches it exactly;
//! otherwise it means the attack ran to completion and produced a key.

mod dimension;
mod make;
mod mobs;
mod tropical;

use serde::Serialize;

pub use dimension::{dimension_attack, mr_message_recovery, LinearPlatform, SpanBasis};
pub use make::{make_residual, make_telescoping_attack, telescope_map};
pub use mobs::{mobs_solution_count, MOBS_CAP_BITS};
pub use tropical::{tropical_binsearch_attack, tropical_is_monotone};

/// Work done by an attack.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WorkCounters {
    pub sequence_terms_generated: u64,
    pub rank: u64,
    pub linear_solves: u64,
    pub search_steps: u64,
    pub solution_count: u64,
}

impl WorkCounters {
    /// `k=v` pairs joined by `;`, the CSV `counters` cell.
    pub fn to_kv(&self) -> String {
        format!(
            "sequence_terms_generated={};rank={};linear_solves={};search_steps={};solution_count={}",
            self.sequence_terms_generated, self.rank, self.linear_solves, self.search_steps, self.solution_count
        )
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AttackOutcome<E> {
    pub recovered_key: Option<E>,
    pub recovered_exponent: Option<u64>,
    pub success: bool,
    pub failure: Option<String>,
    pub work: WorkCounters,
    /// MOBS counting only: whether the true `φ^x(M)` was among the solutions.
    pub reference_found: Option<bool>,
}

impl<E: PartialEq> AttackOutcome<E> {
    fn recovered(key: E, truth: Option<&E>, work: WorkCounters) -> Self {
        let success = truth.is_none_or(|t| *t == key);
        AttackOutcome {
            failure: (!success).then(|| "recovered key differs from the shared key".to_string()),
            recovered_key: Some(key),
            recovered_exponent: None,
            success,
            work,
            reference_found: None,
        }
    }

    fn failed(reason: impl Into<String>, work: WorkCounters) -> Self {
        AttackOutcome {
            recovered_key: None,
            recovered_exponent: None,
            success: false,
            failure: Some(reason.into()),
            work,
            reference_found: None,
        }
    }
}
