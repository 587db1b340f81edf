//! Monte-Carlo simulations of the protocols that consume a shared sequence table.
//!
//! A sequence table gives each of `N` parties a row of symbols in `0..N`; every
//! column is a permutation, so no two parties ever hold the same symbol at the
//! same position. Tables come from repeated collective measurements of the
//! `N`-level antisymmetric state, or directly from uniform permutations.
//!
//! Party indices are 0-based: party 0 is the secret-sharing dealer and, in the
//! liar-detection protocol, parties 0, 1, 2 are A, B and C.

mod dtest;
mod ldp;
mod nsp;
mod secrecy;
mod ssp;
mod strategy;
mod table;

pub use dtest::{distribute_and_test, distribute_and_test_capped, DtestOutcome, DtestReport, TamperModel};
pub use ldp::{
    combined_threshold, inject_fake_positions, ldp_list, ldp_run, ldp_run_with, ldp_validate,
    ldp_validate_with, Hop, LdpBehaviors,
    LdpTranscript, LdpVerdict, LengthThreshold, RejectReason, Validation,
};
pub use nsp::{nsp_assign, NspAssignment};
pub use secrecy::consistent_completions;
pub use ssp::{ssp_run, Declaration, DeclarationOrder, SspOutcome, SspReport, SspRound};
pub use strategy::{PartyBehavior, Role, Strategy};
pub use table::{generate_table, generate_table_capped, SequenceTable, TableSource};

/// Version tag carried by every serialized transcript.
pub const TRANSCRIPT_SCHEMA_VERSION: u32 = 1;
