//! Experiment drivers: round trips, the fixture audit and mutation testing.

mod audit;
pub mod fixtures;
mod mutation;
mod roundtrip;

pub use audit::{
    audit_fixtures, augment, AuditCell, AuditMatrix, AuditRow, NONSTRICT_COLUMNS, STRICT_COLUMNS,
};
pub use mutation::{mutation_witness_test, Mutation, MutationSummary};
pub use roundtrip::{
    roundtrip_exhaustive, roundtrip_random, roundtrip_tree, Pipeline, RoundtripError,
    RoundtripFailure, RoundtripSummary, EXHAUSTIVE_MAX,
};
