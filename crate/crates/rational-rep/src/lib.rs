//! Exact-rational realizations of Sugihara chains as relation families.
//!
//! The odd family lives on signed rational tuples: a ladder of relations
//! built from lexicographic strata, with index zero the order itself and
//! negative indices strictly below it.  The even family drops the signs and
//! the zero index.  Both compose at the index of smaller absolute value.
//! The point spaces are infinite, so the verifiers here work by seeded
//! sampling plus constructive witnesses rather than enumeration; every
//! report is a pure function of its arguments.

use thiserror::Error;

mod family;
mod point;
mod sample;
mod verify;
mod witness;

pub use family::{
    composition_table, delta_member, even_composition_table, even_member, lex_level, member,
    odd_member, FamilyKind, LexVerdict, PointPair, SymbolicRelation,
};
pub use point::{RationalTuple, Sign, SignedPoint};
pub use sample::{generate_member, sample_pairs, sample_signed_pairs, SamplingStrategy};
pub use verify::{
    extend_member, verify_composition, verify_composition_against, verify_embedding,
    verify_embedding_with, verify_structure, verify_structure_with, ChainKind,
};
pub use witness::{find_witness, WITNESS_BUDGET};

/// Errors from family constructors, samplers, and the witness search.
#[derive(Debug, Error)]
pub enum RepError {
    #[error("invalid {field}: {reason}")]
    Invalid { field: &'static str, reason: String },
    #[error("empty relation: {0}")]
    EmptyRelation(String),
    #[error("contract violated: {0}")]
    Contract(String),
    #[error("witness search exhausted after {budget} candidates: {context}")]
    WitnessSearch { budget: usize, context: String },
}
