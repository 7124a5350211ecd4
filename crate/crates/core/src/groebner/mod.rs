//! Buchberger's algorithm and the elimination tools built on it.

mod buchberger;
mod engine;
mod separating;

pub use buchberger::{
    buchberger, normal_form_poly, GBResult, GbOptions, GbStatus, PairStrategy, DEFAULT_BUDGET,
};
pub use separating::{
    check_permutable_regular_sequence, check_regular_sequence, check_z_separating,
    check_z_separating_with, coherent_interreduce, colon_ideal, eliminate_by_substitution,
    linear_leading_terms, SeparatingTuple, Separation, Verdict, EXPANSION_GUARD,
    REGULAR_MAX_DEGREE, REGULAR_MAX_VARS,
};
