//! Brute-force ground truth: enumeration of trees and contexts, language
//! comparison, and deciders for equivalence, almost-equivalence, kernel and
//! co-kernel membership and hyper-minimality. Also seeded random automata.
//!
//! The enumeration bands used for kernel and co-kernel membership come from
//! pumping arguments on the automaton (or on a hole-marked product of it).

mod compare;
mod enumerate;
mod random;
mod relations;

pub use compare::{
    compare_languages, Mismatch, MismatchReport, ReportDisplay, MISMATCH_LISTING_CAP,
};
pub use enumerate::{enumerate_contexts, enumerate_trees, NODE_BUDGET};
pub use random::{chain_family, random_wdta, RandomSpec};
pub use relations::{
    almost_equivalence_oracle, check_minimal_oracle, cokernel_oracle, hyper_minimality_check,
    kernel_oracle, reachable_oracle, reached_by_height, states_almost_equivalent_oracle,
    states_equivalent_oracle, HyperMinimalityWitness,
};
