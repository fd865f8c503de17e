//! Deterministic weighted tree automata over commutative semifields, with
//! lossless minimization and hyper-minimization (merging almost-equivalent
//! states at the cost of finitely many errors).
//!
//! The pipeline is [`hyperminimize::hyper_minimize`]: trim, minimize, compute
//! kernel and co-kernel states, compute almost-equivalence with a scaling map
//! from standardized signatures, then merge preamble states into their block
//! representatives. The [`oracle`] module holds brute-force ground truth for
//! every relation the algorithms compute.

pub mod automaton;
pub mod cli;
pub mod error;
pub mod fixtures;
pub mod format;
pub mod hyperminimize;
pub mod minimize;
pub mod oracle;
pub mod partition;
pub mod semifield;
pub mod terms;
pub mod topology;

pub use automaton::{Lhs, Rule, TransitionContext, Violation, Wdta};
pub use error::{AutomatonError, ParseError, TermError, WeightError};
pub use semifield::{
    Boolean, MaxTimes, Rational, Semifield, SemifieldKind, Tropical, TropicalFloat,
};
pub use terms::{
    parse_context, parse_term, Context, Label, Position, RankedAlphabet, StateId, SymbolId, Tree,
};
