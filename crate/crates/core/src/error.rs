use thiserror::Error;

/// Errors from weight arithmetic and weight syntax.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeightError {
    #[error("zero has no multiplicative inverse")]
    InverseOfZero,
    #[error("malformed weight `{0}`")]
    Syntax(String),
    #[error("weight `{0}` is outside the carrier")]
    OutOfRange(String),
    #[error("unknown semifield kind `{0}`")]
    UnknownKind(String),
}

/// Errors from the term layer: parsing trees and navigating positions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("invalid position {0}")]
    InvalidPosition(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` has rank {expected} but got {found} children")]
    Arity {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("term syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("a context needs exactly one hole, found {0}")]
    HoleCount(usize),
    #[error("duplicate symbol `{0}`")]
    DuplicateSymbol(String),
}

/// Domain errors raised by automaton operations and algorithms.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AutomatonError {
    #[error(transparent)]
    Weight(#[from] WeightError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state index {0} out of range")]
    StateOutOfRange(usize),
    #[error("tree contains state leaf `{0}`; plain trees are required")]
    StateLeaf(String),
    #[error("cannot merge state `{0}` into itself")]
    SelfMerge(String),
    #[error("merge weight must be nonzero")]
    ZeroMergeWeight,
    #[error("automaton is not trimmed: state `{0}` is unreachable")]
    NotTrimmed(String),
    #[error("automaton is not minimal: states `{0}` and `{1}` are equivalent")]
    NotMinimal(String, String),
    #[error("semifield `{0}` has inexact equality; signatures cannot be bucketed")]
    InexactSemifield(String),
    #[error("invalid automaton: {0}")]
    Invalid(String),
    #[error("inconsistent inputs: {0}")]
    Inconsistent(String),
    #[error("resource limit exceeded: {0}")]
    Resource(String),
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
}

/// A parse error in the automaton file format, tagged with its line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}
