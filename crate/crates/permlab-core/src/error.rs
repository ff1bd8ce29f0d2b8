use thiserror::Error;

/// Errors raised by domain operations and text parsing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse permutation entry `{0}`")]
    BadEntry(String),

    #[error("duplicate entry {0} in word")]
    DuplicateEntry(i64),

    #[error("entries are not a permutation of 1..={n}: missing {missing}")]
    NotAPermutation { n: usize, missing: usize },

    #[error("{what} {value} out of range 1..={max}")]
    OutOfRange {
        what: &'static str,
        value: usize,
        max: usize,
    },

    #[error("insertion value {b} exceeds position {a}")]
    ValueAbovePosition { a: usize, b: usize },

    #[error("permutation does not avoid {pattern}")]
    NotAvoiding { pattern: &'static str },

    #[error("invalid Dyck word: step at index {index} drops below the axis")]
    DyckPrefix { index: usize },

    #[error("invalid Dyck word: {ups} up-steps vs {downs} down-steps")]
    DyckUnbalanced { ups: usize, downs: usize },

    #[error("cannot parse Dyck step `{0}`; expected u, d, ( or )")]
    BadDyckStep(char),

    #[error("unknown statistic `{0}`")]
    UnknownStatistic(String),

    #[error("unknown variable mapping `{0}`; expected stat=var")]
    BadVarMapping(String),
}

pub type Result<T> = std::result::Result<T, Error>;
