use thiserror::Error;

use crate::coeffs::LinalgError;
use crate::liealg::{AlgebraKind, ParseError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("operands belong to different algebras ({0} and {1})")]
    AlgebraMismatch(AlgebraKind, AlgebraKind),
    #[error("mode index {index} leaves the window |n| <= {max_index}")]
    WindowIndex { index: i32, max_index: u32 },
    #[error("word of length {len} exceeds the window length {max_len}")]
    WindowLength { len: usize, max_len: usize },
    #[error("intermediate result has more than {0} terms")]
    TermLimit(usize),
    #[error("truncation order must be positive, got {0}")]
    NonPositiveTruncation(i64),
    #[error("expected a degree-0 element, found a term of degree {0}")]
    NonzeroDegree(i32),
    #[error("level mismatch: {0} vs {1}")]
    LevelMismatch(u32, u32),
    #[error("cannot project below level 0")]
    ProjectBelowZero,
    #[error("expected bidegree ({expected}, -{expected}), found ({found_left}, {found_right})")]
    WrongBidegree {
        expected: u32,
        found_left: i32,
        found_right: i32,
    },
    #[error("no identity element in degree {0}")]
    MissingIdentity(u32),
    #[error("{0} is only implemented for the Heisenberg algebra")]
    HeisenbergOnly(&'static str),
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: i32, found: i32 },
    #[error("word `{0}` is not in canonical order")]
    NonCanonicalWord(String),
    #[error("virasoro window needs max index >= {needed}, got {got}")]
    WindowTooSmall { needed: u32, got: u32 },
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
