use thiserror::Error;

use crate::treedecomp::Violation;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquare { rows: usize, cols: usize },

    #[error("index ({row},{col}) out of range for {rows}x{cols} matrix")]
    IndexOutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid tree decomposition: {0}")]
    InvalidDecomposition(Violation),

    #[error("exact decomposition refused: {n} vertices exceeds cap {cap}")]
    ExactCapExceeded { n: usize, cap: usize },

    #[error(
        "DP state budget exceeded: width {width}, {classes} classes, \
         estimated {estimate} states*cells > budget {budget}"
    )]
    BudgetExceeded {
        width: usize,
        classes: usize,
        estimate: u128,
        budget: u128,
    },

    #[error("non-integer weight {0} where an integer is required")]
    NonIntegerWeight(String),

    #[error("negative entry {0} not supported by the resolvent powering route")]
    NegativeEntry(String),

    #[error("matrix is singular")]
    Singular,

    #[error("graph is not Eulerian: {0}")]
    NonEulerian(String),

    #[error("enumeration cap exceeded: {0}")]
    CapExceeded(String),

    #[error("instance too small: {0}")]
    InstanceTooSmall(String),

    #[error("symbolic class present; a concrete value is required")]
    SymbolicClass,

    #[error("{0}")]
    Invalid(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
