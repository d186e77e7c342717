use thiserror::Error;

use crate::report::Report;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input {what}: {report}")]
    Invalid { what: &'static str, report: Report },
    #[error("unknown object {object}")]
    UnknownObject { object: usize },
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup is not central")]
    NotCentral,
    #[error("map {index} is not an automorphism")]
    NotAutomorphism { index: usize },
    #[error("family of maps is not multiplicative at pair ({g}, {h})")]
    NotMultiplicative { g: usize, h: usize },
    #[error("component at {index} is not invertible")]
    NotInvertible { index: usize },
    #[error("endpoint mismatch: {detail}")]
    EndpointMismatch { detail: String },
    #[error("shape mismatch: {detail}")]
    ShapeMismatch { detail: String },
    #[error("search budget exceeded")]
    BudgetExceeded,
    #[error("not a group action: axiom fails at ({g}, {x})")]
    NotAGroupAction { g: usize, x: usize },
    #[error("parse error at line {line}, column {column}: {detail}")]
    Parse { line: usize, column: usize, detail: String },
    #[error("unsupported format version {found}, expected {expected}")]
    Version { found: String, expected: String },
    #[error("semantic error: {detail}")]
    Semantic { detail: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
