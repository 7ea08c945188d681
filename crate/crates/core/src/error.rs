use crate::graph::VertexRef;
use thiserror::Error;

/// Crate-wide error type. CLI exit codes key off the variants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("graph is not twin-free: {} are twins", fmt_refs(.class))]
    TwinsPresent { class: Vec<VertexRef> },

    #[error("graph is not decomposable in this class: no rule applies to {{{}}}", fmt_refs(.vertices))]
    NotInClass { vertices: Vec<VertexRef> },

    #[error("quotient has {vertices} vertices, exceeding the cap of {cap}")]
    WidthExceeded { vertices: usize, cap: usize },

    #[error("input too large for exhaustive search: {msg}")]
    SizeLimit { msg: String },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("element ({0}, {1}) exceeds the bound ({2}, {3})")]
    BoundViolated(usize, usize, usize, usize),

    #[error("element ({0}, {1}) is not in the computed set")]
    ElementNotFound(usize, usize),

    #[error("graph has no biclique with at least one vertex of each color")]
    NoNontrivialBiclique,

    #[error("generated graph has twins ({}): {spec}", fmt_refs(.class))]
    TwinsProduced { class: Vec<VertexRef>, spec: String },

    #[error("invalid generator spec: {0}")]
    BadSpec(String),

    #[error("invalid parameter: {0}")]
    BadParameter(String),
}

fn fmt_refs(refs: &[VertexRef]) -> String {
    refs.iter()
        .map(|r| r.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

pub type Result<T> = std::result::Result<T, Error>;
