use thiserror::Error;

use crate::ogposet::ElemRef;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid element reference {0}")]
    InvalidRef(ElemRef),

    /// The input does not follow the diagram format.
    #[error("malformed diagram: {0}")]
    Format(String),

    /// The input parsed, but lacks a structural property an operation needs
    /// (positive least element, oriented thinness, ...).
    #[error("structure error: {0}")]
    Structure(String),

    #[error("composition error: {0}")]
    Composition(String),

    #[error("{what} {value} out of range ({bound})")]
    Range {
        what: &'static str,
        value: isize,
        bound: String,
    },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("not a molecule")]
    NotAMolecule,

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
