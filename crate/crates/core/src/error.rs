use thiserror::Error;

/// Errors produced while reading graphs, building diagrams, or running queries.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("node label {label} out of range 1..={max}")]
    LabelOutOfRange { label: u32, max: u32 },

    #[error("expected {expected} children, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("child {child} of a node labelled {label} has label {child_label}")]
    ChildLabel {
        label: u32,
        child: u32,
        child_label: u32,
    },

    #[error("ground sets differ: {0} vs {1}")]
    GroundSetMismatch(usize, usize),

    #[error("colour classes overlap on element {0}")]
    OverlappingColors(usize),

    #[error("element {element} outside ground set of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("malformed diagram export at line {line}: {reason}")]
    Export { line: usize, reason: String },

    #[error("host has {edges} edges; exhaustive search is limited to {limit}")]
    TooLarge { edges: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
