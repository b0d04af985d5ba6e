use thiserror::Error;

/// Errors shared by all table-backed operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Carriers of size zero are refused everywhere; every operation needs a
    /// base element.
    #[error("empty carrier: the empty algebra is not representable")]
    EmptyCarrier,

    #[error("table entry {value} at position {position} out of range for carrier of size {size}")]
    EntryOutOfRange {
        value: usize,
        position: usize,
        size: usize,
    },

    #[error("expected {expected} table entries, got {got}")]
    EntryCountMismatch { expected: usize, got: usize },

    #[error("element {element} out of range for carrier of size {size}")]
    ElementOutOfRange { element: usize, size: usize },

    #[error("carrier size mismatch: {left} vs {right}")]
    CarrierMismatch { left: usize, right: usize },

    #[error("resource limit: {operation} on a carrier of size {size} exceeds the cap {cap}")]
    ResourceLimit {
        operation: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("{structure} validation failed: law {law} violated at witness {witness:?}")]
    InvalidStructure {
        structure: &'static str,
        law: String,
        witness: Vec<usize>,
    },

    #[error("partition is not a congruence: classes {x} and {y} are not respected")]
    NotACongruence { x: usize, y: usize },

    #[error("subset is not a subheap: [{x},{y},{z}] escapes it")]
    NotASubheap { x: usize, y: usize, z: usize },

    #[error("subset is not a normal subheap")]
    NotNormal,

    #[error("subset is not an ideal: {reason}")]
    NotAnIdeal { reason: String },

    #[error("base element {element} is not a member of the given subset")]
    BaseNotInSubset { element: usize },

    #[error("{0}")]
    Unsupported(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn invalid(structure: &'static str, law: &str, witness: &[usize]) -> Self {
        Error::InvalidStructure {
            structure,
            law: law.to_string(),
            witness: witness.to_vec(),
        }
    }
}
