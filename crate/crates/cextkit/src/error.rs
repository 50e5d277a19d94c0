use thiserror::Error;

/// Errors shared by every layer of the workbench.
#[derive(Debug, Error)]
pub enum Error {
    #[error("element index {index} out of range for group of order {order}")]
    ElementOutOfRange { index: usize, order: usize },

    #[error("multiplication table of order {order} is not a group: {reason}")]
    InvalidGroup { order: usize, reason: String },

    #[error("map is not a homomorphism: images[{a}*{b}] != images[{a}]*images[{b}]")]
    NotAHomomorphism { a: usize, b: usize },

    #[error("subgroup is not normal (conjugate of element {h} by {g} escapes)")]
    NotNormal { g: usize, h: usize },

    #[error("set is not a subgroup of the given parent")]
    NotASubgroup,

    #[error("domain/codomain mismatch: {0}")]
    Mismatch(String),

    #[error("group order {required} exceeds the configured cap {cap}")]
    OrderCapExceeded { required: usize, cap: usize },

    #[error("enumeration budget exceeded: needs {required} candidates, budget {budget}")]
    BudgetExceeded { required: u64, budget: u64 },

    #[error("diagram does not commute: paths from {from} to {to} disagree on element {witness}")]
    NonCommutingDiagram { from: usize, to: usize, witness: usize },

    #[error("n-fold arrow is not an extension: comparison at subset {subset:#b} misses a tuple")]
    NotAnExtension { subset: u32 },

    #[error("level {level} out of range for truncation {truncation}")]
    LevelOutOfRange { level: isize, truncation: isize },

    #[error("simplicial identity {identity} fails on element {witness} at level {level}")]
    SimplicialIdentity { identity: String, level: isize, witness: usize },

    #[error("coefficients must be abelian")]
    NotAbelian,

    #[error("sequence of maps is not a complex: composite at position {position} is nonzero")]
    NotAComplex { position: usize },

    #[error("cocycle identity fails at ({x},{y},{z})")]
    NotACocycle { x: usize, y: usize, z: usize },

    #[error("integer overflow in exact arithmetic")]
    Overflow,

    #[error("size cap exceeded: {0}")]
    CapExceeded(String),

    #[error("certificate absent: run the torsor check first")]
    CertificateAbsent,

    #[error("tuple is not a member of the requested space")]
    NotAMember,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("precondition violated: {0}")]
    Precondition(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
