use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed quiver description: {0}")]
    Syntax(String),
    #[error("arrow {0}->{0} is a loop")]
    Loop(usize),
    #[error("multiple arrows between vertices {0} and {1}")]
    MultipleArrow(usize, usize),
    #[error("orientation contains a directed cycle through vertex {0}")]
    DirectedCycle(usize),
    #[error("vertex {vertex} out of range for a quiver with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },
    #[error("quiver must have at least one vertex")]
    Empty,
    #[error("invalid preset: {0}")]
    InvalidPreset(String),
    #[error("quiver is not connected")]
    Disconnected,
    #[error("quiver is not a tree")]
    NotATree,
    #[error("quiver is not of Dynkin type")]
    NotDynkin,
    #[error("dimension vector has {got} coordinates, expected {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("dimension vector has a negative coordinate")]
    NegativeDimension,
    #[error("size {size} outside 1..={n}")]
    SizeOutOfRange { size: usize, n: usize },
    #[error("zero dimension vector")]
    ZeroVector,
    #[error("invalid vertex subset: {0}")]
    InvalidSubset(String),
    #[error("representations live on different quivers or dimension data")]
    RepresentationMismatch,
    #[error("unsupported field order {0}; use one of 2, 3, 5, 7")]
    UnsupportedPrime(u32),
    #[error("budget exceeded: {0}")]
    BudgetExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;
