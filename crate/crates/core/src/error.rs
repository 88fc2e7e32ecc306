use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph of order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("instance too large: {0}")]
    TooLarge(String),
    #[error("value is an open problem: {0}")]
    Open(String),
    #[error("not covered by a closed form: {0}")]
    NotCovered(String),
}
