use thiserror::Error;

/// Errors produced anywhere in the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),

    #[error("line {line}: malformed input: {reason}")]
    Malformed { line: usize, reason: String },

    #[error("line {line}: vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { line: usize, vertex: usize, n: usize },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("graph contains a cycle: {cycle:?}")]
    CycleDetected { cycle: Vec<usize> },

    #[error("graph is not connected")]
    NotConnected,

    #[error("graph has {n} vertices, exceeding the solver cap of {cap}")]
    SizeCapExceeded { n: usize, cap: usize },

    #[error("n = {n} outside supported range {min}..={max}")]
    OutOfRange { n: usize, min: usize, max: usize },

    #[error("position has no uncolored vertices")]
    EmptyPosition,

    #[error("marked set is empty")]
    EmptyMark,

    #[error("marked set contains vertices that are not live: {0:?}")]
    MarkOutsideLive(Vec<usize>),

    #[error("color {color} is not in the list of vertex {vertex}")]
    ColorNotAtVertex { vertex: usize, color: u32 },

    #[error("the game is already over")]
    GameOver,

    #[error("illegal move: {0}")]
    IllegalMove(String),
}

pub type Result<T> = std::result::Result<T, Error>;
