use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors produced by graph operations, metrics, generation, enhancement
/// and the experiment harness.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("self-loop on node {0}")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) already present")]
    DuplicateEdge(usize, usize),
    #[error("node {node} out of range (graph has {node_count} nodes)")]
    NodeOutOfRange { node: usize, node_count: usize },
    #[error("node {0} has been removed")]
    DeadNode(usize),
    #[error("graph has no alive nodes")]
    NoAliveNodes,
    #[error("need at least {required} alive nodes, found {found}")]
    TooFewNodes { required: usize, found: usize },
    #[error("every alive node has degree zero; kappa is undefined")]
    ZeroDegree,
    #[error("kappa = {0} is not above 1; the random-failure threshold is undefined")]
    KappaTooSmall(f64),
    #[error("invalid BA parameters m = {m}, n = {n} (need n > m >= 1)")]
    InvalidBaParams { m: usize, n: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("i/o error: {0}")]
    Io(String),
    #[error("no candidate links: the graph is complete on its alive nodes")]
    NoCandidates,
    #[error("cost {cost} needs {needed} new links but only {available} are possible (maximum feasible cost {max_cost})")]
    InfeasibleCost {
        cost: f64,
        needed: usize,
        available: usize,
        max_cost: f64,
    },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("need at least 2 samples, found {0}")]
    TooFewSamples(usize),
    #[error("config: {0}")]
    Config(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
