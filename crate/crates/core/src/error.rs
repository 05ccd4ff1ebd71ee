use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop on node {0} is not allowed")]
    SelfLoop(usize),

    #[error("unknown node {node} (graph has {n_nodes} nodes)")]
    UnknownNode { node: usize, n_nodes: usize },

    #[error("invalid model parameters: {0}")]
    InvalidParams(String),

    #[error("target size {n_final} is smaller than the seed ({seed_nodes} nodes)")]
    TargetTooSmall { n_final: usize, seed_nodes: usize },

    #[error("cannot attach {m} distinct edges with only {available} candidate nodes")]
    TooFewTargets { m: usize, available: usize },

    #[error("no degrees at or above k_min = {k_min}")]
    EmptyTail { k_min: u64 },

    #[error("every tail degree equals k_min = {k_min}; the exponent is undefined")]
    DegenerateTail { k_min: u64 },

    #[error("histograms disagree on node count ({expected} vs {found})")]
    MismatchedTotals { expected: u64, found: u64 },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("arrival order is not a bijection: {0}")]
    NotBijective(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("numerical inconsistency: {0}")]
    Numeric(String),

    #[error("invalid sampler configuration: {0}")]
    InvalidConfig(String),

    #[error("initial chain state has zero posterior probability")]
    ImpossibleInitialState,

    #[error("data likelihood failed at iteration {iter}: {message}")]
    DataLikelihood { iter: usize, message: String },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
