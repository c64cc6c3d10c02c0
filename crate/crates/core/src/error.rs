use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseFractionError {
    #[error("malformed fraction `{0}` (expected `a/b`)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("fraction `{0}` is outside (0, 1]")]
    OutOfRange(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop ({0}, {0}) is not allowed")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint outside 0..{n}")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("operation requires an undirected graph")]
    Directed,
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("operation requires at least {required} vertices, graph has {actual}")]
    TooSmall { required: usize, actual: usize },
    #[error("vertex set over {actual} vertices used with a graph on {expected}")]
    SizeMismatch { expected: usize, actual: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct EdgeListError {
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GenError {
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
    #[error("no certified graph after {attempts} attempts ({reason}); best tail constant {best_tail_constant}")]
    Uncertified { attempts: usize, best_tail_constant: f64, reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("exact oracle is capped at {cap} vertices, graph has {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("the exact oracle supports reversible-sync and irreversible modes only")]
    UnsupportedMode,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("threshold {0} is outside (0, 1]")]
pub struct InvalidThreshold(pub String);
