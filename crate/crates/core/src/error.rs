use thiserror::Error;

/// Errors raised by graph ingestion, complex construction and the verification routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown edge `{0}`")]
    UnknownEdge(String),
    #[error("vertex `{0}` declared twice")]
    DuplicateVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("parallel edge `{0}`")]
    ParallelEdge(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph has a directed cycle: {}", .0.join(" -> "))]
    CyclicGraph(Vec<String>),
    #[error("graph has no edges")]
    NoEdges,
    #[error("size limit exceeded: {what} exceeds cap {cap}")]
    SizeLimit { what: String, cap: usize },
    #[error("{count} vertices exceed the supported maximum of {max}")]
    TooManyVertices { count: usize, max: usize },
    #[error("face order is not a permutation of the maximal faces")]
    NotAPermutation,
    #[error("wedge with the empty space is undefined")]
    WedgeWithEmpty,
    #[error("complex is empty")]
    EmptyComplex,
    #[error("root set is empty")]
    EmptyRootSet,
    #[error("no directed forest has exactly the requested roots")]
    NoSuchForest,
    #[error("maximal face does not have the requested roots")]
    RootMismatch,
    #[error("contractibility statements disagree: {0}")]
    EquivalenceViolation(String),
    #[error("independence complex fact violated: {0}")]
    FactViolation(String),
    #[error("neighborhood of `{0}` is not a clique")]
    NeighborhoodNotClique(String),
    #[error("no vertex with a clique neighborhood in residual graph on {0:?}")]
    RecursionStuck(Vec<String>),
    #[error("vertex set does not induce a complete graph")]
    CliqueRequired,
    #[error("hypothesis violated: {0}")]
    ConditionViolated(String),
    #[error("cycle family needs n >= 2k-1, got n={n}, k={k}")]
    DegenerateCycle { n: usize, k: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph is not a forest")]
    NotAForest,
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph has no edges; its independence complex is a simplex")]
    ZeroDegree,
    #[error("face {0} is not a maximal face")]
    NotMaximal(String),
    #[error("complex minus the faces is not acyclic: {0}")]
    NotAcyclic(String),
    #[error("operation requires the {expected} metric")]
    WrongMetric { expected: &'static str },
    #[error("duplicate point `{0}`")]
    DuplicatePoint(String),
    #[error("invalid point data: {0}")]
    InvalidPoint(String),
}

pub type Result<T> = std::result::Result<T, Error>;
