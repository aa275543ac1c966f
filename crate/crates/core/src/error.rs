use thiserror::Error;

/// Failure to read a profile or tree file. `line` is 1-based and refers to the
/// physical line of the input text.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty profile: no candidate header or no voter lines")]
    EmptyProfile,
    #[error("line {line}: duplicate candidate name `{name}`")]
    DuplicateCandidate { line: usize, name: String },
    #[error("line {line}: unknown candidate `{name}`")]
    UnknownCandidate { line: usize, name: String },
    #[error("line {line}: candidate `{name}` ranked twice")]
    RepeatedInRanking { line: usize, name: String },
    #[error("line {line}: ranking lists {found} candidates, expected {expected}")]
    IncompleteRanking {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: malformed multiplicity `{token}`")]
    MalformedMultiplicity { line: usize, token: String },
    #[error("line {line}: expected an edge `u v`, got `{text}`")]
    MalformedEdge { line: usize, text: String },
    #[error(transparent)]
    Tree(#[from] TreeError),
}

/// A vertex/edge list that does not describe a tree.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("wrong edge count: {found} edges for {n} vertices (expected {})", n - 1)]
    WrongEdgeCount { n: usize, found: usize },
    #[error("cycle detected at edge ({0}, {1})")]
    Cycle(usize, usize),
    #[error("disconnected: vertex {0} is not reachable from vertex 1")]
    Disconnected(usize),
}
