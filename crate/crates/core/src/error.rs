use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Where inside an extension description a problem was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtensionSite {
    pub matrix: usize,
    pub block: Option<usize>,
    pub field: Option<&'static str>,
    pub item: Option<usize>,
}

impl ExtensionSite {
    pub fn matrix(matrix: usize) -> Self {
        Self { matrix, block: None, field: None, item: None }
    }

    pub fn field(mut self, field: &'static str) -> Self {
        self.field = Some(field);
        self
    }

    pub fn block(mut self, block: usize) -> Self {
        self.block = Some(block);
        self
    }

    pub fn item(mut self, item: usize) -> Self {
        self.item = Some(item);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionErrorKind {
    #[error("facet {0:?} is not a facet of the clique complex")]
    NotAFacet(Vec<String>),
    #[error("facet {0:?} already carries a matrix")]
    DuplicateFacet(Vec<String>),
    #[error("head `{0}` does not lie in the facet")]
    HeadOutsideFacet(String),
    #[error("matrix has no blocks")]
    NoBlocks,
    #[error("block vertex `{0}` does not lie in the facet")]
    BlockVertexOutsideFacet(String),
    #[error("block vertex `{0}` equals the head")]
    BlockVertexIsHead(String),
    #[error("block vertex `{0}` appears in two blocks")]
    RepeatedBlockVertex(String),
    #[error("edge {{{0}, {1}}} is not proper")]
    EdgeNotProper(String, String),
    #[error("only the first block may have no new variables")]
    EmptyLaterBlock,
    #[error("new variable `{0}` collides with a vertex of the graph")]
    NewVariableIsBaseVertex(String),
    #[error("new variable `{0}` is used twice")]
    NewVariableReused(String),
    #[error("new variable name is empty")]
    EmptyName,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("vertex name at position {index} is empty")]
    EmptyVertexName { index: usize },
    #[error("vertex `{name}` is listed twice")]
    DuplicateVertex { index: usize, name: String },
    #[error("edge {index} is a loop at `{name}`")]
    LoopEdge { index: usize, name: String },
    #[error("edge {index} mentions unknown vertex `{name}`")]
    UnknownEndpoint { index: usize, name: String },
    #[error("unknown vertex `{name}`")]
    UnknownVertex { name: String },
    #[error("facet list differs from the maximal cliques: {reason}")]
    FacetMismatch { index: Option<usize>, reason: String },
    #[error("invalid extension: {kind}")]
    Extension { site: ExtensionSite, kind: ExtensionErrorKind },
    #[error("homological degree {0} is below -1")]
    DegreeOutOfRange(i64),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("graph has {vertices} vertices, above the guard of {guard}")]
    GuardExceeded { vertices: usize, guard: usize },
    #[error("cycle enumeration exceeded the cap of {cap}")]
    CycleCapExceeded { cap: usize },
    #[error("polygon extension needs n >= 4, got {0}")]
    PolygonTooSmall(usize),
    #[error("vertex `{0}` is not ranked by the variable order")]
    UnrankedVariable(String),
    #[error("column permutation for matrix {matrix} is invalid: {reason}")]
    InvalidPermutation { matrix: usize, reason: String },
    #[error("diagonal rule would delete a loop at `{0}`")]
    DiagonalLoop(String),
    #[error("variable order violates the row conditions on matrix {matrix}")]
    OrderViolatesRows { matrix: usize },
    #[error("lead term of a minor is not squarefree")]
    SquareLead { matrix: usize },
    #[error("vertices do not form a cycle: {0}")]
    NotACycle(String),
    #[error("family has no admissible order")]
    NotOrderable { witness: Vec<usize> },
    #[error("exponent overflow in monomial arithmetic")]
    ExponentOverflow,
    #[error("coefficient overflow in polynomial arithmetic")]
    ArithmeticOverflow,
}

impl Error {
    pub(crate) fn ext(site: ExtensionSite, kind: ExtensionErrorKind) -> Self {
        Error::Extension { site, kind }
    }
}
