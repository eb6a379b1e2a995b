use thiserror::Error;

/// Domain errors raised by the library.
///
/// Parse failures of the text formats are reported separately through
/// [`crate::io::ParseError`], which carries a line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element `{0}`")]
    DuplicateElement(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("order relation is not antisymmetric: `{0}` and `{1}` lie on a cycle")]
    CycleDetected(String, String),
    #[error("poset is empty")]
    EmptyPoset,
    #[error("poset is not pathwise connected")]
    NotConnected,
    #[error("simplex degree {0} is out of range")]
    DegreeOutOfRange(usize),
    #[error("face index {index} is out of range for a simplex of degree {degree}")]
    IndexOutOfRange { index: usize, degree: usize },
    #[error("path endpoints do not match")]
    EndpointMismatch,
    #[error("homotopy pattern does not match at position {0}")]
    PatternMismatch(usize),
    #[error("unknown 1-simplex {0}")]
    UnknownEdge(String),
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("group mismatch: {0}")]
    SpecMismatch(String),
    #[error("elements are not contained in the ambient subgroup")]
    NotContained,
    #[error("search space of {required} exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },
    #[error("fibre is empty")]
    EmptyFibre,
    #[error("invalid bundle: {0}")]
    InvalidBundle(String),
    #[error("subset is not open (not down-closed)")]
    NotOpen,
    #[error("bad anchor: {0}")]
    BadAnchor(String),
    #[error("cochain is not total: {missing} simplices have no value")]
    PartialCochain { missing: usize },
    #[error("cochain is not a connection cochain")]
    NotConnection,
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("mismatched inputs: {0}")]
    Mismatch(String),
    #[error("connection cochain does not induce the bundle cocycle of the trivialization")]
    WrongInducedCocycle,
    #[error("invalid Čech cocycle: {0}")]
    InvalidCech(String),
    #[error("not a cover: {0}")]
    NotACover(String),
}

pub type Result<T> = std::result::Result<T, Error>;
