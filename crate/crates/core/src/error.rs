use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Input and precondition failures.
///
/// Checkers that classify their input (is this a C_n lattice? is this
/// family symplectic?) do not use this type for a negative answer; they
/// return a violation value instead. `Error` is reserved for inputs the
/// operation cannot meaningfully be applied to.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse `{text}`: {reason}")]
    Parse { text: String, reason: String },
    #[error("element {element} is outside the ground set (n = {n})")]
    OutOfRange { element: String, n: usize },
    #[error("duplicate entry {0}")]
    Duplicate(String),
    #[error("half-size n = {0} is not supported (1 ≤ n ≤ 32)")]
    UnsupportedSize(usize),
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("family is empty")]
    Empty,
    #[error("family has no unique {0}")]
    NotBounded(&'static str),
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("{0} is not an element of the lattice")]
    NotAnElement(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("the full lattice of all admissible sets plus J is excluded from the correspondence (it yields the same matroid as the admissible sets of size ≤ n−1)")]
    FullLattice,
    #[error("too large for exhaustive search: {0}")]
    TooLarge(String),
    #[error("{0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(text: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            text: text.into(),
            reason: reason.into(),
        }
    }
}

/// Negative outcome of a checker: the failing axiom plus witness sets.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct Diagnostic {
    pub axiom: String,
    pub detail: String,
    pub witness: Vec<String>,
}

impl Diagnostic {
    pub fn new(axiom: impl Into<String>, detail: impl Into<String>) -> Self {
        Diagnostic {
            axiom: axiom.into(),
            detail: detail.into(),
            witness: Vec::new(),
        }
    }

    pub fn with_witness<I, S>(mut self, witness: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.witness.extend(witness.into_iter().map(Into::into));
        self
    }
}

impl std::fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}] {}", self.axiom, self.detail)?;
        if !self.witness.is_empty() {
            write!(f, " (witness: {})", self.witness.join(", "))?;
        }
        Ok(())
    }
}

/// Outcome of a checker.
pub type Verdict = std::result::Result<(), Diagnostic>;
