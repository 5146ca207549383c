use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not prime: {0}")]
    NotPrime(u64),

    #[error("field too large: {p}^{e} exceeds the limit {limit}")]
    FieldTooLarge { p: u64, e: usize, limit: u64 },

    #[error("division by zero")]
    DivisionByZero,

    #[error("mixed fields: {0}")]
    MixedFields(String),

    #[error("invalid field element: {0}")]
    InvalidElement(String),

    #[error("invalid polynomial: {0}")]
    InvalidPolynomial(String),

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("column index {k} exceeds the declared column count {m}")]
    ColumnOutOfRange { k: usize, m: usize },

    #[error("size mismatch: {0}")]
    SizeMismatch(String),

    #[error("padding condition violated: {0}")]
    PaddingViolated(String),

    #[error("stabilization cap exceeded at {cap}; value trace: {}", .trace.join(", "))]
    CapExceeded { cap: usize, trace: Vec<String> },

    /// A desk-scale size guard tripped. `estimate` is the work or size the
    /// request would have needed.
    #[error("guard exceeded: {what} ({estimate} > {limit}){hint}")]
    Guard {
        what: String,
        estimate: String,
        limit: String,
        hint: String,
    },

    #[error("element is not in the lattice")]
    NotInLattice,

    #[error("interval homology is undefined at the bottom element")]
    BottomElement,

    #[error("ordered census is unweighted")]
    OrderedWeighted,

    #[error("not polynomial of expected degree {0}")]
    NotPolynomial(usize),

    #[error("duplicate sample at q = {0}")]
    DuplicateSample(u64),

    #[error("count exceeds dimension bound: degree {degree} > {topdim}")]
    DimensionBound { degree: usize, topdim: usize },

    #[error("unclassifiable edge {0}")]
    UnclassifiableEdge(String),

    #[error("invalid argument: {0}")]
    Invalid(String),
}

impl Error {
    /// Guard trips and numerical inconsistencies, as opposed to malformed input.
    pub fn is_guard_or_inconsistency(&self) -> bool {
        matches!(
            self,
            Error::FieldTooLarge { .. }
                | Error::Guard { .. }
                | Error::CapExceeded { .. }
                | Error::NotPolynomial(_)
                | Error::DimensionBound { .. }
                | Error::UnclassifiableEdge(_)
        )
    }

    pub(crate) fn guard(what: &str, estimate: impl ToString, limit: impl ToString, hint: &str) -> Self {
        Error::Guard {
            what: what.to_string(),
            estimate: estimate.to_string(),
            limit: limit.to_string(),
            hint: if hint.is_empty() {
                String::new()
            } else {
                format!("; {hint}")
            },
        }
    }
}
