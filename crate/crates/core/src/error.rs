use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed cycle notation: {0}")]
    MalformedCycle(String),
    #[error("point {point} out of range 1..={degree}")]
    PointOutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle word")]
    RepeatedPoint(usize),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("gate exceeded: {what} needs {needed}, limit {limit}")]
    GateExceeded {
        what: &'static str,
        needed: String,
        limit: String,
    },
    #[error("not a subgroup of the ambient group")]
    NotSubgroup,
    #[error("suborbit is not self-paired")]
    NotSelfPaired,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("unknown group spec: {0}")]
    UnknownSpec(String),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("singular matrix")]
    SingularMatrix,
    #[error("no example in this case: {0}")]
    BadCase(String),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn gate<T: ToString, U: ToString>(what: &'static str, needed: T, limit: U) -> Error {
    Error::GateExceeded {
        what,
        needed: needed.to_string(),
        limit: limit.to_string(),
    }
}

/// Resource limits for every gated operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limits {
    pub enumeration: u64,
    pub coset_index: u64,
    pub lattice: u64,
    pub backtrack: u64,
    pub graph_vertices: u64,
    pub canonical: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            enumeration: 1_000_000,
            coset_index: 1_000_000,
            lattice: 50_000,
            backtrack: 1_000_000_000,
            graph_vertices: 1_000_000,
            canonical: 5000,
        }
    }
}
