use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed ribbon graph: {0}")]
    MalformedGraph(String),

    #[error("dart sequence is not a closed cycle: {0}")]
    NotACycle(String),

    #[error("automorphism is orientation-reversing (conjugates the rotation to its inverse)")]
    OrientationReversing,

    #[error("invalid graph automorphism: {0}")]
    InvalidAutomorphism(String),

    #[error("internal consistency failure: {0}")]
    InternalConsistency(String),

    #[error("unsupported genus {got}: {why}")]
    UnsupportedGenus { got: usize, why: String },

    #[error("unknown generator letter '{0}'")]
    UnknownGenerator(String),

    #[error("invalid chain: {0}")]
    InvalidChain(String),

    #[error("lantern curves missing from the table: {0}")]
    MissingLantern(String),

    #[error("involution constraint system infeasible: {0}")]
    InfeasibleConstraint(String),

    #[error("twist about a zero homology class (separating or trivial curve)")]
    ZeroClass,

    #[error("matrix is not symplectic: {0}")]
    NotSymplectic(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("orbit budget exceeded: level orbit may reach {needed} points, budget {budget}")]
    OrbitBudget { needed: u128, budget: u64 },

    #[error("matrix is singular mod {0}")]
    SingularMod(u64),

    #[error("serialization error: {0}")]
    Json(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
