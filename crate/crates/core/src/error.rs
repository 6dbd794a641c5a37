use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("state vector has length {got}, structure has {expected} components")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("component index {index} outside 1..={n}")]
    InvalidComponent { index: usize, n: usize },

    #[error("probability {value} outside [0, 1]")]
    InvalidProbability { value: f64 },

    #[error("operation requires enumerating 2^{n} states, enumeration cap is 2^{cap}")]
    EnumerationCap { n: usize, cap: usize },

    #[error("minimal path family must be nonempty")]
    EmptyFamily,

    #[error("k-out-of-n requires 1 <= k <= number of children, got k={k} with {children} children")]
    InvalidKOutOfN { k: usize, children: usize },

    #[error("structure is not semi-coherent: {0}")]
    NotSemicoherent(String),

    #[error("target unreachable from source even with all edges working")]
    DegenerateGraph,

    #[error("invalid lifetime distribution: {0}")]
    InvalidDistribution(String),

    #[error("negative time {0}")]
    NegativeTime(f64),

    #[error("density is not defined at t={0} (empirical table knot)")]
    NonDifferentiable(f64),

    #[error("no failure probability mass in the requested range; denominator is zero")]
    ZeroDenominator,

    #[error("quadrature failed to converge: achieved error estimate {estimate:e}")]
    Quadrature { estimate: f64 },

    #[error("set {{{index}}} is not a module of the structure: {witness}")]
    NotModular { index: String, witness: String },

    #[error("component {index} is not in the module")]
    NotInModule { index: usize },

    #[error("no pure equilibrium in the stage game at stage {stage}, state {state}")]
    NoPureEquilibrium { stage: usize, state: usize },

    #[error("cannot normalize voting-game values {values:?}: zero or mixed-sign total")]
    Normalization { values: Vec<f64> },

    #[error("invalid game definition: {0}")]
    InvalidGame(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("JSON error: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// CLI exit code: 1 for input errors, 2 for computational errors
    /// (capacity, quadrature, equilibrium).
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::EnumerationCap { .. }
            | Error::Quadrature { .. }
            | Error::NoPureEquilibrium { .. }
            | Error::ZeroDenominator
            | Error::Normalization { .. } => 2,
            _ => 1,
        }
    }
}
