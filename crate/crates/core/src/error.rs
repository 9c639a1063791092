use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("no interior minimum: A = 0 gives a pure Coulomb tail")]
    NoInteriorMinimum,

    #[error("mass profile singular at x = {x} (1 + gamma x = 0)")]
    MassSingularity { x: f64 },

    #[error("x = {x} is not interior to the sampled grid")]
    GridBoundary { x: f64 },

    #[error("Gamma function pole at {arg}")]
    GammaPole { arg: f64 },

    #[error("hypergeometric series did not converge: {0}")]
    NonConvergence(String),

    #[error("quadrature tolerance not met: estimate {estimate} with error {error} > {tol}")]
    ToleranceNotMet { estimate: f64, error: f64, tol: f64 },

    #[error("constant-mass limit (gamma = 0) has no hypergeometric reduction; use the limit formulas")]
    ZeroDeformation,

    #[error("imaginary p: E = {energy} exceeds gamma(A gamma + B) = {threshold}")]
    ImaginaryP { energy: f64, threshold: f64 },

    #[error("scattering regime: E = {0} >= 0")]
    Scattering(f64),

    #[error("no branch gives a = -{n}; candidates: {candidates}")]
    NoConsistentBranch { n: u32, candidates: String },

    #[error("wavefunction is not normalizable: {0}")]
    NotNormalizable(String),

    #[error("only {found} of {requested} bound states found")]
    TooFewBoundStates { found: usize, requested: usize },

    #[error("unknown preset '{0}'")]
    UnknownPreset(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
