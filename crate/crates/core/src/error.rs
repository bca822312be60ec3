use thiserror::Error;

/// Errors produced by the operator library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("|mu| = {mu} is out of range: |Gamma(1/2+i*mu)| underflows past |mu| = {limit}")]
    GammaUnderflow { mu: f64, limit: f64 },

    #[error("spectral parameter mu must be >= 0, got {0}")]
    NegativeMu(f64),

    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("log-grid bounds are invalid: s_min = {s_min}, s_max = {s_max}")]
    BadGridBounds { s_min: f64, s_max: f64 },

    #[error("operands live on different transform plans")]
    PlanMismatch,

    #[error("matrix is singular: z coincides with an eigenvalue of the symbol")]
    SingularMatrix,

    #[error("z = {z} lies on the spectral segment (distance {dist:.3e}); resolvent undefined")]
    SpectralPoint { z: num_complex::Complex64, dist: f64 },

    #[error(
        "set is not admissible: its asymmetric part is not essentially separated from zero \
         (ess dist = {dist:.3e})"
    )]
    InadmissibleSet { dist: f64 },

    #[error(
        "function is not admissible: the supremand |even| + |odd|/|zeta| diverges as zeta -> 0"
    )]
    InadmissibleFunction,

    #[error("function is not invertible on the spectrum: ess inf |h| = {inf:.3e}")]
    NotInvertible { inf: f64 },

    #[error("radius r = 0 maps to mu = infinity; the spectral singularity has no finite parameter")]
    InfiniteMu,

    #[error("radius |r| = {0} exceeds the spectral radius 1/sqrt(2)")]
    RadiusOutOfRange(f64),

    #[error(
        "signal lies outside the discrete operator domain: relative tail mass {mass:.3e} \
         of the multiplied transform exceeds {limit:.1e}"
    )]
    TailMass { mass: f64, limit: f64 },

    #[error("unknown named signal {0:?}")]
    UnknownSignal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
