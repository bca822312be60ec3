//! Spectral calculus for the Fourier operator truncated to the positive
//! half-axis.
//!
//! The operator acts on L2(R+) as a non-normal contraction whose spectrum is
//! the slanted segment [-e^{i pi/4}, e^{i pi/4}]/sqrt(2). A unitary log-grid
//! transform carries signals to a two-component model space where the
//! operator becomes multiplication by a 2x2 antidiagonal matrix symbol;
//! everything else (functions of the operator, resolvents, spectral
//! projectors, the commuting differential operator, and the singular-integral
//! calculus built from resolvent boundary differences) is computed through
//! that model and verified against direct quadrature oracles.

pub mod admissible;
pub mod error;
pub mod mellin;
pub mod model_ops;
pub mod oracle;
pub mod resolvent_calculus;
pub mod signals;
pub mod special;
pub mod symbol;

pub use admissible::{SpectralFunctionSpec, SpectralSet};
pub use error::{Error, Result};
pub use mellin::{ModelVector, SampledSignal, TransformPlan};
pub use symbol::{EigenData, ResolventBound, SymbolMatrix2};
