//! Exact elliptic-curve arithmetic over Q.

use thiserror::Error;

pub mod cubic;
pub mod curve;
pub mod factor;
pub mod rational;
pub mod surjectivity;

pub use cubic::CubicShape;
pub use curve::{
    curve_from_j, disc_square_class_of_j, discriminant, family_membership, g3_family_j, has_rational_two_torsion,
    two_division_cubic, two_torsion_family_j, CubicFactorType, CurveModel,
};
pub use factor::{squarefree_part, SquareClass};
pub use rational::ExactRational;
pub use surjectivity::{surjectivity_certificate, SurjectivityCertificate, SurjectivityVerdict};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("cannot parse rational: {0}")]
    Parse(String),
    #[error("zero has no square class")]
    ZeroInput,
    #[error("parameter must be nonzero")]
    ZeroParameter,
    #[error("cofactor {0} resisted factoring")]
    FactorizationIncomplete(String),
    #[error("the model is singular")]
    SingularCurve,
    #[error("undecided: {0}")]
    Undecided(String),
    #[error("t = {0} is a pole")]
    PoleAtParameter(String),
    #[error("no good prime up to {0}")]
    InsufficientSamples(u64),
    #[error("the model has non-integral coefficients")]
    NonIntegralModel,
    #[error("r = {0} is below 5")]
    ModulusTooSmall(u32),
    #[error("{0}")]
    Undefined(String),
}
