use thiserror::Error;

use crate::expr::ParseError;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("arctangent of 0/0 is undefined")]
    DegenerateAngle,
    #[error("scale parameter must be nonzero")]
    InvalidScale,
    #[error("coefficients do not describe a Ramanujan cubic")]
    NotAnRcp,
    #[error("gamma must avoid 1 and 2")]
    DegenerateGamma,
    #[error("leading coefficient is zero")]
    NotCubic,
    #[error("cubic does not have three distinct real zeros")]
    NotThreeRealRoots,
    #[error("argument hits a pole of the cyclic transform")]
    PoleOfTransform,
    #[error("target is equidistant from two zeros")]
    AmbiguousMatch,
    #[error("cube root of {0} is not exactly representable")]
    InexactCubeRoot(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not 1 mod 3, so there are no cubic cosets")]
    NoCubicCosets(u64),
    #[error("{0} is not a Shanks prime")]
    NotShanksPrime(i128),
    #[error("h = {0} is divisible by 3")]
    NotLehmerCase(i64),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("evaluation domain error: {0}")]
    EvaluationDomainError(String),
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}
