//! Ramanujan and Shanks cubic polynomials at arbitrary precision.
//!
//! The crate builds Ramanujan cubics `rho(h, s, x) = x^3 + h s x^2 - (h+3) s^2 x + s^3`
//! and Shanks cubics `rho(h, -1, x)`, finds their zeros in closed trigonometric
//! form, relates them to cubic Gaussian periods, verifies the associated
//! cube-root identities numerically, and computes the integer trace sequences
//! of the Shanks companion matrix exactly.
//!
//! Polynomial and root code is generic over [`Scalar`] / [`Real`], with
//! implementations for `f64`, exact [`Rational`] and [`HighReal`].

pub mod cubic;
pub mod error;
pub mod expr;
pub mod gaussian;
pub mod identities;
pub mod precision;
pub mod roots;
pub mod scalar;
pub mod sequences;

pub use cubic::{Cubic, IntegerMatrix3, RcpParams};
pub use error::{Error, Result};
pub use gaussian::{DeltaSet, PeriodSet};
pub use identities::{IdentityReport, Verdict};
pub use precision::{HighReal, PrecisionPolicy};
pub use roots::ZeroTriple;
pub use scalar::{Real, Scalar};
pub use sequences::{RecurrenceSpec, WalkTable};

pub type Rational = num_rational::BigRational;

pub type ExactCubic = Cubic<Rational>;
pub type HighCubic = Cubic<HighReal>;
pub type FloatCubic = Cubic<f64>;

pub type ExactRcpParams = RcpParams<Rational>;
pub type HighRcpParams = RcpParams<HighReal>;
pub type HighZeros = ZeroTriple<HighReal>;
