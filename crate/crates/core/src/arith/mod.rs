//! Exact arithmetic: rationals, Laurent polynomials in `t`, univariate
//! rational functions, sparse multivariate polynomials and row reduction.
//!
//! Everything here is a pure value type. Nothing is ever rounded.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use thiserror::Error;

mod laurent;
pub mod linalg;
mod multipoly;
mod ratfun;
mod scalar;

pub use laurent::LaurentPoly;
pub use linalg::{determinant, invert, rank, row_space_basis};
pub use multipoly::{constant_ratio, MultiPoly};
pub use ratfun::RationalFunction;
pub use scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("operation undefined on the zero element")]
    ZeroInput,
    #[error("denominator polynomial is zero")]
    ZeroDenominator,
    #[error("division by zero")]
    DivisionByZero,
    #[error("rows have different lengths")]
    RaggedInput,
    #[error("parse error: {0}")]
    Parse(String),
}

/// Commutative ring with unit, as used by the generic matrix helpers.
pub trait Ring:
    Clone
    + PartialEq
    + Debug
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
}

pub trait Field: Ring + Div<Output = Self> {
    fn inverse(&self) -> Option<Self>;
}

/// `ord_{t=0}` of a nonzero rational function.
pub fn valuation_at_zero(f: &RationalFunction) -> Result<i32, ArithError> {
    f.valuation_at_zero()
}

/// Value of `f` as `t -> 0`, or `None` when `f` has a pole there.
pub fn limit_at_zero(f: &RationalFunction) -> Option<Scalar> {
    f.limit_at_zero()
}
