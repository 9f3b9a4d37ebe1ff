//! Exact scalars: canonical rationals, Gaussian rationals and the wedge
//! predicate. No floating point enters any computation in here except the
//! explicit `to_f64` conversions used for reporting.

mod gaussian;
mod rational;
mod wedge;

use std::fmt;
use std::hash::Hash;

use num_bigint::BigInt;
use serde::Serialize;

pub use gaussian::GaussianRational;
pub use rational::Rational;
pub use wedge::{wedge_member, WedgeSpec};

use crate::error::Result;

/// Which field a set lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Real,
    Complex,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Real => "real",
            Kind::Complex => "complex",
        })
    }
}

/// Field operations shared by [`Rational`] and [`GaussianRational`], so the
/// set algebra can be written once.
pub trait Scalar: Clone + Ord + Hash + Send + Sync + fmt::Display + fmt::Debug + Serialize + 'static {
    const KIND: Kind;

    fn zero() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, rhs: &Self) -> Self;
    fn minus(&self, rhs: &Self) -> Self;
    fn times(&self, rhs: &Self) -> Self;
    fn divide(&self, rhs: &Self) -> Result<Self>;
    fn parse_scalar(src: &str) -> Result<Self>;
    fn to_complex(&self) -> GaussianRational;
}

impl Scalar for Rational {
    const KIND: Kind = Kind::Real;

    fn zero() -> Self {
        Rational::zero()
    }

    fn is_zero(&self) -> bool {
        Rational::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn divide(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }

    fn parse_scalar(src: &str) -> Result<Self> {
        Rational::parse(src)
    }

    fn to_complex(&self) -> GaussianRational {
        GaussianRational::real(self.clone())
    }
}

impl Scalar for GaussianRational {
    const KIND: Kind = Kind::Complex;

    fn zero() -> Self {
        GaussianRational::zero()
    }

    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }

    fn plus(&self, rhs: &Self) -> Self {
        self + rhs
    }

    fn minus(&self, rhs: &Self) -> Self {
        self - rhs
    }

    fn times(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn divide(&self, rhs: &Self) -> Result<Self> {
        self.checked_div(rhs)
    }

    fn parse_scalar(src: &str) -> Result<Self> {
        GaussianRational::parse(src)
    }

    fn to_complex(&self) -> GaussianRational {
        self.clone()
    }
}

/// Canonical form of `num/den`.
pub fn rat_normalize(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Result<Rational> {
    Rational::new(num.into(), den.into())
}

pub fn gauss_div(z: &GaussianRational, w: &GaussianRational) -> Result<GaussianRational> {
    z.checked_div(w)
}
