use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use super::Rational;
use crate::error::{Error, Result};

/// A complex number with rational real and imaginary parts.
///
/// The derived order is lexicographic on `(re, im)`; it is only used to make
/// set storage deterministic and carries no algebraic meaning.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        GaussianRational { re, im }
    }

    pub fn real(re: Rational) -> Self {
        GaussianRational {
            re,
            im: Rational::zero(),
        }
    }

    pub fn from_integers(re: i64, im: i64) -> Self {
        GaussianRational::new(re.into(), im.into())
    }

    pub fn zero() -> Self {
        GaussianRational::default()
    }

    pub fn one() -> Self {
        GaussianRational::real(Rational::one())
    }

    pub fn i() -> Self {
        GaussianRational::new(Rational::zero(), Rational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussianRational::new(self.re.clone(), -&self.im)
    }

    /// `re² + im²`.
    pub fn norm_sqr(&self) -> Rational {
        &self.re.square() + &self.im.square()
    }

    /// `z / w` computed as `z · conj(w) / |w|²`.
    pub fn checked_div(&self, w: &GaussianRational) -> Result<GaussianRational> {
        if w.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if w.im.is_zero() {
            return Ok(GaussianRational::new(
                self.re.checked_div(&w.re)?,
                self.im.checked_div(&w.re)?,
            ));
        }
        let n = w.norm_sqr();
        let p = self * &w.conj();
        Ok(GaussianRational::new(p.re.checked_div(&n)?, p.im.checked_div(&n)?))
    }

    pub fn scale(&self, k: &Rational) -> Self {
        GaussianRational::new(&self.re * k, &self.im * k)
    }

    pub fn to_f64_pair(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }

    /// Parses `(REAL,REAL)`; whitespace is ignored.
    pub fn parse(src: &str) -> Result<Self> {
        let compact: String = src.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(|| Error::Parse {
                input: src.trim().to_string(),
                reason: "complex scalars are written (re,im)".into(),
            })?;
        let (re, im) = inner.split_once(',').ok_or_else(|| Error::Parse {
            input: src.trim().to_string(),
            reason: "expected a comma between re and im".into(),
        })?;
        Ok(GaussianRational::new(Rational::parse(re)?, Rational::parse(im)?))
    }
}

impl fmt::Display for GaussianRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.re, self.im)
    }
}

impl Serialize for GaussianRational {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<Rational> for GaussianRational {
    fn from(re: Rational) -> Self {
        GaussianRational::real(re)
    }
}

impl Add for &GaussianRational {
    type Output = GaussianRational;

    fn add(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub for &GaussianRational {
    type Output = GaussianRational;

    fn sub(self, rhs: &GaussianRational) -> GaussianRational {
        GaussianRational::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul for &GaussianRational {
    type Output = GaussianRational;

    fn mul(self, rhs: &GaussianRational) -> GaussianRational {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussianRational::real(&self.re * &rhs.re);
        }
        GaussianRational::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &GaussianRational {
    type Output = GaussianRational;

    fn neg(self) -> GaussianRational {
        GaussianRational::new(-&self.re, -&self.im)
    }
}
