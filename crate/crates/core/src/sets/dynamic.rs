use serde::Serialize;

use super::{kfold_product, kfold_sum, pairwise, FiniteSet, KFold, Limits, SetOp};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Kind, Rational};

/// A set whose kind is only known at run time (set files, the expression
/// language). Operations between different kinds are rejected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "elements", rename_all = "lowercase")]
pub enum ScalarSet {
    Real(FiniteSet<Rational>),
    Complex(FiniteSet<GaussianRational>),
}

impl ScalarSet {
    pub fn kind(&self) -> Kind {
        match self {
            ScalarSet::Real(_) => Kind::Real,
            ScalarSet::Complex(_) => Kind::Complex,
        }
    }

    pub fn len(&self) -> usize {
        match self {
            ScalarSet::Real(s) => s.len(),
            ScalarSet::Complex(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Canonical element strings in set order.
    pub fn element_strings(&self) -> Vec<String> {
        match self {
            ScalarSet::Real(s) => s.iter().map(ToString::to_string).collect(),
            ScalarSet::Complex(s) => s.iter().map(ToString::to_string).collect(),
        }
    }

    pub fn as_real(&self) -> Result<&FiniteSet<Rational>> {
        match self {
            ScalarSet::Real(s) => Ok(s),
            ScalarSet::Complex(_) => Err(Error::KindMismatch {
                left: Kind::Complex,
                right: Kind::Real,
            }),
        }
    }

    /// Complex view; real sets are embedded along the real axis.
    pub fn to_complex(&self) -> FiniteSet<GaussianRational> {
        match self {
            ScalarSet::Real(s) => s.iter().cloned().map(GaussianRational::real).collect(),
            ScalarSet::Complex(s) => s.clone(),
        }
    }

    /// Returns the result together with the number of zero-divisor pairs skipped.
    pub fn pairwise(&self, other: &ScalarSet, op: SetOp, limits: &Limits) -> Result<(ScalarSet, usize)> {
        match (self, other) {
            (ScalarSet::Real(x), ScalarSet::Real(y)) => {
                let p = pairwise(x, y, op, limits)?;
                Ok((ScalarSet::Real(p.set), p.skipped))
            }
            (ScalarSet::Complex(x), ScalarSet::Complex(y)) => {
                let p = pairwise(x, y, op, limits)?;
                Ok((ScalarSet::Complex(p.set), p.skipped))
            }
            _ => Err(Error::KindMismatch {
                left: self.kind(),
                right: other.kind(),
            }),
        }
    }

    /// Exact `kX`.
    pub fn kfold_sum(&self, k: u64, limits: &Limits) -> Result<ScalarSet> {
        fn exact<T>(r: KFold<T>) -> FiniteSet<T> {
            r.exact().expect("no early exit requested")
        }
        Ok(match self {
            ScalarSet::Real(s) => ScalarSet::Real(exact(kfold_sum(s, k, None, limits)?)),
            ScalarSet::Complex(s) => ScalarSet::Complex(exact(kfold_sum(s, k, None, limits)?)),
        })
    }

    pub fn kfold_product(&self, k: u64, limits: &Limits) -> Result<ScalarSet> {
        Ok(match self {
            ScalarSet::Real(s) => ScalarSet::Real(kfold_product(s, k, limits)?),
            ScalarSet::Complex(s) => ScalarSet::Complex(kfold_product(s, k, limits)?),
        })
    }
}

impl From<FiniteSet<Rational>> for ScalarSet {
    fn from(s: FiniteSet<Rational>) -> Self {
        ScalarSet::Real(s)
    }
}

impl From<FiniteSet<GaussianRational>> for ScalarSet {
    fn from(s: FiniteSet<GaussianRational>) -> Self {
        ScalarSet::Complex(s)
    }
}
