use std::collections::BTreeMap;

use serde::Serialize;

use super::FiniteSet;
use crate::exact::Scalar;

/// Every pair `(a, b) ∈ X × Y` with `a ≠ 0`, grouped by the ratio `b / a`.
/// Within a class, pairs appear in lexicographic `(a, b)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioClasses<T> {
    pub classes: BTreeMap<T, Vec<(T, T)>>,
    pub skipped: usize,
}

pub fn ratio_classes<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>) -> RatioClasses<T> {
    let mut classes: BTreeMap<T, Vec<(T, T)>> = BTreeMap::new();
    let mut skipped = 0;
    for a in x {
        if a.is_zero() {
            skipped += y.len();
            continue;
        }
        for b in y {
            let ratio = b.divide(a).expect("nonzero denominator");
            classes.entry(ratio).or_default().push((a.clone(), b.clone()));
        }
    }
    RatioClasses { classes, skipped }
}

/// Representation counts `r(x) = |{(a, b) : b / a = x}|` with one witness pair
/// per ratio.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RatioProfile<T> {
    pub counts: BTreeMap<T, usize>,
    pub representatives: BTreeMap<T, (T, T)>,
    pub skipped: usize,
}

impl<T: Scalar> RatioProfile<T> {
    pub fn count(&self, x: &T) -> usize {
        self.counts.get(x).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }

    pub fn ratios(&self) -> impl Iterator<Item = &T> {
        self.counts.keys()
    }
}

impl<T: Scalar> From<&RatioClasses<T>> for RatioProfile<T> {
    fn from(rc: &RatioClasses<T>) -> Self {
        RatioProfile {
            counts: rc.classes.iter().map(|(k, v)| (k.clone(), v.len())).collect(),
            representatives: rc.classes.iter().map(|(k, v)| (k.clone(), v[0].clone())).collect(),
            skipped: rc.skipped,
        }
    }
}

pub fn ratio_profile<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>) -> RatioProfile<T> {
    RatioProfile::from(&ratio_classes(x, y))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, Rational};
    use crate::sets::{ratio_set, Limits};
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> FiniteSet<Rational> {
        xs.iter().copied().map(Rational::from_integer).collect()
    }

    #[test]
    fn profile_examples() {
        let a = ints(&[1, 2, 4]);
        let p = ratio_profile(&a, &a);
        let two = Rational::from_integer(2);
        assert_eq!(p.count(&two), 2);
        assert_eq!(p.representatives[&two], (Rational::from_integer(1), two.clone()));
        assert_eq!(p.total(), 9);

        let one = ints(&[1]);
        let p = ratio_profile(&one, &one);
        assert_eq!(p.counts.len(), 1);
        assert_eq!(p.count(&Rational::one()), 1);

        let i = GaussianRational::i();
        let c: FiniteSet<GaussianRational> = [GaussianRational::one(), i.clone()].into_iter().collect();
        let p = ratio_profile(&c, &c);
        assert_eq!(p.counts.len(), 3);
        assert_eq!(p.count(&GaussianRational::one()), 2);
        assert_eq!(p.count(&i), 1);
        assert_eq!(p.count(&-&i), 1);
    }

    #[test]
    fn zero_denominators_are_counted() {
        let a = ints(&[0, 1, 2]);
        let p = ratio_profile(&a, &a);
        assert_eq!(p.skipped, 3);
        assert_eq!(p.total(), 6);
    }

    proptest! {
        #[test]
        fn mass_and_keys(xs in proptest::collection::vec(1i64..40, 1..8)) {
            let a = ints(&xs);
            let p = ratio_profile(&a, &a);
            prop_assert_eq!(p.total(), a.len() * a.len());
            let keys: FiniteSet<Rational> = p.ratios().cloned().collect();
            prop_assert_eq!(keys, ratio_set(&a, &a, &Limits::default()).unwrap().set);
            for (x, (lo, hi)) in &p.representatives {
                prop_assert_eq!(&(hi / lo), x);
            }
        }
    }
}
