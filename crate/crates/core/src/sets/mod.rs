//! Finite scalar sets and their exact elementwise set algebra.

mod dynamic;
mod file;
mod ops;
mod profile;

use std::ops::Index;

use serde::Serialize;

use crate::exact::Scalar;

pub use dynamic::ScalarSet;
pub use file::{parse_scalar_items, parse_set_file, read_set_file, SetFile};
pub use ops::{
    difference_set, kfold_product, kfold_sum, pairwise, product_set, ratio_set, sumset, KFold, Limits,
    LowerBoundCertificate, Pairwise, SetOp, DEFAULT_SIZE_CAP,
};
pub use profile::{ratio_classes, ratio_profile, RatioClasses, RatioProfile};

/// A finite set, stored sorted and deduplicated so that iteration order and
/// every derived output are deterministic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct FiniteSet<T> {
    elems: Vec<T>,
}

impl<T: Scalar> FiniteSet<T> {
    pub fn new(elems: Vec<T>) -> Self {
        Self::with_duplicate_count(elems).0
    }

    /// Like [`FiniteSet::new`], also returning how many duplicates were dropped.
    pub fn with_duplicate_count(mut elems: Vec<T>) -> (Self, usize) {
        let before = elems.len();
        elems.sort_unstable();
        elems.dedup();
        let dropped = before - elems.len();
        (FiniteSet { elems }, dropped)
    }

    /// Caller guarantees `elems` is strictly increasing.
    pub(crate) fn from_sorted_unique(elems: Vec<T>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        FiniteSet { elems }
    }

    pub fn empty() -> Self {
        FiniteSet { elems: Vec::new() }
    }

    pub fn singleton(x: T) -> Self {
        FiniteSet { elems: vec![x] }
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, T> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[T] {
        &self.elems
    }

    pub fn into_vec(self) -> Vec<T> {
        self.elems
    }

    pub fn contains(&self, x: &T) -> bool {
        self.elems.binary_search(x).is_ok()
    }

    pub fn is_subset(&self, other: &FiniteSet<T>) -> bool {
        self.elems.iter().all(|x| other.contains(x))
    }

    pub fn contains_zero(&self) -> bool {
        self.elems.iter().any(Scalar::is_zero)
    }

    pub fn without_zero(&self) -> Self {
        FiniteSet {
            elems: self.elems.iter().filter(|x| !x.is_zero()).cloned().collect(),
        }
    }

    pub fn union(&self, other: &FiniteSet<T>) -> Self {
        let mut all = self.elems.clone();
        all.extend(other.elems.iter().cloned());
        FiniteSet::new(all)
    }

    pub fn min(&self) -> Option<&T> {
        self.elems.first()
    }

    pub fn max(&self) -> Option<&T> {
        self.elems.last()
    }
}

impl<T: Scalar> FromIterator<T> for FiniteSet<T> {
    fn from_iter<I: IntoIterator<Item = T>>(iter: I) -> Self {
        FiniteSet::new(iter.into_iter().collect())
    }
}

impl<'a, T> IntoIterator for &'a FiniteSet<T> {
    type Item = &'a T;
    type IntoIter = std::slice::Iter<'a, T>;

    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl<T> Index<usize> for FiniteSet<T> {
    type Output = T;

    fn index(&self, i: usize) -> &T {
        &self.elems[i]
    }
}
