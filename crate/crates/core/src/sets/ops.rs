use rayon::prelude::*;
use serde::Serialize;

use super::FiniteSet;
use crate::error::{Error, Result};
use crate::exact::Scalar;

pub const DEFAULT_SIZE_CAP: usize = 10_000_000;

/// Grids smaller than this are enumerated on the calling thread.
const PARALLEL_GRID: usize = 1 << 15;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Largest product grid `|X|·|Y|` a single pairwise operation may enumerate.
    pub size_cap: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            size_cap: DEFAULT_SIZE_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SetOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl SetOp {
    pub fn symbol(self) -> char {
        match self {
            SetOp::Add => '+',
            SetOp::Sub => '-',
            SetOp::Mul => '*',
            SetOp::Div => '/',
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairwise<T> {
    pub set: FiniteSet<T>,
    /// Pairs dropped because the divisor was zero (always 0 unless `Div`).
    pub skipped: usize,
}

fn apply<T: Scalar>(op: SetOp, a: &T, b: &T) -> T {
    match op {
        SetOp::Add => a.plus(b),
        SetOp::Sub => a.minus(b),
        SetOp::Mul => a.times(b),
        SetOp::Div => a.divide(b).expect("zero divisors are filtered out"),
    }
}

fn check_cap(left: usize, right: usize, limits: &Limits) -> Result<()> {
    let projected = left as u128 * right as u128;
    if projected > limits.size_cap as u128 {
        return Err(Error::SizeCap {
            projected,
            cap: limits.size_cap,
        });
    }
    Ok(())
}

/// `{x op y : x ∈ X, y ∈ Y}`, deduplicated. For `Div`, pairs whose divisor is
/// zero are skipped and counted.
pub fn pairwise<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>, op: SetOp, limits: &Limits) -> Result<Pairwise<T>> {
    if x.is_empty() || y.is_empty() {
        return Err(Error::EmptyInput(format!("operand of `{}` is empty", op.symbol())));
    }
    let divisors: Vec<&T> = if op == SetOp::Div {
        y.iter().filter(|b| !b.is_zero()).collect()
    } else {
        y.iter().collect()
    };
    let skipped = (y.len() - divisors.len()) * x.len();
    if divisors.is_empty() {
        return Err(Error::EmptyResult);
    }
    check_cap(x.len(), divisors.len(), limits)?;

    let grid = x.len() * divisors.len();
    let mut out: Vec<T> = if grid < PARALLEL_GRID {
        let mut v = Vec::with_capacity(grid);
        for a in x {
            v.extend(divisors.iter().map(|b| apply(op, a, b)));
        }
        v
    } else {
        let rows_per_chunk = (PARALLEL_GRID / divisors.len()).max(1);
        x.as_slice()
            .par_chunks(rows_per_chunk)
            .flat_map_iter(|rows| {
                let mut v = Vec::with_capacity(rows.len() * divisors.len());
                for a in rows {
                    v.extend(divisors.iter().map(|b| apply(op, a, b)));
                }
                v.sort_unstable();
                v.dedup();
                v
            })
            .collect()
    };
    out.par_sort_unstable();
    out.dedup();
    Ok(Pairwise {
        set: FiniteSet::from_sorted_unique(out),
        skipped,
    })
}

pub fn sumset<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>, limits: &Limits) -> Result<FiniteSet<T>> {
    Ok(pairwise(x, y, SetOp::Add, limits)?.set)
}

pub fn difference_set<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>, limits: &Limits) -> Result<FiniteSet<T>> {
    Ok(pairwise(x, y, SetOp::Sub, limits)?.set)
}

pub fn product_set<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>, limits: &Limits) -> Result<FiniteSet<T>> {
    Ok(pairwise(x, y, SetOp::Mul, limits)?.set)
}

pub fn ratio_set<T: Scalar>(x: &FiniteSet<T>, y: &FiniteSet<T>, limits: &Limits) -> Result<Pairwise<T>> {
    pairwise(x, y, SetOp::Div, limits)
}

/// Evidence that a k-fold sumset reaches `target` elements.
///
/// Valid because `|X + Y| ≥ max(|X|, |Y|)` for nonempty sets, so
/// `|jX| ≤ |kX|` whenever `j ≤ k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LowerBoundCertificate {
    pub target: usize,
    /// The `j` for which `|jX|` was computed exactly.
    pub fold: u64,
    /// `|jX|`, at least `target`.
    pub size: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KFold<T> {
    Exact(FiniteSet<T>),
    AtLeast(LowerBoundCertificate),
}

impl<T> KFold<T> {
    /// Exact size, or the certified lower bound.
    pub fn size_lower_bound(&self) -> usize {
        match self {
            KFold::Exact(s) => s.elems.len(),
            KFold::AtLeast(c) => c.size,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, KFold::Exact(_))
    }

    pub fn exact(self) -> Option<FiniteSet<T>> {
        match self {
            KFold::Exact(s) => Some(s),
            KFold::AtLeast(_) => None,
        }
    }
}

fn kfold<T: Scalar>(
    x: &FiniteSet<T>,
    k: u64,
    op: SetOp,
    early_exit: Option<usize>,
    limits: &Limits,
) -> Result<KFold<T>> {
    if k == 0 {
        return Err(Error::Precondition("fold count k must be at least 1".into()));
    }
    if x.is_empty() {
        return Err(Error::EmptyInput("k-fold operand is empty".into()));
    }
    let reached = |set: &FiniteSet<T>, fold: u64| -> Option<KFold<T>> {
        early_exit.filter(|&t| set.len() >= t).map(|target| {
            KFold::AtLeast(LowerBoundCertificate {
                target,
                fold,
                size: set.len(),
            })
        })
    };
    if k > 1 {
        if let Some(cert) = reached(x, 1) {
            return Ok(cert);
        }
    }

    // Square-and-multiply over the bits of k, low bit first.
    let mut acc: Option<(FiniteSet<T>, u64)> = None;
    let mut power = (x.clone(), 1u64);
    let mut rest = k;
    loop {
        if rest & 1 == 1 {
            acc = Some(match acc {
                None => power.clone(),
                Some((set, fold)) => (pairwise(&set, &power.0, op, limits)?.set, fold + power.1),
            });
            let (set, fold) = acc.as_ref().expect("just set");
            if *fold < k {
                if let Some(cert) = reached(set, *fold) {
                    return Ok(cert);
                }
            }
        }
        rest >>= 1;
        if rest == 0 {
            break;
        }
        power = (pairwise(&power.0, &power.0, op, limits)?.set, power.1 * 2);
        if power.1 < k {
            if let Some(cert) = reached(&power.0, power.1) {
                return Ok(cert);
            }
        }
    }
    let (set, fold) = acc.expect("k >= 1");
    debug_assert_eq!(fold, k);
    Ok(KFold::Exact(set))
}

/// `kX = {x₁ + … + x_k}` by binary doubling.
///
/// With `early_exit = Some(t)` the computation stops as soon as some
/// intermediate `jX` (`j ≤ k`) has at least `t` elements.
pub fn kfold_sum<T: Scalar>(x: &FiniteSet<T>, k: u64, early_exit: Option<usize>, limits: &Limits) -> Result<KFold<T>> {
    kfold(x, k, SetOp::Add, early_exit, limits)
}

/// `X^(k) = {x₁ ⋯ x_k}` by binary doubling.
pub fn kfold_product<T: Scalar>(x: &FiniteSet<T>, k: u64, limits: &Limits) -> Result<FiniteSet<T>> {
    Ok(kfold(x, k, SetOp::Mul, None, limits)?
        .exact()
        .expect("no early exit requested"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{GaussianRational, Rational};
    use proptest::prelude::*;

    fn ints(xs: &[i64]) -> FiniteSet<Rational> {
        xs.iter().copied().map(Rational::from_integer).collect()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::from_i128_parts(n as i128, d as i128).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    /// All k-tuples, folded with `op`.
    fn naive_fold(x: &[Rational], k: usize, op: SetOp) -> FiniteSet<Rational> {
        let mut tuples: Vec<Rational> = x.to_vec();
        for _ in 1..k {
            tuples = tuples
                .iter()
                .flat_map(|t| x.iter().map(move |a| apply(op, t, a)))
                .collect();
        }
        FiniteSet::new(tuples)
    }

    #[test]
    fn pairwise_examples() {
        assert_eq!(
            sumset(&ints(&[1, 2]), &ints(&[1, 2]), &lim()).unwrap(),
            ints(&[2, 3, 4])
        );
        let r = ratio_set(&ints(&[2, 3, 4]), &ints(&[2, 3, 4]), &lim()).unwrap();
        let expected: FiniteSet<Rational> = [q(1, 2), q(2, 3), q(3, 4), q(1, 1), q(4, 3), q(3, 2), q(2, 1)]
            .into_iter()
            .collect();
        assert_eq!(r.set, expected);
        assert_eq!(r.set.len(), 7);
        assert_eq!(r.skipped, 0);
        assert_eq!(
            product_set(&ints(&[1, 2, 3]), &ints(&[1, 2, 3]), &lim()).unwrap(),
            ints(&[1, 2, 3, 4, 6, 9])
        );
    }

    #[test]
    fn division_skips_zero_divisors() {
        let r = ratio_set(&ints(&[0, 1, 2]), &ints(&[0, 1, 2]), &lim()).unwrap();
        assert_eq!(r.skipped, 3);
        assert_eq!(r.set, [q(0, 1), q(1, 2), q(1, 1), q(2, 1)].into_iter().collect());
        assert!(matches!(
            ratio_set(&ints(&[1, 2]), &ints(&[0]), &lim()),
            Err(Error::EmptyResult)
        ));
    }

    #[test]
    fn size_cap_is_enforced() {
        let big = ints(&(1..=100).collect::<Vec<_>>());
        let tight = Limits { size_cap: 9_999 };
        assert!(matches!(
            sumset(&big, &big, &tight),
            Err(Error::SizeCap {
                projected: 10_000,
                cap: 9_999
            })
        ));
        assert!(matches!(kfold_sum(&big, 2, None, &tight), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn kfold_examples() {
        assert_eq!(
            kfold_sum(&ints(&[1, 2]), 1, None, &lim()).unwrap(),
            KFold::Exact(ints(&[1, 2]))
        );
        assert_eq!(
            kfold_sum(&ints(&[1, 2]), 3, None, &lim()).unwrap(),
            KFold::Exact(ints(&[3, 4, 5, 6]))
        );
        assert_eq!(
            kfold_product(&ints(&[1, 2, 3]), 2, &lim()).unwrap(),
            ints(&[1, 2, 3, 4, 6, 9])
        );
        assert_eq!(kfold_product(&ints(&[1, 2]), 3, &lim()).unwrap(), ints(&[1, 2, 4, 8]));
        assert_eq!(
            kfold_product(&ints(&[2, 3]), 3, &lim()).unwrap(),
            ints(&[8, 12, 18, 27])
        );
        assert!(kfold_sum(&ints(&[1]), 0, None, &lim()).is_err());
    }

    #[test]
    fn early_exit_on_cube_set() {
        let a = ints(&[1, 2, 3, 4, 5]);
        let cube = kfold_product(&a, 3, &lim()).unwrap();
        assert_eq!(cube.len(), 30);
        // Independent oracle: plain iterated sumset up to the first fold that
        // already has 125 elements.
        let mut iterate = cube.clone();
        let mut fold = 1;
        while iterate.len() < 125 {
            iterate = naive_sumset(&iterate, &cube);
            fold += 1;
        }
        assert!(fold <= 16);
        match kfold_sum(&cube, 16, Some(125), &lim()).unwrap() {
            KFold::AtLeast(cert) => {
                assert!(cert.size >= 125);
                assert!(cert.fold < 16);
                assert_eq!(cert.target, 125);
            }
            KFold::Exact(s) => assert!(s.len() >= 125),
        }
    }

    fn naive_sumset(x: &FiniteSet<Rational>, y: &FiniteSet<Rational>) -> FiniteSet<Rational> {
        x.iter().flat_map(|a| y.iter().map(move |b| a + b)).collect()
    }

    #[test]
    fn early_exit_never_fires_on_the_final_fold() {
        // |2X| = 3 meets the target, but for k = 2 that is the answer itself.
        let r = kfold_sum(&ints(&[1, 2]), 2, Some(3), &lim()).unwrap();
        assert_eq!(r, KFold::Exact(ints(&[2, 3, 4])));
    }

    #[test]
    fn parallel_path_matches_sequential() {
        let a = ints(&(1..=300).collect::<Vec<_>>());
        let b: FiniteSet<Rational> = (1..=300).map(|n| q(n, 7)).collect();
        let fast = pairwise(&a, &b, SetOp::Div, &lim()).unwrap().set;
        let slow: FiniteSet<Rational> = a.iter().flat_map(|x| b.iter().map(move |y| x / y)).collect();
        assert_eq!(fast, slow);
    }

    #[test]
    fn complex_sums() {
        let x: FiniteSet<GaussianRational> = [GaussianRational::from_integers(1, 0), GaussianRational::i()]
            .into_iter()
            .collect();
        let s = sumset(&x, &x, &lim()).unwrap();
        assert_eq!(s.len(), 3);
    }

    fn small_set() -> impl Strategy<Value = Vec<Rational>> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), 1..=4)
            .prop_map(|v| v.into_iter().map(|(n, d)| q(n, d)).collect())
    }

    proptest! {
        #[test]
        fn kfold_sum_matches_nested_loops(x in small_set(), k in 1usize..=4) {
            let set = FiniteSet::new(x);
            let got = kfold_sum(&set, k as u64, None, &lim()).unwrap().exact().unwrap();
            prop_assert_eq!(got, naive_fold(set.as_slice(), k, SetOp::Add));
        }

        #[test]
        fn kfold_product_matches_nested_loops(x in small_set(), k in 1usize..=4) {
            let set = FiniteSet::new(x);
            let got = kfold_product(&set, k as u64, &lim()).unwrap();
            prop_assert_eq!(got, naive_fold(set.as_slice(), k, SetOp::Mul));
        }

        #[test]
        fn commutative_and_size_bounds(x in small_set(), y in small_set()) {
            let (x, y) = (FiniteSet::new(x), FiniteSet::new(y));
            for op in [SetOp::Add, SetOp::Mul] {
                let xy = pairwise(&x, &y, op, &lim()).unwrap().set;
                let yx = pairwise(&y, &x, op, &lim()).unwrap().set;
                prop_assert!(xy.len() <= x.len() * y.len());
                prop_assert_eq!(xy, yx);
            }
            let s = sumset(&x, &y, &lim()).unwrap();
            prop_assert!(s.len() >= x.len().max(y.len()));
        }
    }
}
