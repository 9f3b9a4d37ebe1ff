//! Origin-line covers of planar point sets and the vector-sum chains that
//! realize many distinct slopes in `R(P + P)`.
//!
//! For a point `p = (x, y)` with `x ≠ 0`, `R(p) = y / x` is the slope of the
//! line through the origin and `p`. Cover `P` by origin lines `l_1 … l_k` with
//! slopes `m_1 < … < m_k`, and order the points of each line by distance from
//! the origin. For `p` on `l_i` and `q` on `l_{i+1}`, the sum `p + q` lies
//! strictly between the two lines; lengthening `q` rotates the sum towards
//! `l_{i+1}` and lengthening `p` rotates it towards `l_i`. Walking from
//! `p_i^(1) + p_{i+1}^(n_{i+1})` down to `p_i^(1) + p_{i+1}^(1)` and then out to
//! `p_i^(n_i) + p_{i+1}^(1)` gives `n_i + n_{i+1} − 1` strictly decreasing
//! slopes inside `(m_i, m_{i+1})`. Adding the `k` doublings `p + p`, which sit
//! on the lines themselves, gives `2|P| + 1 − n_1 − n_k` distinct slopes.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::{Provenance, Witness, WitnessReport};
use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::sets::{sumset, FiniteSet, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GridPoint {
    pub x: Rational,
    pub y: Rational,
}

impl GridPoint {
    pub fn new(x: Rational, y: Rational) -> Self {
        GridPoint { x, y }
    }

    pub fn from_integers(x: i64, y: i64) -> Self {
        GridPoint::new(Rational::from_integer(x), Rational::from_integer(y))
    }

    /// Slope of the origin line through this point; `None` on the y-axis.
    pub fn slope(&self) -> Option<Rational> {
        self.y.checked_div(&self.x).ok()
    }

    pub fn norm_sqr(&self) -> Rational {
        &self.x.square() + &self.y.square()
    }

    fn in_open_quadrant(&self) -> bool {
        self.x.is_positive() && self.y.is_positive()
    }
}

impl std::ops::Add for &GridPoint {
    type Output = GridPoint;

    fn add(self, rhs: &GridPoint) -> GridPoint {
        GridPoint::new(&self.x + &rhs.x, &self.y + &rhs.y)
    }
}

impl std::ops::Sub for &GridPoint {
    type Output = GridPoint;

    fn sub(self, rhs: &GridPoint) -> GridPoint {
        GridPoint::new(&self.x - &rhs.x, &self.y - &rhs.y)
    }
}

impl std::fmt::Display for GridPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoverLine {
    pub slope: Rational,
    /// Sorted by strictly increasing squared magnitude.
    pub points: Vec<GridPoint>,
}

/// Origin lines covering a point set, sorted by strictly increasing slope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SlopeCover {
    pub lines: Vec<CoverLine>,
    pub source_point_count: usize,
}

impl SlopeCover {
    pub fn slopes(&self) -> impl Iterator<Item = &Rational> {
        self.lines.iter().map(|l| &l.slope)
    }

    /// Points per line, `n_1 … n_k`.
    pub fn line_sizes(&self) -> Vec<usize> {
        self.lines.iter().map(|l| l.points.len()).collect()
    }

    /// The point `p_line^(index)` (both 1-based).
    pub fn point(&self, line: usize, index: usize) -> Option<&GridPoint> {
        self.lines.get(line.checked_sub(1)?)?.points.get(index.checked_sub(1)?)
    }

    /// The sum of points a witness provenance refers to.
    pub fn resolve(&self, provenance: &Provenance) -> Option<GridPoint> {
        match *provenance {
            Provenance::Chain { pair, lower, upper } => Some(self.point(pair, lower)? + self.point(pair + 1, upper)?),
            Provenance::Diagonal { line } => {
                let p = self.point(line, 1)?;
                Some(p + p)
            }
            _ => None,
        }
    }
}

/// The direct product `A × A`, row-major in the order of `A`.
pub fn build_grid(a: &FiniteSet<Rational>) -> Result<Vec<GridPoint>> {
    if a.is_empty() {
        return Err(Error::EmptyInput("build_grid needs a nonempty set".into()));
    }
    if a.iter().any(|x| !x.is_positive()) {
        return Err(Error::Precondition(
            "the slope-cover construction requires positive reals".into(),
        ));
    }
    Ok(a.iter()
        .flat_map(|x| a.iter().map(move |y| GridPoint::new(x.clone(), y.clone())))
        .collect())
}

/// Groups the points by origin line. Repeated points are merged, so
/// `source_point_count` counts distinct points.
pub fn slope_cover(points: &[GridPoint]) -> Result<SlopeCover> {
    if let Some(p) = points.iter().find(|p| !p.in_open_quadrant()) {
        return Err(Error::Precondition(format!(
            "slope cover needs points in the open positive quadrant, got {p}"
        )));
    }
    let mut keyed: Vec<(Rational, Rational, GridPoint)> = points
        .iter()
        .map(|p| (p.slope().expect("x > 0"), p.norm_sqr(), p.clone()))
        .collect();
    keyed.sort();
    keyed.dedup_by(|a, b| a.2 == b.2);
    let source_point_count = keyed.len();

    let mut lines: Vec<CoverLine> = Vec::new();
    for (slope, _, p) in keyed {
        match lines.last_mut() {
            Some(line) if line.slope == slope => line.points.push(p),
            _ => lines.push(CoverLine { slope, points: vec![p] }),
        }
    }
    Ok(SlopeCover {
        lines,
        source_point_count,
    })
}

fn slope_of(p: &GridPoint) -> Rational {
    p.slope().expect("sums of positive-quadrant points have x > 0")
}

/// The chain between lines `i` and `i + 1` (0-based `i`), in strictly
/// decreasing slope order.
fn pair_chain(cover: &SlopeCover, i: usize) -> Result<Vec<Witness<Rational>>> {
    let lower = &cover.lines[i];
    let upper = &cover.lines[i + 1];
    let mut out = Vec::with_capacity(lower.points.len() + upper.points.len() - 1);
    let mut emit = |li: usize, uj: usize| {
        let ratio = slope_of(&(&lower.points[li] + &upper.points[uj]));
        out.push(Witness {
            ratio,
            provenance: Provenance::Chain {
                pair: i + 1,
                lower: li + 1,
                upper: uj + 1,
            },
        });
    };
    for uj in (0..upper.points.len()).rev() {
        emit(0, uj);
    }
    for li in 1..lower.points.len() {
        emit(li, 0);
    }
    for w in &out {
        if !(lower.slope < w.ratio && w.ratio < upper.slope) {
            return Err(Error::Internal(format!(
                "chain ratio {} escapes ({}, {})",
                w.ratio, lower.slope, upper.slope
            )));
        }
    }
    if out.windows(2).any(|w| w[0].ratio <= w[1].ratio) {
        return Err(Error::Internal(format!("chain {} is not strictly decreasing", i + 1)));
    }
    Ok(out)
}

/// All chain and doubling witnesses of a cover, ordered by line: the doubling
/// on `l_i`, then the chain towards `l_{i+1}`.
fn cover_witnesses(cover: &SlopeCover) -> Result<Vec<Witness<Rational>>> {
    let k = cover.lines.len();
    let chains: Vec<Vec<Witness<Rational>>> = (0..k.saturating_sub(1))
        .into_par_iter()
        .map(|i| pair_chain(cover, i))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut chains = chains.into_iter();
    for (i, line) in cover.lines.iter().enumerate() {
        let p = &line.points[0];
        let ratio = slope_of(&(p + p));
        debug_assert_eq!(ratio, line.slope);
        out.push(Witness {
            ratio,
            provenance: Provenance::Diagonal { line: i + 1 },
        });
        if let Some(chain) = chains.next() {
            out.extend(chain);
        }
    }
    let distinct: BTreeSet<&Rational> = out.iter().map(|w| &w.ratio).collect();
    if distinct.len() != out.len() {
        return Err(Error::Internal("witness ratios are not pairwise distinct".into()));
    }
    Ok(out)
}

/// Constructs `2|A|² − 1` distinct elements of `(A + A) / (A + A)` for a set
/// of positive reals.
pub fn thm1_witnesses(a: &FiniteSet<Rational>) -> Result<WitnessReport<Rational>> {
    let grid = build_grid(a)?;
    let cover = slope_cover(&grid)?;
    let witnesses = cover_witnesses(&cover)?;

    // Each witness is (a1 + a2) / (b1 + b2) by construction; check it.
    let sums = sumset(a, a, &Limits::default())?;
    for w in &witnesses {
        let p = cover.resolve(&w.provenance).expect("provenance from this cover");
        if !(sums.contains(&p.x) && sums.contains(&p.y)) {
            return Err(Error::Internal(format!("witness {p} is not in (A+A)×(A+A)")));
        }
    }
    let n = a.len();
    Ok(WitnessReport::new(witnesses, 2 * n * n - 1))
}

/// Constructs at least `|P| + 1` distinct slopes in `R(P + P)` for a
/// positive-quadrant point set not contained in one origin line.
pub fn thm2_witnesses(points: &[GridPoint]) -> Result<WitnessReport<Rational>> {
    let cover = slope_cover(points)?;
    if cover.lines.len() < 2 {
        return Err(Error::Degenerate("single slope".into()));
    }
    let witnesses = cover_witnesses(&cover)?;
    Ok(WitnessReport::new(witnesses, cover.source_point_count + 1))
}

/// `R(P + P)` by brute force over all sums `p + q`, `p, q ∈ P`.
pub fn sum_slopes(points: &[GridPoint]) -> FiniteSet<Rational> {
    points
        .iter()
        .flat_map(|p| points.iter().filter_map(move |q| (p + q).slope()))
        .collect()
}

/// Slope of the direction through two distinct points.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Finite(Rational),
    Vertical,
}

/// The set of directions `p − q` over distinct pairs of points, vertical
/// included.
pub fn directions(points: &[GridPoint]) -> BTreeSet<Direction> {
    let mut out = BTreeSet::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            if p == q {
                continue;
            }
            let d = p - q;
            out.insert(match d.slope() {
                Some(m) => Direction::Finite(m),
                None => Direction::Vertical,
            });
        }
    }
    out
}

pub fn direction_count(points: &[GridPoint]) -> usize {
    directions(points).len()
}
