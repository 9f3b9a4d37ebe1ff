//! Pigeonholing into angular sectors bounded by rational-direction rays.

use std::collections::BTreeMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational, WedgeSpec};
use crate::sets::FiniteSet;

pub const DEFAULT_SECTOR_COUNT: usize = 8;

/// Scale used to round `(cos θ, sin θ)` to an integer direction. For eight
/// sectors the rounded rays are exactly the octant boundaries.
const DIRECTION_SCALE: f64 = 1_000_000.0;

/// An integer direction vector `(dx, dy)` with `gcd(dx, dy) = 1`.
pub type Direction = (i64, i64);

fn boundary_directions(sector_count: usize) -> Result<Vec<Direction>> {
    let dirs: Vec<Direction> = (0..sector_count)
        .map(|j| {
            let theta = std::f64::consts::TAU * j as f64 / sector_count as f64;
            let dx = (theta.cos() * DIRECTION_SCALE).round() as i64;
            let dy = (theta.sin() * DIRECTION_SCALE).round() as i64;
            let g = dx.gcd(&dy);
            (dx / g, dy / g)
        })
        .collect();
    for j in 0..sector_count {
        let (a, b) = (dirs[j], dirs[(j + 1) % sector_count]);
        if cross(a, b) <= 0 || dot(a, b) <= 0 {
            return Err(Error::InvalidConfig(format!(
                "sector count {sector_count} gives sectors of angle ≥ 90°; use at least 5"
            )));
        }
    }
    Ok(dirs)
}

fn cross(a: Direction, b: Direction) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

fn dot(a: Direction, b: Direction) -> i128 {
    a.0 as i128 * b.0 as i128 + a.1 as i128 * b.1 as i128
}

/// Sign of `d × z`: positive when `z` is counter-clockwise from `d`.
fn cross_sign(d: Direction, z: &GaussianRational) -> i32 {
    let lhs = &Rational::from_integer(d.0) * &z.im;
    let rhs = &Rational::from_integer(d.1) * &z.re;
    (&lhs - &rhs).signum()
}

/// The half-open sectors `[d_j, d_{j+1})`, counter-clockwise from the
/// positive real axis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Sectors {
    pub boundaries: Vec<Direction>,
}

impl Sectors {
    pub fn new(sector_count: usize) -> Result<Self> {
        Ok(Sectors {
            boundaries: boundary_directions(sector_count)?,
        })
    }

    pub fn count(&self) -> usize {
        self.boundaries.len()
    }

    /// Index of the sector containing `z`, or `None` for `z = 0`.
    pub fn index_of(&self, z: &GaussianRational) -> Option<usize> {
        if z.is_zero() {
            return None;
        }
        let n = self.count();
        (0..n).find(|&j| {
            let lo = self.boundaries[j];
            let hi = self.boundaries[(j + 1) % n];
            cross_sign(lo, z) >= 0 && cross_sign(hi, z) < 0
        })
    }

    /// `tan` of the opening angle of sector `j`: any quotient `z / w` of two
    /// members of the sector has `|arg| < ` that angle, so it lies in the
    /// wedge with this slope bound.
    pub fn quotient_wedge(&self, j: usize) -> WedgeSpec {
        let lo = self.boundaries[j];
        let hi = self.boundaries[(j + 1) % self.count()];
        let slope = Rational::from_i128_parts(cross(lo, hi), dot(lo, hi)).expect("dot > 0");
        WedgeSpec::new(slope).expect("cross > 0")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SectorPartition {
    pub sector_count: usize,
    pub boundaries: Vec<Direction>,
    pub per_sector_counts: Vec<usize>,
    pub per_sector_weights: Vec<usize>,
    pub chosen_index: usize,
    /// Smallest-modulus member of the chosen sector; dividing by it brings
    /// the sector next to the positive real axis.
    pub normalizer: GaussianRational,
    pub quotient_wedge: WedgeSpec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectorSelection {
    pub partition: SectorPartition,
    /// Members of the chosen sector, as given.
    pub members: FiniteSet<GaussianRational>,
    /// `members / normalizer`.
    pub normalized: FiniteSet<GaussianRational>,
}

/// Keeps the heaviest sector of `X ∖ {0}`. Without weights every element
/// weighs 1; with weights, missing elements weigh 0. Ties go to the lowest
/// sector index.
pub fn sector_select(
    x: &FiniteSet<GaussianRational>,
    weights: Option<&BTreeMap<GaussianRational, usize>>,
    sector_count: usize,
) -> Result<SectorSelection> {
    let sectors = Sectors::new(sector_count)?;
    let nonzero = x.without_zero();
    if nonzero.is_empty() {
        return Err(Error::EmptyInput("sector selection needs a nonzero element".into()));
    }
    let weight = |z: &GaussianRational| match weights {
        Some(w) => w.get(z).copied().unwrap_or(0),
        None => 1,
    };

    let mut counts = vec![0usize; sector_count];
    let mut totals = vec![0usize; sector_count];
    let mut index = Vec::with_capacity(nonzero.len());
    for z in &nonzero {
        let j = sectors.index_of(z).expect("nonzero lies in a sector");
        counts[j] += 1;
        totals[j] += weight(z);
        index.push(j);
    }
    // Heaviest sector, preferring occupied sectors and then the lowest index.
    let chosen = (0..sector_count)
        .max_by_key(|&j| (totals[j], counts[j] > 0, std::cmp::Reverse(j)))
        .expect("at least five sectors");

    let members: FiniteSet<GaussianRational> = nonzero
        .iter()
        .zip(&index)
        .filter(|(_, &j)| j == chosen)
        .map(|(z, _)| z.clone())
        .collect();
    let normalizer = members
        .iter()
        .min_by(|a, b| a.norm_sqr().cmp(&b.norm_sqr()).then_with(|| a.cmp(b)))
        .expect("chosen sector is occupied")
        .clone();
    let normalized: FiniteSet<GaussianRational> = members
        .iter()
        .map(|z| z.checked_div(&normalizer).expect("normalizer is nonzero"))
        .collect();

    let quotient_wedge = sectors.quotient_wedge(chosen);
    if let Some(z) = normalized.iter().find(|z| !quotient_wedge.contains(z)) {
        return Err(Error::Internal(format!(
            "normalized element {z} escapes the sector wedge"
        )));
    }
    Ok(SectorSelection {
        partition: SectorPartition {
            sector_count,
            boundaries: sectors.boundaries,
            per_sector_counts: counts,
            per_sector_weights: totals,
            chosen_index: chosen,
            normalizer,
            quotient_wedge,
        },
        members,
        normalized,
    })
}
