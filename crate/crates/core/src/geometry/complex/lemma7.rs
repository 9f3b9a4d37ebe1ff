//! The `S_ij` construction bounding `|B/A| · |C|²` by
//! `|AC + AC| · |BC + BC|` over ℂ.
//!
//! Pick one representative `(a_i, b_i)` per ratio of `B/A`, keep those whose
//! `a_i` falls in the heaviest sector (weighted by how many representatives
//! each `a` carries), keep the largest sector `C′` of `C`, and join the kept
//! ratios by a minimum spanning tree. Every tree edge `(l_i, l_j)` gives
//! `S_ij = {(a_i c_1 + a_j c_2, b_i c_1 + b_j c_2) : c_1, c_2 ∈ C′}`, a set of
//! `|C′|²` points in `(AC + AC) × (BC + BC)`, disjoint from the other edges'.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::mst::{euclidean_mst, MstEdges};
use super::sector::{sector_select, SectorPartition};
use crate::error::{Error, Result};
use crate::exact::GaussianRational;
use crate::sets::{product_set, ratio_classes, sumset, FiniteSet, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct RepresentativeSet {
    /// One `(a, b)` per ratio `b / a`, in ratio order.
    pub pairs: Vec<(GaussianRational, GaussianRational)>,
    pub weights: BTreeMap<GaussianRational, usize>,
    /// The pairs whose first coordinate lies in the chosen sector of `A`.
    pub restricted: Vec<(GaussianRational, GaussianRational)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Lemma7Construction {
    pub representatives: RepresentativeSet,
    pub a_partition: SectorPartition,
    pub c_partition: SectorPartition,
    /// `|C′|`.
    pub c_sector_size: usize,
    pub mst: Option<MstEdges>,
    /// `|S_ij|` per tree edge; each equals `|C′|²`.
    pub s_sizes: Vec<usize>,
    /// `|AC + AC|`.
    pub ac_sums: usize,
    /// `|BC + BC|`.
    pub bc_sums: usize,
    /// `|B/A|` with zeros removed from `A` and `B`.
    pub ratio_count: usize,
    /// `|C|`.
    pub c_size: usize,
    /// `|AC + AC| · |BC + BC|`.
    pub lhs: u128,
    /// `(|P′| − 1) · |C′|²`.
    pub construction_bound: u128,
    /// `lhs / (|B/A| · |C|²)`.
    pub ratio_to_target: f64,
}

impl Lemma7Construction {
    pub fn holds(&self) -> bool {
        self.lhs >= self.construction_bound
    }
}

pub fn lemma7_construct(
    a: &FiniteSet<GaussianRational>,
    b: &FiniteSet<GaussianRational>,
    c: &FiniteSet<GaussianRational>,
    sector_count: usize,
    limits: &Limits,
) -> Result<Lemma7Construction> {
    let (a0, b0) = (a.without_zero(), b.without_zero());
    if a0.is_empty() || b0.is_empty() || c.without_zero().is_empty() {
        return Err(Error::EmptyInput("A, B and C each need a nonzero element".into()));
    }

    let pairs: Vec<_> = ratio_classes(&a0, &b0)
        .classes
        .into_values()
        .map(|mut reps| reps.swap_remove(0))
        .collect();
    let mut weights: BTreeMap<GaussianRational, usize> = BTreeMap::new();
    for (ai, _) in &pairs {
        *weights.entry(ai.clone()).or_default() += 1;
    }
    let a_sel = sector_select(&a0, Some(&weights), sector_count)?;
    let restricted: Vec<_> = pairs
        .iter()
        .filter(|(ai, _)| a_sel.members.contains(ai))
        .cloned()
        .collect();
    let c_sel = sector_select(c, None, sector_count)?;
    let c_prime = &c_sel.members;
    let c_len = c_prime.len();

    let ac = product_set(a, c, limits)?;
    let bc = product_set(b, c, limits)?;
    let ac_ac = sumset(&ac, &ac, limits)?;
    let bc_bc = sumset(&bc, &bc, limits)?;

    let mut s_sizes = Vec::new();
    let mst = if restricted.len() >= 2 {
        let by_ratio: HashMap<GaussianRational, usize> = restricted
            .iter()
            .enumerate()
            .map(|(k, (ai, bi))| (bi.checked_div(ai).expect("a ≠ 0"), k))
            .collect();
        let mst = euclidean_mst(&by_ratio.keys().cloned().collect::<Vec<_>>())?;
        let projected = mst.edges.len() as u128 * (c_len * c_len) as u128;
        if projected > limits.size_cap as u128 {
            return Err(Error::SizeCap {
                projected,
                cap: limits.size_cap,
            });
        }

        let mut owner: HashMap<(GaussianRational, GaussianRational), (usize, usize, usize)> =
            HashMap::with_capacity(projected as usize);
        for e in 0..mst.edges.len() {
            let (li, lj) = mst.endpoints(e);
            let (ai, bi) = &restricted[by_ratio[li]];
            let (aj, bj) = &restricted[by_ratio[lj]];
            let mut size = 0;
            for (x1, c1) in c_prime.iter().enumerate() {
                for (x2, c2) in c_prime.iter().enumerate() {
                    let z1 = &(ai * c1) + &(aj * c2);
                    let z2 = &(bi * c1) + &(bj * c2);
                    if !(ac_ac.contains(&z1) && bc_bc.contains(&z2)) {
                        return Err(Error::Internal(format!("({z1}, {z2}) is outside (AC+AC)×(BC+BC)")));
                    }
                    if let Some(&(e0, y1, y2)) = owner.get(&(z1.clone(), z2.clone())) {
                        let (c3, c4) = (&c_prime[y1], &c_prime[y2]);
                        return Err(Error::Internal(if e0 == e {
                            format!(
                                "S_{} repeats ({z1}, {z2}) for (c1,c2,c3,c4) = ({c1}, {c2}, {c3}, {c4})",
                                e + 1
                            )
                        } else {
                            format!(
                                "S_{} and S_{} share ({z1}, {z2}) via ({c3}, {c4}) and ({c1}, {c2})",
                                e0 + 1,
                                e + 1
                            )
                        }));
                    }
                    owner.insert((z1, z2), (e, x1, x2));
                    size += 1;
                }
            }
            s_sizes.push(size);
        }
        Some(mst)
    } else {
        None
    };

    let lhs = ac_ac.len() as u128 * bc_bc.len() as u128;
    let construction_bound = restricted.len().saturating_sub(1) as u128 * (c_len * c_len) as u128;
    let ratio_count = pairs.len();
    let target = ratio_count as f64 * (c.len() * c.len()) as f64;
    Ok(Lemma7Construction {
        representatives: RepresentativeSet {
            pairs,
            weights,
            restricted,
        },
        a_partition: a_sel.partition,
        c_partition: c_sel.partition,
        c_sector_size: c_len,
        mst,
        s_sizes,
        ac_sums: ac_ac.len(),
        bc_sums: bc_bc.len(),
        ratio_count,
        c_size: c.len(),
        lhs,
        construction_bound,
        ratio_to_target: lhs as f64 / target,
    })
}
