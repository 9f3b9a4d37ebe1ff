//! Spanning-tree witnesses for `|(A + A) / (A + A)|` over ℂ.
//!
//! After pigeonholing `A` into one sector, build the ratio points `A′/A′`,
//! join them by a Euclidean minimum spanning tree, and for each edge
//! `(l, m)` fix one representation `p` of one endpoint and run over every
//! representation `q` of the other. The ratios `(p_2 + q_2) / (p_1 + q_1)` are
//! pairwise distinct within the edge, so each edge contributes
//! `max(r(l), r(m))` elements.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::mst::{euclidean_mst, MstEdges};
use super::region::{region_member, MobiusRegion};
use super::sector::{sector_select, SectorPartition};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, WedgeSpec};
use crate::geometry::{Endpoint, Provenance, Witness, WitnessReport};
use crate::sets::{ratio_classes, sumset, FiniteSet, Limits};

/// A witness ratio produced by two different tree edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct DisjointnessViolation {
    pub witness: GaussianRational,
    /// 1-based edge numbers.
    pub first_edge: usize,
    pub second_edge: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Thm6Report {
    pub witnesses: WitnessReport<GaussianRational>,
    pub partition: SectorPartition,
    /// `|A′|`, the sector subset with zero removed.
    pub sector_size: usize,
    /// `Σ_x r_{A′/A′}(x) = |A′|²`.
    pub spanned_mass: usize,
    pub mst: Option<MstEdges>,
    pub per_edge_counts: Vec<usize>,
    pub disjointness_violations: Vec<DisjointnessViolation>,
    /// Witnesses outside their edge's region for the configured wedge.
    pub configured_wedge_misses: usize,
    pub configured_wedge: WedgeSpec,
    /// `distinct_count / |A|²`.
    pub empirical_constant: f64,
}

type Pair = (GaussianRational, GaussianRational);

fn edge_witnesses(
    e: usize,
    head: &[Pair],
    tail: &[Pair],
    head_point: &GaussianRational,
    tail_point: &GaussianRational,
) -> Result<Vec<Witness<GaussianRational>>> {
    // Vary the side with more representations; on a tie, the smaller point.
    let vary_head = head.len() > tail.len() || (head.len() == tail.len() && head_point < tail_point);
    let (varied, fixed, side) = if vary_head {
        (head, &tail[0], Endpoint::Head)
    } else {
        (tail, &head[0], Endpoint::Tail)
    };
    let mut out = Vec::with_capacity(varied.len());
    for (index, (q1, q2)) in varied.iter().enumerate() {
        let den = &fixed.0 + q1;
        let ratio = (&fixed.1 + q2)
            .checked_div(&den)
            .map_err(|_| Error::Internal(format!("edge {} has a vanishing denominator", e + 1)))?;
        out.push(Witness {
            ratio,
            provenance: Provenance::Edge {
                edge: e + 1,
                varied: side,
                index: index + 1,
            },
        });
    }
    let distinct: BTreeSet<_> = out.iter().map(|w| &w.ratio).collect();
    if distinct.len() != out.len() {
        return Err(Error::Internal(format!("edge {} repeats a witness ratio", e + 1)));
    }
    Ok(out)
}

pub fn thm6_witnesses(a: &FiniteSet<GaussianRational>, wedge: &WedgeSpec, sector_count: usize) -> Result<Thm6Report> {
    let selection = sector_select(a, None, sector_count)?;
    let sub = &selection.members;
    let n_total = a.len();
    let sector_size = sub.len();
    let spanned_mass = sector_size * sector_size;
    let target = spanned_mass.div_ceil(2);
    let constant = |distinct: usize| distinct as f64 / (n_total * n_total) as f64;

    let classes = ratio_classes(sub, sub).classes;
    if classes.len() == 1 {
        let x = sub.iter().next().expect("sector is occupied");
        let doubled = x + x;
        let ratio = doubled.checked_div(&doubled)?;
        let witnesses = WitnessReport::new(
            vec![Witness {
                ratio,
                provenance: Provenance::Doubling,
            }],
            target,
        );
        return Ok(Thm6Report {
            empirical_constant: constant(1),
            witnesses,
            partition: selection.partition,
            sector_size,
            spanned_mass,
            mst: None,
            per_edge_counts: Vec::new(),
            disjointness_violations: Vec::new(),
            configured_wedge_misses: 0,
            configured_wedge: wedge.clone(),
        });
    }

    let points: Vec<GaussianRational> = classes.keys().cloned().collect();
    let mst = euclidean_mst(&points)?;
    let per_edge: Vec<Vec<Witness<GaussianRational>>> = (0..mst.edges.len())
        .into_par_iter()
        .map(|e| {
            let (h, t) = mst.endpoints(e);
            edge_witnesses(e, &classes[h], &classes[t], h, t)
        })
        .collect::<Result<_>>()?;

    let sums = sumset(a, a, &Limits::default())?;
    let quotient_wedge = &selection.partition.quotient_wedge;
    let mut first_seen: HashMap<GaussianRational, usize> = HashMap::new();
    let mut witnesses = Vec::new();
    let mut violations = Vec::new();
    let mut misses = 0;
    for (e, list) in per_edge.iter().enumerate() {
        let (h, t) = mst.endpoints(e);
        let sector_region = MobiusRegion::new(h.clone(), t.clone(), quotient_wedge.clone())?;
        let configured_region = MobiusRegion::new(h.clone(), t.clone(), wedge.clone())?;
        for w in list {
            let Provenance::Edge { varied, index, .. } = w.provenance else {
                unreachable!("edge witnesses carry edge provenance")
            };
            let (fixed, q) = match varied {
                Endpoint::Head => (&classes[t][0], &classes[h][index - 1]),
                Endpoint::Tail => (&classes[h][0], &classes[t][index - 1]),
            };
            if !(sums.contains(&(&fixed.0 + &q.0)) && sums.contains(&(&fixed.1 + &q.1))) {
                return Err(Error::Internal(format!("witness {} is not in (A+A)/(A+A)", w.ratio)));
            }
            if !region_member(&w.ratio, &sector_region) {
                return Err(Error::Internal(format!(
                    "witness {} lies outside the region of edge {}",
                    w.ratio,
                    e + 1
                )));
            }
            if !region_member(&w.ratio, &configured_region) {
                misses += 1;
            }
            match first_seen.get(&w.ratio) {
                Some(&first) => violations.push(DisjointnessViolation {
                    witness: w.ratio.clone(),
                    first_edge: first + 1,
                    second_edge: e + 1,
                }),
                None => {
                    first_seen.insert(w.ratio.clone(), e);
                    witnesses.push(w.clone());
                }
            }
        }
    }

    let report = WitnessReport::new(witnesses, target);
    Ok(Thm6Report {
        empirical_constant: constant(report.distinct_count),
        witnesses: report,
        partition: selection.partition,
        sector_size,
        spanned_mass,
        per_edge_counts: per_edge.iter().map(Vec::len).collect(),
        mst: Some(mst),
        disjointness_violations: violations,
        configured_wedge_misses: misses,
        configured_wedge: wedge.clone(),
    })
}
