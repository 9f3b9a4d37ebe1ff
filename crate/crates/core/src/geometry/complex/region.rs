//! The lens-shaped regions `l_i + (l_j − l_i) · M(W)`, where `W` is an open
//! wedge about the positive real axis and `M(u) = u / (1 + u)`.
//!
//! A ratio `(p_2 + q_2) / (p_1 + q_1)` with `p_2 / p_1 = l_i` and
//! `q_2 / q_1 = l_j` equals `l_i + (l_j − l_i) · u / (1 + u)` with
//! `u = q_1 / p_1`, so each spanning-tree edge has its witnesses inside its
//! region whenever `u` lies in the wedge.

use serde::Serialize;

use super::mst::MstEdges;
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational, WedgeSpec};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MobiusRegion {
    pub head: GaussianRational,
    pub tail: GaussianRational,
    pub wedge: WedgeSpec,
}

impl MobiusRegion {
    pub fn new(head: GaussianRational, tail: GaussianRational, wedge: WedgeSpec) -> Result<Self> {
        if head == tail {
            return Err(Error::DuplicatePoints);
        }
        Ok(MobiusRegion { head, tail, wedge })
    }

    /// The same region seen from the other endpoint.
    pub fn reversed(&self) -> Self {
        MobiusRegion {
            head: self.tail.clone(),
            tail: self.head.clone(),
            wedge: self.wedge.clone(),
        }
    }
}

/// Inverts the affine chart and the Möbius map: `m = (w − l_i) / (l_j − l_i)`,
/// `u = m / (1 − m)`, then tests `u` against the wedge. `m = 1` (the image of
/// `u = ∞`) is outside.
pub fn region_member(w: &GaussianRational, region: &MobiusRegion) -> bool {
    let m = (w - &region.head)
        .checked_div(&(&region.tail - &region.head))
        .expect("region endpoints are distinct");
    let one_minus = &GaussianRational::one() - &m;
    match m.checked_div(&one_minus) {
        Ok(u) => region.wedge.contains(&u),
        Err(_) => false,
    }
}

type C64 = (f64, f64);

fn c_sub(a: C64, b: C64) -> C64 {
    (a.0 - b.0, a.1 - b.1)
}

fn c_add(a: C64, b: C64) -> C64 {
    (a.0 + b.0, a.1 + b.1)
}

fn c_mul(a: C64, b: C64) -> C64 {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn c_div(a: C64, b: C64) -> Option<C64> {
    let n = b.0 * b.0 + b.1 * b.1;
    (n > 0.0).then(|| ((a.0 * b.0 + a.1 * b.1) / n, (a.1 * b.0 - a.0 * b.1) / n))
}

fn member_f64(w: C64, head: C64, tail: C64, slope: f64) -> bool {
    let Some(m) = c_div(c_sub(w, head), c_sub(tail, head)) else {
        return false;
    };
    let Some(u) = c_div(m, c_sub((1.0, 0.0), m)) else {
        return false;
    };
    u.0 > 0.0 && u.1.abs() < slope * u.0
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Overlap {
    /// Edge whose boundary was sampled (0-based index into the tree's edges).
    pub boundary_edge: usize,
    /// Edge whose open region contains the sample.
    pub region_edge: usize,
    pub point: (f64, f64),
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ProbeReport {
    pub edges: usize,
    pub wedge_slope: String,
    pub resolution: usize,
    pub overlaps: Vec<Overlap>,
}

/// Advisory floating-point check that the regions of distinct tree edges do
/// not meet. Each region's boundary is the image of the two wedge rays
/// `t (1 ± i s)`, `t > 0`; `resolution` points are sampled on each ray and
/// tested against every other edge's open region. A boundary point inside
/// another open region means the two open regions intersect.
pub fn region_disjointness_probe(mst: &MstEdges, wedge: &WedgeSpec, resolution: usize) -> ProbeReport {
    let slope = wedge.slope_bound().to_f64();
    let ends: Vec<(C64, C64)> = (0..mst.edges.len())
        .map(|e| {
            let (h, t) = mst.endpoints(e);
            (h.to_f64_pair(), t.to_f64_pair())
        })
        .collect();
    let mut overlaps = Vec::new();
    for (e, &(head, tail)) in ends.iter().enumerate() {
        'samples: for k in 1..=resolution {
            let t = k as f64 / (resolution + 1 - k) as f64;
            for sign in [1.0, -1.0] {
                let u = (t, sign * slope * t);
                let m = c_div(u, c_add((1.0, 0.0), u)).expect("re(1 + u) > 1");
                let z = c_add(head, c_mul(c_sub(tail, head), m));
                for (f, &(h2, t2)) in ends.iter().enumerate() {
                    if f != e && member_f64(z, h2, t2, slope) {
                        overlaps.push(Overlap {
                            boundary_edge: e,
                            region_edge: f,
                            point: z,
                        });
                        continue 'samples;
                    }
                }
            }
        }
    }
    ProbeReport {
        edges: mst.edges.len(),
        wedge_slope: wedge.slope_bound().to_string(),
        resolution,
        overlaps,
    }
}

/// Closed outline of a region in `f64`: from the head along the image of
/// the ray `t (1 + i s)` to the tail, and back along `t (1 − i s)`, with
/// `resolution` samples `t = k / (resolution + 1 − k)` per ray.
pub fn region_outline(region: &MobiusRegion, resolution: usize) -> Vec<(f64, f64)> {
    let slope = region.wedge.slope_bound().to_f64();
    let head = region.head.to_f64_pair();
    let tail = region.tail.to_f64_pair();
    let ray = |sign: f64, k: usize| {
        let t = k as f64 / (resolution + 1 - k) as f64;
        let u = (t, sign * slope * t);
        let m = c_div(u, c_add((1.0, 0.0), u)).expect("re(1 + u) > 1");
        c_add(head, c_mul(c_sub(tail, head), m))
    };
    let mut out = vec![head];
    out.extend((1..=resolution).map(|k| ray(1.0, k)));
    out.push(tail);
    out.extend((1..=resolution).rev().map(|k| ray(-1.0, k)));
    out
}

/// The points `l_i + t (l_j − l_i)` for `t ∈ {1/4, 1/2, 3/4}`.
pub fn segment_samples(region: &MobiusRegion) -> Vec<GaussianRational> {
    let d = &region.tail - &region.head;
    [(1, 4), (1, 2), (3, 4)]
        .into_iter()
        .map(|(n, den)| &region.head + &d.scale(&Rational::from_i128_parts(n, den).unwrap()))
        .collect()
}
