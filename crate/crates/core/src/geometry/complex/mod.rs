//! Ratio-point geometry over ℂ: sector pigeonholing, exact minimum spanning
//! trees, Möbius-wedge regions, and the witness constructions built on them.

mod lemma7;
mod mst;
mod region;
mod sector;
mod witnesses;

pub use lemma7::{lemma7_construct, Lemma7Construction, RepresentativeSet};
pub use mst::{euclidean_mst, squared_distance, MstEdges};
pub use region::{
    region_disjointness_probe, region_member, region_outline, segment_samples, MobiusRegion, Overlap, ProbeReport,
};
pub use sector::{sector_select, Direction, SectorPartition, SectorSelection, Sectors, DEFAULT_SECTOR_COUNT};
pub use witnesses::{thm6_witnesses, DisjointnessViolation, Thm6Report};
