//! Bound-by-bound verifiers with brute-force measurement, reproducible random
//! trials, and JSON reports.

mod complex;
pub mod counting;
pub mod random;
mod real;
mod report;
pub mod scan;

pub use complex::{verify_lemma7, verify_thm6, verify_thm9};
pub use counting::{
    coprime_density, coprime_pairs, energy_count, totients, verify_coprime, verify_energy, CoprimeDensity,
};
pub use random::{random_set, random_sets, Domain, Lcg, TrialSpec};
pub use real::{
    points_of, sum_ratio_set, verify_corollary5, verify_lemma3, verify_thm1, verify_thm2, verify_thm4, verify_ungar,
};
pub use report::{HarnessConfig, VerificationReport};
pub use scan::{conjecture_scan, scan_sets, ScanKind, ScanReport};
