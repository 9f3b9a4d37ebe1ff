//! Exploration mode for the open growth questions: exact ratios over random
//! trials, with the minimizing set recorded. Nothing here asserts anything.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::random::{random_sets, TrialSpec};
use crate::error::{Error, Result};
use crate::sets::{Limits, ScalarSet, SetOp};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScanKind {
    /// `|k A^(k)| / |A|^k`.
    KFold,
    /// `|(A+A)(A+A)(A+A)| / |A|³`.
    TripleProduct,
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanKind::KFold => "kfold",
            ScanKind::TripleProduct => "triple-product",
        })
    }
}

impl FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "kfold" => Ok(ScanKind::KFold),
            "triple-product" => Ok(ScanKind::TripleProduct),
            _ => Err(Error::InvalidConfig(format!(
                "unknown scan kind `{s}`; use kfold or triple-product"
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub trial: usize,
    pub set: ScalarSet,
    pub measured: usize,
    pub ratio: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ScanReport {
    pub kind: ScanKind,
    pub k: u32,
    pub spec: Option<TrialSpec>,
    pub rows: Vec<ScanRow>,
    pub min_ratio: Option<f64>,
    /// Trial index of the minimizing set.
    pub argmin: Option<usize>,
}

/// The scanned quantity for one set.
pub fn scan_value(kind: ScanKind, a: &ScalarSet, k: u32, limits: &Limits) -> Result<(usize, f64)> {
    let n = a.len() as f64;
    Ok(match kind {
        ScanKind::KFold => {
            if k == 0 {
                return Err(Error::Precondition("k must be at least 1".into()));
            }
            let m = a.kfold_product(k.into(), limits)?.kfold_sum(k.into(), limits)?.len();
            (m, m as f64 / n.powi(k as i32))
        }
        ScanKind::TripleProduct => {
            let (s, _) = a.pairwise(a, SetOp::Add, limits)?;
            let m = s.kfold_product(3, limits)?.len();
            (m, m as f64 / n.powi(3))
        }
    })
}

/// Scans explicitly given sets.
pub fn scan_sets(kind: ScanKind, sets: Vec<ScalarSet>, k: u32, limits: &Limits) -> Result<ScanReport> {
    let values: Vec<(usize, f64)> = sets
        .par_iter()
        .map(|a| scan_value(kind, a, k, limits))
        .collect::<Result<_>>()?;
    let rows: Vec<ScanRow> = sets
        .into_iter()
        .zip(values)
        .enumerate()
        .map(|(trial, (set, (measured, ratio)))| ScanRow {
            trial,
            set,
            measured,
            ratio,
        })
        .collect();
    let best = rows
        .iter()
        .min_by(|a, b| a.ratio.total_cmp(&b.ratio).then(a.trial.cmp(&b.trial)));
    Ok(ScanReport {
        kind,
        k,
        spec: None,
        min_ratio: best.map(|r| r.ratio),
        argmin: best.map(|r| r.trial),
        rows,
    })
}

pub fn conjecture_scan(kind: ScanKind, spec: &TrialSpec, k: u32, limits: &Limits) -> Result<ScanReport> {
    let sets = if spec.trials == 0 {
        Vec::new()
    } else {
        random_sets(spec)?
    };
    let mut report = scan_sets(kind, sets, k, limits)?;
    report.spec = Some(*spec);
    Ok(report)
}
