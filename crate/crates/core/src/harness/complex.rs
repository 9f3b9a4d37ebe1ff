//! Verifiers for the complex-valued bounds.

use super::real::sum_ratio_set;
use super::report::{HarnessConfig, ReportBuilder, VerificationReport};
use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::geometry::complex::{lemma7_construct, thm6_witnesses};
use crate::sets::{kfold_product, kfold_sum, product_set, sumset, FiniteSet, KFold, ScalarSet};

fn nonempty(name: &str, set: &ScalarSet) -> Result<FiniteSet<GaussianRational>> {
    if set.is_empty() {
        return Err(Error::EmptyInput(format!("{name} is empty")));
    }
    Ok(set.to_complex())
}

/// Runs the spanning-tree witness construction and checks it against
/// `|(A + A) / (A + A)|` computed directly.
///
/// Passes when the constructed witnesses all lie in the ratio set, no two
/// tree edges produced the same witness, and the witness count reaches half
/// of the representation mass `|A′|²` of the chosen sector.
pub fn verify_thm6(a: &ScalarSet, config: &HarnessConfig) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new("thm6", config);
    rb.set("A", a)
        .input("wedgeSlope", config.wedge.slope_bound())
        .input("sectors", config.sector_count);
    let set = nonempty("A", a)?;
    let report = thm6_witnesses(&set, &config.wedge, config.sector_count)?;
    let measured = sum_ratio_set(&set, &config.limits)?;
    let w = &report.witnesses;
    if let Some(x) = w.witnesses.iter().find(|x| !measured.contains(&x.ratio)) {
        return Err(Error::Internal(format!("witness {} is not in (A+A)/(A+A)", x.ratio)));
    }
    let per_edge_sum: usize = report.per_edge_counts.iter().sum();
    let violations = report.disjointness_violations.len();
    rb.constant("c1", report.empirical_constant)
        .constant("sectorSize", report.sector_size)
        .constant("spannedMass", report.spanned_mass)
        .constant("halfMassTarget", w.target_bound)
        .constant("witnessCount", w.distinct_count)
        .constant("perEdgeSum", per_edge_sum)
        .constant("disjointnessViolations", violations)
        .constant("configuredWedgeMisses", report.configured_wedge_misses)
        .constant("sectorWedgeSlope", report.partition.quotient_wedge.slope_bound());
    for v in &report.disjointness_violations {
        rb.note(format!(
            "disjointness violation: witness {} from edges {} and {}",
            v.witness, v.first_edge, v.second_edge
        ));
    }
    if report.configured_wedge_misses > 0 {
        rb.note(format!(
            "{} witnesses fall outside their edge region for wedge slope {}",
            report.configured_wedge_misses,
            config.wedge.slope_bound()
        ));
    }
    let pass = measured.len() >= w.distinct_count && w.pass && violations == 0;
    Ok(rb.finish(w.distinct_count, measured.len(), pass))
}

/// Builds the `S_ij` sets and checks `|AC + AC| · |BC + BC| ≥ (|P′| − 1)|C′|²`;
/// the sizes and disjointness of the `S_ij` are verified exactly on the way.
pub fn verify_lemma7(sets: [&ScalarSet; 3], config: &HarnessConfig) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new("lemma7", config);
    rb.set("A", sets[0])
        .set("B", sets[1])
        .set("C", sets[2])
        .input("sectors", config.sector_count);
    let a = nonempty("A", sets[0])?;
    let b = nonempty("B", sets[1])?;
    let c = nonempty("C", sets[2])?;
    let r = lemma7_construct(&a, &b, &c, config.sector_count, &config.limits)?;
    rb.constant("ratioCount", r.ratio_count)
        .constant("restrictedPairs", r.representatives.restricted.len())
        .constant("cSectorSize", r.c_sector_size)
        .constant("treeEdges", r.s_sizes.len())
        .constant("acSums", r.ac_sums)
        .constant("bcSums", r.bc_sums)
        .constant("ratioToTarget", r.ratio_to_target)
        .note("every S_ij has |C'|^2 elements and the S_ij are pairwise disjoint");
    Ok(rb.finish(r.construction_bound, r.lhs, r.holds()))
}

/// `4^{j−2} A^(j−1)`, i.e. the set the inductive step multiplies by `A + A`.
fn level<T: crate::exact::Scalar>(a: &FiniteSet<T>, j: u32, config: &HarnessConfig) -> Result<FiniteSet<T>> {
    let p = kfold_product(a, (j - 1).into(), &config.limits)?;
    Ok(kfold_sum(&p, 4u64.pow(j - 2), None, &config.limits)?
        .exact()
        .expect("no early exit requested"))
}

/// `|4^{k−1} A^(k)| ≥ (c₁c₂)^{(k−1)/2} |A|^k` with the constants measured on
/// this instance.
///
/// At each level `j = 2 … k`, with `𝒞_j = 4^{j−2} A^(j−1)` and
/// `L_j = |(A+A)𝒞_j + (A+A)𝒞_j|`, the measured product is
/// `c₁c₂ = L_j² / (|𝒞_j|² |A|²)`, where `c₁ = |(A+A)/(A+A)| / |A|²`. The
/// threshold `|A|^k Π_j √(c₁c₂)` then simplifies to the rational
/// `|A| Π_j L_j / |𝒞_j|`.
pub fn verify_thm9(a: &ScalarSet, k: u32, config: &HarnessConfig) -> Result<VerificationReport> {
    let mut rb = ReportBuilder::new("thm9", config);
    rb.set("A", a).input("k", k);
    let set = nonempty("A", a)?;
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let n = set.len();
    let lim = &config.limits;
    let sums = sumset(&set, &set, lim)?;
    let ratios = sum_ratio_set(&set, lim)?.len();
    let c1 = Rational::from_i128_parts(ratios as i128, (n * n) as i128)?;
    rb.constant("c1", c1.to_f64());

    let mut threshold = Rational::from_integer(n as i64);
    let mut last_inner = None;
    let mut levels = Vec::new();
    for j in 2..=k {
        let cj = level(&set, j, config)?;
        let inner = sumset(&product_set(&sums, &cj, lim)?, &product_set(&sums, &cj, lim)?, lim)?.len();
        let step = Rational::from_i128_parts(inner as i128, cj.len() as i128)?;
        let c1c2 = &step.square() / &Rational::from_integer((n * n) as i64);
        let c2 = &c1c2 / &c1;
        levels.push(serde_json::json!({
            "level": j,
            "size": cj.len(),
            "innerSumset": inner,
            "c2": c2.to_f64(),
            "c1c2": c1c2.to_f64(),
        }));
        threshold = &threshold * &step;
        last_inner = Some(inner);
    }
    rb.constant("levels", levels).constant("threshold", threshold.to_f64());

    let target = threshold.ceil().try_into().unwrap_or(usize::MAX);
    let product = kfold_product(&set, k.into(), lim)?;
    let folds = 4u64.pow(k - 1);
    let measured = match kfold_sum(&product, folds, None, lim) {
        Ok(r) => {
            rb.note("exact");
            r.size_lower_bound()
        }
        Err(Error::SizeCap { .. }) => match kfold_sum(&product, folds, Some(target), lim) {
            Ok(KFold::AtLeast(cert)) => {
                rb.constant("certificate", &cert).note(format!(
                    "lower-bound certificate from |{}·A^({k})| = {}",
                    cert.fold, cert.size
                ));
                cert.size
            }
            Ok(r) => r.size_lower_bound(),
            Err(Error::SizeCap { .. }) if last_inner.is_some() => {
                let inner = last_inner.expect("checked");
                rb.note(format!(
                    "size cap: lower bound from (A+A)C_k + (A+A)C_k ⊆ 4^(k-1)A^(k), |…| = {inner}"
                ));
                inner
            }
            Err(e) => return Err(e),
        },
        Err(e) => return Err(e),
    };
    let nk = (n as f64).powi(k as i32);
    rb.constant("ratioToNk", measured as f64 / nk);
    let pass = Rational::from_integer(measured as i64) >= threshold;
    Ok(rb.finish(threshold, measured, pass))
}
