//! Acceptance suite: one PASS/FAIL line per criterion, each against its
//! runtime budget. Every quantity is checked against an oracle written here
//! by direct enumeration, independent of the library's set algebra.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use sumprod::exact::{GaussianRational, Rational};
use sumprod::expr::{eval_expr, parse_expr, Env, Expr};
use sumprod::geometry::complex::{euclidean_mst, lemma7_construct, squared_distance, DEFAULT_SECTOR_COUNT};
use sumprod::geometry::slopes::{direction_count, thm1_witnesses, GridPoint};
use sumprod::harness::{
    coprime_density, coprime_pairs, energy_count, points_of, random_sets, verify_coprime, verify_lemma3, verify_lemma7,
    verify_thm1, verify_thm2, verify_thm4, verify_thm6, verify_ungar, Domain, HarnessConfig, Lcg, TrialSpec,
};
use sumprod::sets::{read_set_file, FiniteSet, Limits, ScalarSet, SetOp};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn cfg() -> HarnessConfig {
    HarnessConfig {
        timing: false,
        ..HarnessConfig::default()
    }
}

fn q(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn reals(xs: &[i64]) -> ScalarSet {
    ScalarSet::Real(xs.iter().copied().map(q).collect())
}

fn draw(seed: u64, size: usize, trials: usize, domain: Domain) -> Vec<ScalarSet> {
    random_sets(&TrialSpec {
        seed,
        set_size: size,
        trials,
        domain,
    })
    .expect("valid trial spec")
}

fn real_elems(s: &ScalarSet) -> Vec<Rational> {
    s.as_real().expect("real set").iter().cloned().collect()
}

fn complex_elems(s: &ScalarSet) -> Vec<GaussianRational> {
    s.to_complex().iter().cloned().collect()
}

/// `{(a + b) / (c + d)}` over `A⁴`, skipping zero denominators.
fn brute_sum_ratios_real(a: &[Rational]) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    for x in a {
        for y in a {
            let num = x + y;
            for z in a {
                for w in a {
                    if let Ok(r) = num.checked_div(&(z + w)) {
                        out.insert(r);
                    }
                }
            }
        }
    }
    out
}

fn brute_sum_ratios_complex(a: &[GaussianRational]) -> BTreeSet<GaussianRational> {
    let sums: BTreeSet<GaussianRational> = a.iter().flat_map(|x| a.iter().map(move |y| x + y)).collect();
    let mut out = BTreeSet::new();
    for s in &sums {
        for t in &sums {
            if let Ok(r) = s.checked_div(t) {
                out.insert(r);
            }
        }
    }
    out
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

// 1. Exact tightness on {1, 2, 3}.
fn c1() -> Outcome {
    let r = verify_thm1(&reals(&[1, 2, 3]), &cfg()).map_err(|e| e.to_string())?;
    let oracle = brute_sum_ratios_real(&[q(1), q(2), q(3)]).len();
    ensure(r.measured == "17" && r.bound == "17" && r.pass && oracle == 17, || {
        format!(
            "measured {} bound {} pass {} oracle {oracle}",
            r.measured, r.bound, r.pass
        )
    })?;
    Ok("measured 17, bound 17".into())
}

// 2. The ratio-of-sumsets bound on 100 random positive-rational sets.
fn c2() -> Outcome {
    let mut checked = 0;
    for t in 0..100u64 {
        let n = 2 + (t % 9) as usize;
        let set = draw(1000 + t, n, 1, Domain::PositiveRationals(12)).remove(0);
        let a = real_elems(&set);
        let oracle = brute_sum_ratios_real(&a);
        let target = 2 * n * n - 1;
        ensure(oracle.len() >= target, || {
            format!("trial {t}: |ratio set| {} < {target}", oracle.len())
        })?;
        let w = thm1_witnesses(set.as_real().unwrap()).map_err(|e| e.to_string())?;
        let distinct: BTreeSet<&Rational> = w.witnesses.iter().map(|x| &x.ratio).collect();
        ensure(w.witnesses.len() == target && distinct.len() == target, || {
            format!(
                "trial {t}: {} witnesses ({} distinct), want {target}",
                w.witnesses.len(),
                distinct.len()
            )
        })?;
        ensure(w.witnesses.iter().all(|x| oracle.contains(&x.ratio)), || {
            format!("trial {t}: witness outside the ratio set")
        })?;
        let r = verify_thm1(&set, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.pass && r.measured == oracle.len().to_string(), || {
            format!("trial {t}: report {r:?}")
        })?;
        checked += 1;
    }
    Ok(format!("{checked} sets, n in [2,10]"))
}

/// Distinct slopes `y/x` of `p + q` over all pairs, with `p = q` allowed.
fn brute_sum_slopes(p: &[(i64, i64)]) -> usize {
    let mut out = BTreeSet::new();
    for a in p {
        for b in p {
            let (x, y) = ((a.0 + b.0) as u64, (a.1 + b.1) as u64);
            let g = gcd(x, y);
            out.insert((y / g, x / g));
        }
    }
    out.len()
}

fn as_points(p: &[(i64, i64)]) -> Vec<GridPoint> {
    p.iter().map(|&(x, y)| GridPoint::from_integers(x, y)).collect()
}

// 3. The sum-slope bound on random point sets plus the collinear-plus-one case.
fn c3() -> Outcome {
    let mut rng = Lcg::new(77);
    let mut trials = 0;
    while trials < 50 {
        let target = rng.range(2, 20) as usize;
        let mut pts = BTreeSet::new();
        while pts.len() < target {
            pts.insert((rng.range(1, 12), rng.range(1, 12)));
        }
        let pts: Vec<(i64, i64)> = pts.into_iter().collect();
        let slopes: BTreeSet<(i64, i64)> = pts
            .iter()
            .map(|&(x, y)| {
                let g = gcd(x as u64, y as u64) as i64;
                (x / g, y / g)
            })
            .collect();
        if slopes.len() < 2 {
            continue;
        }
        let oracle = brute_sum_slopes(&pts);
        ensure(oracle > pts.len(), || format!("{pts:?}: {oracle} slopes"))?;
        let r = verify_thm2(&as_points(&pts), &cfg()).map_err(|e| e.to_string())?;
        ensure(r.pass && r.measured == oracle.to_string(), || {
            format!("{pts:?}: report {r:?}")
        })?;
        trials += 1;
    }
    let tight = [(1, 1), (2, 2), (3, 3), (4, 4), (1, 2)];
    let oracle = brute_sum_slopes(&tight);
    let r = verify_thm2(&as_points(&tight), &cfg()).map_err(|e| e.to_string())?;
    ensure(
        oracle == tight.len() + 1 && r.measured == oracle.to_string() && r.pass,
        || format!("collinear-plus-one: oracle {oracle}, report {r:?}"),
    )?;
    Ok(format!(
        "{trials} point sets; collinear-plus-one gives exactly {}",
        tight.len() + 1
    ))
}

fn brute_product_sumsets(a: &[Rational], b: &[Rational], c: &[Rational], d: &[Rational]) -> (u128, u128) {
    let side = |x: &[Rational]| {
        let mut s = BTreeSet::new();
        for xi in x {
            for ci in c {
                for xj in x {
                    for di in d {
                        s.insert(&(xi * ci) + &(xj * di));
                    }
                }
            }
        }
        s.len() as u128
    };
    let ratios: BTreeSet<Rational> = a
        .iter()
        .flat_map(|x| b.iter().map(move |y| x.checked_div(y).unwrap()))
        .collect();
    (
        side(a) * side(b),
        ratios.len() as u128 * c.len() as u128 * d.len() as u128,
    )
}

// 4. The product-sumset inequality on random quadruples plus the hand case.
fn c4() -> Outcome {
    let mut rng = Lcg::new(4);
    for t in 0..100u64 {
        let sets: Vec<ScalarSet> = (0..4)
            .map(|i| {
                draw(
                    4000 + 4 * t + i,
                    rng.range(1, 6) as usize,
                    1,
                    Domain::PositiveRationals(8),
                )
                .remove(0)
            })
            .collect();
        let e: Vec<Vec<Rational>> = sets.iter().map(real_elems).collect();
        let (lhs, rhs) = brute_product_sumsets(&e[0], &e[1], &e[2], &e[3]);
        ensure(lhs >= rhs, || format!("trial {t}: {lhs} < {rhs}"))?;
        let r = verify_lemma3([&sets[0], &sets[1], &sets[2], &sets[3]], &cfg()).map_err(|e| e.to_string())?;
        ensure(
            r.pass && r.measured == lhs.to_string() && r.bound == rhs.to_string(),
            || format!("trial {t}: report {r:?}, oracle {lhs} ≥ {rhs}"),
        )?;
    }
    let h = reals(&[1, 2]);
    let r = verify_lemma3([&h, &h, &h, &h], &cfg()).map_err(|e| e.to_string())?;
    ensure(r.measured == "36" && r.bound == "12" && r.pass, || {
        format!("hand case: {r:?}")
    })?;
    Ok("100 quadruples; {1,2}⁴ gives 36 ≥ 12".into())
}

/// `|AA + AA + AA + AA|` for positive integers by direct enumeration.
fn brute_fourfold_products(a: &[i64]) -> usize {
    let prods: BTreeSet<i64> = a.iter().flat_map(|x| a.iter().map(move |y| x * y)).collect();
    let mut sums: BTreeSet<i64> = [0].into();
    for _ in 0..4 {
        sums = sums.iter().flat_map(|s| prods.iter().map(move |p| s + p)).collect();
    }
    sums.len()
}

// 5. k-fold growth for k = 2 and k = 3.
fn c5() -> Outcome {
    for t in 0..60u64 {
        let n = 1 + (t % 8) as usize;
        let set = draw(5000 + t, n, 1, Domain::PositiveRationals(10)).remove(0);
        let r = verify_thm4(&set, 2, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("k=2 trial {t}: {r:?}"))?;
    }
    for n in 1..=30i64 {
        let a: Vec<i64> = (1..=n).collect();
        let oracle = brute_fourfold_products(&a);
        let r = verify_thm4(&reals(&a), 2, &cfg()).map_err(|e| e.to_string())?;
        let nn = (n * n) as usize;
        ensure(
            r.pass && r.measured == oracle.to_string() && oracle >= nn && oracle < 4 * nn,
            || format!("{{1..{n}}}: oracle {oracle}, report {r:?}"),
        )?;
    }
    let r = verify_thm4(&reals(&[1, 2, 3, 4, 5]), 3, &cfg()).map_err(|e| e.to_string())?;
    ensure(r.pass && r.constants["exact"] == false, || {
        format!("k=3 on {{1..5}}: {r:?}")
    })?;
    let k3_interval = r.measured.clone();
    for (t, set) in draw(5500, 4, 10, Domain::PositiveIntegers(60)).iter().enumerate() {
        let r = verify_thm4(set, 3, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("k=3 random trial {t}: {r:?}"))?;
    }
    Ok(format!(
        "k=2 on 60 random sets and {{1..N}}, N ≤ 30, below 4N²; k=3 certificate on {{1..5}} reaches {k3_interval} ≥ 125"
    ))
}

// 6. Coprime density at N = 500 and the ratio set of {1..300}.
fn c6() -> Outcome {
    let side = 1000u64;
    let mut coprime = 0u64;
    for a in 1..=side {
        for b in 1..=side {
            if gcd(a, b) == 1 {
                coprime += 1;
            }
        }
    }
    ensure(coprime == coprime_pairs(side as usize), || {
        format!("pair count {coprime} vs sieve")
    })?;
    let density = coprime as f64 / (side * side) as f64;
    let limit = 6.0 / std::f64::consts::PI.powi(2);
    let rel = (density - limit).abs() / limit;
    ensure(rel < 0.01, || {
        format!("density {density} vs {limit}: relative error {rel}")
    })?;
    let d = coprime_density(500, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(d.coprime_pairs == coprime, || "library count differs".into())?;

    let n = 300u64;
    let mut reduced = BTreeSet::new();
    for p in 2..=2 * n {
        for r in 2..=2 * n {
            let g = gcd(p, r);
            reduced.insert((p / g, r / g));
        }
    }
    let size = reduced.len() as f64;
    let nn = (n * n) as f64;
    ensure(size >= 2.0 * nn - 1.0 && size <= 2.5 * nn, || {
        format!("|(A+A)/(A+A)| = {size}")
    })?;
    let r = verify_coprime(n as usize, &cfg()).map_err(|e| e.to_string())?;
    ensure(r.pass && r.measured == reduced.len().to_string(), || {
        format!("report {r:?}")
    })?;
    Ok(format!(
        "N=500 density {density:.6} (error {:.3}%); N=300 ratio set {} in [{}, {}]",
        rel * 100.0,
        reduced.len(),
        2 * n * n - 1,
        2.5 * nn
    ))
}

fn energy_brute(a: &[i64]) -> u128 {
    let n = a.len();
    let mut count = 0;
    for code in 0..n.pow(8) {
        let mut c = code;
        let mut t = [0i64; 8];
        for slot in &mut t {
            *slot = a[c % n];
            c /= n;
        }
        if (t[0] + t[1]) * (t[2] + t[3]) == (t[4] + t[5]) * (t[6] + t[7]) {
            count += 1;
        }
    }
    count
}

// 7. Energy by multiplicities against 8-tuple enumeration.
fn c7() -> Outcome {
    let e = energy_count(&[1, 2].into_iter().map(q).collect());
    ensure(e == 54 && energy_brute(&[1, 2]) == 54, || {
        format!("energy of {{1,2}} = {e}")
    })?;
    let mut rng = Lcg::new(7);
    for t in 0..10u64 {
        let n = rng.range(1, 5) as usize;
        let set = draw(7000 + t, n, 1, Domain::PositiveIntegers(25)).remove(0);
        let ints: Vec<i64> = real_elems(&set).iter().map(|x| x.numer().try_into().unwrap()).collect();
        let fast = energy_count(set.as_real().unwrap());
        let slow = energy_brute(&ints);
        ensure(fast == slow, || format!("{ints:?}: {fast} vs {slow}"))?;
    }
    Ok("{1,2} gives 54; 10 random sets agree with enumeration".into())
}

// 8. The complex witness pipeline.
fn c8() -> Outcome {
    let mut total = 0usize;
    for t in 0..50u64 {
        let n = 1 + (t % 8) as usize;
        let set = draw(8000 + t, n, 1, Domain::GaussianRationals(4)).remove(0);
        let oracle = brute_sum_ratios_complex(&complex_elems(&set));
        let r = verify_thm6(&set, &cfg()).map_err(|e| e.to_string())?;
        let c = &r.constants;
        let count = c["witnessCount"].as_u64().unwrap();
        ensure(c["disjointnessViolations"] == 0, || {
            format!("trial {t}: violations {c:?}")
        })?;
        // A single ratio vertex has no tree edges and one doubling witness.
        let per_edge = c["perEdgeSum"].as_u64().unwrap();
        ensure(per_edge == count || (per_edge == 0 && count == 1), || {
            format!("trial {t}: per-edge sum differs: {c:?}")
        })?;
        ensure(
            r.measured == oracle.len().to_string() && oracle.len() as u64 >= count,
            || format!("trial {t}: |ratio set| {} vs {count} witnesses", oracle.len()),
        )?;
        ensure(count >= c["halfMassTarget"].as_u64().unwrap(), || {
            format!("trial {t}: below half mass {c:?}")
        })?;
        let mass = c["spannedMass"].as_u64().unwrap();
        ensure(2 * count >= mass, || format!("trial {t}: {count} < {mass}/2"))?;
        ensure(r.pass, || format!("trial {t}: {r:?}"))?;
        total += count as usize;
    }
    Ok(format!("50 sets, {total} witnesses, no disjointness violations"))
}

fn brute_product_sumset(x: &[GaussianRational], c: &[GaussianRational]) -> usize {
    let prods: BTreeSet<GaussianRational> = x.iter().flat_map(|a| c.iter().map(move |z| a * z)).collect();
    prods
        .iter()
        .flat_map(|p| prods.iter().map(move |r| p + r))
        .collect::<BTreeSet<_>>()
        .len()
}

// 9. The S_ij construction on random complex triples.
fn c9() -> Outcome {
    let mut rng = Lcg::new(9);
    for t in 0..50u64 {
        // The inequality needs nonzero elements; redraw zero-only sets.
        let sets: Vec<ScalarSet> = (0..3)
            .map(|i| {
                let size = rng.range(1, 5) as usize;
                (0..)
                    .map(|r| draw(9000 + 100 * r + 3 * t + i, size, 1, Domain::GaussianRationals(3)).remove(0))
                    .find(|s| s.to_complex().iter().any(|z| !z.is_zero()))
                    .unwrap()
            })
            .collect();
        let [a, b, c] = [0, 1, 2].map(|i| sets[i].to_complex());
        let r = lemma7_construct(&a, &b, &c, DEFAULT_SECTOR_COUNT, &Limits::default()).map_err(|e| e.to_string())?;
        let c2 = r.c_sector_size * r.c_sector_size;
        ensure(r.s_sizes.iter().all(|&s| s == c2), || {
            format!("trial {t}: S sizes {:?} ≠ {c2}", r.s_sizes)
        })?;
        let ac = brute_product_sumset(&complex_elems(&sets[0]), &complex_elems(&sets[2]));
        let bc = brute_product_sumset(&complex_elems(&sets[1]), &complex_elems(&sets[2]));
        ensure(r.lhs == (ac * bc) as u128, || {
            format!("trial {t}: lhs {} vs {}", r.lhs, ac * bc)
        })?;
        // Disjoint subsets of (AC+AC) × (BC+BC) cannot hold more than it does.
        let union: usize = r.s_sizes.iter().sum();
        ensure(union <= ac * bc, || format!("trial {t}: S union {union} > {}", ac * bc))?;
        let p_prime = r.representatives.restricted.len();
        ensure(r.s_sizes.len() + 1 == p_prime.max(1), || {
            format!("trial {t}: {} tree edges for |P'| = {p_prime}", r.s_sizes.len())
        })?;
        let bound = p_prime.saturating_sub(1) as u128 * c2 as u128;
        ensure(union as u128 == bound, || {
            format!("trial {t}: S union {union} ≠ {bound}")
        })?;
        ensure(r.construction_bound == bound && r.holds(), || {
            format!("trial {t}: {} ≥ {} fails", r.lhs, r.construction_bound)
        })?;
        let rep = verify_lemma7([&sets[0], &sets[1], &sets[2]], &cfg()).map_err(|e| e.to_string())?;
        ensure(rep.pass, || format!("trial {t}: {rep:?}"))?;
    }
    Ok("50 triples: |S_ij| = |C'|², S_ij disjoint, inequality holds".into())
}

/// Minimum spanning-tree length over all labelled trees (Prüfer sequences).
fn exhaustive_mst(points: &[GaussianRational]) -> f64 {
    let n = points.len();
    if n == 2 {
        return squared_distance(&points[0], &points[1]).to_f64().sqrt();
    }
    let mut best = f64::INFINITY;
    let mut seq = vec![0usize; n - 2];
    loop {
        let mut degree = vec![1usize; n];
        for &s in &seq {
            degree[s] += 1;
        }
        let mut total = 0.0;
        for &s in &seq {
            let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
            total += squared_distance(&points[leaf], &points[s]).to_f64().sqrt();
            degree[leaf] -= 1;
            degree[s] -= 1;
        }
        let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
        total += squared_distance(&points[rest[0]], &points[rest[1]]).to_f64().sqrt();
        best = best.min(total);
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            return best;
        }
        seq[i] += 1;
    }
}

// 10. Kruskal against exhaustive enumeration.
fn c10() -> Outcome {
    let mut worst = 0.0f64;
    for t in 0..20u64 {
        let n = 2 + (t % 5) as usize;
        let pts = complex_elems(&draw(10_000 + t, n, 1, Domain::GaussianRationals(5)).remove(0));
        let mst = euclidean_mst(&pts).map_err(|e| e.to_string())?;
        let m = mst.vertices.len();
        ensure(mst.edges.len() == m - 1, || {
            format!("trial {t}: {} edges for {m} points", mst.edges.len())
        })?;
        ensure(mst.edges.iter().all(|&(i, j)| i < j && j < m), || {
            format!("trial {t}: bad edge")
        })?;
        let mut comp: Vec<usize> = (0..m).collect();
        for &(i, j) in &mst.edges {
            let (ci, cj) = (comp[i], comp[j]);
            ensure(ci != cj, || format!("trial {t}: cycle through ({i},{j})"))?;
            comp.iter_mut().filter(|c| **c == cj).for_each(|c| *c = ci);
        }
        ensure(comp.iter().all(|&c| c == comp[0]), || {
            format!("trial {t}: tree is disconnected")
        })?;
        let diff = (mst.total_weight() - exhaustive_mst(&mst.vertices)).abs();
        ensure(diff < 1e-9, || format!("trial {t}: weight differs by {diff}"))?;
        worst = worst.max(diff);
    }
    Ok(format!("20 point sets, worst deviation {worst:.1e}"))
}

/// Distinct directions of `p − q` over distinct points of `A × A`.
fn brute_directions(a: &[i64]) -> usize {
    let pts: Vec<(i64, i64)> = a.iter().flat_map(|&x| a.iter().map(move |&y| (x, y))).collect();
    let mut dirs = BTreeSet::new();
    for p in &pts {
        for r in &pts {
            let (dx, dy) = (r.0 - p.0, r.1 - p.1);
            if (dx, dy) == (0, 0) {
                continue;
            }
            let g = gcd(dx.unsigned_abs(), dy.unsigned_abs()) as i64;
            let (mut dx, mut dy) = (dx / g, dy / g);
            if dx < 0 || (dx == 0 && dy < 0) {
                dx = -dx;
                dy = -dy;
            }
            dirs.insert((dx, dy));
        }
    }
    dirs.len()
}

// 11. Directions of A × A.
fn c11() -> Outcome {
    let mut with_zero = 0;
    for t in 0..100u64 {
        let n = 2 + (t % 7) as usize;
        let mut set = draw(11_000 + t, n, 1, Domain::Integers(12)).remove(0);
        if t % 2 == 0 {
            let mut e = real_elems(&set);
            if !e.contains(&q(0)) {
                e[0] = q(0);
            }
            set = ScalarSet::Real(FiniteSet::new(e));
        }
        let ints: Vec<i64> = real_elems(&set).iter().map(|x| x.numer().try_into().unwrap()).collect();
        with_zero += usize::from(ints.contains(&0));
        let oracle = brute_directions(&ints);
        let m = ints.len();
        ensure(oracle + 1 >= m * m, || format!("{ints:?}: {oracle} directions"))?;
        let count = direction_count(&points_of(&set));
        ensure(count == oracle, || format!("{ints:?}: {count} vs oracle {oracle}"))?;
        let r = verify_ungar(&set, &cfg()).map_err(|e| e.to_string())?;
        ensure(r.pass, || format!("{ints:?}: {r:?}"))?;
    }
    let r = verify_ungar(&reals(&[0, 1, 2]), &cfg()).map_err(|e| e.to_string())?;
    ensure(r.measured == "8" && brute_directions(&[0, 1, 2]) == 8, || {
        format!("{{0,1,2}}: {r:?}")
    })?;
    Ok(format!("100 sets ({with_zero} containing 0); {{0,1,2}} gives 8"))
}

fn random_expr(rng: &mut Lcg, depth: u32) -> Expr {
    let leaf = depth == 0 || rng.range(0, 3) == 0;
    if leaf {
        return if rng.range(0, 3) == 0 {
            let size = rng.range(1, 3) as usize;
            let elems: Vec<Rational> = (0..size)
                .map(|_| Rational::from_i128_parts(rng.range(-9, 9).into(), rng.range(1, 4).into()).unwrap())
                .collect();
            Expr::Literal(ScalarSet::Real(FiniteSet::new(elems)))
        } else {
            Expr::Name(["A", "B", "C", "sum", "prod"][rng.range(0, 4) as usize].to_string())
        };
    }
    match rng.range(0, 5) {
        0 => Expr::FoldSum(rng.range(1, 4) as u64, Box::new(random_expr(rng, depth - 1))),
        1 => Expr::FoldProduct(rng.range(1, 4) as u64, Box::new(random_expr(rng, depth - 1))),
        _ => {
            let op = [SetOp::Add, SetOp::Sub, SetOp::Mul, SetOp::Div][rng.range(0, 3) as usize];
            Expr::binary(op, random_expr(rng, depth - 1), random_expr(rng, depth - 1))
        }
    }
}

// 12. The expression language.
fn c12() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("a.txt");
    std::fs::write(&path, "1\n2\n").map_err(|e| e.to_string())?;
    let mut env = Env::new();
    env.insert("A".into(), read_set_file(&path).map_err(|e| e.to_string())?.set);
    let lim = Limits::default();
    let eval = |src: &str| -> Result<ScalarSet, String> {
        eval_expr(&parse_expr(src).map_err(|e| e.to_string())?, &env, &lim).map_err(|e| e.to_string())
    };
    let v = eval("(A+A)/(A+A)")?;
    ensure(v.len() == 7, || format!("(A+A)/(A+A) has {} elements", v.len()))?;

    let plain = eval("{1,2}+{1,2}*{2}")?;
    let grouped = eval("{1,2}+({1,2}*{2})")?;
    let other = eval("({1,2}+{1,2})*{2}")?;
    ensure(plain == grouped && plain == reals(&[3, 4, 5, 6]), || {
        format!("precedence: {plain:?}")
    })?;
    ensure(other == reals(&[4, 6, 8]) && other != plain, || {
        format!("grouping: {other:?}")
    })?;

    let mut rng = Lcg::new(12);
    for i in 0..1000 {
        let e = random_expr(&mut rng, 5);
        let printed = e.to_string();
        let back = parse_expr(&printed).map_err(|err| format!("#{i} `{printed}`: {err}"))?;
        ensure(back == e, || format!("#{i}: `{printed}` reparses differently"))?;
    }
    Ok("file {1,2} gives 7; precedence holds; 1000 ASTs round-trip".into())
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget: Duration,
    run: fn() -> Outcome,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "exact tightness on {1,2,3}",
        budget: secs(1),
        run: c1,
    },
    Criterion {
        id: 2,
        title: "ratio-of-sumsets bound, 100 random sets",
        budget: secs(60),
        run: c2,
    },
    Criterion {
        id: 3,
        title: "point-set slope bound",
        budget: secs(30),
        run: c3,
    },
    Criterion {
        id: 4,
        title: "product-sumset lemma, 100 quadruples",
        budget: secs(60),
        run: c4,
    },
    Criterion {
        id: 5,
        title: "k-fold growth, k = 2 and 3",
        budget: secs(120),
        run: c5,
    },
    Criterion {
        id: 6,
        title: "coprime density and interval ratio set",
        budget: secs(120),
        run: c6,
    },
    Criterion {
        id: 7,
        title: "energy oracle",
        budget: secs(120),
        run: c7,
    },
    Criterion {
        id: 8,
        title: "complex witness pipeline",
        budget: secs(180),
        run: c8,
    },
    Criterion {
        id: 9,
        title: "S_ij construction",
        budget: secs(180),
        run: c9,
    },
    Criterion {
        id: 10,
        title: "minimum spanning tree oracle",
        budget: secs(30),
        run: c10,
    },
    Criterion {
        id: 11,
        title: "directions of A × A",
        budget: secs(30),
        run: c11,
    },
    Criterion {
        id: 12,
        title: "expression language",
        budget: secs(10),
        run: c12,
    },
];

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let outcome = panic::catch_unwind(c.run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > c.budget => Err(format!("{detail}; over budget")),
            other => other,
        };
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.as_str()),
            Err(e) => ("FAIL", e.as_str()),
        };
        println!(
            "criterion {:>2} {status}  {}  [{:.2}s / {}s]  {detail}",
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs()
        );
        failures += usize::from(outcome.is_err());
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failures, CRITERIA.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
