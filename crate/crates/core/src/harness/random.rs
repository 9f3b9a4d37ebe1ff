//! Reproducible random sets from a fixed 64-bit linear congruential
//! generator, so trials can be regenerated by any implementation from the
//! seed alone.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};
use crate::sets::ScalarSet;

const MULTIPLIER: u64 = 6364136223846793005;
const INCREMENT: u64 = 1442695040888963407;

/// `state ← state · 6364136223846793005 + 1442695040888963407 (mod 2⁶⁴)`,
/// emitting the high 32 bits of the new state.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(MULTIPLIER).wrapping_add(INCREMENT);
        (self.state >> 32) as u32
    }

    /// Uniform-ish draw from `lo..=hi` as `lo + next % (hi − lo + 1)`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        let span = (hi - lo + 1) as u64;
        lo + (self.next_u32() as u64 % span) as i64
    }
}

/// Where trial elements are drawn from. `M` bounds every drawn integer.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", content = "max", rename_all = "kebab-case")]
pub enum Domain {
    /// `{1, …, M}`.
    PositiveIntegers(u32),
    /// `{−M, …, M}`.
    Integers(u32),
    /// `p / q` with `p, q ∈ [1, M]`, reduced.
    PositiveRationals(u32),
    /// `(p₁/q₁) + (p₂/q₂) i` with `pᵢ ∈ [−M, M]`, `qᵢ ∈ [1, M]`.
    GaussianRationals(u32),
}

fn totient_sum(m: u32) -> u128 {
    super::counting::totients(m as usize)
        .iter()
        .skip(1)
        .map(|&t| t as u128)
        .sum()
}

impl Domain {
    /// Exact number of distinct elements the domain can produce.
    pub fn cardinality(&self) -> u128 {
        match *self {
            Domain::PositiveIntegers(m) => m as u128,
            Domain::Integers(m) => 2 * m as u128 + 1,
            Domain::PositiveRationals(m) => (2 * totient_sum(m)).saturating_sub(1),
            Domain::GaussianRationals(m) => {
                // Nonzero values p/q with |p|, q ≤ M come in ± pairs, plus zero.
                let axis = 2 * (2 * totient_sum(m)).saturating_sub(1) + 1;
                axis * axis
            }
        }
    }

    fn max(&self) -> i64 {
        match *self {
            Domain::PositiveIntegers(m)
            | Domain::Integers(m)
            | Domain::PositiveRationals(m)
            | Domain::GaussianRationals(m) => m as i64,
        }
    }

    fn is_complex(&self) -> bool {
        matches!(self, Domain::GaussianRationals(_))
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (name, m) = match *self {
            Domain::PositiveIntegers(m) => ("posint", m),
            Domain::Integers(m) => ("int", m),
            Domain::PositiveRationals(m) => ("posrat", m),
            Domain::GaussianRationals(m) => ("gauss", m),
        };
        write!(f, "{name}:{m}")
    }
}

impl FromStr for Domain {
    type Err = Error;

    /// `posint:M`, `int:M`, `posrat:M` or `gauss:M`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidConfig(format!("domain `{s}`: {reason}"));
        let (name, m) = s.split_once(':').ok_or_else(|| bad("expected NAME:MAX"))?;
        let m: u32 = m.trim().parse().map_err(|_| bad("MAX must be a positive integer"))?;
        if m == 0 || m > 1 << 30 {
            return Err(bad("MAX must be in 1..=2^30"));
        }
        match name.trim() {
            "posint" => Ok(Domain::PositiveIntegers(m)),
            "int" => Ok(Domain::Integers(m)),
            "posrat" => Ok(Domain::PositiveRationals(m)),
            "gauss" => Ok(Domain::GaussianRationals(m)),
            _ => Err(bad("unknown domain; use posint, int, posrat or gauss")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TrialSpec {
    pub seed: u64,
    pub set_size: usize,
    pub trials: usize,
    pub domain: Domain,
}

impl FromStr for TrialSpec {
    type Err = Error;

    /// `size=N,trials=T,seed=S,domain=D`; every key is optional
    /// (defaults: size 5, trials 1, seed 0, domain posint:100).
    fn from_str(s: &str) -> Result<Self> {
        let mut spec = TrialSpec {
            seed: 0,
            set_size: 5,
            trials: 1,
            domain: Domain::PositiveIntegers(100),
        };
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (k, v) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidConfig(format!("expected KEY=VALUE, got `{part}`")))?;
            let num = |v: &str| {
                v.parse::<u64>()
                    .map_err(|_| Error::InvalidConfig(format!("`{k}` needs a nonnegative integer, got `{v}`")))
            };
            match k {
                "size" => spec.set_size = num(v)? as usize,
                "trials" => spec.trials = num(v)? as usize,
                "seed" => spec.seed = num(v)?,
                "domain" => spec.domain = v.parse()?,
                _ => return Err(Error::InvalidConfig(format!("unknown random-trial key `{k}`"))),
            }
        }
        Ok(spec)
    }
}

fn draw_real(rng: &mut Lcg, domain: Domain) -> Rational {
    let m = domain.max();
    match domain {
        Domain::PositiveIntegers(_) => Rational::from_integer(rng.range(1, m)),
        Domain::Integers(_) => Rational::from_integer(rng.range(-m, m)),
        _ => {
            let p = rng.range(1, m);
            let q = rng.range(1, m);
            Rational::from_i128_parts(p.into(), q.into()).expect("q ≥ 1")
        }
    }
}

fn draw_signed_rational(rng: &mut Lcg, m: i64) -> Rational {
    let p = rng.range(-m, m);
    let q = rng.range(1, m);
    Rational::from_i128_parts(p.into(), q.into()).expect("q ≥ 1")
}

/// One set per trial from a single generator stream, in trial order.
pub fn random_sets(spec: &TrialSpec) -> Result<Vec<ScalarSet>> {
    if spec.set_size == 0 {
        return Err(Error::InvalidConfig("random set size must be at least 1".into()));
    }
    if spec.set_size as u128 > spec.domain.cardinality() {
        return Err(Error::InvalidConfig(format!(
            "domain {} has only {} elements, cannot draw {} distinct",
            spec.domain,
            spec.domain.cardinality(),
            spec.set_size
        )));
    }
    let mut rng = Lcg::new(spec.seed);
    let m = spec.domain.max();
    Ok((0..spec.trials)
        .map(|_| {
            if spec.domain.is_complex() {
                let mut out = BTreeSet::new();
                while out.len() < spec.set_size {
                    let re = draw_signed_rational(&mut rng, m);
                    let im = draw_signed_rational(&mut rng, m);
                    out.insert(GaussianRational::new(re, im));
                }
                ScalarSet::Complex(out.into_iter().collect())
            } else {
                let mut out = BTreeSet::new();
                while out.len() < spec.set_size {
                    out.insert(draw_real(&mut rng, spec.domain));
                }
                ScalarSet::Real(out.into_iter().collect())
            }
        })
        .collect())
}

/// The first trial's set.
pub fn random_set(spec: &TrialSpec) -> Result<ScalarSet> {
    let one = TrialSpec { trials: 1, ..*spec };
    Ok(random_sets(&one)?.remove(0))
}
