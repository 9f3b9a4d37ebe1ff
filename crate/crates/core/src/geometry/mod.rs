//! Geometric witness constructions: origin-line slope covers in the real
//! plane, and ratio-point spanning trees with Möbius-wedge regions in ℂ.

pub mod complex;
pub mod slopes;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};

/// Where a witness ratio came from.
///
/// Line, pair and point indices are 1-based, matching the usual
/// `l_1 … l_k`, `p_i^(1) … p_i^(n_i)` labelling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum Provenance {
    /// `p_pair^(lower) + p_{pair+1}^(upper)`, a sum of points from two
    /// neighbouring cover lines.
    Chain { pair: usize, lower: usize, upper: usize },
    /// `p + p` for the innermost point of a line; realizes the line's slope.
    Diagonal { line: usize },
    /// Spanning-tree edge witness: the representation `index` of the `varied`
    /// endpoint summed with the fixed representative of the other endpoint.
    Edge {
        edge: usize,
        varied: Endpoint,
        index: usize,
    },
    /// The single ratio of a one-vertex ratio set, `(a + a) / (a + a)`.
    Doubling,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Endpoint {
    /// The first vertex of the edge.
    Head,
    /// The second vertex of the edge.
    Tail,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Chain { pair, lower, upper } => {
                write!(f, "chain:i={pair},lower={lower},upper={upper}")
            }
            Provenance::Diagonal { line } => write!(f, "diag:i={line}"),
            Provenance::Edge { edge, varied, index } => {
                let side = match varied {
                    Endpoint::Head => "head",
                    Endpoint::Tail => "tail",
                };
                write!(f, "edge:e={edge},vary={side},index={index}")
            }
            Provenance::Doubling => f.write_str("double"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse {
            input: s.to_string(),
            reason: "unrecognized witness provenance".into(),
        };
        if s == "double" {
            return Ok(Provenance::Doubling);
        }
        let (tag, rest) = s.split_once(':').ok_or_else(bad)?;
        let mut fields = std::collections::BTreeMap::new();
        for kv in rest.split(',') {
            let (k, v) = kv.split_once('=').ok_or_else(bad)?;
            fields.insert(k, v);
        }
        let num = |k: &str| -> Result<usize> { fields.get(k).and_then(|v| v.parse().ok()).ok_or_else(bad) };
        match tag {
            "chain" => Ok(Provenance::Chain {
                pair: num("i")?,
                lower: num("lower")?,
                upper: num("upper")?,
            }),
            "diag" => Ok(Provenance::Diagonal { line: num("i")? }),
            "edge" => Ok(Provenance::Edge {
                edge: num("e")?,
                varied: match fields.get("vary") {
                    Some(&"head") => Endpoint::Head,
                    Some(&"tail") => Endpoint::Tail,
                    _ => return Err(bad()),
                },
                index: num("index")?,
            }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness<T> {
    pub ratio: T,
    pub provenance: Provenance,
}

/// A list of pairwise-distinct constructed ratios checked against a bound.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport<T> {
    pub witnesses: Vec<Witness<T>>,
    pub distinct_count: usize,
    pub target_bound: usize,
    pub pass: bool,
}

impl<T: fmt::Display> WitnessReport<T> {
    pub(crate) fn new(witnesses: Vec<Witness<T>>, target_bound: usize) -> Self {
        let distinct_count = witnesses.len();
        WitnessReport {
            witnesses,
            distinct_count,
            target_bound,
            pass: distinct_count >= target_bound,
        }
    }

    /// One `ratio<TAB>provenance` line per witness.
    pub fn to_dump(&self) -> String {
        let mut out = String::new();
        for w in &self.witnesses {
            out.push_str(&format!("{}\t{}\n", w.ratio, w.provenance));
        }
        out
    }
}

/// Parses a witness dump back into `(ratio text, provenance)` entries.
/// Blank lines and `#` comment lines are skipped.
pub fn parse_witness_dump(text: &str) -> Result<Vec<(String, Provenance)>> {
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|line| {
            let (ratio, prov) = line.split_once('\t').ok_or_else(|| Error::Parse {
                input: line.to_string(),
                reason: "expected ratio<TAB>provenance".into(),
            })?;
            Ok((ratio.to_string(), prov.trim().parse()?))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn provenance_text_round_trips() {
        for p in [
            Provenance::Chain {
                pair: 3,
                lower: 1,
                upper: 4,
            },
            Provenance::Diagonal { line: 7 },
            Provenance::Edge {
                edge: 2,
                varied: Endpoint::Tail,
                index: 5,
            },
            Provenance::Doubling,
        ] {
            assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
        assert!("chain:i=1".parse::<Provenance>().is_err());
        assert!("nope".parse::<Provenance>().is_err());
    }
}
