//! Exact Euclidean minimum spanning trees over Gaussian-rational points.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{GaussianRational, Rational};

/// A spanning tree on `vertices` (sorted ascending). Each edge `(i, j)` has
/// `i < j` and its exact squared length at the same position in
/// `squared_weights`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct MstEdges {
    pub vertices: Vec<GaussianRational>,
    pub edges: Vec<(usize, usize)>,
    pub squared_weights: Vec<Rational>,
}

impl MstEdges {
    /// Endpoints of edge `e` (0-based).
    pub fn endpoints(&self, e: usize) -> (&GaussianRational, &GaussianRational) {
        let (i, j) = self.edges[e];
        (&self.vertices[i], &self.vertices[j])
    }

    /// Sum of Euclidean edge lengths, in floating point.
    pub fn total_weight(&self) -> f64 {
        self.squared_weights.iter().map(|w| w.to_f64().sqrt()).sum()
    }

    /// One `i<TAB>j<TAB>squared_weight` line per edge.
    pub fn to_dump(&self) -> String {
        self.edges
            .iter()
            .zip(&self.squared_weights)
            .map(|((i, j), w)| format!("{i}\t{j}\t{w}\n"))
            .collect()
    }
}

pub fn squared_distance(a: &GaussianRational, b: &GaussianRational) -> Rational {
    (a - b).norm_sqr()
}

struct DisjointSets {
    parent: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> Self {
        DisjointSets {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Kruskal's algorithm with edges ordered by `(squared weight, i, j)`, so the
/// result is deterministic even with ties. Squared lengths order edges the
/// same way lengths do.
pub fn euclidean_mst(points: &[GaussianRational]) -> Result<MstEdges> {
    let mut vertices = points.to_vec();
    vertices.sort();
    if vertices.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePoints);
    }
    let n = vertices.len();
    if n < 2 {
        return Err(Error::Precondition("a spanning tree needs at least two points".into()));
    }
    let mut candidates: Vec<(Rational, usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let vertices = &vertices;
            (i + 1..n).map(move |j| (squared_distance(&vertices[i], &vertices[j]), i, j))
        })
        .collect();
    candidates.par_sort_unstable();

    let mut sets = DisjointSets::new(n);
    let mut edges = Vec::with_capacity(n - 1);
    let mut squared_weights = Vec::with_capacity(n - 1);
    for (w, i, j) in candidates {
        if sets.union(i, j) {
            edges.push((i, j));
            squared_weights.push(w);
            if edges.len() == n - 1 {
                break;
            }
        }
    }
    Ok(MstEdges {
        vertices,
        edges,
        squared_weights,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianRational {
        GaussianRational::from_integers(re, im)
    }

    /// Every labelled tree on `n ≥ 2` vertices, decoded from its Prüfer sequence.
    fn all_trees(n: usize) -> Vec<Vec<(usize, usize)>> {
        let len = n - 2;
        let total = n.pow(len as u32);
        (0..total)
            .map(|mut code| {
                let seq: Vec<usize> = (0..len)
                    .map(|_| {
                        let d = code % n;
                        code /= n;
                        d
                    })
                    .collect();
                let mut degree = vec![1; n];
                for &s in &seq {
                    degree[s] += 1;
                }
                let mut edges = Vec::new();
                for &s in &seq {
                    let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
                    edges.push((leaf.min(s), leaf.max(s)));
                    degree[leaf] -= 1;
                    degree[s] -= 1;
                }
                let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
                edges.push((rest[0], rest[1]));
                edges
            })
            .collect()
    }

    fn tree_weight(v: &[GaussianRational], edges: &[(usize, usize)]) -> f64 {
        edges
            .iter()
            .map(|&(i, j)| squared_distance(&v[i], &v[j]).to_f64().sqrt())
            .sum()
    }

    #[test]
    fn prufer_count_is_cayley() {
        assert_eq!(all_trees(5).len(), 125);
        assert_eq!(all_trees(2), [vec![(0, 1)]]);
    }

    #[test]
    fn mst_examples() {
        let t = euclidean_mst(&[g(1, 0), g(0, 1), g(0, -1)]).unwrap();
        // Sorted vertices: −i, i, 1.
        assert_eq!(t.vertices, [g(0, -1), g(0, 1), g(1, 0)]);
        let mut e = t.edges.clone();
        e.sort();
        assert_eq!(e, [(0, 2), (1, 2)]);
        assert!(t.squared_weights.iter().all(|w| *w == Rational::from_integer(2)));
        assert_eq!(t.to_dump(), "0\t2\t2\n1\t2\t2\n");

        let t = euclidean_mst(&[g(3, 4), g(0, 0)]).unwrap();
        assert_eq!(t.edges, [(0, 1)]);
        assert_eq!(t.squared_weights, [Rational::from_integer(25)]);

        assert!(matches!(
            euclidean_mst(&[g(1, 1), g(1, 1)]),
            Err(Error::DuplicatePoints)
        ));
        assert_eq!(
            euclidean_mst(&[g(1, 1), g(1, 1)]).unwrap_err().to_string(),
            "ratio points must be distinct"
        );
    }

    proptest! {
        #[test]
        fn matches_exhaustive_minimum(
            raw in proptest::collection::btree_set((-8i64..=8, -8i64..=8, 1i64..4), 2..7),
        ) {
            let pts: Vec<GaussianRational> = raw
                .iter()
                .map(|&(a, b, d)| {
                    let d = Rational::from_integer(d);
                    GaussianRational::new(
                        &Rational::from_integer(a) / &d,
                        &Rational::from_integer(b) / &d,
                    )
                })
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .collect();
            prop_assume!(pts.len() >= 2);
            let t = euclidean_mst(&pts).unwrap();
            prop_assert_eq!(t.edges.len(), pts.len() - 1);
            prop_assert!(t.edges.iter().all(|(i, j)| i < j));
            let best = all_trees(pts.len())
                .iter()
                .map(|e| tree_weight(&t.vertices, e))
                .fold(f64::INFINITY, f64::min);
            prop_assert!((t.total_weight() - best).abs() < 1e-9);
        }
    }
}
