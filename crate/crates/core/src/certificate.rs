//! Explicit strong geodetic certificates and their verification.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{all_pairs_distances, Geodesic, Graph};

/// A vertex set `S` together with one fixed geodesic for every pair of
/// distinct `S`-vertices that lie in a common component.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub set: Vec<usize>,
    /// Keyed by `(x, y)` with `x < y`.
    #[serde(with = "pair_map")]
    pub chosen: BTreeMap<(usize, usize), Geodesic>,
}

impl Certificate {
    pub fn new(mut set: Vec<usize>) -> Self {
        set.sort_unstable();
        set.dedup();
        Self {
            set,
            chosen: BTreeMap::new(),
        }
    }

    pub fn size(&self) -> usize {
        self.set.len()
    }

    /// Records the path for its endpoint pair, replacing any earlier choice.
    pub fn choose(&mut self, path: Geodesic) {
        if let Some((a, b)) = path.endpoints() {
            self.chosen.insert((a.min(b), a.max(b)), path);
        }
    }

    /// Per-vertex flag: in `S` or on some chosen path.
    pub fn covered(&self, n: usize) -> Vec<bool> {
        let mut seen = vec![false; n];
        for &v in &self.set {
            if v < n {
                seen[v] = true;
            }
        }
        for path in self.chosen.values() {
            for &v in path.vertices() {
                if v < n {
                    seen[v] = true;
                }
            }
        }
        seen
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("vertex {0} of S is not a vertex of the graph")]
    VertexOutOfRange(usize),
    #[error("S is empty")]
    EmptySet,
    #[error("pair ({0}, {1}) has no chosen geodesic")]
    MissingPair(usize, usize),
    #[error("pair ({0}, {1}) is not a pair of connected S-vertices")]
    UnexpectedPair(usize, usize),
    #[error("path chosen for ({x}, {y}) is not a geodesic: {reason}")]
    NotGeodesic {
        x: usize,
        y: usize,
        reason: &'static str,
    },
    #[error("vertices {0:?} are not covered")]
    Uncovered(Vec<usize>),
}

/// Checks a certificate against `g`, reporting the first failed invariant.
pub fn verify_certificate(g: &Graph, c: &Certificate) -> Result<(), Violation> {
    let n = g.n();
    if c.set.is_empty() {
        return Err(Violation::EmptySet);
    }
    if let Some(&v) = c.set.iter().find(|&&v| v >= n) {
        return Err(Violation::VertexOutOfRange(v));
    }
    let dist = all_pairs_distances(g);
    let mut in_set = vec![false; n];
    for &v in &c.set {
        in_set[v] = true;
    }

    for (&(x, y), path) in &c.chosen {
        if x >= n || y >= n || x == y || !in_set[x] || !in_set[y] || dist.get(x, y).is_none() {
            return Err(Violation::UnexpectedPair(x, y));
        }
        check_geodesic(g, x, y, path, dist.get(x, y).unwrap())?;
    }

    let mut set = c.set.clone();
    set.sort_unstable();
    set.dedup();
    for (i, &x) in set.iter().enumerate() {
        for &y in &set[i + 1..] {
            if dist.get(x, y).is_some() && !c.chosen.contains_key(&(x, y)) {
                return Err(Violation::MissingPair(x, y));
            }
        }
    }

    let uncovered: Vec<usize> = c
        .covered(n)
        .into_iter()
        .enumerate()
        .filter(|(_, hit)| !hit)
        .map(|(v, _)| v)
        .collect();
    if uncovered.is_empty() {
        Ok(())
    } else {
        Err(Violation::Uncovered(uncovered))
    }
}

fn check_geodesic(
    g: &Graph,
    x: usize,
    y: usize,
    path: &Geodesic,
    distance: usize,
) -> Result<(), Violation> {
    let fail = |reason| Err(Violation::NotGeodesic { x, y, reason });
    let vs = path.vertices();
    match path.endpoints() {
        Some((a, b)) if (a, b) == (x, y) || (a, b) == (y, x) => {}
        _ => return fail("endpoints do not match the pair"),
    }
    if vs.iter().any(|&v| v >= g.n()) {
        return fail("vertex out of range");
    }
    if path.len() != distance {
        return fail("length differs from the distance");
    }
    if vs.windows(2).any(|w| !g.has_edge(w[0], w[1])) {
        return fail("consecutive vertices are not adjacent");
    }
    // a walk of length d(x, y) between x and y never repeats a vertex
    Ok(())
}

mod pair_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::graph::Geodesic;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        pair: (usize, usize),
        path: Geodesic,
    }

    pub fn serialize<S: Serializer>(
        map: &BTreeMap<(usize, usize), Geodesic>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let entries: Vec<Entry> = map
            .iter()
            .map(|(&pair, path)| Entry {
                pair,
                path: path.clone(),
            })
            .collect();
        entries.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<(usize, usize), Geodesic>, D::Error> {
        let entries = Vec::<Entry>::deserialize(d)?;
        Ok(entries.into_iter().map(|e| (e.pair, e.path)).collect())
    }
}
