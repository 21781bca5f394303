//! Dominating set on a bipartite graph `G` to strong geodetic set on a
//! bipartite graph `G'`.
//!
//! `G'` adds two hubs `u1`, `u2` joined by an edge and one pendant copy `v'`
//! of every vertex. Each `x in X` is joined to `u2`, which also carries the
//! copies `x'`; each `y in Y` is joined to `u1`, which carries the copies
//! `y'`. Then `G` has a dominating set of size `k` iff `G'` has a strong
//! geodetic set of size `k + |V(G)|`.
//!
//! Both sides of the bipartition must be nonempty: for the single vertex
//! graph `gamma = 1` but `sg(G') = 3 > 1 + 1`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::graph::{first_geodesic, Geodesic, GeodesicError, Graph};
use crate::oracle::{
    dominating_number_exact, strong_geodetic_number_exact, OracleError, OracleLimits,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "role", content = "of", rename_all = "snake_case")]
pub enum Role {
    Original(usize),
    U1,
    U2,
    Prime(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("bipartition has {got} entries for {n} vertices")]
    BipartitionLength { got: usize, n: usize },
    #[error("edge ({0}, {1}) joins two vertices on the same side")]
    InvalidBipartition(usize, usize),
    #[error("graph has an odd cycle")]
    OddCycle,
    #[error("one side of the bipartition is empty")]
    DegenerateBipartition,
    #[error("vertex {0} is not in the source graph")]
    VertexOutOfRange(usize),
    #[error("{0:?} does not dominate the source graph")]
    NotDominating(Vec<usize>),
    #[error(transparent)]
    Geodesics(#[from] GeodesicError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// `G'` with its bookkeeping. Vertices `0..n` are the originals, `n` is
/// `u1`, `n + 1` is `u2`, and `n + 2 + v` is the copy of `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionInstance {
    pub source: Graph,
    /// `true` for `Y`.
    pub side: Vec<bool>,
    pub target: Graph,
    pub k: usize,
    pub k_prime: usize,
}

impl ReductionInstance {
    pub fn source_n(&self) -> usize {
        self.source.n()
    }

    pub fn u1(&self) -> usize {
        self.source_n()
    }

    pub fn u2(&self) -> usize {
        self.source_n() + 1
    }

    pub fn prime(&self, v: usize) -> usize {
        self.source_n() + 2 + v
    }

    pub fn role(&self, w: usize) -> Option<Role> {
        let n = self.source_n();
        match w {
            _ if w < n => Some(Role::Original(w)),
            _ if w == n => Some(Role::U1),
            _ if w == n + 1 => Some(Role::U2),
            _ if w < 2 * n + 2 => Some(Role::Prime(w - n - 2)),
            _ => None,
        }
    }

    pub fn vertex(&self, role: Role) -> usize {
        match role {
            Role::Original(v) => v,
            Role::U1 => self.u1(),
            Role::U2 => self.u2(),
            Role::Prime(v) => self.prime(v),
        }
    }

    /// Side of every target vertex, `true` for `Y'`.
    pub fn target_side(&self) -> Vec<bool> {
        (0..self.target.n())
            .map(|w| match self.role(w).unwrap() {
                Role::Original(v) | Role::Prime(v) => self.side[v],
                Role::U1 => false,
                Role::U2 => true,
            })
            .collect()
    }

    /// Comment lines describing the role of every target vertex (1-based,
    /// as in the graph file).
    pub fn role_comments(&self) -> Vec<String> {
        let mut out = vec![format!(
            "reduction source_n={} k={} k'={}",
            self.source_n(),
            self.k,
            self.k_prime
        )];
        for w in 0..self.target.n() {
            let side = if self.target_side()[w] { "Y'" } else { "X'" };
            let role = match self.role(w).unwrap() {
                Role::Original(v) => format!("original {}", v + 1),
                Role::U1 => "u1".to_string(),
                Role::U2 => "u2".to_string(),
                Role::Prime(v) => format!("prime {}", v + 1),
            };
            out.push(format!("role {} {role} {side}", w + 1));
        }
        out
    }
}

/// Checks a side assignment, or computes one by 2-colouring.
pub fn resolve_bipartition(g: &Graph, side: Option<&[bool]>) -> Result<Vec<bool>, ReductionError> {
    let side = match side {
        Some(s) => {
            if s.len() != g.n() {
                return Err(ReductionError::BipartitionLength { got: s.len(), n: g.n() });
            }
            if let Some((u, v)) = g.edges().find(|&(u, v)| s[u] == s[v]) {
                return Err(ReductionError::InvalidBipartition(u, v));
            }
            s.to_vec()
        }
        None => g.two_coloring().ok_or(ReductionError::OddCycle)?,
    };
    if side.iter().all(|&y| y) || side.iter().all(|&y| !y) {
        return Err(ReductionError::DegenerateBipartition);
    }
    Ok(side)
}

/// Builds `G'` and `k' = k + |V(G)|`.
pub fn reduce(g: &Graph, side: Option<&[bool]>, k: usize) -> Result<ReductionInstance, ReductionError> {
    let side = resolve_bipartition(g, side)?;
    let n = g.n();
    let (u1, u2) = (n, n + 1);
    let mut target = Graph::empty(2 * n + 2).expect("nonempty");
    let mut add = |a, b| {
        target.add_edge(a, b).expect("valid edge");
    };
    for (a, b) in g.edges() {
        add(a, b);
    }
    add(u1, u2);
    for (v, &is_y) in side.iter().enumerate() {
        let hub = if is_y { u1 } else { u2 };
        add(v, hub);
        add(hub, n + 2 + v);
    }
    Ok(ReductionInstance {
        source: g.clone(),
        side,
        target,
        k,
        k_prime: k + n,
    })
}

/// Whether `d` dominates `g`.
pub fn is_dominating(g: &Graph, d: &[usize]) -> bool {
    let mut hit = vec![false; g.n()];
    for &v in d {
        if v < g.n() {
            hit[v] = true;
            for &w in g.neighbors(v) {
                hit[w] = true;
            }
        }
    }
    hit.into_iter().all(|h| h)
}

/// The strong geodetic set `D ∪ {primes}` of `G'` with explicit geodesics.
///
/// A vertex `y` outside `D` is covered by `x, y, u1, y'` for a neighbour
/// `x in D` (symmetrically `y, x, u2, x'`), and the hubs by `x', u2, u1, y'`.
pub fn forward_certificate(
    inst: &ReductionInstance,
    dominating: &[usize],
) -> Result<Certificate, ReductionError> {
    let n = inst.source_n();
    if let Some(&v) = dominating.iter().find(|&&v| v >= n) {
        return Err(ReductionError::VertexOutOfRange(v));
    }
    if !is_dominating(&inst.source, dominating) {
        return Err(ReductionError::NotDominating(dominating.to_vec()));
    }
    let mut set = dominating.to_vec();
    set.extend((0..n).map(|v| inst.prime(v)));
    let mut cert = Certificate::new(set);
    let g = &inst.target;
    let (u1, u2) = (inst.u1(), inst.u2());

    let members = cert.set.clone();
    for (i, &a) in members.iter().enumerate() {
        for &b in &members[i + 1..] {
            let path = match recipe(inst, a, b) {
                Some(p) => p,
                None => first_geodesic(g, a, b)?,
            };
            cert.choose(path);
        }
    }

    // every original outside D needs a dominator on the other side
    for v in (0..n).filter(|v| !dominating.contains(v)) {
        let x = *g
            .neighbors(v)
            .iter()
            .find(|w| dominating.contains(w))
            .expect("dominated");
        let hub = if inst.side[v] { u1 } else { u2 };
        cert.choose(Geodesic(vec![x, v, hub, inst.prime(v)]));
    }
    Ok(cert)
}

/// The recipe path for a pair, if it prescribes one.
fn recipe(inst: &ReductionInstance, a: usize, b: usize) -> Option<Geodesic> {
    let (u1, u2) = (inst.u1(), inst.u2());
    match (inst.role(a)?, inst.role(b)?) {
        (Role::Prime(p), Role::Prime(q)) if inst.side[p] != inst.side[q] => {
            let (xp, yq) = if inst.side[p] { (q, p) } else { (p, q) };
            Some(Geodesic(vec![inst.prime(xp), u2, u1, inst.prime(yq)]))
        }
        _ => None,
    }
}

/// Outcome of comparing both sides of the equivalence by brute force.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub gamma: usize,
    pub sg_target: usize,
    pub source_n: usize,
    /// `k` values in `0..=k_max` where the two sides disagree.
    pub mismatches: Vec<usize>,
}

impl EquivalenceReport {
    pub fn holds(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Oracle limits large enough for `G'` of the given source size.
pub fn limits_for(source_n: usize, base: OracleLimits) -> OracleLimits {
    base.with_max_vertices(base.max_vertices.max(2 * source_n + 2))
}

/// Checks `gamma(G) <= k  <=>  sg(G') <= k + |V(G)|` for every `k <= k_max`.
pub fn verify_equivalence_report(
    g: &Graph,
    side: Option<&[bool]>,
    k_max: usize,
    limits: &OracleLimits,
) -> Result<EquivalenceReport, ReductionError> {
    let inst = reduce(g, side, 0)?;
    let limits = limits_for(g.n(), *limits);
    let (gamma, _) = dominating_number_exact(g, &limits)?;
    let (sg_target, _) = strong_geodetic_number_exact(&inst.target, &limits)?;
    let n = g.n();
    let mismatches = (0..=k_max)
        .filter(|&k| (gamma <= k) != (sg_target <= k + n))
        .collect();
    Ok(EquivalenceReport {
        gamma,
        sg_target,
        source_n: n,
        mismatches,
    })
}

pub fn verify_equivalence(
    g: &Graph,
    side: Option<&[bool]>,
    k_max: usize,
    limits: &OracleLimits,
) -> Result<bool, ReductionError> {
    Ok(verify_equivalence_report(g, side, k_max, limits)?.holds())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::verify_certificate;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    #[test]
    fn sizes() {
        let inst = reduce(&path(2), None, 1).unwrap();
        assert_eq!(inst.target.n(), 6);
        assert_eq!(inst.target.edge_count(), 6);
        assert_eq!(inst.k_prime, 3);
        let inst = reduce(&path(4), None, 2).unwrap();
        assert_eq!(inst.target.n(), 10);
        assert_eq!(inst.target.edge_count(), 3 + 1 + 8);
    }

    #[test]
    fn structure() {
        let inst = reduce(&path(4), None, 2).unwrap();
        let t = &inst.target;
        for v in 0..4 {
            assert!(t.is_simplicial(inst.prime(v)));
            assert_eq!(inst.vertex(inst.role(v).unwrap()), v);
            assert_eq!(inst.role(inst.prime(v)), Some(Role::Prime(v)));
        }
        let side = inst.target_side();
        assert!(t.edges().all(|(a, b)| side[a] != side[b]));
        assert!(t.two_coloring().is_some());
        assert_eq!(inst.role(10), None);
        assert_eq!(inst.role_comments().len(), 11);
    }

    #[test]
    fn bad_bipartitions() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(reduce(&tri, None, 1), Err(ReductionError::OddCycle));
        assert_eq!(
            reduce(&path(2), Some(&[false, false]), 1),
            Err(ReductionError::InvalidBipartition(0, 1))
        );
        assert_eq!(
            reduce(&Graph::empty(1).unwrap(), None, 1),
            Err(ReductionError::DegenerateBipartition)
        );
    }

    #[test]
    fn single_vertex_breaks_the_equivalence() {
        // K_1 with X = {a}, Y empty: G' is a star with three leaves
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let (sg, _) = strong_geodetic_number_exact(&star, &OracleLimits::default()).unwrap();
        assert_eq!(sg, 3);
    }

    #[test]
    fn equivalence_examples() {
        let limits = OracleLimits::default();
        assert!(verify_equivalence(&path(2), None, 2, &limits).unwrap());
        let r = verify_equivalence_report(&path(4), None, 4, &limits).unwrap();
        assert_eq!(r.gamma, 2);
        assert_eq!(r.sg_target, 6);
        assert!(r.holds());
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let r = verify_equivalence_report(&star, None, 4, &limits).unwrap();
        assert_eq!((r.gamma, r.sg_target), (1, 5));
    }

    #[test]
    fn forward_certificates() {
        let g = path(4);
        let inst = reduce(&g, None, 2).unwrap();
        for d in [vec![1, 2], vec![0, 2], vec![1, 3], vec![0, 3]] {
            let cert = forward_certificate(&inst, &d).unwrap();
            assert_eq!(cert.size(), 6);
            assert_eq!(verify_certificate(&inst.target, &cert), Ok(()), "{d:?}");
        }
        assert!(matches!(
            forward_certificate(&inst, &[0]),
            Err(ReductionError::NotDominating(_))
        ));
    }
}
