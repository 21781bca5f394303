//! Exhaustive ground truth for small graphs.
//!
//! Candidate sets are tried by size, then lexicographically; each candidate is
//! decided by a backtracking search over geodesic choices. Running out of
//! budget is reported as an error and never as infeasibility.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::Certificate;
use crate::graph::{geodesics_with_target_distances, Geodesic, GeodesicError, Graph};

/// Largest graph the bitmask search can represent.
pub const MAX_ORACLE_VERTICES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    pub max_vertices: usize,
    /// Geodesics enumerated per pair before giving up.
    pub geodesic_cap: usize,
    /// Search nodes per feasibility decision.
    pub node_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            max_vertices: 12,
            geodesic_cap: 64,
            node_budget: 2_000_000,
        }
    }
}

impl OracleLimits {
    pub fn with_max_vertices(self, max_vertices: usize) -> Self {
        Self {
            max_vertices,
            ..self
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.max_vertices == 0 || self.geodesic_cap == 0 || self.node_budget == 0 {
            return Err(OracleError::InvalidLimits);
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error("search budget of {0} nodes exhausted; result is indeterminate")]
    BudgetExceeded(u64),
    #[error(transparent)]
    Geodesics(#[from] GeodesicError),
    #[error("vertex {0} is not in the graph")]
    VertexOutOfRange(usize),
    #[error("oracle limits must be positive")]
    InvalidLimits,
}

impl OracleError {
    /// True for errors caused by resource limits rather than bad input.
    pub fn is_resource_limit(&self) -> bool {
        matches!(
            self,
            Self::TooLarge { .. }
                | Self::BudgetExceeded(_)
                | Self::Geodesics(GeodesicError::CapExceeded { .. })
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility {
    Feasible(Certificate),
    Infeasible,
}

impl Feasibility {
    pub fn certificate(self) -> Option<Certificate> {
        match self {
            Self::Feasible(c) => Some(c),
            Self::Infeasible => None,
        }
    }

    pub fn is_feasible(&self) -> bool {
        matches!(self, Self::Feasible(_))
    }
}

type Mask = u64;

fn bit(v: usize) -> Mask {
    1 << v
}

fn full_mask(n: usize) -> Mask {
    if n == 64 {
        Mask::MAX
    } else {
        (1 << n) - 1
    }
}

fn mask_of(vs: &[usize]) -> Mask {
    vs.iter().fold(0, |m, &v| m | bit(v))
}

/// One pair of `S` at distance at least two, with its geodesics deduplicated
/// by covered vertex set (the lexicographically first path of each set kept).
struct PairOptions {
    paths: Vec<Geodesic>,
    masks: Vec<Mask>,
}

/// Decides whether `set` is a strong geodetic set of `g`.
pub fn is_strong_geodetic_set(
    g: &Graph,
    set: &[usize],
    limits: &OracleLimits,
) -> Result<Feasibility, OracleError> {
    limits.validate()?;
    let n = g.n();
    if n > MAX_ORACLE_VERTICES {
        return Err(OracleError::TooLarge {
            n,
            max: MAX_ORACLE_VERTICES,
        });
    }
    if let Some(&v) = set.iter().find(|&&v| v >= n) {
        return Err(OracleError::VertexOutOfRange(v));
    }
    let mut set = set.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.is_empty() {
        return Ok(Feasibility::Infeasible);
    }

    let distances: Vec<Vec<Option<usize>>> = set.iter().map(|&s| g.bfs_distances(s)).collect();
    let mut certificate = Certificate::new(set.clone());
    let mut pairs: Vec<PairOptions> = Vec::new();
    for i in 0..set.len() {
        for j in i + 1..set.len() {
            let (x, y) = (set[i], set[j]);
            match distances[j][x] {
                None => {}
                // an edge covers nothing beyond its endpoints
                Some(1) => certificate.choose(Geodesic(vec![x, y])),
                Some(_) => {
                    let paths =
                        geodesics_with_target_distances(g, x, y, &distances[j], limits.geodesic_cap)?;
                    let mut opts = PairOptions {
                        paths: Vec::new(),
                        masks: Vec::new(),
                    };
                    for p in paths {
                        let m = mask_of(p.interior());
                        if !opts.masks.contains(&m) {
                            opts.masks.push(m);
                            opts.paths.push(p);
                        }
                    }
                    pairs.push(opts);
                }
            }
        }
    }
    // fewest alternatives first; stable, so ties keep pair order
    pairs.sort_by_key(|p| p.paths.len());

    let full = full_mask(n);
    let covered = mask_of(&set);
    let reachable = pairs
        .iter()
        .flat_map(|p| p.masks.iter())
        .fold(covered, |acc, &m| acc | m);
    if reachable != full {
        return Ok(Feasibility::Infeasible);
    }

    let mut search = Search {
        pairs: &pairs,
        full,
        assigned: vec![None; pairs.len()],
        nodes: 0,
        budget: limits.node_budget,
    };
    if !search.run(covered)? {
        return Ok(Feasibility::Infeasible);
    }
    for (p, choice) in pairs.iter().zip(&search.assigned) {
        certificate.choose(p.paths[choice.unwrap_or(0)].clone());
    }
    Ok(Feasibility::Feasible(certificate))
}

struct Search<'a> {
    pairs: &'a [PairOptions],
    full: Mask,
    assigned: Vec<Option<usize>>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    /// Branches on the uncovered vertex with the fewest candidate paths.
    fn run(&mut self, covered: Mask) -> Result<bool, OracleError> {
        if covered == self.full {
            return Ok(true);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(OracleError::BudgetExceeded(self.budget));
        }
        let uncovered = self.full & !covered;

        let mut reach = 0;
        let mut gain_bound = 0;
        for (p, choice) in self.pairs.iter().zip(&self.assigned) {
            if choice.is_none() {
                let best = p.masks.iter().map(|&m| (m & uncovered).count_ones()).max().unwrap_or(0);
                gain_bound += best;
                reach |= p.masks.iter().fold(0, |a, &m| a | m);
            }
        }
        if gain_bound < uncovered.count_ones() || reach & uncovered != uncovered {
            return Ok(false);
        }

        let mut target = None;
        let mut fewest = usize::MAX;
        let mut rest = uncovered;
        while rest != 0 {
            let w = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let count = self
                .pairs
                .iter()
                .zip(&self.assigned)
                .filter(|(_, c)| c.is_none())
                .map(|(p, _)| p.masks.iter().filter(|&&m| m & bit(w) != 0).count())
                .sum::<usize>();
            if count < fewest {
                fewest = count;
                target = Some(w);
            }
        }
        let w = target.expect("uncovered is nonempty");

        for pi in 0..self.pairs.len() {
            if self.assigned[pi].is_some() {
                continue;
            }
            for (oi, &m) in self.pairs[pi].masks.iter().enumerate() {
                if m & bit(w) == 0 {
                    continue;
                }
                self.assigned[pi] = Some(oi);
                if self.run(covered | m)? {
                    return Ok(true);
                }
                self.assigned[pi] = None;
            }
        }
        Ok(false)
    }
}

/// Lexicographic `k`-subsets of `items`.
pub(crate) struct Combinations<'a> {
    items: &'a [usize],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Combinations<'a> {
    pub(crate) fn new(items: &'a [usize], k: usize) -> Self {
        Self {
            items,
            idx: (0..k).collect(),
            done: k > items.len(),
        }
    }
}

impl Iterator for Combinations<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let (n, k) = (self.items.len(), self.idx.len());
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Minimum strong geodetic set by exhaustive search, with a certificate.
///
/// Simplicial vertices are interior to no geodesic and are always included.
pub fn strong_geodetic_number_exact(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(usize, Certificate), OracleError> {
    limits.validate()?;
    let n = g.n();
    let max = limits.max_vertices.min(MAX_ORACLE_VERTICES);
    if n > max {
        return Err(OracleError::TooLarge { n, max });
    }
    let forced = g.simplicial_vertices();
    let free: Vec<usize> = (0..n).filter(|v| !forced.contains(v)).collect();
    for k in forced.len().max(1)..=n {
        for extra in Combinations::new(&free, k - forced.len()) {
            let mut set = forced.clone();
            set.extend(extra);
            set.sort_unstable();
            if let Feasibility::Feasible(c) = is_strong_geodetic_set(g, &set, limits)? {
                return Ok((k, c));
            }
        }
    }
    unreachable!("S = V(G) always covers the graph")
}

/// Minimum dominating set by exhaustive search over subsets.
pub fn dominating_number_exact(
    g: &Graph,
    limits: &OracleLimits,
) -> Result<(usize, Vec<usize>), OracleError> {
    limits.validate()?;
    let n = g.n();
    let max = (limits.max_vertices + 4).min(MAX_ORACLE_VERTICES);
    if n > max {
        return Err(OracleError::TooLarge { n, max });
    }
    let closed: Vec<Mask> = (0..n)
        .map(|v| mask_of(g.neighbors(v)) | bit(v))
        .collect();
    let full = full_mask(n);
    let all: Vec<usize> = (0..n).collect();
    let mut checked = 0u64;
    for k in 0..=n {
        for set in Combinations::new(&all, k) {
            checked += 1;
            if checked > limits.node_budget {
                return Err(OracleError::BudgetExceeded(limits.node_budget));
            }
            if set.iter().fold(0, |m, &v| m | closed[v]) == full {
                return Ok((k, set));
            }
        }
    }
    unreachable!("V(G) dominates itself")
}
