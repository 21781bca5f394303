//! Simple undirected graphs, hop distances and geodesic enumeration.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::partition::Partition;

/// Undirected simple graph on the vertices `0..n`.
///
/// Neighbour lists are kept sorted and free of duplicates, so iteration order
/// is deterministic everywhere downstream.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
}

impl Graph {
    /// Edgeless graph on `n >= 1` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Self {
            adjacency: vec![Vec::new(); n],
        })
    }

    /// Builds a graph from an edge list. Repeated edges collapse into one.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::empty(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`; returns `false` when the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(GraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        match self.adjacency[u].binary_search(&v) {
            Ok(_) => Ok(false),
            Err(pos) => {
                self.adjacency[u].insert(pos, v);
                let pos = self.adjacency[v].binary_search(&u).unwrap_err();
                self.adjacency[v].insert(pos, u);
                Ok(true)
            }
        }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// A vertex is simplicial when its neighbourhood induces a clique. Such a
    /// vertex is interior to no geodesic.
    pub fn is_simplicial(&self, v: usize) -> bool {
        let nb = &self.adjacency[v];
        nb.iter()
            .enumerate()
            .all(|(i, &a)| nb[i + 1..].iter().all(|&b| self.has_edge(a, b)))
    }

    pub fn simplicial_vertices(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.is_simplicial(v)).collect()
    }

    /// Hop distances from `source`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].expect("queued vertices are reached");
            for &w in &self.adjacency[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Connected component label for every vertex, labels in order of first vertex.
    pub fn components(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        for s in 0..self.n() {
            if label[s] != usize::MAX {
                continue;
            }
            for (v, d) in self.bfs_distances(s).into_iter().enumerate() {
                if d.is_some() {
                    label[v] = next;
                }
            }
            next += 1;
        }
        label
    }

    /// Proper 2-colouring, `None` if the graph has an odd cycle.
    /// Every component's smallest vertex gets colour `false`.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n()];
        for s in 0..self.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adjacency[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_connected(&self) -> bool {
        self.bfs_distances(0).iter().all(Option::is_some)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

/// Complete multipartite graph with one consecutive vertex block per part,
/// blocks in the partition's canonical (nonincreasing) order.
pub fn build_complete_multipartite(p: &Partition) -> Graph {
    complete_multipartite_from_blocks(p.parts())
}

/// Complete multipartite graph with blocks in the given order, e.g.
/// `[n, m]` puts the `n`-side of `K_{n,m}` on vertices `0..n`.
///
/// # Panics
///
/// If `blocks` is empty or sums to zero.
pub fn complete_multipartite_from_blocks(blocks: &[usize]) -> Graph {
    assert!(blocks.iter().sum::<usize>() > 0, "graph needs a vertex");
    let mut part_of = Vec::new();
    for (i, &size) in blocks.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let n = part_of.len();
    let adjacency = (0..n)
        .map(|u| (0..n).filter(|&v| part_of[v] != part_of[u]).collect())
        .collect();
    Graph { adjacency }
}

/// All-pairs hop distances. Unreachable pairs are `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    rows: Vec<Vec<Option<usize>>>,
}

impl DistanceMatrix {
    pub fn get(&self, u: usize, v: usize) -> Option<usize> {
        self.rows[u][v]
    }

    pub fn row(&self, u: usize) -> &[Option<usize>] {
        &self.rows[u]
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }
}

pub fn all_pairs_distances(g: &Graph) -> DistanceMatrix {
    DistanceMatrix {
        rows: (0..g.n()).map(|s| g.bfs_distances(s)).collect(),
    }
}

/// A shortest path, stored as its vertex sequence from one endpoint to the other.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Geodesic(pub Vec<usize>);

impl Geodesic {
    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn endpoints(&self) -> Option<(usize, usize)> {
        Some((*self.0.first()?, *self.0.last()?))
    }

    pub fn interior(&self) -> &[usize] {
        match self.0.len() {
            0..=2 => &[],
            l => &self.0[1..l - 1],
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeodesicError {
    #[error("vertices {0} and {1} lie in different components")]
    Disconnected(usize, usize),
    #[error("more than {cap} geodesics between {u} and {v}")]
    CapExceeded { u: usize, v: usize, cap: usize },
}

/// Every `u`-`v` geodesic, in lexicographic order of vertex sequences.
///
/// Walks the shortest-path DAG: from the current vertex only neighbours one
/// step closer to `v` are followed. Fails once more than `cap` paths exist.
pub fn enumerate_geodesics(
    g: &Graph,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Vec<Geodesic>, GeodesicError> {
    let to_target = g.bfs_distances(v);
    geodesics_with_target_distances(g, u, v, &to_target, cap)
}

/// The lexicographically first `u`-`v` geodesic.
pub fn first_geodesic(g: &Graph, u: usize, v: usize) -> Result<Geodesic, GeodesicError> {
    let to_target = g.bfs_distances(v);
    let mut cur = u;
    let mut d = to_target[u].ok_or(GeodesicError::Disconnected(u, v))?;
    let mut path = vec![u];
    while d > 0 {
        cur = *g
            .neighbors(cur)
            .iter()
            .find(|&&w| to_target[w] == Some(d - 1))
            .expect("a neighbour one step closer");
        d -= 1;
        path.push(cur);
    }
    Ok(Geodesic(path))
}

/// Same as [`enumerate_geodesics`] with distances to `v` already known.
pub fn geodesics_with_target_distances(
    g: &Graph,
    u: usize,
    v: usize,
    to_target: &[Option<usize>],
    cap: usize,
) -> Result<Vec<Geodesic>, GeodesicError> {
    let Some(len) = to_target[u] else {
        return Err(GeodesicError::Disconnected(u, v));
    };
    let mut out = Vec::new();
    let mut path = Vec::with_capacity(len + 1);
    path.push(u);
    dfs_dag(g, to_target, &mut path, &mut out, cap).map_err(|()| GeodesicError::CapExceeded {
        u,
        v,
        cap,
    })?;
    Ok(out)
}

fn dfs_dag(
    g: &Graph,
    to_target: &[Option<usize>],
    path: &mut Vec<usize>,
    out: &mut Vec<Geodesic>,
    cap: usize,
) -> Result<(), ()> {
    let cur = *path.last().unwrap();
    let d = to_target[cur].unwrap();
    if d == 0 {
        if out.len() == cap {
            return Err(());
        }
        out.push(Geodesic(path.clone()));
        return Ok(());
    }
    for &w in g.neighbors(cur) {
        if to_target[w] == Some(d - 1) {
            path.push(w);
            dfs_dag(g, to_target, path, out, cap)?;
            path.pop();
        }
    }
    Ok(())
}
