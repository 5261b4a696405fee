//! Simple subcubic graphs and their degree-two suppressions.
//!
//! Vertices are dense ids `0..n`. Every edge carries a stable id (its index in
//! the normalized edge list), so subgraphs can be handled as edge-id sets.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Validation errors raised while building a [`Graph`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    BadIndex { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("vertex {0} has degree greater than three")]
    DegreeExceeded(usize),
    #[error("a graph needs at least one vertex")]
    Empty,
    #[error("graph is a cycle; suppression would leave no vertex of degree three")]
    IsCycle,
    #[error("vertex {0} has degree {1}; suppression needs minimum degree two")]
    LowDegree(usize, usize),
}

/// An immutable simple undirected graph with maximum degree three.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // (neighbor, edge id), sorted by neighbor
    adj: Vec<Vec<(usize, usize)>>,
}

impl Graph {
    /// Builds and validates a graph. Edge ids follow the order of `edge_list`.
    pub fn new(n: usize, edge_list: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut edges = Vec::with_capacity(edge_list.len());
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        let mut seen: HashMap<(usize, usize), ()> = HashMap::new();
        for &(a, b) in edge_list {
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::BadIndex { vertex: v, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let key = (a.min(b), a.max(b));
            if seen.insert(key, ()).is_some() {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            let id = edges.len();
            edges.push(key);
            adj[a].push((b, id));
            adj[b].push((a, id));
            if adj[a].len() > 3 {
                return Err(GraphError::DegreeExceeded(a));
            }
            if adj[b].len() > 3 {
                return Err(GraphError::DegreeExceeded(b));
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { n, edges, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Number of vertices of degree two.
    pub fn n2(&self) -> usize {
        (0..self.n).filter(|&v| self.degree(v) == 2).count()
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// The endpoint of `e` that is not `v`.
    pub fn other(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e];
        if a == v {
            b
        } else {
            a
        }
    }

    /// `(neighbor, edge id)` pairs at `v`, sorted by neighbor.
    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].iter().map(|&(u, _)| u)
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.adj[u].iter().find(|&&(w, _)| w == v).map(|&(_, e)| e)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_between(u, v).is_some()
    }

    /// `n + n2`, the size measure that reductions never increase.
    pub fn weight(&self) -> usize {
        self.n + self.n2()
    }

    /// Canonical sorted edge list, handy for comparing graphs.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A multigraph obtained by suppressing degree-two vertices. Each edge remembers
/// the path of the original graph it stands for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    ends: Vec<(usize, usize)>,
    payload: Vec<Vec<usize>>,
    origin: Vec<usize>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl Multigraph {
    /// Builds a multigraph without payloads. Loops and parallel edges are allowed.
    pub fn from_edges(n: usize, ends: &[(usize, usize)]) -> Self {
        let payload = vec![Vec::new(); ends.len()];
        Self::with_payload(n, ends.to_vec(), payload, (0..n).collect())
    }

    fn with_payload(n: usize, ends: Vec<(usize, usize)>, payload: Vec<Vec<usize>>, origin: Vec<usize>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for (id, &(a, b)) in ends.iter().enumerate() {
            adj[a].push((b, id));
            if a != b {
                adj[b].push((a, id));
            } else {
                adj[a].push((a, id));
            }
        }
        Multigraph {
            n,
            ends,
            payload,
            origin,
            adj,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.ends.len()
    }

    pub fn ends(&self, e: usize) -> (usize, usize) {
        self.ends[e]
    }

    pub fn edge_list(&self) -> &[(usize, usize)] {
        &self.ends
    }

    /// Interior vertices (in the original graph) of the path edge `e` stands for,
    /// ordered from `ends(e).0` to `ends(e).1`.
    pub fn payload(&self, e: usize) -> &[usize] {
        &self.payload[e]
    }

    /// Original-graph vertex represented by multigraph vertex `v`.
    pub fn origin(&self, v: usize) -> usize {
        self.origin[v]
    }

    /// Degree counting a loop twice.
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn incident(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn is_cubic(&self) -> bool {
        (0..self.n).all(|v| self.degree(v) == 3)
    }

    pub fn has_loop(&self) -> bool {
        self.ends.iter().any(|&(a, b)| a == b)
    }

    /// Re-expands payloads into the original simple graph. Vertex ids of the
    /// original are recovered through `origin` and payload contents.
    pub fn expand(&self, n_original: usize) -> Result<Graph, GraphError> {
        let mut edges = Vec::new();
        for (e, &(a, b)) in self.ends.iter().enumerate() {
            let mut walk = vec![self.origin[a]];
            walk.extend_from_slice(&self.payload[e]);
            walk.push(self.origin[b]);
            for w in walk.windows(2) {
                edges.push((w[0], w[1]));
            }
        }
        Graph::new(n_original, &edges)
    }

    /// Original-graph edge ids along multigraph edge `e`.
    pub fn graph_edges(&self, g: &Graph, e: usize) -> Vec<usize> {
        let (a, b) = self.ends[e];
        let mut walk = vec![self.origin[a]];
        walk.extend_from_slice(&self.payload[e]);
        walk.push(self.origin[b]);
        walk.windows(2)
            .map(|w| g.edge_between(w[0], w[1]).expect("payload path follows graph edges"))
            .collect()
    }

    /// 2-edge-connectivity of the multigraph (parallel edges count separately).
    pub fn is_two_edge_connected(&self) -> bool {
        crate::connectivity::multigraph_two_edge_connected(self.n, &self.ends)
    }
}

/// Suppresses every degree-two vertex, producing a cubic multigraph whose edges
/// carry the suppressed paths.
pub fn suppress_degree_two(g: &Graph) -> Result<Multigraph, GraphError> {
    for v in 0..g.n() {
        if g.degree(v) < 2 {
            return Err(GraphError::LowDegree(v, g.degree(v)));
        }
    }
    let branch: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    if branch.is_empty() {
        return Err(GraphError::IsCycle);
    }
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in branch.iter().enumerate() {
        index[v] = i;
    }
    let mut used = vec![false; g.m()];
    let mut ends = Vec::new();
    let mut payload = Vec::new();
    for &start in &branch {
        for &(first, e0) in g.incident(start) {
            if used[e0] {
                continue;
            }
            used[e0] = true;
            let mut path = Vec::new();
            let mut prev = start;
            let mut cur = first;
            while g.degree(cur) == 2 {
                path.push(cur);
                let &(next, e) = g
                    .incident(cur)
                    .iter()
                    .find(|&&(w, e)| !(w == prev && used[e]))
                    .expect("degree-two vertex has a continuation");
                used[e] = true;
                prev = cur;
                cur = next;
            }
            ends.push((index[start], index[cur]));
            payload.push(path);
        }
    }
    if payload.iter().flatten().count() + branch.len() != g.n() {
        // a component that is a bare cycle was never reached
        return Err(GraphError::IsCycle);
    }
    Ok(Multigraph::with_payload(branch.len(), ends, payload, branch))
}
