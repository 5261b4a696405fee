//! Spanning Eulerian subgraphs, excess, and solvers for basic and clean graphs.

use serde::Serialize;
use thiserror::Error;

use crate::cycles::{classify_shape, vertex_type, CycleDescriptor, Shape, VertexType};
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EulerianError {
    #[error("edge id {0} does not exist in the host graph")]
    BadEdge(usize),
    #[error("vertex {vertex} has degree {degree} in the subgraph")]
    NotEulerian { vertex: usize, degree: usize },
    #[error("subgraph spans {got} vertices but the host has {expected}")]
    NotSpanning { expected: usize, got: usize },
    #[error("graph is not basic")]
    NotBasic,
    #[error("graph is not clean")]
    NotClean,
    #[error("solver failed: {0}")]
    Solver(String),
}

/// A spanning subgraph in which every vertex has degree 0 or 2, i.e. a
/// disjoint union of cycles and isolated vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EulerianSubgraph {
    n: usize,
    edges: Vec<usize>,
    cycles: usize,
    isolated: usize,
}

impl EulerianSubgraph {
    pub fn new(g: &Graph, edges: impl IntoIterator<Item = usize>) -> Result<Self, EulerianError> {
        let mut edges: Vec<usize> = edges.into_iter().collect();
        edges.sort_unstable();
        edges.dedup();
        let mut deg = vec![0usize; g.n()];
        let mut adj = vec![Vec::with_capacity(2); g.n()];
        for &e in &edges {
            if e >= g.m() {
                return Err(EulerianError::BadEdge(e));
            }
            let (a, b) = g.endpoints(e);
            deg[a] += 1;
            deg[b] += 1;
            adj[a].push(b);
            adj[b].push(a);
        }
        if let Some(v) = (0..g.n()).find(|&v| deg[v] != 0 && deg[v] != 2) {
            return Err(EulerianError::NotEulerian {
                vertex: v,
                degree: deg[v],
            });
        }
        let isolated = deg.iter().filter(|&&d| d == 0).count();
        let mut seen = vec![false; g.n()];
        let mut cycles = 0;
        for s in 0..g.n() {
            if deg[s] == 0 || seen[s] {
                continue;
            }
            cycles += 1;
            let mut stack = vec![s];
            seen[s] = true;
            while let Some(v) = stack.pop() {
                for &u in &adj[v] {
                    if !seen[u] {
                        seen[u] = true;
                        stack.push(u);
                    }
                }
            }
        }
        Ok(EulerianSubgraph {
            n: g.n(),
            edges,
            cycles,
            isolated,
        })
    }

    /// The subgraph with no edges: every vertex isolated.
    pub fn empty(g: &Graph) -> Self {
        EulerianSubgraph {
            n: g.n(),
            edges: Vec::new(),
            cycles: 0,
            isolated: g.n(),
        }
    }

    /// Re-validates against a host, checking that it spans exactly its vertices.
    pub fn validate(&self, g: &Graph) -> Result<(), EulerianError> {
        if self.n != g.n() {
            return Err(EulerianError::NotSpanning {
                expected: g.n(),
                got: self.n,
            });
        }
        let fresh = EulerianSubgraph::new(g, self.edges.iter().copied())?;
        debug_assert_eq!(&fresh, self);
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[usize] {
        &self.edges
    }

    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }

    /// Number of nontrivial components (cycles).
    pub fn cycle_count(&self) -> usize {
        self.cycles
    }

    pub fn isolated_count(&self) -> usize {
        self.isolated
    }

    /// `2 c(F) + i(F)`.
    pub fn excess(&self) -> usize {
        2 * self.cycles + self.isolated
    }

    /// Vertex sequences of the cycles, each starting at its smallest vertex.
    pub fn cycles(&self, g: &Graph) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::with_capacity(2); g.n()];
        for &e in &self.edges {
            let (a, b) = g.endpoints(e);
            adj[a].push(b);
            adj[b].push(a);
        }
        let mut seen = vec![false; g.n()];
        let mut out = Vec::new();
        for s in 0..g.n() {
            if adj[s].is_empty() || seen[s] {
                continue;
            }
            let mut cyc = vec![s];
            seen[s] = true;
            let (mut prev, mut cur) = (s, adj[s][0].min(adj[s][1]));
            while cur != s {
                seen[cur] = true;
                cyc.push(cur);
                let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
                prev = cur;
                cur = next;
            }
            out.push(cyc);
        }
        out
    }

    /// Per-vertex degree (0 or 2).
    pub fn degrees(&self, g: &Graph) -> Vec<usize> {
        let mut deg = vec![0; g.n()];
        for &e in &self.edges {
            let (a, b) = g.endpoints(e);
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }
}

/// Excess of a spanning Eulerian subgraph.
pub fn excess(f: &EulerianSubgraph) -> usize {
    f.excess()
}

/// Optimal Eulerian subgraph of a basic graph: the cycle itself, a Hamilton
/// cycle of K4, or the cycle through the two longer paths of a θ-graph.
pub fn solve_basic(g: &Graph) -> Result<EulerianSubgraph, EulerianError> {
    let all = |g: &Graph| (0..g.m()).collect::<Vec<_>>();
    match classify_shape(g) {
        Shape::Cycle => {
            if !crate::connectivity::is_connected(g) || g.n() < 3 {
                return Err(EulerianError::NotBasic);
            }
            EulerianSubgraph::new(g, all(g))
        }
        Shape::K4 => {
            let cyc = [0, 1, 2, 3];
            let ids = (0..4).map(|i| g.edge_between(cyc[i], cyc[(i + 1) % 4]).unwrap());
            EulerianSubgraph::new(g, ids)
        }
        Shape::Theta(..) => {
            let s = (0..g.n()).find(|&v| g.degree(v) == 3).unwrap();
            // walk each path from s, recording its edges
            let mut paths: Vec<Vec<usize>> = g
                .incident(s)
                .iter()
                .map(|&(first, e0)| {
                    let mut ids = vec![e0];
                    let (mut prev, mut cur) = (s, first);
                    while g.degree(cur) == 2 {
                        let &(next, e) = g.incident(cur).iter().find(|&&(u, _)| u != prev).unwrap();
                        ids.push(e);
                        prev = cur;
                        cur = next;
                    }
                    ids
                })
                .collect();
            paths.sort_by_key(|p| p.len());
            EulerianSubgraph::new(g, paths[1].iter().chain(&paths[2]).copied())
        }
        Shape::Other => Err(EulerianError::NotBasic),
    }
}

/// Eulerian subgraph of a clean graph with `exc <= 2(n + n2)/7`: the member
/// of least excess in the family induced by a decomposition of the uniform
/// 1/3 vector into perfect matchings of the suppressed multigraph.
pub fn solve_clean(g: &Graph) -> Result<EulerianSubgraph, EulerianError> {
    use crate::reduction::{classify_graph, GraphClass};
    if classify_graph(g).map_err(|e| EulerianError::Solver(e.to_string()))? != GraphClass::Clean {
        return Err(EulerianError::NotClean);
    }
    let solver = |e: &dyn std::fmt::Display| EulerianError::Solver(e.to_string());
    let mg = crate::graph::suppress_degree_two(g).map_err(|e| solver(&e))?;
    let d = crate::matching::decompose_uniform(&mg).map_err(|e| solver(&e))?;
    let family = crate::matching::eulerian_family(g, &mg, &d).map_err(|e| solver(&e))?;
    let best = family
        .best()
        .ok_or_else(|| EulerianError::Solver("empty family".into()))?;
    let f = family.members[best].clone();
    if 7 * f.excess() > 2 * g.weight() {
        return Err(EulerianError::Solver(format!(
            "excess {} exceeds 2(n + n2)/7 = {}/7",
            f.excess(),
            2 * g.weight()
        )));
    }
    Ok(f)
}

/// The three multisets of vertex types one of which every non-θ 6-cycle of a
/// clean graph dominates.
pub const SIX_CYCLE_TYPE_MULTISETS: [[[usize; 3]; 6]; 3] = [
    [[6, 7, 7], [6, 7, 7], [6, 8, 8], [6, 8, 8], [6, 8, 8], [6, 8, 8]],
    [[6, 7, 7], [6, 7, 8], [6, 7, 8], [6, 8, 8], [6, 8, 8], [6, 8, 8]],
    [[6, 7, 7], [6, 7, 8], [6, 7, 9], [6, 7, 9], [6, 8, 8], [6, 8, 8]],
];

/// Result of testing a 6-cycle's vertex types against the reference multisets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SixCycleTypeReport {
    pub types: Vec<VertexType>,
    /// Index of the first dominated multiset and, for each cycle position,
    /// the multiset entry it is matched to.
    pub witness: Option<(usize, Vec<usize>)>,
}

impl SixCycleTypeReport {
    pub fn dominates_any(&self) -> bool {
        self.witness.is_some()
    }
}

/// Tests whether the vertex types along a 6-cycle dominate one of the
/// reference multisets under some bijection.
pub fn check_six_cycle_types(g: &Graph, k: &CycleDescriptor) -> SixCycleTypeReport {
    let types: Vec<VertexType> = k
        .vertices
        .iter()
        .map(|&v| vertex_type(g, v).unwrap_or(VertexType([0, 0, 0])))
        .collect();
    report_for_types(types)
}

/// Domination test on explicit types.
pub fn report_for_types(types: Vec<VertexType>) -> SixCycleTypeReport {
    let mut witness = None;
    for (idx, multiset) in SIX_CYCLE_TYPE_MULTISETS.iter().enumerate() {
        let mut assign = Vec::new();
        let mut used = [false; 6];
        if bijection(&types, multiset, 0, &mut used, &mut assign) {
            witness = Some((idx, assign));
            break;
        }
    }
    SixCycleTypeReport { types, witness }
}

fn bijection(
    types: &[VertexType],
    multiset: &[[usize; 3]; 6],
    pos: usize,
    used: &mut [bool; 6],
    assign: &mut Vec<usize>,
) -> bool {
    if pos == types.len() {
        return true;
    }
    for j in 0..6 {
        if !used[j] && types[pos].dominates(&VertexType(multiset[j])) {
            used[j] = true;
            assign.push(j);
            if bijection(types, multiset, pos + 1, used, assign) {
                return true;
            }
            assign.pop();
            used[j] = false;
        }
    }
    false
}
