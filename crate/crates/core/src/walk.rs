//! TSP walks from Eulerian subgraphs, and the end-to-end solvers.

use num::{BigInt, BigRational};
use serde::Serialize;
use thiserror::Error;

use crate::connectivity::{bridges, components, is_connected, is_two_connected};
use crate::eulerian::{solve_basic, solve_clean, EulerianError, EulerianSubgraph};
use crate::graph::Graph;
use crate::reduction::{lift_through, reduce_to_terminal, ReductionError, ReductionTrace, TerminalKind};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph is not cubic")]
    NotCubic,
    #[error("walk of length {length} exceeds the bound {bound}")]
    BoundViolated { length: usize, bound: String },
    #[error(transparent)]
    Reduction(#[from] ReductionError),
    #[error(transparent)]
    Eulerian(#[from] EulerianError),
}

/// A closed walk; `vertices` starts and ends at the same vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TspWalk {
    pub vertices: Vec<usize>,
}

impl TspWalk {
    pub fn length(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }
}

/// Closed walk of length `n - 2 + exc(f)`: the cycles of `f` plus a doubled
/// spanning tree of the graph obtained by contracting them.
pub fn assemble_walk(g: &Graph, f: &EulerianSubgraph) -> Result<TspWalk, WalkError> {
    if !is_connected(g) {
        return Err(WalkError::NotConnected);
    }
    f.validate(g)?;
    let mut in_f = vec![false; g.m()];
    for &e in f.edges() {
        in_f[e] = true;
    }
    let (comp, count) = components(g, None, Some(&in_f));
    let mut multi: Vec<(usize, usize)> = f.edges().iter().map(|&e| g.endpoints(e)).collect();
    // BFS over components starting from the one holding vertex 0
    let mut reached = vec![false; count];
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::from([0]);
    seen[0] = true;
    reached[comp[0]] = true;
    while let Some(v) = queue.pop_front() {
        for &(u, e) in g.incident(v) {
            if seen[u] {
                continue;
            }
            if comp[u] != comp[v] {
                if reached[comp[u]] {
                    continue;
                }
                reached[comp[u]] = true;
                let (a, b) = g.endpoints(e);
                multi.push((a, b));
                multi.push((a, b));
            }
            seen[u] = true;
            queue.push_back(u);
        }
    }
    Ok(TspWalk {
        vertices: euler_tour(g.n(), &multi, 0),
    })
}

/// Euler tour of a connected multigraph with even degrees, from `start`.
pub(crate) fn euler_tour(n: usize, edges: &[(usize, usize)], start: usize) -> Vec<usize> {
    let mut adj = vec![Vec::new(); n];
    for (i, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, i));
        adj[b].push((a, i));
    }
    for list in &mut adj {
        list.sort_unstable();
        list.reverse();
    }
    let mut used = vec![false; edges.len()];
    let mut stack = vec![start];
    let mut tour = Vec::with_capacity(edges.len() + 1);
    while let Some(&v) = stack.last() {
        while adj[v].last().is_some_and(|&(_, e)| used[e]) {
            adj[v].pop();
        }
        match adj[v].pop() {
            Some((u, e)) => {
                used[e] = true;
                stack.push(u);
            }
            None => {
                tour.push(v);
                stack.pop();
            }
        }
    }
    tour.reverse();
    tour
}

/// Everything produced while solving a 2-connected subcubic instance.
#[derive(Debug, Clone)]
pub struct SubcubicSolution {
    pub walk: TspWalk,
    pub trace: ReductionTrace,
    pub terminal_subgraph: EulerianSubgraph,
    pub subgraph: EulerianSubgraph,
}

/// `9n/7 + 2n2/7 - 1`.
pub fn subcubic_bound(g: &Graph) -> BigRational {
    BigRational::new(BigInt::from(9 * g.n() + 2 * g.n2()) - 7, BigInt::from(7))
}

/// Reduce, solve the terminal graph, lift back and walk.
pub fn solve_subcubic(g: &Graph) -> Result<SubcubicSolution, WalkError> {
    if g.n() < 3 || !is_two_connected(g) {
        return Err(WalkError::NotTwoConnected);
    }
    let trace = reduce_to_terminal(g)?;
    let terminal_subgraph = match trace.terminal_kind {
        TerminalKind::Basic => solve_basic(&trace.terminal)?,
        TerminalKind::Clean => solve_clean(&trace.terminal)?,
    };
    let subgraph = lift_through(&trace, &terminal_subgraph)?;
    let walk = assemble_walk(g, &subgraph)?;
    if 7 * walk.length() + 7 > 9 * g.n() + 2 * g.n2() {
        return Err(WalkError::BoundViolated {
            length: walk.length(),
            bound: subcubic_bound(g).to_string(),
        });
    }
    Ok(SubcubicSolution {
        walk,
        trace,
        terminal_subgraph,
        subgraph,
    })
}

/// TSP walk of length at most `9n/7 + 2n2/7 - 1` in a 2-connected subcubic
/// graph.
pub fn tsp_walk_subcubic(g: &Graph) -> Result<TspWalk, WalkError> {
    Ok(solve_subcubic(g)?.walk)
}

/// Result of the cubic solver, with the quantities of its length bound.
#[derive(Debug, Clone, Serialize)]
pub struct CubicSolution {
    pub walk: TspWalk,
    pub bridges: usize,
    /// Vertices all of whose edges are bridges.
    pub trivial: usize,
    /// Components of G minus its bridges with more than one vertex.
    pub blocks: usize,
    /// Degree-two vertices after removing the bridges.
    pub n2: usize,
    /// Reduction trace of each block, in local vertex ids.
    #[serde(skip)]
    pub traces: Vec<ReductionTrace>,
}

impl CubicSolution {
    /// `9(n - n0)/7 + 2n2/7 - k + 2|bridges|`.
    pub fn bound(&self, n: usize) -> BigRational {
        let num = 9 * (n - self.trivial) + 2 * self.n2 + 14 * self.bridges;
        BigRational::new(BigInt::from(num) - 7 * self.blocks, BigInt::from(7))
    }

    /// Length every TSP walk of the graph needs: `n - n0 + 2|bridges|`.
    pub fn lower_bound(&self, n: usize) -> usize {
        n - self.trivial + 2 * self.bridges
    }
}

/// Approximate TSP walk of a connected cubic graph: solve every bridgeless
/// piece separately and join the walks through doubled bridges.
pub fn approximate_cubic_tsp(g: &Graph) -> Result<CubicSolution, WalkError> {
    if !is_connected(g) {
        return Err(WalkError::NotConnected);
    }
    if !g.is_cubic() {
        return Err(WalkError::NotCubic);
    }
    let bridge_list = bridges(g);
    let mut keep = vec![true; g.m()];
    for &e in &bridge_list {
        keep[e] = false;
    }
    let (comp, count) = components(g, None, Some(&keep));
    let mut members = vec![Vec::new(); count];
    for v in 0..g.n() {
        members[comp[v]].push(v);
    }
    let mut multi: Vec<(usize, usize)> = Vec::new();
    let (mut trivial, mut blocks, mut n2) = (0, 0, 0);
    let mut traces = Vec::new();
    for vs in &members {
        if vs.len() == 1 {
            trivial += 1;
            continue;
        }
        blocks += 1;
        let mut local = vec![usize::MAX; g.n()];
        for (i, &v) in vs.iter().enumerate() {
            local[v] = i;
        }
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, &(a, _))| keep[e] && local[a] != usize::MAX)
            .map(|(_, &(a, b))| (local[a], local[b]))
            .collect();
        let h = Graph::new(vs.len(), &edges).expect("subgraph of a simple graph");
        n2 += h.n2();
        let s = solve_subcubic(&h)?;
        multi.extend(s.walk.vertices.windows(2).map(|p| (vs[p[0]], vs[p[1]])));
        traces.push(s.trace);
    }
    for &e in &bridge_list {
        multi.push(g.endpoints(e));
        multi.push(g.endpoints(e));
    }
    let vertices = if multi.is_empty() {
        vec![0]
    } else {
        euler_tour(g.n(), &multi, 0)
    };
    let solution = CubicSolution {
        walk: TspWalk { vertices },
        bridges: bridge_list.len(),
        trivial,
        blocks,
        n2,
        traces,
    };
    let len = BigRational::from_integer(BigInt::from(solution.walk.length()));
    if len > solution.bound(g.n()) {
        return Err(WalkError::BoundViolated {
            length: solution.walk.length(),
            bound: solution.bound(g.n()).to_string(),
        });
    }
    Ok(solution)
}
