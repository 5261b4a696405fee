//! Connectivity structure: components, bridges, cut vertices, blocks,
//! 2-edge-cuts and small unit-capacity flows.

use std::collections::VecDeque;

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("graph is not 2-edge-connected")]
    NotTwoEdgeConnected,
}

/// Summary of the connectivity structure of a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    pub connected: bool,
    pub two_connected: bool,
    pub two_edge_connected: bool,
    pub bridges: Vec<usize>,
    pub cut_vertices: Vec<usize>,
    /// Blocks as sorted edge-id lists (isolated vertices form no block).
    pub blocks: Vec<Vec<usize>>,
}

type Adj = Vec<Vec<(usize, usize)>>;

fn masked_adj(g: &Graph, vmask: Option<&[bool]>, emask: Option<&[bool]>) -> Adj {
    let mut adj = vec![Vec::new(); g.n()];
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if emask.is_some_and(|m| !m[e]) {
            continue;
        }
        if vmask.is_some_and(|m| !m[a] || !m[b]) {
            continue;
        }
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    adj
}

fn label_components(adj: &Adj, alive: impl Fn(usize) -> bool) -> (Vec<usize>, usize) {
    let n = adj.len();
    let mut comp = vec![usize::MAX; n];
    let mut count = 0;
    for s in 0..n {
        if comp[s] != usize::MAX || !alive(s) {
            continue;
        }
        comp[s] = count;
        let mut stack = vec![s];
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if comp[u] == usize::MAX {
                    comp[u] = count;
                    stack.push(u);
                }
            }
        }
        count += 1;
    }
    (comp, count)
}

/// Component labels of the subgraph induced by `vmask` (all vertices when
/// `None`) using only edges allowed by `emask`. Removed vertices get
/// `usize::MAX`. Returns the labels and the component count.
pub fn components(g: &Graph, vmask: Option<&[bool]>, emask: Option<&[bool]>) -> (Vec<usize>, usize) {
    let adj = masked_adj(g, vmask, emask);
    label_components(&adj, |v| vmask.is_none_or(|m| m[v]))
}

pub fn is_connected(g: &Graph) -> bool {
    components(g, None, None).1 == 1
}

struct Lowpoint {
    bridges: Vec<usize>,
    cut_vertices: Vec<usize>,
    blocks: Vec<Vec<usize>>,
}

// Iterative Tarjan lowpoint search; parent edges are skipped by id so that
// parallel edges are handled.
fn lowpoint(adj: &Adj) -> Lowpoint {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut bridges = Vec::new();
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        let mut root_children = 0;
        // (vertex, parent edge, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (v, pe, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let (u, e) = adj[v][*i];
                *i += 1;
                if e == pe {
                    continue;
                }
                if disc[u] == usize::MAX {
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    edge_stack.push(e);
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((u, e, 0));
                } else if disc[u] < disc[v] {
                    low[v] = low[v].min(disc[u]);
                    edge_stack.push(e);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if low[v] > disc[p] {
                        bridges.push(pe);
                    }
                    if low[v] >= disc[p] {
                        if p != root {
                            is_cut[p] = true;
                        }
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == pe {
                                break;
                            }
                        }
                        block.sort_unstable();
                        blocks.push(block);
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    bridges.sort_unstable();
    blocks.sort();
    Lowpoint {
        bridges,
        cut_vertices: (0..n).filter(|&v| is_cut[v]).collect(),
        blocks,
    }
}

pub fn connectivity_report(g: &Graph) -> ConnectivityReport {
    let adj = masked_adj(g, None, None);
    let (_, count) = label_components(&adj, |_| true);
    let lp = lowpoint(&adj);
    let connected = count == 1;
    ConnectivityReport {
        connected,
        two_connected: connected && g.n() >= 3 && lp.cut_vertices.is_empty(),
        two_edge_connected: connected && g.n() >= 2 && lp.bridges.is_empty(),
        bridges: lp.bridges,
        cut_vertices: lp.cut_vertices,
        blocks: lp.blocks,
    }
}

/// 2-connectivity; graphs on fewer than three vertices are rejected.
pub fn is_two_connected(g: &Graph) -> bool {
    connectivity_report(g).two_connected
}

pub fn bridges(g: &Graph) -> Vec<usize> {
    lowpoint(&masked_adj(g, None, None)).bridges
}

/// Bridges of the subgraph restricted by the masks.
pub fn bridges_masked(g: &Graph, vmask: Option<&[bool]>, emask: Option<&[bool]>) -> Vec<usize> {
    lowpoint(&masked_adj(g, vmask, emask)).bridges
}

pub(crate) fn multigraph_two_edge_connected(n: usize, ends: &[(usize, usize)]) -> bool {
    let mut adj = vec![Vec::new(); n];
    for (e, &(a, b)) in ends.iter().enumerate() {
        if a == b {
            continue;
        }
        adj[a].push((b, e));
        adj[b].push((a, e));
    }
    let (_, count) = label_components(&adj, |_| true);
    count == 1 && lowpoint(&adj).bridges.is_empty()
}

/// For a 2-edge-connected graph, the 2-edge-cut partners of every edge.
#[derive(Debug, Clone)]
pub struct CutIndex {
    partners: Vec<Vec<usize>>,
}

impl CutIndex {
    pub fn new(g: &Graph) -> Result<Self, ConnectivityError> {
        let report = connectivity_report(g);
        if !report.two_edge_connected {
            return Err(ConnectivityError::NotTwoEdgeConnected);
        }
        let mut mask = vec![true; g.m()];
        let mut partners = Vec::with_capacity(g.m());
        for e in 0..g.m() {
            mask[e] = false;
            partners.push(bridges_masked(g, None, Some(&mask)));
            mask[e] = true;
        }
        Ok(CutIndex { partners })
    }

    pub fn in_cut(&self, e: usize) -> bool {
        !self.partners[e].is_empty()
    }

    pub fn partners(&self, e: usize) -> &[usize] {
        &self.partners[e]
    }

    pub fn is_cut_pair(&self, e: usize, f: usize) -> bool {
        self.partners[e].binary_search(&f).is_ok()
    }
}

pub fn edge_in_2_edge_cut(g: &Graph, e: usize) -> Result<bool, ConnectivityError> {
    Ok(!two_edge_cut_partners(g, e)?.is_empty())
}

pub fn two_edge_cut_partners(g: &Graph, e: usize) -> Result<Vec<usize>, ConnectivityError> {
    if !connectivity_report(g).two_edge_connected {
        return Err(ConnectivityError::NotTwoEdgeConnected);
    }
    let mut mask = vec![true; g.m()];
    mask[e] = false;
    Ok(bridges_masked(g, None, Some(&mask)))
}

/// Outcome of a capped unit-capacity flow computation.
#[derive(Debug, Clone)]
pub struct FlowResult {
    pub value: usize,
    /// Vertices reachable from the sources in the final residual graph. Only
    /// meaningful as a minimum cut when `value` is below the cap.
    pub source_side: Vec<bool>,
    /// Edges crossing from `source_side` to the rest.
    pub cut_edges: Vec<usize>,
}

/// Maximum number of edge-disjoint paths between two vertex sets, capped at
/// `cap`, in the subgraph selected by the masks. Edges have unit capacity.
pub fn unit_flow(
    g: &Graph,
    vmask: Option<&[bool]>,
    emask: Option<&[bool]>,
    sources: &[usize],
    sinks: &[usize],
    cap: usize,
) -> FlowResult {
    let adj = masked_adj(g, vmask, emask);
    let n = g.n();
    let mut is_sink = vec![false; n];
    for &t in sinks {
        is_sink[t] = true;
    }
    // flow[e] in {-1, 0, 1} measured from the lower endpoint to the higher
    let mut flow = vec![0i8; g.m()];
    let residual = |flow: &[i8], e: usize, from: usize| -> bool {
        let (a, _) = g.endpoints(e);
        let dir = if from == a { 1 } else { -1 };
        flow[e] * dir < 1
    };
    let mut value = 0;
    loop {
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        let mut queue = VecDeque::new();
        for &s in sources {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        let mut hit = None;
        while let Some(v) = queue.pop_front() {
            if is_sink[v] {
                hit = Some(v);
                break;
            }
            for &(u, e) in &adj[v] {
                if !seen[u] && residual(&flow, e, v) {
                    seen[u] = true;
                    prev[u] = Some((v, e));
                    queue.push_back(u);
                }
            }
        }
        match hit {
            Some(t) if value < cap => {
                let mut v = t;
                while let Some((p, e)) = prev[v] {
                    let (a, _) = g.endpoints(e);
                    flow[e] += if p == a { 1 } else { -1 };
                    v = p;
                }
                value += 1;
                if value == cap {
                    return FlowResult {
                        value,
                        source_side: seen,
                        cut_edges: Vec::new(),
                    };
                }
            }
            Some(_) => unreachable!("loop exits once the cap is reached"),
            None => {
                let cut_edges = (0..g.m())
                    .filter(|&e| {
                        let (a, b) = g.endpoints(e);
                        adj[a].iter().any(|&(_, f)| f == e) && seen[a] != seen[b]
                    })
                    .collect();
                return FlowResult {
                    value,
                    source_side: seen,
                    cut_edges,
                };
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).unwrap()
    }

    fn k23() -> Graph {
        Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn cycle_is_two_connected() {
        let r = connectivity_report(&cycle(5));
        assert!(r.two_connected && r.two_edge_connected);
        assert!(r.bridges.is_empty());
    }

    #[test]
    fn path_edges_are_bridges() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let r = connectivity_report(&g);
        assert_eq!(r.bridges, vec![0, 1]);
        assert_eq!(r.cut_vertices, vec![1]);
        assert!(!r.two_connected);
    }

    #[test]
    fn two_triangles_with_a_bridge() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (2, 3)]).unwrap();
        let r = connectivity_report(&g);
        assert_eq!(r.bridges, vec![6]);
        assert_eq!(r.cut_vertices, vec![2, 3]);
        assert_eq!(r.blocks.iter().filter(|b| b.len() > 1).count(), 2);
        // brute force: only removing edge 6 disconnects
        for e in 0..g.m() {
            let mut mask = vec![true; g.m()];
            mask[e] = false;
            let disconnected = components(&g, None, Some(&mask)).1 > 1;
            assert_eq!(disconnected, e == 6);
        }
    }

    #[test]
    fn cut_partners() {
        let g = k4();
        assert!((0..6).all(|e| !edge_in_2_edge_cut(&g, e).unwrap()));
        let g = k23();
        // edge 0-2 pairs with 2-1 on the same path
        let e = g.edge_between(0, 2).unwrap();
        assert_eq!(
            two_edge_cut_partners(&g, e).unwrap(),
            vec![g.edge_between(1, 2).unwrap()]
        );
        let path = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            edge_in_2_edge_cut(&path, 0),
            Err(ConnectivityError::NotTwoEdgeConnected)
        );
    }

    #[test]
    fn flow_in_k4() {
        let g = k4();
        assert_eq!(unit_flow(&g, None, None, &[0], &[1], 5).value, 3);
        let mut mask = vec![true; g.m()];
        mask[g.edge_between(0, 1).unwrap()] = false;
        mask[g.edge_between(0, 2).unwrap()] = false;
        let r = unit_flow(&g, None, Some(&mask), &[0], &[1], 5);
        assert_eq!(r.value, 1);
        assert_eq!(r.cut_edges, vec![g.edge_between(0, 3).unwrap()]);
    }

    #[test]
    fn multigraph_connectivity() {
        assert!(multigraph_two_edge_connected(2, &[(0, 1), (0, 1), (0, 1)]));
        assert!(!multigraph_two_edge_connected(3, &[(0, 1), (0, 1), (1, 2)]));
    }
}
