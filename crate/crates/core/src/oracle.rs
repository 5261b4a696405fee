//! Brute-force ground truth for small graphs and verifiers for walks,
//! decompositions and reduction steps.

use num::{BigInt, BigRational, One};
use thiserror::Error;

use crate::eulerian::EulerianSubgraph;
use crate::graph::{Graph, Multigraph};
use crate::matching::{verify_uniform, MatchingDecomposition};
use crate::reduction::ReductionStep;
use crate::walk::TspWalk;

pub const DEFAULT_ENUMERATION_LIMIT: usize = 16;
pub const DEFAULT_MULTIGRAPH_LIMIT: usize = 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("graph is not connected")]
    NotConnected,
    #[error("oracle routes disagree: excess route {excess_route}, multigraph route {multigraph_route}")]
    OracleMismatch {
        excess_route: usize,
        multigraph_route: usize,
    },
}

/// Named reason a verification failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure(pub String);

impl std::fmt::Display for Failure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

fn check_size(g: &Graph, limit: usize) -> Result<(), OracleError> {
    if g.n() > limit {
        Err(OracleError::TooLarge { n: g.n(), limit })
    } else {
        Ok(())
    }
}

/// Calls `visit` on every spanning Eulerian subgraph, built as packings of
/// vertex-disjoint cycles: the smallest undecided vertex is either isolated
/// or the smallest vertex of a cycle through undecided vertices.
pub fn visit_eulerian(g: &Graph, limit: usize, mut visit: impl FnMut(&EulerianSubgraph)) -> Result<(), OracleError> {
    check_size(g, limit)?;
    let mut used = vec![false; g.n()];
    let mut edges = Vec::new();
    pack(g, 0, &mut used, &mut edges, &mut visit);
    Ok(())
}

fn pack(
    g: &Graph,
    from: usize,
    used: &mut Vec<bool>,
    edges: &mut Vec<usize>,
    visit: &mut impl FnMut(&EulerianSubgraph),
) {
    let Some(v) = (from..g.n()).find(|&v| !used[v]) else {
        visit(&EulerianSubgraph::new(g, edges.iter().copied()).expect("cycle packing"));
        return;
    };
    used[v] = true;
    pack(g, v + 1, used, edges, visit);
    // cycles whose smallest vertex is v, oriented by their second vertex
    let mut path = vec![v];
    let mut path_edges = Vec::new();
    cycles_from(
        g,
        v,
        &mut path,
        &mut path_edges,
        used,
        &mut |cycle_edges, cycle_vertices, used| {
            for &u in cycle_vertices {
                used[u] = true;
            }
            let before = edges.len();
            edges.extend_from_slice(cycle_edges);
            pack(g, v + 1, used, edges, visit);
            edges.truncate(before);
            for &u in &cycle_vertices[1..] {
                used[u] = false;
            }
        },
    );
    used[v] = false;
}

fn cycles_from(
    g: &Graph,
    s: usize,
    path: &mut Vec<usize>,
    path_edges: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut impl FnMut(&[usize], &[usize], &mut Vec<bool>),
) {
    let v = *path.last().unwrap();
    for &(u, e) in g.incident(v) {
        if u == s && path.len() >= 3 && path[1] < v {
            path_edges.push(e);
            found(path_edges, path, used);
            path_edges.pop();
        } else if u > s && !used[u] && !path.contains(&u) {
            path.push(u);
            path_edges.push(e);
            cycles_from(g, s, path, path_edges, used, found);
            path.pop();
            path_edges.pop();
        }
    }
}

/// All spanning Eulerian subgraphs.
pub fn enumerate_eulerian(g: &Graph, limit: usize) -> Result<Vec<EulerianSubgraph>, OracleError> {
    let mut out = Vec::new();
    visit_eulerian(g, limit, |f| out.push(f.clone()))?;
    Ok(out)
}

/// Minimum excess over all spanning Eulerian subgraphs.
pub fn minexc_bruteforce(g: &Graph) -> Result<usize, OracleError> {
    let mut best = usize::MAX;
    visit_eulerian(g, DEFAULT_ENUMERATION_LIMIT, |f| best = best.min(f.excess()))?;
    Ok(best)
}

/// Fewest edges of a connected spanning Eulerian multigraph using each edge
/// of `g` at most twice. Edges used once form an even subgraph S, taken from
/// the cycle space; the doubled edges must connect the components of S, so
/// at best they form a spanning tree of `g` with S contracted.
pub fn min_eulerian_multigraph(g: &Graph) -> Result<usize, OracleError> {
    check_size(g, DEFAULT_MULTIGRAPH_LIMIT)?;
    if !crate::connectivity::is_connected(g) {
        return Err(OracleError::NotConnected);
    }
    let basis = cycle_space_basis(g);
    assert!(g.m() <= 64, "edge sets are stored in a u64");
    let mut best = usize::MAX;
    for pick in 0u64..(1u64 << basis.len()) {
        let mut s = 0u64;
        for (i, &b) in basis.iter().enumerate() {
            if pick >> i & 1 == 1 {
                s ^= b;
            }
        }
        let single = s.count_ones() as usize;
        let doubled = tree_edges_after_contracting(g, s);
        best = best.min(single + 2 * doubled);
    }
    Ok(best)
}

/// Fundamental cycles of a BFS tree, as edge bitsets.
fn cycle_space_basis(g: &Graph) -> Vec<u64> {
    let mut parent_edge = vec![usize::MAX; g.n()];
    let mut depth = vec![usize::MAX; g.n()];
    let mut parent = vec![usize::MAX; g.n()];
    let mut tree = vec![false; g.m()];
    depth[0] = 0;
    let mut queue = std::collections::VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for &(u, e) in g.incident(v) {
            if depth[u] == usize::MAX {
                depth[u] = depth[v] + 1;
                parent[u] = v;
                parent_edge[u] = e;
                tree[e] = true;
                queue.push_back(u);
            }
        }
    }
    (0..g.m())
        .filter(|&e| !tree[e])
        .map(|e| {
            let (mut a, mut b) = g.endpoints(e);
            let mut set = 1u64 << e;
            while a != b {
                if depth[a] < depth[b] {
                    std::mem::swap(&mut a, &mut b);
                }
                set ^= 1u64 << parent_edge[a];
                a = parent[a];
            }
            set
        })
        .collect()
}

fn tree_edges_after_contracting(g: &Graph, s: u64) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut classes = g.n();
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
            true
        } else {
            false
        }
    };
    for e in (0..g.m()).filter(|&e| s >> e & 1 == 1) {
        let (a, b) = g.endpoints(e);
        if union(&mut parent, a, b) {
            classes -= 1;
        }
    }
    classes - 1
}

/// Shortest TSP walk length, computed as `n - 2 + minexc` and independently
/// as the smallest connected spanning Eulerian multigraph; the two must agree.
pub fn tsp_bruteforce(g: &Graph) -> Result<usize, OracleError> {
    let multigraph_route = min_eulerian_multigraph(g)?;
    let excess_route = g.n() - 2 + minexc_bruteforce(g)?;
    if excess_route != multigraph_route {
        return Err(OracleError::OracleMismatch {
            excess_route,
            multigraph_route,
        });
    }
    Ok(excess_route)
}

/// Closed, consecutive vertices adjacent, every vertex visited.
pub fn verify_walk(g: &Graph, w: &TspWalk) -> Result<(), Failure> {
    let vs = &w.vertices;
    if vs.is_empty() {
        return Err(Failure("empty walk".into()));
    }
    if vs[0] != vs[vs.len() - 1] {
        return Err(Failure("walk is not closed".into()));
    }
    let mut seen = vec![false; g.n()];
    for (i, &v) in vs.iter().enumerate() {
        if v >= g.n() {
            return Err(Failure(format!("vertex {v} does not exist")));
        }
        seen[v] = true;
        if i > 0 && !g.has_edge(vs[i - 1], v) {
            return Err(Failure(format!("non-edge {}-{v} at position {i}", vs[i - 1])));
        }
    }
    match seen.iter().position(|&s| !s) {
        Some(v) => Err(Failure(format!("uncovered vertex {v}"))),
        None => Ok(()),
    }
}

/// Exact uniform decomposition, coefficients summing to one, positive, and
/// at most `n/2 + 2` matchings.
pub fn verify_decomposition(mg: &Multigraph, d: &MatchingDecomposition) -> Result<(), Failure> {
    verify_uniform(mg, d).map_err(|e| Failure(e.to_string()))?;
    let total: BigRational = d.coefficients.iter().sum();
    if total != BigRational::one() {
        return Err(Failure(format!("coefficients sum to {total}")));
    }
    if d.coefficients
        .iter()
        .any(|a| *a <= BigRational::from_integer(BigInt::from(0)))
    {
        return Err(Failure("non-positive coefficient".into()));
    }
    if d.matchings.len() > mg.n() / 2 + 2 {
        return Err(Failure(format!("{} matchings exceed n/2 + 2", d.matchings.len())));
    }
    Ok(())
}

/// Lifts every spanning Eulerian subgraph of `step.after` and checks the
/// result spans `step.before` with excess at most `exc(F') + delta/4`.
pub fn verify_step(step: &ReductionStep, limit: usize) -> Result<usize, Failure> {
    if !crate::connectivity::is_two_connected(&step.after) {
        return Err(Failure("reduced graph is not 2-connected".into()));
    }
    if step.after.n() >= step.before.n() {
        return Err(Failure("reduced graph is not smaller".into()));
    }
    if step.before.weight() < step.after.weight() || step.before.weight() - step.after.weight() != step.delta {
        return Err(Failure("delta does not match n + n2".into()));
    }
    let mut checked = 0;
    let mut failure = None;
    visit_eulerian(&step.after, limit, |f| {
        if failure.is_some() {
            return;
        }
        checked += 1;
        match step.lift(f) {
            Ok(out) => {
                if let Err(e) = out.subgraph.validate(&step.before) {
                    failure = Some(format!("lifted subgraph invalid: {e}"));
                } else if 4 * out.subgraph.excess() > 4 * f.excess() + step.delta {
                    failure = Some(format!("excess {} from {}", out.subgraph.excess(), f.excess()));
                }
            }
            Err(e) => failure = Some(format!("lift of {:?} failed: {e}", f.edges())),
        }
    })
    .map_err(|e| Failure(e.to_string()))?;
    match failure {
        Some(f) => Err(Failure(f)),
        None => Ok(checked),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    #[test]
    fn counts() {
        assert_eq!(enumerate_eulerian(&named::cycle(4), 16).unwrap().len(), 2);
        assert_eq!(enumerate_eulerian(&named::k4(), 16).unwrap().len(), 8);
        assert_eq!(enumerate_eulerian(&named::k23(), 16).unwrap().len(), 4);
    }

    #[test]
    fn even_subgraph_count_matches_cycle_space() {
        for g in [named::petersen(), named::prism(), named::cube(), named::k33()] {
            let count = enumerate_eulerian(&g, 16).unwrap().len();
            assert_eq!(count, 1 << (g.m() - g.n() + 1));
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(minexc_bruteforce(&named::k4()).unwrap(), 2);
        assert_eq!(minexc_bruteforce(&named::petersen()).unwrap(), 3);
        assert_eq!(minexc_bruteforce(&named::k23()).unwrap(), 3);
        assert_eq!(tsp_bruteforce(&named::cycle(5)).unwrap(), 5);
        assert_eq!(tsp_bruteforce(&named::petersen()).unwrap(), 11);
    }

    #[test]
    fn size_limit() {
        let g = named::cycle(20);
        assert!(matches!(minexc_bruteforce(&g), Err(OracleError::TooLarge { .. })));
    }

    #[test]
    fn walk_verifier_reports_the_problem() {
        let g = named::cycle(5);
        let ok = TspWalk {
            vertices: vec![0, 1, 2, 3, 4, 0],
        };
        assert!(verify_walk(&g, &ok).is_ok());
        let short = TspWalk {
            vertices: vec![0, 1, 0],
        };
        assert_eq!(verify_walk(&g, &short).unwrap_err().0, "uncovered vertex 2");
        let jump = TspWalk {
            vertices: vec![0, 2, 0],
        };
        assert!(verify_walk(&g, &jump).unwrap_err().0.starts_with("non-edge"));
    }
}
