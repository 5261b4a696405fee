//! Short cycles, θ-cycles, diamonds, vertex types and basic-shape recognition.

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::components;
use crate::graph::Graph;

/// Sentinel for "no such cycle" in a [`VertexType`]; larger than any length.
pub const INFINITE: usize = usize::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CycleError {
    #[error("vertex {0} does not have degree three")]
    DegreeNotThree(usize),
}

/// A cycle given by its vertex sequence, together with its exits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycleDescriptor {
    pub vertices: Vec<usize>,
    /// Third neighbor of each cycle vertex, aligned with `vertices`; `None`
    /// for vertices of degree two.
    pub outside: Vec<Option<usize>>,
    pub degree3: usize,
    pub is_theta: bool,
    pub poles: Option<(usize, usize)>,
}

impl CycleDescriptor {
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Self {
        let len = vertices.len();
        let outside: Vec<Option<usize>> = (0..len)
            .map(|i| {
                let prev = vertices[(i + len - 1) % len];
                let next = vertices[(i + 1) % len];
                g.neighbors(vertices[i]).find(|&u| u != prev && u != next)
            })
            .collect();
        let degree3 = outside.iter().filter(|x| x.is_some()).count();
        let mut c = CycleDescriptor {
            vertices,
            outside,
            degree3,
            is_theta: false,
            poles: None,
        };
        if let Some(r) = theta_rotation(g, &c) {
            c.is_theta = true;
            let (a, b) = (c.vertices[(2 + r) % 6], c.vertices[(5 + r) % 6]);
            c.poles = Some((a.min(b), a.max(b)));
        }
        c
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Edge ids of the cycle, edge `i` joining positions `i` and `i + 1`.
    pub fn edges(&self, g: &Graph) -> Vec<usize> {
        cycle_edges(g, &self.vertices)
    }

    /// Exit edge at position `i`, if that vertex has degree three.
    pub fn exit_edge(&self, g: &Graph, i: usize) -> Option<usize> {
        self.outside[i].and_then(|x| g.edge_between(self.vertices[i], x))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }
}

pub fn cycle_edges(g: &Graph, vertices: &[usize]) -> Vec<usize> {
    let len = vertices.len();
    (0..len)
        .map(|i| {
            g.edge_between(vertices[i], vertices[(i + 1) % len])
                .expect("consecutive cycle vertices are adjacent")
        })
        .collect()
}

/// Mask of the vertices outside `cycle`.
pub fn outside_mask(g: &Graph, cycle: &[usize]) -> Vec<bool> {
    let mut mask = vec![true; g.n()];
    for &v in cycle {
        mask[v] = false;
    }
    mask
}

// Rotation r such that the cycle is a θ-cycle with pairs {x1,x2}, {x4,x5},
// {x3,x6} after relabeling v_i = K[(i - 1 + r) % 6].
fn theta_rotation(g: &Graph, c: &CycleDescriptor) -> Option<usize> {
    if c.vertices.len() != 6 || c.degree3 != 6 {
        return None;
    }
    let xs: Vec<usize> = c.outside.iter().map(|x| x.unwrap()).collect();
    for (i, &x) in xs.iter().enumerate() {
        if c.vertices.contains(&x) || xs[..i].contains(&x) {
            return None;
        }
    }
    let mask = outside_mask(g, &c.vertices);
    let (comp, count) = components(g, Some(&mask), None);
    if count != 3 {
        return None;
    }
    let cx: Vec<usize> = xs.iter().map(|&x| comp[x]).collect();
    (0..3).find(|&r| {
        let at = |i: usize| cx[(i - 1 + r) % 6];
        let pairs = [(at(1), at(2)), (at(4), at(5)), (at(3), at(6))];
        pairs.iter().all(|&(a, b)| a == b)
            && pairs[0].0 != pairs[1].0
            && pairs[0].0 != pairs[2].0
            && pairs[1].0 != pairs[2].0
    })
}

/// All cycles with at most `k` vertices of degree three, each reported once,
/// starting at its smallest vertex and oriented towards the smaller of the two
/// neighbors. Sorted by length, then vertex sequence.
pub fn enumerate_cycles_bounded(g: &Graph, k: usize) -> Vec<CycleDescriptor> {
    collect_cycles(g, k, usize::MAX)
}

/// All cycles of length at most `max_len`, in the same canonical form and
/// order as [`enumerate_cycles_bounded`].
pub fn enumerate_short_cycles(g: &Graph, max_len: usize) -> Vec<CycleDescriptor> {
    collect_cycles(g, usize::MAX / 2, max_len)
}

fn collect_cycles(g: &Graph, k: usize, max_len: usize) -> Vec<CycleDescriptor> {
    let mut out = Vec::new();
    for s in 0..g.n() {
        let mut path = vec![s];
        let mut on_path = vec![false; g.n()];
        on_path[s] = true;
        let budget = k as isize - (g.degree(s) == 3) as isize;
        if budget < 0 {
            continue;
        }
        extend(g, s, max_len, &mut path, &mut on_path, budget, &mut out);
    }
    let mut cycles: Vec<CycleDescriptor> = out.into_iter().map(|vs| CycleDescriptor::new(g, vs)).collect();
    cycles.sort_by(|a, b| (a.len(), &a.vertices).cmp(&(b.len(), &b.vertices)));
    cycles
}

fn extend(
    g: &Graph,
    s: usize,
    max_len: usize,
    path: &mut Vec<usize>,
    on_path: &mut [bool],
    budget: isize,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *path.last().unwrap();
    for u in g.neighbors(v) {
        if u == s {
            if path.len() >= 3 && path[1] < v {
                out.push(path.clone());
            }
            continue;
        }
        if u < s || on_path[u] || path.len() >= max_len {
            continue;
        }
        let cost = (g.degree(u) == 3) as isize;
        if budget - cost < 0 {
            continue;
        }
        on_path[u] = true;
        path.push(u);
        extend(g, s, max_len, path, on_path, budget - cost, out);
        path.pop();
        on_path[u] = false;
    }
}

/// All θ-cycles of the graph.
pub fn detect_theta_cycles(g: &Graph) -> Vec<CycleDescriptor> {
    enumerate_cycles_bounded(g, 6)
        .into_iter()
        .filter(|c| c.is_theta)
        .collect()
}

/// Induced diamonds as `[a, b, c, d]`: `a < b` are the two vertices of
/// degree two inside the diamond, `c < d` the adjacent pair.
pub fn detect_diamonds(g: &Graph) -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for &(c, d) in g.edges() {
        let common: Vec<usize> = g.neighbors(c).filter(|&u| u != d && g.has_edge(u, d)).collect();
        if common.len() == 2 && !g.has_edge(common[0], common[1]) {
            let (a, b) = (common[0].min(common[1]), common[0].max(common[1]));
            out.push([a, b, c, d]);
        }
    }
    out.sort_unstable();
    out
}

/// Sorted triple of shortest cycle lengths through each pair of edges at a
/// degree-three vertex. Missing cycles are [`INFINITE`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct VertexType(pub [usize; 3]);

impl VertexType {
    /// Coordinatewise domination.
    pub fn dominates(&self, other: &VertexType) -> bool {
        (0..3).all(|i| self.0[i] >= other.0[i])
    }
}

pub fn vertex_type(g: &Graph, v: usize) -> Result<VertexType, CycleError> {
    if g.degree(v) != 3 {
        return Err(CycleError::DegreeNotThree(v));
    }
    let nb: Vec<usize> = g.neighbors(v).collect();
    let mut t = [0; 3];
    for (slot, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
        t[slot] = match distance_avoiding(g, nb[i], nb[j], v) {
            Some(d) => d + 2,
            None => INFINITE,
        };
    }
    t.sort_unstable();
    Ok(VertexType(t))
}

fn distance_avoiding(g: &Graph, a: usize, b: usize, avoid: usize) -> Option<usize> {
    let mut dist = vec![usize::MAX; g.n()];
    dist[a] = 0;
    let mut queue = VecDeque::from([a]);
    while let Some(x) = queue.pop_front() {
        if x == b {
            return Some(dist[x]);
        }
        for u in g.neighbors(x) {
            if u != avoid && dist[u] == usize::MAX {
                dist[u] = dist[x] + 1;
                queue.push_back(u);
            }
        }
    }
    None
}

/// Basic-shape classification of a 2-connected subcubic graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Shape {
    Cycle,
    K4,
    /// Numbers of internal vertices on the three paths, sorted.
    Theta(usize, usize, usize),
    Other,
}

pub fn classify_shape(g: &Graph) -> Shape {
    let branch: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 3).collect();
    if branch.is_empty() {
        return Shape::Cycle;
    }
    if g.n() == 4 && g.m() == 6 {
        return Shape::K4;
    }
    if branch.len() == 2 && (0..g.n()).all(|v| g.degree(v) >= 2) {
        let (s, t) = (branch[0], branch[1]);
        let mut k: Vec<usize> = Vec::new();
        for &(first, _) in g.incident(s) {
            let (mut prev, mut cur, mut count) = (s, first, 0);
            while g.degree(cur) == 2 {
                let next = g.neighbors(cur).find(|&u| u != prev).unwrap();
                prev = cur;
                cur = next;
                count += 1;
            }
            if cur != t {
                return Shape::Other;
            }
            k.push(count);
        }
        k.sort_unstable();
        return Shape::Theta(k[0], k[1], k[2]);
    }
    Shape::Other
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    /// Exhaustive cycle enumeration over all vertex subsets' Hamiltonian
    /// orderings would be too slow; instead walk all simple paths.
    fn brute_cycles(g: &Graph, k: usize) -> Vec<Vec<usize>> {
        let mut all = Vec::new();
        fn go(g: &Graph, path: &mut Vec<usize>, all: &mut Vec<Vec<usize>>) {
            let v = *path.last().unwrap();
            for u in g.neighbors(v) {
                if u == path[0] && path.len() >= 3 {
                    all.push(path.clone());
                } else if !path.contains(&u) {
                    path.push(u);
                    go(g, path, all);
                    path.pop();
                }
            }
        }
        for s in 0..g.n() {
            go(g, &mut vec![s], &mut all);
        }
        let mut canon: Vec<Vec<usize>> = all
            .into_iter()
            .filter(|c| c.iter().filter(|&&v| g.degree(v) == 3).count() <= k)
            .map(|mut c| {
                let p = c.iter().position(|&v| v == *c.iter().min().unwrap()).unwrap();
                c.rotate_left(p);
                if c[1] > c[c.len() - 1] {
                    c[1..].reverse();
                }
                c
            })
            .collect();
        canon.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        canon.dedup();
        canon
    }

    #[test]
    fn k4_triangles() {
        let c = enumerate_cycles_bounded(&named::k4(), 3);
        assert_eq!(c.len(), 4);
        assert!(c.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn petersen_has_no_cycle_with_four_branch_vertices() {
        assert!(enumerate_cycles_bounded(&named::petersen(), 4).is_empty());
        assert_eq!(enumerate_cycles_bounded(&named::petersen(), 5).len(), 12);
    }

    #[test]
    fn k23_four_cycles() {
        let c = enumerate_cycles_bounded(&named::k23(), 2);
        assert_eq!(c.len(), 3);
        assert!(c.iter().all(|c| c.len() == 4 && c.degree3 == 2));
    }

    #[test]
    fn matches_brute_force() {
        for g in [
            named::petersen(),
            named::prism(),
            named::k33(),
            named::k23(),
            named::cube(),
        ] {
            for k in 0..=7 {
                let fast: Vec<Vec<usize>> = enumerate_cycles_bounded(&g, k)
                    .into_iter()
                    .map(|c| c.vertices)
                    .collect();
                assert_eq!(fast, brute_cycles(&g, k), "{g:?} k={k}");
                assert!(fast.len() <= 3 * (1 << (k.max(1) - 1)) * g.n());
            }
            for len in 3..=8 {
                let short: Vec<Vec<usize>> = enumerate_short_cycles(&g, len)
                    .into_iter()
                    .map(|c| c.vertices)
                    .collect();
                let expected: Vec<Vec<usize>> = brute_cycles(&g, 10).into_iter().filter(|c| c.len() <= len).collect();
                assert_eq!(short, expected, "len={len}");
            }
        }
    }

    #[test]
    fn theta_cycle_with_poles() {
        let g = named::theta_cycle_example();
        let t = detect_theta_cycles(&g);
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].vertices, vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(t[0].poles, Some((2, 5)));
        assert!(detect_theta_cycles(&named::k4()).is_empty());
        assert!(detect_theta_cycles(&named::petersen()).is_empty());
    }

    #[test]
    fn diamonds() {
        assert!(detect_diamonds(&named::k4()).is_empty());
        assert_eq!(detect_diamonds(&named::two_diamonds()).len(), 2);
    }

    #[test]
    fn types() {
        let k4 = named::k4();
        assert_eq!(vertex_type(&k4, 0).unwrap(), VertexType([3, 3, 3]));
        let p = named::petersen();
        for v in 0..10 {
            assert_eq!(vertex_type(&p, v).unwrap(), VertexType([5, 5, 5]));
        }
        assert_eq!(vertex_type(&named::k23(), 2), Err(CycleError::DegreeNotThree(2)));
        assert!(VertexType([6, 8, 8]).dominates(&VertexType([6, 7, 8])));
        assert!(!VertexType([6, 6, 6]).dominates(&VertexType([6, 7, 7])));
    }

    #[test]
    fn shapes() {
        assert_eq!(classify_shape(&named::cycle(7)), Shape::Cycle);
        assert_eq!(classify_shape(&named::k23()), Shape::Theta(1, 1, 1));
        assert_eq!(classify_shape(&named::k4()), Shape::K4);
        assert_eq!(classify_shape(&named::prism()), Shape::Other);
        let g = Graph::new(5, &[(0, 1), (0, 2), (2, 1), (0, 3), (3, 4), (4, 1)]).unwrap();
        assert_eq!(classify_shape(&g), Shape::Theta(0, 1, 2));
    }
}
