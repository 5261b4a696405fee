//! Instance factories: named graphs, the lower-bound replacement families,
//! and seeded random 2-connected subcubic graphs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::connectivity::is_two_connected;
use crate::cycles::detect_diamonds;
use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("vertex {0} does not have degree two")]
    NotDegreeTwo(usize),
    #[error("{0:?} is not an induced diamond of a cubic graph")]
    NotDiamond([usize; 4]),
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
}

/// Small named graphs used throughout tests and examples.
pub mod named {
    use crate::graph::Graph;

    pub fn cycle(n: usize) -> Graph {
        let e: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &e).expect("cycle on at least three vertices")
    }

    pub fn k4() -> Graph {
        Graph::new(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    /// Parts `{0, 1}` and `{2, 3, 4}`.
    pub fn k23() -> Graph {
        Graph::new(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap()
    }

    pub fn k33() -> Graph {
        let mut e = Vec::new();
        for a in 0..3 {
            for b in 3..6 {
                e.push((a, b));
            }
        }
        Graph::new(6, &e).unwrap()
    }

    /// Triangles `0 1 2` and `3 4 5` joined by a perfect matching.
    pub fn prism() -> Graph {
        Graph::new(
            6,
            &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)],
        )
        .unwrap()
    }

    pub fn cube() -> Graph {
        let mut e = Vec::new();
        for v in 0..8usize {
            for bit in [1, 2, 4] {
                if v & bit == 0 {
                    e.push((v, v | bit));
                }
            }
        }
        Graph::new(8, &e).unwrap()
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i`–`i+5`.
    pub fn petersen() -> Graph {
        let mut e = Vec::new();
        for i in 0..5 {
            e.push((i, (i + 1) % 5));
            e.push((5 + i, 5 + (i + 2) % 5));
            e.push((i, i + 5));
        }
        Graph::new(10, &e).unwrap()
    }

    /// Two branch vertices `0` and `1` joined by paths with `k1`, `k2`, `k3`
    /// internal vertices.
    pub fn theta(k1: usize, k2: usize, k3: usize) -> Graph {
        let mut e = Vec::new();
        let mut next = 2;
        for k in [k1, k2, k3] {
            let mut prev = 0;
            for _ in 0..k {
                e.push((prev, next));
                prev = next;
                next += 1;
            }
            e.push((prev, 1));
        }
        Graph::new(next, &e).expect("at most one trivial path")
    }

    /// Cubic graph on 18 vertices with a θ-cycle `0..6` whose poles are 2
    /// and 5; each pair of exits leads into its own diamond.
    pub fn theta_cycle_example() -> Graph {
        let mut e: Vec<(usize, usize)> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        // (cycle vertex, cycle vertex) attached to one diamond each
        for (k, (p, q)) in [(0, 1), (3, 4), (2, 5)].into_iter().enumerate() {
            let base = 6 + 4 * k;
            let (x, y, a, b) = (base, base + 1, base + 2, base + 3);
            e.extend([(p, x), (q, y), (x, a), (x, b), (y, a), (y, b), (a, b)]);
        }
        Graph::new(18, &e).unwrap()
    }

    /// Two diamonds whose degree-two vertices are joined crosswise; the base
    /// of the diamond replacement family.
    pub fn two_diamonds() -> Graph {
        Graph::new(
            8,
            &[
                (0, 2),
                (0, 3),
                (1, 2),
                (1, 3),
                (2, 3),
                (4, 6),
                (4, 7),
                (5, 6),
                (5, 7),
                (6, 7),
                (0, 4),
                (1, 5),
            ],
        )
        .unwrap()
    }
}

/// Replaces a degree-two vertex `v` with neighbors `x < y` by a 4-cycle
/// `v1 v2 v3 v4` attached through `x v1` and `y v3`. Vertex `v` keeps its id
/// as `v1`; `v2`, `v3`, `v4` get ids `n`, `n + 1`, `n + 2`.
pub fn drepl(g: &Graph, v: usize) -> Result<Graph, GenError> {
    if v >= g.n() || g.degree(v) != 2 {
        return Err(GenError::NotDegreeTwo(v));
    }
    let nb: Vec<usize> = g.neighbors(v).collect();
    let (x, y) = (nb[0], nb[1]);
    let n = g.n();
    let (v2, v3, v4) = (n, n + 1, n + 2);
    let mut e: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(a, b)| a != v && b != v).collect();
    e.extend([(x, v), (v, v2), (v2, v3), (v3, v4), (v4, v), (v3, y)]);
    Ok(Graph::new(n + 3, &e).expect("replacement keeps the graph simple and subcubic"))
}

/// Replaces an induced diamond `[a, b, c, d]` of a cubic graph by the
/// twelve-vertex gadget with two diamonds. Kept vertices are renumbered in
/// order; the gadget vertices follow as
/// `z1 u1 v11 w11 w12 v12 u2 z2 v21 w21 v22 w22`.
pub fn qrepl(g: &Graph, d: [usize; 4]) -> Result<Graph, GenError> {
    if !g.is_cubic() || !detect_diamonds(g).contains(&d) {
        return Err(GenError::NotDiamond(d));
    }
    let [a, b, c, dd] = d;
    let outside = |v: usize| g.neighbors(v).find(|&u| u != c && u != dd).unwrap();
    let (x1, x2) = (outside(a), outside(b));
    let removed = |v: usize| d.contains(&v);
    let mut id = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if !removed(v) {
            id[v] = next;
            next += 1;
        }
    }
    let mut e: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(p, q)| !removed(p) && !removed(q))
        .map(|&(p, q)| (id[p], id[q]))
        .collect();
    let [z1, u1, v11, w11, w12, v12, u2, z2, v21, w21, v22, w22]: [usize; 12] = std::array::from_fn(|i| next + i);
    e.extend([
        (id[x1], z1),
        (z1, u1),
        (u1, v11),
        (v11, w11),
        (w11, w12),
        (w12, v12),
        (v12, u2),
        (u2, z2),
        (z2, id[x2]),
        (z1, z2),
        (v11, w12),
        (v12, w11),
        (v21, w21),
        (w21, v22),
        (v22, w22),
        (w22, v21),
        (w21, w22),
        (u1, v21),
        (u2, v22),
    ]);
    Ok(Graph::new(next + 12, &e).expect("gadget keeps the graph simple and cubic"))
}

/// `t`-fold 4-cycle replacement starting from K2,3, always at the newest
/// degree-two vertex: `n = 5 + 3t`.
pub fn family_drepl(t: usize) -> Graph {
    let mut g = named::k23();
    let mut v = 2;
    for _ in 0..t {
        let n = g.n();
        g = drepl(&g, v).expect("chosen vertex has degree two");
        v = n;
    }
    g
}

/// `t`-fold diamond replacement starting from two joined diamonds, always at
/// the first detected diamond: `n = 8 + 8t`.
pub fn family_qrepl(t: usize) -> Graph {
    let mut g = named::two_diamonds();
    for _ in 0..t {
        let d = detect_diamonds(&g)[0];
        g = qrepl(&g, d).expect("detected diamond is valid");
    }
    g
}

const MAX_ATTEMPTS: usize = 10_000;

/// Random 2-connected cubic graph on `n` vertices: pairing model with
/// rejection of loops, parallel edges and graphs that are not 2-connected.
pub fn random_cubic(n: usize, rng: &mut ChaCha8Rng) -> Result<Graph, GenError> {
    if n < 4 || n % 2 == 1 {
        return Err(GenError::Infeasible(format!("no cubic graph on {n} vertices")));
    }
    let mut points: Vec<usize> = (0..3 * n).map(|p| p / 3).collect();
    for _ in 0..MAX_ATTEMPTS {
        points.shuffle(rng);
        let e: Vec<(usize, usize)> = points.chunks(2).map(|p| (p[0], p[1])).collect();
        if let Ok(g) = Graph::new(n, &e) {
            if is_two_connected(&g) {
                return Ok(g);
            }
        }
    }
    Err(GenError::Infeasible(format!("rejection sampling failed for n={n}")))
}

/// Subdivides `count` uniformly chosen edges one after another.
fn subdivide_random(g: &Graph, count: usize, rng: &mut ChaCha8Rng) -> Graph {
    let mut n = g.n();
    let mut e = g.edges().to_vec();
    for _ in 0..count {
        let i = rng.gen_range(0..e.len());
        let (a, b) = e[i];
        e[i] = (a, n);
        e.push((n, b));
        n += 1;
    }
    Graph::new(n, &e).expect("subdivision keeps the graph simple")
}

/// Random 2-connected subcubic graph with `n` vertices of which `n2` have
/// degree two. Deterministic for a fixed seed.
pub fn random_subcubic(n: usize, n2: usize, seed: u64) -> Result<Graph, GenError> {
    let cubic = n
        .checked_sub(n2)
        .ok_or_else(|| GenError::Infeasible(format!("n2={n2} exceeds n={n}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let g = random_cubic(cubic, &mut rng)?;
    Ok(subdivide_random(&g, n2, &mut rng))
}

/// Random connected cubic graph with bridges: one 2-connected cubic block per
/// entry of `block_sizes`, joined along a random tree of bridges. Each bridge
/// end sits on a fresh subdivision vertex of its block.
pub fn random_bridged_cubic(block_sizes: &[usize], seed: u64) -> Result<Graph, GenError> {
    let k = block_sizes.len();
    if k < 2 {
        return Err(GenError::Infeasible("need at least two blocks".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let parent: Vec<usize> = (1..k).map(|i| rng.gen_range(0..i)).collect();
    let mut tree_degree = vec![0; k];
    for (i, &p) in parent.iter().enumerate() {
        tree_degree[i + 1] += 1;
        tree_degree[p] += 1;
    }
    let mut edges = Vec::new();
    let mut offset = 0;
    // attachment vertices still free in each block
    let mut ports: Vec<Vec<usize>> = Vec::new();
    for (b, &size) in block_sizes.iter().enumerate() {
        let block = random_cubic(size, &mut rng)?;
        let sub = subdivide_random(&block, tree_degree[b], &mut rng);
        edges.extend(sub.edges().iter().map(|&(x, y)| (x + offset, y + offset)));
        ports.push((size..sub.n()).map(|v| v + offset).collect());
        offset += sub.n();
    }
    for (i, &p) in parent.iter().enumerate() {
        let a = ports[i + 1].pop().unwrap();
        let b = ports[p].pop().unwrap();
        edges.push((a, b));
    }
    Ok(Graph::new(offset, &edges).expect("bridged construction is simple and cubic"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::connectivity_report;

    #[test]
    fn drepl_sizes() {
        let g = drepl(&named::k23(), 2).unwrap();
        assert_eq!((g.n(), g.n2()), (8, 4));
        assert!(is_two_connected(&g));
        let g = family_drepl(2);
        assert_eq!((g.n(), g.n2()), (11, 5));
        assert_eq!(drepl(&named::k23(), 0), Err(GenError::NotDegreeTwo(0)));
    }

    #[test]
    fn qrepl_sizes() {
        let g = family_qrepl(1);
        assert_eq!(g.n(), 16);
        assert!(g.is_cubic());
        assert!(is_two_connected(&g));
        assert!(detect_diamonds(&g).len() >= 2);
        assert_eq!(family_qrepl(2).n(), 24);
        assert!(matches!(
            qrepl(&named::two_diamonds(), [0, 2, 1, 3]),
            Err(GenError::NotDiamond(_))
        ));
    }

    #[test]
    fn random_graphs() {
        let g = random_subcubic(4, 0, 1).unwrap();
        assert_eq!(g.sorted_edges(), named::k4().sorted_edges());
        let g = random_subcubic(10, 0, 7).unwrap();
        assert!(g.is_cubic() && connectivity_report(&g).two_connected);
        assert!(matches!(random_subcubic(9, 0, 1), Err(GenError::Infeasible(_))));
        let g = random_subcubic(30, 8, 3).unwrap();
        assert_eq!((g.n(), g.n2()), (30, 8));
        assert!(is_two_connected(&g));
        assert_eq!(g, random_subcubic(30, 8, 3).unwrap());
    }

    #[test]
    fn bridged_graphs() {
        let g = random_bridged_cubic(&[4, 4], 0).unwrap();
        assert_eq!(g.n(), 10);
        assert!(g.is_cubic());
        assert_eq!(connectivity_report(&g).bridges.len(), 1);
    }
}
