//! Construction of reduced graphs around a witness cycle.
//!
//! Every construction removes some vertices, optionally deletes or
//! subdivides edges, and adds fresh vertices and edges. Edges of the reduced
//! graph whose endpoints both survive keep a link to the original edge so
//! that Eulerian subgraphs can be carried back.

use crate::connectivity::{components, is_two_connected, unit_flow, CutIndex};
use crate::cycles::{cycle_edges, outside_mask, CycleDescriptor};
use crate::graph::Graph;

/// Vertex handle while building: an original vertex or a fresh one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum V {
    Old(usize),
    New(usize),
}

/// A validated reduced graph together with what the lift needs.
#[derive(Debug, Clone)]
pub(crate) struct Candidate {
    pub after: Graph,
    /// For each edge of `after`, the original edge it continues, if any.
    pub inherited: Vec<Option<usize>>,
    /// Original edges the lift may choose freely.
    pub region: Vec<usize>,
    pub case_tag: String,
}

pub(crate) struct Builder<'a> {
    g: &'a Graph,
    removed: Vec<bool>,
    deleted: Vec<bool>,
    fresh: usize,
    added: Vec<(V, V)>,
    witness: Vec<usize>,
}

impl<'a> Builder<'a> {
    /// Starts from `g` with the vertices of `witness` marked as the region
    /// whose incident edges the lift may re-choose.
    pub fn new(g: &'a Graph, witness: &[usize]) -> Self {
        Builder {
            g,
            removed: vec![false; g.n()],
            deleted: vec![false; g.m()],
            fresh: 0,
            added: Vec::new(),
            witness: witness.to_vec(),
        }
    }

    pub fn remove(&mut self, vs: &[usize]) -> &mut Self {
        for &v in vs {
            self.removed[v] = true;
        }
        self
    }

    pub fn vertex(&mut self) -> V {
        self.fresh += 1;
        V::New(self.fresh - 1)
    }

    pub fn edge(&mut self, a: V, b: V) -> &mut Self {
        self.added.push((a, b));
        self
    }

    /// Path from `a` to `b` through `k` fresh vertices.
    pub fn path(&mut self, a: V, b: V, k: usize) -> &mut Self {
        let mut prev = a;
        for _ in 0..k {
            let z = self.vertex();
            self.edge(prev, z);
            prev = z;
        }
        self.edge(prev, b)
    }

    pub fn delete_edge(&mut self, e: usize) -> &mut Self {
        self.deleted[e] = true;
        self
    }

    /// Replaces edge `e` by a path through `k` fresh vertices.
    pub fn subdivide(&mut self, e: usize, k: usize) -> &mut Self {
        let (a, b) = self.g.endpoints(e);
        self.delete_edge(e);
        self.path(V::Old(a), V::Old(b), k)
    }

    /// Builds and validates: simple, subcubic, 2-connected, fewer vertices,
    /// and `n + n2` not increased.
    pub fn finish(&self, case_tag: impl Into<String>) -> Option<Candidate> {
        let g = self.g;
        let mut id = vec![usize::MAX; g.n()];
        let mut next = 0;
        for v in 0..g.n() {
            if !self.removed[v] {
                id[v] = next;
                next += 1;
            }
        }
        let kept = next;
        let map = |v: V| match v {
            V::Old(u) => id[u],
            V::New(i) => kept + i,
        };
        let mut edges = Vec::new();
        let mut inherited = Vec::new();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if !self.removed[a] && !self.removed[b] && !self.deleted[e] {
                edges.push((id[a], id[b]));
                inherited.push(Some(e));
            }
        }
        for &(a, b) in &self.added {
            if matches!(a, V::Old(u) if self.removed[u]) || matches!(b, V::Old(u) if self.removed[u]) {
                return None;
            }
            edges.push((map(a), map(b)));
            inherited.push(None);
        }
        let after = Graph::new(kept + self.fresh, &edges).ok()?;
        if after.n() >= g.n() || after.weight() > g.weight() || !is_two_connected(&after) {
            return None;
        }
        let mut in_region = vec![false; g.m()];
        for &v in &self.witness {
            for &(_, e) in g.incident(v) {
                in_region[e] = true;
            }
        }
        let mut carried = vec![false; g.m()];
        for &e in inherited.iter().flatten() {
            carried[e] = true;
        }
        for e in 0..g.m() {
            if !carried[e] {
                in_region[e] = true;
            }
        }
        let region = (0..g.m()).filter(|&e| in_region[e]).collect();
        Some(Candidate {
            after,
            inherited,
            region,
            case_tag: case_tag.into(),
        })
    }
}

/// A cycle read in a fixed direction from a fixed start; `v[i]` and `x[i]`
/// are the 0-based versions of v_{i+1} and x_{i+1}.
#[derive(Debug, Clone)]
pub(crate) struct Labeling {
    pub v: Vec<usize>,
    pub x: Vec<Option<usize>>,
}

impl Labeling {
    pub fn new(k: &CycleDescriptor, start: usize, forward: bool) -> Self {
        let len = k.len();
        let pos = |i: usize| {
            if forward {
                (start + i) % len
            } else {
                (start + len - i % len) % len
            }
        };
        Labeling {
            v: (0..len).map(|i| k.vertices[pos(i)]).collect(),
            x: (0..len).map(|i| k.outside[pos(i)]).collect(),
        }
    }

    pub fn all(k: &CycleDescriptor) -> Vec<Labeling> {
        let mut out = Vec::new();
        for start in 0..k.len() {
            for forward in [true, false] {
                out.push(Labeling::new(k, start, forward));
            }
        }
        out
    }

    /// `x_{i+1}` as a builder handle (1-based index as in the constructions).
    pub fn xv(&self, i: usize) -> V {
        V::Old(self.x[(i - 1) % self.x.len()].expect("vertex of degree three"))
    }

    pub fn xs(&self, i: usize) -> usize {
        self.x[(i - 1) % self.x.len()].expect("vertex of degree three")
    }

    pub fn vs(&self, i: usize) -> usize {
        self.v[(i - 1) % self.v.len()]
    }

    pub fn tag(&self) -> String {
        format!("v1={} v2={}", self.v[0], self.v[1])
    }
}

/// Degree-three positions of a cycle and the internal vertex counts of the
/// segments between consecutive ones (segment `i` runs from branch `i` to
/// branch `i + 1`).
pub(crate) fn branch_segments(k: &CycleDescriptor) -> (Vec<usize>, Vec<usize>) {
    let len = k.len();
    let branch: Vec<usize> = (0..len).filter(|&i| k.outside[i].is_some()).collect();
    let b = branch.len();
    let seg = (0..b)
        .map(|i| {
            if b == 1 {
                len - 1
            } else {
                (branch[(i + 1) % b] + len - branch[i]) % len - 1
            }
        })
        .collect();
    (branch, seg)
}

/// Cycle with at most two vertices of degree three.
pub(crate) fn c2e(g: &Graph, k: &CycleDescriptor) -> Option<Candidate> {
    let (branch, seg) = branch_segments(k);
    if branch.len() != 2 {
        return None;
    }
    let (k1, k2) = (seg[0].min(seg[1]), seg[0].max(seg[1]));
    let (x1, x2) = (k.outside[branch[0]]?, k.outside[branch[1]]?);
    if x1 == x2 {
        return None;
    }
    let mut b = Builder::new(g, &k.vertices);
    if k1 == 0 && k2 == 1 {
        let z = *k.vertices.iter().find(|&&u| g.degree(u) == 2)?;
        b.remove(&[z]);
        b.finish("triangle: drop the degree-two vertex")
    } else {
        b.remove(&k.vertices);
        b.path(V::Old(x1), V::Old(x2), 1);
        b.finish(format!("replace by path x1 w x2 (k1={k1}, k2={k2})"))
    }
}

/// Cycle with exactly three vertices of degree three.
pub(crate) fn c3(g: &Graph, k: &CycleDescriptor) -> Option<Candidate> {
    let (branch, seg) = branch_segments(k);
    if branch.len() != 3 {
        return None;
    }
    let x: Vec<usize> = branch.iter().map(|&p| k.outside[p].unwrap()).collect();
    // path opposite branch i is segment i + 1
    let kk: Vec<usize> = (0..3).map(|i| seg[(i + 1) % 3]).collect();
    for perm in [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]] {
        let [a, b2, c] = perm;
        if !(kk[a] <= kk[b2] && kk[b2] <= kk[c]) {
            continue;
        }
        if kk[c] == 0 && x[b2] == x[c] {
            continue;
        }
        let mut b = Builder::new(g, &k.vertices);
        b.remove(&k.vertices);
        let z = b.vertex();
        b.path(z, V::Old(x[a]), kk[a] + 1);
        b.path(z, V::Old(x[b2]), kk[b2]);
        b.path(z, V::Old(x[c]), kk[c]);
        if let Some(cand) = b.finish(format!("star with paths ({}, {}, {})", kk[a] + 1, kk[b2], kk[c])) {
            return Some(cand);
        }
    }
    None
}

/// Shortest cycle with exactly four vertices of degree three.
pub(crate) fn c4(g: &Graph, k: &CycleDescriptor) -> Option<Candidate> {
    let (branch, seg) = branch_segments(k);
    if branch.len() != 4 {
        return None;
    }
    let len = k.len();
    let total: usize = seg.iter().sum();
    // G_r removes the interiors and edges of segments r and r + 2
    let connected_after_removal = |r: usize| {
        let mut vmask = vec![true; g.n()];
        let mut emask = vec![true; g.m()];
        for s in [r, r + 2] {
            let from = branch[s % 4];
            for step in 0..=seg[s % 4] {
                let a = k.vertices[(from + step) % len];
                let b = k.vertices[(from + step + 1) % len];
                emask[g.edge_between(a, b).unwrap()] = false;
                if step > 0 {
                    vmask[a] = false;
                }
            }
        }
        let kept: Vec<usize> = (0..g.n()).filter(|&v| vmask[v]).collect();
        let mut id = vec![usize::MAX; g.n()];
        for (i, &v) in kept.iter().enumerate() {
            id[v] = i;
        }
        let edges: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .filter(|&(e, &(a, b))| emask[e] && vmask[a] && vmask[b])
            .map(|(_, &(a, b))| (id[a], id[b]))
            .collect();
        Graph::new(kept.len(), &edges).is_ok_and(|h| is_two_connected(&h))
    };
    let r0 = if connected_after_removal(0) {
        0
    } else if connected_after_removal(1) {
        1
    } else {
        return None;
    };
    let mut r = r0;
    let kk = |r: usize, i: usize| seg[(r + i) % 4];
    let xx = |r: usize, i: usize| V::Old(k.outside[branch[(r + i) % 4]].unwrap());
    let mut b = Builder::new(g, &k.vertices);
    b.remove(&k.vertices);
    if kk(r, 0) == 0 && kk(r, 2) == 0 {
        b.path(xx(r, 0), xx(r, 3), 1);
        b.path(xx(r, 1), xx(r, 2), 1);
        b.finish(format!("two paths x1 z1 x4, x2 z2 x3 (k={total})"))
    } else if total >= 2 {
        b.edge(xx(r, 0), xx(r, 3));
        b.edge(xx(r, 1), xx(r, 2));
        b.finish(format!("edges x1x4, x2x3 (k={total})"))
    } else {
        if kk(r, 0) != 1 {
            r += 2;
        }
        b.edge(xx(r, 0), xx(r, 3));
        b.path(xx(r, 1), xx(r, 2), 1);
        b.finish("edge x1x4 and path x2 z x3 (k=1)")
    }
}

/// Cycle of length five or six with five vertices of degree three.
pub(crate) fn c5(g: &Graph, k: &CycleDescriptor) -> Option<Candidate> {
    if k.degree3 != 5 || !(5..=6).contains(&k.len()) {
        return None;
    }
    let labelings: Vec<Labeling> = if k.len() == 5 {
        Labeling::all(k)
    } else {
        let p = (0..6).find(|&i| k.outside[i].is_none())?;
        vec![
            Labeling::new(k, (p + 1) % 6, true),
            Labeling::new(k, (p + 5) % 6, false),
        ]
    };
    for l in &labelings {
        let mut b = Builder::new(g, &k.vertices);
        b.remove(&k.vertices);
        b.edge(l.xv(5), l.xv(1));
        let w = b.vertex();
        for i in [2, 3, 4] {
            b.edge(w, l.xv(i));
        }
        if let Some(c) = b.finish(format!("edge x5x1 and vertex w on x2 x3 x4 ({})", l.tag())) {
            return Some(c);
        }
    }
    for l in &labelings {
        let mut b = Builder::new(g, &k.vertices);
        b.remove(&k.vertices);
        b.edge(l.xv(2), l.xv(5));
        let y = b.vertex();
        b.edge(y, l.xv(1));
        b.edge(y, l.xv(4));
        b.path(y, l.xv(3), usize::from(k.len() == 6));
        if let Some(c) = b.finish(format!("edge x2x5 and vertex y on x1 x3 x4 ({})", l.tag())) {
            return Some(c);
        }
    }
    None
}

/// Everything about a six-cycle of a proper graph the constructions need.
pub(crate) struct SixCycle<'a> {
    pub g: &'a Graph,
    pub k: &'a CycleDescriptor,
    pub cuts: &'a CutIndex,
    /// Component of each vertex in G - V(K).
    pub comp: Vec<usize>,
    pub comp_count: usize,
}

impl<'a> SixCycle<'a> {
    pub fn new(g: &'a Graph, k: &'a CycleDescriptor, cuts: &'a CutIndex) -> Option<Self> {
        if k.len() != 6 || k.degree3 != 6 {
            return None;
        }
        let xs: Vec<usize> = k.outside.iter().map(|x| x.unwrap()).collect();
        for (i, x) in xs.iter().enumerate() {
            if k.vertices.contains(x) || xs[..i].contains(x) {
                return None;
            }
        }
        let mask = outside_mask(g, &k.vertices);
        let (comp, comp_count) = components(g, Some(&mask), None);
        Some(SixCycle {
            g,
            k,
            cuts,
            comp,
            comp_count,
        })
    }

    fn exit(&self, l: &Labeling, i: usize) -> usize {
        self.g.edge_between(l.vs(i), l.xs(i)).unwrap()
    }

    pub fn exit_in_cut(&self, l: &Labeling, i: usize) -> bool {
        self.cuts.in_cut(self.exit(l, i))
    }

    fn base(&self) -> Builder<'a> {
        let mut b = Builder::new(self.g, &self.k.vertices);
        b.remove(&self.k.vertices);
        b
    }

    /// H plus three paths through fresh vertices joining the given pairs.
    fn pairing(&self, l: &Labeling, pairs: [(usize, usize); 3], tag: String) -> Option<Candidate> {
        let mut b = self.base();
        for (p, q) in pairs {
            b.path(l.xv(p), l.xv(q), 1);
        }
        b.finish(tag)
    }

    /// No component of G - V(K) meets both odd- and even-indexed exits.
    pub fn opp3(&self) -> Option<Candidate> {
        let l0 = Labeling::new(self.k, 0, true);
        let mut parity = vec![None; self.g.n()];
        for i in 1..=6 {
            let c = self.comp[l0.xs(i)];
            match parity[c] {
                None => parity[c] = Some(i % 2),
                Some(p) if p != i % 2 => return None,
                _ => {}
            }
        }
        for start in [0, 1] {
            let l = Labeling::new(self.k, start, true);
            let tag = format!("opp3: paths x1x2, x3x4, x5x6 ({})", l.tag());
            if let Some(c) = self.pairing(&l, [(1, 2), (3, 4), (5, 6)], tag) {
                return Some(c);
            }
        }
        None
    }

    /// At most one edge of G \ E(K) separates {v1, v3} from {v2, v4, v5, v6};
    /// identify v1~v5, v2~v4, v3~v6.
    pub fn ob1(&self) -> Option<Candidate> {
        let mut emask = vec![true; self.g.m()];
        for e in cycle_edges(self.g, &self.k.vertices) {
            emask[e] = false;
        }
        for l in Labeling::all(self.k) {
            let flow = unit_flow(
                self.g,
                None,
                Some(&emask),
                &[l.vs(1), l.vs(3)],
                &[l.vs(2), l.vs(4), l.vs(5), l.vs(6)],
                2,
            );
            if flow.value > 1 {
                continue;
            }
            let tag = format!("ob1: identify v1~v5, v2~v4, v3~v6 ({})", l.tag());
            if let Some(c) = self.pairing(&l, [(1, 5), (2, 4), (3, 6)], tag) {
                return Some(c);
            }
        }
        None
    }

    /// The components of x1 and x2 in G - V(K) contain no other exits.
    pub fn ob0(&self) -> Option<Candidate> {
        if self.k.is_theta {
            return None;
        }
        for l in Labeling::all(self.k) {
            let (c1, c2) = (self.comp[l.xs(1)], self.comp[l.xs(2)]);
            if (3..=6).any(|i| {
                let c = self.comp[l.xs(i)];
                c == c1 || c == c2
            }) {
                continue;
            }
            let tag = format!("ob0: paths x1x4, x2x5, x3x6 ({})", l.tag());
            if let Some(c) = self.pairing(&l, [(1, 4), (2, 5), (3, 6)], tag) {
                return Some(c);
            }
            // the rest of G - V(K) splits into parts holding {x3, x6} and
            // {x4, x5} joined by a single edge
            let mut vmask = outside_mask(self.g, &self.k.vertices);
            for v in 0..self.g.n() {
                if vmask[v] && (self.comp[v] == c1 || self.comp[v] == c2) {
                    vmask[v] = false;
                }
            }
            let flow = unit_flow(self.g, Some(&vmask), None, &[l.xs(3), l.xs(6)], &[l.xs(4), l.xs(5)], 2);
            if flow.value != 1 {
                continue;
            }
            let e = flow.cut_edges[0];
            let mut b = self.base();
            b.edge(l.xv(2), l.xv(3));
            b.edge(l.xv(1), l.xv(4));
            b.edge(l.xv(5), l.xv(6));
            b.subdivide(e, 1);
            let tag = format!("ob0: edges x2x3, x1x4, x5x6, subdivide bridge ({})", l.tag());
            if let Some(c) = b.finish(tag) {
                return Some(c);
            }
        }
        None
    }

    /// Exit v1x1 not in a 2-edge-cut: edge x2x6 and a vertex on x3, x4, x5.
    /// Starts are tried in the given order.
    pub fn main(&self, starts: &[usize]) -> Option<Candidate> {
        for &start in starts {
            let l = Labeling::new(self.k, start, true);
            if self.exit_in_cut(&l, 1) {
                continue;
            }
            let mut b = self.base();
            b.edge(l.xv(2), l.xv(6));
            let z = b.vertex();
            for i in [3, 4, 5] {
                b.edge(z, l.xv(i));
            }
            if let Some(c) = b.finish(format!("main: edge x2x6, vertex z on x3 x4 x5 ({})", l.tag())) {
                return Some(c);
            }
        }
        None
    }

    /// Opposite exits v1x1 and v4x4 not in 2-edge-cuts and G - V(K) split by
    /// one edge into connected parts holding {x1, x2, x6} and {x3, x4, x5}.
    pub fn no2e(&self) -> Option<Candidate> {
        if self.comp_count != 1 {
            return None;
        }
        let vmask = outside_mask(self.g, &self.k.vertices);
        for start in 0..6 {
            let l = Labeling::new(self.k, start, true);
            if self.exit_in_cut(&l, 1) || self.exit_in_cut(&l, 4) {
                continue;
            }
            let flow = unit_flow(
                self.g,
                Some(&vmask),
                None,
                &[l.xs(1), l.xs(2), l.xs(6)],
                &[l.xs(3), l.xs(4), l.xs(5)],
                2,
            );
            if flow.value != 1 {
                continue;
            }
            let e = flow.cut_edges[0];
            let mut b = self.base();
            b.edge(l.xv(2), l.xv(3));
            b.edge(l.xv(5), l.xv(6));
            b.subdivide(e, 2);
            if let Some(c) = b.finish(format!("no2e: edges x2x3, x5x6, bridge subdivided twice ({})", l.tag())) {
                return Some(c);
            }
        }
        None
    }

    /// G - V(K) has three components, each holding a pair of opposite exits.
    pub fn oppcuts(&self) -> Option<Candidate> {
        if self.comp_count != 3 {
            return None;
        }
        let l0 = Labeling::new(self.k, 0, true);
        let c: Vec<usize> = (1..=6).map(|i| self.comp[l0.xs(i)]).collect();
        if !(c[0] == c[3] && c[1] == c[4] && c[2] == c[5]) {
            return None;
        }
        for l in Labeling::all(self.k) {
            let mut b = self.base();
            b.edge(l.xv(1), l.xv(5));
            b.edge(l.xv(2), l.xv(6));
            b.path(l.xv(3), l.xv(4), 1);
            if let Some(cand) = b.finish(format!("oppcuts: edges x1x5, x2x6, path x3 w x4 ({})", l.tag())) {
                return Some(cand);
            }
        }
        None
    }
}

/// Seven-cycle with two cut edges at distance one that do not form a cut
/// together.
pub(crate) fn r7_cuts(g: &Graph, k: &CycleDescriptor, cuts: &CutIndex) -> Option<Candidate> {
    if k.len() != 7 || k.degree3 != 7 {
        return None;
    }
    for l in Labeling::all(k) {
        let e = |a: usize, b: usize| g.edge_between(l.vs(a), l.vs(b)).unwrap();
        let (e17, e23) = (e(1, 7), e(2, 3));
        if !cuts.in_cut(e17) || !cuts.in_cut(e23) || cuts.is_cut_pair(e17, e23) {
            continue;
        }
        let mask = outside_mask(g, &k.vertices);
        let (comp, count) = components(g, Some(&mask), None);
        let c = |i: usize| comp[l.xs(i)];
        if count != 3
            || !(c(1) == c(2) && c(2) == c(5) && c(3) == c(4) && c(6) == c(7))
            || c(1) == c(3)
            || c(1) == c(6)
            || c(3) == c(6)
        {
            continue;
        }
        let mut b = Builder::new(g, &k.vertices);
        b.remove(&[l.vs(1), l.vs(2)]);
        b.edge(V::Old(l.vs(3)), l.xv(1));
        b.edge(V::Old(l.vs(7)), l.xv(2));
        b.subdivide(g.edge_between(l.vs(5), l.xs(5)).unwrap(), 1);
        if let Some(cand) = b.finish(format!("drop v1 v2, edges v3x1, v7x2, subdivide v5x5 ({})", l.tag())) {
            return Some(cand);
        }
    }
    None
}

/// Seven-cycle with five or six vertices of degree three: contract it and
/// split off consecutive exits so the result stays 2-connected.
pub(crate) fn r7_deg2(g: &Graph, k: &CycleDescriptor) -> Option<Candidate> {
    use super::split::{split_off, split_off_2ec};
    use crate::graph::Multigraph;
    if k.len() != 7 || !(5..=6).contains(&k.degree3) {
        return None;
    }
    let branch: Vec<usize> = (0..7).filter(|&i| k.outside[i].is_some()).collect();
    let xs: Vec<usize> = branch.iter().map(|&p| k.outside[p].unwrap()).collect();
    let kk = xs.len();
    // contracted multigraph on the outside vertices plus w
    let on_k = |v: usize| k.vertices.contains(&v);
    let mut id = vec![usize::MAX; g.n()];
    let mut next = 0;
    for v in 0..g.n() {
        if !on_k(v) {
            id[v] = next;
            next += 1;
        }
    }
    let w = next;
    let mut ends: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&(a, b)| !on_k(a) && !on_k(b))
        .map(|&(a, b)| (id[a], id[b]))
        .collect();
    let first_exit = ends.len();
    for &x in &xs {
        ends.push((w, id[x]));
    }
    let contracted = Multigraph::from_edges(w + 1, &ends);
    for i in 0..kk {
        let (a, b2) = (first_exit + i, first_exit + (i + 1) % kk);
        let Ok(mg) = split_off(&contracted, w, a, b2) else {
            continue;
        };
        if !mg.is_two_edge_connected() {
            continue;
        }
        let pairs: Vec<(usize, usize)> = if kk == 5 {
            vec![(i, (i + 1) % 5)]
        } else {
            // split x3 with x4 or x5; the last two exits close through w
            let exit_of = |j: usize| {
                let x = id[xs[(i + j) % 6]];
                (0..mg.m())
                    .find(|&e| mg.ends(e) == (w, x) || mg.ends(e) == (x, w))
                    .unwrap()
            };
            let Ok((pair, _)) = split_off_2ec(&mg, w, exit_of(3), exit_of(2), exit_of(4)) else {
                continue;
            };
            let with = if pair == (exit_of(3), exit_of(2)) { 3 } else { 4 };
            let rest = if with == 3 { (4, 5) } else { (3, 5) };
            vec![
                (i, (i + 1) % 6),
                ((i + 2) % 6, (i + with) % 6),
                ((i + rest.0) % 6, (i + rest.1) % 6),
            ]
        };
        let mut b = Builder::new(g, &k.vertices);
        b.remove(&k.vertices);
        let mut used = vec![false; kk];
        for &(p, q) in &pairs {
            b.edge(V::Old(xs[p]), V::Old(xs[q]));
            used[p] = true;
            used[q] = true;
        }
        if kk == 5 {
            let wv = b.vertex();
            for j in 0..5 {
                if !used[j] {
                    b.edge(wv, V::Old(xs[j]));
                }
            }
        }
        let tag = format!(
            "contract and split off {}",
            pairs
                .iter()
                .map(|(p, q)| format!("x{}x{}", p + 1, q + 1))
                .collect::<Vec<_>>()
                .join(", ")
        );
        if let Some(c) = b.finish(tag) {
            return Some(c);
        }
    }
    None
}
