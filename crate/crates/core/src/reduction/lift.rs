//! Carrying an Eulerian subgraph of a reduced graph back to the original.
//!
//! Edges of F' that continue original edges outside the region are kept.
//! Inside the region every completion that gives each vertex degree 0 or 2
//! is scored by excess and the cheapest one wins.

use crate::eulerian::EulerianSubgraph;
use crate::graph::Graph;

/// Result of a lift: the subgraph of the original graph and how many of the
/// reduced graph's new edges F' used.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftOutcome {
    pub subgraph: EulerianSubgraph,
    pub case: String,
}

pub(crate) fn lift_local(
    before: &Graph,
    inherited: &[Option<usize>],
    region: &[usize],
    f_prime: &EulerianSubgraph,
) -> Option<LiftOutcome> {
    let mut in_region = vec![false; before.m()];
    for &e in region {
        in_region[e] = true;
    }
    let mut chosen = vec![false; before.m()];
    let mut deg = vec![0u8; before.n()];
    let mut new_used = 0;
    let new_total = inherited.iter().filter(|o| o.is_none()).count();
    for &e in f_prime.edges() {
        match inherited[e] {
            Some(o) if !in_region[o] => {
                chosen[o] = true;
                let (a, b) = before.endpoints(o);
                deg[a] += 1;
                deg[b] += 1;
            }
            Some(_) => {}
            None => new_used += 1,
        }
    }
    // last region position touching each vertex, to close degree checks early
    let mut last = vec![usize::MAX; before.n()];
    for (i, &e) in region.iter().enumerate() {
        let (a, b) = before.endpoints(e);
        last[a] = i;
        last[b] = i;
    }
    if (0..before.n()).any(|v| last[v] == usize::MAX && deg[v] == 1) {
        return None;
    }
    let mut search = Search {
        g: before,
        region,
        last: &last,
        chosen,
        deg,
        best: None,
    };
    search.run(0);
    let (_, edges) = search.best?;
    let subgraph = EulerianSubgraph::new(before, edges).ok()?;
    Some(LiftOutcome {
        subgraph,
        case: format!("{new_used} of {new_total} new edges used"),
    })
}

struct Search<'a> {
    g: &'a Graph,
    region: &'a [usize],
    last: &'a [usize],
    chosen: Vec<bool>,
    deg: Vec<u8>,
    best: Option<(usize, Vec<usize>)>,
}

impl Search<'_> {
    fn run(&mut self, i: usize) {
        if i == self.region.len() {
            let exc = excess_of(self.g, &self.chosen);
            if self.best.as_ref().is_none_or(|(b, _)| exc < *b) {
                let edges = (0..self.g.m()).filter(|&e| self.chosen[e]).collect();
                self.best = Some((exc, edges));
            }
            return;
        }
        let e = self.region[i];
        let (a, b) = self.g.endpoints(e);
        for take in [true, false] {
            if take {
                if self.deg[a] == 2 || self.deg[b] == 2 {
                    continue;
                }
                self.deg[a] += 1;
                self.deg[b] += 1;
                self.chosen[e] = true;
            }
            let closed = |v: usize, s: &Self| s.last[v] != i || s.deg[v] != 1;
            if closed(a, self) && closed(b, self) {
                self.run(i + 1);
            }
            if take {
                self.deg[a] -= 1;
                self.deg[b] -= 1;
                self.chosen[e] = false;
            }
        }
    }
}

/// Excess of an edge set known to have all degrees in {0, 2}.
fn excess_of(g: &Graph, chosen: &[bool]) -> usize {
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut touched = vec![false; g.n()];
    for e in (0..g.m()).filter(|&e| chosen[e]) {
        let (a, b) = g.endpoints(e);
        touched[a] = true;
        touched[b] = true;
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra != rb {
            parent[ra] = rb;
        }
    }
    let mut exc = 0;
    for v in 0..g.n() {
        if !touched[v] {
            exc += 1;
        } else if find(&mut parent, v) == v {
            exc += 2;
        }
    }
    exc
}
