//! Basic, proper and clean graphs, and the first obstruction to each.

use serde::Serialize;

use crate::connectivity::{components, is_two_connected, unit_flow, CutIndex};
use crate::cycles::{
    classify_shape, enumerate_cycles_bounded, enumerate_short_cycles, outside_mask, CycleDescriptor, Shape,
};
use crate::graph::Graph;

use super::{ReductionError, RuleId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GraphClass {
    Basic,
    Improper,
    ProperNotClean,
    Clean,
}

/// The first obstruction found, with the rule that handles it.
#[derive(Debug, Clone)]
pub(crate) struct Violation {
    pub rule: RuleId,
    pub cycle: CycleDescriptor,
    pub second: Option<CycleDescriptor>,
}

/// Shared state for scanning one graph.
pub(crate) struct Scan<'a> {
    pub g: &'a Graph,
    pub cuts: CutIndex,
}

impl<'a> Scan<'a> {
    pub fn new(g: &'a Graph) -> Result<Self, ReductionError> {
        if g.n() < 3 || !is_two_connected(g) {
            return Err(ReductionError::NotTwoConnected);
        }
        let cuts = CutIndex::new(g).map_err(|_| ReductionError::NotTwoConnected)?;
        Ok(Scan { g, cuts })
    }

    pub fn is_basic(&self) -> bool {
        classify_shape(self.g) != Shape::Other
    }

    /// First cycle witnessing that the graph is not proper.
    pub fn improper(&self) -> Option<Violation> {
        let low = enumerate_cycles_bounded(self.g, 4);
        for (rule, count) in [(RuleId::C2e, 2), (RuleId::C3, 3), (RuleId::C4, 4)] {
            if let Some(k) = low.iter().find(|k| k.degree3 <= count) {
                return Some(single(rule, k.clone()));
            }
        }
        enumerate_short_cycles(self.g, 6)
            .into_iter()
            .find(|k| k.degree3 == 5)
            .map(|k| single(RuleId::C5, k))
    }

    /// First violated clean condition of a proper graph.
    pub fn unclean(&self) -> Option<Violation> {
        let short = enumerate_short_cycles(self.g, 7);
        // CT1
        if let Some(k) = short.iter().find(|k| k.degree3 < k.len()) {
            return Some(single(RuleId::R7Deg2, k.clone()));
        }
        let six: Vec<&CycleDescriptor> = short.iter().filter(|k| k.len() == 6).collect();
        // CT2
        for k in &six {
            if k.is_theta {
                continue;
            }
            if let Some(other) = six
                .iter()
                .find(|o| o.vertices != k.vertices && o.vertices.iter().any(|v| k.contains(*v)))
            {
                return Some(Violation {
                    rule: RuleId::R6No26,
                    cycle: (*k).clone(),
                    second: Some((*other).clone()),
                });
            }
        }
        // CT3
        for k in &short {
            if !self.ct3_holds(k) {
                let rule = if k.len() == 6 { RuleId::R6NoCut } else { RuleId::R7Cuts };
                return Some(single(rule, k.clone()));
            }
        }
        // CT4
        for k in &six {
            if let Some(rule) = self.ct4_violation(k) {
                return Some(single(rule, (*k).clone()));
            }
        }
        None
    }

    pub fn classify(&self) -> GraphClass {
        if self.is_basic() {
            GraphClass::Basic
        } else if self.improper().is_some() {
            GraphClass::Improper
        } else if self.unclean().is_some() {
            GraphClass::ProperNotClean
        } else {
            GraphClass::Clean
        }
    }

    pub fn first_violation(&self) -> Option<Violation> {
        if self.is_basic() {
            return None;
        }
        self.improper().or_else(|| self.unclean())
    }

    /// Every two cycle edges separated by one edge that are each in a
    /// 2-edge-cut form a 2-edge-cut together.
    pub fn ct3_holds(&self, k: &CycleDescriptor) -> bool {
        let e = k.edges(self.g);
        let m = e.len();
        (0..m).all(|i| {
            let (f1, f2) = (e[i], e[(i + 2) % m]);
            !(self.cuts.in_cut(f1) && self.cuts.in_cut(f2)) || self.cuts.is_cut_pair(f1, f2)
        })
    }

    /// The rule handling a failure of CT4 on the six-cycle `k`, if it fails.
    pub fn ct4_violation(&self, k: &CycleDescriptor) -> Option<RuleId> {
        if k.is_theta {
            return None;
        }
        let exits: Vec<usize> = (0..6).map(|i| k.exit_edge(self.g, i).unwrap()).collect();
        let free: Vec<usize> = (0..6).filter(|&i| !self.cuts.in_cut(exits[i])).collect();
        match free.len() {
            0 => {
                let pairs: Vec<(usize, usize)> = (0..6)
                    .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
                    .filter(|&(i, j)| self.cuts.is_cut_pair(exits[i], exits[j]))
                    .collect();
                if pairs.is_empty() || (pairs.len() == 1 && pairs[0].1 - pairs[0].0 == 3) {
                    None
                } else if pairs.iter().any(|&(i, j)| j - i != 3) {
                    Some(RuleId::R6Adj)
                } else {
                    Some(RuleId::R6OppCuts)
                }
            }
            1 => {
                if self.single_bridge_partition(k, free[0]) {
                    None
                } else {
                    Some(RuleId::R6Main)
                }
            }
            _ => {
                if free.iter().any(|&i| free.contains(&((i + 3) % 6))) {
                    Some(RuleId::R6No2e)
                } else {
                    Some(RuleId::R6Main)
                }
            }
        }
    }

    /// With `v1 = K[p]`: G - V(K) splits along exactly one edge into
    /// connected parts holding {x1, x2, x6} and {x3, x4, x5}.
    pub fn single_bridge_partition(&self, k: &CycleDescriptor, p: usize) -> bool {
        let mask = outside_mask(self.g, &k.vertices);
        let (_, count) = components(self.g, Some(&mask), None);
        if count != 1 {
            return false;
        }
        let x = |i: usize| k.outside[(p + i - 1) % 6].unwrap();
        let flow = unit_flow(self.g, Some(&mask), None, &[x(1), x(2), x(6)], &[x(3), x(4), x(5)], 2);
        flow.value == 1
    }
}

fn single(rule: RuleId, cycle: CycleDescriptor) -> Violation {
    Violation {
        rule,
        cycle,
        second: None,
    }
}

/// Exact class of a 2-connected subcubic graph.
pub fn classify_graph(g: &Graph) -> Result<GraphClass, ReductionError> {
    Ok(Scan::new(g)?.classify())
}
