//! Reductions of 2-connected subcubic graphs.
//!
//! A reduction replaces G by a smaller 2-connected subcubic graph G' with
//! `delta = (n + n2)(G) - (n + n2)(G') >= 0` and carries every spanning
//! Eulerian subgraph F' of G' back to one of G with
//! `exc(F) <= exc(F') + delta / 4`. Repeating reductions ends at a basic or a
//! clean graph.

mod classify;
mod lift;
mod split;
mod surgery;

use num::{BigInt, BigRational};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::connectivity::components;
use crate::cycles::{enumerate_cycles_bounded, outside_mask, CycleDescriptor};
use crate::eulerian::{EulerianError, EulerianSubgraph};
use crate::graph::Graph;

pub use classify::{classify_graph, GraphClass};
pub use lift::LiftOutcome;
pub use split::{split_off, split_off_2ec};

use classify::Scan;
use surgery::{Candidate, SixCycle};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("{0}: hypothesis violated: {1}")]
    HypothesisViolated(String, String),
    #[error("no rule applies to a graph that is neither basic nor clean: {0}")]
    InternalCatalogGap(String),
    #[error("{rule}: lift gives excess {lifted} but F' has {reduced} and delta is {delta}")]
    LiftBoundViolated {
        rule: String,
        lifted: usize,
        reduced: usize,
        delta: usize,
    },
    #[error("{0}: no Eulerian completion exists")]
    LiftFailed(String),
    #[error("vertex {vertex} has degree {degree}, splitting off needs at least 4")]
    DegreeTooSmall { vertex: usize, degree: usize },
    #[error(transparent)]
    Eulerian(#[from] EulerianError),
}

/// The reduction rules, named after the structure they remove.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum RuleId {
    #[serde(rename = "R-C2E")]
    C2e,
    #[serde(rename = "R-C3")]
    C3,
    #[serde(rename = "R-C4")]
    C4,
    #[serde(rename = "R-C5")]
    C5,
    #[serde(rename = "R6-OPP3")]
    R6Opp3,
    #[serde(rename = "R6-OB1")]
    R6Ob1,
    #[serde(rename = "R6-OB0")]
    R6Ob0,
    #[serde(rename = "R6-OPPA")]
    R6OppA,
    #[serde(rename = "R6-NOCUT")]
    R6NoCut,
    #[serde(rename = "R6-MAIN")]
    R6Main,
    #[serde(rename = "R6-NO2E")]
    R6No2e,
    #[serde(rename = "R6-NO26")]
    R6No26,
    #[serde(rename = "R6-ADJ")]
    R6Adj,
    #[serde(rename = "R6-OPPCUTS")]
    R6OppCuts,
    #[serde(rename = "R7-DEG2")]
    R7Deg2,
    #[serde(rename = "R7-CUTS")]
    R7Cuts,
}

impl RuleId {
    pub const ALL: [RuleId; 16] = [
        RuleId::C2e,
        RuleId::C3,
        RuleId::C4,
        RuleId::C5,
        RuleId::R6Opp3,
        RuleId::R6Ob1,
        RuleId::R6Ob0,
        RuleId::R6OppA,
        RuleId::R6NoCut,
        RuleId::R6Main,
        RuleId::R6No2e,
        RuleId::R6No26,
        RuleId::R6Adj,
        RuleId::R6OppCuts,
        RuleId::R7Deg2,
        RuleId::R7Cuts,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::C2e => "R-C2E",
            RuleId::C3 => "R-C3",
            RuleId::C4 => "R-C4",
            RuleId::C5 => "R-C5",
            RuleId::R6Opp3 => "R6-OPP3",
            RuleId::R6Ob1 => "R6-OB1",
            RuleId::R6Ob0 => "R6-OB0",
            RuleId::R6OppA => "R6-OPPA",
            RuleId::R6NoCut => "R6-NOCUT",
            RuleId::R6Main => "R6-MAIN",
            RuleId::R6No2e => "R6-NO2E",
            RuleId::R6No26 => "R6-NO26",
            RuleId::R6Adj => "R6-ADJ",
            RuleId::R6OppCuts => "R6-OPPCUTS",
            RuleId::R7Deg2 => "R7-DEG2",
            RuleId::R7Cuts => "R7-CUTS",
        }
    }

    /// The hypothesis of the rule in one line.
    pub fn anchor(self) -> &'static str {
        match self {
            RuleId::C2e => "a cycle with at most two vertices of degree three",
            RuleId::C3 => "a cycle with three vertices of degree three",
            RuleId::C4 => "a cycle with four vertices of degree three",
            RuleId::C5 => "a cycle of length five or six with five vertices of degree three",
            RuleId::R6Opp3 => "a 6-cycle with no edge between A and B",
            RuleId::R6Ob1 => "a 6-cycle with at most one edge between the parts",
            RuleId::R6Ob0 => "a 6-cycle that is not a theta-cycle with x1, x2 cut off",
            RuleId::R6OppA => "a 6-cycle with opposite neighbors in different components of G - V(K)",
            RuleId::R6NoCut => "a 6-cycle that contains an edge in a 2-edge-cut",
            RuleId::R6Main => "a 6-cycle with an exit not contained in a 2-edge-cut",
            RuleId::R6No2e => "a 6-cycle where neither v1x1 nor v4x4 is in a 2-edge-cut",
            RuleId::R6No26 => "two intersecting 6-cycles K and K'",
            RuleId::R6Adj => "a 6-cycle with exits forming a 2-edge-cut such that j - i != 3",
            RuleId::R6OppCuts => "a 6-cycle with two pairs of opposite exits that are 2-edge-cuts",
            RuleId::R7Deg2 => "a cycle of length seven that contains a vertex of degree two",
            RuleId::R7Cuts => "a 7-cycle with cut edges v1v7, v2v3 that themselves do not form a 2-edge-cut",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name().eq_ignore_ascii_case(s))
    }
}

impl std::fmt::Display for RuleId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The cycle a rule acts on; `second` is used by the intersecting 6-cycles
/// rule.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub cycle: Vec<usize>,
    pub second: Option<Vec<usize>>,
}

impl Witness {
    pub fn cycle(vertices: Vec<usize>) -> Self {
        Witness {
            cycle: vertices,
            second: None,
        }
    }
}

/// One applied reduction.
#[derive(Debug, Clone)]
pub struct ReductionStep {
    pub rule: RuleId,
    pub witness: Witness,
    pub before: Graph,
    pub after: Graph,
    pub delta: usize,
    pub case_tag: String,
    inherited: Vec<Option<usize>>,
    region: Vec<usize>,
}

impl ReductionStep {
    /// `delta / 4` as an exact rational.
    pub fn delta_quarter(&self) -> BigRational {
        BigRational::new(BigInt::from(self.delta), BigInt::from(4))
    }

    /// For each edge of `after`, the edge of `before` it continues, if any.
    pub fn inherited(&self) -> &[Option<usize>] {
        &self.inherited
    }

    /// Edges of `before` the lift chooses locally.
    pub fn region(&self) -> &[usize] {
        &self.region
    }

    /// Turns a spanning Eulerian subgraph of `after` into one of `before`
    /// with `exc` larger by at most `delta / 4`.
    pub fn lift(&self, f_prime: &EulerianSubgraph) -> Result<LiftOutcome, ReductionError> {
        f_prime.validate(&self.after)?;
        let out = lift::lift_local(&self.before, &self.inherited, &self.region, f_prime)
            .ok_or_else(|| ReductionError::LiftFailed(self.rule.name().to_string()))?;
        let (lifted, reduced) = (out.subgraph.excess(), f_prime.excess());
        if 4 * lifted > 4 * reduced + self.delta {
            return Err(ReductionError::LiftBoundViolated {
                rule: self.rule.name().to_string(),
                lifted,
                reduced,
                delta: self.delta,
            });
        }
        Ok(out)
    }

    pub fn to_json(&self, index: usize) -> Value {
        json!({
            "step": index,
            "rule": self.rule.name(),
            "anchor": self.rule.anchor(),
            "witness": self.witness,
            "case": self.case_tag,
            "delta": self.delta,
            "before": {"n": self.before.n(), "n2": self.before.n2()},
            "after": {"n": self.after.n(), "n2": self.after.n2()},
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalKind {
    Basic,
    Clean,
}

/// Reductions applied in order, from the input to a basic or clean graph.
#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub input: Graph,
    pub steps: Vec<ReductionStep>,
    pub terminal: Graph,
    pub terminal_kind: TerminalKind,
}

impl ReductionTrace {
    pub fn total_delta(&self) -> usize {
        self.steps.iter().map(|s| s.delta).sum()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "input": {"n": self.input.n(), "n2": self.input.n2()},
            "steps": self.steps.iter().enumerate().map(|(i, s)| s.to_json(i)).collect::<Vec<_>>(),
            "terminal": {
                "n": self.terminal.n(),
                "n2": self.terminal.n2(),
                "kind": self.terminal_kind,
            },
        })
    }
}

/// Finds the first applicable rule in priority order and applies it, or
/// returns `None` for basic and clean graphs.
pub fn find_reduction(g: &Graph) -> Result<Option<ReductionStep>, ReductionError> {
    let scan = Scan::new(g)?;
    let Some(v) = scan.first_violation() else {
        return Ok(None);
    };
    let witness = Witness {
        cycle: v.cycle.vertices.clone(),
        second: v.second.as_ref().map(|k| k.vertices.clone()),
    };
    match build(&scan, v.rule, &v.cycle, v.second.as_ref()) {
        Ok(c) => Ok(Some(step(g, v.rule, witness, c))),
        Err(ReductionError::HypothesisViolated(rule, reason)) => Err(ReductionError::InternalCatalogGap(format!(
            "{rule} on cycle {:?}: {reason}",
            v.cycle.vertices
        ))),
        Err(e) => Err(e),
    }
}

/// Applies `rule` to the given witness after checking its hypothesis.
pub fn apply_rule(g: &Graph, rule: RuleId, witness: &Witness) -> Result<ReductionStep, ReductionError> {
    let scan = Scan::new(g)?;
    let fail = |reason: &str| ReductionError::HypothesisViolated(rule.name().into(), reason.into());
    let as_cycle = |vs: &[usize]| -> Result<CycleDescriptor, ReductionError> {
        let len = vs.len();
        let mut seen = vec![false; g.n()];
        for i in 0..len {
            if vs[i] >= g.n() || seen[vs[i]] || !g.has_edge(vs[i], vs[(i + 1) % len]) {
                return Err(fail("witness is not a cycle"));
            }
            seen[vs[i]] = true;
        }
        if len < 3 {
            return Err(fail("witness is not a cycle"));
        }
        Ok(CycleDescriptor::new(g, vs.to_vec()))
    };
    let k = as_cycle(&witness.cycle)?;
    let second = witness.second.as_deref().map(as_cycle).transpose()?;
    if scan.is_basic() {
        return Err(fail("graph is basic"));
    }
    let low = || enumerate_cycles_bounded(g, 4);
    match rule {
        RuleId::C2e => {
            if k.degree3 > 2 {
                return Err(fail("cycle has more than two vertices of degree three"));
            }
        }
        RuleId::C3 => {
            if k.degree3 != 3 || low().iter().any(|c| c.degree3 <= 2) {
                return Err(fail("needs three vertices of degree three and no cycle with fewer"));
            }
        }
        RuleId::C4 => {
            let low = low();
            if k.degree3 != 4 || low.iter().any(|c| c.degree3 <= 3) {
                return Err(fail("needs four vertices of degree three and no cycle with fewer"));
            }
            if low.iter().any(|c| c.degree3 == 4 && c.len() < k.len()) {
                return Err(fail("a shorter cycle with four vertices of degree three exists"));
            }
        }
        RuleId::C5 => {
            if k.degree3 != 5 || k.len() > 6 || !low().is_empty() {
                return Err(fail(
                    "needs a short cycle with five vertices of degree three in a graph without smaller ones",
                ));
            }
        }
        _ => {
            if scan.improper().is_some() {
                return Err(fail("graph is not proper"));
            }
            check_proper_hypothesis(&scan, rule, &k, second.as_ref()).map_err(|r| fail(&r))?;
        }
    }
    let c = build(&scan, rule, &k, second.as_ref())?;
    Ok(step(g, rule, witness.clone(), c))
}

fn check_proper_hypothesis(
    scan: &Scan,
    rule: RuleId,
    k: &CycleDescriptor,
    second: Option<&CycleDescriptor>,
) -> Result<(), String> {
    let g = scan.g;
    if rule == RuleId::R7Deg2 || rule == RuleId::R7Cuts {
        if k.len() != 7 {
            return Err("needs a cycle of length seven".into());
        }
        return match rule {
            RuleId::R7Deg2 if k.degree3 == 7 => Err("no vertex of degree two on the cycle".into()),
            RuleId::R7Cuts if k.degree3 != 7 || scan.ct3_holds(k) => {
                Err("no pair of cut edges at distance one failing to form a cut".into())
            }
            _ => Ok(()),
        };
    }
    if k.len() != 6 {
        return Err("needs a 6-cycle".into());
    }
    let exits: Vec<usize> = (0..6).map(|i| k.exit_edge(g, i).unwrap()).collect();
    let cut = |i: usize| scan.cuts.in_cut(exits[i % 6]);
    let (comp, _) = components(g, Some(&outside_mask(g, &k.vertices)), None);
    let x = |i: usize| k.outside[i % 6].unwrap();
    let ok = match rule {
        RuleId::R6Opp3 => (0..6).all(|i| (0..6).all(|j| (i + j) % 2 == 0 || comp[x(i)] != comp[x(j)])),
        RuleId::R6Ob1 | RuleId::R6Ob0 => true,
        RuleId::R6OppA => !k.is_theta && (0..3).any(|i| comp[x(i)] != comp[x(i + 3)]),
        RuleId::R6NoCut => !k.is_theta && k.edges(g).iter().any(|&e| scan.cuts.in_cut(e)),
        RuleId::R6Main => (0..6).any(|i| !cut(i)),
        RuleId::R6No2e => (0..3).any(|i| !cut(i) && !cut(i + 3)),
        RuleId::R6No26 => match second {
            Some(o) => {
                o.len() == 6
                    && o.vertices != k.vertices
                    && o.vertices.iter().any(|v| k.contains(*v))
                    && !(k.is_theta && o.is_theta)
            }
            None => false,
        },
        RuleId::R6Adj => {
            !k.is_theta && (0..6).any(|i| (i + 1..6).any(|j| j - i != 3 && scan.cuts.is_cut_pair(exits[i], exits[j])))
        }
        RuleId::R6OppCuts => {
            (0..3)
                .filter(|&i| scan.cuts.is_cut_pair(exits[i], exits[i + 3]))
                .count()
                >= 2
        }
        _ => unreachable!(),
    };
    if ok {
        Ok(())
    } else {
        Err(format!(
            "the 6-cycle does not satisfy the hypothesis of {}",
            rule.name()
        ))
    }
}

#[derive(Clone, Copy)]
enum Six {
    Opp3,
    Ob1,
    Ob0,
    Main,
    No2e,
    OppCuts,
}

const ALL_SIX: [Six; 6] = [Six::Opp3, Six::Ob1, Six::Ob0, Six::Main, Six::No2e, Six::OppCuts];

fn try_six(scan: &Scan, k: &CycleDescriptor, order: &[Six]) -> Option<Candidate> {
    let six = SixCycle::new(scan.g, k, &scan.cuts)?;
    order.iter().chain(ALL_SIX.iter()).find_map(|kind| match kind {
        Six::Opp3 => six.opp3(),
        Six::Ob1 => six.ob1(),
        Six::Ob0 => six.ob0(),
        Six::Main => six.main(&[0, 1, 2, 3, 4, 5]),
        Six::No2e => six.no2e(),
        Six::OppCuts => six.oppcuts(),
    })
}

fn build(
    scan: &Scan,
    rule: RuleId,
    k: &CycleDescriptor,
    second: Option<&CycleDescriptor>,
) -> Result<Candidate, ReductionError> {
    let g = scan.g;
    let built = match rule {
        RuleId::C2e => surgery::c2e(g, k),
        RuleId::C3 => surgery::c3(g, k),
        RuleId::C4 => surgery::c4(g, k),
        RuleId::C5 => surgery::c5(g, k),
        RuleId::R7Deg2 => surgery::r7_deg2(g, k),
        RuleId::R7Cuts => surgery::r7_cuts(g, k, &scan.cuts),
        RuleId::R6Opp3 => try_six(scan, k, &[Six::Opp3]),
        RuleId::R6Ob1 => try_six(scan, k, &[Six::Ob1]),
        RuleId::R6Ob0 => try_six(scan, k, &[Six::Ob0]),
        RuleId::R6OppA => try_six(scan, k, &[Six::Ob1, Six::Ob0]),
        RuleId::R6NoCut => try_six(scan, k, &[Six::Ob0, Six::Ob1]),
        RuleId::R6Main => try_six(scan, k, &[Six::Main, Six::Ob1, Six::Ob0, Six::Opp3]),
        RuleId::R6No2e => try_six(scan, k, &[Six::No2e, Six::Main, Six::Ob1, Six::Ob0]),
        RuleId::R6Adj => try_six(scan, k, &[Six::Ob0, Six::Ob1, Six::Opp3]),
        RuleId::R6OppCuts => try_six(scan, k, &[Six::OppCuts]),
        RuleId::R6No26 => {
            let order = [Six::Ob0, Six::Ob1, Six::Main, Six::No2e, Six::Opp3, Six::OppCuts];
            let mut cycles = vec![k];
            cycles.extend(second);
            cycles.sort_by_key(|c| c.is_theta);
            cycles.into_iter().find_map(|c| try_six(scan, c, &order))
        }
    };
    built.ok_or_else(|| {
        ReductionError::HypothesisViolated(
            rule.name().into(),
            "no construction yields a valid reduced graph".into(),
        )
    })
}

fn step(g: &Graph, rule: RuleId, witness: Witness, c: Candidate) -> ReductionStep {
    let delta = g.weight() - c.after.weight();
    ReductionStep {
        rule,
        witness,
        before: g.clone(),
        after: c.after,
        delta,
        case_tag: c.case_tag,
        inherited: c.inherited,
        region: c.region,
    }
}

/// Reduces until the graph is basic or clean.
pub fn reduce_to_terminal(g: &Graph) -> Result<ReductionTrace, ReductionError> {
    let mut steps: Vec<ReductionStep> = Vec::new();
    let mut current = g.clone();
    while let Some(s) = find_reduction(&current)? {
        current = s.after.clone();
        steps.push(s);
    }
    let terminal_kind = match classify_graph(&current)? {
        GraphClass::Basic => TerminalKind::Basic,
        GraphClass::Clean => TerminalKind::Clean,
        other => {
            return Err(ReductionError::InternalCatalogGap(format!(
                "terminal graph classified {other:?}"
            )))
        }
    };
    Ok(ReductionTrace {
        input: g.clone(),
        steps,
        terminal: current,
        terminal_kind,
    })
}

/// Lifts a spanning Eulerian subgraph of the terminal graph back to the input.
pub fn lift_through(trace: &ReductionTrace, f_terminal: &EulerianSubgraph) -> Result<EulerianSubgraph, ReductionError> {
    f_terminal.validate(&trace.terminal)?;
    let mut f = f_terminal.clone();
    for s in trace.steps.iter().rev() {
        f = s.lift(&f)?.subgraph;
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;

    fn small_c2e_instance() -> Graph {
        // triangle u v z with z of degree two, then x1 x2 t
        Graph::new(6, &[(0, 1), (0, 2), (1, 2), (0, 3), (1, 4), (3, 4), (3, 5), (4, 5)]).unwrap()
    }

    #[test]
    fn basic_graphs_need_no_reduction() {
        for g in [named::k4(), named::k23(), named::cycle(5), named::theta(1, 2, 3)] {
            assert!(find_reduction(&g).unwrap().is_none());
        }
    }

    #[test]
    fn triangle_with_degree_two_vertex() {
        let g = small_c2e_instance();
        let s = find_reduction(&g).unwrap().unwrap();
        assert_eq!(s.rule, RuleId::C2e);
        assert_eq!(s.after.n(), 5);
        assert_eq!(s.delta, 0);
        let uv = s.after.edge_between(0, 1).unwrap();
        let all = crate::oracle::enumerate_eulerian(&s.after, 16).unwrap();
        for f in all {
            let lifted = s.lift(&f).unwrap().subgraph;
            assert!(lifted.excess() <= f.excess());
            if f.contains(uv) {
                assert_eq!(lifted.excess(), f.excess());
            }
        }
    }

    #[test]
    fn prism_reduces_to_a_basic_graph() {
        let t = reduce_to_terminal(&named::prism()).unwrap();
        assert!(!t.steps.is_empty());
        assert_eq!(t.steps[0].rule, RuleId::C3);
        assert_eq!(t.terminal_kind, TerminalKind::Basic);
    }

    #[test]
    fn trace_steps_compose() {
        let g = crate::generators::random_subcubic(30, 6, 7).unwrap();
        let t = reduce_to_terminal(&g).unwrap();
        let mut cur = &t.input;
        for s in &t.steps {
            assert_eq!(&s.before, cur);
            assert!(s.after.n() < s.before.n());
            cur = &s.after;
        }
        assert_eq!(cur, &t.terminal);
    }

    #[test]
    fn rule_names_round_trip() {
        for r in RuleId::ALL {
            assert_eq!(RuleId::from_name(r.name()), Some(r));
            assert_eq!(serde_json::to_value(r).unwrap(), Value::String(r.name().into()));
        }
    }

    #[test]
    fn hypothesis_is_checked() {
        let g = named::prism();
        let err = apply_rule(&g, RuleId::C2e, &Witness::cycle(vec![0, 1, 2])).unwrap_err();
        assert!(matches!(err, ReductionError::HypothesisViolated(..)));
    }
}
