//! Exact decomposition of the uniform 1/3 edge vector of a bridgeless cubic
//! multigraph into perfect matchings.
//!
//! A phase-one revised simplex over rationals starts from one artificial
//! column per edge and prices perfect-matching columns with the blossom
//! solver on the current duals. The lexicographic ratio test rules out
//! cycling. Basic matching columns are linearly independent, so their number
//! never exceeds the dimension bound; an elimination pass is kept as a guard.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::Serialize;

use super::blossom::max_weight_matching;
use super::MatchingError;
use crate::graph::Multigraph;

/// A perfect matching as a sorted list of multigraph edge ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct PerfectMatching {
    pub edges: Vec<usize>,
}

impl PerfectMatching {
    pub fn contains(&self, e: usize) -> bool {
        self.edges.binary_search(&e).is_ok()
    }
}

/// Perfect matchings with positive rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingDecomposition {
    pub matchings: Vec<PerfectMatching>,
    pub coefficients: Vec<BigRational>,
}

fn check_cubic(mg: &Multigraph) -> Result<(), MatchingError> {
    if !mg.is_cubic() || mg.has_loop() {
        return Err(MatchingError::NotCubic);
    }
    if !mg.is_two_edge_connected() {
        return Err(MatchingError::NotTwoEdgeConnected);
    }
    Ok(())
}

fn to_perfect(mg: &Multigraph, mate: Vec<Option<usize>>) -> Result<PerfectMatching, MatchingError> {
    if mate.iter().any(|m| m.is_none()) {
        return Err(MatchingError::NoPerfectMatching);
    }
    let mut edges: Vec<usize> = mate.into_iter().flatten().collect();
    edges.sort_unstable();
    edges.dedup();
    debug_assert_eq!(2 * edges.len(), mg.n());
    Ok(PerfectMatching { edges })
}

/// Some perfect matching of a bridgeless cubic multigraph.
pub fn perfect_matching(mg: &Multigraph) -> Result<PerfectMatching, MatchingError> {
    check_cubic(mg)?;
    let edges: Vec<(usize, usize, i64)> = mg.edge_list().iter().map(|&(a, b)| (a, b, 0)).collect();
    to_perfect(mg, max_weight_matching(mg.n(), &edges, true))
}

/// A perfect matching of minimum total weight, computed exactly.
pub fn min_weight_perfect_matching(mg: &Multigraph, w: &[BigRational]) -> Result<PerfectMatching, MatchingError> {
    check_cubic(mg)?;
    max_weight_perfect_matching_unchecked(mg, &w.iter().map(|x| -x).collect::<Vec<_>>())
}

// Scales rational weights to integers and shifts them positive; every perfect
// matching has n/2 edges, so the shift does not change the optimum.
fn max_weight_perfect_matching_unchecked(mg: &Multigraph, w: &[BigRational]) -> Result<PerfectMatching, MatchingError> {
    let lcm = w
        .iter()
        .fold(BigInt::one(), |acc, x| num::integer::lcm(acc, x.denom().clone()));
    let scaled: Vec<BigInt> = w.iter().map(|x| (x * &lcm).to_integer()).collect();
    let min = scaled.iter().min().cloned().unwrap_or_else(BigInt::zero);
    let shift = BigInt::one() - min;
    let edges: Vec<(usize, usize, BigInt)> = mg
        .edge_list()
        .iter()
        .zip(&scaled)
        .map(|(&(a, b), s)| (a, b, s + &shift))
        .collect();
    to_perfect(mg, max_weight_matching(mg.n(), &edges, true))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Column {
    Artificial(usize),
    Matching(usize),
}

struct Simplex {
    rows: usize,
    basis: Vec<Column>,
    binv: Vec<Vec<BigRational>>,
    xb: Vec<BigRational>,
    pool: Vec<PerfectMatching>,
}

impl Simplex {
    fn new(rows: usize) -> Self {
        let third = BigRational::new(BigInt::one(), BigInt::from(3));
        let binv = (0..rows)
            .map(|i| {
                (0..rows)
                    .map(|j| {
                        if i == j {
                            BigRational::one()
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Simplex {
            rows,
            basis: (0..rows).map(Column::Artificial).collect(),
            binv,
            xb: vec![third; rows],
            pool: Vec::new(),
        }
    }

    fn infeasibility(&self) -> BigRational {
        self.basis
            .iter()
            .zip(&self.xb)
            .filter(|(c, _)| matches!(c, Column::Artificial(_)))
            .fold(BigRational::zero(), |acc, (_, x)| acc + x)
    }

    /// Phase-one duals: y = c_B^T B^{-1} with cost 1 on artificials.
    fn duals(&self) -> Vec<BigRational> {
        let mut y = vec![BigRational::zero(); self.rows];
        for (i, c) in self.basis.iter().enumerate() {
            if let Column::Artificial(_) = c {
                for (j, yj) in y.iter_mut().enumerate() {
                    if !self.binv[i][j].is_zero() {
                        *yj += &self.binv[i][j];
                    }
                }
            }
        }
        y
    }

    fn column_entries(&self, c: Column) -> Vec<usize> {
        match c {
            Column::Artificial(e) => vec![e],
            Column::Matching(k) => self.pool[k].edges.clone(),
        }
    }

    fn pivot_in(&mut self, c: Column) -> Result<(), MatchingError> {
        let entries = self.column_entries(c);
        let d: Vec<BigRational> = (0..self.rows)
            .map(|i| {
                entries
                    .iter()
                    .fold(BigRational::zero(), |acc, &e| acc + &self.binv[i][e])
            })
            .collect();
        // lexicographic minimum ratio over (x_B, B^{-1}) rows
        let mut best: Option<usize> = None;
        for i in 0..self.rows {
            if !d[i].is_positive() {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(r) => {
                    let better = self.lex_less(i, &d[i], r, &d[r]);
                    Some(if better { i } else { r })
                }
            };
        }
        let r = best.ok_or_else(|| MatchingError::DecompositionFailed("unbounded pivot column".into()))?;
        let pivot = d[r].clone();
        let inv = pivot.recip();
        for x in self.binv[r].iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.xb[r] = &self.xb[r] * &inv;
        let row_r = self.binv[r].clone();
        let xr = self.xb[r].clone();
        for i in 0..self.rows {
            if i == r || d[i].is_zero() {
                continue;
            }
            let f = &d[i];
            for (x, y) in self.binv[i].iter_mut().zip(&row_r) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
            self.xb[i] = &self.xb[i] - f * &xr;
        }
        self.basis[r] = c;
        Ok(())
    }

    fn lex_less(&self, i: usize, di: &BigRational, r: usize, dr: &BigRational) -> bool {
        let a = &self.xb[i] / di;
        let b = &self.xb[r] / dr;
        if a != b {
            return a < b;
        }
        for j in 0..self.rows {
            let a = &self.binv[i][j] / di;
            let b = &self.binv[r][j] / dr;
            if a != b {
                return a < b;
            }
        }
        false
    }

    fn matching_index(&mut self, m: PerfectMatching) -> usize {
        if let Some(k) = self.pool.iter().position(|p| *p == m) {
            return k;
        }
        self.pool.push(m);
        self.pool.len() - 1
    }

    /// Runs phase one, asking `price` for an improving matching column given
    /// the duals.
    fn solve(
        &mut self,
        mut price: impl FnMut(&[BigRational]) -> Result<Option<PerfectMatching>, MatchingError>,
    ) -> Result<(), MatchingError> {
        let iteration_cap = 50 * self.rows + 1000;
        for _ in 0..iteration_cap {
            if self.infeasibility().is_zero() {
                return Ok(());
            }
            let y = self.duals();
            let entering = match price(&y)? {
                Some(m) => {
                    let k = self.matching_index(m);
                    Column::Matching(k)
                }
                None => {
                    let one = BigRational::one();
                    match (0..self.rows).find(|&e| y[e] > one) {
                        Some(e) => Column::Artificial(e),
                        None => {
                            return Err(MatchingError::DecompositionFailed(
                                "no improving column while infeasible".into(),
                            ))
                        }
                    }
                }
            };
            if self.basis.contains(&entering) {
                return Err(MatchingError::DecompositionFailed(
                    "pricing returned a basic column".into(),
                ));
            }
            self.pivot_in(entering)?;
        }
        Err(MatchingError::DecompositionFailed("iteration cap reached".into()))
    }

    fn extract(&self) -> MatchingDecomposition {
        let mut pairs: Vec<(PerfectMatching, BigRational)> = self
            .basis
            .iter()
            .zip(&self.xb)
            .filter_map(|(c, x)| match c {
                Column::Matching(k) if x.is_positive() => Some((self.pool[*k].clone(), x.clone())),
                _ => None,
            })
            .collect();
        pairs.sort();
        let (matchings, coefficients) = pairs.into_iter().unzip();
        MatchingDecomposition {
            matchings,
            coefficients,
        }
    }
}

/// Reduced-cost pricing: the maximum-weight perfect matching under the
/// duals enters when its weight is positive.
fn blossom_pricing(mg: &Multigraph, y: &[BigRational]) -> Result<Option<PerfectMatching>, MatchingError> {
    let m = max_weight_perfect_matching_unchecked(mg, y)?;
    let total = m.edges.iter().fold(BigRational::zero(), |acc, &e| acc + &y[e]);
    Ok(total.is_positive().then_some(m))
}

/// Exact decomposition of the 1/3 vector by column generation.
pub fn decompose_uniform(mg: &Multigraph) -> Result<MatchingDecomposition, MatchingError> {
    check_cubic(mg)?;
    if mg.n() % 2 == 1 {
        return Err(MatchingError::NoPerfectMatching);
    }
    let mut lp = Simplex::new(mg.m());
    lp.solve(|y| blossom_pricing(mg, y))?;
    finish(mg, lp.extract())
}

/// Exact decomposition from the full list of perfect matchings; intended
/// for small graphs.
pub fn decompose_uniform_enumerated(mg: &Multigraph) -> Result<MatchingDecomposition, MatchingError> {
    check_cubic(mg)?;
    let all = all_perfect_matchings(mg);
    let mut lp = Simplex::new(mg.m());
    lp.solve(|y| {
        let mut best: Option<(BigRational, &PerfectMatching)> = None;
        for m in &all {
            let total = m.edges.iter().fold(BigRational::zero(), |acc, &e| acc + &y[e]);
            if total.is_positive() && best.as_ref().is_none_or(|(b, _)| total > *b) {
                best = Some((total, m));
            }
        }
        Ok(best.map(|(_, m)| m.clone()))
    })?;
    finish(mg, lp.extract())
}

fn finish(mg: &Multigraph, d: MatchingDecomposition) -> Result<MatchingDecomposition, MatchingError> {
    let d = prune(mg, d)?;
    verify_uniform(mg, &d)?;
    if d.matchings.len() > mg.n() / 2 + 2 {
        return Err(MatchingError::SizeBoundExceeded {
            size: d.matchings.len(),
            bound: mg.n() / 2 + 2,
        });
    }
    Ok(d)
}

/// Removes linearly dependent matchings by moving along a null vector until
/// one coefficient vanishes.
fn prune(mg: &Multigraph, mut d: MatchingDecomposition) -> Result<MatchingDecomposition, MatchingError> {
    while let Some(lambda) = null_vector(mg, &d.matchings) {
        // a - t * lambda stays nonnegative for t = min a_i / lambda_i over lambda_i > 0
        let mut t: Option<BigRational> = None;
        for (a, l) in d.coefficients.iter().zip(&lambda) {
            if l.is_positive() {
                let r = a / l;
                if t.as_ref().is_none_or(|t| r < *t) {
                    t = Some(r);
                }
            }
        }
        let t = t.ok_or_else(|| MatchingError::DecompositionFailed("null vector sign".into()))?;
        let mut pairs = Vec::new();
        for ((m, a), l) in d.matchings.into_iter().zip(d.coefficients).zip(lambda) {
            let a = a - &t * l;
            if a.is_positive() {
                pairs.push((m, a));
            }
        }
        let (matchings, coefficients) = pairs.into_iter().unzip();
        d = MatchingDecomposition {
            matchings,
            coefficients,
        };
    }
    Ok(d)
}

// Nonzero lambda with sum_i lambda_i chi(M_i) = 0, normalized so that some
// entry is positive; None when the columns are independent.
fn null_vector(mg: &Multigraph, ms: &[PerfectMatching]) -> Option<Vec<BigRational>> {
    let cols = ms.len();
    let mut a: Vec<Vec<BigRational>> = (0..mg.m())
        .map(|e| {
            ms.iter()
                .map(|m| {
                    if m.contains(e) {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();
    let mut pivot_col = Vec::new();
    let mut row = 0;
    for c in 0..cols {
        let Some(p) = (row..a.len()).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][c].recip();
        for x in a[row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..a.len() {
            if r != row && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                let pr = a[row].clone();
                for (x, y) in a[r].iter_mut().zip(&pr) {
                    *x -= &f * y;
                }
            }
        }
        pivot_col.push(c);
        row += 1;
    }
    let free = (0..cols).find(|c| !pivot_col.contains(c))?;
    let mut lambda = vec![BigRational::zero(); cols];
    lambda[free] = BigRational::one();
    for (r, &c) in pivot_col.iter().enumerate() {
        lambda[c] = -a[r][free].clone();
    }
    if !lambda.iter().any(|l| l.is_positive()) {
        lambda.iter_mut().for_each(|l| *l = -l.clone());
    }
    Some(lambda)
}

/// Checks the coefficients are positive, sum to one, and cover every edge
/// with total weight exactly 1/3.
pub fn verify_uniform(mg: &Multigraph, d: &MatchingDecomposition) -> Result<(), MatchingError> {
    let fail = |s: String| Err(MatchingError::DecompositionFailed(s));
    if d.matchings.len() != d.coefficients.len() || d.matchings.is_empty() {
        return fail("empty or misaligned decomposition".into());
    }
    if d.coefficients.iter().any(|a| !a.is_positive()) {
        return fail("nonpositive coefficient".into());
    }
    let total: BigRational = d.coefficients.iter().sum();
    if total != BigRational::one() {
        return fail(format!("coefficients sum to {total}"));
    }
    let third = BigRational::new(BigInt::one(), BigInt::from(3));
    let mut cover = vec![BigRational::zero(); mg.m()];
    for (m, a) in d.matchings.iter().zip(&d.coefficients) {
        let mut seen = vec![false; mg.n()];
        for &e in &m.edges {
            let (u, v) = mg.ends(e);
            if seen[u] || seen[v] {
                return fail(format!("matching {:?} is not a matching", m.edges));
            }
            seen[u] = true;
            seen[v] = true;
            cover[e] += a;
        }
        if seen.iter().any(|s| !s) {
            return fail(format!("matching {:?} is not perfect", m.edges));
        }
    }
    if let Some(e) = (0..mg.m()).find(|&e| cover[e] != third) {
        return fail(format!("edge {e} covered with weight {}", cover[e]));
    }
    Ok(())
}

/// Every perfect matching, by branching on the lowest uncovered vertex.
pub fn all_perfect_matchings(mg: &Multigraph) -> Vec<PerfectMatching> {
    fn go(mg: &Multigraph, covered: &mut Vec<bool>, chosen: &mut Vec<usize>, out: &mut Vec<PerfectMatching>) {
        let Some(v) = (0..mg.n()).find(|&v| !covered[v]) else {
            let mut edges = chosen.clone();
            edges.sort_unstable();
            out.push(PerfectMatching { edges });
            return;
        };
        covered[v] = true;
        for &(u, e) in mg.incident(v) {
            if u != v && !covered[u] {
                covered[u] = true;
                chosen.push(e);
                go(mg, covered, chosen, out);
                chosen.pop();
                covered[u] = false;
            }
        }
        covered[v] = false;
    }
    let mut out = Vec::new();
    go(mg, &mut vec![false; mg.n()], &mut Vec::new(), &mut out);
    out.sort();
    out.dedup();
    out
}
