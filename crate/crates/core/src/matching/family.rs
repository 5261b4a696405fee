//! Spanning Eulerian subgraphs from the 2-factors complementary to the
//! matchings of a decomposition.

use num::{BigInt, BigRational, One, Zero};

use super::{MatchingDecomposition, MatchingError};
use crate::eulerian::EulerianSubgraph;
use crate::graph::{Graph, Multigraph};

/// Eulerian subgraphs `F_i` of the original graph with probabilities `p_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianFamily {
    pub members: Vec<EulerianSubgraph>,
    pub probabilities: Vec<BigRational>,
}

impl EulerianFamily {
    /// Total probability of the members containing each edge of `g`.
    pub fn edge_probabilities(&self, g: &Graph) -> Vec<BigRational> {
        let mut p = vec![BigRational::zero(); g.m()];
        for (f, a) in self.members.iter().zip(&self.probabilities) {
            for &e in f.edges() {
                p[e] += a;
            }
        }
        p
    }

    /// Checks that every edge is used with probability exactly 2/3.
    pub fn has_uniform_edge_probability(&self, g: &Graph) -> bool {
        let two_thirds = BigRational::new(BigInt::from(2), BigInt::from(3));
        let total: BigRational = self.probabilities.iter().sum();
        total == BigRational::one() && self.edge_probabilities(g).iter().all(|p| *p == two_thirds)
    }

    /// Index of the first member of minimum excess.
    pub fn best(&self) -> Option<usize> {
        (0..self.members.len()).min_by_key(|&i| (self.members[i].excess(), i))
    }
}

/// Expands the complement of each matching into a spanning Eulerian
/// subgraph of `g`; `mg` must be the suppression of `g`.
pub fn eulerian_family(g: &Graph, mg: &Multigraph, d: &MatchingDecomposition) -> Result<EulerianFamily, MatchingError> {
    let mismatch = |s: &str| MatchingError::MismatchedDecomposition(s.to_string());
    if d.matchings.iter().flat_map(|m| &m.edges).any(|&e| e >= mg.m()) {
        return Err(mismatch("edge id out of range"));
    }
    let mut members = Vec::with_capacity(d.matchings.len());
    for m in &d.matchings {
        let edges = (0..mg.m())
            .filter(|&e| !m.contains(e))
            .flat_map(|e| mg.graph_edges(g, e));
        let f = EulerianSubgraph::new(g, edges).map_err(|err| mismatch(&err.to_string()))?;
        members.push(f);
    }
    Ok(EulerianFamily {
        members,
        probabilities: d.coefficients.clone(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::named;
    use crate::graph::suppress_degree_two;
    use crate::matching::decompose_uniform;

    fn family(g: &Graph) -> EulerianFamily {
        let mg = suppress_degree_two(g).unwrap();
        let d = decompose_uniform(&mg).unwrap();
        eulerian_family(g, &mg, &d).unwrap()
    }

    #[test]
    fn k4_hamilton_cycles() {
        let g = named::k4();
        let f = family(&g);
        assert_eq!(f.members.len(), 3);
        assert!(f
            .members
            .iter()
            .all(|m| m.cycle_count() == 1 && m.isolated_count() == 0));
        assert!(f.has_uniform_edge_probability(&g));
    }

    #[test]
    fn petersen_two_factors() {
        let g = named::petersen();
        let f = family(&g);
        assert_eq!(f.members.len(), 6);
        assert!(f.members.iter().all(|m| m.cycle_count() == 2 && m.excess() == 4));
        assert!(f.has_uniform_edge_probability(&g));
    }

    #[test]
    fn k23_isolates_a_middle_vertex() {
        let g = named::k23();
        let f = family(&g);
        for m in &f.members {
            assert_eq!((m.cycle_count(), m.isolated_count()), (1, 1));
        }
        assert!(f.has_uniform_edge_probability(&g));
        // each degree-two vertex is isolated in exactly one of three members
        for v in 2..5 {
            let isolated: BigRational = f
                .members
                .iter()
                .zip(&f.probabilities)
                .filter(|(m, _)| m.degrees(&g)[v] == 0)
                .map(|(_, p)| p.clone())
                .sum();
            assert_eq!(isolated, BigRational::new(1.into(), 3.into()));
        }
    }
}
