//! Splitting off pairs of edges at a vertex of a multigraph.

use super::ReductionError;
use crate::graph::Multigraph;

/// Replaces the edges `e1 = u1 v` and `e2 = u2 v` by a single edge `u1 u2`.
/// The new edge is appended last; other edge ids shift down past removed ones.
pub fn split_off(mg: &Multigraph, v: usize, e1: usize, e2: usize) -> Result<Multigraph, ReductionError> {
    if mg.degree(v) < 4 {
        return Err(ReductionError::DegreeTooSmall {
            vertex: v,
            degree: mg.degree(v),
        });
    }
    let far = |e: usize| -> Result<usize, ReductionError> {
        match mg.ends(e) {
            (a, b) if a == v => Ok(b),
            (a, b) if b == v => Ok(a),
            _ => Err(ReductionError::HypothesisViolated(
                "split-off".into(),
                format!("edge {e} is not incident with vertex {v}"),
            )),
        }
    };
    if e1 == e2 {
        return Err(ReductionError::HypothesisViolated(
            "split-off".into(),
            "the two edges coincide".into(),
        ));
    }
    let (u1, u2) = (far(e1)?, far(e2)?);
    let mut ends: Vec<(usize, usize)> = (0..mg.m())
        .filter(|&e| e != e1 && e != e2)
        .map(|e| mg.ends(e))
        .collect();
    ends.push((u1, u2));
    Ok(Multigraph::from_edges(mg.n(), &ends))
}

/// Given three edges at `v` in a 2-edge-connected multigraph, splits off
/// `(e1, e2)` if that keeps 2-edge-connectivity and `(e2, e3)` otherwise.
/// Returns the chosen pair and the result.
pub fn split_off_2ec(
    mg: &Multigraph,
    v: usize,
    e1: usize,
    e2: usize,
    e3: usize,
) -> Result<((usize, usize), Multigraph), ReductionError> {
    if mg.degree(v) < 4 {
        return Err(ReductionError::DegreeTooSmall {
            vertex: v,
            degree: mg.degree(v),
        });
    }
    if !mg.is_two_edge_connected() {
        return Err(ReductionError::NotTwoConnected);
    }
    for pair in [(e1, e2), (e2, e3)] {
        let out = split_off(mg, v, pair.0, pair.1)?;
        if out.is_two_edge_connected() {
            return Ok((pair, out));
        }
    }
    Err(ReductionError::HypothesisViolated(
        "split-off".into(),
        "neither pairing keeps the graph 2-edge-connected".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_three_is_rejected() {
        let mg = Multigraph::from_edges(2, &[(0, 1), (0, 1), (0, 1)]);
        assert!(matches!(
            split_off(&mg, 0, 0, 1),
            Err(ReductionError::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn some_pairing_survives_at_degree_four() {
        // vertex 0 joined to a 4-cycle 1-2-3-4
        let mg = Multigraph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4), (4, 1)]);
        for (a, b, c) in [(0, 1, 2), (1, 2, 3), (0, 2, 1), (3, 0, 2)] {
            let (pair, out) = split_off_2ec(&mg, 0, a, b, c).unwrap();
            assert!(pair == (a, b) || pair == (b, c));
            assert!(out.is_two_edge_connected());
            assert_eq!(out.degree(0), 2);
        }
    }

    #[test]
    fn edges_in_different_blocks_split_cleanly() {
        // two triangles sharing vertex 0
        let mg = Multigraph::from_edges(5, &[(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (4, 0)]);
        let (pair, out) = split_off_2ec(&mg, 0, 0, 3, 2).unwrap();
        assert_eq!(pair, (0, 3));
        assert!(out.is_two_edge_connected());
        // same block: splitting 1-0-2 off would leave 0 on a pendant triangle side
        assert!(!split_off(&mg, 0, 0, 2).unwrap().is_two_edge_connected());
    }
}
