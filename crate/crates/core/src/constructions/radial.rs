//! The radial graph: vertices and faces of a map joined by corner edges.

use crate::map::EmbeddedGraph;

/// Radial graph of `g`, embedded so that every face is a quadrangle.
///
/// Each corner of `g` (a dart `d` together with its successor `sigma(d)`)
/// becomes one edge from the vertex of `d` to the face that contains the
/// corner. Vertex-vertices keep the rotation of `g`; face-vertices list their
/// corners against the face order.
pub fn radial(g: &EmbeddedGraph) -> EmbeddedGraph {
    let n = g.num_darts();
    let sigma_inv = g.sigma_inv();
    let mut rot = vec![0; 2 * n];
    for d in 0..n {
        rot[2 * d] = 2 * g.sigma(d);
        rot[2 * d + 1] = 2 * sigma_inv[g.alpha(d)] + 1;
    }
    EmbeddedGraph::from_rotation(rot).expect("radial rotation is a permutation")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::canon_multigraph;
    use crate::multigraph::Multigraph;
    use crate::transverse::extract;
    use crate::validate::validate_cq;

    #[test]
    fn radial_of_the_cube_immerses_two_k4() {
        let r = radial(&fixtures::cube());
        let rep = validate_cq(&r);
        assert!(rep.passed(), "{:?}", rep.violations);
        assert_eq!(r.num_vertices(), 14);
        let k4 = Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let two = k4.disjoint_union(&k4);
        assert_eq!(
            canon_multigraph(&extract(&r).unwrap()).unwrap(),
            canon_multigraph(&two).unwrap()
        );
    }

    #[test]
    fn double_radial_keeps_the_extraction() {
        for g in [fixtures::cube(), fixtures::ten_vertex()] {
            let r2 = radial(&radial(&g));
            assert!(validate_cq(&r2).passed());
            assert_eq!(
                canon_multigraph(&extract(&r2).unwrap()).unwrap(),
                canon_multigraph(&extract(&g).unwrap()).unwrap()
            );
        }
    }
}
