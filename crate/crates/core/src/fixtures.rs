//! Small hand-built maps used throughout the tests and by the CLI.

use crate::constructions::CablingWalk;
use crate::disk::DiskQuadrangulation;
use crate::map::EmbeddedGraph;

/// The cube, drawn as an outer square 0-1-2-3 around an inner square 4-5-6-7.
pub fn cube() -> EmbeddedGraph {
    EmbeddedGraph::from_adjacency(&[
        vec![1, 4, 3],
        vec![2, 5, 0],
        vec![3, 6, 1],
        vec![2, 0, 7],
        vec![5, 7, 0],
        vec![6, 4, 1],
        vec![2, 7, 5],
        vec![6, 3, 4],
    ])
    .expect("cube fixture")
}

/// Vertex names of [`ten_vertex`].
pub mod ten {
    pub const U: usize = 0;
    pub const A: usize = 1;
    pub const B: usize = 2;
    pub const C: usize = 3;
    pub const D: usize = 4;
    pub const V1: usize = 5;
    pub const V2: usize = 6;
    pub const V3: usize = 7;
    pub const V4: usize = 8;
    pub const W: usize = 9;
}

/// The unique cubic quadrangulation on ten vertices: a crossing `u` with rim
/// `a, b, c, d`, corner vertices `v1..v4` between consecutive rim vertices,
/// and a second crossing `w` joined to all four corners.
pub fn ten_vertex() -> EmbeddedGraph {
    EmbeddedGraph::from_adjacency(&[
        vec![1, 2, 3, 4],
        vec![5, 0, 8],
        vec![5, 6, 0],
        vec![0, 6, 7],
        vec![8, 0, 7],
        vec![9, 2, 1],
        vec![2, 9, 3],
        vec![4, 3, 9],
        vec![1, 4, 9],
        vec![5, 8, 7, 6],
    ])
    .expect("ten-vertex fixture")
}

/// A triangle (odd cycle).
pub fn triangle() -> EmbeddedGraph {
    EmbeddedGraph::from_adjacency(&[vec![1, 2], vec![2, 0], vec![0, 1]]).expect("triangle")
}

/// Builds a plane graph from vertex positions and straight edges; rotations
/// are read off by angle.
pub fn from_positions(points: &[(f64, f64)], edges: &[(usize, usize)]) -> EmbeddedGraph {
    let mut nbrs = vec![Vec::new(); points.len()];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    for (u, list) in nbrs.iter_mut().enumerate() {
        let (x0, y0) = points[u];
        list.sort_by(|&a, &b| {
            let ta = (points[a].1 - y0).atan2(points[a].0 - x0);
            let tb = (points[b].1 - y0).atan2(points[b].0 - x0);
            ta.partial_cmp(&tb).unwrap()
        });
    }
    EmbeddedGraph::from_adjacency(&nbrs).expect("plane graph from positions")
}

/// A disk whose outer face is the unbounded face of a straight-line drawing.
pub fn disk_from_positions(points: &[(f64, f64)], edges: &[(usize, usize)]) -> DiskQuadrangulation {
    let g = from_positions(points, edges);
    // Faces keep their interior on the right, so bounded faces have negative
    // signed area and the unbounded one positive.
    let mut outer = None;
    for f in g.faces() {
        let area: f64 = f
            .iter()
            .map(|&d| {
                let (x0, y0) = points[g.vertex(d)];
                let (x1, y1) = points[g.head(d)];
                x0 * y1 - x1 * y0
            })
            .sum();
        if area > 0.0 {
            outer = Some(f[0]);
        }
    }
    DiskQuadrangulation::new(g, outer.expect("drawing has an unbounded face"))
}

/// Rectangular grid disk with `rows x cols` quadrangles.
pub fn grid_disk(rows: usize, cols: usize) -> DiskQuadrangulation {
    let idx = |r: usize, c: usize| r * (cols + 1) + c;
    let mut points = Vec::new();
    for r in 0..=rows {
        for c in 0..=cols {
            points.push((c as f64, r as f64));
        }
    }
    let mut edges = Vec::new();
    for r in 0..=rows {
        for c in 0..=cols {
            if c < cols {
                edges.push((idx(r, c), idx(r, c + 1)));
            }
            if r < rows {
                edges.push((idx(r, c), idx(r + 1, c)));
            }
        }
    }
    disk_from_positions(&points, &edges)
}

/// A single quadrangle viewed as a disk.
pub fn square_disk() -> DiskQuadrangulation {
    grid_disk(1, 1)
}

/// The hexagonal disk with one interior degree-3 vertex joined to every other
/// boundary vertex. Boundary vertices are `0..6`, the centre is `6`; vertices
/// `0, 2, 4` have degree 3.
pub fn tripod_disk() -> DiskQuadrangulation {
    let mut points: Vec<(f64, f64)> = (0..6)
        .map(|k| {
            let t = std::f64::consts::PI / 3.0 * k as f64;
            (t.cos(), t.sin())
        })
        .collect();
    points.push((0.0, 0.0));
    let mut edges: Vec<(usize, usize)> = (0..6).map(|k| (k, (k + 1) % 6)).collect();
    edges.extend([(6, 0), (6, 2), (6, 4)]);
    disk_from_positions(&points, &edges)
}

/// Walk text for [`cable_example`].
pub const CABLE_WALK: &str = "e0R e3S e10L e11R e7S e1L";

/// A cabling walk on the cube with two right turns, two left turns and two
/// steps between them, so the extraction repeats every four strands.
pub fn cable_example() -> (EmbeddedGraph, CablingWalk) {
    let g = cube();
    let w = CablingWalk::parse(&g, CABLE_WALK).expect("fixture walk is valid");
    (g, w)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_spherical_quadrangulations() {
        for g in [cube(), ten_vertex()] {
            assert_eq!(g.euler_characteristic(), 2);
            assert!(g.faces().iter().all(|f| f.len() == 4));
        }
        assert_eq!(ten_vertex().num_faces(), 8);
    }

    #[test]
    fn tripod_outer_face_is_the_hexagon() {
        let d = tripod_disk();
        assert_eq!(d.boundary().len(), 6);
    }
}
