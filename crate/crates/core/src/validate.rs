//! Validation of cubic quadrangulations and bipartition.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::EmbeddedGraph;

/// Degree-3 and degree-4 vertex counts per bipartition block.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BlockDegreeCounts {
    pub a3: usize,
    pub a4: usize,
    pub b3: usize,
    pub b4: usize,
}

/// A named failed check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum Violation {
    Disconnected { components: usize },
    Loop { vertex: usize },
    ParallelEdges { u: usize, v: usize },
    NotSpherical { euler: i64 },
    FaceLength { dart: usize, length: usize },
    VertexDegree { vertex: usize, degree: usize },
    DegreeThreeCount { nu3: usize },
    FaceCount { faces: usize, nu4: usize },
    NotBipartite { odd_cycle: Vec<usize> },
    BlockIdentity { value: i64 },
    OddOrderSplit { a3: usize, b3: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Disconnected { components } => write!(f, "disconnected: {components} components"),
            Violation::Loop { vertex } => write!(f, "loop at vertex {vertex}"),
            Violation::ParallelEdges { u, v } => write!(f, "parallel edges between {u} and {v}"),
            Violation::NotSpherical { euler } => write!(f, "Euler characteristic {euler}, expected 2"),
            Violation::FaceLength { dart, length } => write!(f, "face at dart {dart} has length {length}"),
            Violation::VertexDegree { vertex, degree } => write!(f, "vertex {vertex} has degree {degree}"),
            Violation::DegreeThreeCount { nu3 } => write!(f, "{nu3} vertices of degree 3, expected 8"),
            Violation::FaceCount { faces, nu4 } => {
                write!(f, "{faces} faces but {nu4} vertices of degree 4, expected faces = 6 + nu4")
            }
            Violation::NotBipartite { odd_cycle } => write!(f, "odd cycle {odd_cycle:?}"),
            Violation::BlockIdentity { value } => {
                write!(f, "block identity 3a3 + 2(a4 - b4) evaluates to {value}, expected 12")
            }
            Violation::OddOrderSplit { a3, b3 } => {
                write!(f, "odd order but degree-3 vertices split {a3}/{b3}, expected 6/2")
            }
        }
    }
}

/// Outcome of [`validate_cq`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub is_spherical: bool,
    pub is_simple: bool,
    pub is_connected: bool,
    pub num_vertices: usize,
    pub num_edges: usize,
    pub num_faces: usize,
    /// Sorted face lengths.
    pub face_lengths: Vec<usize>,
    pub degree_counts: BTreeMap<usize, usize>,
    pub nu3: usize,
    pub nu4: usize,
    pub bipartition_blocks: Option<(Vec<usize>, Vec<usize>)>,
    pub block_degree_counts: Option<BlockDegreeCounts>,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Either a proper 2-colouring or an odd closed walk.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bipartition {
    /// Block `A` contains vertex 0.
    Blocks(Vec<usize>, Vec<usize>),
    /// Vertex sequence of an odd cycle; consecutive entries (cyclically) are adjacent.
    OddCycle(Vec<usize>),
}

/// 2-colours `g` by breadth-first parity.
pub fn bipartition(g: &EmbeddedGraph) -> Result<Bipartition> {
    let n = g.num_vertices();
    if n == 0 {
        return Ok(Bipartition::Blocks(Vec::new(), Vec::new()));
    }
    let comps = g.components();
    if comps.len() > 1 {
        return Err(Error::Disconnected(comps[1][0]));
    }
    let mut colour = vec![u8::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![0usize; n];
    colour[0] = 0;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for d in g.vertex_darts(v) {
            let w = g.head(d);
            if colour[w] == u8::MAX {
                colour[w] = 1 - colour[v];
                parent[w] = v;
                depth[w] = depth[v] + 1;
                queue.push_back(w);
            } else if colour[w] == colour[v] {
                return Ok(Bipartition::OddCycle(tree_cycle(&parent, &depth, v, w)));
            }
        }
    }
    let a = (0..n).filter(|&v| colour[v] == 0).collect();
    let b = (0..n).filter(|&v| colour[v] == 1).collect();
    Ok(Bipartition::Blocks(a, b))
}

fn tree_cycle(parent: &[usize], depth: &[usize], u: usize, v: usize) -> Vec<usize> {
    if u == v {
        return vec![u];
    }
    let (mut x, mut y) = (u, v);
    let mut left = vec![x];
    let mut right = vec![y];
    while depth[x] > depth[y] {
        x = parent[x];
        left.push(x);
    }
    while depth[y] > depth[x] {
        y = parent[y];
        right.push(y);
    }
    while x != y {
        x = parent[x];
        y = parent[y];
        left.push(x);
        right.push(y);
    }
    right.pop();
    right.reverse();
    left.extend(right);
    left
}

/// Checks that `g` is a cubic quadrangulation and records the counting
/// identities that every cubic quadrangulation satisfies.
pub fn validate_cq(g: &EmbeddedGraph) -> ValidationReport {
    let mut violations = Vec::new();
    let comps = g.components();
    let is_connected = comps.len() <= 1;
    if !is_connected {
        violations.push(Violation::Disconnected {
            components: comps.len(),
        });
    }

    let mut seen = std::collections::BTreeSet::new();
    let mut is_simple = true;
    for d in 0..g.num_darts() {
        if d > g.alpha(d) {
            continue;
        }
        let (u, v) = (g.vertex(d), g.head(d));
        if u == v {
            is_simple = false;
            violations.push(Violation::Loop { vertex: u });
        } else if !seen.insert((u.min(v), u.max(v))) {
            is_simple = false;
            violations.push(Violation::ParallelEdges {
                u: u.min(v),
                v: u.max(v),
            });
        }
    }

    let euler = g.euler_characteristic();
    let is_spherical = is_connected && euler == 2;
    if euler != 2 {
        violations.push(Violation::NotSpherical { euler });
    }

    let faces = g.faces();
    let mut face_lengths: Vec<usize> = faces.iter().map(Vec::len).collect();
    for f in &faces {
        if f.len() != 4 {
            violations.push(Violation::FaceLength {
                dart: f[0],
                length: f.len(),
            });
        }
    }
    face_lengths.sort_unstable();

    let degrees = g.degrees();
    let mut degree_counts = BTreeMap::new();
    for (v, &k) in degrees.iter().enumerate() {
        *degree_counts.entry(k).or_insert(0) += 1;
        if k != 3 && k != 4 {
            violations.push(Violation::VertexDegree { vertex: v, degree: k });
        }
    }
    let nu3 = degree_counts.get(&3).copied().unwrap_or(0);
    let nu4 = degree_counts.get(&4).copied().unwrap_or(0);

    let mut bipartition_blocks = None;
    let mut block_degree_counts = None;
    let structural_ok = violations.is_empty();
    if is_connected {
        match bipartition(g).expect("connected") {
            Bipartition::Blocks(a, b) => {
                let count = |blk: &[usize], k: usize| blk.iter().filter(|&&v| degrees[v] == k).count();
                block_degree_counts = Some(BlockDegreeCounts {
                    a3: count(&a, 3),
                    a4: count(&a, 4),
                    b3: count(&b, 3),
                    b4: count(&b, 4),
                });
                bipartition_blocks = Some((a, b));
            }
            Bipartition::OddCycle(c) => {
                if structural_ok {
                    violations.push(Violation::NotBipartite { odd_cycle: c });
                }
            }
        }
    }

    if structural_ok {
        if nu3 != 8 {
            violations.push(Violation::DegreeThreeCount { nu3 });
        }
        if faces.len() != 6 + nu4 {
            violations.push(Violation::FaceCount {
                faces: faces.len(),
                nu4,
            });
        }
        if let Some(c) = block_degree_counts {
            let value = 3 * c.a3 as i64 + 2 * (c.a4 as i64 - c.b4 as i64);
            if value != 12 {
                violations.push(Violation::BlockIdentity { value });
            }
            let odd = g.num_vertices() % 2 == 1;
            if odd && !matches!((c.a3, c.b3), (6, 2) | (2, 6)) {
                violations.push(Violation::OddOrderSplit { a3: c.a3, b3: c.b3 });
            }
        }
    }

    ValidationReport {
        is_spherical,
        is_simple,
        is_connected,
        num_vertices: g.num_vertices(),
        num_edges: g.num_edges(),
        num_faces: faces.len(),
        face_lengths,
        degree_counts,
        nu3,
        nu4,
        bipartition_blocks,
        block_degree_counts,
        violations,
    }
}

/// Vertices whose removal disconnects `g` (Tarjan's low-point scan).
pub fn cut_vertices(g: &EmbeddedGraph) -> Vec<usize> {
    let n = g.num_vertices();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut timer = 0;
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        // iterative DFS over (vertex, parent edge dart, neighbour darts, index)
        let mut stack: Vec<(usize, usize, Vec<usize>, usize)> = Vec::new();
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, usize::MAX, g.vertex_darts(root), 0));
        let mut root_children = 0;
        while let Some(top) = stack.last_mut() {
            let (v, pdart) = (top.0, top.1);
            let next = top.2.get(top.3).copied();
            top.3 += 1;
            if let Some(d) = next {
                if pdart != usize::MAX && d == g.alpha(pdart) {
                    continue;
                }
                let w = g.head(d);
                if disc[w] == usize::MAX {
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    if v == root {
                        root_children += 1;
                    }
                    stack.push((w, d, g.vertex_darts(w), 0));
                } else {
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(p, _, _, _)) = stack.last() {
                    low[p] = low[p].min(low[v]);
                    if p != root && low[v] >= disc[p] {
                        is_cut[p] = true;
                    }
                }
            }
        }
        if root_children > 1 {
            is_cut[root] = true;
        }
    }
    (0..n).filter(|&v| is_cut[v]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::map::MapBuilder;

    #[test]
    fn cube_passes() {
        let r = validate_cq(&fixtures::cube());
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!((r.nu3, r.nu4, r.num_faces), (8, 0, 6));
        let (a, b) = r.bipartition_blocks.unwrap();
        assert_eq!((a.len(), b.len()), (4, 4));
    }

    #[test]
    fn ten_vertex_passes() {
        let r = validate_cq(&fixtures::ten_vertex());
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!((r.num_vertices, r.nu4, r.num_faces), (10, 2, 8));
    }

    #[test]
    fn pentagon_face_is_reported() {
        let mut b = MapBuilder::from_graph(&fixtures::cube());
        b.subdivide(0);
        let r = validate_cq(&b.build().unwrap());
        assert!(!r.passed());
        assert!(r.violations.iter().any(|v| matches!(v, Violation::FaceLength { length: 5, .. })));
        assert!(r.violations.iter().any(|v| matches!(v, Violation::VertexDegree { degree: 2, .. })));
    }

    #[test]
    fn triangle_has_odd_cycle_witness() {
        match bipartition(&fixtures::triangle()).unwrap() {
            Bipartition::OddCycle(c) => {
                assert_eq!(c.len(), 3);
                let mut s = c.clone();
                s.sort_unstable();
                assert_eq!(s, vec![0, 1, 2]);
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn bipartition_rejects_disconnected() {
        let two = EmbeddedGraph::from_rotation(vec![0, 1, 2, 3]).unwrap();
        assert_eq!(bipartition(&two), Err(Error::Disconnected(2)));
    }

    #[test]
    fn quadrangulations_have_no_cut_vertex() {
        assert!(cut_vertices(&fixtures::cube()).is_empty());
        let path = EmbeddedGraph::from_adjacency(&[vec![1], vec![0, 2], vec![1]]).unwrap();
        assert_eq!(cut_vertices(&path), vec![1]);
    }
}
