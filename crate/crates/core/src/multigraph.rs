//! Abstract multigraphs with loops and parallel edges.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite multigraph. A loop contributes 2 to the degree of its vertex.
///
/// Edges are stored as `(u, v)` with `u <= v`, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::Structural(format!(
                    "edge {u}-{v} out of range for {vertex_count} vertices"
                )));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        Ok(Multigraph {
            vertex_count,
            edges: list,
        })
    }

    pub fn empty(vertex_count: usize) -> Self {
        Multigraph {
            vertex_count,
            edges: Vec::new(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .map(|&(a, b)| (a == v) as usize + (b == v) as usize)
            .sum()
    }

    pub fn is_regular(&self, k: usize) -> bool {
        self.degrees().iter().all(|&d| d == k)
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|&&(u, v)| u == v).count()
    }

    /// Symmetric matrix of edge multiplicities; the diagonal counts loops.
    pub fn multiplicity_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.vertex_count;
        let mut m = vec![vec![0u8; n]; n];
        for &(u, v) in &self.edges {
            m[u][v] += 1;
            if u != v {
                m[v][u] += 1;
            }
        }
        m
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut y = x;
            while p[y] != r {
                let next = p[y];
                p[y] = r;
                y = next;
            }
            r
        }
        for &(u, v) in &self.edges {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
        let mut groups: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; n];
        for v in 0..n {
            let r = find(&mut parent, v);
            if slot[r] == usize::MAX {
                slot[r] = groups.len();
                groups.push(Vec::new());
            }
            groups[slot[r]].push(v);
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Multigraph {
        Multigraph::new(self.vertex_count, self.edges.iter().map(|&(u, v)| (perm[u], perm[v])))
            .expect("relabeling keeps indices in range")
    }

    /// The induced sub-multigraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Multigraph {
        let mut idx = vec![usize::MAX; self.vertex_count];
        for (i, &v) in vertices.iter().enumerate() {
            idx[v] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(u, v)| idx[u] != usize::MAX && idx[v] != usize::MAX)
            .map(|&(u, v)| (idx[u], idx[v]));
        Multigraph::new(vertices.len(), edges).expect("induced indices in range")
    }

    /// Disjoint union; the vertices of `other` are shifted past those of `self`.
    pub fn disjoint_union(&self, other: &Multigraph) -> Multigraph {
        let off = self.vertex_count;
        let edges = self
            .edges
            .iter()
            .copied()
            .chain(other.edges.iter().map(|&(u, v)| (u + off, v + off)));
        Multigraph::new(off + other.vertex_count, edges).expect("union indices in range")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loops_count_twice() {
        let m = Multigraph::new(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_eq!(m.degrees(), vec![3, 3]);
        assert!(m.is_regular(3));
        assert_eq!(m.loop_count(), 2);
        assert_eq!(m.multiplicity_matrix(), vec![vec![1, 1], vec![1, 1]]);
    }

    #[test]
    fn components_of_a_union() {
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let u = theta.disjoint_union(&theta);
        assert_eq!(u.components(), vec![vec![0, 1], vec![2, 3]]);
        assert!(!u.is_connected());
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Multigraph::new(2, [(0, 2)]).is_err());
    }
}
