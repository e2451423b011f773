//! Graph-first enumeration: generate candidate bipartite graphs, then find
//! every way to choose 4-cycles as faces of a spherical embedding.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::iso::{canon_embedded, CanonicalCode};
use crate::map::EmbeddedGraph;
use crate::validate::validate_cq;

use super::Budget;

/// Same output as [`super::enumerate_cq`], computed independently from
/// abstract graphs: bipartite, degrees 3 and 4, eight vertices of degree 3,
/// `2n - 4` edges, 2-connected, with a face set of 4-cycles forming a sphere.
pub fn enumerate_cq_filtered(n: usize) -> Result<Vec<EmbeddedGraph>> {
    enumerate_cq_filtered_with(n, &Budget::default())
}

pub fn enumerate_cq_filtered_with(n: usize, budget: &Budget) -> Result<Vec<EmbeddedGraph>> {
    if n < 8 {
        return Err(Error::Precondition(format!("a cubic quadrangulation has at least 8 vertices, got {n}")));
    }
    if n > budget.oracle_max_n {
        return Err(Error::Budget(format!(
            "n = {n} exceeds the filter enumeration budget of {}",
            budget.oracle_max_n
        )));
    }
    let mut graphs = Vec::new();
    for p in 2..n - 1 {
        bipartite_matrices(p, n - p, 2 * n - 4, &mut graphs);
    }
    let codes: BTreeSet<CanonicalCode> = graphs
        .par_iter()
        .flat_map_iter(|adj| {
            let mut out = Vec::new();
            if two_connected(adj) {
                for faces in face_sets(adj, n - 2) {
                    if let Some(g) = embed(adj, &faces) {
                        if validate_cq(&g).passed() {
                            out.push(canon_embedded(&g, true));
                        }
                    }
                }
            }
            out
        })
        .collect();
    codes.iter().map(|c| c.to_embedded()).collect()
}

/// Neighbour lists of every `p x q` biadjacency matrix with row and column
/// sums in {3, 4}, exactly eight sums equal to 3, and `edges` ones, whose rows
/// and columns are both lexicographically non-increasing.
fn bipartite_matrices(p: usize, q: usize, edges: usize, out: &mut Vec<Vec<Vec<usize>>>) {
    let mut rows: Vec<u32> = Vec::with_capacity(p);
    let candidates: Vec<u32> = (0u32..1 << q)
        .rev()
        .filter(|r| matches!(r.count_ones(), 3 | 4))
        .collect();
    fn rec(
        p: usize,
        q: usize,
        edges: usize,
        rows: &mut Vec<u32>,
        cands: &[u32],
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let bit = |r: u32, j: usize| (r >> (q - 1 - j)) & 1;
        let col_sum = |rows: &[u32], j: usize| rows.iter().map(|&r| bit(r, j)).sum::<u32>() as usize;
        let used: usize = rows.iter().map(|r| r.count_ones() as usize).sum();
        if rows.len() == p {
            let sums: Vec<usize> = (0..q).map(|j| col_sum(rows, j)).collect();
            let row3 = rows.iter().filter(|r| r.count_ones() == 3).count();
            let col3 = sums.iter().filter(|&&s| s == 3).count();
            if used == edges && sums.iter().all(|&s| s == 3 || s == 4) && row3 + col3 == 8 {
                let mut adj = vec![Vec::new(); p + q];
                for (i, &r) in rows.iter().enumerate() {
                    for j in 0..q {
                        if bit(r, j) == 1 {
                            adj[i].push(p + j);
                            adj[p + j].push(i);
                        }
                    }
                }
                out.push(adj);
            }
            return;
        }
        let left = p - rows.len();
        for &r in cands {
            if rows.last().is_some_and(|&last| r > last) {
                continue;
            }
            let total = used + r.count_ones() as usize;
            if total + 3 * (left - 1) > edges || total + 4 * (left - 1) < edges {
                continue;
            }
            rows.push(r);
            let ok = (0..q).all(|j| col_sum(rows, j) <= 4)
                && (0..q.saturating_sub(1)).all(|j| {
                    let a: Vec<u32> = rows.iter().map(|&x| bit(x, j)).collect();
                    let b: Vec<u32> = rows.iter().map(|&x| bit(x, j + 1)).collect();
                    a >= b
                });
            if ok {
                rec(p, q, edges, rows, cands, out);
            }
            rows.pop();
        }
    }
    rec(p, q, edges, &mut rows, &candidates, out);
}

fn two_connected(adj: &[Vec<usize>]) -> bool {
    let n = adj.len();
    (0..=n).all(|skip| {
        let start = if skip == 0 { 1 } else { 0 };
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut stack = vec![start];
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if w != skip && !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == if skip < n { n - 1 } else { n }
    })
}

/// Every set of `count` 4-cycles covering each edge exactly twice.
fn face_sets(adj: &[Vec<usize>], count: usize) -> Vec<Vec<[usize; 4]>> {
    let n = adj.len();
    let edge_id: HashMap<(usize, usize), usize> = {
        let mut m = HashMap::new();
        for u in 0..n {
            for &v in &adj[u] {
                if u < v {
                    let k = m.len();
                    m.insert((u, v), k);
                }
            }
        }
        m
    };
    let eid = |u: usize, v: usize| edge_id[&(u.min(v), u.max(v))];
    // 4-cycles a-b-c-d with a the smallest vertex and b < d
    let mut cycles: Vec<[usize; 4]> = Vec::new();
    for a in 0..n {
        for &b in adj[a].iter().filter(|&&b| b > a) {
            for &d in adj[a].iter().filter(|&&d| d > b) {
                for &c in adj[b].iter().filter(|&&c| c > a && c != d) {
                    if adj[d].contains(&c) {
                        cycles.push([a, b, c, d]);
                    }
                }
            }
        }
    }
    let ne = edge_id.len();
    let cyc_edges: Vec<[usize; 4]> = cycles
        .iter()
        .map(|c| [eid(c[0], c[1]), eid(c[1], c[2]), eid(c[2], c[3]), eid(c[3], c[0])])
        .collect();
    let mut on_edge = vec![Vec::new(); ne];
    for (i, es) in cyc_edges.iter().enumerate() {
        for &e in es {
            on_edge[e].push(i);
        }
    }
    struct Search<'a> {
        cyc_edges: &'a [[usize; 4]],
        on_edge: &'a [Vec<usize>],
        uses: Vec<u8>,
        chosen: Vec<usize>,
        taken: Vec<bool>,
        count: usize,
        out: Vec<Vec<usize>>,
    }
    impl Search<'_> {
        fn go(&mut self) {
            let e = (0..self.uses.len())
                .filter(|&e| self.uses[e] < 2)
                .min_by_key(|&e| self.options(e).count());
            let Some(e) = e else {
                if self.chosen.len() == self.count {
                    self.out.push(self.chosen.clone());
                }
                return;
            };
            if self.chosen.len() >= self.count {
                return;
            }
            // the smallest remaining face on e keeps each face set unique
            let first_free = self.on_edge[e].iter().copied().filter(|&i| !self.taken[i]);
            let opts: Vec<usize> = first_free
                .filter(|&i| self.cyc_edges[i].iter().all(|&x| self.uses[x] < 2))
                .filter(|&i| self.chosen.iter().all(|&j| j < i || !self.on_edge[e].contains(&j)) || self.uses[e] == 0)
                .collect();
            for i in opts {
                self.taken[i] = true;
                self.chosen.push(i);
                for &x in &self.cyc_edges[i] {
                    self.uses[x] += 1;
                }
                self.go();
                for &x in &self.cyc_edges[i] {
                    self.uses[x] -= 1;
                }
                self.chosen.pop();
                self.taken[i] = false;
            }
        }

        fn options(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
            self.on_edge[e]
                .iter()
                .copied()
                .filter(|&i| !self.taken[i] && self.cyc_edges[i].iter().all(|&x| self.uses[x] < 2))
        }
    }
    let mut s = Search {
        cyc_edges: &cyc_edges,
        on_edge: &on_edge,
        uses: vec![0; ne],
        chosen: Vec::new(),
        taken: vec![false; cycles.len()],
        count,
        out: Vec::new(),
    };
    s.go();
    let mut sets: Vec<Vec<usize>> = s
        .out
        .into_iter()
        .map(|mut v| {
            v.sort_unstable();
            v
        })
        .collect();
    sets.sort();
    sets.dedup();
    sets.into_iter()
        .map(|v| v.into_iter().map(|i| cycles[i]).collect())
        .collect()
}

/// Orients the faces coherently and reads off the rotation system, or
/// returns `None` when the faces do not form a connected closed surface
/// whose vertex links are single cycles.
fn embed(adj: &[Vec<usize>], faces: &[[usize; 4]]) -> Option<EmbeddedGraph> {
    let mut dart_of: HashMap<(usize, usize), usize> = HashMap::new();
    let mut alpha = Vec::new();
    for (u, nbrs) in adj.iter().enumerate() {
        for &v in nbrs {
            if u < v {
                let d = alpha.len();
                dart_of.insert((u, v), d);
                dart_of.insert((v, u), d + 1);
                alpha.extend([d + 1, d]);
            }
        }
    }
    let nf = faces.len();
    // faces meeting along an edge must traverse it in opposite directions
    let mut by_edge: HashMap<(usize, usize), Vec<(usize, bool)>> = HashMap::new();
    for (f, c) in faces.iter().enumerate() {
        for k in 0..4 {
            let (u, v) = (c[k], c[(k + 1) % 4]);
            by_edge.entry((u.min(v), u.max(v))).or_default().push((f, u < v));
        }
    }
    let mut flip: Vec<Option<bool>> = vec![None; nf];
    flip[0] = Some(false);
    let mut stack = vec![0];
    while let Some(f) = stack.pop() {
        for k in 0..4 {
            let (u, v) = (faces[f][k], faces[f][(k + 1) % 4]);
            let sides = &by_edge[&(u.min(v), u.max(v))];
            let (&(f1, dir1), &(f2, dir2)) = (&sides[0], &sides[1]);
            let (other, same_dir) = if f1 == f { (f2, dir1 == dir2) } else { (f1, dir1 == dir2) };
            let want = flip[f].expect("visited") ^ same_dir;
            match flip[other] {
                None => {
                    flip[other] = Some(want);
                    stack.push(other);
                }
                Some(x) if x != want => return None,
                Some(_) => {}
            }
        }
    }
    let nd = alpha.len();
    let mut phi = vec![usize::MAX; nd];
    for (f, c) in faces.iter().enumerate() {
        let mut c = *c;
        if flip[f]? {
            c.reverse();
        }
        for k in 0..4 {
            let d = dart_of[&(c[k], c[(k + 1) % 4])];
            let e = dart_of[&(c[(k + 1) % 4], c[(k + 2) % 4])];
            if phi[d] != usize::MAX {
                return None;
            }
            phi[d] = e;
        }
    }
    if phi.contains(&usize::MAX) {
        return None;
    }
    let sigma: Vec<usize> = (0..nd).map(|d| phi[alpha[d]]).collect();
    let g = EmbeddedGraph::from_permutations(sigma, alpha).ok()?;
    (g.num_vertices() == adj.len()).then_some(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cube_graph_has_one_face_set() {
        let g = fixtures::cube();
        let adj: Vec<Vec<usize>> = (0..8)
            .map(|v| g.vertex_darts(v).iter().map(|&d| g.head(d)).collect())
            .collect();
        let sets = face_sets(&adj, 6);
        assert_eq!(sets.len(), 1);
        let h = embed(&adj, &sets[0]).unwrap();
        assert_eq!(canon_embedded(&h, true), canon_embedded(&g, true));
    }

    #[test]
    fn small_orders() {
        assert_eq!(enumerate_cq_filtered(8).unwrap().len(), 1);
        assert!(enumerate_cq_filtered(9).unwrap().is_empty());
        assert_eq!(enumerate_cq_filtered(10).unwrap().len(), 1);
    }
}
