#![allow(dead_code)]

use std::collections::VecDeque;

use quadrimm_core::enumerate::{add_construction_sweep, enumerated_corpus, Budget, Corpus};
use quadrimm_core::iso::canon_embedded;
use quadrimm_core::transverse::{maximal_transverse_walks, WalkKind};
use quadrimm_core::EmbeddedGraph;
use rand::seq::SliceRandom;
use rand::Rng;

/// Enumerated maps up to the default budget plus construction outputs with at
/// most 40 vertices.
pub fn full_corpus() -> Corpus {
    let mut c = enumerated_corpus(Budget::default().max_n, &Budget::default()).unwrap();
    add_construction_sweep(&mut c, 40).unwrap();
    c
}

/// Walk edge sets are disjoint, cover every edge, and go straight across
/// every degree-4 vertex they pass.
pub fn edge_partition(g: &EmbeddedGraph) -> Result<(), String> {
    let walks = maximal_transverse_walks(g).map_err(|e| e.to_string())?;
    let mut used = vec![0usize; g.num_darts()];
    for w in &walks {
        for (i, &d) in w.darts.iter().enumerate() {
            used[d.min(g.alpha(d))] += 1;
            let next = match (w.kind, w.darts.get(i + 1)) {
                (_, Some(&n)) => n,
                (WalkKind::Closed, None) => w.darts[0],
                (WalkKind::CompletePath, None) => {
                    if g.degree(g.head(d)) != 3 {
                        return Err(format!("path ends at degree {}", g.degree(g.head(d))));
                    }
                    continue;
                }
            };
            let back = g.alpha(d);
            if g.degree(g.vertex(back)) != 4 || g.sigma(g.sigma(back)) != next {
                return Err(format!("walk turns at vertex {}", g.vertex(back)));
            }
        }
        if w.kind == WalkKind::CompletePath && g.degree(g.vertex(w.darts[0])) != 3 {
            return Err("path starts at a crossing".into());
        }
    }
    let total: usize = walks.iter().map(|w| w.darts.len()).sum();
    if total != g.num_edges() {
        return Err(format!("walks cover {total} of {} edges", g.num_edges()));
    }
    if (0..g.num_darts()).any(|d| d < g.alpha(d) && used[d] != 1) {
        return Err("an edge is covered twice or not at all".into());
    }
    Ok(())
}

/// Eight degree-3 vertices and six more faces than degree-4 vertices,
/// counted directly from the rotation and face orbits.
pub fn degree_face_counts(g: &EmbeddedGraph) -> Result<(), String> {
    let deg = g.degrees();
    let nu3 = deg.iter().filter(|&&d| d == 3).count();
    let nu4 = deg.iter().filter(|&&d| d == 4).count();
    if nu3 + nu4 != deg.len() {
        return Err("degree outside {3, 4}".into());
    }
    let mut seen = vec![false; g.num_darts()];
    let mut faces = 0;
    for s in 0..g.num_darts() {
        if !seen[s] {
            faces += 1;
            let mut d = s;
            while !seen[d] {
                seen[d] = true;
                d = g.sigma(g.alpha(d));
            }
        }
    }
    if nu3 != 8 || faces != 6 + nu4 {
        return Err(format!("nu3 = {nu3}, faces = {faces}, nu4 = {nu4}"));
    }
    Ok(())
}

/// Two-colours the graph by breadth-first search and checks the block
/// identities for both blocks.
pub fn bipartition_identity(g: &EmbeddedGraph) -> Result<(), String> {
    let n = g.num_vertices();
    let mut colour = vec![None; n];
    colour[0] = Some(false);
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for d in g.vertex_darts(v) {
            let u = g.head(d);
            match colour[u] {
                None => {
                    colour[u] = Some(!colour[v].unwrap());
                    queue.push_back(u);
                }
                Some(c) if c == colour[v].unwrap() => return Err("odd cycle".into()),
                _ => {}
            }
        }
    }
    let count = |side: bool, k: usize| (0..n).filter(|&v| colour[v] == Some(side) && g.degree(v) == k).count() as i64;
    let (a3, a4, b3, b4) = (count(false, 3), count(false, 4), count(true, 3), count(true, 4));
    for (x3, x4, y4) in [(a3, a4, b4), (b3, b4, a4)] {
        if 3 * x3 + 2 * (x4 - y4) != 12 || x3 % 2 != 0 {
            return Err(format!("blocks a3={a3} a4={a4} b3={b3} b4={b4}"));
        }
    }
    if (a4 - b4) % 3 != 0 {
        return Err("degree-4 block sizes differ modulo 3".into());
    }
    if n % 2 == 1 && !((a3, b3) == (6, 2) || (a3, b3) == (2, 6)) {
        return Err(format!("odd order with a3={a3} b3={b3}"));
    }
    Ok(())
}

/// Relabels darts by a random permutation that keeps edges as pairs
/// `2k, 2k + 1`, possibly swapping the two darts of an edge.
pub fn random_relabel(g: &EmbeddedGraph, rng: &mut impl Rng) -> EmbeddedGraph {
    let m = g.num_edges();
    let mut order: Vec<usize> = (0..m).collect();
    order.shuffle(rng);
    let mut perm = vec![0; g.num_darts()];
    let base: Vec<usize> = (0..g.num_darts()).filter(|&d| d < g.alpha(d)).collect();
    for (k, &e) in order.iter().enumerate() {
        let (x, y) = (base[e], g.alpha(base[e]));
        let flip = rng.gen::<bool>();
        perm[x] = 2 * k + flip as usize;
        perm[y] = 2 * k + !flip as usize;
    }
    g.relabel(&perm).unwrap()
}

pub fn relabel_stable(g: &EmbeddedGraph, rng: &mut impl Rng) -> Result<(), String> {
    let h = random_relabel(g, rng);
    if canon_embedded(&h, true) != canon_embedded(g, true) || canon_embedded(&h.mirror(), true) != canon_embedded(g, true) {
        return Err("canonical code changed under relabelling".into());
    }
    Ok(())
}
