//! Census of cubic multigraphs (loops and parallel edges allowed).

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{canon_multigraph, CanonicalCode};
use crate::multigraph::Multigraph;

/// Isomorphism classes found by a census run.
#[derive(Clone, Debug, Serialize)]
pub struct CensusResult {
    /// Connected classes per vertex count.
    pub connected: BTreeMap<usize, Vec<CanonicalCode>>,
    /// Disconnected classes on eight vertices per component-size partition.
    pub disconnected_8: BTreeMap<String, Vec<CanonicalCode>>,
}

impl CensusResult {
    pub fn connected_count(&self, n: usize) -> Option<usize> {
        self.connected.get(&n).map(Vec::len)
    }

    pub fn disconnected_8_count(&self) -> usize {
        self.disconnected_8.values().map(Vec::len).sum()
    }

    /// Every class on eight vertices, connected or not, sorted.
    pub fn all_8(&self) -> Vec<CanonicalCode> {
        let mut v: Vec<CanonicalCode> = self.connected.get(&8).cloned().unwrap_or_default();
        v.extend(self.disconnected_8.values().flatten().cloned());
        v.sort();
        v
    }
}

/// Connected cubic multigraphs on `n` vertices, one per class, sorted by code.
pub fn connected_cubic_multigraphs(n: usize) -> Result<Vec<(CanonicalCode, Multigraph)>> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::Precondition(format!(
            "a cubic multigraph needs an even positive number of vertices, got {n}"
        )));
    }
    if n > 8 {
        return Err(Error::Budget(format!("census is limited to 8 vertices, got {n}")));
    }
    let mut found = BTreeMap::new();
    let mut mat = vec![vec![0u8; n]; n];
    let mut deg = vec![0u8; n];
    fill(&mut mat, &mut deg, 0, 0, &mut |m| {
        let g = from_matrix(m);
        let code = canon_multigraph(&g).expect("within bound");
        found.entry(code).or_insert(g);
    });
    Ok(found.into_iter().collect())
}

/// Runs the connected census for `n`.
pub fn census_connected_cubic_multigraphs(n: usize) -> Result<CensusResult> {
    let codes = connected_cubic_multigraphs(n)?.into_iter().map(|(c, _)| c).collect();
    Ok(CensusResult {
        connected: BTreeMap::from([(n, codes)]),
        disconnected_8: BTreeMap::new(),
    })
}

/// Connected censuses for 2, 4, 6 and 8 vertices together with the
/// disconnected classes on eight vertices, built as multisets of connected
/// components for each partition of 8 into even parts.
pub fn census_disconnected_8() -> Result<CensusResult> {
    let mut classes = BTreeMap::new();
    let mut connected = BTreeMap::new();
    for n in [2, 4, 6, 8] {
        let list = connected_cubic_multigraphs(n)?;
        connected.insert(n, list.iter().map(|(c, _)| c.clone()).collect::<Vec<_>>());
        classes.insert(n, list.into_iter().map(|(_, g)| g).collect::<Vec<_>>());
    }
    let mut disconnected_8 = BTreeMap::new();
    for parts in [vec![2, 2, 2, 2], vec![4, 2, 2], vec![6, 2], vec![4, 4]] {
        let mut codes = BTreeSet::new();
        multisets(&parts, &classes, 0, 0, Multigraph::empty(0), &mut |g| {
            codes.insert(canon_multigraph(&g).expect("eight vertices"));
        });
        let name = parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+");
        disconnected_8.insert(name, codes.into_iter().collect());
    }
    Ok(CensusResult {
        connected,
        disconnected_8,
    })
}

/// Disjoint unions choosing a class for each part, with non-decreasing class
/// indices among equal parts.
fn multisets(
    parts: &[usize],
    classes: &BTreeMap<usize, Vec<Multigraph>>,
    at: usize,
    min_index: usize,
    acc: Multigraph,
    emit: &mut dyn FnMut(Multigraph),
) {
    if at == parts.len() {
        emit(acc);
        return;
    }
    let list = &classes[&parts[at]];
    for (i, g) in list.iter().enumerate().skip(min_index) {
        let next_min = if parts.get(at + 1) == Some(&parts[at]) { i } else { 0 };
        multisets(parts, classes, at + 1, next_min, acc.disjoint_union(g), emit);
    }
}

pub(crate) fn from_matrix(m: &[Vec<u8>]) -> Multigraph {
    let n = m.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for _ in 0..m[i][i] {
            edges.push((i, i));
        }
        for j in i + 1..n {
            for _ in 0..m[i][j] {
                edges.push((i, j));
            }
        }
    }
    Multigraph::new(n, edges).expect("indices in range")
}

/// Fills the upper triangle entry by entry (loops count twice towards the
/// degree) and emits every cubic matrix whose labelling is a breadth-first
/// order: each vertex after the first has an earlier neighbour, and these
/// first neighbours are non-decreasing. Such matrices are exactly the
/// connected ones, each class appearing at least once.
fn fill(mat: &mut Vec<Vec<u8>>, deg: &mut Vec<u8>, i: usize, j: usize, emit: &mut dyn FnMut(&[Vec<u8>])) {
    let n = mat.len();
    if i == n {
        emit(mat);
        return;
    }
    if j == n {
        if deg[i] != 3 || !bfs_prefix_ok(mat, i) {
            return;
        }
        fill(mat, deg, i + 1, i + 1, emit);
        return;
    }
    let room = 3 - deg[i];
    let options: Vec<u8> = if j == i {
        (0..=room / 2).collect()
    } else {
        (0..=room.min(3 - deg[j])).collect()
    };
    for k in options {
        let w = if j == i { 2 * k } else { k };
        mat[i][j] = k;
        mat[j][i] = k;
        deg[i] += w;
        if j != i {
            deg[j] += w;
        }
        fill(mat, deg, i, j + 1, emit);
        deg[i] -= w;
        if j != i {
            deg[j] -= w;
        }
        mat[i][j] = 0;
        mat[j][i] = 0;
    }
}

/// After rows `0..=i` are complete: vertex `i + 1` must already be reached,
/// and first earlier neighbours of later vertices must be non-decreasing,
/// with unreached vertices last.
fn bfs_prefix_ok(mat: &[Vec<u8>], i: usize) -> bool {
    let n = mat.len();
    let mut prev = 0;
    let mut unreached = false;
    for v in i + 1..n {
        match (0..=i).find(|&u| mat[u][v] > 0) {
            Some(p) => {
                if unreached || p < prev {
                    return false;
                }
                prev = p;
            }
            None => {
                if v == i + 1 {
                    return false;
                }
                unreached = true;
            }
        }
    }
    true
}
