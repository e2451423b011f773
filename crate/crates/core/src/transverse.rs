//! Transverse walks, extraction of the immersed cubic multigraph, and reduction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::map::{Dart, EmbeddedGraph, MapBuilder, Smoothed};
use crate::multigraph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WalkKind {
    /// Both ends are degree-3 vertices.
    CompletePath,
    /// A closed walk through degree-4 vertices only.
    Closed,
}

/// A maximal walk that passes straight through every degree-4 vertex it meets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransverseWalk {
    pub darts: Vec<Dart>,
    pub kind: WalkKind,
    pub endpoints: Option<(usize, usize)>,
}

impl TransverseWalk {
    /// Vertices visited, including both endpoints of a path; a closed walk
    /// lists each visit once.
    pub fn vertices(&self, g: &EmbeddedGraph) -> Vec<usize> {
        let mut out: Vec<usize> = self.darts.iter().map(|&d| g.vertex(d)).collect();
        if self.kind == WalkKind::CompletePath {
            out.push(g.head(*self.darts.last().expect("walks are non-empty")));
        }
        out
    }
}

/// The dart leaving the far end of `d` on the opposite side of the crossing.
pub fn straight_exit(g: &EmbeddedGraph, d: Dart) -> Result<Dart> {
    let back = g.alpha(d);
    let degree = g.degree(g.vertex(back));
    if degree != 4 {
        return Err(Error::NotACrossing { dart: d, degree });
    }
    Ok(g.sigma(g.sigma(back)))
}

fn check_degrees(g: &EmbeddedGraph) -> Result<Vec<usize>> {
    let deg = g.degrees();
    for (v, &k) in deg.iter().enumerate() {
        if k != 3 && k != 4 {
            return Err(Error::UnsupportedDegree { vertex: v, degree: k });
        }
    }
    Ok(deg)
}

/// Decomposes the edges of `g` into complete transverse paths and closed
/// transversals.
///
/// Paths come first, ordered by their starting dart; each runs from its
/// smaller endpoint (ties broken by the smaller first dart). Closed walks
/// follow, each starting at its smallest dart.
pub fn maximal_transverse_walks(g: &EmbeddedGraph) -> Result<Vec<TransverseWalk>> {
    let deg = check_degrees(g)?;
    let mut used = vec![false; g.num_darts()];
    let mut out = Vec::new();
    for v in (0..g.num_vertices()).filter(|&v| deg[v] == 3) {
        for d in g.vertex_darts(v) {
            if used[d] {
                continue;
            }
            let mut darts = vec![d];
            let mut x = d;
            while deg[g.head(x)] == 4 {
                x = g.sigma(g.sigma(g.alpha(x)));
                darts.push(x);
            }
            for &y in &darts {
                used[y] = true;
                used[g.alpha(y)] = true;
            }
            let end = g.head(x);
            if end == v {
                let rev_first = g.alpha(x);
                if rev_first < d {
                    darts = darts.iter().rev().map(|&y| g.alpha(y)).collect();
                }
            }
            out.push(TransverseWalk {
                darts,
                kind: WalkKind::CompletePath,
                endpoints: Some((v, end)),
            });
        }
    }
    for d in 0..g.num_darts() {
        if used[d] {
            continue;
        }
        let mut darts = vec![d];
        let mut x = g.sigma(g.sigma(g.alpha(d)));
        while x != d {
            darts.push(x);
            x = g.sigma(g.sigma(g.alpha(x)));
        }
        for &y in &darts {
            used[y] = true;
            used[g.alpha(y)] = true;
        }
        out.push(TransverseWalk {
            darts,
            kind: WalkKind::Closed,
            endpoints: None,
        });
    }
    Ok(out)
}

/// Degree-3 vertices of `g` in increasing order; position `i` is vertex `i`
/// of the extraction.
pub fn extraction_vertices(g: &EmbeddedGraph) -> Vec<usize> {
    (0..g.num_vertices()).filter(|&v| g.degree(v) == 3).collect()
}

/// The cubic multigraph immersed by `g`: one vertex per degree-3 vertex and
/// one edge per complete transverse path.
pub fn extract(g: &EmbeddedGraph) -> Result<Multigraph> {
    let walks = maximal_transverse_walks(g)?;
    let verts = extraction_vertices(g);
    if verts.is_empty() {
        return Err(Error::Precondition("no vertex of degree 3".into()));
    }
    let mut idx = vec![usize::MAX; g.num_vertices()];
    for (i, &v) in verts.iter().enumerate() {
        idx[v] = i;
    }
    let edges = walks
        .iter()
        .filter_map(|w| w.endpoints)
        .map(|(a, b)| (idx[a], idx[b]));
    Multigraph::new(verts.len(), edges)
}

/// Outcome of [`reduce_with_report`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Reduction {
    pub graph: EmbeddedGraph,
    pub deleted_walks: usize,
    /// Components made entirely of transversals, removed without trace.
    pub dropped_components: usize,
}

/// Deletes every closed transversal at once and smooths the vertices left
/// with degree 2.
pub fn reduce_with_report(g: &EmbeddedGraph) -> Result<Reduction> {
    let walks = maximal_transverse_walks(g)?;
    let mut b = MapBuilder::from_graph(g);
    let mut deleted_walks = 0;
    for w in walks.iter().filter(|w| w.kind == WalkKind::Closed) {
        deleted_walks += 1;
        for &d in &w.darts {
            b.remove_edge(d);
        }
    }
    let mut dropped_components = 0;
    for v in 0..b.num_vertex_slots() {
        if b.vertex_alive(v) && b.degree(v) == 2 && b.smooth(v)? == Smoothed::DroppedLoop {
            dropped_components += 1;
        }
    }
    Ok(Reduction {
        graph: b.build()?,
        deleted_walks,
        dropped_components,
    })
}

/// Reduction of `g`: all closed transversals deleted, degree-2 vertices smoothed.
pub fn reduce(g: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    Ok(reduce_with_report(g)?.graph)
}

/// Whether `g` contains no closed transversal.
pub fn is_reduced(g: &EmbeddedGraph) -> Result<bool> {
    Ok(maximal_transverse_walks(g)?
        .iter()
        .all(|w| w.kind == WalkKind::CompletePath))
}

/// A simple cycle of `g` made of complete transverse paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransverseCycle {
    /// Vertices in order; `darts[i]` leaves `vertices[i]`.
    pub vertices: Vec<usize>,
    pub darts: Vec<Dart>,
}

/// Finds a simple cycle of `g` that is a concatenation of complete transverse
/// paths, preferring the shortest one.
pub fn has_complete_transverse_cycle(g: &EmbeddedGraph) -> Result<Option<TransverseCycle>> {
    let paths: Vec<TransverseWalk> = maximal_transverse_walks(g)?
        .into_iter()
        .filter(|w| w.kind == WalkKind::CompletePath)
        .collect();
    let mut candidates = Vec::new();
    let n = g.num_vertices();
    let ends: Vec<(usize, usize)> = paths.iter().map(|p| p.endpoints.unwrap()).collect();
    // simple cycles in the extraction, each found once from its smallest vertex
    let mut stack: Vec<(usize, bool)> = Vec::new();
    let mut on_path = vec![false; n];
    for s in 0..n {
        on_path[s] = true;
        cycle_search(g, &paths, &ends, s, s, &mut stack, &mut on_path, &mut candidates);
        on_path[s] = false;
    }
    candidates.sort_by(|a: &TransverseCycle, b| {
        (a.darts.len(), &a.darts).cmp(&(b.darts.len(), &b.darts))
    });
    Ok(candidates.into_iter().next())
}

#[allow(clippy::too_many_arguments)]
fn cycle_search(
    g: &EmbeddedGraph,
    paths: &[TransverseWalk],
    ends: &[(usize, usize)],
    start: usize,
    at: usize,
    stack: &mut Vec<(usize, bool)>,
    on_path: &mut [bool],
    out: &mut Vec<TransverseCycle>,
) {
    for (i, &(a, b)) in ends.iter().enumerate() {
        if stack.iter().any(|&(j, _)| j == i) {
            continue;
        }
        let (forward, next) = if a == at {
            (true, b)
        } else if b == at {
            (false, a)
        } else {
            continue;
        };
        if a == b && !forward {
            continue;
        }
        if next == start {
            // keep one traversal direction per cycle: the first path index must
            // be smaller than the last, unless the cycle is a single path
            stack.push((i, forward));
            let first = stack[0].0;
            if stack.len() == 1 || first < i {
                if let Some(c) = lift(g, paths, stack) {
                    out.push(c);
                }
            }
            stack.pop();
            continue;
        }
        if next < start || on_path[next] {
            continue;
        }
        on_path[next] = true;
        stack.push((i, forward));
        cycle_search(g, paths, ends, start, next, stack, on_path, out);
        stack.pop();
        on_path[next] = false;
    }
}

fn lift(g: &EmbeddedGraph, paths: &[TransverseWalk], seq: &[(usize, bool)]) -> Option<TransverseCycle> {
    let mut darts = Vec::new();
    for &(i, forward) in seq {
        if forward {
            darts.extend(paths[i].darts.iter().copied());
        } else {
            darts.extend(paths[i].darts.iter().rev().map(|&d| g.alpha(d)));
        }
    }
    let vertices: Vec<usize> = darts.iter().map(|&d| g.vertex(d)).collect();
    let mut seen = vec![false; g.num_vertices()];
    for &v in &vertices {
        if seen[v] {
            return None;
        }
        seen[v] = true;
    }
    Some(TransverseCycle { vertices, darts })
}
