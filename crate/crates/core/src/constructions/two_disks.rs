//! Gluing two quadrangulated disks along their boundaries, and the inverse cut.

use serde::{Deserialize, Serialize};

use crate::disk::{unbuffer, validate_disk, DiskQuadrangulation};
use crate::error::{Error, Result};
use crate::map::{EmbeddedGraph, MapBuilder};
use crate::transverse::{maximal_transverse_walks, reduce_with_report, TransverseCycle, WalkKind};

/// Cyclic correspondence between the boundaries of two disks, relative to
/// their outer darts.
///
/// With `reverse` set, boundary vertex `i` of the first disk meets boundary
/// vertex `offset - i` of the second; this is the gluing that keeps both
/// orientations. Without it, vertex `i` meets `offset + i` and the second disk
/// is mirrored before gluing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BoundaryBijection {
    pub offset: usize,
    pub reverse: bool,
}

impl BoundaryBijection {
    /// Index on the second boundary matched with index `i` on the first.
    pub fn image(&self, i: usize, len: usize) -> usize {
        let (o, i) = (self.offset % len, i % len);
        if self.reverse {
            (o + len - i) % len
        } else {
            (o + i) % len
        }
    }
}

/// Result of a two-disks gluing.
#[derive(Clone, Debug)]
pub struct TwoDisksOutput {
    pub graph: EmbeddedGraph,
    /// Closed transversals left in the output when no repair was requested.
    pub warnings: Vec<String>,
    /// Repairs applied because of `auto_fix`.
    pub fixes: Vec<String>,
}

fn has_corner(d: &DiskQuadrangulation) -> bool {
    d.boundary().iter().any(|&v| d.map.degree(v) == 2)
}

fn count_closed(g: &EmbeddedGraph) -> Result<usize> {
    Ok(maximal_transverse_walks(g)?
        .iter()
        .filter(|w| w.kind == WalkKind::Closed)
        .count())
}

/// Glues `d` to `d2` by identifying each boundary vertex of `d` with its
/// image under `phi` and deleting the boundary edges of `d`.
///
/// With `auto_fix`, a pair of cornerless (buffered) disks is repaired by
/// unbuffering `d`, and closed transversals of the output are reduced away.
/// Without it, such transversals are reported in `warnings`.
pub fn two_disks(
    d: &DiskQuadrangulation,
    d2: &DiskQuadrangulation,
    phi: BoundaryBijection,
    auto_fix: bool,
) -> Result<TwoDisksOutput> {
    for (name, disk) in [("first", d), ("second", d2)] {
        let rep = validate_disk(disk);
        if !rep.passed() {
            return Err(Error::Precondition(format!(
                "{name} disk is not a quadrangulated disk: {:?}",
                rep.violations
            )));
        }
    }
    let mut fixes = Vec::new();
    let mut warnings = Vec::new();
    let mut first = d.clone();
    if !has_corner(d) && !has_corner(d2) {
        if auto_fix {
            first = unbuffer(d)?;
            fixes.push("unbuffered the first disk".to_string());
        } else {
            warnings.push("both boundaries are cornerless: the glued boundary is a closed transversal".to_string());
        }
    }
    let (second, phi) = if phi.reverse {
        (d2.clone(), phi)
    } else {
        let len = d2.boundary().len();
        let offset = (1 + len - phi.offset % len) % len;
        (d2.mirror(), BoundaryBijection { offset, reverse: true })
    };
    let mut graph = glue(&first, &second, phi)?;
    let closed = count_closed(&graph)?;
    if closed > 0 {
        if auto_fix {
            let r = reduce_with_report(&graph)?;
            fixes.push(format!("removed {} closed transversals", r.deleted_walks));
            graph = r.graph;
        } else {
            warnings.push(format!("output contains {closed} closed transversals"));
        }
    }
    Ok(TwoDisksOutput { graph, warnings, fixes })
}

/// Orientation-keeping gluing: `phi.reverse` must be set.
fn glue(d: &DiskQuadrangulation, d2: &DiskQuadrangulation, phi: BoundaryBijection) -> Result<EmbeddedGraph> {
    let walk = d.outer_walk();
    let walk2 = d2.outer_walk();
    let len = walk.len();
    if len != walk2.len() {
        return Err(Error::Precondition(format!(
            "boundary lengths differ: {} and {}",
            len,
            walk2.len()
        )));
    }
    let (g, g2) = (&d.map, &d2.map);
    for (i, &o) in walk.iter().enumerate() {
        let j = phi.image(i, len);
        let (u, v) = (g.vertex(o), g2.vertex(walk2[j]));
        if g.degree(u) == 2 && g2.degree(v) == 2 {
            return Err(Error::Precondition(format!(
                "boundary vertices {u} and {v} both have degree 2"
            )));
        }
    }
    let mut b = MapBuilder::new();
    let (off2, _) = b.append(g2);
    let (off, voff) = b.append(g);
    let firsts: Vec<usize> = walk.iter().map(|&o| g.sigma(o) + off).collect();
    for &o in &walk {
        b.remove_edge(o + off);
    }
    for (i, &o) in walk.iter().enumerate() {
        let v = g.vertex(o) + voff;
        if b.degree(v) == 0 {
            continue;
        }
        let target = walk2[phi.image(i, len)] + off2;
        b.merge_vertex_before(v, firsts[i], target);
    }
    let out = b.build()?;
    if !out.is_simple() {
        return Err(Error::Precondition(
            "gluing produces a loop or parallel edges".to_string(),
        ));
    }
    Ok(out)
}

/// Cuts `g` along a simple cycle of complete transverse paths into the two
/// disks it bounds. Gluing them back with the returned bijection gives `g`.
pub fn split_along_cycle(
    g: &EmbeddedGraph,
    c: &TransverseCycle,
) -> Result<(DiskQuadrangulation, DiskQuadrangulation, BoundaryBijection)> {
    let len = c.darts.len();
    if len < 3 || c.vertices.len() != len {
        return Err(Error::Precondition("cycle too short".into()));
    }
    let mut on_cycle = vec![false; g.num_vertices()];
    let mut cycle_dart = vec![false; g.num_darts()];
    for (k, &x) in c.darts.iter().enumerate() {
        let v = g.vertex(x);
        if v != c.vertices[k] || g.head(x) != c.vertices[(k + 1) % len] {
            return Err(Error::Precondition(format!("cycle dart {x} is out of place")));
        }
        if on_cycle[v] {
            return Err(Error::Precondition(format!("cycle repeats vertex {v}")));
        }
        on_cycle[v] = true;
        cycle_dart[x] = true;
        cycle_dart[g.alpha(x)] = true;
    }
    for k in 0..len {
        let (inc, out) = (c.darts[(k + len - 1) % len], c.darts[k]);
        let v = c.vertices[k];
        match g.degree(v) {
            3 => {}
            4 if g.sigma(g.sigma(g.alpha(inc))) == out => {}
            _ => {
                return Err(Error::Precondition(format!(
                    "cycle does not pass straight through vertex {v}"
                )))
            }
        }
    }
    let (face_of, nf) = g.face_index();
    let side = |seed: usize| {
        let mut inside = vec![false; nf];
        let mut stack = vec![face_of[seed]];
        inside[face_of[seed]] = true;
        while let Some(f) = stack.pop() {
            for x in 0..g.num_darts() {
                if face_of[x] == f && !cycle_dart[x] {
                    let h = face_of[g.alpha(x)];
                    if !inside[h] {
                        inside[h] = true;
                        stack.push(h);
                    }
                }
            }
        }
        inside
    };
    let x0 = c.darts[0];
    let side_a = side(g.alpha(x0));
    let side_b = side(x0);
    if (0..nf).any(|f| side_a[f] && side_b[f]) {
        return Err(Error::Precondition("cycle does not separate the sphere".into()));
    }
    let keep = |inside: &[bool], outer: usize| -> Result<DiskQuadrangulation> {
        let mut b = MapBuilder::from_graph(g);
        for x in 0..g.num_darts() {
            if b.is_alive(x) && !inside[face_of[x]] && !inside[face_of[g.alpha(x)]] {
                b.remove_edge(x);
            }
        }
        let (h, map) = b.build_with_map()?;
        let disk = DiskQuadrangulation::new(h, map[outer].expect("cycle edge survives"));
        let rep = validate_disk(&disk);
        if !rep.passed() {
            return Err(Error::Precondition(format!(
                "cut produces an invalid disk: {:?}",
                rep.violations
            )));
        }
        Ok(disk)
    };
    let da = keep(&side_a, x0)?;
    let db = keep(&side_b, g.alpha(x0))?;
    Ok((da, db, BoundaryBijection { offset: 1, reverse: true }))
}
