//! Quadrangulated disks: validation, buffering, and reduction.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::iso::{embedded_code_with, CanonicalCode, EmbeddedCodeOptions};
use crate::map::{Dart, EmbeddedGraph, MapBuilder, Smoothed};

pub use crate::enumerate::{classify_irreducible, enumerate_disks};

/// An embedded graph with a distinguished outer face, given by one of its darts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskQuadrangulation {
    pub map: EmbeddedGraph,
    pub outer: Dart,
}

impl DiskQuadrangulation {
    pub fn new(map: EmbeddedGraph, outer: Dart) -> Self {
        DiskQuadrangulation { map, outer }
    }

    /// Outer face darts, starting at `outer`.
    pub fn outer_walk(&self) -> Vec<Dart> {
        self.map.face_walk(self.outer)
    }

    /// Boundary vertices in outer-walk order.
    pub fn boundary(&self) -> Vec<usize> {
        self.outer_walk().iter().map(|&d| self.map.vertex(d)).collect()
    }

    /// Marks boundary vertices.
    pub fn boundary_mask(&self) -> Vec<bool> {
        let mut on = vec![false; self.map.num_vertices()];
        for v in self.boundary() {
            on[v] = true;
        }
        on
    }

    /// Marks darts whose edge lies on the boundary cycle.
    pub fn boundary_edge_mask(&self) -> Vec<bool> {
        let mut on = vec![false; self.map.num_darts()];
        for d in self.outer_walk() {
            on[d] = true;
            on[self.map.alpha(d)] = true;
        }
        on
    }

    /// Same disk with reversed orientation.
    pub fn mirror(&self) -> DiskQuadrangulation {
        DiskQuadrangulation::new(self.map.mirror(), self.map.alpha(self.outer))
    }

    /// Canonical code with the outer face marked, reflection included.
    pub fn code(&self) -> CanonicalCode {
        let starts = self.outer_walk();
        embedded_code_with(
            &self.map,
            EmbeddedCodeOptions {
                starts: Some(&starts),
                include_reflection: true,
                ..Default::default()
            },
        )
    }
}

/// Classification of a disk by the number of degree-2 boundary vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiskShape {
    /// No corners.
    Cornerless,
    Monogon,
    Digon,
    Triangle,
    Square,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum DiskViolation {
    Disconnected,
    NotSimple,
    NotADisk { euler: i64 },
    BoundaryNotSimple { vertex: usize },
    BoundaryDegree { vertex: usize, degree: usize },
    InteriorDegree { vertex: usize, degree: usize },
    FaceLength { dart: usize, length: usize },
    CornerIdentity { b2: usize, i3: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiskReport {
    pub boundary_length: usize,
    pub b2: usize,
    pub b3: usize,
    pub i3: usize,
    pub i4: usize,
    pub shape: Option<DiskShape>,
    pub violations: Vec<DiskViolation>,
}

impl DiskReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that `d` is a cubic quadrangulation of a disk.
pub fn validate_disk(d: &DiskQuadrangulation) -> DiskReport {
    let g = &d.map;
    let mut violations = Vec::new();
    if !g.is_connected() {
        violations.push(DiskViolation::Disconnected);
    }
    if !g.is_simple() {
        violations.push(DiskViolation::NotSimple);
    }
    let euler = g.euler_characteristic();
    if euler != 2 {
        violations.push(DiskViolation::NotADisk { euler });
    }
    let boundary = d.boundary();
    let mut on_boundary = vec![false; g.num_vertices()];
    for &v in &boundary {
        if on_boundary[v] {
            violations.push(DiskViolation::BoundaryNotSimple { vertex: v });
        }
        on_boundary[v] = true;
    }
    let (mut b2, mut b3, mut i3, mut i4) = (0, 0, 0, 0);
    for v in 0..g.num_vertices() {
        let k = g.degree(v);
        match (on_boundary[v], k) {
            (true, 2) => b2 += 1,
            (true, 3) => b3 += 1,
            (false, 3) => i3 += 1,
            (false, 4) => i4 += 1,
            (true, _) => violations.push(DiskViolation::BoundaryDegree { vertex: v, degree: k }),
            (false, _) => violations.push(DiskViolation::InteriorDegree { vertex: v, degree: k }),
        }
    }
    let (face_of, _) = g.face_index();
    let outer_face = face_of[d.outer];
    for f in g.faces() {
        if face_of[f[0]] != outer_face && f.len() != 4 {
            violations.push(DiskViolation::FaceLength {
                dart: f[0],
                length: f.len(),
            });
        }
    }
    if violations.is_empty() && b2 + i3 != 4 {
        violations.push(DiskViolation::CornerIdentity { b2, i3 });
    }
    let shape = match b2 {
        0 => Some(DiskShape::Cornerless),
        1 => Some(DiskShape::Monogon),
        2 => Some(DiskShape::Digon),
        3 => Some(DiskShape::Triangle),
        4 => Some(DiskShape::Square),
        _ => None,
    };
    DiskReport {
        boundary_length: boundary.len(),
        b2,
        b3,
        i3,
        i4,
        shape,
        violations,
    }
}

/// Surrounds `d` with a ring of quadrangles: every boundary vertex gets a new
/// neighbour, and the new vertices form the new boundary cycle in the same
/// cyclic order.
pub fn buffer(d: &DiskQuadrangulation) -> Result<DiskQuadrangulation> {
    let walk = d.outer_walk();
    let len = walk.len();
    if len < 2 {
        return Err(Error::Precondition("boundary too short to buffer".into()));
    }
    let mut b = MapBuilder::from_graph(&d.map);
    // pendant at the outer corner of every boundary vertex; m[i] leaves the new vertex
    let mut m = Vec::with_capacity(len);
    for &o in &walk {
        let (_, mi, _) = b.pendant(o);
        m.push(mi);
    }
    let mut first = None;
    let mut last = 0;
    for i in 0..len {
        let d2 = if i + 1 < len { m[i + 1] } else { first.expect("set on the first chord") };
        let (n1, _) = b.chord(m[i], d2);
        if i == 0 {
            first = Some(n1);
        }
        last = n1;
    }
    let (g, map) = b.build_with_map()?;
    let outer = map[last].expect("new edge survives");
    Ok(DiskQuadrangulation::new(g, outer))
}

/// Removes the outer ring of a buffered disk.
pub fn unbuffer(d: &DiskQuadrangulation) -> Result<DiskQuadrangulation> {
    let g = &d.map;
    let walk = d.outer_walk();
    let boundary = d.boundary();
    let on_boundary = d.boundary_mask();
    let mut inner = Vec::with_capacity(walk.len());
    for (i, &o) in walk.iter().enumerate() {
        let u = boundary[i];
        let fail = || Error::Precondition(format!("not a buffering at boundary vertex {u}"));
        if g.degree(u) != 3 {
            return Err(fail());
        }
        let quad = g.face_walk(g.alpha(o));
        if quad.len() != 4 {
            return Err(fail());
        }
        let w0 = g.head(quad[1]);
        let w1 = g.head(quad[2]);
        if on_boundary[w0] || on_boundary[w1] {
            return Err(fail());
        }
        inner.push((w0, quad[2]));
    }
    let mut ws: Vec<usize> = inner.iter().map(|&(w, _)| w).collect();
    ws.sort_unstable();
    ws.dedup();
    if ws.len() != walk.len() {
        return Err(Error::Precondition(format!(
            "not a buffering: inner ring has {} distinct vertices for a boundary of {}",
            ws.len(),
            walk.len()
        )));
    }
    let mut b = MapBuilder::from_graph(g);
    for &u in &boundary {
        for x in b.vertex_darts(u) {
            b.remove_edge(x);
        }
    }
    let (h, map) = b.build_with_map()?;
    let outer = map[inner[0].1].expect("ring edge survives");
    let out = DiskQuadrangulation::new(h, outer);
    if out.boundary().len() != walk.len() {
        return Err(Error::Precondition("not a buffering: inner ring is not a face".into()));
    }
    Ok(out)
}

/// Closed transversals and boundary-to-boundary transverse paths of a disk,
/// each as a dart sequence, in a deterministic order.
pub fn removable_walks(d: &DiskQuadrangulation) -> Vec<Vec<Dart>> {
    let g = &d.map;
    let on_boundary = d.boundary_mask();
    let boundary_edge = d.boundary_edge_mask();
    let crossing = |v: usize| !on_boundary[v] && g.degree(v) == 4;
    let straight = |x: Dart| g.sigma(g.sigma(g.alpha(x)));
    let mut used = vec![false; g.num_darts()];
    let mut out = Vec::new();
    for v in d.boundary() {
        for s in g.vertex_darts(v) {
            if boundary_edge[s] || used[s] {
                continue;
            }
            let mut darts = vec![s];
            let mut x = s;
            let mut steps = 0;
            while crossing(g.head(x)) && steps <= g.num_darts() {
                x = straight(x);
                darts.push(x);
                steps += 1;
            }
            if on_boundary[g.head(x)] {
                for &y in &darts {
                    used[y] = true;
                    used[g.alpha(y)] = true;
                }
                out.push(darts);
            }
        }
    }
    for s in 0..g.num_darts() {
        if used[s] || !crossing(g.vertex(s)) || !crossing(g.head(s)) {
            continue;
        }
        let mut darts = vec![s];
        let mut x = straight(s);
        let mut closed = true;
        while x != s {
            if !crossing(g.head(x)) || darts.len() > g.num_darts() {
                closed = false;
                break;
            }
            darts.push(x);
            x = straight(x);
        }
        if closed {
            for &y in &darts {
                used[y] = true;
                used[g.alpha(y)] = true;
            }
            out.push(darts);
        }
    }
    out
}

/// Whether `d` has no closed transversal and no boundary-to-boundary
/// transverse path.
pub fn is_irreducible(d: &DiskQuadrangulation) -> bool {
    removable_walks(d).is_empty()
}

/// Repeatedly deletes one closed transversal or boundary-to-boundary
/// transverse path and smooths the vertices that drop to degree 2, until
/// none remains. Corners that already had degree 2 are kept.
pub fn reduce_disk(d: &DiskQuadrangulation) -> Result<DiskQuadrangulation> {
    let mut cur = d.clone();
    loop {
        let walks = removable_walks(&cur);
        let Some(t) = walks.first() else {
            return Ok(cur);
        };
        let g = &cur.map;
        let before = g.degrees();
        let mut b = MapBuilder::from_graph(g);
        let mut touched = Vec::new();
        for &x in t {
            if b.is_alive(x) {
                touched.push(g.vertex(x));
                touched.push(g.head(x));
                b.remove_edge(x);
            }
        }
        touched.sort_unstable();
        touched.dedup();
        for v in touched {
            if b.vertex_alive(v) && b.degree(v) == 2 && before[v] > 2 && b.smooth(v)? == Smoothed::DroppedLoop {
                return Err(Error::Precondition("disk reduction degenerates".into()));
            }
        }
        let walk = cur.outer_walk();
        let (h, map) = b.build_with_map()?;
        let outer = walk
            .iter()
            .find_map(|&x| map[x])
            .ok_or_else(|| Error::Precondition("disk reduction removed the whole boundary".into()))?;
        let next = DiskQuadrangulation::new(h, outer);
        let report = validate_disk(&next);
        if !report.passed() {
            return Err(Error::Precondition(format!(
                "disk reduction degenerates: {:?}",
                report.violations
            )));
        }
        cur = next;
    }
}
