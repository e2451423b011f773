//! Closing a disk into a sphere by spiralling quadrangles around its boundary.

use crate::disk::{validate_disk, DiskQuadrangulation};
use crate::error::{Error, Result};
use crate::map::{EmbeddedGraph, MapBuilder};
use crate::validate::validate_cq;

/// A disk with a boundary labelling and a winding length.
///
/// Boundary labels run along the outer walk from the vertex `first`, or
/// against it when `reverse` is set. The first label must sit on a degree-3
/// vertex and the last on a degree-2 vertex.
#[derive(Clone, Debug)]
pub struct SpiralInput {
    pub disk: DiskQuadrangulation,
    pub first: usize,
    pub reverse: bool,
    pub l: usize,
}

impl SpiralInput {
    /// Labelling starting at the first degree-3 boundary vertex (in outer-walk
    /// order) whose predecessor has degree 2.
    pub fn with_default_labeling(disk: DiskQuadrangulation, l: usize) -> Result<Self> {
        let b = disk.boundary();
        let n = b.len();
        let first = (0..n)
            .map(|i| b[i])
            .zip((0..n).map(|i| b[(i + n - 1) % n]))
            .find(|&(v, p)| disk.map.degree(v) == 3 && disk.map.degree(p) == 2)
            .map(|(v, _)| v)
            .ok_or_else(|| Error::Precondition("boundary needs adjacent degree-2 and degree-3 vertices".into()))?;
        Ok(SpiralInput {
            disk,
            first,
            reverse: false,
            l,
        })
    }
}

/// Applies the spiral construction: `l` quadrangles wound around the
/// boundary, then the remaining boundary zipped shut.
pub fn spiral(inp: &SpiralInput) -> Result<EmbeddedGraph> {
    let rep = validate_disk(&inp.disk);
    if !rep.passed() {
        return Err(Error::Precondition(format!("not a quadrangulated disk: {:?}", rep.violations)));
    }
    let orig = inp.disk.boundary();
    let n = orig.len();
    let s = orig
        .iter()
        .position(|&v| v == inp.first)
        .ok_or_else(|| Error::Precondition(format!("vertex {} is not on the boundary", inp.first)))?;
    let (disk, s) = if inp.reverse {
        (inp.disk.mirror(), (1 + n - s) % n)
    } else {
        (inp.disk.clone(), s)
    };
    let l = inp.l;
    if n < 6 || n % 2 == 1 {
        return Err(Error::Precondition(format!("boundary length {n} must be even and at least 6")));
    }
    if l == 0 {
        return Err(Error::Precondition("winding length must be positive".into()));
    }
    let g = &disk.map;
    let walk = disk.outer_walk();
    let mut vid: Vec<usize> = (0..n).map(|k| g.vertex(walk[(s + k) % n])).collect();
    let mut out: Vec<usize> = (0..n).map(|k| walk[(s + k) % n]).collect();
    if g.degree(vid[0]) != 3 || g.degree(vid[n - 1]) != 2 {
        return Err(Error::Precondition(
            "the first label needs degree 3 and the last label degree 2".into(),
        ));
    }
    let mut b = MapBuilder::from_graph(g);
    for i in 0..l {
        let (a, c) = (n + i - 1, i + 1);
        let (_, m, w) = b.pendant(out[c]);
        let (n1, _) = b.chord(out[a], m);
        vid.push(w);
        out.push(m);
        out[a] = n1;
    }
    for label in [l + 1, l + n / 2, l + n / 2 + 1] {
        let deg = b.degree(vid[label]);
        if deg != 3 {
            return Err(Error::Precondition(format!(
                "label {label} has degree {deg} after the winding step, needs 3"
            )));
        }
    }
    for j in 0..n / 2 - 2 {
        let (x, y) = (l + n - 1 - j, l + 2 + j);
        let (n1, _) = b.chord(out[x], out[y]);
        out[x] = n1;
    }
    let res = b.build()?;
    let rep = validate_cq(&res);
    if !rep.passed() {
        return Err(Error::Precondition(format!("spiral output is not a cubic quadrangulation: {:?}", rep.violations)));
    }
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::iso::canon_multigraph;
    use crate::transverse::extract;

    fn tripod(l: usize) -> Result<EmbeddedGraph> {
        spiral(&SpiralInput::with_default_labeling(fixtures::tripod_disk(), l).unwrap())
    }

    #[test]
    fn tripod_family_validates_except_two() {
        assert!(matches!(tripod(2), Err(Error::Precondition(_))));
        for l in (1..=12).filter(|&l| l != 2) {
            let g = tripod(l).unwrap();
            assert_eq!(g.num_vertices(), 7 + l);
        }
    }

    #[test]
    fn extraction_repeats_with_period_five() {
        for l in 3..8 {
            let a = canon_multigraph(&extract(&tripod(l).unwrap()).unwrap()).unwrap();
            let b = canon_multigraph(&extract(&tripod(l + 5).unwrap()).unwrap()).unwrap();
            assert_eq!(a, b, "l = {l}");
        }
    }

    #[test]
    fn reversed_labelling_is_accepted() {
        let fwd = SpiralInput::with_default_labeling(fixtures::tripod_disk(), 4).unwrap();
        let rev = SpiralInput {
            reverse: true,
            ..fwd.clone()
        };
        let g = spiral(&rev).unwrap();
        assert_eq!(g.num_vertices(), 11);
    }
}
