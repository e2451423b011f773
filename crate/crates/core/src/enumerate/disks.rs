//! Exhaustive generation of quadrangulated disks and the classification of
//! irreducible ones.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::disk::{is_irreducible, unbuffer, validate_disk, DiskQuadrangulation};
use crate::error::{Error, Result};
use crate::iso::CanonicalCode;

use super::fill::{fill_all, Goal, Partial};
use super::Budget;

/// Boundary words over {2, 3} of length `len` with at most four 2s, one per
/// class under rotation and reversal (the lexicographically smallest).
pub fn boundary_words(len: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for mask in 0u32..1 << len {
        let w: Vec<u8> = (0..len).map(|i| if mask >> i & 1 == 1 { 3 } else { 2 }).collect();
        if w.iter().filter(|&&x| x == 2).count() > 4 {
            continue;
        }
        let minimal = (0..len).all(|r| {
            let rot: Vec<u8> = (0..len).map(|i| w[(i + r) % len]).collect();
            let rev: Vec<u8> = rot.iter().rev().copied().collect();
            w <= rot && w <= rev
        });
        if minimal {
            out.push(w);
        }
    }
    out.sort();
    out
}

/// Every valid disk with even boundary length at most `max_boundary` and at
/// most `max_vertices` vertices, one per class (outer face marked,
/// reflection included), ordered by boundary length, vertex count and code.
/// With `irreducible_only`, only disks without closed transversals and
/// without boundary-to-boundary transverse paths are returned.
pub fn enumerate_disks(max_boundary: usize, max_vertices: usize, irreducible_only: bool) -> Result<Vec<DiskQuadrangulation>> {
    enumerate_disks_with(max_boundary, max_vertices, irreducible_only, &Budget::default())
}

pub fn enumerate_disks_with(
    max_boundary: usize,
    max_vertices: usize,
    irreducible_only: bool,
    budget: &Budget,
) -> Result<Vec<DiskQuadrangulation>> {
    if max_boundary < 4 || max_boundary % 2 == 1 {
        return Err(Error::Precondition(format!(
            "maximum boundary length must be even and at least 4, got {max_boundary}"
        )));
    }
    if max_boundary > budget.max_boundary || max_vertices > budget.max_disk_vertices {
        return Err(Error::Budget(format!(
            "disk bounds ({max_boundary}, {max_vertices}) exceed the budget ({}, {}); \
             lower them or raise the budget explicitly",
            budget.max_boundary, budget.max_disk_vertices
        )));
    }
    let mut found = Vec::new();
    for len in (4..=max_boundary.min(max_vertices)).step_by(2) {
        for w in boundary_words(len) {
            let b2 = w.iter().filter(|&&x| x == 2).count();
            let b3 = len - b2;
            // every degree-3 boundary vertex starts a transverse path that must
            // end at an interior degree-3 vertex
            if irreducible_only && b3 > 3 * (4 - b2) {
                continue;
            }
            let goal = Goal {
                max_vertices,
                target3: 4 - b2,
                irreducible: irreducible_only,
            };
            let codes: BTreeSet<CanonicalCode> = fill_all(Partial::disk_seed(&w), &goal, |p| {
                let d = DiskQuadrangulation::new(p.to_map(), 0);
                if !validate_disk(&d).passed() || (irreducible_only && !is_irreducible(&d)) {
                    return None;
                }
                Some(d.code())
            });
            for c in codes {
                let d = DiskQuadrangulation::new(c.to_embedded()?, 0);
                found.push((len, d.map.num_vertices(), c, d));
            }
        }
    }
    found.sort_by(|x, y| (x.0, x.1, &x.2).cmp(&(y.0, y.1, &y.2)));
    Ok(found.into_iter().map(|(_, _, _, d)| d).collect())
}

/// Partition of irreducible disks into the base set (at least one corner)
/// and bufferings of base members.
#[derive(Clone, Debug, Serialize)]
pub struct DiskClassification {
    pub max_vertices: usize,
    /// Irreducible disks with a degree-2 boundary vertex.
    pub base: Vec<CanonicalCode>,
    /// Cornerless irreducible disks paired with the base member they buffer.
    pub bufferings: Vec<(CanonicalCode, CanonicalCode)>,
    /// Disks in neither class.
    pub counterexamples: Vec<CanonicalCode>,
    /// Base members per number of corners.
    pub base_by_corners: BTreeMap<usize, usize>,
    /// Largest vertex count among base members.
    pub largest_base: usize,
}

/// Classifies the given irreducible disks.
pub fn classify(disks: &[DiskQuadrangulation], max_vertices: usize) -> DiskClassification {
    let mut base = BTreeSet::new();
    let mut base_by_corners = BTreeMap::new();
    let mut largest_base = 0;
    let mut cornerless = Vec::new();
    let mut counterexamples = Vec::new();
    for d in disks {
        let rep = validate_disk(d);
        if !rep.passed() || rep.b2 + rep.i3 != 4 || !is_irreducible(d) {
            counterexamples.push(d.code());
        } else if rep.b2 >= 1 {
            base.insert(d.code());
            *base_by_corners.entry(rep.b2).or_insert(0) += 1;
            largest_base = largest_base.max(d.map.num_vertices());
        } else {
            cornerless.push(d);
        }
    }
    let mut bufferings = Vec::new();
    for d in cornerless {
        match unbuffer(d) {
            Ok(inner) if base.contains(&inner.code()) => bufferings.push((d.code(), inner.code())),
            _ => counterexamples.push(d.code()),
        }
    }
    DiskClassification {
        max_vertices,
        base: base.into_iter().collect(),
        bufferings,
        counterexamples,
        base_by_corners,
        largest_base,
    }
}

/// Enumerates all irreducible disks with at most `max_vertices` vertices
/// (boundary length at most 12 covers every irreducible disk) and classifies
/// them. A disk in neither class is a hard error carrying its code.
pub fn classify_irreducible(max_vertices: usize) -> Result<DiskClassification> {
    let disks = enumerate_disks(12, max_vertices, true)?;
    let c = classify(&disks, max_vertices);
    if let Some(bad) = c.counterexamples.first() {
        return Err(Error::Counterexample(format!(
            "irreducible disk outside the classification: {}",
            bad.to_hex()
        )));
    }
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::buffer;
    use crate::fixtures;

    #[test]
    fn words_up_to_symmetry() {
        assert_eq!(boundary_words(4), vec![vec![2, 2, 2, 2], vec![2, 2, 2, 3], vec![2, 2, 3, 3], vec![2, 3, 2, 3], vec![2, 3, 3, 3], vec![3, 3, 3, 3]]);
    }

    #[test]
    fn small_disks_include_the_square() {
        let ds = enumerate_disks(4, 4, false).unwrap();
        assert_eq!(ds.len(), 1);
        assert_eq!(ds[0].code(), fixtures::square_disk().code());
    }

    #[test]
    fn decoded_disks_keep_their_code() {
        for d in enumerate_disks(8, 10, false).unwrap() {
            assert!(validate_disk(&d).passed());
            let again = DiskQuadrangulation::new(d.map.clone(), 0);
            assert_eq!(again.code(), d.code());
        }
    }

    #[test]
    fn grids_appear_when_reducible_disks_are_allowed() {
        let codes: BTreeSet<_> = enumerate_disks(8, 9, false).unwrap().iter().map(|d| d.code()).collect();
        assert!(codes.contains(&fixtures::grid_disk(2, 2).code()));
        assert!(codes.contains(&fixtures::grid_disk(1, 3).code()));
    }

    #[test]
    fn tripod_and_its_buffering_are_classified() {
        let c = classify_irreducible(14).unwrap();
        let t = fixtures::tripod_disk();
        assert!(c.base.contains(&t.code()));
        let bt = buffer(&t).unwrap().code();
        assert!(c.bufferings.iter().any(|(d, inner)| *d == bt && *inner == t.code()));
    }
}
