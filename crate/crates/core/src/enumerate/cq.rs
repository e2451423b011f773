//! Exhaustive generation of cubic quadrangulations by vertex count.

use crate::error::{Error, Result};
use crate::iso::canon_embedded;
use crate::map::EmbeddedGraph;
use crate::validate::{cut_vertices, validate_cq};

use super::fill::{fill_all, Goal, Partial};
use super::Budget;

/// One representative per class (reflection included) of cubic
/// quadrangulations with `n` vertices, sorted by canonical code. Each
/// representative is the map decoded from its canonical code.
pub fn enumerate_cq(n: usize) -> Result<Vec<EmbeddedGraph>> {
    enumerate_cq_with(n, &Budget::default())
}

pub fn enumerate_cq_with(n: usize, budget: &Budget) -> Result<Vec<EmbeddedGraph>> {
    if n < 8 {
        return Err(Error::Precondition(format!("a cubic quadrangulation has at least 8 vertices, got {n}")));
    }
    if n > budget.max_n {
        return Err(Error::Budget(format!(
            "n = {n} exceeds the enumeration budget of {}; each extra vertex multiplies the work \
             by roughly four, raise max_n explicitly to proceed",
            budget.max_n
        )));
    }
    let goal = Goal {
        max_vertices: n,
        target3: 8,
        irreducible: false,
    };
    let codes = fill_all(Partial::sphere_seed(), &goal, |p| {
        if p.num_vertices() != n {
            return None;
        }
        let g = p.to_map();
        if !validate_cq(&g).passed() || !cut_vertices(&g).is_empty() {
            return None;
        }
        Some(canon_embedded(&g, true))
    });
    codes.iter().map(|c| c.to_embedded()).collect()
}
