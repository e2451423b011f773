//! Growing maps by gluing quadrangles into holes.
//!
//! A partial map is a rotation system whose faces are either finished
//! quadrangles, the outer face of a disk, or holes still to be filled. Each
//! step picks a hole edge and enumerates every quadrangle that can sit on its
//! hole side: the other three corners are existing hole corners or fresh
//! vertices. Curvature counting prunes states that cannot be completed.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::iso::CanonicalCode;
use crate::map::{Dart, EmbeddedGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Side {
    Hole,
    Filled,
    Outer,
}

/// Global constraints of a filling run.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Goal {
    pub max_vertices: usize,
    /// Number of counted vertices that end with degree 3.
    pub target3: usize,
    /// Reject states with a settled boundary-to-boundary transverse path or
    /// a settled closed transversal.
    pub irreducible: bool,
}

#[derive(Clone, Debug)]
pub(crate) struct Partial {
    sigma: Vec<Dart>,
    side: Vec<Side>,
    vert: Vec<usize>,
    deg: Vec<u8>,
    lo: Vec<u8>,
    hi: Vec<u8>,
    colour: Vec<bool>,
    /// Counted towards the degree-3 target (all vertices of a sphere, interior
    /// vertices of a disk).
    counted: Vec<bool>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum End {
    Close,
    Corner(usize),
    Fresh,
}

impl Partial {
    fn empty() -> Self {
        Partial {
            sigma: Vec::new(),
            side: Vec::new(),
            vert: Vec::new(),
            deg: Vec::new(),
            lo: Vec::new(),
            hi: Vec::new(),
            colour: Vec::new(),
            counted: Vec::new(),
        }
    }

    /// A single quadrangle whose first vertex is pinned to degree 3; the rest
    /// of the sphere is one hole.
    pub fn sphere_seed() -> Self {
        let mut p = Partial::empty();
        for (i, colour) in [false, true, false, true].into_iter().enumerate() {
            let v = p.new_vertex(colour, true);
            if i == 0 {
                p.lo[v] = 3;
                p.hi[v] = 3;
            }
        }
        // dart 2i runs from vertex i to vertex i+1
        for i in 0..4 {
            p.push_edge(i, (i + 1) % 4);
        }
        for i in 0..4 {
            let (out, back) = (2 * i, (2 * i + 7) % 8);
            p.sigma[out] = back;
            p.sigma[back] = out;
            p.side[out] = Side::Filled;
        }
        p
    }

    /// A boundary cycle with prescribed degrees; the outer face is the orbit
    /// of dart 0 and the inside is one hole.
    pub fn disk_seed(word: &[u8]) -> Self {
        let n = word.len();
        let mut p = Partial::empty();
        for (i, &w) in word.iter().enumerate() {
            let v = p.new_vertex(i % 2 == 1, false);
            p.lo[v] = w;
            p.hi[v] = w;
        }
        for i in 0..n {
            p.push_edge(i, (i + 1) % n);
        }
        for i in 0..n {
            let (out, back) = (2 * i, (2 * i + 2 * n - 1) % (2 * n));
            p.sigma[out] = back;
            p.sigma[back] = out;
            p.side[out] = Side::Outer;
        }
        p
    }

    fn new_vertex(&mut self, colour: bool, counted: bool) -> usize {
        self.deg.push(0);
        self.lo.push(3);
        self.hi.push(4);
        self.colour.push(colour);
        self.counted.push(counted);
        self.deg.len() - 1
    }

    /// New edge from `u` to `v`; returns the dart leaving `u`. Both darts are
    /// fixed points of the rotation until inserted.
    fn push_edge(&mut self, u: usize, v: usize) -> Dart {
        let d = self.sigma.len();
        self.sigma.extend([d, d + 1]);
        self.side.extend([Side::Hole, Side::Hole]);
        self.vert.extend([u, v]);
        self.deg[u] += 1;
        self.deg[v] += 1;
        d
    }

    fn phi(&self, d: Dart) -> Dart {
        self.sigma[d ^ 1]
    }

    fn cap(&self, v: usize) -> u8 {
        self.hi[v] - self.deg[v]
    }

    pub fn num_vertices(&self) -> usize {
        self.deg.len()
    }

    fn adjacent(&self, u: usize, v: usize) -> bool {
        (0..self.sigma.len()).any(|d| self.vert[d] == u && self.vert[d ^ 1] == v)
    }

    /// Inserts `darts` (in order) just before `at` around its vertex.
    fn insert_before(&mut self, at: Dart, darts: &[Dart]) {
        if darts.is_empty() {
            return;
        }
        let mut prev = at;
        while self.sigma[prev] != at {
            prev = self.sigma[prev];
        }
        for &x in darts {
            self.sigma[prev] = x;
            prev = x;
        }
        self.sigma[prev] = at;
    }

    fn cycle(&mut self, darts: &[Dart]) {
        for (i, &x) in darts.iter().enumerate() {
            self.sigma[x] = darts[(i + 1) % darts.len()];
        }
    }

    pub fn holes(&self) -> Vec<Vec<Dart>> {
        let mut seen = vec![false; self.sigma.len()];
        let mut out = Vec::new();
        for d in 0..self.sigma.len() {
            if self.side[d] != Side::Hole || seen[d] {
                continue;
            }
            let mut walk = Vec::new();
            let mut x = d;
            loop {
                seen[x] = true;
                walk.push(x);
                x = self.phi(x);
                if x == d {
                    break;
                }
            }
            out.push(walk);
        }
        out
    }

    pub fn to_map(&self) -> EmbeddedGraph {
        let alpha = (0..self.sigma.len()).map(|d| d ^ 1).collect();
        EmbeddedGraph::from_permutations(self.sigma.clone(), alpha).expect("partial maps stay well formed")
    }

    /// Curvature bounds and settled-vertex checks.
    fn feasible(&self, holes: &[Vec<Dart>], goal: &Goal) -> bool {
        let nv = self.num_vertices();
        if nv > goal.max_vertices {
            return false;
        }
        let mut open = vec![false; nv];
        for h in holes {
            for &x in h {
                open[self.vert[x]] = true;
            }
            if h.len() < 4 || h.len() % 2 == 1 {
                return false;
            }
            let room: usize = h.iter().map(|&x| self.cap(self.vert[x]) as usize).sum();
            if h.len() - 4 > room {
                return false;
            }
        }
        let (mut cap, mut need, mut sure3, mut maybe3) = (0usize, 0usize, 0usize, 0usize);
        for v in 0..nv {
            let d = self.deg[v];
            if open[v] {
                cap += self.cap(v) as usize;
                need += self.lo[v].saturating_sub(d) as usize;
                if self.counted[v] && self.hi[v] == 3 {
                    sure3 += 1;
                }
            } else {
                if d < self.lo[v] || d > self.hi[v] {
                    return false;
                }
                if self.counted[v] && d == 3 {
                    sure3 += 1;
                }
            }
            if self.counted[v] && d <= 3 && self.lo[v] <= 3 {
                maybe3 += 1;
            }
        }
        if sure3 > goal.target3 {
            return false;
        }
        let excess: usize = holes.iter().map(|h| h.len() - 4).sum();
        let fresh_hi = (goal.target3 - sure3).min(goal.max_vertices - nv);
        let fresh_lo = goal.target3.saturating_sub(maybe3);
        if fresh_lo > fresh_hi || excess + fresh_lo > cap || need > excess + fresh_hi {
            return false;
        }
        !(goal.irreducible && self.has_settled_transversal(&open))
    }

    /// A transverse path between boundary vertices, or a closed transversal,
    /// running only through settled interior crossings.
    fn has_settled_transversal(&self, open: &[bool]) -> bool {
        let n = self.sigma.len();
        let boundary = |v: usize| !self.counted[v];
        let crossing = |v: usize| !boundary(v) && !open[v] && self.deg[v] == 4;
        let straight = |x: Dart| self.sigma[self.sigma[x ^ 1]];
        for s in 0..n {
            let v = self.vert[s];
            if boundary(v) {
                if self.side[s] == Side::Outer || self.side[s ^ 1] == Side::Outer {
                    continue;
                }
                let mut x = s;
                for _ in 0..=n {
                    let w = self.vert[x ^ 1];
                    if boundary(w) {
                        return true;
                    }
                    if !crossing(w) {
                        break;
                    }
                    x = straight(x);
                }
            } else if crossing(v) {
                let mut x = s;
                for _ in 0..=n {
                    if !crossing(self.vert[x ^ 1]) {
                        break;
                    }
                    x = straight(x);
                    if x == s {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Hole dart with the fewest candidate quadrangles, as a rotated walk.
    fn pick(&self, holes: &[Vec<Dart>], goal: &Goal) -> Vec<Dart> {
        let fresh = usize::from(self.num_vertices() < goal.max_vertices);
        let mut best = (usize::MAX, 0, 0);
        for (hi, h) in holes.iter().enumerate() {
            let m = h.len();
            for i in 0..m {
                let a = self.vert[h[i]];
                let b = self.vert[h[(i + 1) % m]];
                let opts = |v: usize| if self.cap(v) == 0 { 1 } else { 1 + m / 2 + fresh };
                let est = opts(a) * opts(b);
                if est < best.0 {
                    best = (est, hi, i);
                }
            }
        }
        let (_, hi, i) = best;
        let h = &holes[hi];
        h[i..].iter().chain(&h[..i]).copied().collect()
    }

    /// Every quadrangle on the hole side of `h[0]`.
    fn children(&self, h: &[Dart], goal: &Goal) -> Vec<Partial> {
        let m = h.len();
        let v: Vec<usize> = h.iter().map(|&x| self.vert[x]).collect();
        let (a, b) = (v[0], v[1]);
        let fresh = self.num_vertices() < goal.max_vertices;
        let ends = |from: usize, colour: bool| {
            let mut e = vec![End::Close];
            if self.cap(from) > 0 {
                e.extend((2..m).filter(|&k| self.colour[v[k]] == colour).map(End::Corner));
                if fresh {
                    e.push(End::Fresh);
                }
            }
            e
        };
        let mut out = Vec::new();
        for &c in &ends(b, self.colour[a]) {
            for &d in &ends(a, self.colour[b]) {
                if let Some(p) = self.place(h, &v, c, d, goal) {
                    out.push(p);
                }
            }
        }
        out
    }

    fn place(&self, h: &[Dart], v: &[usize], c: End, d: End, goal: &Goal) -> Option<Partial> {
        let m = h.len();
        let (a, b) = (v[0], v[1]);
        let kc = match c {
            End::Close => Some(2),
            End::Corner(k) => Some(k),
            End::Fresh => None,
        };
        let kd = match d {
            End::Close => Some(m - 1),
            End::Corner(k) => Some(k),
            End::Fresh => None,
        };
        if let (Some(x), Some(y)) = (kc, kd) {
            if x >= y {
                return None;
            }
        }
        let fresh_count = usize::from(c == End::Fresh) + usize::from(d == End::Fresh);
        if self.num_vertices() + fresh_count > goal.max_vertices {
            return None;
        }
        let d1_new = c != End::Close;
        let d3_new = d != End::Close;
        let d2_old = matches!((kc, kd), (Some(x), Some(y)) if y == x + 1);
        let cv = kc.map(|k| v[k]);
        let dv = kd.map(|k| v[k]);
        for x in [cv, dv].into_iter().flatten() {
            if x == a || x == b {
                return None;
            }
        }
        if cv.is_some() && cv == dv {
            return None;
        }
        let mut inc = std::collections::HashMap::<usize, u8>::new();
        let mut bump = |x: Option<usize>, by: bool| {
            if let (Some(x), true) = (x, by) {
                *inc.entry(x).or_default() += 1;
            }
        };
        bump(Some(b), d1_new);
        bump(cv, d1_new);
        bump(cv, !d2_old);
        bump(dv, !d2_old);
        bump(dv, d3_new);
        bump(Some(a), d3_new);
        if inc.iter().any(|(&x, &k)| self.deg[x] + k > self.hi[x]) {
            return None;
        }
        if let (true, Some(x)) = (d1_new, cv) {
            if self.adjacent(b, x) {
                return None;
            }
        }
        if let (true, Some(y)) = (d3_new, dv) {
            if self.adjacent(y, a) {
                return None;
            }
        }
        if let (false, Some(x), Some(y)) = (d2_old, cv, dv) {
            if self.adjacent(x, y) {
                return None;
            }
        }
        let mut p = self.clone();
        let cv = cv.unwrap_or_else(|| p.new_vertex(p.colour[a], true));
        let dv = dv.unwrap_or_else(|| p.new_vertex(p.colour[b], true));
        let d1 = if d1_new { p.push_edge(b, cv) } else { h[1] };
        let d3 = if d3_new { p.push_edge(dv, a) } else { h[m - 1] };
        let d2 = if d2_old { h[kc.expect("corner")] } else { p.push_edge(cv, dv) };
        if d1_new {
            p.insert_before(h[1], &[d1]);
        }
        if d3_new {
            p.insert_before(h[0], &[d3 ^ 1]);
        }
        let mut at_c = Vec::new();
        if d1_new {
            at_c.push(d1 ^ 1);
        }
        if !d2_old {
            at_c.push(d2);
        }
        match kc {
            Some(k) => p.insert_before(h[k], &at_c),
            None => p.cycle(&at_c),
        }
        let mut at_d = Vec::new();
        if !d2_old {
            at_d.push(d2 ^ 1);
        }
        if d3_new {
            at_d.push(d3);
        }
        match kd {
            Some(k) => p.insert_before(h[k], &at_d),
            None => p.cycle(&at_d),
        }
        for x in [h[0], d1, d2, d3] {
            p.side[x] = Side::Filled;
        }
        debug_assert_eq!(p.phi(h[0]), d1);
        debug_assert_eq!(p.phi(d3), h[0]);
        Some(p)
    }
}

enum Step {
    Done(Partial),
    Dead,
    Branch(Vec<Partial>),
}

fn step(p: &Partial, goal: &Goal) -> Step {
    let holes = p.holes();
    if !p.feasible(&holes, goal) {
        return Step::Dead;
    }
    if holes.is_empty() {
        return Step::Done(p.clone());
    }
    let h = p.pick(&holes, goal);
    Step::Branch(p.children(&h, goal))
}

fn search<F>(p: &Partial, goal: &Goal, finish: &F, found: &mut BTreeSet<CanonicalCode>)
where
    F: Fn(&Partial) -> Option<CanonicalCode>,
{
    match step(p, goal) {
        Step::Done(q) => {
            if let Some(code) = finish(&q) {
                found.insert(code);
            }
        }
        Step::Dead => {}
        Step::Branch(kids) => {
            for k in &kids {
                search(k, goal, finish, found);
            }
        }
    }
}

/// Fills every hole of `seed` in all possible ways and returns the distinct
/// codes produced by `finish` on the completed maps.
pub(crate) fn fill_all<F>(seed: Partial, goal: &Goal, finish: F) -> BTreeSet<CanonicalCode>
where
    F: Fn(&Partial) -> Option<CanonicalCode> + Sync,
{
    let mut found = BTreeSet::new();
    let want = 8 * rayon::current_num_threads().max(1);
    let mut frontier = vec![seed];
    for _ in 0..6 {
        if frontier.len() >= want {
            break;
        }
        let mut next = Vec::new();
        for p in &frontier {
            match step(p, goal) {
                Step::Done(q) => found.extend(finish(&q)),
                Step::Dead => {}
                Step::Branch(kids) => next.extend(kids),
            }
        }
        frontier = next;
    }
    let parts: Vec<BTreeSet<CanonicalCode>> = frontier
        .par_iter()
        .map(|p| {
            let mut local = BTreeSet::new();
            search(p, goal, &finish, &mut local);
            local
        })
        .collect();
    for part in parts {
        found.extend(part);
    }
    found
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeds_have_one_hole() {
        let s = Partial::sphere_seed();
        let h = s.holes();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].len(), 4);
        let d = Partial::disk_seed(&[2, 3, 2, 3, 2, 3]);
        let h = d.holes();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].len(), 6);
        assert_eq!(d.to_map().num_faces(), 2);
    }
}
