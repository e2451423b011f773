//! Dart-based combinatorial maps.
//!
//! A map is a pair of permutations on darts: `alpha` pairs the two halves of
//! every edge and `sigma` lists the darts around each vertex counterclockwise.
//! Faces are the orbits of `phi = sigma . alpha`, i.e. `phi(d) = sigma(alpha(d))`.
//!
//! Vertex ids are assigned by scanning darts in ascending order, so they are a
//! deterministic function of the permutations.

use std::collections::VecDeque;

use crate::error::{Error, Result};

pub type Dart = usize;

const NONE: usize = usize::MAX;

/// An immutable embedded graph stored as a rotation system.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EmbeddedGraph {
    sigma: Vec<Dart>,
    alpha: Vec<Dart>,
    vertex_of: Vec<usize>,
    first_dart: Vec<Dart>,
}

impl EmbeddedGraph {
    /// Builds a map from explicit rotation and edge-pairing permutations.
    pub fn from_permutations(sigma: Vec<Dart>, alpha: Vec<Dart>) -> Result<Self> {
        let n = sigma.len();
        if alpha.len() != n {
            return Err(Error::Structural(format!(
                "rotation has {} darts but pairing has {}",
                n,
                alpha.len()
            )));
        }
        check_permutation(&sigma, "rotation")?;
        for (d, &a) in alpha.iter().enumerate() {
            if a >= n {
                return Err(Error::Structural(format!("pairing of dart {d} is out of range")));
            }
            if a == d {
                return Err(Error::Structural(format!("dart {d} is paired with itself")));
            }
            if alpha[a] != d {
                return Err(Error::Structural(format!("pairing is not an involution at dart {d}")));
            }
        }
        let mut vertex_of = vec![NONE; n];
        let mut first_dart = Vec::new();
        for d in 0..n {
            if vertex_of[d] != NONE {
                continue;
            }
            let v = first_dart.len();
            first_dart.push(d);
            let mut x = d;
            loop {
                vertex_of[x] = v;
                x = sigma[x];
                if x == d {
                    break;
                }
            }
        }
        Ok(EmbeddedGraph {
            sigma,
            alpha,
            vertex_of,
            first_dart,
        })
    }

    /// Builds a map whose pairing is the implicit `2k <-> 2k+1`.
    pub fn from_rotation(sigma: Vec<Dart>) -> Result<Self> {
        if sigma.len() % 2 != 0 {
            return Err(Error::Structural("odd number of darts".into()));
        }
        let alpha = (0..sigma.len()).map(|d| d ^ 1).collect();
        Self::from_permutations(sigma, alpha)
    }

    /// Builds a simple graph from counterclockwise neighbour lists.
    ///
    /// Every unordered pair `{u, v}` must appear exactly once in `u`'s list and
    /// once in `v`'s list. Vertex `u` of the result is list `u`.
    pub fn from_adjacency(rotations: &[Vec<usize>]) -> Result<Self> {
        use std::collections::HashMap;
        let mut dart_of: HashMap<(usize, usize), Dart> = HashMap::new();
        let mut sigma = Vec::new();
        for (u, nbrs) in rotations.iter().enumerate() {
            if nbrs.is_empty() {
                return Err(Error::Structural(format!("vertex {u} has no neighbours")));
            }
            let base = sigma.len();
            for (i, &v) in nbrs.iter().enumerate() {
                if v >= rotations.len() || v == u {
                    return Err(Error::Structural(format!("bad neighbour {v} of vertex {u}")));
                }
                if dart_of.insert((u, v), base + i).is_some() {
                    return Err(Error::Structural(format!("repeated neighbour {v} of vertex {u}")));
                }
                sigma.push(base + (i + 1) % nbrs.len());
            }
        }
        let mut alpha = vec![NONE; sigma.len()];
        for (&(u, v), &d) in &dart_of {
            alpha[d] = *dart_of
                .get(&(v, u))
                .ok_or_else(|| Error::Structural(format!("adjacency lists are not symmetric at {u}-{v}")))?;
        }
        Self::from_permutations(sigma, alpha)
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn num_vertices(&self) -> usize {
        self.first_dart.len()
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    #[inline]
    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    /// Face permutation.
    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }

    /// Vertex at which `d` is rooted.
    #[inline]
    pub fn vertex(&self, d: Dart) -> usize {
        self.vertex_of[d]
    }

    /// Vertex reached by traversing `d`.
    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.vertex_of[self.alpha[d]]
    }

    pub fn sigma_slice(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn alpha_slice(&self) -> &[Dart] {
        &self.alpha
    }

    pub fn sigma_inv(&self) -> Vec<Dart> {
        let mut inv = vec![0; self.sigma.len()];
        for (d, &s) in self.sigma.iter().enumerate() {
            inv[s] = d;
        }
        inv
    }

    /// Darts around `v` in rotation order, starting at its smallest dart.
    pub fn vertex_darts(&self, v: usize) -> Vec<Dart> {
        orbit(self.first_dart[v], |d| self.sigma[d])
    }

    pub fn degree(&self, v: usize) -> usize {
        let start = self.first_dart[v];
        let mut x = self.sigma[start];
        let mut k = 1;
        while x != start {
            x = self.sigma[x];
            k += 1;
        }
        k
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.num_vertices()];
        for &v in &self.vertex_of {
            deg[v] += 1;
        }
        deg
    }

    /// Face cycles, each starting at its smallest dart, ordered by that dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let n = self.num_darts();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for d in 0..n {
            if seen[d] {
                continue;
            }
            let f = orbit(d, |x| self.phi(x));
            for &x in &f {
                seen[x] = true;
            }
            out.push(f);
        }
        out
    }

    /// Face index of every dart, matching the order of [`faces`](Self::faces).
    pub fn face_index(&self) -> (Vec<usize>, usize) {
        let n = self.num_darts();
        let mut idx = vec![NONE; n];
        let mut count = 0;
        for d in 0..n {
            if idx[d] != NONE {
                continue;
            }
            let mut x = d;
            loop {
                idx[x] = count;
                x = self.phi(x);
                if x == d {
                    break;
                }
            }
            count += 1;
        }
        (idx, count)
    }

    pub fn num_faces(&self) -> usize {
        self.face_index().1
    }

    /// The face cycle containing `d`, starting at `d`.
    pub fn face_walk(&self, d: Dart) -> Vec<Dart> {
        orbit(d, |x| self.phi(x))
    }

    /// Connected components as sorted vertex lists, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let nv = self.num_vertices();
        let mut comp = vec![NONE; nv];
        let mut out = Vec::new();
        for s in 0..nv {
            if comp[s] != NONE {
                continue;
            }
            let c = out.len();
            let mut members = vec![s];
            comp[s] = c;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for d in self.vertex_darts(v) {
                    let w = self.head(d);
                    if comp[w] == NONE {
                        comp[w] = c;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// `V - E + F`, summed over components.
    pub fn euler_characteristic(&self) -> i64 {
        self.num_vertices() as i64 - self.num_edges() as i64 + self.num_faces() as i64
    }

    pub fn has_loop(&self) -> bool {
        (0..self.num_darts()).any(|d| self.vertex(d) == self.head(d))
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for d in (0..self.num_darts()).filter(|&d| d < self.alpha(d)) {
            let (a, b) = (self.vertex(d), self.head(d));
            if !seen.insert((a.min(b), a.max(b))) {
                return true;
            }
        }
        false
    }

    pub fn is_simple(&self) -> bool {
        !self.has_loop() && !self.has_parallel_edges()
    }

    /// Orientation reversal: every rotation inverted.
    pub fn mirror(&self) -> EmbeddedGraph {
        EmbeddedGraph::from_permutations(self.sigma_inv(), self.alpha.clone())
            .expect("inverse of a valid map is valid")
    }

    /// Combinatorial dual: same darts and pairing, rotation replaced by the
    /// face permutation. Dual vertices correspond to faces, dual faces to
    /// vertices, and `dual(dual(g)) == g` exactly.
    pub fn dual(&self) -> EmbeddedGraph {
        let sigma = (0..self.num_darts()).map(|d| self.phi(d)).collect();
        EmbeddedGraph::from_permutations(sigma, self.alpha.clone())
            .expect("face permutation of a valid map is a permutation")
    }

    /// Relabels darts by `perm` (old dart `d` becomes `perm[d]`).
    pub fn relabel(&self, perm: &[Dart]) -> Result<EmbeddedGraph> {
        let n = self.num_darts();
        check_permutation(perm, "relabeling")?;
        if perm.len() != n {
            return Err(Error::Structural("relabeling has wrong length".into()));
        }
        let mut sigma = vec![0; n];
        let mut alpha = vec![0; n];
        for d in 0..n {
            sigma[perm[d]] = perm[self.sigma[d]];
            alpha[perm[d]] = perm[self.alpha[d]];
        }
        EmbeddedGraph::from_permutations(sigma, alpha)
    }

    /// Whether the pairing already has the `2k <-> 2k+1` form.
    pub fn is_normalized(&self) -> bool {
        (0..self.num_darts()).all(|d| self.alpha[d] == d ^ 1)
    }

    /// Relabels darts so that edge `k` consists of darts `2k` and `2k+1`.
    ///
    /// Edges are numbered by their smallest dart and the smaller dart of each
    /// edge becomes the even one. Returns the new graph and the dart map.
    pub fn normalized_with_map(&self) -> (EmbeddedGraph, Vec<Dart>) {
        let n = self.num_darts();
        let mut perm = vec![NONE; n];
        let mut k = 0;
        for d in 0..n {
            if perm[d] == NONE {
                perm[d] = 2 * k;
                perm[self.alpha[d]] = 2 * k + 1;
                k += 1;
            }
        }
        let g = self.relabel(&perm).expect("normalization is a bijection");
        (g, perm)
    }

    pub fn normalized(&self) -> EmbeddedGraph {
        self.normalized_with_map().0
    }

    /// Edge list as `(u, v)` vertex pairs, one per edge, ordered by smallest dart.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.num_darts())
            .filter(|&d| d < self.alpha[d])
            .map(|d| (self.vertex(d), self.head(d)))
            .collect()
    }

    /// Dart from `u` to `v`, if the two are adjacent.
    pub fn dart_between(&self, u: usize, v: usize) -> Option<Dart> {
        self.vertex_darts(u).into_iter().find(|&d| self.head(d) == v)
    }

    /// Smallest dart rooted at `v`.
    pub fn first_dart(&self, v: usize) -> Dart {
        self.first_dart[v]
    }
}

pub(crate) fn orbit(start: Dart, mut f: impl FnMut(Dart) -> Dart) -> Vec<Dart> {
    let mut out = vec![start];
    let mut x = f(start);
    while x != start {
        out.push(x);
        x = f(x);
    }
    out
}

fn check_permutation(p: &[usize], what: &str) -> Result<()> {
    let mut hit = vec![false; p.len()];
    for (d, &x) in p.iter().enumerate() {
        if x >= p.len() {
            return Err(Error::Structural(format!("{what} image of dart {d} is out of range")));
        }
        if hit[x] {
            return Err(Error::Structural(format!(
                "{what} is not a bijection: dart {x} hit twice (at dart {d})"
            )));
        }
        hit[x] = true;
    }
    Ok(())
}

/// Result of smoothing a degree-2 vertex inside a [`MapBuilder`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothed {
    /// The two incident edges were merged into one.
    Merged,
    /// The vertex carried a loop; the loop and the vertex were removed.
    DroppedLoop,
}

/// Mutable rotation system used for surgery. Darts and vertices keep their
/// ids until [`build`](MapBuilder::build) compacts them.
#[derive(Clone, Debug)]
pub struct MapBuilder {
    sigma: Vec<Dart>,
    alpha: Vec<Dart>,
    vert: Vec<usize>,
    alive: Vec<bool>,
    vert_dart: Vec<Dart>,
}

impl MapBuilder {
    pub fn new() -> Self {
        MapBuilder {
            sigma: Vec::new(),
            alpha: Vec::new(),
            vert: Vec::new(),
            alive: Vec::new(),
            vert_dart: Vec::new(),
        }
    }

    pub fn from_graph(g: &EmbeddedGraph) -> Self {
        let mut b = MapBuilder::new();
        b.append(g);
        b
    }

    /// Adds a disjoint copy of `g`; returns the dart and vertex offsets.
    pub fn append(&mut self, g: &EmbeddedGraph) -> (usize, usize) {
        let doff = self.sigma.len();
        let voff = self.vert_dart.len();
        for d in 0..g.num_darts() {
            self.sigma.push(g.sigma(d) + doff);
            self.alpha.push(g.alpha(d) + doff);
            self.vert.push(g.vertex(d) + voff);
            self.alive.push(true);
        }
        for v in 0..g.num_vertices() {
            self.vert_dart.push(g.first_dart(v) + doff);
        }
        (doff, voff)
    }

    #[inline]
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    #[inline]
    pub fn alpha(&self, d: Dart) -> Dart {
        self.alpha[d]
    }

    #[inline]
    pub fn phi(&self, d: Dart) -> Dart {
        self.sigma[self.alpha[d]]
    }

    #[inline]
    pub fn vertex(&self, d: Dart) -> usize {
        self.vert[d]
    }

    #[inline]
    pub fn head(&self, d: Dart) -> usize {
        self.vert[self.alpha[d]]
    }

    pub fn is_alive(&self, d: Dart) -> bool {
        self.alive[d]
    }

    pub fn num_vertex_slots(&self) -> usize {
        self.vert_dart.len()
    }

    pub fn vertex_alive(&self, v: usize) -> bool {
        self.vert_dart[v] != NONE
    }

    pub fn degree(&self, v: usize) -> usize {
        if self.vert_dart[v] == NONE {
            return 0;
        }
        self.vertex_darts(v).len()
    }

    pub fn vertex_darts(&self, v: usize) -> Vec<Dart> {
        match self.vert_dart[v] {
            NONE => Vec::new(),
            d => orbit(d, |x| self.sigma[x]),
        }
    }

    pub fn face_walk(&self, d: Dart) -> Vec<Dart> {
        orbit(d, |x| self.phi(x))
    }

    fn sigma_pred(&self, d: Dart) -> Dart {
        let mut x = d;
        while self.sigma[x] != d {
            x = self.sigma[x];
        }
        x
    }

    pub fn new_vertex(&mut self) -> usize {
        self.vert_dart.push(NONE);
        self.vert_dart.len() - 1
    }

    fn new_dart_pair(&mut self, u: usize, v: usize) -> (Dart, Dart) {
        let a = self.sigma.len();
        let b = a + 1;
        self.sigma.extend([a, b]);
        self.alpha.extend([b, a]);
        self.vert.extend([u, v]);
        self.alive.extend([true, true]);
        (a, b)
    }

    /// Puts the fresh dart `n` into the rotation immediately before `d`.
    fn insert_before(&mut self, n: Dart, d: Dart) {
        let p = self.sigma_pred(d);
        self.sigma[p] = n;
        self.sigma[n] = d;
    }

    /// Attaches fresh dart `n` at vertex `v`: before `at` if given, otherwise
    /// as the only dart (the vertex must be empty).
    fn attach(&mut self, n: Dart, v: usize, at: Option<Dart>) {
        match at {
            Some(d) => self.insert_before(n, d),
            None => {
                assert_eq!(self.vert_dart[v], NONE, "attach without anchor on a non-empty vertex");
                self.sigma[n] = n;
                self.vert_dart[v] = n;
            }
        }
    }

    /// Adds an edge between the corners before `d1` and before `d2`, which must
    /// lie on the same face. Returns `(n1, n2)` with `n1` rooted at `d1`'s vertex.
    ///
    /// Afterwards the face of `n1` is `n1` followed by the old walk from `d2`
    /// up to (not including) `d1`, and the face of `n2` is `n2` followed by the
    /// walk from `d1` up to `d2`.
    pub fn chord(&mut self, d1: Dart, d2: Dart) -> (Dart, Dart) {
        let (u, v) = (self.vert[d1], self.vert[d2]);
        let (n1, n2) = self.new_dart_pair(u, v);
        self.insert_before(n1, d1);
        self.insert_before(n2, d2);
        (n1, n2)
    }

    /// Adds a new vertex joined to the corner before `d`. Returns
    /// `(n, m, w)`: dart `n` at `d`'s vertex, dart `m` at the new vertex `w`.
    /// The face walk becomes `..., n, m, d, ...`.
    pub fn pendant(&mut self, d: Dart) -> (Dart, Dart, usize) {
        let u = self.vert[d];
        let w = self.new_vertex();
        let (n, m) = self.new_dart_pair(u, w);
        self.insert_before(n, d);
        self.attach(m, w, None);
        (n, m, w)
    }

    /// Adds an edge between two currently empty vertices.
    pub fn edge_between_isolated(&mut self, u: usize, v: usize) -> (Dart, Dart) {
        let (a, b) = self.new_dart_pair(u, v);
        self.attach(a, u, None);
        self.attach(b, v, None);
        (a, b)
    }

    /// Adds an edge from the corner before `at_u` to a vertex `v`, placing
    /// the new dart at `v` before `at_v` (or as its only dart).
    pub fn edge_to(&mut self, at_u: Dart, v: usize, at_v: Option<Dart>) -> (Dart, Dart) {
        let u = self.vert[at_u];
        let (a, b) = self.new_dart_pair(u, v);
        self.insert_before(a, at_u);
        self.attach(b, v, at_v);
        (a, b)
    }

    /// Splits the edge of `d` with a new vertex `w`. Dart `d` keeps its root
    /// and now ends at `w`; the returned dart continues from `w` to the old head.
    pub fn subdivide(&mut self, d: Dart) -> (usize, Dart) {
        let d2 = self.alpha[d];
        let w = self.new_vertex();
        let (a, b) = self.new_dart_pair(w, w);
        // a pairs with d, b pairs with d2
        self.alpha[d] = a;
        self.alpha[a] = d;
        self.alpha[d2] = b;
        self.alpha[b] = d2;
        self.sigma[a] = b;
        self.sigma[b] = a;
        self.vert_dart[w] = a;
        (w, b)
    }

    fn detach(&mut self, d: Dart) {
        let v = self.vert[d];
        if self.sigma[d] == d {
            self.vert_dart[v] = NONE;
        } else {
            let p = self.sigma_pred(d);
            self.sigma[p] = self.sigma[d];
            if self.vert_dart[v] == d {
                self.vert_dart[v] = self.sigma[d];
            }
        }
        self.sigma[d] = d;
        self.alive[d] = false;
    }

    /// Deletes the edge containing `d`; vertices left without darts vanish.
    pub fn remove_edge(&mut self, d: Dart) {
        let a = self.alpha[d];
        self.detach(d);
        if a != d && self.alive[a] {
            self.detach(a);
        }
    }

    /// Moves every dart of vertex `v` (in rotation order starting at `first`)
    /// into the rotation of `target`'s vertex, immediately before `target`.
    /// `v` disappears.
    pub fn merge_vertex_before(&mut self, v: usize, first: Dart, target: Dart) {
        let w = self.vert[target];
        assert_eq!(self.vert[first], v);
        let seq = orbit(first, |x| self.sigma[x]);
        let p = self.sigma_pred(target);
        self.sigma[p] = seq[0];
        for i in 0..seq.len() - 1 {
            self.sigma[seq[i]] = seq[i + 1];
        }
        self.sigma[*seq.last().unwrap()] = target;
        for &x in &seq {
            self.vert[x] = w;
        }
        self.vert_dart[v] = NONE;
    }

    /// Smooths the degree-2 vertex `v`. A vertex carrying a loop is dropped
    /// together with the loop.
    pub fn smooth(&mut self, v: usize) -> Result<Smoothed> {
        let darts = self.vertex_darts(v);
        if darts.len() != 2 {
            return Err(Error::WrongDegree {
                vertex: v,
                degree: darts.len(),
                expected: "2",
            });
        }
        let (a, b) = (darts[0], darts[1]);
        if self.alpha[a] == b {
            self.detach(a);
            self.detach(b);
            return Ok(Smoothed::DroppedLoop);
        }
        let x = self.alpha[a];
        let y = self.alpha[b];
        self.detach(a);
        self.detach(b);
        self.alpha[x] = y;
        self.alpha[y] = x;
        Ok(Smoothed::Merged)
    }

    /// Compacts into an [`EmbeddedGraph`]. Returns the graph and the map from
    /// builder darts to new darts (`None` for deleted darts).
    pub fn build_with_map(&self) -> Result<(EmbeddedGraph, Vec<Option<Dart>>)> {
        let mut map = vec![None; self.sigma.len()];
        let mut k = 0;
        for d in 0..self.sigma.len() {
            if self.alive[d] {
                map[d] = Some(k);
                k += 1;
            }
        }
        let mut sigma = vec![0; k];
        let mut alpha = vec![0; k];
        for d in 0..self.sigma.len() {
            if let Some(nd) = map[d] {
                sigma[nd] = map[self.sigma[d]]
                    .ok_or_else(|| Error::Structural(format!("rotation of dart {d} hits a deleted dart")))?;
                alpha[nd] = map[self.alpha[d]]
                    .ok_or_else(|| Error::Structural(format!("dart {d} is paired with a deleted dart")))?;
            }
        }
        Ok((EmbeddedGraph::from_permutations(sigma, alpha)?, map))
    }

    pub fn build(&self) -> Result<EmbeddedGraph> {
        Ok(self.build_with_map()?.0)
    }
}

impl Default for MapBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// Smooths the degree-2 vertex `v`: its two edges are merged into one.
pub fn smooth_vertex(g: &EmbeddedGraph, v: usize) -> Result<EmbeddedGraph> {
    if v >= g.num_vertices() {
        return Err(Error::Precondition(format!("no vertex {v}")));
    }
    let darts = g.vertex_darts(v);
    if darts.len() != 2 {
        return Err(Error::WrongDegree {
            vertex: v,
            degree: darts.len(),
            expected: "2",
        });
    }
    if g.alpha(darts[0]) == darts[1] {
        return Err(Error::DegenerateSmoothing(v));
    }
    let mut b = MapBuilder::from_graph(g);
    b.smooth(v)?;
    b.build()
}

/// Faces of `g` as dart cycles.
pub fn faces(g: &EmbeddedGraph) -> Vec<Vec<Dart>> {
    g.faces()
}

/// Combinatorial dual of `g`.
pub fn dual(g: &EmbeddedGraph) -> Result<EmbeddedGraph> {
    if !g.is_connected() {
        return Err(Error::Disconnected(g.components()[1][0]));
    }
    Ok(g.dual())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cube_faces() {
        let g = fixtures::cube();
        let f = g.faces();
        assert_eq!(f.len(), 6);
        assert!(f.iter().all(|c| c.len() == 4));
        assert_eq!(g.euler_characteristic(), 2);
    }

    #[test]
    fn single_edge_has_one_face_of_length_two() {
        let g = EmbeddedGraph::from_rotation(vec![0, 1]).unwrap();
        assert_eq!(g.num_vertices(), 2);
        let f = g.faces();
        assert_eq!(f, vec![vec![0, 1]]);
    }

    #[test]
    fn rejects_non_permutation() {
        let err = EmbeddedGraph::from_rotation(vec![1, 1, 2, 3]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn rejects_fixed_point_pairing() {
        let err = EmbeddedGraph::from_permutations(vec![0, 1], vec![0, 1]).unwrap_err();
        assert!(matches!(err, Error::Structural(_)));
    }

    #[test]
    fn smoothing_a_path() {
        let g = EmbeddedGraph::from_adjacency(&[vec![1], vec![0, 2], vec![1]]).unwrap();
        let h = smooth_vertex(&g, 1).unwrap();
        assert_eq!(h.num_vertices(), 2);
        assert_eq!(h.num_edges(), 1);
    }

    #[test]
    fn smoothing_a_square_corner() {
        let g = EmbeddedGraph::from_adjacency(&[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let h = smooth_vertex(&g, 0).unwrap();
        assert_eq!(h.num_vertices(), 3);
        assert_eq!(h.num_edges(), 3);
        assert_eq!(h.num_faces(), 2);
    }

    #[test]
    fn smoothing_rejects_wrong_degree_and_loops() {
        let g = fixtures::cube();
        assert!(matches!(smooth_vertex(&g, 0), Err(Error::WrongDegree { .. })));
        // a single loop on one vertex
        let loop_map = EmbeddedGraph::from_rotation(vec![1, 0]).unwrap();
        assert_eq!(smooth_vertex(&loop_map, 0), Err(Error::DegenerateSmoothing(0)));
    }

    #[test]
    fn dual_of_square_is_four_parallel_edges() {
        let g = EmbeddedGraph::from_adjacency(&[vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]]).unwrap();
        let d = g.dual();
        assert_eq!(d.num_vertices(), 2);
        assert_eq!(d.num_edges(), 4);
        assert_eq!(d.degrees(), vec![4, 4]);
        assert_eq!(d.dual(), g);
    }

    #[test]
    fn dual_of_cube_is_octahedron() {
        let d = fixtures::cube().dual();
        assert_eq!(d.num_vertices(), 6);
        assert!(d.degrees().iter().all(|&k| k == 4));
        let f = d.faces();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|c| c.len() == 3));
    }

    #[test]
    fn normalization_keeps_structure() {
        let g = fixtures::cube().mirror();
        let (h, _) = g.normalized_with_map();
        assert!(h.is_normalized());
        assert_eq!(h.num_faces(), 6);
    }

    #[test]
    fn subdivide_and_chord_keep_faces_consistent() {
        let mut b = MapBuilder::from_graph(&fixtures::cube());
        let (_, _) = b.subdivide(0);
        let g = b.build().unwrap();
        assert_eq!(g.num_vertices(), 9);
        assert_eq!(g.num_faces(), 6);
        assert_eq!(g.euler_characteristic(), 2);
    }
}
