//! Canonical codes for embedded graphs (up to orientation-preserving or
//! arbitrary homeomorphism) and for small multigraphs.

use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::map::{Dart, EmbeddedGraph};
use crate::multigraph::Multigraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CodeKind {
    Embedded,
    Multigraph,
}

/// A totally ordered isomorphism key.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub kind: CodeKind,
    pub words: Vec<u32>,
}

impl CanonicalCode {
    /// Hex encoding: a kind byte followed by every word as two big-endian bytes.
    pub fn to_hex(&self) -> String {
        let mut bytes = Vec::with_capacity(1 + 2 * self.words.len());
        bytes.push(match self.kind {
            CodeKind::Embedded => b'E',
            CodeKind::Multigraph => b'M',
        });
        for &w in &self.words {
            let w = u16::try_from(w).expect("code words fit in 16 bits");
            bytes.extend(w.to_be_bytes());
        }
        hex::encode(bytes)
    }

    pub fn from_hex(s: &str) -> Result<Self> {
        let bad = |m: &str| Error::Parse {
            line: 1,
            column: 1,
            message: format!("bad canonical code: {m}"),
        };
        let bytes = hex::decode(s.trim()).map_err(|e| bad(&e.to_string()))?;
        let (&k, rest) = bytes.split_first().ok_or_else(|| bad("empty"))?;
        let kind = match k {
            b'E' => CodeKind::Embedded,
            b'M' => CodeKind::Multigraph,
            _ => return Err(bad("unknown kind")),
        };
        if rest.len() % 2 != 0 {
            return Err(bad("odd payload length"));
        }
        let words = rest
            .chunks(2)
            .map(|c| u16::from_be_bytes([c[0], c[1]]) as u32)
            .collect();
        Ok(CanonicalCode { kind, words })
    }

    /// Rebuilds the map described by an uncoloured embedded code. The result
    /// is the canonical representative of its class.
    pub fn to_embedded(&self) -> Result<EmbeddedGraph> {
        let bad = |m: &str| Error::Structural(format!("not an uncoloured embedded code: {m}"));
        if self.kind != CodeKind::Embedded {
            return Err(bad("wrong kind"));
        }
        let w = &self.words;
        let comps = *w.first().ok_or_else(|| bad("empty"))? as usize;
        let mut sigma = Vec::new();
        let mut alpha = Vec::new();
        let mut pos = 1;
        for _ in 0..comps {
            let n = *w.get(pos).ok_or_else(|| bad("truncated"))? as usize;
            let body = w.get(pos + 1..pos + 1 + 2 * n).ok_or_else(|| bad("truncated"))?;
            let off = sigma.len();
            for pair in body.chunks(2) {
                alpha.push(pair[0] as usize + off);
                sigma.push(pair[1] as usize + off);
            }
            pos += 1 + 2 * n;
        }
        if pos != w.len() {
            return Err(bad("trailing words"));
        }
        EmbeddedGraph::from_permutations(sigma, alpha)
    }

    /// Short sha256 digest of the hex form, suitable for file names.
    pub fn digest(&self) -> String {
        let h = Sha256::digest(self.to_hex().as_bytes());
        hex::encode(&h[..10])
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

/// Options for [`embedded_code_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct EmbeddedCodeOptions<'a> {
    /// A colour per dart; darts are only matched to darts of equal colour.
    pub colours: Option<&'a [u32]>,
    /// Restricts the starting darts. Under reflection the starts are taken
    /// through the edge pairing, which maps a face to its mirror image.
    pub starts: Option<&'a [Dart]>,
    pub include_reflection: bool,
}

/// Canonical code of `g` up to relabeling, and up to reflection when
/// `include_reflection` is set.
pub fn canon_embedded(g: &EmbeddedGraph, include_reflection: bool) -> CanonicalCode {
    embedded_code_with(
        g,
        EmbeddedCodeOptions {
            include_reflection,
            ..Default::default()
        },
    )
}

/// Canonical code with optional dart colours and restricted starts.
///
/// For a disconnected map each component is coded separately and the sorted
/// component codes are concatenated.
pub fn embedded_code_with(g: &EmbeddedGraph, opts: EmbeddedCodeOptions<'_>) -> CanonicalCode {
    let n = g.num_darts();
    let comps = g.components();
    let mut comp_of_vertex = vec![0; g.num_vertices()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of_vertex[v] = i;
        }
    }
    let sigma_inv = if opts.include_reflection { g.sigma_inv() } else { Vec::new() };
    let mirror_colours: Option<Vec<u32>> = match (opts.include_reflection, opts.colours) {
        (true, Some(c)) => Some((0..n).map(|d| c[g.alpha(d)]).collect()),
        _ => None,
    };
    let mut per_comp: Vec<Vec<u32>> = Vec::with_capacity(comps.len());
    let mut ws = Workspace::new(n);
    for ci in 0..comps.len() {
        let starts: Vec<Dart> = match opts.starts {
            Some(s) => s.iter().copied().filter(|&d| comp_of_vertex[g.vertex(d)] == ci).collect(),
            None => (0..n).filter(|&d| comp_of_vertex[g.vertex(d)] == ci).collect(),
        };
        let mut best: Option<Vec<u32>> = None;
        for &s in &starts {
            ws.run(g.sigma_slice(), g.alpha_slice(), opts.colours, s, &mut best);
        }
        if opts.include_reflection {
            let mc = mirror_colours.as_deref().or(opts.colours);
            for &s in &starts {
                let s = if opts.starts.is_some() { g.alpha(s) } else { s };
                ws.run(&sigma_inv, g.alpha_slice(), mc, s, &mut best);
            }
        }
        per_comp.push(best.unwrap_or_default());
    }
    per_comp.sort();
    let mut words = vec![per_comp.len() as u32];
    for c in per_comp {
        words.extend(c);
    }
    CanonicalCode {
        kind: CodeKind::Embedded,
        words,
    }
}

struct Workspace {
    label: Vec<u32>,
    order: Vec<Dart>,
    trace: Vec<u32>,
}

const UNSET: u32 = u32::MAX;

impl Workspace {
    fn new(n: usize) -> Self {
        Workspace {
            label: vec![UNSET; n],
            order: Vec::with_capacity(n),
            trace: Vec::with_capacity(3 * n + 1),
        }
    }

    /// Breadth-first relabeling from `start`; replaces `best` when smaller.
    fn run(&mut self, rot: &[Dart], alpha: &[Dart], colours: Option<&[u32]>, start: Dart, best: &mut Option<Vec<u32>>) {
        for &d in &self.order {
            self.label[d] = UNSET;
        }
        self.order.clear();
        self.trace.clear();
        self.label[start] = 0;
        self.order.push(start);
        // 0: equal so far, 1: already smaller
        let mut state = 0u8;
        let mut pos = 0;
        let mut i = 0;
        while i < self.order.len() {
            let d = self.order[i];
            i += 1;
            let mut words = [0u32; 3];
            let mut k = 0;
            for x in [alpha[d], rot[d]] {
                if self.label[x] == UNSET {
                    self.label[x] = self.order.len() as u32;
                    self.order.push(x);
                }
                words[k] = self.label[x];
                k += 1;
            }
            if let Some(c) = colours {
                words[k] = c[d];
                k += 1;
            }
            for &w in &words[..k] {
                if state == 0 {
                    if let Some(b) = best.as_ref() {
                        match w.cmp(&b[pos + 1]) {
                            std::cmp::Ordering::Greater => return,
                            std::cmp::Ordering::Less => state = 1,
                            std::cmp::Ordering::Equal => {}
                        }
                    }
                }
                self.trace.push(w);
                pos += 1;
            }
        }
        let mut code = Vec::with_capacity(self.trace.len() + 1);
        code.push(self.order.len() as u32);
        code.extend_from_slice(&self.trace);
        match best {
            Some(b) if state == 0 && code.len() >= b.len() => {}
            _ => *best = Some(code),
        }
    }
}

/// Default vertex bound for [`canon_multigraph`].
pub const MULTIGRAPH_BOUND: usize = 12;

/// Canonical code of a multigraph up to isomorphism, refusing more than
/// [`MULTIGRAPH_BOUND`] vertices.
pub fn canon_multigraph(m: &Multigraph) -> Result<CanonicalCode> {
    canon_multigraph_bounded(m, MULTIGRAPH_BOUND)
}

/// Canonical code by individualization and refinement: the minimum
/// upper-triangle encoding over all leaves of the search tree.
pub fn canon_multigraph_bounded(m: &Multigraph, bound: usize) -> Result<CanonicalCode> {
    let n = m.vertex_count();
    if n > bound {
        return Err(Error::Budget(format!(
            "multigraph has {n} vertices, canonical labeling is limited to {bound}"
        )));
    }
    let mat = m.multiplicity_matrix();
    let colours = refine(&mat, vec![0; n]);
    let mut best: Option<Vec<u32>> = None;
    search(&mat, colours, &mut best);
    let mut words = vec![n as u32];
    words.extend(best.unwrap_or_default());
    Ok(CanonicalCode {
        kind: CodeKind::Multigraph,
        words,
    })
}

/// Equitable refinement; colours are ranks of invariant signatures.
fn refine(mat: &[Vec<u8>], mut colours: Vec<u32>) -> Vec<u32> {
    let n = mat.len();
    let mut count = distinct(&colours);
    loop {
        let sigs: Vec<(u32, u8, Vec<(u32, u8)>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<(u32, u8)> = (0..n)
                    .filter(|&w| w != v && mat[v][w] > 0)
                    .map(|w| (colours[w], mat[v][w]))
                    .collect();
                nb.sort_unstable();
                (colours[v], mat[v][v], nb)
            })
            .collect();
        let mut sorted = sigs.clone();
        sorted.sort();
        sorted.dedup();
        colours = sigs
            .iter()
            .map(|s| sorted.binary_search(s).expect("present") as u32)
            .collect();
        let c = sorted.len();
        if c == count {
            return colours;
        }
        count = c;
    }
}

fn distinct(c: &[u32]) -> usize {
    let mut s = c.to_vec();
    s.sort_unstable();
    s.dedup();
    s.len()
}

fn search(mat: &[Vec<u8>], colours: Vec<u32>, best: &mut Option<Vec<u32>>) {
    let n = mat.len();
    let mut sizes = vec![0usize; n];
    for &c in &colours {
        sizes[c as usize] += 1;
    }
    let target = (0..n).find(|&c| sizes[c] > 1);
    match target {
        None => {
            let mut at = vec![0; n];
            for v in 0..n {
                at[colours[v] as usize] = v;
            }
            let mut code = Vec::with_capacity(n * (n + 1) / 2);
            for i in 0..n {
                for j in i..n {
                    code.push(mat[at[i]][at[j]] as u32);
                }
            }
            if best.as_ref().is_none_or(|b| code < *b) {
                *best = Some(code);
            }
        }
        Some(c) => {
            for v in (0..n).filter(|&v| colours[v] as usize == c) {
                let mut next: Vec<u32> = colours.iter().map(|&x| 2 * x + 1).collect();
                next[v] = 2 * colours[v];
                search(mat, refine(mat, next), best);
            }
        }
    }
}

/// Whether two embedded graphs are isomorphic (reflection allowed when set).
pub fn embedded_isomorphic(a: &EmbeddedGraph, b: &EmbeddedGraph, include_reflection: bool) -> bool {
    canon_embedded(a, include_reflection) == canon_embedded(b, include_reflection)
}

pub fn multigraph_isomorphic(a: &Multigraph, b: &Multigraph) -> Result<bool> {
    Ok(canon_multigraph(a)? == canon_multigraph(b)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn k4() -> Multigraph {
        Multigraph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn decoded_code_is_a_fixed_point() {
        for g in [fixtures::cube(), fixtures::ten_vertex()] {
            let c = canon_embedded(&g, true);
            let h = c.to_embedded().unwrap();
            assert_eq!(canon_embedded(&h, true), c);
        }
    }

    #[test]
    fn relabeled_cube_has_the_same_code() {
        let g = fixtures::cube();
        let n = g.num_darts();
        let perm: Vec<usize> = (0..n).map(|d| (d * 7 + 3) % n).collect();
        let h = g.relabel(&perm).unwrap();
        assert_eq!(canon_embedded(&g, true), canon_embedded(&h, true));
        assert_eq!(canon_embedded(&g, false), canon_embedded(&h, false));
    }

    #[test]
    fn mirror_is_equal_under_reflection() {
        let g = fixtures::ten_vertex();
        assert_eq!(canon_embedded(&g, true), canon_embedded(&g.mirror(), true));
    }

    #[test]
    fn cube_and_ten_vertex_differ() {
        assert_ne!(
            canon_embedded(&fixtures::cube(), true),
            canon_embedded(&fixtures::ten_vertex(), true)
        );
    }

    #[test]
    fn hex_round_trip() {
        let c = canon_embedded(&fixtures::cube(), true);
        assert_eq!(CanonicalCode::from_hex(&c.to_hex()).unwrap(), c);
        assert_eq!(c.digest().len(), 20);
    }

    #[test]
    fn two_vertex_cubic_multigraphs_differ() {
        let theta = Multigraph::new(2, [(0, 1), (0, 1), (0, 1)]).unwrap();
        let dumbbell = Multigraph::new(2, [(0, 0), (0, 1), (1, 1)]).unwrap();
        assert_ne!(canon_multigraph(&theta).unwrap(), canon_multigraph(&dumbbell).unwrap());
    }

    #[test]
    fn k4_permutations_agree() {
        let base = canon_multigraph(&k4()).unwrap();
        let m = k4().relabel(&[2, 0, 3, 1]);
        assert_eq!(canon_multigraph(&m).unwrap(), base);
    }

    #[test]
    fn refuses_large_multigraphs() {
        let m = Multigraph::empty(13);
        assert!(matches!(canon_multigraph(&m), Err(Error::Budget(_))));
    }
}
