//! Text formats, DOT export, run configuration and run manifests.
//!
//! EMB records describe a rotation system with the implicit pairing
//! `2k <-> 2k+1`:
//!
//! ```text
//! emb <n_darts>
//! outer: <dart>          (disks only)
//! sigma: <p0> <p1> ...
//! ```
//!
//! MGR records describe a multigraph as `mgr <n_vertices>` followed by one
//! `u v` line per edge. In both formats `#` starts a comment.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::disk::DiskQuadrangulation;
use crate::enumerate::Budget;
use crate::error::{Error, Result};
use crate::map::{Dart, EmbeddedGraph};
use crate::multigraph::Multigraph;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-empty lines with comments removed, as (line number, tokens with
/// their 1-based columns).
fn token_lines(text: &str) -> Vec<(usize, Vec<(usize, &str)>)> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let mut toks = Vec::new();
        let mut start = None;
        for (pos, ch) in line.char_indices().chain([(line.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(pos),
                (true, Some(s)) => {
                    toks.push((s + 1, &line[s..pos]));
                    start = None;
                }
                _ => {}
            }
        }
        if !toks.is_empty() {
            out.push((i + 1, toks));
        }
    }
    out
}

fn number(line: usize, (col, tok): (usize, &str)) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, col, format!("expected a number, found {tok:?}")))
}

/// One EMB record: a map and, for disks, its outer dart.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbRecord {
    pub graph: EmbeddedGraph,
    pub outer: Option<Dart>,
}

/// Parses every EMB record in `text`.
pub fn parse_emb_records(text: &str) -> Result<Vec<EmbRecord>> {
    struct Pending {
        line: usize,
        n: usize,
        sigma: Option<Vec<Dart>>,
        outer: Option<(usize, usize, Dart)>,
    }
    fn finish(p: Pending) -> Result<EmbRecord> {
        let sigma = p.sigma.ok_or_else(|| perr(p.line, 1, "record has no sigma line"))?;
        let graph = EmbeddedGraph::from_rotation(sigma).map_err(|e| perr(p.line, 1, e.to_string()))?;
        if let Some((line, col, d)) = p.outer {
            if d >= p.n {
                return Err(perr(line, col, format!("outer dart {d} out of range")));
            }
        }
        Ok(EmbRecord {
            graph,
            outer: p.outer.map(|(_, _, d)| d),
        })
    }
    let mut out = Vec::new();
    let mut cur: Option<Pending> = None;
    for (line, toks) in token_lines(text) {
        let (col, head) = toks[0];
        match head {
            "emb" => {
                if let Some(p) = cur.take() {
                    out.push(finish(p)?);
                }
                if toks.len() != 2 {
                    return Err(perr(line, col, "expected `emb <n_darts>`"));
                }
                let n = number(line, toks[1])?;
                if n % 2 == 1 {
                    return Err(perr(line, toks[1].0, "number of darts must be even"));
                }
                cur = Some(Pending {
                    line,
                    n,
                    sigma: None,
                    outer: None,
                });
            }
            "sigma:" | "outer:" => {
                let p = cur.as_mut().ok_or_else(|| perr(line, col, "missing `emb` header"))?;
                if head == "outer:" {
                    if toks.len() != 2 {
                        return Err(perr(line, col, "expected `outer: <dart>`"));
                    }
                    p.outer = Some((line, toks[1].0, number(line, toks[1])?));
                    continue;
                }
                if toks.len() - 1 != p.n {
                    return Err(perr(line, col, format!("sigma lists {} darts, header says {}", toks.len() - 1, p.n)));
                }
                let mut hit = vec![false; p.n];
                let mut sigma = Vec::with_capacity(p.n);
                for (d, &tok) in toks[1..].iter().enumerate() {
                    let x = number(line, tok)?;
                    if x >= p.n {
                        return Err(perr(line, tok.0, format!("image {x} of dart {d} out of range")));
                    }
                    if hit[x] {
                        return Err(perr(line, tok.0, format!("sigma is not a permutation: {x} repeated at dart {d}")));
                    }
                    hit[x] = true;
                    sigma.push(x);
                }
                p.sigma = Some(sigma);
            }
            _ => return Err(perr(line, col, format!("unexpected token {head:?}"))),
        }
    }
    if let Some(p) = cur.take() {
        out.push(finish(p)?);
    }
    Ok(out)
}

/// Parses a single EMB record.
pub fn parse_emb(text: &str) -> Result<EmbeddedGraph> {
    let mut recs = parse_emb_records(text)?;
    match recs.len() {
        1 => Ok(recs.remove(0).graph),
        k => Err(perr(1, 1, format!("expected one EMB record, found {k}"))),
    }
}

/// Parses a single EMB record carrying an `outer:` line.
pub fn parse_disk(text: &str) -> Result<DiskQuadrangulation> {
    let mut recs = parse_emb_records(text)?;
    if recs.len() != 1 {
        return Err(perr(1, 1, format!("expected one EMB record, found {}", recs.len())));
    }
    let r = recs.remove(0);
    let outer = r.outer.ok_or_else(|| perr(1, 1, "disk record needs an `outer:` line"))?;
    Ok(DiskQuadrangulation::new(r.graph, outer))
}

fn emb_text(g: &EmbeddedGraph, outer: Option<Dart>) -> String {
    let (g, map) = if g.is_normalized() {
        (g.clone(), (0..g.num_darts()).collect())
    } else {
        g.normalized_with_map()
    };
    let mut s = format!("emb {}\n", g.num_darts());
    if let Some(o) = outer {
        let _ = writeln!(s, "outer: {}", map[o]);
    }
    s.push_str("sigma:");
    for &x in g.sigma_slice() {
        let _ = write!(s, " {x}");
    }
    s.push('\n');
    s
}

/// EMB text; maps with another pairing are normalized first.
pub fn serialize_emb(g: &EmbeddedGraph) -> String {
    emb_text(g, None)
}

pub fn serialize_disk(d: &DiskQuadrangulation) -> String {
    emb_text(&d.map, Some(d.outer))
}

/// Parses a single MGR record.
pub fn parse_mgr(text: &str) -> Result<Multigraph> {
    let lines = token_lines(text);
    let (line, toks) = lines.first().ok_or_else(|| perr(1, 1, "empty MGR input"))?;
    if toks[0].1 != "mgr" || toks.len() != 2 {
        return Err(perr(*line, toks[0].0, "expected `mgr <n_vertices>`"));
    }
    let n = number(*line, toks[1])?;
    let mut edges = Vec::new();
    for (line, toks) in &lines[1..] {
        if toks.len() != 2 {
            return Err(perr(*line, toks[0].0, "expected `u v`"));
        }
        let u = number(*line, toks[0])?;
        let v = number(*line, toks[1])?;
        for (x, tok) in [(u, toks[0]), (v, toks[1])] {
            if x >= n {
                return Err(perr(*line, tok.0, format!("vertex {x} out of range")));
            }
        }
        edges.push((u, v));
    }
    Multigraph::new(n, edges)
}

/// MGR text with edges as sorted `u v` pairs, `u <= v`.
pub fn serialize_mgr(m: &Multigraph) -> String {
    let mut s = format!("mgr {}\n", m.vertex_count());
    for &(u, v) in m.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

const DOT_CUBIC: &str = "shape=circle, style=filled, fillcolor=black, fontcolor=white";
const DOT_OTHER: &str = "shape=circle";

/// DOT rendering of an embedded graph: degree-3 vertices filled, edges in
/// smallest-dart order, and the faces listed in a trailing comment block.
pub fn export_dot_embedded(g: &EmbeddedGraph) -> String {
    let mut s = String::from("graph embedded {\n");
    for v in 0..g.num_vertices() {
        let style = if g.degree(v) == 3 { DOT_CUBIC } else { DOT_OTHER };
        let _ = writeln!(s, "  v{v} [{style}];");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(s, "  v{u} -- v{v};");
    }
    s.push_str("  /* faces as vertex cycles */\n");
    for (i, f) in g.faces().iter().enumerate() {
        let cycle: Vec<String> = f.iter().map(|&d| format!("v{}", g.vertex(d))).collect();
        let _ = writeln!(s, "  // f{i}: {}", cycle.join(" "));
    }
    s.push_str("}\n");
    s
}

/// DOT rendering of a multigraph; loops and parallel edges are drawn as
/// repeated edges.
pub fn export_dot_multigraph(m: &Multigraph) -> String {
    let mut s = String::from("graph multigraph {\n");
    let deg = m.degrees();
    for (v, &d) in deg.iter().enumerate() {
        let style = if d == 3 { DOT_CUBIC } else { DOT_OTHER };
        let _ = writeln!(s, "  v{v} [{style}];");
    }
    for &(u, v) in m.edges() {
        let _ = writeln!(s, "  v{u} -- v{v};");
    }
    s.push_str("}\n");
    s
}

/// Run configuration: search budgets and worker count.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub budget: Budget,
    /// Worker threads; `None` lets the thread pool decide.
    pub workers: Option<usize>,
}

pub const WORKERS_ENV: &str = "QUADRIMM_WORKERS";

impl Config {
    /// Parses `key = value` lines. Known keys: `max_n`, `oracle_max_n`,
    /// `max_boundary`, `max_disk_vertices`, `workers`.
    pub fn parse(text: &str) -> Result<Config> {
        let mut c = Config::default();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| perr(i + 1, 1, "expected `key = value`"))?;
            let (key, value) = (key.trim(), value.trim().trim_matches('"'));
            let col = raw.find(value).map_or(1, |p| p + 1);
            let n: usize = value
                .parse()
                .map_err(|_| perr(i + 1, col, format!("expected a number for {key}, found {value:?}")))?;
            match key {
                "max_n" => c.budget.max_n = n,
                "oracle_max_n" => c.budget.oracle_max_n = n,
                "max_boundary" => c.budget.max_boundary = n,
                "max_disk_vertices" => c.budget.max_disk_vertices = n,
                "workers" => c.workers = Some(n),
                _ => return Err(perr(i + 1, 1, format!("unknown key {key:?}"))),
            }
        }
        Ok(c)
    }

    /// Applies the worker-count environment override, if set.
    pub fn with_env(mut self) -> Result<Config> {
        if let Ok(v) = std::env::var(WORKERS_ENV) {
            let n = v
                .trim()
                .parse()
                .map_err(|_| Error::Precondition(format!("{WORKERS_ENV} must be a number, got {v:?}")))?;
            self.workers = Some(n);
        }
        Ok(self)
    }
}

/// Hex sha256 of a byte string.
pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Record of one command run, sufficient to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Full argument list after the program name.
    pub args: Vec<String>,
    pub parameters: BTreeMap<String, String>,
    /// Input file path to sha256 of its contents.
    pub input_digests: BTreeMap<String, String>,
    /// Canonical codes (hex) of the objects the run produced, in output order.
    pub output_codes: Vec<String>,
    /// sha256 of the full standard output.
    pub output_digest: String,
    pub tool_version: String,
    pub elapsed_ms: u128,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn cube_round_trip() {
        let g = fixtures::cube();
        let text = serialize_emb(&g);
        let h = parse_emb(&text).unwrap();
        assert_eq!(h.num_darts(), 24);
        assert_eq!(h.num_faces(), 6);
        assert_eq!(serialize_emb(&h), text);
    }

    #[test]
    fn non_permutation_is_located() {
        let err = parse_emb("emb 4\nsigma: 1 1 3 2\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse {
                line: 2,
                column: 10,
                message: "sigma is not a permutation: 1 repeated at dart 1".into()
            }
        );
        assert!(matches!(parse_emb("emb 4\nsigma: 1 0 9 2\n"), Err(Error::Parse { line: 2, column: 12, .. })));
    }

    #[test]
    fn disk_round_trip() {
        let d = fixtures::tripod_disk();
        let text = serialize_disk(&d);
        assert!(text.lines().nth(1).unwrap().starts_with("outer: "));
        let e = parse_disk(&text).unwrap();
        assert_eq!(e.code(), d.code());
        assert!(parse_disk(&serialize_emb(&d.map)).is_err());
    }

    #[test]
    fn mgr_with_loop() {
        let m = parse_mgr("mgr 2\n0 0\n0 1\n1 1 # loop\n").unwrap();
        assert_eq!(m.num_edges(), 3);
        assert_eq!(m.loop_count(), 2);
        assert!(m.is_regular(3));
        assert_eq!(serialize_mgr(&m), "mgr 2\n0 0\n0 1\n1 1\n");
        assert!(matches!(parse_mgr("mgr 2\n0 5\n"), Err(Error::Parse { line: 2, column: 3, .. })));
    }

    #[test]
    fn dot_of_the_cube() {
        let s = export_dot_embedded(&fixtures::cube());
        assert_eq!(s.matches(" -- ").count(), 12);
        assert_eq!(s.matches("fillcolor=black").count(), 8);
        assert_eq!(s.matches("  // f").count(), 6);
        assert_eq!(s, export_dot_embedded(&fixtures::cube()));
    }

    #[test]
    fn config_keys() {
        let c = Config::parse("max_n = 14\n# comment\nworkers=2\n").unwrap();
        assert_eq!(c.budget.max_n, 14);
        assert_eq!(c.workers, Some(2));
        assert!(matches!(Config::parse("speed = 3"), Err(Error::Parse { line: 1, .. })));
    }
}
