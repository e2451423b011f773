//! A store of cubic quadrangulations indexed by their extractions, and the
//! coverage of the eight-vertex cubic multigraph classes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::constructions::{cable, radial, spiral, two_disks, BoundaryBijection, SpiralInput};
use crate::disk::DiskQuadrangulation;
use crate::error::{Error, Result};
use crate::fixtures;
use crate::io::{parse_emb, serialize_emb};
use crate::iso::{canon_embedded, canon_multigraph, CanonicalCode};
use crate::map::EmbeddedGraph;
use crate::transverse::extract;
use crate::validate::validate_cq;

use super::census::census_disconnected_8;
use super::cq::enumerate_cq_with;
use super::disks::enumerate_disks;
use super::Budget;

/// Where a corpus entry came from.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Provenance {
    Enumerated { n: usize },
    Construction { recipe: String },
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Enumerated { n } => write!(f, "enumerated:{n}"),
            Provenance::Construction { recipe } => write!(f, "construction:{recipe}"),
        }
    }
}

impl FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Precondition(format!("bad provenance {s:?}"));
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "enumerated" => Ok(Provenance::Enumerated {
                n: rest.parse().map_err(|_| bad())?,
            }),
            "construction" => Ok(Provenance::Construction { recipe: rest.to_string() }),
            _ => Err(bad()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    /// Canonical representative of the class.
    pub graph: EmbeddedGraph,
    pub provenance: Provenance,
    pub extraction: CanonicalCode,
}

/// Cubic quadrangulations keyed by embedded code (reflection included).
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    entries: BTreeMap<CanonicalCode, CorpusEntry>,
    extraction_index: BTreeMap<CanonicalCode, BTreeSet<CanonicalCode>>,
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

impl Corpus {
    pub fn new() -> Self {
        Corpus::default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &BTreeMap<CanonicalCode, CorpusEntry> {
        &self.entries
    }

    pub fn extraction_index(&self) -> &BTreeMap<CanonicalCode, BTreeSet<CanonicalCode>> {
        &self.extraction_index
    }

    /// Adds `g` unless its class is already present; returns whether it was
    /// new. Rejects maps that are not cubic quadrangulations.
    pub fn insert(&mut self, g: &EmbeddedGraph, provenance: Provenance) -> Result<bool> {
        let rep = validate_cq(g);
        if !rep.passed() {
            return Err(Error::Precondition(format!(
                "not a cubic quadrangulation: {:?}",
                rep.violations
            )));
        }
        let code = canon_embedded(g, true);
        if self.entries.contains_key(&code) {
            return Ok(false);
        }
        let extraction = canon_multigraph(&extract(g)?)?;
        self.extraction_index
            .entry(extraction.clone())
            .or_default()
            .insert(code.clone());
        let graph = code.to_embedded()?;
        self.entries.insert(
            code,
            CorpusEntry {
                graph,
                provenance,
                extraction,
            },
        );
        Ok(true)
    }

    /// Invariant violations: stale keys, invalid witnesses, or an index
    /// that disagrees with recomputed extractions.
    pub fn check(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let mut index: BTreeMap<CanonicalCode, BTreeSet<CanonicalCode>> = BTreeMap::new();
        for (code, e) in &self.entries {
            if canon_embedded(&e.graph, true) != *code {
                bad.push(format!("key {} does not match its graph", code.digest()));
            }
            if !validate_cq(&e.graph).passed() {
                bad.push(format!("entry {} fails validation", code.digest()));
            }
            match extract(&e.graph).and_then(|m| canon_multigraph(&m)) {
                Ok(x) if x == e.extraction => {
                    index.entry(x).or_default().insert(code.clone());
                }
                _ => bad.push(format!("entry {} has a stale extraction", code.digest())),
            }
        }
        if index != self.extraction_index {
            bad.push("extraction index is inconsistent".to_string());
        }
        bad
    }

    /// Writes `<digest>.emb` per entry and `index.tsv` with columns embedded
    /// code, extraction code, provenance and file name.
    pub fn save(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir).map_err(|e| io_err(dir, e))?;
        let mut index = String::from("# embedded_code\textraction_code\tprovenance\tfile\n");
        for (code, e) in &self.entries {
            let file = format!("{}.emb", code.digest());
            let path = dir.join(&file);
            std::fs::write(&path, serialize_emb(&e.graph)).map_err(|err| io_err(&path, err))?;
            index.push_str(&format!("{}\t{}\t{}\t{}\n", code.to_hex(), e.extraction.to_hex(), e.provenance, file));
        }
        let path = dir.join("index.tsv");
        std::fs::write(&path, index).map_err(|e| io_err(&path, e))
    }

    /// Reads a directory written by [`Corpus::save`], checking every key.
    pub fn load(dir: &Path) -> Result<Corpus> {
        let path = dir.join("index.tsv");
        let text = std::fs::read_to_string(&path).map_err(|e| io_err(&path, e))?;
        let mut c = Corpus::new();
        for (i, line) in text.lines().enumerate() {
            if line.starts_with('#') || line.trim().is_empty() {
                continue;
            }
            let cols: Vec<&str> = line.split('\t').collect();
            if cols.len() != 4 {
                return Err(Error::Parse {
                    line: i + 1,
                    column: 1,
                    message: "index lines need four tab-separated columns".into(),
                });
            }
            let code = CanonicalCode::from_hex(cols[0])?;
            let file = dir.join(cols[3]);
            let g = parse_emb(&std::fs::read_to_string(&file).map_err(|e| io_err(&file, e))?)?;
            if canon_embedded(&g, true) != code {
                return Err(Error::Precondition(format!("{} does not match its indexed code", file.display())));
            }
            c.insert(&g, cols[2].parse()?)?;
        }
        Ok(c)
    }
}

/// Every cubic quadrangulation with `8..=max_n` vertices.
pub fn enumerated_corpus(max_n: usize, budget: &Budget) -> Result<Corpus> {
    let mut c = Corpus::new();
    for n in 8..=max_n {
        for g in enumerate_cq_with(n, budget)? {
            c.insert(&g, Provenance::Enumerated { n })?;
        }
    }
    Ok(c)
}

/// Adds the outputs of the constructions: radial graphs of current entries
/// (up to `max_vertices`), spirals around small disks, two-disks gluings of
/// small disks, and the cabling example.
pub fn add_construction_sweep(c: &mut Corpus, max_vertices: usize) -> Result<usize> {
    let before = c.len();
    let current: Vec<(CanonicalCode, EmbeddedGraph)> =
        c.entries().iter().map(|(k, e)| (k.clone(), e.graph.clone())).collect();
    for (k, g) in current {
        let r = radial(&g);
        if r.num_vertices() <= max_vertices {
            c.insert(&r, Provenance::Construction {
                recipe: format!("radial({})", k.digest()),
            })?;
        }
    }
    let disks = enumerate_disks(8, 10, false)?;
    for (i, d) in disks.iter().enumerate() {
        let b = d.boundary();
        for (s, &v) in b.iter().enumerate() {
            let prev = b[(s + b.len() - 1) % b.len()];
            if d.map.degree(v) != 3 || d.map.degree(prev) != 2 || b.len() < 6 {
                continue;
            }
            for l in 1..=(max_vertices.saturating_sub(d.map.num_vertices())) {
                for reverse in [false, true] {
                    let inp = SpiralInput {
                        disk: d.clone(),
                        first: v,
                        reverse,
                        l,
                    };
                    if let Ok(g) = spiral(&inp) {
                        c.insert(&g, Provenance::Construction {
                            recipe: format!("spiral(disk{i},first={v},reverse={reverse},l={l})"),
                        })?;
                    }
                }
            }
        }
    }
    let small: Vec<&DiskQuadrangulation> = disks.iter().filter(|d| d.map.num_vertices() <= 8).collect();
    for (i, a) in small.iter().enumerate() {
        for (j, b) in small.iter().enumerate().skip(i) {
            let len = a.boundary().len();
            if len != b.boundary().len() {
                continue;
            }
            for offset in 0..len {
                for reverse in [false, true] {
                    let phi = BoundaryBijection { offset, reverse };
                    if let Ok(out) = two_disks(a, b, phi, true) {
                        if out.graph.num_vertices() <= max_vertices && validate_cq(&out.graph).passed() {
                            c.insert(&out.graph, Provenance::Construction {
                                recipe: format!("two-disks(small{i},small{j},offset={offset},reverse={reverse})"),
                            })?;
                        }
                    }
                }
            }
        }
    }
    let (g, w) = fixtures::cable_example();
    for k in 0..12 {
        let h = cable(&g, &w, k)?;
        if h.num_vertices() <= max_vertices {
            c.insert(&h, Provenance::Construction {
                recipe: format!("cable(example,c={k})"),
            })?;
        }
    }
    Ok(c.len() - before)
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassCoverage {
    pub code: CanonicalCode,
    pub connected: bool,
    pub witnesses: Vec<CanonicalCode>,
}

/// Which of the cubic multigraph classes on eight vertices are realized as
/// extractions of corpus entries.
#[derive(Clone, Debug, Serialize)]
pub struct CoverageReport {
    pub total: usize,
    pub achieved: usize,
    pub classes: Vec<ClassCoverage>,
    pub missing: Vec<CanonicalCode>,
}

pub fn coverage_report(corpus: &Corpus) -> Result<CoverageReport> {
    let census = census_disconnected_8()?;
    let connected: BTreeSet<CanonicalCode> = census.connected[&8].iter().cloned().collect();
    let all = census.all_8();
    for code in corpus.extraction_index().keys() {
        if all.binary_search(code).is_err() {
            return Err(Error::Precondition(format!(
                "extraction {} is not a cubic multigraph on eight vertices",
                code.to_hex()
            )));
        }
    }
    let classes: Vec<ClassCoverage> = all
        .iter()
        .map(|code| ClassCoverage {
            code: code.clone(),
            connected: connected.contains(code),
            witnesses: corpus
                .extraction_index()
                .get(code)
                .map(|s| s.iter().cloned().collect())
                .unwrap_or_default(),
        })
        .collect();
    let missing: Vec<CanonicalCode> = classes
        .iter()
        .filter(|c| c.witnesses.is_empty())
        .map(|c| c.code.clone())
        .collect();
    Ok(CoverageReport {
        total: classes.len(),
        achieved: classes.len() - missing.len(),
        classes,
        missing,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_alone_covers_one_class() {
        let mut c = Corpus::new();
        assert!(c.insert(&fixtures::cube(), Provenance::Enumerated { n: 8 }).unwrap());
        assert!(!c.insert(&fixtures::cube().mirror(), Provenance::Enumerated { n: 8 }).unwrap());
        let r = coverage_report(&c).unwrap();
        assert_eq!((r.total, r.achieved), (140, 1));
    }

    #[test]
    fn radial_of_the_cube_adds_a_disconnected_class() {
        let mut c = Corpus::new();
        c.insert(&fixtures::cube(), Provenance::Enumerated { n: 8 }).unwrap();
        c.insert(&radial(&fixtures::cube()), Provenance::Construction { recipe: "radial(cube)".into() })
            .unwrap();
        let r = coverage_report(&c).unwrap();
        assert_eq!(r.achieved, 2);
        assert!(r.classes.iter().any(|k| !k.connected && !k.witnesses.is_empty()));
    }

    #[test]
    fn save_and_load_round_trip() {
        let c = enumerated_corpus(12, &Budget::default()).unwrap();
        let dir = std::env::temp_dir().join(format!("quadrimm-corpus-{}", std::process::id()));
        c.save(&dir).unwrap();
        let d = Corpus::load(&dir).unwrap();
        std::fs::remove_dir_all(&dir).unwrap();
        assert_eq!(d.entries(), c.entries());
        assert!(d.check().is_empty());
    }

    #[test]
    fn provenance_text() {
        for p in [
            Provenance::Enumerated { n: 14 },
            Provenance::Construction { recipe: "radial(ab)".into() },
        ] {
            assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
    }
}
