use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use anyhow::Context;
use serde_json::json;

use quadrimm_core::constructions::{cable, radial, spiral, two_disks, BoundaryBijection, CablingWalk, SpiralInput};
use quadrimm_core::enumerate::{
    add_construction_sweep, census_connected_cubic_multigraphs, census_disconnected_8, classify, coverage_report,
    enumerate_cq_filtered_with, enumerate_cq_with, enumerate_disks_with, enumerated_corpus, Corpus,
};
use quadrimm_core::io::{
    export_dot_embedded, export_dot_multigraph, parse_disk, parse_emb, parse_mgr, serialize_disk, serialize_emb,
    serialize_mgr, sha256_hex, Config, RunManifest,
};
use quadrimm_core::iso::{canon_embedded, canon_multigraph, CanonicalCode};
use quadrimm_core::transverse::{extract, has_complete_transverse_cycle, maximal_transverse_walks, reduce_with_report, WalkKind};
use quadrimm_core::{validate_cq, DiskQuadrangulation, EmbeddedGraph, Error, Multigraph};

use crate::output::Outcome;
use crate::{Command, Global};

pub fn name(c: &Command) -> &'static str {
    match c {
        Command::Validate { .. } => "validate",
        Command::Extract { .. } => "extract",
        Command::Reduce { .. } => "reduce",
        Command::Walks { .. } => "walks",
        Command::TdCycle { .. } => "td-cycle",
        Command::Canon { .. } => "canon",
        Command::Iso { .. } => "iso",
        Command::TwoDisks { .. } => "two-disks",
        Command::Radial { .. } => "radial",
        Command::Spiral { .. } => "spiral",
        Command::Cable { .. } => "cable",
        Command::Enum { .. } => "enum",
        Command::Census { .. } => "census",
        Command::Corpus { .. } => "corpus",
        Command::Coverage { .. } => "coverage",
        Command::Disks { .. } => "disks",
        Command::ClassifyDisks { .. } => "classify-disks",
        Command::ExportDot { .. } => "export-dot",
        Command::Replay { .. } => "replay",
    }
}

pub fn read(p: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(p).map_err(|e| {
        Error::Io {
            path: p.display().to_string(),
            message: e.to_string(),
        }
        .into()
    })
}

/// Input file contents as either an embedded map or a multigraph.
enum Parsed {
    Emb(EmbeddedGraph),
    Mgr(Multigraph),
}

/// Reads inputs and records their digests.
#[derive(Default)]
struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn text(&mut self, p: &Path) -> anyhow::Result<String> {
        let t = read(p)?;
        self.digests.insert(p.display().to_string(), sha256_hex(t.as_bytes()));
        Ok(t)
    }

    fn emb(&mut self, p: &Path) -> anyhow::Result<EmbeddedGraph> {
        let t = self.text(p)?;
        parse_emb(&t).with_context(|| format!("reading {}", p.display()))
    }

    fn disk(&mut self, p: &Path) -> anyhow::Result<DiskQuadrangulation> {
        let t = self.text(p)?;
        parse_disk(&t).with_context(|| format!("reading {}", p.display()))
    }

    fn any(&mut self, p: &Path) -> anyhow::Result<Parsed> {
        let t = self.text(p)?;
        let head = t.split_whitespace().next().unwrap_or("");
        let parsed = match head {
            "mgr" => Parsed::Mgr(parse_mgr(&t)?),
            _ => Parsed::Emb(parse_emb(&t)?),
        };
        Ok(parsed)
    }
}

/// Writes `body` to `path` if given (recording it), otherwise returns it for
/// standard output.
fn emit(out: &mut Outcome, path: &Option<std::path::PathBuf>, body: String) -> anyhow::Result<()> {
    match path {
        Some(p) => {
            std::fs::write(p, &body).map_err(|e| Error::Io {
                path: p.display().to_string(),
                message: e.to_string(),
            })?;
            out.files.insert(p.display().to_string(), body);
        }
        None => out.text.push_str(&body),
    }
    Ok(())
}

fn emb_outcome(g: &EmbeddedGraph, path: &Option<std::path::PathBuf>, note: &str) -> anyhow::Result<Outcome> {
    let code = canon_embedded(g, true);
    let rep = validate_cq(g);
    let mut o = Outcome::new(String::new());
    emit(&mut o, path, serialize_emb(g))?;
    if path.is_some() {
        let _ = writeln!(o.text, "{note}: {} vertices, {} edges, code {}", g.num_vertices(), g.num_edges(), code);
    }
    o.json = json!({
        "vertices": g.num_vertices(),
        "edges": g.num_edges(),
        "faces": g.num_faces(),
        "valid": rep.passed(),
        "code": code.to_hex(),
        "emb": serialize_emb(g),
    });
    o.codes.push(code.to_hex());
    Ok(o)
}

pub fn execute(cmd: &Command, _global: &Global, config: &Config) -> anyhow::Result<Outcome> {
    let mut inputs = Inputs::default();
    let budget = &config.budget;
    let mut params: BTreeMap<String, String> = BTreeMap::new();
    let mut o = match cmd {
        Command::Validate { input } => {
            let g = inputs.emb(input)?;
            let rep = validate_cq(&g);
            let mut text = String::new();
            if rep.passed() {
                let nu4 = rep.degree_counts.get(&4).copied().unwrap_or(0);
                let _ = writeln!(
                    text,
                    "valid cubic quadrangulation: {} vertices ({} of degree 4), {} edges, {} faces",
                    rep.num_vertices, nu4, rep.num_edges, rep.num_faces
                );
            } else {
                let _ = writeln!(text, "not a cubic quadrangulation:");
                for v in &rep.violations {
                    let _ = writeln!(text, "  - {v}");
                }
            }
            let mut o = Outcome::new(text);
            o.json = serde_json::to_value(&rep)?;
            o.json["passed"] = json!(rep.passed());
            if rep.passed() {
                o.codes.push(canon_embedded(&g, true).to_hex());
            } else {
                o.status = 2;
            }
            o
        }
        Command::Extract { input, output } => {
            let g = inputs.emb(input)?;
            let m = extract(&g)?;
            let code = canon_multigraph(&m)?;
            let mut o = Outcome::new(String::new());
            emit(&mut o, output, serialize_mgr(&m))?;
            if output.is_some() {
                let _ = writeln!(o.text, "extracted {} vertices, {} edges, code {code}", m.vertex_count(), m.num_edges());
            }
            o.json = json!({
                "vertices": m.vertex_count(),
                "edges": m.edges(),
                "connected": m.components().len() == 1,
                "code": code.to_hex(),
            });
            o.codes.push(code.to_hex());
            o
        }
        Command::Reduce { input, output } => {
            let g = inputs.emb(input)?;
            let r = reduce_with_report(&g)?;
            let mut o = emb_outcome(&r.graph, output, "reduced")?;
            o.json["deleted_walks"] = json!(r.deleted_walks);
            o.json["dropped_components"] = json!(r.dropped_components);
            o
        }
        Command::Walks { input } => {
            let g = inputs.emb(input)?;
            let walks = maximal_transverse_walks(&g)?;
            let mut text = String::new();
            let mut rows = Vec::new();
            for w in &walks {
                let vs = w.vertices(&g);
                let kind = match w.kind {
                    WalkKind::CompletePath => "path",
                    WalkKind::Closed => "closed",
                };
                let _ = writeln!(text, "{kind} {}", join(&vs));
                rows.push(json!({"kind": w.kind, "vertices": vs, "darts": w.darts}));
            }
            let mut o = Outcome::new(text);
            o.json = json!({ "walks": rows });
            o
        }
        Command::TdCycle { input } => {
            let g = inputs.emb(input)?;
            let c = has_complete_transverse_cycle(&g)?;
            let text = match &c {
                Some(c) => format!("cycle {}\n", join(&c.vertices)),
                None => "no cycle of complete transverse paths\n".to_string(),
            };
            let mut o = Outcome::new(text);
            o.json = json!({ "cycle": c });
            o
        }
        Command::Canon { input, chiral } => {
            let code = match inputs.any(input)? {
                Parsed::Emb(g) => canon_embedded(&g, !chiral),
                Parsed::Mgr(m) => canon_multigraph(&m)?,
            };
            params.insert("chiral".into(), chiral.to_string());
            let mut o = Outcome::new(format!("{code}\n"));
            o.json = json!({ "code": code.to_hex() });
            o.codes.push(code.to_hex());
            o
        }
        Command::Iso { a, b, chiral } => {
            let ca = code_of(inputs.any(a)?, *chiral)?;
            let cb = code_of(inputs.any(b)?, *chiral)?;
            if ca.kind != cb.kind {
                return Err(Error::Precondition("cannot compare an embedded map with a multigraph".into()).into());
            }
            let same = ca == cb;
            params.insert("chiral".into(), chiral.to_string());
            let mut o = Outcome::new(format!("{}\n", if same { "isomorphic" } else { "not isomorphic" }));
            o.json = json!({ "isomorphic": same, "codes": [ca.to_hex(), cb.to_hex()] });
            o
        }
        Command::TwoDisks {
            a,
            b,
            offset,
            reverse,
            auto_fix,
            output,
        } => {
            let d1 = inputs.disk(a)?;
            let d2 = inputs.disk(b)?;
            let phi = BoundaryBijection {
                offset: *offset,
                reverse: *reverse,
            };
            let out = two_disks(&d1, &d2, phi, *auto_fix)?;
            for w in &out.warnings {
                eprintln!("warning: {w}");
            }
            for f in &out.fixes {
                eprintln!("fixed: {f}");
            }
            params.insert("offset".into(), offset.to_string());
            params.insert("reverse".into(), reverse.to_string());
            params.insert("auto_fix".into(), auto_fix.to_string());
            let mut o = emb_outcome(&out.graph, output, "glued")?;
            o.json["warnings"] = json!(out.warnings);
            o.json["fixes"] = json!(out.fixes);
            o
        }
        Command::Radial { input, output } => {
            let g = inputs.emb(input)?;
            emb_outcome(&radial(&g), output, "radial graph")?
        }
        Command::Spiral {
            disk,
            l,
            label_start,
            reverse,
            output,
        } => {
            let d = inputs.disk(disk)?;
            params.insert("l".into(), l.to_string());
            params.insert("label_start".into(), label_start.to_string());
            params.insert("reverse".into(), reverse.to_string());
            let g = spiral(&SpiralInput {
                disk: d,
                first: *label_start,
                reverse: *reverse,
                l: *l,
            })?;
            emb_outcome(&g, output, "spiral")?
        }
        Command::Cable { input, walk, c, output } => {
            let g = inputs.emb(input)?;
            let w = CablingWalk::parse(&g, &inputs.text(walk)?).with_context(|| format!("reading {}", walk.display()))?;
            params.insert("c".into(), c.to_string());
            emb_outcome(&cable(&g, &w, *c)?, output, "cabled")?
        }
        Command::Enum { n, oracle, codes_only } => {
            params.insert("n".into(), n.to_string());
            params.insert("oracle".into(), oracle.to_string());
            let graphs = if *oracle {
                enumerate_cq_filtered_with(*n, budget)?
            } else {
                enumerate_cq_with(*n, budget)?
            };
            let mut o = Outcome::new(String::new());
            let mut codes = Vec::new();
            for g in &graphs {
                let code = canon_embedded(g, true).to_hex();
                if *codes_only {
                    let _ = writeln!(o.text, "{code}");
                } else {
                    o.text.push_str(&serialize_emb(g));
                }
                codes.push(code);
            }
            eprintln!("{} cubic quadrangulations on {n} vertices", graphs.len());
            o.json = json!({ "n": n, "count": graphs.len(), "codes": codes });
            o.codes = codes;
            o
        }
        Command::Census { n, disconnected_8 } => {
            let mut o = Outcome::new(String::new());
            if *disconnected_8 {
                let c = census_disconnected_8()?;
                let mut parts = serde_json::Map::new();
                for (k, v) in &c.disconnected_8 {
                    let _ = writeln!(o.text, "{k}: {}", v.len());
                    parts.insert(k.clone(), json!(v.len()));
                    o.codes.extend(v.iter().map(CanonicalCode::to_hex));
                }
                let _ = writeln!(o.text, "disconnected total: {}", c.disconnected_8_count());
                o.json = json!({ "disconnected_8": c.disconnected_8_count(), "partitions": parts, "codes": o.codes });
            } else {
                let n = n.expect("clap requires --n");
                params.insert("n".into(), n.to_string());
                let c = census_connected_cubic_multigraphs(n)?;
                let codes: Vec<String> = c.connected[&n].iter().map(CanonicalCode::to_hex).collect();
                let _ = writeln!(o.text, "connected cubic multigraphs on {n} vertices: {}", codes.len());
                o.json = json!({ "n": n, "connected": codes.len(), "codes": codes });
                o.codes = codes;
            }
            o
        }
        Command::Corpus { max_n, sweep, out } => {
            params.insert("max_n".into(), max_n.to_string());
            let mut c = enumerated_corpus(*max_n, budget)?;
            let enumerated = c.len();
            let added = match sweep {
                Some(v) => {
                    params.insert("sweep".into(), v.to_string());
                    add_construction_sweep(&mut c, *v)?
                }
                None => 0,
            };
            c.save(out)?;
            let mut o = Outcome::new(format!(
                "wrote {} entries ({enumerated} enumerated, {added} from constructions) to {}\n",
                c.len(),
                out.display()
            ));
            o.codes = c.entries().keys().map(CanonicalCode::to_hex).collect();
            o.json = json!({ "entries": c.len(), "enumerated": enumerated, "constructed": added });
            o
        }
        Command::Coverage { corpus } => {
            let index = corpus.join("index.tsv");
            inputs.text(&index)?;
            let c = Corpus::load(corpus)?;
            let bad = c.check();
            if !bad.is_empty() {
                return Err(Error::Precondition(format!("corpus is inconsistent: {}", bad.join("; "))).into());
            }
            let r = coverage_report(&c)?;
            let mut text = format!("achieved {}/{} classes\n", r.achieved, r.total);
            let connected_hit = r.classes.iter().filter(|k| k.connected && !k.witnesses.is_empty()).count();
            let connected = r.classes.iter().filter(|k| k.connected).count();
            let _ = writeln!(text, "connected {connected_hit}/{connected}");
            for k in &r.classes {
                let status = if k.witnesses.is_empty() { "missing" } else { "covered" };
                let _ = writeln!(
                    text,
                    "{status} {} {} witnesses={}",
                    if k.connected { "connected" } else { "disconnected" },
                    k.code,
                    k.witnesses.len()
                );
            }
            let mut o = Outcome::new(text);
            o.codes = r.missing.iter().map(CanonicalCode::to_hex).collect();
            o.json = serde_json::to_value(&r)?;
            o
        }
        Command::Disks {
            max_boundary,
            max_vertices,
            irreducible,
        } => {
            params.insert("max_boundary".into(), max_boundary.to_string());
            params.insert("max_vertices".into(), max_vertices.to_string());
            params.insert("irreducible".into(), irreducible.to_string());
            let disks = enumerate_disks_with(*max_boundary, *max_vertices, *irreducible, budget)?;
            let mut o = Outcome::new(String::new());
            for d in &disks {
                o.text.push_str(&serialize_disk(d));
                o.codes.push(d.code().to_hex());
            }
            eprintln!("{} disks", disks.len());
            o.json = json!({ "count": disks.len(), "codes": o.codes });
            o
        }
        Command::ClassifyDisks { bound } => {
            params.insert("bound".into(), bound.to_string());
            let disks = enumerate_disks_with(12, *bound, true, budget)?;
            let c = classify(&disks, *bound);
            let mut text = format!(
                "irreducible disks with at most {bound} vertices: {}\nbase set: {} (largest {} vertices)\n",
                disks.len(),
                c.base.len(),
                c.largest_base
            );
            for (k, v) in &c.base_by_corners {
                let _ = writeln!(text, "  {k} corners: {v}");
            }
            let _ = writeln!(text, "bufferings: {}", c.bufferings.len());
            let _ = writeln!(text, "counterexamples: {}", c.counterexamples.len());
            for x in &c.counterexamples {
                let _ = writeln!(text, "  {x}");
            }
            let mut o = Outcome::new(text);
            o.codes = c.base.iter().map(CanonicalCode::to_hex).collect();
            o.json = serde_json::to_value(&c)?;
            o.json["irreducible"] = json!(disks.len());
            if !c.counterexamples.is_empty() {
                o.status = 2;
            }
            o
        }
        Command::ExportDot { input } => {
            let text = match inputs.any(input)? {
                Parsed::Emb(g) => export_dot_embedded(&g),
                Parsed::Mgr(m) => export_dot_multigraph(&m),
            };
            let mut o = Outcome::new(text.clone());
            o.json = json!({ "dot": text });
            o
        }
        Command::Replay { manifest } => {
            let m: RunManifest = serde_json::from_str(&inputs.text(manifest)?)
                .map_err(|e| Error::Precondition(format!("bad manifest: {e}")))?;
            crate::replay(&m)?
        }
    };
    o.parameters.extend(params);
    o.input_digests = inputs.digests;
    Ok(o)
}

fn code_of(p: Parsed, chiral: bool) -> anyhow::Result<CanonicalCode> {
    Ok(match p {
        Parsed::Emb(g) => canon_embedded(&g, !chiral),
        Parsed::Mgr(m) => canon_multigraph(&m)?,
    })
}

fn join(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
