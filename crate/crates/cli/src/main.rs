use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

mod commands;
mod output;

use output::{exit_code_for, Outcome};
use quadrimm_core::io::{sha256_hex, Config, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "quadrimm", version, about = "Cubic quadrangulations of the sphere and their cubic multigraphs")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Configuration file with `key = value` budget and worker settings.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    /// Write a run manifest (JSON) to this path.
    #[arg(long, global = true, value_name = "PATH")]
    pub manifest: Option<PathBuf>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Check that a map is a cubic quadrangulation.
    Validate { input: PathBuf },
    /// Extract the cubic multigraph on the degree-3 vertices.
    Extract {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Delete every transversal and smooth the leftover degree-2 vertices.
    Reduce {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the decomposition of the edges into transverse walks.
    Walks { input: PathBuf },
    /// Find a simple cycle made of complete transverse paths.
    TdCycle { input: PathBuf },
    /// Print the canonical code of an EMB or MGR file.
    Canon {
        input: PathBuf,
        /// Distinguish a map from its mirror image.
        #[arg(long)]
        chiral: bool,
    },
    /// Decide whether two EMB or two MGR files are isomorphic.
    Iso {
        a: PathBuf,
        b: PathBuf,
        #[arg(long)]
        chiral: bool,
    },
    /// Glue two quadrangulated disks along their boundaries.
    TwoDisks {
        a: PathBuf,
        b: PathBuf,
        #[arg(long, default_value_t = 0)]
        offset: usize,
        #[arg(long)]
        reverse: bool,
        #[arg(long)]
        auto_fix: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Build the radial graph.
    Radial {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Wind quadrangles around a disk and close it up.
    Spiral {
        disk: PathBuf,
        #[arg(long)]
        l: usize,
        /// Boundary vertex where the winding starts.
        #[arg(long)]
        label_start: usize,
        #[arg(long)]
        reverse: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Thicken a band of faces along a cabling walk.
    Cable {
        input: PathBuf,
        #[arg(long)]
        walk: PathBuf,
        #[arg(long)]
        c: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Enumerate cubic quadrangulations on N vertices.
    Enum {
        #[arg(long)]
        n: usize,
        /// Use the slower graph-first generator.
        #[arg(long)]
        oracle: bool,
        /// Print only the canonical codes.
        #[arg(long)]
        codes_only: bool,
    },
    /// Count cubic multigraphs.
    Census {
        #[arg(long, conflicts_with = "disconnected_8", required_unless_present = "disconnected_8")]
        n: Option<usize>,
        #[arg(long)]
        disconnected_8: bool,
    },
    /// Build a corpus directory from enumeration and construction sweeps.
    Corpus {
        #[arg(long)]
        max_n: usize,
        /// Also add construction outputs with at most this many vertices.
        #[arg(long)]
        sweep: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Report which eight-vertex cubic multigraphs a corpus realizes.
    Coverage {
        #[arg(long)]
        corpus: PathBuf,
    },
    /// Enumerate quadrangulated disks.
    Disks {
        #[arg(long)]
        max_boundary: usize,
        #[arg(long)]
        max_vertices: usize,
        #[arg(long)]
        irreducible: bool,
    },
    /// Classify irreducible disks up to a vertex bound.
    ClassifyDisks {
        #[arg(long)]
        bound: usize,
    },
    /// Render an EMB or MGR file as Graphviz DOT.
    ExportDot { input: PathBuf },
    /// Re-run a recorded manifest and compare outputs.
    Replay { manifest: PathBuf },
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let code = run(cli, argv[1..].to_vec());
    ExitCode::from(code)
}

fn run(cli: Cli, args: Vec<String>) -> u8 {
    let config = match load_config(&cli.global) {
        Ok(c) => c,
        Err(e) => return report_error(&e),
    };
    if let Some(w) = config.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(w).build_global() {
            eprintln!("warning: {e}");
        }
    }
    let start = Instant::now();
    let outcome = match commands::execute(&cli.command, &cli.global, &config) {
        Ok(o) => o,
        Err(e) => return report_error(&e),
    };
    let rendered = outcome.render(cli.global.json);
    print!("{rendered}");
    if let Some(path) = &cli.global.manifest {
        let m = RunManifest {
            subcommand: commands::name(&cli.command).to_string(),
            args: strip_manifest_flag(&args),
            parameters: outcome.parameters.clone(),
            input_digests: outcome.input_digests.clone(),
            output_codes: outcome.codes.clone(),
            output_digest: outcome.digest(&rendered),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            elapsed_ms: start.elapsed().as_millis(),
        };
        let text = serde_json::to_string_pretty(&m).expect("manifest serializes");
        if let Err(e) = std::fs::write(path, text + "\n") {
            eprintln!("error: cannot write manifest {}: {e}", path.display());
            return 1;
        }
    }
    outcome.status
}

fn load_config(g: &Global) -> anyhow::Result<Config> {
    let c = match &g.config {
        Some(p) => Config::parse(&commands::read(p)?)?,
        None => Config::default(),
    };
    Ok(c.with_env()?)
}

fn strip_manifest_flag(args: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if a == "--manifest" {
            skip = true;
            continue;
        }
        if a.starts_with("--manifest=") {
            continue;
        }
        out.push(a.clone());
    }
    out
}

fn report_error(e: &anyhow::Error) -> u8 {
    eprintln!("error: {e:#}");
    exit_code_for(e)
}

/// Replays a manifest in-process and compares codes and output digest.
pub(crate) fn replay(m: &RunManifest) -> anyhow::Result<Outcome> {
    for (path, digest) in &m.input_digests {
        let bytes = std::fs::read(path).map_err(|e| anyhow::anyhow!("cannot read input {path}: {e}"))?;
        if sha256_hex(&bytes) != *digest {
            return Err(quadrimm_core::Error::Precondition(format!("input {path} changed since the recorded run")).into());
        }
    }
    let mut argv = vec!["quadrimm".to_string()];
    argv.extend(m.args.iter().cloned());
    let cli = Cli::try_parse_from(&argv)
        .map_err(|e| quadrimm_core::Error::Precondition(format!("manifest arguments do not parse: {e}")))?;
    if matches!(cli.command, Command::Replay { .. }) {
        return Err(quadrimm_core::Error::Precondition("a manifest cannot replay another replay".into()).into());
    }
    let config = load_config(&cli.global)?;
    let o = commands::execute(&cli.command, &cli.global, &config)?;
    let rendered = o.render(cli.global.json);
    let same_codes = o.codes == m.output_codes;
    let same_digest = o.digest(&rendered) == m.output_digest;
    let mut r = Outcome::new(format!(
        "replayed {}: codes {}, output {}\n",
        m.subcommand,
        if same_codes { "identical" } else { "differ" },
        if same_digest { "identical" } else { "differs" }
    ));
    r.json = serde_json::json!({
        "subcommand": m.subcommand,
        "codes_identical": same_codes,
        "output_identical": same_digest,
    });
    r.status = if same_codes && same_digest { 0 } else { 2 };
    Ok(r)
}
