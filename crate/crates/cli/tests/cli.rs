use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use quadrimm_core::fixtures;
use quadrimm_core::io::{serialize_disk, serialize_emb};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_quadrimm"));
    c.env_remove("QUADRIMM_WORKERS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, body: &str) -> PathBuf {
    let p = dir.join(name);
    std::fs::write(&p, body).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn census_counts() {
    for (n, want) in [("2", 2), ("4", 5), ("6", 17), ("8", 71)] {
        let o = run(&["census", "--n", n, "--json"]);
        assert!(o.status.success());
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        assert_eq!(v["connected"], want);
    }
    let o = run(&["census", "--disconnected-8", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["disconnected_8"], 69);
    assert_eq!(v["partitions"]["2+2+2+2"], 5);
    assert_eq!(v["partitions"]["6+2"], 34);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run(&["census", "--n", "3"]).status.code(), Some(3));
    assert_eq!(run(&["enum", "--n", "40"]).status.code(), Some(4));
    assert_eq!(run(&["no-such-command"]).status.code(), Some(3));
    let tri = write(dir.path(), "tri.emb", &serialize_emb(&fixtures::triangle()));
    let o = run(&["validate", s(&tri)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("not a cubic quadrangulation"));
    let bad = write(dir.path(), "bad.emb", "emb 4\nsigma: 0 0 1 2\n");
    assert_eq!(run(&["validate", s(&bad)]).status.code(), Some(3));
}

#[test]
fn enumeration_and_validation_agree() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["enum", "--n", "10"]);
    assert!(o.status.success());
    let f = write(dir.path(), "ten.emb", &stdout(&o));
    assert!(run(&["validate", s(&f)]).status.success());
    let fixture = write(dir.path(), "fixture.emb", &serialize_emb(&fixtures::ten_vertex()));
    assert_eq!(stdout(&run(&["iso", s(&f), s(&fixture)])).trim(), "isomorphic");
    let oracle = run(&["enum", "--n", "10", "--oracle", "--codes-only"]);
    let primary = run(&["enum", "--n", "10", "--codes-only"]);
    assert_eq!(stdout(&oracle), stdout(&primary));
}

#[test]
fn extraction_of_the_cube_and_its_radial_graph() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.emb", &serialize_emb(&fixtures::cube()));
    let out = dir.path().join("cube.mgr");
    assert!(run(&["extract", s(&cube), "-o", s(&out)]).status.success());
    let mgr = std::fs::read_to_string(&out).unwrap();
    assert!(mgr.starts_with("mgr 8\n"));
    assert_eq!(mgr.lines().count(), 13);
    let rad = dir.path().join("radial.emb");
    assert!(run(&["radial", s(&cube), "-o", s(&rad)]).status.success());
    let o = run(&["extract", s(&rad), "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["connected"], false);
    let dot = stdout(&run(&["export-dot", s(&cube)]));
    assert!(dot.starts_with("graph"));
    assert_eq!(dot.matches(" -- ").count(), 12);
}

#[test]
fn constructions_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let tripod = write(dir.path(), "tripod.emb", &serialize_disk(&fixtures::tripod_disk()));
    let first = fixtures::tripod_disk()
        .boundary()
        .into_iter()
        .find(|&v| fixtures::tripod_disk().map.degree(v) == 3)
        .unwrap();
    let mut ok = 0;
    for rev in [false, true] {
        let mut args = vec!["spiral".to_string(), s(&tripod).into(), "--l".into(), "3".into()];
        args.extend(["--label-start".into(), first.to_string()]);
        if rev {
            args.push("--reverse".into());
        }
        let o = bin().args(&args).output().unwrap();
        if o.status.success() {
            let f = write(dir.path(), "spiral.emb", &stdout(&o));
            assert!(run(&["validate", s(&f)]).status.success());
            ok += 1;
        }
    }
    assert!(ok >= 1);
    let cube = write(dir.path(), "cube.emb", &serialize_emb(&fixtures::cube()));
    let walk = write(dir.path(), "walk.txt", fixtures::CABLE_WALK);
    let o = run(&["cable", s(&cube), "--walk", s(&walk), "--c", "2"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let f = write(dir.path(), "cabled.emb", &stdout(&o));
    assert!(run(&["validate", s(&f)]).status.success());
    let other = write(dir.path(), "other.emb", &serialize_disk(&fixtures::tripod_disk()));
    let o = run(&["two-disks", s(&tripod), s(&other), "--offset", "0", "--reverse", "--auto-fix"]);
    if o.status.success() {
        let f = write(dir.path(), "glued.emb", &stdout(&o));
        assert_eq!(run(&["validate", s(&f)]).status.code(), Some(0));
    } else {
        assert_eq!(o.status.code(), Some(3));
    }
}

#[test]
fn corpus_and_coverage() {
    let dir = tempfile::tempdir().unwrap();
    let corpus = dir.path().join("corpus");
    assert!(run(&["corpus", "--max-n", "12", "--out", s(&corpus)]).status.success());
    assert!(corpus.join("index.tsv").exists());
    let o = run(&["coverage", "--corpus", s(&corpus), "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["total"], 140);
    assert!(v["achieved"].as_u64().unwrap() >= 1);
}

#[test]
fn disks_and_classification() {
    let o = run(&["disks", "--max-boundary", "4", "--max-vertices", "4"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("outer:"));
    let o = run(&["classify-disks", "--bound", "14", "--json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["counterexamples"].as_array().unwrap().len(), 0);
}

#[test]
fn manifest_replay_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.emb", &serialize_emb(&fixtures::cube()));
    let m = dir.path().join("m.json");
    let out = dir.path().join("r.emb");
    let o = run(&["radial", s(&cube), "-o", s(&out), "--manifest", s(&m)]);
    assert!(o.status.success());
    let r = run(&["replay", s(&m)]);
    assert!(r.status.success(), "{}", stdout(&r));
    assert!(stdout(&r).contains("codes identical, output identical"));
    std::fs::write(&cube, serialize_emb(&fixtures::ten_vertex())).unwrap();
    assert_eq!(run(&["replay", s(&m)]).status.code(), Some(3));
}

#[test]
fn config_and_environment() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "q.conf", "max_n = 9 # small\nworkers = 1\n");
    assert_eq!(run(&["enum", "--n", "10", "--config", s(&cfg)]).status.code(), Some(4));
    let o = bin().args(["enum", "--n", "8", "--codes-only"]).env("QUADRIMM_WORKERS", "2").output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().count(), 1);
    let o = bin().args(["enum", "--n", "8"]).env("QUADRIMM_WORKERS", "x").output().unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn canonical_codes_for_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    let cube = write(dir.path(), "cube.emb", &serialize_emb(&fixtures::cube()));
    let mirrored = write(dir.path(), "mirror.emb", &serialize_emb(&fixtures::cube().mirror()));
    assert_eq!(stdout(&run(&["canon", s(&cube)])), stdout(&run(&["canon", s(&mirrored)])));
    let k4 = write(dir.path(), "k4.mgr", "mgr 4\n0 1\n0 2\n0 3\n1 2\n1 3\n2 3\n");
    let k4b = write(dir.path(), "k4b.mgr", "mgr 4\n2 3\n1 3\n0 3\n1 2\n0 2\n0 1\n");
    assert_eq!(stdout(&run(&["iso", s(&k4), s(&k4b)])).trim(), "isomorphic");
    assert_eq!(run(&["iso", s(&k4), s(&cube)]).status.code(), Some(3));
    let dot = stdout(&run(&["export-dot", s(&k4)]));
    assert_eq!(dot.matches(" -- ").count(), 6);
}
