//! Acceptance suite: one PASS/FAIL line per criterion, written straight to
//! stderr so it shows up without `--nocapture`.

mod common;

use std::collections::BTreeSet;
use std::io::Write;
use std::time::{Duration, Instant};

use quadrimm_core::constructions::{cable, radial, spiral, split_along_cycle, two_disks, BoundaryBijection, SpiralInput};
use quadrimm_core::disk::{buffer, classify_irreducible, enumerate_disks, validate_disk};
use quadrimm_core::enumerate::{
    census_connected_cubic_multigraphs, census_disconnected_8, coverage_report, enumerate_cq, enumerate_cq_filtered,
    enumerate_cq_with, enumerated_corpus, Budget,
};
use quadrimm_core::fixtures;
use quadrimm_core::iso::{canon_embedded, canon_multigraph, CanonicalCode};
use quadrimm_core::transverse::{extract, has_complete_transverse_cycle};
use quadrimm_core::{validate_cq, DiskQuadrangulation, EmbeddedGraph};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const CENSUS_LIMIT: Duration = Duration::from_secs(5 * 60);
const ORACLE_LIMIT: Duration = Duration::from_secs(60 * 60);
const CLASSIFY_LIMIT: Duration = Duration::from_secs(30 * 60);
const TWO_DISKS_TRIPLES: usize = 1000;
const SEED: u64 = 0x5eed;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eps(g: &EmbeddedGraph) -> Result<CanonicalCode, String> {
    extract(g)
        .and_then(|m| canon_multigraph(&m))
        .map_err(|e| e.to_string())
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:?}, limit {limit:?}"))
}

fn census() -> Check {
    let start = Instant::now();
    let mut got = Vec::new();
    for (n, want) in [(2, 2), (4, 5), (6, 17), (8, 71)] {
        let c = census_connected_cubic_multigraphs(n).map_err(|e| e.to_string())?;
        let k = c.connected_count(n).unwrap();
        ensure(k == want, || format!("n = {n}: {k} connected classes, expected {want}"))?;
        got.push(k);
    }
    let d = census_disconnected_8().map_err(|e| e.to_string())?;
    for (part, want) in [("2+2+2+2", 5), ("4+2+2", 15), ("6+2", 34), ("4+4", 15)] {
        let k = d.disconnected_8[part].len();
        ensure(k == want, || format!("partition {part}: {k}, expected {want}"))?;
    }
    ensure(d.disconnected_8_count() == 69, || format!("{} disconnected", d.disconnected_8_count()))?;
    within(start, CENSUS_LIMIT, "census")?;
    Ok(format!("connected {got:?}, disconnected 69 = 5+15+34+15, {:?}", start.elapsed()))
}

fn small_orders() -> Check {
    let e8 = enumerate_cq(8).map_err(|e| e.to_string())?;
    let e9 = enumerate_cq(9).map_err(|e| e.to_string())?;
    let e10 = enumerate_cq(10).map_err(|e| e.to_string())?;
    ensure((e8.len(), e9.len(), e10.len()) == (1, 0, 1), || {
        format!("counts {}, {}, {}", e8.len(), e9.len(), e10.len())
    })?;
    ensure(canon_embedded(&e8[0], true) == canon_embedded(&fixtures::cube(), true), || {
        "n = 8 output is not the cube".into()
    })?;
    ensure(canon_embedded(&e10[0], true) == canon_embedded(&fixtures::ten_vertex(), true), || {
        "n = 10 output differs from the constructed ten-vertex fixture".into()
    })?;
    Ok("n = 8, 9, 10 give 1, 0, 1; codes match the fixtures".into())
}

fn oracle_agreement() -> Check {
    let start = Instant::now();
    let mut counts = Vec::new();
    for n in 8..=12 {
        let a: BTreeSet<_> = enumerate_cq(n).map_err(|e| e.to_string())?.iter().map(|g| canon_embedded(g, true)).collect();
        let b: BTreeSet<_> = enumerate_cq_filtered(n)
            .map_err(|e| e.to_string())?
            .iter()
            .map(|g| canon_embedded(g, true))
            .collect();
        ensure(a == b, || format!("n = {n}: {} vs {} classes, sets differ", a.len(), b.len()))?;
        counts.push(a.len());
    }
    within(start, ORACLE_LIMIT, "oracle comparison")?;
    Ok(format!("identical code sets for n = 8..12, counts {counts:?}"))
}

fn radial_identities() -> Check {
    let corpus = enumerated_corpus(14, &Budget::default()).map_err(|e| e.to_string())?;
    let mut odd = 0;
    for e in corpus.entries().values() {
        let g = &e.graph;
        let r = radial(g);
        ensure(validate_cq(&r).passed(), || "radial graph is not a cubic quadrangulation".into())?;
        ensure(eps(&radial(&r))? == eps(g)?, || {
            format!("extraction changes under the double radial ({} vertices)", g.num_vertices())
        })?;
        if g.num_vertices() % 2 == 1 {
            odd += 1;
            let m = extract(&r).map_err(|e| e.to_string())?;
            ensure(m.components().len() > 1, || "radial extraction of an odd-order map is connected".into())?;
        }
    }
    ensure(odd > 0, || "no odd-order maps were tested".into())?;
    Ok(format!("{} maps with at most 14 vertices, {odd} of odd order", corpus.len()))
}

fn tripod(l: usize) -> quadrimm_core::Result<EmbeddedGraph> {
    spiral(&SpiralInput::with_default_labeling(fixtures::tripod_disk(), l)?)
}

fn spiral_family() -> Check {
    let n = fixtures::tripod_disk().boundary().len();
    ensure(tripod(2).is_err(), || "l = 2 was accepted".into())?;
    let mut codes = Vec::new();
    for l in 1..=25 {
        if l == 2 {
            codes.push(None);
            continue;
        }
        let g = tripod(l).map_err(|e| format!("l = {l}: {e}"))?;
        let rep = validate_cq(&g);
        ensure(rep.passed(), || format!("l = {l}: {:?}", rep.violations))?;
        codes.push(Some(eps(&g)?));
    }
    let period = n - 1;
    let mut pairs = 0;
    for l in 3..=25 - period {
        ensure(codes[l - 1] == codes[l + period - 1], || format!("extraction at l = {l} differs from l + {period}"))?;
        pairs += 1;
    }
    Ok(format!("l in 1, 3..=25 valid, l = 2 rejected, {pairs} period-{period} pairs agree"))
}

fn realized_orders() -> Check {
    let mut sizes = BTreeSet::new();
    for l in (1..=21).filter(|&l| l != 2) {
        let g = tripod(l).map_err(|e| e.to_string())?;
        ensure(validate_cq(&g).passed(), || format!("l = {l} invalid"))?;
        sizes.insert(g.num_vertices() - 8);
    }
    let want: BTreeSet<usize> = std::iter::once(0).chain(2..=20).collect();
    ensure(want.is_subset(&sizes), || format!("missing sizes: {:?}", want.difference(&sizes).collect::<Vec<_>>()))?;
    let nine = enumerate_cq(9).map_err(|e| e.to_string())?;
    ensure(nine.is_empty(), || "a nine-vertex map exists".into())?;
    Ok("8+m vertices realized for m = 0, 2..=20; none with 9".into())
}

fn cable_period() -> Check {
    let (g, w) = fixtures::cable_example();
    let mut codes = Vec::new();
    for c in 0..12 {
        let h = cable(&g, &w, c).map_err(|e| format!("c = {c}: {e}"))?;
        let rep = validate_cq(&h);
        ensure(rep.passed(), || format!("c = {c}: {:?}", rep.violations))?;
        codes.push(eps(&h)?);
    }
    let periodic = |p: usize| (0..codes.len() - p).all(|c| codes[c] == codes[c + p]);
    ensure(periodic(4), || "extractions do not repeat every 4 strands".into())?;
    for p in 1..4 {
        ensure(!periodic(p), || format!("extractions already repeat with period {p}"))?;
    }
    Ok(format!("c = 0..11 valid, minimal period 4, walk period {}", w.period()))
}

fn disk_pool() -> Result<Vec<DiskQuadrangulation>, String> {
    let mut pool = enumerate_disks(10, 16, false).map_err(|e| e.to_string())?;
    let irreducible = enumerate_disks(12, 22, true).map_err(|e| e.to_string())?;
    for d in &irreducible {
        pool.push(buffer(d).map_err(|e| e.to_string())?);
    }
    pool.extend(irreducible);
    Ok(pool)
}

fn two_disks_random() -> Check {
    let pool = disk_pool()?;
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut valid, mut skipped, mut attempts, mut round_trips) = (0, 0, 0, 0);
    while valid < TWO_DISKS_TRIPLES {
        attempts += 1;
        ensure(attempts < 100 * TWO_DISKS_TRIPLES, || "too few valid triples".into())?;
        let a = &pool[rng.gen_range(0..pool.len())];
        let ba = a.boundary();
        let partners: Vec<&DiskQuadrangulation> = pool.iter().filter(|d| d.boundary().len() == ba.len()).collect();
        let b = partners[rng.gen_range(0..partners.len())];
        let bb = b.boundary();
        let phi = BoundaryBijection {
            offset: rng.gen_range(0..ba.len()),
            reverse: rng.gen(),
        };
        let compatible = (0..ba.len()).all(|i| a.map.degree(ba[i]) != 2 || b.map.degree(bb[phi.image(i, ba.len())]) != 2);
        if !compatible {
            ensure(two_disks(a, b, phi, false).is_err(), || "corner-to-corner gluing accepted".into())?;
            skipped += 1;
            continue;
        }
        valid += 1;
        let out = two_disks(a, b, phi, false).map_err(|e| format!("valid triple rejected: {e}"))?;
        let rep = validate_cq(&out.graph);
        ensure(rep.passed(), || format!("output fails validation: {:?}", rep.violations))?;
        let code = canon_embedded(&out.graph, true);
        let cycle = has_complete_transverse_cycle(&out.graph)
            .map_err(|e| e.to_string())?
            .ok_or("output has no cycle of complete transverse paths")?;
        let (x, y, psi) = split_along_cycle(&out.graph, &cycle).map_err(|e| e.to_string())?;
        ensure(validate_disk(&x).passed() && validate_disk(&y).passed(), || "split produced an invalid disk".into())?;
        let back = two_disks(&x, &y, psi, false).map_err(|e| e.to_string())?;
        ensure(canon_embedded(&back.graph, true) == code, || "split and re-glue changed the map".into())?;
        round_trips += 1;
    }
    Ok(format!(
        "{valid} valid triples from {} disks all validate ({skipped} corner clashes rejected), {round_trips} round trips identical",
        pool.len()
    ))
}

fn disk_classification() -> Check {
    let start = Instant::now();
    let c = classify_irreducible(30).map_err(|e| e.to_string())?;
    ensure(c.counterexamples.is_empty(), || format!("{} counterexamples", c.counterexamples.len()))?;
    within(start, CLASSIFY_LIMIT, "classification")?;
    Ok(format!(
        "{} base disks {:?}, {} bufferings, 0 counterexamples, largest base disk {} vertices, {:?}",
        c.base.len(),
        c.base_by_corners,
        c.bufferings.len(),
        c.largest_base,
        start.elapsed()
    ))
}

fn invariant_suites() -> Check {
    let corpus = common::full_corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for (code, e) in corpus.entries() {
        let g = &e.graph;
        let tag = |m: String| format!("{} ({}): {m}", code.digest(), e.provenance);
        common::edge_partition(g).map_err(tag)?;
        common::degree_face_counts(g).map_err(tag)?;
        common::bipartition_identity(g).map_err(tag)?;
        for _ in 0..3 {
            common::relabel_stable(g, &mut rng).map_err(tag)?;
        }
    }
    Ok(format!("{} corpus maps, four suites, zero failures", corpus.len()))
}

fn long_job() -> Check {
    let budget = Budget {
        max_n: 22,
        ..Budget::default()
    };
    let start = Instant::now();
    let mut counts = Vec::new();
    let mut corpus = quadrimm_core::enumerate::Corpus::new();
    for n in 8..=22 {
        let gs = enumerate_cq_with(n, &budget).map_err(|e| e.to_string())?;
        for g in &gs {
            corpus
                .insert(g, quadrimm_core::enumerate::Provenance::Enumerated { n })
                .map_err(|e| e.to_string())?;
        }
        counts.push(gs.len());
    }
    let total: usize = counts.iter().sum();
    ensure(total == 114, || format!("{total} maps with at most 22 vertices, expected 114"))?;
    ensure(counts[22 - 8] == 30, || format!("{} maps on 22 vertices, expected 30", counts[14]))?;
    let cov = coverage_report(&corpus).map_err(|e| e.to_string())?;
    Ok(format!(
        "per-n {counts:?}, total 114, n = 22 gives 30, {:?}; enumerated coverage {}/{} (reference only)",
        start.elapsed(),
        cov.achieved,
        cov.total
    ))
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 11] = [
        ("census", census),
        ("small orders", small_orders),
        ("oracle agreement", oracle_agreement),
        ("radial identities", radial_identities),
        ("spiral family", spiral_family),
        ("realized orders", realized_orders),
        ("cable period", cable_period),
        ("two-disks", two_disks_random),
        ("disk classification", disk_classification),
        ("invariant suites", invariant_suites),
        ("long enumeration", long_job),
    ];
    let mut failed = Vec::new();
    let mut err = std::io::stderr();
    for (i, (name, f)) in criteria.iter().enumerate() {
        let line = match f() {
            Ok(detail) => format!("PASS {:>2} {name}: {detail}\n", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                format!("FAIL {:>2} {name}: {detail}\n", i + 1)
            }
        };
        err.write_all(line.as_bytes()).unwrap();
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
