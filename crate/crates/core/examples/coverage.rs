use std::time::Instant;

use quadrimm_core::enumerate::{add_construction_sweep, coverage_report, enumerated_corpus, Budget};

fn main() {
    let max_n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(22);
    let sweep: usize = std::env::args().nth(2).and_then(|s| s.parse().ok()).unwrap_or(60);
    let budget = Budget {
        max_n,
        ..Budget::default()
    };
    let t = Instant::now();
    let mut c = enumerated_corpus(max_n, &budget).unwrap();
    let r = coverage_report(&c).unwrap();
    println!("enumerated {} maps, coverage {}/{}", c.len(), r.achieved, r.total);
    let added = add_construction_sweep(&mut c, sweep).unwrap();
    let r = coverage_report(&c).unwrap();
    let connected = r.classes.iter().filter(|k| k.connected).count();
    let hit = r.classes.iter().filter(|k| k.connected && !k.witnesses.is_empty()).count();
    println!(
        "constructions added {added}, coverage {}/{} (connected {hit}/{connected}), {:.2}s",
        r.achieved,
        r.total,
        t.elapsed().as_secs_f64()
    );
}
