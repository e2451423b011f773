use std::time::Instant;

use quadrimm_core::enumerate::{enumerate_cq_filtered_with, enumerate_cq_with, Budget};
use quadrimm_core::iso::canon_embedded;

fn main() {
    let max: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(14);
    let budget = Budget {
        max_n: max,
        oracle_max_n: max,
        ..Budget::default()
    };
    for n in 8..=max {
        let t = Instant::now();
        let gs = enumerate_cq_with(n, &budget).unwrap();
        println!("n={n} count={} secs={:.2}", gs.len(), t.elapsed().as_secs_f64());
        if std::env::args().nth(2).is_some() {
            let t = Instant::now();
            let hs = enumerate_cq_filtered_with(n, &budget).unwrap();
            let a: Vec<_> = gs.iter().map(|g| canon_embedded(g, true)).collect();
            let b: Vec<_> = hs.iter().map(|g| canon_embedded(g, true)).collect();
            println!("  oracle count={} agree={} secs={:.2}", hs.len(), a == b, t.elapsed().as_secs_f64());
        }
    }
}
