//! Seeded random semimatroids of each kind, each run through the full check suite.

use semimatroid_dt::generators::{random_semimatroid, RandomKind};
use semimatroid_dt::suite::run_suite;

fn main() {
    for kind in [RandomKind::Arrangement, RandomKind::Graphic, RandomKind::Linear] {
        for seed in 0..3 {
            let s = random_semimatroid(seed, kind, 6).unwrap();
            let report = run_suite(&s, seed, 5);
            println!(
                "{kind:?} seed {seed}: {} faces, T = {}, checks {}",
                s.complex().len(),
                s.tutte_sum(),
                if report.passed() { "pass" } else { "FAIL" }
            );
            assert!(report.passed(), "{}", report.to_json());
        }
    }
}
