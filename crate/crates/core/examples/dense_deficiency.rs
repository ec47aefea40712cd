//! n − td(G(n, 1/2)) grows slowly with n.

use treedepth::experiments::{medians_by_n, run_dense, ExperimentConfig};

fn main() {
    let cfg = ExperimentConfig::parse("regime = dense\np = 0.5\nn = 8, 12, 16\ntrials = 15\nseed = 1").unwrap();
    let records = run_dense(&cfg).unwrap();
    for (n, m) in medians_by_n(&records, |r| r.deficiency.map(|d| d as f64)) {
        println!("n = {n}: median deficiency {}, envelope 3√(2n) = {:.2}", m.unwrap(), 3.0 * (2.0 * n as f64).sqrt());
    }
}
