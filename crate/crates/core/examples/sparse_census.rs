//! Component census of G(n, c/n) and tree counts against their expectation.

use treedepth::census::{classify, expected_tree_count, CENSUS_CSV_HEADER};
use treedepth::random::{sample_gnp, RandomSeed};

fn main() {
    let n = 50_000;
    for c in [0.5, 1.0, 1.5] {
        let census = classify(&sample_gnp(n, c / n as f64, RandomSeed::new(4, 0)).unwrap());
        println!(
            "c = {c}: {} components, largest {}, max excess {}",
            census.component_count(),
            census.largest_order,
            census.max_excess
        );
        for k in 1..=5 {
            println!("  trees of order {k}: {} (expected {:.1})", census.tree_count(k), expected_tree_count(n, c, k));
        }
    }
    let small = classify(&sample_gnp(40, 1.0 / 40.0, RandomSeed::new(4, 1)).unwrap());
    println!("{CENSUS_CSV_HEADER}");
    small.write_csv(&mut std::io::stdout(), 4, 40, 1.0).unwrap();
}
