//! Mean height of uniform labeled trees against √(2πk).

use treedepth::census::tree_height_and_diameter;
use treedepth::random::{sample_labeled_tree, RandomSeed};

fn main() {
    for k in [100, 1000, 10_000] {
        let trials = 300;
        let (mut h, mut d) = (0usize, 0usize);
        for t in 0..trials {
            let s = tree_height_and_diameter(&sample_labeled_tree(k, RandomSeed::new(6, t)).unwrap(), 0).unwrap();
            h += s.height;
            d += s.diameter;
        }
        println!(
            "k = {k:>5}: mean height {:.2}, mean diameter {:.2}, √(2πk) = {:.2}",
            h as f64 / trials as f64,
            d as f64 / trials as f64,
            (2.0 * std::f64::consts::PI * k as f64).sqrt()
        );
    }
}
