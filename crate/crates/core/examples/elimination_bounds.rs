//! Constructive upper bounds against the exact tree-depth.

use treedepth::census::classify;
use treedepth::elimination::{build_general_upper, build_tree_centroid, build_unicyclic, greedy_heuristic};
use treedepth::exact::{td_lower_bound_path, treedepth_exact};
use treedepth::random::{sample_gnp, sample_labeled_tree, RandomSeed};
use treedepth::Graph;

fn main() {
    let tree = sample_labeled_tree(200, RandomSeed::new(1, 0)).unwrap();
    let f = build_tree_centroid(&tree).unwrap();
    println!("random tree on 200 vertices: centroid height {} (bound 8)", f.height());

    let u = build_unicyclic(&Graph::cycle(16)).unwrap();
    println!("C_16: unicyclic forest height {}", u.height());

    let n = 18;
    for t in 0..5 {
        let g = sample_gnp(n, 2.5 / n as f64, RandomSeed::new(2, t)).unwrap();
        let upper = build_general_upper(&g);
        println!(
            "G({n}, 2.5/n) #{t}: path lower {} <= exact {} <= general {} / greedy {}  (max excess {})",
            td_lower_bound_path(&g),
            treedepth_exact(&g).unwrap().value,
            upper.height(),
            greedy_heuristic(&g).height(),
            classify(&g).max_excess,
        );
    }
}
