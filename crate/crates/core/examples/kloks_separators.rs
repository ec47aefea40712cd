//! Balanced k-partitions as tree-width certificates, and the dense union bound.

use treedepth::exact::treewidth_exact;
use treedepth::random::{sample_gnp, RandomSeed};
use treedepth::separators::{dense_separator_tail, dense_threshold_fraction, find_balanced_kpartition, PartitionSearch};

fn main() {
    let g = sample_gnp(12, 0.5, RandomSeed::new(8, 0)).unwrap();
    let tw = treewidth_exact(&g).unwrap().value;
    println!("G(12, 1/2): tw = {tw}");
    for k in 0..=8 {
        match find_balanced_kpartition(&g, k).unwrap() {
            PartitionSearch::Found(p) => println!("k = {k}: A = {:?}, S = {:?}, B = {:?}", p.a, p.s, p.b),
            PartitionSearch::Absent { .. } => println!("k = {k}: none, so tw > {k}"),
        }
    }

    let c = 20.0;
    let f = dense_threshold_fraction(c) * 1.1;
    for n in [100, 1000, 10_000] {
        println!("n = {n}, p = c/n, f = {f:.3}: tail bound {:.3e}", dense_separator_tail(n, c / n as f64, f));
    }
}
