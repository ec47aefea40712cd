//! tw(G) <= td(G) <= tw(G)(log2 n + 1) on random graphs.

use treedepth::exact::{treedepth_exact, treewidth_exact};
use treedepth::random::{sample_gnp, RandomSeed};

fn main() {
    println!("{:>3} {:>4} {:>3} {:>3} {:>7}", "n", "p", "tw", "td", "bound");
    for i in 0..18u64 {
        let n = 6 + (i % 7) as usize;
        let p = 0.1 * (1 + i % 9) as f64;
        let g = sample_gnp(n, p, RandomSeed::new(5, i)).unwrap();
        let tw = treewidth_exact(&g).unwrap().value;
        let td = treedepth_exact(&g).unwrap().value;
        let bound = tw.max(1) as f64 * ((n as f64).log2() + 1.0);
        println!("{n:>3} {p:>4.1} {tw:>3} {td:>3} {bound:>7.2}");
        assert!(tw <= td && td as f64 <= bound);
    }
}
