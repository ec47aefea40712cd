//! Expansion of random 3-regular graphs and the resulting tree-width bounds.

use treedepth::exact::treewidth_exact;
use treedepth::expansion::{
    expansion_report, explicit_linear_constant, gamma0_search, lambda2_estimate, sparse_cut_tail,
    tw_lower_from_expansion_exact,
};
use treedepth::random::{sample_regular, RandomSeed};

fn main() {
    for t in 0..5 {
        let g = sample_regular(16, 3, RandomSeed::new(3, t)).unwrap();
        if !g.is_connected() {
            continue;
        }
        let r = expansion_report(&g).unwrap();
        let s = lambda2_estimate(&g, 1e-10).unwrap();
        println!(
            "#{t}: Φ = {} (X = {:?}), α = {}, λ₂ = {:.4}, (1 − λ₂/3)/2 = {:.4}, tw >= {}, tw = {}",
            r.phi.value,
            r.phi.witness,
            r.alpha.value,
            s.lambda2,
            s.conductance_bound,
            tw_lower_from_expansion_exact(r.alpha.value, 16),
            treewidth_exact(&g).unwrap().value,
        );
    }

    let (c, alpha, delta) = (2.0, 1.0, 1.0);
    let tail = sparse_cut_tail(1000, c, alpha, delta, 0.01).unwrap();
    println!("γ = 0.01: β = {:.3}, base = {:.5}, bound at n = 1000: {:.3e}", tail.beta, tail.base, tail.bound);
    println!("γ₀ = {:.6}", gamma0_search(c, alpha, delta).unwrap());
    println!("explicit constant (αδ)²/(9e³c²) = {:.7}", explicit_linear_constant(alpha, delta, c));
}
