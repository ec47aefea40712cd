//! Seeded samplers for `G(n, p)`, `G(n, m)`, the configuration model
//! `G(n, d)` and uniform labeled trees.
//!
//! Every sampler is a pure function of its parameters and a [`RandomSeed`].
//! The per-trial generator is ChaCha8 keyed by 32 bytes drawn from a
//! SplitMix64 stream whose starting state mixes the base seed and the trial
//! index. SplitMix64 uses the published constants `0x9E3779B97F4A7C15`,
//! `0xBF58476D1CE4E5B9` and `0x94D049BB133111EB`.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer: an avalanche-quality bijection on `u64`.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Folds a sequence of tags into one seed. Order matters.
pub fn derive_seed(base: u64, tags: &[u64]) -> u64 {
    tags.iter()
        .fold(mix64(base), |acc, &t| mix64(acc.wrapping_add(GOLDEN_GAMMA) ^ mix64(t)))
}

/// `(base, trial)` pair identifying one reproducible random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RandomSeed {
    pub base: u64,
    pub trial: u64,
}

impl RandomSeed {
    pub fn new(base: u64, trial: u64) -> Self {
        Self { base, trial }
    }

    /// The 64-bit state the generator key is expanded from.
    pub fn state(&self) -> u64 {
        derive_seed(self.base, &[self.trial])
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut s = self.state();
        let mut key = [0u8; 32];
        for chunk in key.chunks_exact_mut(8) {
            s = s.wrapping_add(GOLDEN_GAMMA);
            chunk.copy_from_slice(&mix64(s).to_le_bytes());
        }
        ChaCha8Rng::from_seed(key)
    }
}

/// Parameters of one random model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModelParams {
    Gnp { n: usize, p: f64 },
    Gnm { n: usize, m: usize },
    Regular { n: usize, d: usize },
    LabeledTree { k: usize },
}

impl ModelParams {
    /// `G(n, c/n)`. Refuses `c > n` (and negative or non-finite `c`).
    pub fn sparse(n: usize, c: f64) -> Result<Self> {
        if !(c >= 0.0 && c <= n as f64) {
            return Err(Error::InvalidParameter(format!(
                "density c = {c} must lie in [0, n = {n}]"
            )));
        }
        let p = if n == 0 { 0.0 } else { c / n as f64 };
        Ok(ModelParams::Gnp { n, p })
    }

    pub fn sample(&self, seed: RandomSeed) -> Result<Graph> {
        match *self {
            ModelParams::Gnp { n, p } => sample_gnp(n, p, seed),
            ModelParams::Gnm { n, m } => sample_gnm(n, m, seed),
            ModelParams::Regular { n, d } => sample_regular(n, d, seed),
            ModelParams::LabeledTree { k } => sample_labeled_tree(k, seed),
        }
    }
}

/// `G(n, p)`: every pair independently with probability `p`.
///
/// Pairs are visited in the order `(0,1), (0,2), (1,2), (0,3), …` and the gap
/// to the next included pair is drawn from the geometric distribution, which
/// is equivalent in law to one Bernoulli trial per pair but runs in
/// `O(n + m)`.
pub fn sample_gnp(n: usize, p: f64, seed: RandomSeed) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    if p == 0.0 || n < 2 {
        return Ok(Graph::empty(n));
    }
    if p == 1.0 {
        return Ok(Graph::complete(n));
    }
    let mut rng = seed.rng();
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let r: f64 = rng.random();
        let skip = ((1.0 - r).ln() / log_q).floor();
        w += 1 + if skip >= (i64::MAX / 4) as f64 { i64::MAX / 4 } else { skip as i64 };
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges(n, edges)
}

/// Position `i` in the pair order of [`sample_gnp`] to the pair `(u, v)`, `u < v`.
fn pair_from_index(i: u64) -> (usize, usize) {
    let mut v = ((1.0 + (1.0 + 8.0 * i as f64).sqrt()) / 2.0).floor() as u64;
    while v * (v - 1) / 2 > i {
        v -= 1;
    }
    while (v + 1) * v / 2 <= i {
        v += 1;
    }
    ((i - v * (v - 1) / 2) as usize, v as usize)
}

/// `G(n, m)`: uniform over labeled graphs with exactly `m` edges.
pub fn sample_gnm(n: usize, m: usize, seed: RandomSeed) -> Result<Graph> {
    let pairs = n * n.saturating_sub(1) / 2;
    if m > pairs {
        return Err(Error::InvalidParameter(format!(
            "m = {m} exceeds the {pairs} available pairs"
        )));
    }
    let mut rng = seed.rng();
    let mut chosen: Vec<usize> = index::sample(&mut rng, pairs, m).into_vec();
    chosen.sort_unstable();
    Graph::from_edges(n, chosen.into_iter().map(|i| pair_from_index(i as u64)))
}

/// Upper bound on configuration-model rejections before giving up.
pub const MAX_PAIRING_ATTEMPTS: u64 = 1_000_000;

/// Random `d`-regular graph from the configuration model: half-edges are
/// paired uniformly and the pairing is redrawn until it is simple.
pub fn sample_regular(n: usize, d: usize, seed: RandomSeed) -> Result<Graph> {
    if (n * d) % 2 == 1 {
        return Err(Error::InvalidParameter(format!("n·d = {} is odd", n * d)));
    }
    if d >= n && !(n == 0 && d == 0) {
        return Err(Error::InvalidParameter(format!("degree {d} needs more than {n} vertices")));
    }
    let mut rng = seed.rng();
    let points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    let mut pairing = points.clone();
    'attempt: for _ in 0..MAX_PAIRING_ATTEMPTS {
        pairing.copy_from_slice(&points);
        pairing.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = pairing
            .chunks_exact(2)
            .map(|p| (p[0].min(p[1]), p[0].max(p[1])))
            .collect();
        edges.sort_unstable();
        for (i, &(u, v)) in edges.iter().enumerate() {
            if u == v || (i > 0 && edges[i - 1] == (u, v)) {
                continue 'attempt;
            }
        }
        return Graph::from_edges(n, edges);
    }
    Err(Error::RejectionLimit(MAX_PAIRING_ATTEMPTS))
}

/// Uniform sequence in `[0, k)^(k-2)`: the Prüfer code of a uniform labeled tree.
pub fn random_prufer_sequence(k: usize, seed: RandomSeed) -> Vec<usize> {
    let mut rng = seed.rng();
    (0..k.saturating_sub(2)).map(|_| rng.random_range(0..k)).collect()
}

/// Uniform labeled tree on `k ≥ 1` vertices via a random Prüfer sequence.
pub fn sample_labeled_tree(k: usize, seed: RandomSeed) -> Result<Graph> {
    if k == 0 {
        return Err(Error::InvalidParameter("a tree needs at least one vertex".into()));
    }
    prufer_decode(&random_prufer_sequence(k, seed), k)
}

/// Decodes a Prüfer sequence of length `k − 2` into a tree on `0..k`, in
/// linear time.
pub fn prufer_decode(seq: &[usize], k: usize) -> Result<Graph> {
    if k == 0 || seq.len() + 2 != k.max(2) || (k == 1 && !seq.is_empty()) {
        return Err(Error::InvalidParameter(format!(
            "Prüfer sequence of length {} does not describe a tree on {k} vertices",
            seq.len()
        )));
    }
    if let Some(&bad) = seq.iter().find(|&&x| x >= k) {
        return Err(Error::VertexOutOfRange { vertex: bad, order: k });
    }
    if k == 1 {
        return Ok(Graph::empty(1));
    }
    let mut degree = vec![1usize; k];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(k - 1);
    let mut ptr = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
    let mut leaf = ptr;
    for &x in seq {
        edges.push((leaf, x));
        degree[x] -= 1;
        if x < ptr && degree[x] == 1 {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf, k - 1));
    Graph::from_edges(k, edges)
}

/// Prüfer code of a labeled tree: repeatedly strip the smallest leaf and
/// record its neighbor.
pub fn prufer_encode(tree: &Graph) -> Result<Vec<usize>> {
    if !tree.is_tree() {
        return Err(Error::NotATree);
    }
    let k = tree.order();
    if k <= 2 {
        return Ok(Vec::new());
    }
    let mut degree: Vec<usize> = (0..k).map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; k];
    let mut seq = Vec::with_capacity(k - 2);
    let mut ptr = (0..k).find(|&v| degree[v] == 1).expect("a leaf exists");
    let mut leaf = ptr;
    while seq.len() < k - 2 {
        removed[leaf] = true;
        let parent = tree
            .neighbors(leaf)
            .iter()
            .copied()
            .find(|&w| !removed[w])
            .expect("leaf has a live neighbor");
        seq.push(parent);
        degree[parent] -= 1;
        if parent < ptr && degree[parent] == 1 {
            leaf = parent;
        } else {
            ptr += 1;
            while degree[ptr] != 1 || removed[ptr] {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(seq)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seed(t: u64) -> RandomSeed {
        RandomSeed::new(0xDEC0DE, t)
    }

    #[test]
    fn gnp_extremes_and_errors() {
        assert_eq!(sample_gnp(7, 0.0, seed(0)).unwrap(), Graph::empty(7));
        assert_eq!(sample_gnp(7, 1.0, seed(0)).unwrap(), Graph::complete(7));
        assert!(sample_gnp(7, 1.5, seed(0)).is_err());
        assert!(sample_gnp(7, -0.1, seed(0)).is_err());
        assert!(sample_gnp(7, f64::NAN, seed(0)).is_err());
    }

    #[test]
    fn gnp_mean_edge_count() {
        // Binomial(45, 0.3): mean 13.5, variance 9.45.
        let trials = 10_000;
        let total: usize = (0..trials)
            .map(|t| sample_gnp(10, 0.3, seed(t)).unwrap().size())
            .sum();
        let mean = total as f64 / trials as f64;
        let se = (45.0 * 0.3 * 0.7 / trials as f64).sqrt();
        assert!((mean - 13.5).abs() <= 3.0 * se, "mean {mean}");
    }

    #[test]
    fn gnp_pairs_are_equally_likely() {
        // Each of the 15 pairs of K_6 is included with probability 0.2.
        let trials = 20_000u64;
        let mut counts = [[0u32; 6]; 6];
        for t in 0..trials {
            for (u, v) in sample_gnp(6, 0.2, seed(t)).unwrap().edges() {
                counts[u][v] += 1;
            }
        }
        let se = (0.2 * 0.8 / trials as f64).sqrt();
        for u in 0..6 {
            for v in u + 1..6 {
                let f = counts[u][v] as f64 / trials as f64;
                assert!((f - 0.2).abs() <= 4.0 * se, "pair ({u},{v}) freq {f}");
            }
        }
    }

    #[test]
    fn gnm_extremes_and_uniformity() {
        assert_eq!(sample_gnm(5, 0, seed(0)).unwrap(), Graph::empty(5));
        assert_eq!(sample_gnm(5, 10, seed(0)).unwrap(), Graph::complete(5));
        assert!(sample_gnm(5, 11, seed(0)).is_err());

        let trials = 6_000u64;
        let mut counts = std::collections::BTreeMap::new();
        for t in 0..trials {
            let g = sample_gnm(4, 1, seed(t)).unwrap();
            assert_eq!(g.size(), 1);
            *counts.entry(g.edges().next().unwrap()).or_insert(0u32) += 1;
        }
        assert_eq!(counts.len(), 6);
        let se = (1.0 / 6.0 * 5.0 / 6.0 / trials as f64).sqrt();
        for (&e, &c) in &counts {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 6.0).abs() <= 3.0 * se, "edge {e:?} freq {f}");
        }
    }

    #[test]
    fn pair_index_bijection() {
        let mut i = 0u64;
        for v in 1..60 {
            for u in 0..v {
                assert_eq!(pair_from_index(i), (u, v));
                i += 1;
            }
        }
    }

    #[test]
    fn regular_degrees_and_errors() {
        for t in 0..20 {
            let g = sample_regular(10, 1, seed(t)).unwrap();
            assert_eq!(g.regular_degree(), Some(1));
            let g = sample_regular(11, 2, seed(t)).unwrap();
            assert_eq!(g.regular_degree(), Some(2));
            assert!(crate::graph::connected_components(&g)
                .iter()
                .all(|c| c.kind == crate::graph::ComponentKind::Unicyclic));
            let g = sample_regular(14, 3, seed(t)).unwrap();
            assert_eq!(g.regular_degree(), Some(3));
        }
        assert!(matches!(sample_regular(5, 3, seed(0)), Err(Error::InvalidParameter(_))));
        assert!(matches!(sample_regular(4, 4, seed(0)), Err(Error::InvalidParameter(_))));
        assert_eq!(sample_regular(5, 4, seed(0)).unwrap(), Graph::complete(5));
    }

    #[test]
    fn labeled_trees() {
        assert_eq!(sample_labeled_tree(1, seed(0)).unwrap(), Graph::empty(1));
        assert_eq!(
            sample_labeled_tree(2, seed(0)).unwrap(),
            Graph::from_edges(2, [(0, 1)]).unwrap()
        );
        assert!(sample_labeled_tree(0, seed(0)).is_err());
        for k in 1..40 {
            let t = sample_labeled_tree(k, seed(k as u64)).unwrap();
            assert!(t.is_tree());
        }
    }

    #[test]
    fn labeled_trees_on_three_vertices_are_uniform() {
        let trials = 10_000u64;
        let mut centers = [0u32; 3];
        for t in 0..trials {
            let g = sample_labeled_tree(3, seed(t)).unwrap();
            centers[(0..3).find(|&v| g.degree(v) == 2).unwrap()] += 1;
        }
        let se = (1.0 / 3.0 * 2.0 / 3.0 / trials as f64).sqrt();
        for c in centers {
            let f = c as f64 / trials as f64;
            assert!((f - 1.0 / 3.0).abs() <= 3.0 * se, "freq {f}");
        }
    }

    #[test]
    fn prufer_known_code() {
        // Classic example: edges of the tree with code [3, 3, 3, 4] on 6 vertices.
        let t = prufer_decode(&[3, 3, 3, 4], 6).unwrap();
        let edges: Vec<_> = t.edges().collect();
        assert_eq!(edges, vec![(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(prufer_encode(&t).unwrap(), vec![3, 3, 3, 4]);
        assert!(prufer_decode(&[0, 6], 4).is_err());
        assert!(prufer_decode(&[0], 4).is_err());
        assert!(prufer_encode(&Graph::cycle(4)).is_err());
    }

    #[test]
    fn determinism_and_stream_separation() {
        let a = sample_gnp(50, 0.1, seed(3)).unwrap();
        let b = sample_gnp(50, 0.1, seed(3)).unwrap();
        let c = sample_gnp(50, 0.1, seed(4)).unwrap();
        assert_eq!(a.to_edge_list(), b.to_edge_list());
        assert_ne!(a, c);
        assert_ne!(RandomSeed::new(1, 2).state(), RandomSeed::new(2, 1).state());
    }

    #[test]
    fn sparse_parameterisation() {
        assert_eq!(
            ModelParams::sparse(100, 2.0).unwrap(),
            ModelParams::Gnp { n: 100, p: 0.02 }
        );
        assert!(ModelParams::sparse(10, 11.0).is_err());
        assert!(ModelParams::sparse(10, -1.0).is_err());
    }
}
