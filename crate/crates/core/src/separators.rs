//! Balanced `k`-partitions `(A, S, B)` and the dense-regime union bound.
//!
//! A balanced `k`-partition has `|S| = k + 1`, no edge between `A` and `B`,
//! and `(n − k − 1)/3 ≤ |A|, |B| ≤ 2(n − k − 1)/3`. A graph with
//! `tw ≤ k ≤ n − 4` always has one, so certified absence is a tree-width
//! lower bound.

use crate::error::{Error, Result};
use crate::graph::{local_masks, mask_component, Graph};

/// Default vertex limit for [`find_balanced_kpartition`].
pub const DEFAULT_PARTITION_LIMIT: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalancedPartition {
    pub a: Vec<usize>,
    pub s: Vec<usize>,
    pub b: Vec<usize>,
    pub k: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionSearch {
    Found(BalancedPartition),
    /// Every separator of size `k + 1` was tried; none admits a balanced split.
    Absent { k: usize },
}

impl PartitionSearch {
    pub fn found(&self) -> Option<&BalancedPartition> {
        match self {
            PartitionSearch::Found(p) => Some(p),
            PartitionSearch::Absent { .. } => None,
        }
    }
}

/// Inclusive window `[⌈r/3⌉, ⌊2r/3⌋]` for `|A|` and `|B|`, with `r = n − k − 1`.
fn size_window(n: usize, k: usize) -> Option<(usize, usize)> {
    let r = n.checked_sub(k + 1)?;
    Some((r.div_ceil(3), 2 * r / 3))
}

/// Checks the balanced `k`-partition conditions. Errors if the three sets do
/// not partition `V(g)`.
pub fn is_balanced_kpartition(g: &Graph, part: &BalancedPartition) -> Result<bool> {
    let n = g.order();
    const A: u8 = 1;
    const S: u8 = 2;
    const B: u8 = 3;
    let mut label = vec![0u8; n];
    for (set, tag) in [(&part.a, A), (&part.s, S), (&part.b, B)] {
        for &v in set.iter() {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, order: n });
            }
            if label[v] != 0 {
                return Err(Error::InvalidPartition(format!("vertex {v} appears twice")));
            }
            label[v] = tag;
        }
    }
    if let Some(v) = label.iter().position(|&l| l == 0) {
        return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
    }
    if part.s.len() != part.k + 1 {
        return Ok(false);
    }
    let Some((lo, hi)) = size_window(n, part.k) else {
        return Ok(false);
    };
    let in_window = |x: usize| lo <= x && x <= hi;
    if !in_window(part.a.len()) || !in_window(part.b.len()) {
        return Ok(false);
    }
    Ok(g.edges().all(|(u, v)| !matches!((label[u], label[v]), (A, B) | (B, A))))
}

pub fn find_balanced_kpartition(g: &Graph, k: usize) -> Result<PartitionSearch> {
    find_balanced_kpartition_with_limit(g, k, DEFAULT_PARTITION_LIMIT)
}

/// Exhaustive search. Every candidate separator `S` of size `k + 1` is tried
/// in increasing bitmask order; the components of `G − S` are then packed
/// into `A` by subset sum, since any balanced split keeps each component
/// whole on one side. Absence is therefore certified.
pub fn find_balanced_kpartition_with_limit(
    g: &Graph,
    k: usize,
    limit: usize,
) -> Result<PartitionSearch> {
    let n = g.order();
    let limit = limit.min(30);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "balanced partition search",
            limit,
            actual: n,
        });
    }
    let Some((lo, hi)) = size_window(n, k) else {
        return Ok(PartitionSearch::Absent { k });
    };
    let all: Vec<usize> = (0..n).collect();
    let adj = local_masks(g, &all);
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let s_size = k + 1;
    // Gosper's hack over all (k+1)-subsets.
    let mut s: u32 = (1u32 << s_size) - 1;
    while s <= full {
        let mut rest = full & !s;
        let mut comps = Vec::new();
        while rest != 0 {
            let c = mask_component(&adj, rest, rest & rest.wrapping_neg());
            rest &= !c;
            comps.push(c);
        }
        if let Some(a) = pack_components(&comps, lo, hi) {
            let members = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
            let b = full & !s & !a;
            return Ok(PartitionSearch::Found(BalancedPartition {
                a: members(a),
                s: members(s),
                b: members(b),
                k,
            }));
        }
        let c = s & s.wrapping_neg();
        let r = s + c;
        if r == 0 {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
    }
    Ok(PartitionSearch::Absent { k })
}

/// Union of components whose total order lies in `[lo, hi]`, if any.
fn pack_components(comps: &[u32], lo: usize, hi: usize) -> Option<u32> {
    // reach[t] = Some(mask) if a union of the first i components has order t.
    let total: usize = comps.iter().map(|c| c.count_ones() as usize).sum();
    let mut reach: Vec<Option<u32>> = vec![None; total + 1];
    reach[0] = Some(0);
    for &c in comps {
        let size = c.count_ones() as usize;
        for t in (size..=total).rev() {
            if reach[t].is_none() {
                if let Some(m) = reach[t - size] {
                    reach[t] = Some(m | c);
                }
            }
        }
    }
    (lo..=hi.min(total)).find_map(|t| reach[t])
}

/// Union bound `exp((ln 3)·n − (2f²/9)·p·n²)` on the probability that
/// `G(n, p)` has a balanced `k`-partition with `k ≤ (1 − f)n`.
pub fn dense_separator_tail(n: usize, p: f64, f: f64) -> f64 {
    dense_tail_exponent(n as f64, p, f).exp()
}

/// Natural log of [`dense_separator_tail`].
pub fn dense_tail_exponent(n: f64, p: f64, f: f64) -> f64 {
    3f64.ln() * n - 2.0 * f * f / 9.0 * p * n * n
}

/// The separator fraction `3·√(ln 3 / (2c))` at which the dense tail exponent
/// changes sign, for `p = c/n`.
pub fn dense_threshold_fraction(c: f64) -> f64 {
    3.0 * (3f64.ln() / (2.0 * c)).sqrt()
}

/// Inputs and value of the dense union bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DenseBoundParams {
    pub c: f64,
    pub f: f64,
    pub bound: f64,
}

impl DenseBoundParams {
    pub fn new(n: usize, p: f64, f: f64) -> Self {
        Self {
            c: p * n as f64,
            f,
            bound: dense_separator_tail(n, p, f),
        }
    }

    /// Whether `f` exceeds the threshold, so the bound vanishes as `n` grows.
    pub fn vanishing(&self) -> bool {
        self.f > dense_threshold_fraction(self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn part(a: &[usize], s: &[usize], b: &[usize], k: usize) -> BalancedPartition {
        BalancedPartition {
            a: a.to_vec(),
            s: s.to_vec(),
            b: b.to_vec(),
            k,
        }
    }

    #[test]
    fn checks_on_path_and_clique() {
        let p7 = Graph::path(7);
        assert!(is_balanced_kpartition(&p7, &part(&[0, 1], &[2, 5], &[3, 4, 6], 1)).unwrap());
        // |S| != k + 1
        assert!(!is_balanced_kpartition(&p7, &part(&[0, 1], &[2, 5], &[3, 4, 6], 2)).unwrap());
        // A–B edge 1–2
        assert!(!is_balanced_kpartition(&p7, &part(&[0, 1], &[3, 5], &[2, 4, 6], 1)).unwrap());
        let k7 = Graph::complete(7);
        assert!(!is_balanced_kpartition(&k7, &part(&[0, 1], &[2, 3, 4], &[5, 6], 2)).unwrap());
    }

    #[test]
    fn malformed_partitions_error() {
        let p3 = Graph::path(3);
        assert!(is_balanced_kpartition(&p3, &part(&[0], &[0], &[1, 2], 0)).is_err());
        assert!(is_balanced_kpartition(&p3, &part(&[0], &[1], &[], 0)).is_err());
        assert!(is_balanced_kpartition(&p3, &part(&[0], &[1], &[3], 0)).is_err());
    }

    #[test]
    fn search_examples() {
        let p7 = Graph::path(7);
        let found = find_balanced_kpartition(&p7, 1).unwrap();
        let p = found.found().expect("P_7 has a balanced 1-partition");
        assert!(is_balanced_kpartition(&p7, p).unwrap());

        let k7 = Graph::complete(7);
        assert_eq!(
            find_balanced_kpartition(&k7, 2).unwrap(),
            PartitionSearch::Absent { k: 2 }
        );
        assert!(find_balanced_kpartition(&Graph::path(16), 1).is_err());
        // k + 1 > n
        assert_eq!(
            find_balanced_kpartition(&Graph::path(3), 3).unwrap(),
            PartitionSearch::Absent { k: 3 }
        );
        // k = n − 1: A = B = ∅.
        let all = find_balanced_kpartition(&Graph::complete(4), 3).unwrap();
        assert_eq!(all.found().unwrap().s, vec![0, 1, 2, 3]);
    }

    #[test]
    fn subset_sum_packing() {
        assert_eq!(pack_components(&[0b1, 0b110, 0b1111000], 3, 3), Some(0b111));
        assert_eq!(pack_components(&[0b11, 0b1100], 1, 1), None);
        assert_eq!(pack_components(&[], 0, 0), Some(0));
    }

    #[test]
    fn dense_tail_values() {
        let v = dense_separator_tail(10, 1.0, 1.0);
        let expect = (10.0 * 3f64.ln() - 200.0 / 9.0).exp();
        assert!((v - expect).abs() < 1e-15);
        assert!((v - 1.3189e-5).abs() < 1e-8);
        // Sign of the exponent flips at the threshold fraction.
        for (n, c) in [(100usize, 2.0), (1000, 5.0), (50, 0.7)] {
            let p = c / n as f64;
            let f0 = dense_threshold_fraction(c);
            assert!(dense_tail_exponent(n as f64, p, f0).abs() < 1e-9);
            assert!(dense_tail_exponent(n as f64, p, f0 * 1.01) < 0.0);
            assert!(dense_tail_exponent(n as f64, p, f0 * 0.99) > 0.0);
            assert!(DenseBoundParams::new(n, p, f0 * 1.01).vanishing());
            assert!(!DenseBoundParams::new(n, p, f0 * 0.99).vanishing());
        }
        // Decreasing in n once (2f²/9)pn > ln 3.
        let (p, f) = (0.5, 0.8);
        let mut prev = f64::INFINITY;
        for n in 20..60 {
            let v = dense_separator_tail(n, p, f);
            assert!(2.0 * f * f / 9.0 * p * n as f64 > 3f64.ln());
            assert!(v < prev);
            prev = v;
        }
    }
}
