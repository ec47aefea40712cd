//! Component census of sparse random graphs: the `(order, excess)`
//! histogram, tree counts against their expectation, and height/diameter
//! statistics of random trees.

use std::collections::{BTreeMap, VecDeque};
use std::io::{self, Write};

use crate::error::{Error, Result};
use crate::graph::{connected_components, ComponentKind, Graph};

/// Histogram of components by `(order k, excess ℓ)` where `ℓ = edges − vertices`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ComponentCensus {
    pub histogram: BTreeMap<(usize, i64), usize>,
    /// Order of the largest component (`n_c`).
    pub largest_order: usize,
    /// Maximum excess over all components (`ℓ_m`); `-1` for the empty graph.
    pub max_excess: i64,
    /// Number of tree components of each order (`X_k`).
    pub tree_counts: BTreeMap<usize, usize>,
}

impl ComponentCensus {
    pub fn component_count(&self) -> usize {
        self.histogram.values().sum()
    }

    /// True when every component is a tree or unicyclic.
    pub fn trees_and_unicycles_only(&self) -> bool {
        self.max_excess <= 0
    }

    pub fn tree_count(&self, k: usize) -> usize {
        self.tree_counts.get(&k).copied().unwrap_or(0)
    }

    /// Writes `seed,n,c,k,ell,count` rows, one per histogram cell.
    pub fn write_csv<W: Write>(&self, w: &mut W, seed: u64, n: usize, c: f64) -> io::Result<()> {
        for (&(k, ell), &count) in &self.histogram {
            writeln!(w, "{seed},{n},{c},{k},{ell},{count}")?;
        }
        Ok(())
    }
}

pub const CENSUS_CSV_HEADER: &str = "seed,n,c,k,ell,count";
pub const TREE_STATS_CSV_HEADER: &str = "seed,k,H,D";

pub fn classify(g: &Graph) -> ComponentCensus {
    let mut census = ComponentCensus {
        max_excess: -1,
        ..Default::default()
    };
    for comp in connected_components(g) {
        let k = comp.order();
        *census.histogram.entry((k, comp.excess)).or_insert(0) += 1;
        census.largest_order = census.largest_order.max(k);
        census.max_excess = census.max_excess.max(comp.excess);
        if comp.kind == ComponentKind::Tree {
            *census.tree_counts.entry(k).or_insert(0) += 1;
        }
    }
    census
}

/// Compensated (Kahan) sum.
fn kahan_sum(terms: impl IntoIterator<Item = f64>) -> f64 {
    let (mut sum, mut carry) = (0.0f64, 0.0f64);
    for t in terms {
        let y = t - carry;
        let s = sum + y;
        carry = (s - sum) - y;
        sum = s;
    }
    sum
}

/// `ln k!`.
pub fn ln_factorial(k: usize) -> f64 {
    kahan_sum((2..=k).map(|i| (i as f64).ln()))
}

/// Expected number of tree components of order `k` in `G(n, c/n)`:
/// `M_k = n · k^(k−2)/k! · c^(k−1) · e^(−kc)`, evaluated in log space.
pub fn expected_tree_count(n: usize, c: f64, k: usize) -> f64 {
    if k == 0 || n == 0 {
        return 0.0;
    }
    if c == 0.0 {
        return if k == 1 { n as f64 } else { 0.0 };
    }
    let kf = k as f64;
    let ln_m = kahan_sum([
        (n as f64).ln(),
        (kf - 2.0) * kf.ln(),
        -ln_factorial(k),
        (kf - 1.0) * c.ln(),
        -kf * c,
    ]);
    ln_m.exp()
}

/// Height (in vertices, from a fixed root) and diameter (in edges) of one tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TreeStats {
    pub k: usize,
    pub height: usize,
    pub diameter: usize,
}

impl TreeStats {
    pub fn write_csv<W: Write>(&self, w: &mut W, seed: u64) -> io::Result<()> {
        writeln!(w, "{seed},{},{},{}", self.k, self.height, self.diameter)
    }
}

/// BFS over the component of `start`. Returns the farthest vertex (lowest
/// label on ties) and its distance. `dist` must be all `usize::MAX` on entry
/// and is restored before returning.
pub(crate) fn farthest(
    g: &Graph,
    start: usize,
    dist: &mut [usize],
    queue: &mut VecDeque<usize>,
) -> (usize, usize) {
    let mut seen = Vec::new();
    dist[start] = 0;
    queue.push_back(start);
    let mut best = (start, 0);
    while let Some(v) = queue.pop_front() {
        seen.push(v);
        let d = dist[v];
        if d > best.1 || (d == best.1 && v < best.0) {
            best = (v, d);
        }
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = d + 1;
                queue.push_back(w);
            }
        }
    }
    for v in seen {
        dist[v] = usize::MAX;
    }
    best
}

pub fn tree_height_and_diameter(t: &Graph, root: usize) -> Result<TreeStats> {
    if root >= t.order() {
        return Err(Error::VertexOutOfRange {
            vertex: root,
            order: t.order(),
        });
    }
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut dist = vec![usize::MAX; t.order()];
    let mut queue = VecDeque::new();
    let (far, depth) = farthest(t, root, &mut dist, &mut queue);
    let (_, diameter) = farthest(t, far, &mut dist, &mut queue);
    Ok(TreeStats {
        k: t.order(),
        height: depth + 1,
        diameter,
    })
}

/// Average diameter over the tree components of order exactly `k`.
pub fn mean_tree_diameter(g: &Graph, k: usize) -> Option<f64> {
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    let diameters: Vec<usize> = connected_components(g)
        .into_iter()
        .filter(|c| c.kind == ComponentKind::Tree && c.order() == k)
        .map(|c| {
            let (far, _) = farthest(g, c.vertices[0], &mut dist, &mut queue);
            farthest(g, far, &mut dist, &mut queue).1
        })
        .collect();
    if diameters.is_empty() {
        None
    } else {
        Some(diameters.iter().sum::<usize>() as f64 / diameters.len() as f64)
    }
}
