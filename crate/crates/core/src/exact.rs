//! Exact tree-depth and tree-width for small graphs, and the path-based
//! lower bound on tree-depth.
//!
//! Both exact solvers work one connected component at a time on bitmask
//! relabelings, so the limits apply to component orders rather than `n`.

use crate::elimination::EliminationForest;
use crate::error::{Error, Result};
use crate::graph::{
    connected_components, diameter, local_masks, longest_path_order_with_limit, mask_component,
    Graph, DEFAULT_PATH_LIMIT,
};

/// Default per-component limit for [`treedepth_exact`].
pub const DEFAULT_TREEDEPTH_LIMIT: usize = 20;
/// Default per-component limit for [`treewidth_exact`].
pub const DEFAULT_TREEWIDTH_LIMIT: usize = 18;
/// Memo tables hold `2^k` bytes; this caps them at 128 MiB.
pub const HARD_LIMIT: usize = 27;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    LowerBound,
    UpperBound,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::LowerBound => "lower-bound",
            Method::UpperBound => "upper-bound",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Forest(EliminationForest),
    /// Elimination ordering, first eliminated first.
    Ordering(Vec<usize>),
    None,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveResult {
    pub value: usize,
    pub witness: Witness,
    pub method: Method,
}

fn check_limit(what: &'static str, g: &Graph, limit: usize) -> Result<Vec<Vec<usize>>> {
    let limit = limit.min(HARD_LIMIT);
    let comps: Vec<Vec<usize>> = connected_components(g).into_iter().map(|c| c.vertices).collect();
    if let Some(c) = comps.iter().find(|c| c.len() > limit) {
        return Err(Error::LimitExceeded {
            what,
            limit,
            actual: c.len(),
        });
    }
    Ok(comps)
}

fn bits(mut set: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (set != 0).then(|| {
            let i = set.trailing_zeros() as usize;
            set &= set - 1;
            i
        })
    })
}

pub fn treedepth_exact(g: &Graph) -> Result<SolveResult> {
    treedepth_exact_with_limit(g, DEFAULT_TREEDEPTH_LIMIT)
}

/// Exact tree-depth via `td(C) = 1 + min_v td(C − v)` over connected vertex
/// subsets `C`, where `td(C − v)` is the maximum over the components of
/// `C − v`. The witness forest takes the lowest-labeled optimal root at every
/// step.
pub fn treedepth_exact_with_limit(g: &Graph, limit: usize) -> Result<SolveResult> {
    let comps = check_limit("exact tree-depth", g, limit)?;
    let mut parent = vec![None; g.order()];
    let mut value = 0;
    for verts in comps {
        let mut solver = TreedepthSolver::new(local_masks(g, &verts));
        let full = if verts.len() == 32 { u32::MAX } else { (1u32 << verts.len()) - 1 };
        value = value.max(solver.td(full) as usize);
        solver.rebuild(full, None, &verts, &mut parent);
    }
    let forest = EliminationForest::new(parent).expect("reconstruction yields a forest");
    debug_assert_eq!(forest.height(), value);
    Ok(SolveResult {
        value,
        witness: Witness::Forest(forest),
        method: Method::Exact,
    })
}

struct TreedepthSolver {
    adj: Vec<u32>,
    /// 0 = not yet computed; only connected subsets are ever filled in.
    memo: Vec<u8>,
}

impl TreedepthSolver {
    fn new(adj: Vec<u32>) -> Self {
        let memo = vec![0u8; 1usize << adj.len()];
        Self { adj, memo }
    }

    /// Tree-depth of the connected subset `set`.
    fn td(&mut self, set: u32) -> u8 {
        let size = set.count_ones() as u8;
        if size <= 2 {
            return size;
        }
        let cached = self.memo[set as usize];
        if cached != 0 {
            return cached;
        }
        // A vertex adjacent to all others is always an optimal root.
        if let Some(v) = bits(set).find(|&v| self.adj[v] & set == set & !(1 << v)) {
            let rest = set & !(1 << v);
            let best = 1 + self.max_over_components(rest, u8::MAX);
            self.memo[set as usize] = best;
            return best;
        }
        let mut best = size;
        for v in bits(set) {
            let rest = set & !(1 << v);
            // Components only need to be explored until one reaches best - 1.
            let worst = self.max_over_components(rest, best - 1);
            if worst + 1 < best {
                best = worst + 1;
            }
        }
        self.memo[set as usize] = best;
        best
    }

    /// Maximum tree-depth over the components of `set`, stopping early once
    /// it reaches `cap`.
    fn max_over_components(&mut self, mut set: u32, cap: u8) -> u8 {
        let mut worst = 0;
        while set != 0 {
            let comp = mask_component(&self.adj, set, set & set.wrapping_neg());
            set &= !comp;
            worst = worst.max(self.td(comp));
            if worst >= cap {
                break;
            }
        }
        worst
    }

    fn rebuild(&mut self, set: u32, up: Option<usize>, labels: &[usize], parent: &mut [Option<usize>]) {
        if set == 0 {
            return;
        }
        let target = self.td(set);
        let root = bits(set)
            .find(|&v| 1 + self.max_over_components(set & !(1 << v), u8::MAX) == target)
            .expect("some vertex attains the optimum");
        parent[labels[root]] = up;
        let mut rest = set & !(1 << root);
        while rest != 0 {
            let comp = mask_component(&self.adj, rest, rest & rest.wrapping_neg());
            rest &= !comp;
            self.rebuild(comp, Some(labels[root]), labels, parent);
        }
    }
}

pub fn treewidth_exact(g: &Graph) -> Result<SolveResult> {
    treewidth_exact_with_limit(g, DEFAULT_TREEWIDTH_LIMIT)
}

/// Exact tree-width by dynamic programming over eliminated sets:
/// `TW(S) = min_{v ∈ S} max(TW(S − v), Q(S − v, v))`, where `Q(S, v)` counts
/// the vertices outside `S ∪ {v}` reachable from `v` through `S` (the
/// back-degree of `v` when `S` has already been eliminated).
pub fn treewidth_exact_with_limit(g: &Graph, limit: usize) -> Result<SolveResult> {
    let comps = check_limit("exact tree-width", g, limit)?;
    let mut ordering = Vec::with_capacity(g.order());
    let mut value = 0;
    for verts in comps {
        let adj = local_masks(g, &verts);
        let (tw, order) = treewidth_component(&adj);
        value = value.max(tw);
        ordering.extend(order.into_iter().map(|i| verts[i]));
    }
    Ok(SolveResult {
        value,
        witness: Witness::Ordering(ordering),
        method: Method::Exact,
    })
}

/// Back-degree of `v` once the vertices of `eliminated` are gone.
fn back_degree(adj: &[u32], eliminated: u32, v: usize, full: u32) -> u32 {
    let reach = mask_component(adj, eliminated | 1 << v, 1 << v);
    let mut nbrs = 0;
    for u in bits(reach) {
        nbrs |= adj[u];
    }
    (nbrs & full & !reach).count_ones()
}

fn treewidth_component(adj: &[u32]) -> (usize, Vec<usize>) {
    let k = adj.len();
    let full: u32 = if k == 32 { u32::MAX } else { (1u32 << k) - 1 };
    let mut tw = vec![0u8; 1usize << k];
    for set in 1..=full {
        let mut best = u8::MAX;
        for v in bits(set) {
            let rest = set & !(1 << v);
            let prev = tw[rest as usize];
            if prev >= best {
                continue;
            }
            let q = back_degree(adj, rest, v, full) as u8;
            best = best.min(prev.max(q));
        }
        tw[set as usize] = best;
    }
    // Walk back from the full set: the chosen vertex is eliminated last.
    let mut order = Vec::with_capacity(k);
    let mut set = full;
    while set != 0 {
        let target = tw[set as usize];
        let v = bits(set)
            .find(|&v| {
                let rest = set & !(1 << v);
                tw[rest as usize].max(back_degree(adj, rest, v, full) as u8) == target
            })
            .expect("some vertex attains the optimum");
        order.push(v);
        set &= !(1 << v);
    }
    order.reverse();
    (tw[full as usize] as usize, order)
}

/// Width of an elimination ordering: the largest number of later neighbors
/// any vertex has in the filled graph when it is eliminated.
pub fn ordering_width(g: &Graph, ordering: &[usize]) -> Result<usize> {
    let n = g.order();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in ordering.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(Error::InvalidParameter(format!("ordering repeats or exceeds vertex {v}")));
        }
        position[v] = i;
    }
    if ordering.len() != n {
        return Err(Error::InvalidParameter("ordering must list every vertex".into()));
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut width = 0;
    for &v in ordering {
        let later: Vec<usize> = adj[v].iter().copied().filter(|&w| position[w] > position[v]).collect();
        width = width.max(later.len());
        for (i, &a) in later.iter().enumerate() {
            for &b in &later[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    Ok(width)
}

/// Lower bound `⌊log2 t⌋ + 1 ≤ td(G)` from a path on `t` vertices, which is a
/// subgraph of `G`. Uses the exact longest path when every component is
/// within [`DEFAULT_PATH_LIMIT`], otherwise a shortest path realising some
/// component's diameter (`t = diameter + 1`).
pub fn td_lower_bound_path(g: &Graph) -> usize {
    td_lower_bound_path_with_limit(g, DEFAULT_PATH_LIMIT)
}

pub fn td_lower_bound_path_with_limit(g: &Graph, limit: usize) -> usize {
    match longest_path_order_with_limit(g, limit) {
        Ok(t) => log_path_bound(t),
        Err(_) => td_lower_bound_diameter(g),
    }
}

/// The diameter branch of [`td_lower_bound_path`]: `t` is one more than the
/// largest component diameter.
pub fn td_lower_bound_diameter(g: &Graph) -> usize {
    let t = connected_components(g)
        .iter()
        .map(|c| diameter(g, &c.vertices).expect("components are connected") + 1)
        .max()
        .unwrap_or(g.order().min(1));
    log_path_bound(t)
}

/// Tree-depth of the path on `t` vertices.
pub fn log_path_bound(t: usize) -> usize {
    if t == 0 {
        0
    } else {
        t.ilog2() as usize + 1
    }
}
