//! Elimination forests and the constructive upper bounds on tree-depth.
//!
//! Height is counted in vertices: a lone root has height 1 and the optimal
//! forest of the 15-vertex path has height 4.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{connected_components, find_cycle_vertex_among, ComponentKind, Graph};

/// A rooted forest on `0..n`, stored as a parent array.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationForest {
    parent: Vec<Option<usize>>,
}

impl EliminationForest {
    /// Validates that `parent` describes an acyclic rooted forest.
    pub fn new(parent: Vec<Option<usize>>) -> Result<Self> {
        let n = parent.len();
        if let Some((v, _)) = parent
            .iter()
            .enumerate()
            .find(|(v, p)| p.is_some_and(|p| p >= n || p == *v))
        {
            return Err(Error::InvalidForest(format!("vertex {v} has an invalid parent")));
        }
        let forest = Self { parent };
        if forest.compute_depths().is_none() {
            return Err(Error::InvalidForest("parent relation has a cycle".into()));
        }
        Ok(forest)
    }

    /// Forest of `n` isolated roots.
    pub fn roots_only(n: usize) -> Self {
        Self {
            parent: vec![None; n],
        }
    }

    /// Path forest `order[0] → order[1] → …` with `order[0]` as the root.
    pub fn chain(order: &[usize]) -> Result<Self> {
        let mut parent = vec![None; order.len()];
        for w in order.windows(2) {
            parent[w[1]] = Some(w[0]);
        }
        Self::new(parent)
    }

    pub fn order(&self) -> usize {
        self.parent.len()
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn parents(&self) -> &[Option<usize>] {
        &self.parent
    }

    pub fn roots(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(|&v| self.parent[v].is_none())
    }

    /// Strict ancestors of `v`, nearest first.
    pub fn ancestors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        std::iter::successors(self.parent[v], |&u| self.parent[u])
    }

    /// Depth of every vertex in vertices (roots have depth 1), or `None` on a cycle.
    fn compute_depths(&self) -> Option<Vec<usize>> {
        let n = self.order();
        let mut depth = vec![0usize; n];
        let mut trail = Vec::new();
        for s in 0..n {
            let mut v = s;
            while depth[v] == 0 {
                if trail.len() > n {
                    return None;
                }
                trail.push(v);
                match self.parent[v] {
                    Some(p) => v = p,
                    None => break,
                }
            }
            let mut d = if depth[v] == 0 { 0 } else { depth[v] };
            while let Some(u) = trail.pop() {
                d += 1;
                depth[u] = d;
            }
        }
        Some(depth)
    }

    /// Depth of every vertex, counted in vertices.
    pub fn depths(&self) -> Vec<usize> {
        self.compute_depths().expect("validated at construction")
    }

    /// Maximum number of vertices on a root-to-leaf path; 0 for the empty forest.
    pub fn height(&self) -> usize {
        self.depths().into_iter().max().unwrap_or(0)
    }

    /// Graph joining every ancestor–descendant pair.
    pub fn closure(&self) -> Graph {
        let edges: Vec<_> = (0..self.order())
            .flat_map(|v| self.ancestors(v).map(move |a| (a.min(v), a.max(v))))
            .collect();
        Graph::from_edges(self.order(), edges).expect("closure of a forest is simple")
    }

    /// Whether every edge of `g` joins an ancestor–descendant pair.
    pub fn is_elimination_forest(&self, g: &Graph) -> Result<bool> {
        if g.order() != self.order() {
            return Err(Error::VertexSetMismatch {
                forest: self.order(),
                graph: g.order(),
            });
        }
        let depth = self.depths();
        Ok(g.edges().all(|(u, v)| {
            let (hi, lo) = if depth[u] < depth[v] { (u, v) } else { (v, u) };
            depth[u] != depth[v] && self.ancestors(lo).any(|a| a == hi)
        }))
    }

    /// One line per vertex, `v parent`, with `-1` marking roots.
    pub fn to_text(&self) -> String {
        self.parent
            .iter()
            .enumerate()
            .map(|(v, p)| match p {
                Some(p) => format!("{v} {p}\n"),
                None => format!("{v} -1\n"),
            })
            .collect()
    }

    pub fn parse_text(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: i + 1,
                msg: msg.to_string(),
            };
            let mut it = line.split_whitespace();
            let v: usize = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("expected a vertex"))?;
            let p: i64 = it
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| bad("expected a parent or -1"))?;
            if it.next().is_some() || p < -1 {
                return Err(bad("expected `v parent`"));
            }
            entries.push((v, (p >= 0).then_some(p as usize)));
        }
        let n = entries.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        for (v, p) in entries {
            if v >= n || seen[v] {
                return Err(Error::InvalidForest(format!("vertex {v} listed twice or out of range")));
            }
            seen[v] = true;
            parent[v] = p;
        }
        Self::new(parent)
    }
}

impl fmt::Display for EliminationForest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Reusable buffers for [`centroid_decompose`], sized to the whole graph.
struct CentroidScratch {
    size: Vec<usize>,
    tree_parent: Vec<usize>,
    order: Vec<usize>,
}

impl CentroidScratch {
    fn new(n: usize) -> Self {
        Self {
            size: vec![0; n],
            tree_parent: vec![usize::MAX; n],
            order: Vec::new(),
        }
    }
}

/// Recursive centroid decomposition of the tree of `alive` vertices that
/// contains `start`; the top-level centroid hangs below `attach`. Clears the
/// `alive` flag of every vertex it places and returns the height of the
/// decomposition.
fn centroid_decompose(
    g: &Graph,
    start: usize,
    alive: &mut [bool],
    parent: &mut [Option<usize>],
    attach: Option<usize>,
    scratch: &mut CentroidScratch,
) -> usize {
    let CentroidScratch {
        size,
        tree_parent,
        order,
    } = scratch;
    let mut height = 0;
    // (a vertex of the subtree, where to attach, depth of the attachment point)
    let mut work = vec![(start, attach, 0usize)];
    while let Some((s, up, depth)) = work.pop() {
        order.clear();
        order.push(s);
        tree_parent[s] = usize::MAX;
        let mut head = 0;
        while head < order.len() {
            let v = order[head];
            head += 1;
            for &w in g.neighbors(v) {
                if alive[w] && w != tree_parent[v] {
                    tree_parent[w] = v;
                    order.push(w);
                }
            }
        }
        let total = order.len();
        let mut centroid = usize::MAX;
        for &v in order.iter().rev() {
            let mut sum = 1;
            let mut largest = 0;
            for &w in g.neighbors(v) {
                if alive[w] && w != tree_parent[v] {
                    sum += size[w];
                    largest = largest.max(size[w]);
                }
            }
            size[v] = sum;
            if largest.max(total - sum) <= total / 2 {
                centroid = centroid.min(v);
            }
        }
        alive[centroid] = false;
        parent[centroid] = up;
        height = height.max(depth + 1);
        for &w in g.neighbors(centroid) {
            if alive[w] {
                work.push((w, Some(centroid), depth + 1));
            }
        }
    }
    height
}

/// Centroid decomposition of a tree: height at most `⌊log2 n⌋ + 1`.
pub fn build_tree_centroid(t: &Graph) -> Result<EliminationForest> {
    if !t.is_tree() {
        return Err(Error::NotATree);
    }
    let mut alive = vec![true; t.order()];
    let mut parent = vec![None; t.order()];
    centroid_decompose(t, 0, &mut alive, &mut parent, None, &mut CentroidScratch::new(t.order()));
    EliminationForest::new(parent)
}

/// Forest for a connected unicyclic graph: one cycle vertex as the root and
/// the centroid decomposition of the remaining tree beneath it. Height at
/// most `⌊log2 k⌋ + 2`.
pub fn build_unicyclic(u: &Graph) -> Result<EliminationForest> {
    if !u.is_connected() || u.order() != u.size() {
        return Err(Error::NotUnicyclic);
    }
    let mut alive = vec![true; u.order()];
    let root = find_cycle_vertex_among(u, &alive).ok_or(Error::NotUnicyclic)?;
    let mut parent = vec![None; u.order()];
    alive[root] = false;
    let mut scratch = CentroidScratch::new(u.order());
    for v in 0..u.order() {
        if alive[v] {
            centroid_decompose(u, v, &mut alive, &mut parent, Some(root), &mut scratch);
        }
    }
    EliminationForest::new(parent)
}

/// Per-component accounting for [`build_general_upper`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentRemoval {
    pub order: usize,
    pub excess: i64,
    /// Cycle vertices stacked above the residual forest.
    pub removed: usize,
    /// Height of this component's part of the forest.
    pub height: usize,
}

#[derive(Debug, Clone)]
pub struct UpperBound {
    pub forest: EliminationForest,
    pub components: Vec<ComponentRemoval>,
}

impl UpperBound {
    pub fn height(&self) -> usize {
        self.components.iter().map(|c| c.height).max().unwrap_or(0)
    }
}

/// Upper bound for arbitrary graphs. In each component, cycle vertices are
/// removed one at a time until only a forest remains, the removed vertices
/// form a root chain and the residual trees are centroid-decomposed beneath
/// it. A component of excess `ℓ ≥ 0` loses at most `ℓ + 1` vertices.
pub fn build_general_upper(g: &Graph) -> UpperBound {
    let n = g.order();
    let mut alive = vec![false; n];
    let mut parent = vec![None; n];
    let mut components = Vec::new();
    let mut scratch = CentroidScratch::new(n);
    for comp in connected_components(g) {
        for &v in &comp.vertices {
            alive[v] = true;
        }
        let mut chain_top: Option<usize> = None;
        let mut removed = 0;
        if comp.kind != ComponentKind::Tree {
            while let Some(v) = find_cycle_vertex_in_core(g, &comp.vertices, &alive) {
                alive[v] = false;
                parent[v] = chain_top;
                chain_top = Some(v);
                removed += 1;
            }
        }
        let mut tree_height = 0;
        for &v in &comp.vertices {
            if alive[v] {
                tree_height =
                    tree_height.max(centroid_decompose(
                    g,
                    v,
                    &mut alive,
                    &mut parent,
                    chain_top,
                    &mut scratch,
                ));
            }
        }
        components.push(ComponentRemoval {
            order: comp.order(),
            excess: comp.excess,
            removed,
            height: removed + tree_height,
        });
    }
    let forest = EliminationForest::new(parent).expect("construction yields a forest");
    UpperBound { forest, components }
}

/// Cycle vertex among the live vertices of one component, searching only its
/// 2-core (vertices peeled as leaves never lie on a cycle).
fn find_cycle_vertex_in_core(g: &Graph, vertices: &[usize], alive: &[bool]) -> Option<usize> {
    let mut core: Vec<bool> = alive.to_vec();
    let mut deg: Vec<usize> = vec![0; g.order()];
    let mut queue = VecDeque::new();
    for &v in vertices {
        if core[v] {
            deg[v] = g.neighbors(v).iter().filter(|&&w| core[w]).count();
            if deg[v] <= 1 {
                queue.push_back(v);
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        if !core[v] {
            continue;
        }
        core[v] = false;
        for &w in g.neighbors(v) {
            if core[w] {
                deg[w] -= 1;
                if deg[w] == 1 {
                    queue.push_back(w);
                }
            }
        }
    }
    if vertices.iter().all(|&v| !core[v]) {
        return None;
    }
    find_cycle_vertex_among(g, &core)
}

/// Minimum-degree elimination ordering turned into an elimination tree.
///
/// Vertices are eliminated by smallest current degree (ties to the lowest
/// label), making the neighborhood of each eliminated vertex a clique. Each
/// vertex's parent is the earliest-eliminated of its neighbors at elimination
/// time, which is exactly the elimination tree of the filled graph.
pub fn greedy_heuristic(g: &Graph) -> EliminationForest {
    let (order, later) = min_degree_elimination(g);
    let n = g.order();
    let mut position = vec![0usize; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let parent = (0..n)
        .map(|v| later[v].iter().copied().min_by_key(|&w| position[w]))
        .collect();
    EliminationForest::new(parent).expect("elimination tree is a forest")
}

/// Minimum-degree ordering together with each vertex's neighborhood in the
/// filled graph at the moment it is eliminated.
pub fn min_degree_elimination(g: &Graph) -> (Vec<usize>, Vec<Vec<usize>>) {
    let n = g.order();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (adj[v].len(), v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut later = vec![Vec::new(); n];
    while let Some((_, v)) = queue.pop_first() {
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        for &a in &nbrs {
            queue.remove(&(adj[a].len(), a));
            adj[a].remove(&v);
        }
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
        for &a in &nbrs {
            queue.insert((adj[a].len(), a));
        }
        adj[v].clear();
        later[v] = nbrs;
        order.push(v);
    }
    (order, later)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn log2_floor(n: usize) -> usize {
        n.ilog2() as usize
    }

    #[test]
    fn closure_examples() {
        let chain = EliminationForest::chain(&[0, 1, 2]).unwrap();
        assert_eq!(chain.closure(), Graph::complete(3));
        let star = EliminationForest::new(vec![None, Some(0), Some(0), Some(0)]).unwrap();
        assert_eq!(star.closure(), Graph::star(3));
        assert_eq!(EliminationForest::roots_only(4).closure(), Graph::empty(4));
    }

    #[test]
    fn heights() {
        assert_eq!(EliminationForest::roots_only(1).height(), 1);
        assert_eq!(EliminationForest::roots_only(0).height(), 0);
        assert_eq!(EliminationForest::chain(&[3, 1, 0, 2]).unwrap().height(), 4);
        // The balanced binary layout of P_15 from the standard figure.
        let mut parent = vec![None; 15];
        for v in 0..15usize {
            let level = (v + 1).trailing_zeros();
            if level < 3 {
                let step = 1 << level;
                let up = if ((v + 1) / step) % 4 == 1 { v + step } else { v - step };
                parent[v] = Some(up);
            }
        }
        let f = EliminationForest::new(parent).unwrap();
        assert_eq!(f.height(), 4);
        assert!(f.is_elimination_forest(&Graph::path(15)).unwrap());
    }

    #[test]
    fn rejects_cycles_and_bad_parents() {
        assert!(EliminationForest::new(vec![Some(1), Some(0)]).is_err());
        assert!(EliminationForest::new(vec![Some(0)]).is_err());
        assert!(EliminationForest::new(vec![Some(5)]).is_err());
    }

    #[test]
    fn validity_checks() {
        let p3 = Graph::path(3);
        assert!(!EliminationForest::roots_only(3).is_elimination_forest(&p3).unwrap());
        assert!(EliminationForest::roots_only(3)
            .is_elimination_forest(&Graph::empty(3))
            .unwrap());
        assert!(EliminationForest::chain(&[1, 0, 2])
            .unwrap()
            .is_elimination_forest(&p3)
            .unwrap());
        assert!(matches!(
            EliminationForest::roots_only(2).is_elimination_forest(&p3),
            Err(Error::VertexSetMismatch { forest: 2, graph: 3 })
        ));
    }

    #[test]
    fn text_round_trip() {
        let f = EliminationForest::new(vec![None, Some(0), Some(1), None]).unwrap();
        assert_eq!(f.to_text(), "0 -1\n1 0\n2 1\n3 -1\n");
        assert_eq!(EliminationForest::parse_text(&f.to_text()).unwrap(), f);
        assert!(EliminationForest::parse_text("0 1\n1 0\n").is_err());
        assert!(EliminationForest::parse_text("0 -1\n0 -1\n").is_err());
        assert!(EliminationForest::parse_text("0 -2\n").is_err());
    }

    #[test]
    fn centroid_on_paths_and_trees() {
        let f = build_tree_centroid(&Graph::path(15)).unwrap();
        assert_eq!(f.height(), 4);
        assert!(build_tree_centroid(&Graph::path(7)).unwrap().height() <= 3);
        assert_eq!(build_tree_centroid(&Graph::empty(1)).unwrap().height(), 1);
        assert!(matches!(build_tree_centroid(&Graph::cycle(4)), Err(Error::NotATree)));
        assert!(matches!(build_tree_centroid(&Graph::empty(2)), Err(Error::NotATree)));
        for n in 1..200 {
            let p = Graph::path(n);
            let f = build_tree_centroid(&p).unwrap();
            assert!(f.is_elimination_forest(&p).unwrap());
            assert!(f.height() <= log2_floor(n) + 1, "P_{n}");
        }
    }

    #[test]
    fn centroid_ties_go_to_lowest_label() {
        // P_4 has centroids 1 and 2.
        let f = build_tree_centroid(&Graph::path(4)).unwrap();
        assert_eq!(f.roots().collect::<Vec<_>>(), vec![1]);
    }

    #[test]
    fn unicyclic_builds() {
        let c4 = build_unicyclic(&Graph::cycle(4)).unwrap();
        assert!(c4.is_elimination_forest(&Graph::cycle(4)).unwrap());
        assert!(c4.height() <= 3);
        assert_eq!(build_unicyclic(&Graph::complete(3)).unwrap().height(), 3);
        let tp = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let f = build_unicyclic(&tp).unwrap();
        assert!(f.is_elimination_forest(&tp).unwrap());
        assert!(f.height() <= 3);
        assert!(matches!(build_unicyclic(&Graph::path(4)), Err(Error::NotUnicyclic)));
        assert!(matches!(build_unicyclic(&Graph::complete(4)), Err(Error::NotUnicyclic)));
        for n in 3..100 {
            let c = Graph::cycle(n);
            let f = build_unicyclic(&c).unwrap();
            assert!(f.is_elimination_forest(&c).unwrap());
            assert!(f.height() <= log2_floor(n) + 2);
        }
    }

    #[test]
    fn general_upper_examples() {
        let k4 = Graph::complete(4);
        let ub = build_general_upper(&k4);
        assert!(ub.forest.is_elimination_forest(&k4).unwrap());
        assert!(ub.height() <= 5);
        assert_eq!(ub.height(), ub.forest.height());
        assert!(ub.components[0].removed <= 3);

        let g = Graph::cycle(5).disjoint_union(&Graph::path(3));
        let ub = build_general_upper(&g);
        assert!(ub.forest.is_elimination_forest(&g).unwrap());
        assert!(ub.height() <= 4);
        assert_eq!(ub.components[0].removed, 1);
        assert_eq!(ub.components[1].removed, 0);

        let t = Graph::path(9);
        assert_eq!(build_general_upper(&t).forest, build_tree_centroid(&t).unwrap());
    }

    #[test]
    fn greedy_examples() {
        for n in 1..8 {
            assert_eq!(greedy_heuristic(&Graph::complete(n)).height(), n);
        }
        assert_eq!(greedy_heuristic(&Graph::empty(5)).height(), 1);
        assert_eq!(greedy_heuristic(&Graph::empty(0)).height(), 0);
        let p = Graph::petersen();
        assert!(greedy_heuristic(&p).is_elimination_forest(&p).unwrap());
    }
}
