//! Simple undirected graphs on dense labels `0..n`, plus the traversal
//! primitives (components, diameter, longest path, cycle detection) the
//! solvers build on.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Default vertex limit for [`longest_path_order`].
pub const DEFAULT_PATH_LIMIT: usize = 20;

/// A simple undirected graph with vertices labeled `0..n`.
///
/// Adjacency lists are kept sorted, so iteration order (and everything
/// derived from it) is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting loops, duplicate edges and
    /// out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::VertexOutOfRange {
                        vertex: x,
                        order: n,
                    });
                }
            }
            if u == v {
                return Err(Error::Loop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Self { adj, m })
    }

    pub fn path(n: usize) -> Self {
        Self::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path is simple")
    }

    /// Cycle `C_n`; for `n < 3` this degenerates to the path.
    pub fn cycle(n: usize) -> Self {
        if n < 3 {
            return Self::path(n);
        }
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is simple")
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        Self::from_edges(n, edges).expect("complete graph is simple")
    }

    /// Star `K_{1,leaves}` with center `0`.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star is simple")
    }

    /// The Petersen graph: outer 5-cycle `0..5`, inner pentagram `5..10`.
    pub fn petersen() -> Self {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((5 + i, 5 + (i + 2) % 5));
        }
        Self::from_edges(10, edges).expect("petersen is simple")
    }

    /// Disjoint union; vertices of `other` are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.order();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.order(), edges).expect("union of simple graphs is simple")
    }

    /// Number of vertices `n`.
    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of edges `m`.
    pub fn size(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.order() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    /// Subgraph induced by `vertices`, relabeled so that `vertices[i]` becomes `i`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.order()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let edges = vertices.iter().enumerate().flat_map(|(i, &v)| {
            let index = &index;
            self.adj[v]
                .iter()
                .filter_map(move |&w| (index[w] != usize::MAX && i < index[w]).then(|| (i, index[w])))
        });
        let edges: Vec<_> = edges.collect();
        Graph::from_edges(vertices.len(), edges).expect("induced subgraph is simple")
    }

    /// `G − v`, with labels above `v` shifted down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let keep: Vec<usize> = (0..self.order()).filter(|&u| u != v).collect();
        self.induced_subgraph(&keep)
    }

    /// `G − {u, v}` (edge deletion); a missing edge leaves the graph unchanged.
    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let key = (u.min(v), u.max(v));
        let edges: Vec<_> = self.edges().filter(|&e| e != key).collect();
        Graph::from_edges(self.order(), edges).expect("subgraph is simple")
    }

    pub fn is_connected(&self) -> bool {
        self.order() <= 1 || connected_components(self).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.order() >= 1 && self.m + 1 == self.order() && self.is_connected()
    }

    /// `Some(d)` if every vertex has degree `d`.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.adj.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Serializes to the edge-list text format: `n m`, then one `u v` per line.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.order(), self.size());
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list format. Each edge line must satisfy `u < v < n`.
    pub fn parse_edge_list(text: &str) -> Result<Graph> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing header".into(),
        })?;
        let (n, m) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(m);
        for (line, l) in lines {
            let (u, v) = parse_pair(line, l)?;
            if u >= v || v >= n {
                return Err(Error::Parse {
                    line,
                    msg: format!("edge {u} {v} violates 0 <= u < v < {n}"),
                });
            }
            edges.push((u, v));
        }
        if edges.len() != m {
            return Err(Error::Parse {
                line: hline,
                msg: format!("header declares {m} edges, found {}", edges.len()),
            });
        }
        Graph::from_edges(n, edges)
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let bad = |msg: String| Error::Parse { line, msg };
    let mut it = text.split_whitespace();
    let mut next = || -> Result<usize> {
        let tok = it.next().ok_or_else(|| bad("expected two integers".into()))?;
        tok.parse().map_err(|_| bad(format!("not an integer: {tok:?}")))
    };
    let pair = (next()?, next()?);
    if it.next().is_some() {
        return Err(bad("trailing tokens".into()));
    }
    Ok(pair)
}

impl FromStr for Graph {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Graph::parse_edge_list(s)
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_edge_list())
    }
}

/// Structural kind of a connected component, determined by its excess.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ComponentKind {
    Tree,
    Unicyclic,
    Complex,
}

impl ComponentKind {
    pub fn from_excess(excess: i64) -> Self {
        match excess {
            e if e < 0 => ComponentKind::Tree,
            0 => ComponentKind::Unicyclic,
            _ => ComponentKind::Complex,
        }
    }
}

/// A maximal connected vertex set together with its `(k, ℓ)` statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentSummary {
    /// Sorted vertex labels.
    pub vertices: Vec<usize>,
    /// Edge count minus vertex count.
    pub excess: i64,
    pub kind: ComponentKind,
}

impl ComponentSummary {
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        (self.order() as i64 + self.excess) as usize
    }
}

/// Connected components, listed by their lowest vertex label.
pub fn connected_components(g: &Graph) -> Vec<ComponentSummary> {
    let n = g.order();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        queue.push_back(s);
        let mut vertices = Vec::new();
        let mut degree_sum = 0usize;
        while let Some(v) = queue.pop_front() {
            vertices.push(v);
            degree_sum += g.degree(v);
            for &w in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        vertices.sort_unstable();
        let excess = (degree_sum / 2) as i64 - vertices.len() as i64;
        out.push(ComponentSummary {
            vertices,
            excess,
            kind: ComponentKind::from_excess(excess),
        });
    }
    out
}

/// Diameter (in edges) of the subgraph induced by `component`, by
/// breadth-first search from every vertex. Errors if the set is empty or
/// does not induce a connected subgraph.
pub fn diameter(g: &Graph, component: &[usize]) -> Result<usize> {
    if component.is_empty() {
        return Err(Error::NotConnected);
    }
    let mut index = vec![u32::MAX; g.order()];
    for (i, &v) in component.iter().enumerate() {
        if v >= g.order() {
            return Err(Error::VertexOutOfRange {
                vertex: v,
                order: g.order(),
            });
        }
        index[v] = i as u32;
    }
    let k = component.len();
    let mut dist = vec![u32::MAX; k];
    let mut queue = Vec::with_capacity(k);
    let mut best = 0u32;
    for s in 0..k {
        dist.fill(u32::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push(s as u32);
        let mut head = 0;
        while head < queue.len() {
            let i = queue[head] as usize;
            head += 1;
            for &w in g.neighbors(component[i]) {
                let j = index[w];
                if j != u32::MAX && dist[j as usize] == u32::MAX {
                    dist[j as usize] = dist[i] + 1;
                    queue.push(j);
                }
            }
        }
        if queue.len() != k {
            return Err(Error::NotConnected);
        }
        best = best.max(dist[queue[k - 1] as usize]);
    }
    Ok(best as usize)
}

/// Number of vertices on a longest simple path, using the default limit.
pub fn longest_path_order(g: &Graph) -> Result<usize> {
    longest_path_order_with_limit(g, DEFAULT_PATH_LIMIT)
}

/// Exact longest path (in vertices) by dynamic programming over
/// `(subset, endpoint)` states, one component at a time. Every component must
/// have at most `limit` vertices; callers over the limit should fall back to
/// a diameter-based path.
pub fn longest_path_order_with_limit(g: &Graph, limit: usize) -> Result<usize> {
    let limit = limit.min(28);
    let comps = connected_components(g);
    if let Some(c) = comps.iter().find(|c| c.order() > limit) {
        return Err(Error::LimitExceeded {
            what: "longest path search",
            limit,
            actual: c.order(),
        });
    }
    let mut best = 0;
    for c in &comps {
        best = best.max(longest_path_in(&local_masks(g, &c.vertices)));
    }
    Ok(best)
}

fn longest_path_in(adj: &[u32]) -> usize {
    let k = adj.len();
    if k <= 1 {
        return k;
    }
    // ends[mask] = bitset of vertices v such that some path spans exactly `mask` and ends at v.
    let mut ends = vec![0u32; 1 << k];
    for v in 0..k {
        ends[1 << v] = 1 << v;
    }
    let mut best = 1;
    for mask in 1u32..(1 << k) {
        let e = ends[mask as usize];
        if e == 0 {
            continue;
        }
        best = best.max(mask.count_ones() as usize);
        let mut out = !mask & ((1u32 << k) - 1);
        while out != 0 {
            let w = out.trailing_zeros();
            out &= out - 1;
            if adj[w as usize] & e != 0 {
                ends[(mask | 1 << w) as usize] |= 1 << w;
            }
        }
    }
    best
}

/// A vertex that lies on some cycle, or `None` if `g` is a forest.
pub fn find_cycle_vertex(g: &Graph) -> Option<usize> {
    let alive = vec![true; g.order()];
    find_cycle_vertex_among(g, &alive)
}

/// Depth-first search over the vertices marked `alive`, roots taken in label
/// order. The first non-tree edge met closes a cycle through the current
/// vertex, which is returned.
pub(crate) fn find_cycle_vertex_among(g: &Graph, alive: &[bool]) -> Option<usize> {
    let n = g.order();
    let mut visited = vec![false; n];
    // (vertex, parent, next neighbor index)
    let mut stack: Vec<(usize, usize, usize)> = Vec::new();
    for root in 0..n {
        if !alive[root] || visited[root] {
            continue;
        }
        visited[root] = true;
        stack.push((root, usize::MAX, 0));
        while let Some(top) = stack.last_mut() {
            let (v, parent, i) = *top;
            if i == g.degree(v) {
                stack.pop();
                continue;
            }
            top.2 += 1;
            let w = g.neighbors(v)[i];
            if !alive[w] || w == parent {
                continue;
            }
            if visited[w] {
                return Some(v);
            }
            visited[w] = true;
            stack.push((w, v, 0));
        }
    }
    None
}

/// Bitmask adjacency of the subgraph induced by `vertices` (at most 32),
/// indexed by position in `vertices`.
pub(crate) fn local_masks(g: &Graph, vertices: &[usize]) -> Vec<u32> {
    assert!(vertices.len() <= 32);
    let mut index = std::collections::HashMap::with_capacity(vertices.len());
    for (i, &v) in vertices.iter().enumerate() {
        index.insert(v, i);
    }
    vertices
        .iter()
        .map(|&v| {
            g.neighbors(v)
                .iter()
                .filter_map(|w| index.get(w))
                .fold(0u32, |acc, &j| acc | 1 << j)
        })
        .collect()
}

/// Connected component of `start` (a single bit) inside `set`.
pub(crate) fn mask_component(adj: &[u32], set: u32, start: u32) -> u32 {
    let mut comp = start;
    let mut frontier = start;
    while frontier != 0 {
        let mut next = 0;
        let mut f = frontier;
        while f != 0 {
            next |= adj[f.trailing_zeros() as usize];
            f &= f - 1;
        }
        next &= set & !comp;
        comp |= next;
        frontier = next;
    }
    comp
}
