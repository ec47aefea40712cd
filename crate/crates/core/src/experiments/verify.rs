//! Invariant battery over seeded random graphs and exhaustive small cases.

use std::fmt;

use crate::elimination::{build_general_upper, build_tree_centroid, greedy_heuristic};
use crate::exact::{log_path_bound, ordering_width, treedepth_exact, treewidth_exact, Witness};
use crate::graph::{connected_components, Graph};
use crate::random::{derive_seed, sample_gnp, RandomSeed};
use crate::separators::{find_balanced_kpartition, is_balanced_kpartition, PartitionSearch};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Number of random graphs.
    pub graphs: usize,
    /// Random graphs have between 1 and `max_n` vertices.
    pub max_n: usize,
    /// Every labeled graph up to this order is checked.
    pub exhaustive_n: usize,
    /// Paths `P_1 … P_path_n` are checked against `⌊log2 n⌋ + 1`.
    pub path_n: usize,
}

impl VerifyConfig {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            graphs: 200,
            max_n: 12,
            exhaustive_n: 5,
            path_n: 16,
        }
    }
}

/// A failing instance, serialized as an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub message: String,
    pub graph: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<Counterexample>,
}

impl CheckOutcome {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            cases: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, g: &Graph, message: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Counterexample {
                message: message(),
                graph: g.to_edge_list(),
            });
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub seed: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed {}", self.seed)?;
        for c in &self.checks {
            let status = if c.passed() { "PASS" } else { "FAIL" };
            writeln!(f, "{status} {} ({} cases, {} failures)", c.name, c.cases, c.failures.len())?;
            for x in &c.failures {
                writeln!(f, "  {}", x.message)?;
                for line in x.graph.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

fn td(g: &Graph) -> usize {
    treedepth_exact(g).expect("within solver limits").value
}

fn tw(g: &Graph) -> usize {
    treewidth_exact(g).expect("within solver limits").value
}

/// Every labeled graph on `n` vertices, in order of the edge bitmask.
fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect();
    (0u64..1 << pairs.len()).map(move |mask| {
        Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|&(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e),
        )
        .expect("distinct pairs")
    })
}

/// Runs every check and collects failures; never panics on a violation.
pub fn verify_suite(cfg: &VerifyConfig) -> VerifyReport {
    let mut sandwich = CheckOutcome::new("sandwich");
    let mut deletion = CheckOutcome::new("deletion");
    let mut monotone = CheckOutcome::new("monotonicity");
    let mut components = CheckOutcome::new("components");
    let mut kloks = CheckOutcome::new("kloks-contrapositive");
    let mut forests = CheckOutcome::new("forest-validity");
    let mut witness = CheckOutcome::new("witness-recompute");

    let base = derive_seed(cfg.seed, &[0x7665_7269_6679]);
    for i in 0..cfg.graphs {
        let seed = RandomSeed::new(base, i as u64);
        let n = 1 + (derive_seed(seed.state(), &[1]) % cfg.max_n.max(1) as u64) as usize;
        let p = 0.1 * (1 + i % 9) as f64;
        let g = sample_gnp(n, p, seed).expect("valid probability");
        let td_res = treedepth_exact(&g).expect("within solver limits");
        let tw_res = treewidth_exact(&g).expect("within solver limits");
        let (t, w) = (td_res.value, tw_res.value);

        let upper = w.max(1) as f64 * ((n as f64).log2() + 1.0);
        sandwich.check(w <= t && t as f64 <= upper + 1e-9, &g, || {
            format!("tw = {w}, td = {t}, n = {n}")
        });

        for v in 0..n {
            let tv = td(&g.without_vertex(v));
            deletion.check(tv + 1 >= t && tv <= t, &g, || {
                format!("td = {t} but td(G − {v}) = {tv}")
            });
        }
        for (u, v) in g.edges().collect::<Vec<_>>() {
            let h = g.without_edge(u, v);
            let (te, we) = (td(&h), tw(&h));
            monotone.check(te <= t && we <= w, &g, || {
                format!("removing {u}–{v}: td {t} → {te}, tw {w} → {we}")
            });
        }

        let comp_max = connected_components(&g)
            .iter()
            .map(|c| td(&g.induced_subgraph(&c.vertices)))
            .max()
            .unwrap_or(0);
        components.check(comp_max == t, &g, || {
            format!("td = {t} but the component maximum is {comp_max}")
        });

        for k in 0..=n.saturating_sub(4) {
            if n < 4 {
                break;
            }
            match find_balanced_kpartition(&g, k) {
                Ok(PartitionSearch::Absent { .. }) => kloks.check(w > k, &g, || {
                    format!("no balanced {k}-partition but tw = {w}")
                }),
                Ok(PartitionSearch::Found(part)) => {
                    let ok = is_balanced_kpartition(&g, &part).unwrap_or(false);
                    kloks.check(ok, &g, || format!("reported {k}-partition {part:?} is not balanced"))
                }
                Err(e) => kloks.check(false, &g, || format!("search failed: {e}")),
            }
        }

        match &td_res.witness {
            Witness::Forest(f) => {
                let ok = f.is_elimination_forest(&g).unwrap_or(false) && f.height() == t;
                forests.check(ok, &g, || format!("exact forest invalid or of height {}", f.height()))
            }
            _ => forests.check(false, &g, || "exact tree-depth without a forest".into()),
        }
        let general = build_general_upper(&g);
        forests.check(
            general.forest.is_elimination_forest(&g).unwrap_or(false)
                && general.height() == general.forest.height()
                && general.height() >= t,
            &g,
            || format!("general upper forest invalid (height {})", general.height()),
        );
        let greedy = greedy_heuristic(&g);
        forests.check(
            greedy.is_elimination_forest(&g).unwrap_or(false) && greedy.height() >= t,
            &g,
            || format!("greedy forest invalid (height {})", greedy.height()),
        );
        if g.is_tree() {
            let h = build_tree_centroid(&g).map(|f| f.height()).unwrap_or(usize::MAX);
            forests.check(h <= log_path_bound(n), &g, || {
                format!("centroid height {h} exceeds ⌊log2 {n}⌋ + 1")
            });
        }

        match &tw_res.witness {
            Witness::Ordering(order) => {
                let width = ordering_width(&g, order).ok();
                witness.check(width == Some(w), &g, || {
                    format!("ordering width {width:?} but tw = {w}")
                })
            }
            _ => witness.check(false, &g, || "exact tree-width without an ordering".into()),
        }
    }

    let mut exhaustive = CheckOutcome::new("exhaustive-small");
    for n in 0..=cfg.exhaustive_n {
        for g in all_graphs(n) {
            let t = td(&g);
            let comp_max = connected_components(&g)
                .iter()
                .map(|c| td(&g.induced_subgraph(&c.vertices)))
                .max()
                .unwrap_or(0);
            exhaustive.check(comp_max == t, &g, || {
                format!("td = {t} but the component maximum is {comp_max}")
            });
            for v in 0..n {
                let tv = td(&g.without_vertex(v));
                exhaustive.check(tv + 1 >= t, &g, || format!("td = {t} but td(G − {v}) = {tv}"));
            }
        }
    }

    let mut paths = CheckOutcome::new("paths");
    for n in 1..=cfg.path_n {
        let g = Graph::path(n);
        let t = td(&g);
        paths.check(t == log_path_bound(n), &g, || format!("td(P_{n}) = {t}"));
    }

    VerifyReport {
        seed: cfg.seed,
        checks: vec![
            sandwich, deletion, monotone, components, kloks, forests, witness, exhaustive, paths,
        ],
    }
}
