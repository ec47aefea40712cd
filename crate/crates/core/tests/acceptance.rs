//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use treedepth::census::{classify, expected_tree_count, tree_height_and_diameter};
use treedepth::exact::{treedepth_exact, treewidth_exact};
use treedepth::expansion::{cheeger_exact, lambda2_estimate, tw_lower_from_expansion, vertex_expansion_exact};
use treedepth::experiments::{
    diameter_window_fraction, medians_by_n, records_to_csv, run_experiment, run_sparse, ExperimentConfig,
};
use treedepth::random::{derive_seed, sample_gnp, sample_labeled_tree, sample_regular, RandomSeed};
use treedepth::separators::{find_balanced_kpartition, PartitionSearch};
use treedepth::Graph;

const BASE_SEED: u64 = 20_240_601;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: String) -> Outcome {
    Outcome { pass, detail }
}

fn td(g: &Graph) -> usize {
    treedepth_exact(g).unwrap().value
}

fn tw(g: &Graph) -> usize {
    treewidth_exact(g).unwrap().value
}

fn seed(criterion: u64, i: u64) -> RandomSeed {
    RandomSeed::new(derive_seed(BASE_SEED, &[criterion]), i)
}

fn figure_exactness() -> Outcome {
    let mut bad = Vec::new();
    if td(&Graph::path(15)) != 4 {
        bad.push("td(P_15)".to_string());
    }
    if td(&Graph::complete(4)) != 4 {
        bad.push("td(K_4)".to_string());
    }
    for n in 1..=16usize {
        if td(&Graph::path(n)) != n.ilog2() as usize + 1 {
            bad.push(format!("td(P_{n})"));
        }
    }
    for n in 1..=10 {
        let k = Graph::complete(n);
        if td(&k) != n {
            bad.push(format!("td(K_{n})"));
        }
        if tw(&k) != n - 1 {
            bad.push(format!("tw(K_{n})"));
        }
    }
    outcome(bad.is_empty(), format!("mismatches: {bad:?}"))
}

fn sandwich() -> Outcome {
    let mut violations = 0;
    let mut edgeless = 0;
    for i in 0..200u64 {
        let s = seed(2, i);
        let n = 1 + (s.state() % 12) as usize;
        let p = 0.1 * (1 + i % 9) as f64;
        let g = sample_gnp(n, p, s).unwrap();
        let (t, w) = (td(&g), tw(&g));
        if g.size() == 0 {
            edgeless += 1;
        }
        let upper = w.max(1) as f64 * ((n as f64).log2() + 1.0);
        if !(w <= t && t as f64 <= upper + 1e-9) {
            violations += 1;
        }
    }
    outcome(
        violations == 0,
        format!("{violations} violations; {edgeless} edgeless graphs checked as td ≤ max(tw, 1)(log2 n + 1)"),
    )
}

/// Minimum height over all rooted forests (parent arrays) on `0..n` whose
/// closure contains every edge of the graph with edge bitmask `mask`.
struct ForestOracle {
    /// `(closure pair mask, height)` for every rooted forest on `n` vertices.
    forests: Vec<(u32, usize)>,
}

fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = (u.min(v), u.max(v));
    b * (b - 1) / 2 + a
}

impl ForestOracle {
    fn new(n: usize) -> Self {
        let mut forests = Vec::new();
        let mut parent = vec![0; n];
        loop {
            if let Some(f) = Self::evaluate(&parent) {
                forests.push(f);
            }
            // Odometer over parent[v] ∈ 0..=n, where n means "root".
            let mut i = 0;
            while i < n {
                parent[i] += 1;
                if parent[i] <= n {
                    break;
                }
                parent[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
        Self { forests }
    }

    fn evaluate(parent: &[usize]) -> Option<(u32, usize)> {
        let n = parent.len();
        let mut closure = 0u32;
        let mut height = 0;
        for v in 0..n {
            let mut depth = 1;
            let mut u = v;
            while parent[u] != n {
                u = parent[u];
                if u == v || depth > n {
                    return None;
                }
                closure |= 1 << pair_index(v, u);
                depth += 1;
            }
            height = height.max(depth);
        }
        Some((closure, height))
    }

    fn min_height(&self, mask: u32) -> usize {
        self.forests
            .iter()
            .filter(|&&(c, _)| c & mask == mask)
            .map(|&(_, h)| h)
            .min()
            .unwrap()
    }
}

fn small_oracle() -> Outcome {
    let mut graphs = 0;
    let mut mismatches = Vec::new();
    for n in 1..=5usize {
        let oracle = ForestOracle::new(n);
        let pairs = n * (n - 1) / 2;
        for mask in 0u32..1 << pairs {
            let edges = (0..n)
                .flat_map(|v| (0..v).map(move |u| (u, v)))
                .filter(|&(u, v)| mask >> pair_index(u, v) & 1 == 1);
            let g = Graph::from_edges(n, edges).unwrap();
            graphs += 1;
            let (got, want) = (td(&g), oracle.min_height(mask));
            if got != want {
                mismatches.push((n, mask, got, want));
            }
        }
    }
    outcome(
        mismatches.is_empty(),
        format!("{graphs} graphs, mismatches: {mismatches:?}"),
    )
}

fn kloks() -> Outcome {
    let mut certified = 0;
    let mut counterexamples = 0;
    for i in 0..100u64 {
        let p = 0.1 * (1 + i % 9) as f64;
        let g = sample_gnp(10, p, seed(4, i)).unwrap();
        let w = tw(&g);
        for k in 0..=6 {
            if let PartitionSearch::Absent { .. } = find_balanced_kpartition(&g, k).unwrap() {
                certified += 1;
                if w <= k {
                    counterexamples += 1;
                }
            }
        }
    }
    outcome(
        counterexamples == 0,
        format!("{certified} certified absences, {counterexamples} counterexamples"),
    )
}

fn tree_heights() -> Outcome {
    let k = 1000;
    let total: usize = (0..2000u64)
        .map(|i| {
            let t = sample_labeled_tree(k, seed(5, i)).unwrap();
            tree_height_and_diameter(&t, 0).unwrap().height
        })
        .sum();
    let mean = total as f64 / 2000.0;
    let target = (2.0 * std::f64::consts::PI * k as f64).sqrt();
    let rel = (mean - target).abs() / target;
    outcome(rel <= 0.15, format!("mean H = {mean:.2}, √(2πk) = {target:.2}, rel. error {rel:.4}"))
}

fn tree_counts() -> Outcome {
    let (n, c, seeds) = (30_000usize, 0.5, 20u64);
    let mut sums: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 0..seeds {
        let census = classify(&sample_gnp(n, c / n as f64, seed(6, i)).unwrap());
        for k in 1..=6 {
            *sums.entry(k).or_default() += census.tree_count(k);
        }
    }
    let mut worst = 0.0f64;
    let mut cells = Vec::new();
    for k in 1..=6 {
        let m = expected_tree_count(n, c, k);
        if m < 25.0 {
            continue;
        }
        let mean = sums[&k] as f64 / seeds as f64;
        let rel = (mean - m).abs() / m;
        worst = worst.max(rel);
        cells.push(format!("k={k}: {mean:.1} vs {m:.1}"));
    }
    outcome(
        !cells.is_empty() && worst <= 0.10,
        format!("max rel. error {worst:.4}; {}", cells.join(", ")),
    )
}

fn critical_config() -> ExperimentConfig {
    let mut cfg = ExperimentConfig::new(treedepth::experiments::Regime::SparseCrit, vec![100_000]);
    cfg.c = Some(1.0);
    cfg.trials = 50;
    cfg.seed = derive_seed(BASE_SEED, &[7]);
    cfg
}

fn critical(records: &[treedepth::experiments::ExperimentRecord]) -> (Outcome, Outcome) {
    let bounded = records.iter().filter(|r| r.ell_m.is_some_and(|l| l <= 10)).count();
    let frac = bounded as f64 / records.len() as f64;
    let max_ell = records.iter().filter_map(|r| r.ell_m).max().unwrap_or(0);
    let excess = outcome(
        frac >= 0.95,
        format!("ℓ_m ≤ 10 in {bounded}/{} trials (max ℓ_m = {max_ell})", records.len()),
    );
    let window = diameter_window_fraction(records, 10.0);
    let ratios: Vec<f64> = records
        .iter()
        .filter_map(|r| r.diameter.map(|d| d as f64 / (r.n as f64).cbrt()))
        .collect();
    let (lo, hi) = ratios
        .iter()
        .fold((f64::INFINITY, 0.0f64), |(a, b), &x| (a.min(x), b.max(x)));
    let diameter = outcome(
        window >= 0.90,
        format!("diameter / n^(1/3) in [0.1, 10] for {:.0}% of trials (range {lo:.2}–{hi:.2})", window * 100.0),
    );
    (excess, diameter)
}

fn dense_deficiency() -> Outcome {
    let text = format!("regime = dense\np = 0.5\nn = 12, 16, 20\ntrials = 30\nseed = {}", derive_seed(BASE_SEED, &[9]));
    let records = run_experiment(&ExperimentConfig::parse(&text).unwrap()).unwrap();
    let medians = medians_by_n(&records, |r| r.deficiency.map(|d| d as f64));
    let values: Vec<(usize, f64)> = medians.iter().map(|&(n, m)| (n, m.unwrap_or(f64::NAN))).collect();
    let nondecreasing = values.windows(2).all(|w| w[0].1 <= w[1].1);
    let envelope = values.iter().all(|&(n, m)| m <= 3.0 * (2.0 * n as f64).sqrt());
    outcome(nondecreasing && envelope, format!("median n − td by n: {values:?}"))
}

fn supercritical_trend() -> Outcome {
    let text = format!(
        "regime = sparse_super\nc = 2\nn = 8, 10, 12, 16, 20\ntrials = 50\nseed = {}",
        derive_seed(BASE_SEED, &[10])
    );
    let records = run_sparse(&ExperimentConfig::parse(&text).unwrap()).unwrap();
    let medians = medians_by_n(&records, |r| r.td_exact.map(|t| t as f64));
    let get = |n| medians.iter().find(|&&(m, _)| m == n).and_then(|&(_, v)| v).unwrap_or(f64::NAN);
    let (m10, m20) = (get(10), get(20));
    let table: Vec<String> = medians.iter().map(|(n, v)| format!("{n}: {}", v.unwrap_or(f64::NAN))).collect();
    outcome(
        m20 >= 1.5 * m10,
        format!("median td by n {{{}}}; need {m20} ≥ 1.5 × {m10} = {}", table.join(", "), 1.5 * m10),
    )
}

fn expansion_bounds() -> Outcome {
    let mut bad = 0;
    let mut worst_gap = f64::INFINITY;
    for i in 0..50u64 {
        let g = sample_regular(14, 3, seed(11, i)).unwrap();
        let w = tw(&g);
        let alpha = vertex_expansion_exact(&g).unwrap().value.to_f64();
        let phi = cheeger_exact(&g).unwrap().value.to_f64();
        let spectral = (1.0 - lambda2_estimate(&g, 1e-10).unwrap().lambda2 / 3.0) / 2.0;
        worst_gap = worst_gap.min(phi - spectral);
        if tw_lower_from_expansion(alpha, 14) > w || spectral > phi {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("{bad} failing trials; min Φ − (1 − λ₂/3)/2 = {worst_gap:.4}"))
}

fn determinism() -> Outcome {
    let configs = [
        "regime = dense\np = 0.5\nn = 8, 12\ntrials = 6\nseed = 3",
        "regime = sparse_sub\nc = 0.5\nn = 500, 2000\ntrials = 4\nseed = 3",
        "regime = regular\nd = 3\nn = 10, 12\ntrials = 4\nseed = 3",
        "regime = tree_stats\nn = 10, 100\ntrials = 5\nseed = 3",
    ];
    let mut differing = Vec::new();
    for text in configs {
        let a = ExperimentConfig::parse(text).unwrap();
        let mut b = a.clone();
        b.threads = Some(2);
        let first = records_to_csv(&run_experiment(&a).unwrap(), false);
        let second = records_to_csv(&run_experiment(&a).unwrap(), false);
        let threaded = records_to_csv(&run_experiment(&b).unwrap(), false);
        if first != second || first != threaded {
            differing.push(a.regime.to_string());
        }
    }
    outcome(differing.is_empty(), format!("differing regimes: {differing:?}"))
}

fn report(id: usize, name: &str, limit: Option<Duration>, run: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let o = run();
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let pass = o.pass && in_time;
    let budget = limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
    println!(
        "criterion {id:>2} {:<4} {name} [{:.1}s{budget}] {}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        o.detail
    );
    pass
}

fn main() -> ExitCode {
    let min = |m: u64| Some(Duration::from_secs(60 * m));
    let mut results = vec![
        report(1, "figure exactness", min(1), figure_exactness),
        report(2, "sandwich", min(5), sandwich),
        report(3, "small-n oracle", None, small_oracle),
        report(4, "kloks contrapositive", min(5), kloks),
        report(5, "random tree height", min(2), tree_heights),
        report(6, "tree-count law", min(5), tree_counts),
    ];
    let start = Instant::now();
    let records = run_sparse(&critical_config()).unwrap();
    let shared = start.elapsed();
    let (excess, diameter) = critical(&records);
    results.push(report(7, "critical excess", min(10), || {
        Outcome {
            detail: format!("{} (shared run {:.1}s)", excess.detail, shared.as_secs_f64()),
            pass: excess.pass && shared <= Duration::from_secs(600),
        }
    }));
    results.push(report(8, "critical diameter window", None, || diameter));
    results.push(report(9, "dense deficiency", min(30), dense_deficiency));
    results.push(report(10, "supercritical trend", None, supercritical_trend));
    results.push(report(11, "expansion bounds", min(10), expansion_bounds));
    results.push(report(12, "determinism", None, determinism));
    let passed = results.iter().filter(|&&p| p).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
