//! Seeded experiments on random graph models and the invariant battery.
//!
//! An [`ExperimentConfig`] is read from flat `key = value` text. Trials are
//! independent and run on a bounded worker pool; records come back in
//! `(n, trial)` order, so the CSV output depends only on the config.

use std::collections::VecDeque;
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;

use crate::census::{classify, farthest, tree_height_and_diameter};
use crate::elimination::{build_general_upper, build_tree_centroid, greedy_heuristic};
use crate::error::{Error, Result};
use crate::exact::{
    log_path_bound, treedepth_exact_with_limit, treewidth_exact_with_limit, DEFAULT_TREEDEPTH_LIMIT,
    DEFAULT_TREEWIDTH_LIMIT,
};
use crate::expansion::{
    cheeger_exact_with_limit, lambda2_estimate, tw_lower_from_expansion_exact,
    vertex_expansion_exact_with_limit, Ratio, DEFAULT_ENUMERATION_LIMIT,
};
use crate::graph::{connected_components, longest_path_order_with_limit, Graph, DEFAULT_PATH_LIMIT};
use crate::random::{derive_seed, sample_gnp, sample_labeled_tree, sample_regular, RandomSeed};
use crate::separators::{dense_separator_tail, dense_threshold_fraction};

mod verify;

pub use verify::{verify_suite, CheckOutcome, Counterexample, VerifyConfig, VerifyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Regime {
    Dense,
    SparseSub,
    SparseCrit,
    SparseSuper,
    Regular,
    TreeStats,
}

impl Regime {
    pub const ALL: [Regime; 6] = [
        Regime::Dense,
        Regime::SparseSub,
        Regime::SparseCrit,
        Regime::SparseSuper,
        Regime::Regular,
        Regime::TreeStats,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            Regime::Dense => "dense",
            Regime::SparseSub => "sparse_sub",
            Regime::SparseCrit => "sparse_crit",
            Regime::SparseSuper => "sparse_super",
            Regime::Regular => "regular",
            Regime::TreeStats => "tree_stats",
        }
    }

    fn tag(&self) -> u64 {
        *self as u64 + 1
    }

    fn is_sparse(&self) -> bool {
        matches!(self, Regime::SparseSub | Regime::SparseCrit | Regime::SparseSuper)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Regime {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Regime::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown regime `{s}`")))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub regime: Regime,
    /// Graph orders, ascending. Tree orders for `tree_stats`.
    pub n: Vec<usize>,
    /// Edge probability (`dense`).
    pub p: Option<f64>,
    /// Average degree `c` of `G(n, c/n)` (sparse regimes).
    pub c: Option<f64>,
    /// Degree (`regular`).
    pub d: Option<usize>,
    pub trials: usize,
    pub seed: u64,
    pub td_limit: usize,
    pub tw_limit: usize,
    pub enumeration_limit: usize,
    pub path_limit: usize,
    /// Largest component order for which the diameter is computed exactly.
    pub diameter_limit: usize,
    /// Largest graph order on which the min-degree heuristic is run.
    pub greedy_limit: usize,
    /// Window constant `A` for the critical diameter check.
    pub window: f64,
    /// Relative margin above the dense threshold fraction.
    pub margin: f64,
    pub spectral_tolerance: f64,
    pub threads: Option<usize>,
    pub output: Option<PathBuf>,
    /// Emit a `wall_ms` column. Off by default so output is reproducible.
    pub timing: bool,
}

impl ExperimentConfig {
    pub fn new(regime: Regime, n: Vec<usize>) -> Self {
        Self {
            regime,
            n,
            p: None,
            c: None,
            d: None,
            trials: 1,
            seed: 0,
            td_limit: DEFAULT_TREEDEPTH_LIMIT,
            tw_limit: DEFAULT_TREEWIDTH_LIMIT,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
            path_limit: DEFAULT_PATH_LIMIT,
            diameter_limit: 20_000,
            greedy_limit: 2_000,
            window: 10.0,
            margin: 0.1,
            spectral_tolerance: 1e-10,
            threads: None,
            output: None,
            timing: false,
        }
    }

    /// Parses flat `key = value` lines. Blank lines and `#` comments are
    /// skipped; unknown keys are errors.
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = ExperimentConfig::new(Regime::Dense, Vec::new());
        let mut regime = None;
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Config { line: line_no, msg };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{line}`")))?;
            let (key, value) = (key.trim(), value.trim());
            macro_rules! num {
                () => {
                    value
                        .parse()
                        .map_err(|e| err(format!("bad value `{value}` for `{key}`: {e}")))?
                };
            }
            match key {
                "regime" => regime = Some(value.parse::<Regime>().map_err(|e| err(e.to_string()))?),
                "n" => {
                    cfg.n = value
                        .split(',')
                        .map(|s| {
                            let s = s.trim();
                            s.parse::<f64>()
                                .ok()
                                .filter(|x| x.fract() == 0.0 && *x >= 0.0 && *x <= 1e12)
                                .map(|x| x as usize)
                                .ok_or_else(|| err(format!("bad order `{s}`")))
                        })
                        .collect::<Result<_>>()?
                }
                "p" => cfg.p = Some(num!()),
                "c" => cfg.c = Some(num!()),
                "d" => cfg.d = Some(num!()),
                "trials" => cfg.trials = num!(),
                "seed" => cfg.seed = num!(),
                "td_limit" => cfg.td_limit = num!(),
                "tw_limit" => cfg.tw_limit = num!(),
                "enumeration_limit" => cfg.enumeration_limit = num!(),
                "path_limit" => cfg.path_limit = num!(),
                "diameter_limit" => cfg.diameter_limit = num!(),
                "greedy_limit" => cfg.greedy_limit = num!(),
                "A" => cfg.window = num!(),
                "margin" => cfg.margin = num!(),
                "spectral_tolerance" => cfg.spectral_tolerance = num!(),
                "threads" => cfg.threads = Some(num!()),
                "output" => cfg.output = Some(PathBuf::from(value)),
                "timing" => cfg.timing = num!(),
                _ => return Err(err(format!("unknown key `{key}`"))),
            }
        }
        cfg.regime = regime.ok_or(Error::Config {
            line: 0,
            msg: "missing `regime`".into(),
        })?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(msg));
        if self.trials == 0 {
            return bad("trials must be at least 1".into());
        }
        if self.n.is_empty() {
            return bad("at least one value of n is required".into());
        }
        if self.n.windows(2).any(|w| w[0] > w[1]) {
            return bad("n values must be sorted ascending".into());
        }
        if self.threads == Some(0) {
            return bad("threads must be at least 1".into());
        }
        if !(self.window >= 1.0) {
            return bad(format!("A = {} must be at least 1", self.window));
        }
        match self.regime {
            Regime::Dense => match self.p {
                Some(p) if p > 0.0 && p <= 1.0 => {}
                _ => return bad("dense regime needs 0 < p ≤ 1".into()),
            },
            r if r.is_sparse() => {
                let Some(c) = self.c else {
                    return bad(format!("{r} needs c"));
                };
                let ok = match r {
                    Regime::SparseSub => c > 0.0 && c < 1.0,
                    Regime::SparseCrit => c == 1.0,
                    _ => c > 1.0,
                };
                if !ok {
                    return bad(format!("c = {c} does not belong to {r}"));
                }
                if let Some(&n) = self.n.iter().find(|&&n| (n as f64) < c) {
                    return bad(format!("c = {c} exceeds n = {n}"));
                }
            }
            Regime::Regular => {
                let Some(d) = self.d else {
                    return bad("regular regime needs d".into());
                };
                for &n in &self.n {
                    if n < 2 || d == 0 || d >= n || (n * d) % 2 == 1 {
                        return bad(format!("no {d}-regular graph on {n} vertices"));
                    }
                }
            }
            Regime::TreeStats => {
                if self.n.contains(&0) {
                    return bad("tree order must be at least 1".into());
                }
            }
            _ => unreachable!(),
        }
        Ok(())
    }

    /// `(base, trial)` seed for one trial. The base mixes the config seed,
    /// the regime and `n`, so adding points leaves other trials unchanged.
    pub fn trial_seed(&self, n: usize, trial: u64) -> RandomSeed {
        RandomSeed::new(derive_seed(self.seed, &[self.regime.tag(), n as u64]), trial)
    }

    fn param(&self) -> f64 {
        match self.regime {
            Regime::Dense => self.p.unwrap_or(f64::NAN),
            Regime::Regular => self.d.map_or(f64::NAN, |d| d as f64),
            Regime::TreeStats => 0.0,
            _ => self.c.unwrap_or(f64::NAN),
        }
    }
}

/// One trial. Absent measurements are `None` and print as empty CSV fields.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub regime: Regime,
    pub n: usize,
    pub trial: u64,
    pub seed: u64,
    /// `p`, `c` or `d`, depending on the regime.
    pub param: f64,
    pub m: usize,
    pub td_exact: Option<usize>,
    pub td_upper: Option<usize>,
    pub td_lower: Option<usize>,
    pub tw_exact: Option<usize>,
    pub tw_lower: Option<usize>,
    pub deficiency: Option<usize>,
    pub n_c: Option<usize>,
    pub ell_m: Option<i64>,
    pub diameter: Option<usize>,
    pub tree_height: Option<usize>,
    pub phi: Option<Ratio>,
    pub alpha: Option<Ratio>,
    pub lambda2: Option<f64>,
    pub cheeger_lower: Option<f64>,
    pub tail: Option<f64>,
    pub ratio_loglog: Option<f64>,
    pub ratio_log: Option<f64>,
    pub ratio_lin: Option<f64>,
    pub wall_ms: Option<f64>,
}

impl ExperimentRecord {
    fn blank(cfg: &ExperimentConfig, n: usize, seed: RandomSeed) -> Self {
        Self {
            regime: cfg.regime,
            n,
            trial: seed.trial,
            seed: seed.state(),
            param: cfg.param(),
            m: 0,
            td_exact: None,
            td_upper: None,
            td_lower: None,
            tw_exact: None,
            tw_lower: None,
            deficiency: None,
            n_c: None,
            ell_m: None,
            diameter: None,
            tree_height: None,
            phi: None,
            alpha: None,
            lambda2: None,
            cheeger_lower: None,
            tail: None,
            ratio_loglog: None,
            ratio_log: None,
            ratio_lin: None,
            wall_ms: None,
        }
    }

    /// Best known tree-depth value: exact if available, else the upper bound.
    pub fn td(&self) -> Option<usize> {
        self.td_exact.or(self.td_upper)
    }

    fn set_ratios(&mut self) {
        let Some(td) = self.td() else { return };
        let n = self.n as f64;
        let ratio = |den: f64| (den > 0.0).then(|| td as f64 / den);
        self.ratio_loglog = ratio(n.log2().log2());
        self.ratio_log = ratio(n.log2());
        self.ratio_lin = ratio(n);
    }
}

pub const CSV_SCHEMA_LINE: &str = "# schema=1";

const CSV_COLUMNS: &str = "regime,n,trial,seed,param,m,td_exact,td_upper,td_lower,tw_exact,\
tw_lower,deficiency,n_c,ell_m,diameter,tree_height,phi,alpha,lambda2,cheeger_lower,tail,\
ratio_loglog,ratio_log,ratio_lin";

fn opt<T: fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Writes the schema line, the header and one row per record.
pub fn write_records<W: Write>(w: &mut W, records: &[ExperimentRecord], timing: bool) -> io::Result<()> {
    writeln!(w, "{CSV_SCHEMA_LINE}")?;
    writeln!(w, "{CSV_COLUMNS}{}", if timing { ",wall_ms" } else { "" })?;
    for r in records {
        let ratio = |x: &Option<Ratio>| opt(&x.map(Ratio::to_f64));
        write!(
            w,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.regime,
            r.n,
            r.trial,
            r.seed,
            r.param,
            r.m,
            opt(&r.td_exact),
            opt(&r.td_upper),
            opt(&r.td_lower),
            opt(&r.tw_exact),
            opt(&r.tw_lower),
            opt(&r.deficiency),
            opt(&r.n_c),
            opt(&r.ell_m),
            opt(&r.diameter),
            opt(&r.tree_height),
            ratio(&r.phi),
            ratio(&r.alpha),
            opt(&r.lambda2),
            opt(&r.cheeger_lower),
            opt(&r.tail),
            opt(&r.ratio_loglog),
            opt(&r.ratio_log),
            opt(&r.ratio_lin),
        )?;
        if timing {
            write!(w, ",{}", opt(&r.wall_ms))?;
        }
        writeln!(w)?;
    }
    Ok(())
}

pub fn records_to_csv(records: &[ExperimentRecord], timing: bool) -> String {
    let mut out = Vec::new();
    write_records(&mut out, records, timing).expect("writing to memory");
    String::from_utf8(out).expect("CSV is UTF-8")
}

/// Runs `trial` for every `(n, trial index)` on the worker pool and returns
/// the records in `(n, trial)` order.
fn run_trials<F>(cfg: &ExperimentConfig, trial: F) -> Result<Vec<ExperimentRecord>>
where
    F: Fn(usize, RandomSeed) -> Result<ExperimentRecord> + Sync,
{
    cfg.validate()?;
    let jobs: Vec<(usize, u64)> = cfg
        .n
        .iter()
        .flat_map(|&n| (0..cfg.trials as u64).map(move |t| (n, t)))
        .collect();
    let work = || {
        jobs.par_iter()
            .map(|&(n, t)| {
                let start = Instant::now();
                let mut rec = trial(n, cfg.trial_seed(n, t))?;
                if cfg.timing {
                    rec.wall_ms = Some(start.elapsed().as_secs_f64() * 1e3);
                }
                Ok(rec)
            })
            .collect::<Result<Vec<_>>>()
    };
    match cfg.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?
            .install(work),
        None => work(),
    }
}

fn require(cfg: &ExperimentConfig, ok: bool, what: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "{what} cannot run regime {}",
            cfg.regime
        )))
    }
}

/// Tree-depth bounds shared by the graph regimes: exact values where every
/// component is within the solver limits, the better of the general and
/// greedy forests above, and a path bound below.
fn fill_bounds(cfg: &ExperimentConfig, g: &Graph, rec: &mut ExperimentRecord) {
    rec.m = g.size();
    rec.td_exact = treedepth_exact_with_limit(g, cfg.td_limit).ok().map(|r| r.value);
    rec.tw_exact = treewidth_exact_with_limit(g, cfg.tw_limit).ok().map(|r| r.value);
    let mut upper = build_general_upper(g).height();
    if g.order() <= cfg.greedy_limit {
        upper = upper.min(greedy_heuristic(g).height());
    }
    rec.td_upper = Some(upper);
    rec.td_lower = Some(path_lower_bound(cfg, g));
}

/// Order of a long path: the exact longest path when every component is
/// small enough, otherwise per component an exact or double-sweep diameter.
fn path_lower_bound(cfg: &ExperimentConfig, g: &Graph) -> usize {
    if let Ok(t) = longest_path_order_with_limit(g, cfg.path_limit) {
        return log_path_bound(t);
    }
    let mut dist = vec![usize::MAX; g.order()];
    let mut queue = VecDeque::new();
    let t = connected_components(g)
        .iter()
        .map(|c| component_diameter(g, &c.vertices, cfg.diameter_limit, &mut dist, &mut queue).0 + 1)
        .max()
        .unwrap_or(0);
    log_path_bound(t)
}

/// `(d, exact)`: the diameter if the component is within `limit`, else the
/// eccentricity found by a double sweep, which is a lower bound.
fn component_diameter(
    g: &Graph,
    verts: &[usize],
    limit: usize,
    dist: &mut [usize],
    queue: &mut VecDeque<usize>,
) -> (usize, bool) {
    if verts.len() <= limit {
        let d = verts.iter().map(|&v| farthest(g, v, dist, queue).1).max().unwrap_or(0);
        (d, true)
    } else {
        let (far, _) = farthest(g, verts[0], dist, queue);
        (farthest(g, far, dist, queue).1, false)
    }
}

/// `G(n, p)` with constant `p`: exact tree-depth, deficiency `n − td` and the
/// separator tail bound at `f = 3√(ln 3/(2pn))·(1 + margin)`.
pub fn run_dense(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    require(cfg, cfg.regime == Regime::Dense, "run_dense")?;
    let p = cfg.p.expect("validated");
    run_trials(cfg, |n, seed| {
        let g = sample_gnp(n, p, seed)?;
        let mut rec = ExperimentRecord::blank(cfg, n, seed);
        fill_bounds(cfg, &g, &mut rec);
        rec.deficiency = rec.td_exact.map(|td| n - td);
        if n > 0 {
            let f = dense_threshold_fraction(p * n as f64) * (1.0 + cfg.margin);
            rec.tail = Some(dense_separator_tail(n, p, f));
        }
        rec.set_ratios();
        Ok(rec)
    })
}

/// `G(n, c/n)`: component census, tree-depth bounds and the diameter of the
/// largest component.
pub fn run_sparse(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    require(cfg, cfg.regime.is_sparse(), "run_sparse")?;
    let c = cfg.c.expect("validated");
    run_trials(cfg, |n, seed| {
        let g = sample_gnp(n, c / n as f64, seed)?;
        let mut rec = ExperimentRecord::blank(cfg, n, seed);
        let census = classify(&g);
        rec.n_c = Some(census.largest_order);
        rec.ell_m = Some(census.max_excess);
        fill_bounds(cfg, &g, &mut rec);
        if let Some(largest) = connected_components(&g)
            .into_iter()
            .max_by_key(|c| (c.order(), std::cmp::Reverse(c.vertices[0])))
        {
            let mut dist = vec![usize::MAX; n];
            let mut queue = VecDeque::new();
            let (d, exact) =
                component_diameter(&g, &largest.vertices, cfg.diameter_limit, &mut dist, &mut queue);
            rec.diameter = exact.then_some(d);
        }
        rec.set_ratios();
        Ok(rec)
    })
}

/// Random `d`-regular graphs: exact expansion, the spectral Cheeger bound and
/// the expansion tree-width bound against the exact solvers.
///
/// A disconnected sample has `Φ = α = 0` and `λ₂ = d`.
pub fn run_regular(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    require(cfg, cfg.regime == Regime::Regular, "run_regular")?;
    let d = cfg.d.expect("validated");
    run_trials(cfg, |n, seed| {
        let g = sample_regular(n, d, seed)?;
        let mut rec = ExperimentRecord::blank(cfg, n, seed);
        fill_bounds(cfg, &g, &mut rec);
        if g.is_connected() {
            if n <= cfg.enumeration_limit {
                let phi = cheeger_exact_with_limit(&g, cfg.enumeration_limit)?.value;
                let alpha = vertex_expansion_exact_with_limit(&g, cfg.enumeration_limit)?.value;
                rec.phi = Some(phi);
                rec.alpha = Some(alpha);
                rec.tw_lower = Some(tw_lower_from_expansion_exact(alpha, n));
            }
            let spectral = lambda2_estimate(&g, cfg.spectral_tolerance)?;
            rec.lambda2 = Some(spectral.lambda2);
            rec.cheeger_lower = Some(spectral.conductance_bound);
        } else {
            rec.phi = Some(Ratio::new(0, 1));
            rec.alpha = Some(Ratio::new(0, 1));
            rec.tw_lower = Some(0);
            rec.lambda2 = Some(d as f64);
            rec.cheeger_lower = Some(0.0);
        }
        rec.set_ratios();
        Ok(rec)
    })
}

/// Uniform labeled trees of each order `k` in `n`: height from vertex 0,
/// diameter, and the centroid forest height.
pub fn run_tree_stats(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    require(cfg, cfg.regime == Regime::TreeStats, "run_tree_stats")?;
    run_trials(cfg, |k, seed| {
        let t = sample_labeled_tree(k, seed)?;
        let stats = tree_height_and_diameter(&t, 0)?;
        let mut rec = ExperimentRecord::blank(cfg, k, seed);
        rec.m = t.size();
        rec.tree_height = Some(stats.height);
        rec.diameter = Some(stats.diameter);
        rec.n_c = Some(k);
        rec.ell_m = Some(-1);
        rec.td_upper = Some(build_tree_centroid(&t)?.height());
        rec.td_lower = Some(log_path_bound(stats.diameter + 1));
        if k <= cfg.td_limit {
            rec.td_exact = Some(treedepth_exact_with_limit(&t, cfg.td_limit)?.value);
        }
        rec.set_ratios();
        Ok(rec)
    })
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<Vec<ExperimentRecord>> {
    match cfg.regime {
        Regime::Dense => run_dense(cfg),
        Regime::SparseSub | Regime::SparseCrit | Regime::SparseSuper => run_sparse(cfg),
        Regime::Regular => run_regular(cfg),
        Regime::TreeStats => run_tree_stats(cfg),
    }
}

/// A record that breaks one of the harness invariants.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub n: usize,
    pub trial: u64,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} trial={}: {}", self.n, self.trial, self.message)
    }
}

/// Checks every record: `lower ≤ exact ≤ upper` for tree-depth,
/// `tw_lower ≤ tw ≤ td`, plus the regime-specific bounds.
pub fn check_records(records: &[ExperimentRecord]) -> Vec<Violation> {
    let mut out = Vec::new();
    for r in records {
        let mut fail = |message: String| {
            out.push(Violation {
                n: r.n,
                trial: r.trial,
                message,
            })
        };
        if let (Some(lo), Some(hi)) = (r.td_lower, r.td_upper) {
            if lo > hi {
                fail(format!("td lower {lo} > td upper {hi}"));
            }
        }
        if let Some(td) = r.td_exact {
            if r.td_lower.is_some_and(|lo| lo > td) {
                fail(format!("td lower {:?} > td {td}", r.td_lower));
            }
            if r.td_upper.is_some_and(|hi| hi < td) {
                fail(format!("td upper {:?} < td {td}", r.td_upper));
            }
            if td > r.n {
                fail(format!("td {td} > n"));
            }
            if r.tw_exact.is_some_and(|tw| tw > td) {
                fail(format!("tw {:?} > td {td}", r.tw_exact));
            }
        }
        if let (Some(lo), Some(tw)) = (r.tw_lower, r.tw_exact) {
            if lo > tw {
                fail(format!("expansion tw bound {lo} > tw {tw}"));
            }
        }
        if let (Some(lo), Some(phi)) = (r.cheeger_lower, r.phi) {
            if lo > phi.to_f64() + 1e-9 {
                fail(format!("spectral bound {lo} > Φ = {phi}"));
            }
        }
        if r.regime == Regime::SparseSub {
            if let (Some(ell), Some(nc), Some(hi)) = (r.ell_m, r.n_c, r.td_upper) {
                if ell <= 0 && nc > 0 && hi > log_path_bound(nc) + 1 {
                    fail(format!("upper {hi} > ⌊log2 {nc}⌋ + 2 with only trees and unicycles"));
                }
            }
        }
        if let (Some(h), Some(d)) = (r.tree_height, r.diameter) {
            if r.regime == Regime::TreeStats && !(h <= d + 1 && d + 1 <= 2 * h) {
                fail(format!("H = {h}, D = {d} violate H ≤ D + 1 ≤ 2H"));
            }
        }
    }
    out
}

/// Median of the values (mean of the middle two for even length).
pub fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let k = values.len();
    Some(if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    })
}

/// Per-`n` medians of a record field, in ascending `n`.
pub fn medians_by_n<F>(records: &[ExperimentRecord], field: F) -> Vec<(usize, Option<f64>)>
where
    F: Fn(&ExperimentRecord) -> Option<f64>,
{
    let mut ns: Vec<usize> = records.iter().map(|r| r.n).collect();
    ns.dedup();
    ns.into_iter()
        .map(|n| {
            let mut v: Vec<f64> = records.iter().filter(|r| r.n == n).filter_map(&field).collect();
            (n, median(&mut v))
        })
        .collect()
}

/// Fraction of records whose largest-component diameter over `n^(1/3)` lies
/// in `[1/A, A]`. Records without an exact diameter count as misses.
pub fn diameter_window_fraction(records: &[ExperimentRecord], a: f64) -> f64 {
    if records.is_empty() {
        return 0.0;
    }
    let hits = records
        .iter()
        .filter(|r| {
            r.diameter.is_some_and(|d| {
                let x = d as f64 / (r.n as f64).cbrt();
                (1.0 / a..=a).contains(&x)
            })
        })
        .count();
    hits as f64 / records.len() as f64
}
