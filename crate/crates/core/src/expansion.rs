//! Edge and vertex expansion by exhaustive enumeration, a power-iteration
//! estimate of the second adjacency eigenvalue of regular graphs, and the
//! expansion-based tree-width lower bounds.
//!
//! The Cheeger constant here is `Φ = min cut(X) / vol(X)` over
//! `0 < |X| ≤ n/2`, a ratio in `[0, 1]`. The matching spectral bound for a
//! `d`-regular graph is `(1 − λ₂/d)/2 ≤ Φ`, i.e. half the second-smallest
//! eigenvalue of the *normalized* Laplacian.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{local_masks, Graph};
use crate::random::mix64;

/// Default vertex limit for the exhaustive expansion routines.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 24;

/// Non-negative rational `num / den` with exact comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        Self { num, den }
    }

    pub fn to_f64(self) -> f64 {
        self.num as f64 / self.den as f64
    }
}

impl Ord for Ratio {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as u128 * other.den as u128).cmp(&(other.num as u128 * self.den as u128))
    }
}

impl PartialOrd for Ratio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// A minimum ratio and a vertex set attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionWitness {
    pub value: Ratio,
    pub witness: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionReport {
    /// Edge Cheeger constant `Φ`.
    pub phi: ExpansionWitness,
    /// Vertex expansion `α = min |N(X) ∖ X| / |X|`.
    pub alpha: ExpansionWitness,
}

/// `cut(X) / vol(X)` with `vol(X) = Σ_{x ∈ X} deg(x)`.
pub fn edge_ratio(g: &Graph, set: &[usize]) -> Ratio {
    let mut inside = vec![false; g.order()];
    for &v in set {
        inside[v] = true;
    }
    let vol: usize = set.iter().map(|&v| g.degree(v)).sum();
    let cut: usize = set
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| !inside[w]).count())
        .sum();
    Ratio::new(cut as u64, vol as u64)
}

/// `|N(X) ∖ X| / |X|`.
pub fn vertex_ratio(g: &Graph, set: &[usize]) -> Ratio {
    let mut inside = vec![false; g.order()];
    for &v in set {
        inside[v] = true;
    }
    let mut boundary = vec![false; g.order()];
    for &v in set {
        for &w in g.neighbors(v) {
            if !inside[w] {
                boundary[w] = true;
            }
        }
    }
    Ratio::new(boundary.iter().filter(|&&b| b).count() as u64, set.len() as u64)
}

fn check_enumerable(g: &Graph, limit: usize) -> Result<Vec<u32>> {
    let n = g.order();
    let limit = limit.min(30);
    if n > limit {
        return Err(Error::LimitExceeded {
            what: "expansion enumeration",
            limit,
            actual: n,
        });
    }
    if n < 2 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let all: Vec<usize> = (0..n).collect();
    Ok(local_masks(g, &all))
}

/// Minimum of `score` over all masks with `0 < |X| ≤ n/2`; ties go to the
/// smallest mask. Chunks of the mask range are scanned in parallel.
fn enumerate_min<F>(n: usize, score: F) -> (Ratio, u32)
where
    F: Fn(u32) -> Ratio + Sync,
{
    const CHUNK_BITS: u32 = 14;
    let total: u64 = 1 << n;
    let chunk = 1u64 << CHUNK_BITS;
    let chunks = total.div_ceil(chunk);
    let half = (n / 2) as u32;
    (0..chunks)
        .into_par_iter()
        .filter_map(|c| {
            let start = (c * chunk).max(1);
            let end = ((c + 1) * chunk).min(total);
            let mut best: Option<(Ratio, u32)> = None;
            for mask in start..end {
                let mask = mask as u32;
                if mask.count_ones() > half {
                    continue;
                }
                let r = score(mask);
                if best.is_none_or(|(b, _)| r < b) {
                    best = Some((r, mask));
                }
            }
            best
        })
        .reduce_with(|a, b| match a.0.cmp(&b.0) {
            Ordering::Less => a,
            Ordering::Greater => b,
            Ordering::Equal => {
                if a.1 <= b.1 {
                    a
                } else {
                    b
                }
            }
        })
        .expect("n ≥ 2 gives at least one candidate set")
}

fn members(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask >> v & 1 == 1).collect()
}

pub fn cheeger_exact(g: &Graph) -> Result<ExpansionWitness> {
    cheeger_exact_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

/// Exact edge Cheeger constant by enumerating every `X` with `0 < |X| ≤ n/2`.
/// Rejects disconnected graphs (and graphs with fewer than two vertices).
pub fn cheeger_exact_with_limit(g: &Graph, limit: usize) -> Result<ExpansionWitness> {
    let adj = check_enumerable(g, limit)?;
    let deg: Vec<u32> = adj.iter().map(|a| a.count_ones()).collect();
    let (value, mask) = enumerate_min(g.order(), |x| {
        let (mut cut, mut vol) = (0u64, 0u64);
        let mut rest = x;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            vol += deg[v] as u64;
            cut += (adj[v] & !x).count_ones() as u64;
        }
        Ratio::new(cut, vol)
    });
    Ok(ExpansionWitness {
        value,
        witness: members(mask),
    })
}

pub fn vertex_expansion_exact(g: &Graph) -> Result<ExpansionWitness> {
    vertex_expansion_exact_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

/// Exact vertex expansion `min |N(X) ∖ X| / |X|` over `0 < |X| ≤ n/2`.
pub fn vertex_expansion_exact_with_limit(g: &Graph, limit: usize) -> Result<ExpansionWitness> {
    let adj = check_enumerable(g, limit)?;
    let (value, mask) = enumerate_min(g.order(), |x| {
        let mut nbrs = 0u32;
        let mut rest = x;
        while rest != 0 {
            nbrs |= adj[rest.trailing_zeros() as usize];
            rest &= rest - 1;
        }
        Ratio::new((nbrs & !x).count_ones() as u64, x.count_ones() as u64)
    });
    Ok(ExpansionWitness {
        value,
        witness: members(mask),
    })
}

pub fn expansion_report(g: &Graph) -> Result<ExpansionReport> {
    expansion_report_with_limit(g, DEFAULT_ENUMERATION_LIMIT)
}

pub fn expansion_report_with_limit(g: &Graph, limit: usize) -> Result<ExpansionReport> {
    Ok(ExpansionReport {
        phi: cheeger_exact_with_limit(g, limit)?,
        alpha: vertex_expansion_exact_with_limit(g, limit)?,
    })
}

/// Output of [`lambda2_estimate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralReport {
    pub degree: usize,
    /// Second-largest adjacency eigenvalue.
    pub lambda2: f64,
    /// `(1 − λ₂/d) / 2`, a lower bound on the Cheeger constant.
    pub conductance_bound: f64,
    pub iterations: usize,
    pub residual: f64,
}

/// Iteration cap for [`lambda2_estimate`].
pub const MAX_POWER_ITERATIONS: usize = 2_000_000;

/// Second-largest adjacency eigenvalue of a connected `d`-regular graph.
///
/// Power iteration on `A + dI` (positive semidefinite, so the dominant
/// eigenvalue is the algebraically largest) restricted to the complement of
/// the all-ones vector, until `‖Mx − μx‖ ≤ tolerance` for unit `x`.
pub fn lambda2_estimate(g: &Graph, tolerance: f64) -> Result<SpectralReport> {
    let d = g.regular_degree().ok_or(Error::NotRegular)?;
    let n = g.order();
    if n < 2 || !g.is_connected() {
        return Err(Error::NotConnected);
    }
    let shift = d as f64;
    let mut x: Vec<f64> = (0..n)
        .map(|i| (mix64(i as u64 + 1) >> 11) as f64 / (1u64 << 53) as f64 - 0.5)
        .collect();
    deflate_and_normalize(&mut x);
    let mut y = vec![0.0; n];
    let mut residual = f64::INFINITY;
    for iteration in 1..=MAX_POWER_ITERATIONS {
        for v in 0..n {
            y[v] = shift * x[v] + g.neighbors(v).iter().map(|&w| x[w]).sum::<f64>();
        }
        let mean = y.iter().sum::<f64>() / n as f64;
        y.iter_mut().for_each(|t| *t -= mean);
        let mu: f64 = x.iter().zip(&y).map(|(a, b)| a * b).sum();
        residual = x
            .iter()
            .zip(&y)
            .map(|(a, b)| (b - mu * a).powi(2))
            .sum::<f64>()
            .sqrt();
        if residual <= tolerance {
            let lambda2 = mu - shift;
            return Ok(SpectralReport {
                degree: d,
                lambda2,
                conductance_bound: (1.0 - lambda2 / shift) / 2.0,
                iterations: iteration,
                residual,
            });
        }
        std::mem::swap(&mut x, &mut y);
        if deflate_and_normalize(&mut x) == 0.0 {
            // The iterate vanished: the deflated operator is zero, so λ₂ = −d.
            return Ok(SpectralReport {
                degree: d,
                lambda2: -shift,
                conductance_bound: 1.0,
                iterations: iteration,
                residual: 0.0,
            });
        }
    }
    let _ = residual;
    Err(Error::NoConvergence {
        iterations: MAX_POWER_ITERATIONS,
    })
}

fn deflate_and_normalize(x: &mut [f64]) -> f64 {
    let mean = x.iter().sum::<f64>() / x.len() as f64;
    x.iter_mut().for_each(|t| *t -= mean);
    let norm = x.iter().map(|t| t * t).sum::<f64>().sqrt();
    if norm > 0.0 {
        x.iter_mut().for_each(|t| *t /= norm);
    }
    norm
}

/// `⌈(α(n − 1) − 3) / (α + 3)⌉`, clamped at 0: a tree-width lower bound
/// whenever `α` is the vertex expansion of an `n`-vertex graph.
///
/// Floating-point input is nudged down by `1e-9` before rounding up.
pub fn tw_lower_from_expansion(alpha: f64, n: usize) -> usize {
    if !(alpha > 0.0) || n == 0 {
        return 0;
    }
    let v = (alpha * (n as f64 - 1.0) - 3.0) / (alpha + 3.0);
    if v <= 0.0 {
        0
    } else {
        (v - 1e-9).ceil().max(0.0) as usize
    }
}

/// [`tw_lower_from_expansion`] in exact rational arithmetic.
pub fn tw_lower_from_expansion_exact(alpha: Ratio, n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let (a, b) = (alpha.num as i128, alpha.den as i128);
    let num = a * (n as i128 - 1) - 3 * b;
    let den = a + 3 * b;
    if num <= 0 {
        0
    } else {
        ((num + den - 1) / den) as usize
    }
}

/// The union bound on sets `S` of size `γn` meeting at least `βn` edges of
/// `G(n, c/n)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SparseCutTail {
    /// `β = α(δ − γ)/3`.
    pub beta: f64,
    /// `(e/γ)^γ · (γec/β)^β`.
    pub base: f64,
    /// `γ n² · base^n`.
    pub bound: f64,
}

/// Largest admissible separator fraction, `αδ / (3c + α)` (exclusive).
pub fn max_gamma(c: f64, alpha: f64, delta: f64) -> f64 {
    alpha * delta / (3.0 * c + alpha)
}

fn ln_base(c: f64, alpha: f64, delta: f64, gamma: f64) -> f64 {
    let beta = alpha * (delta - gamma) / 3.0;
    gamma * (1.0 - gamma.ln()) + beta * (1.0 + gamma.ln() + c.ln() - beta.ln())
}

pub fn sparse_cut_tail(n: usize, c: f64, alpha: f64, delta: f64, gamma: f64) -> Result<SparseCutTail> {
    if !(c > 0.0 && alpha > 0.0 && delta > 0.0 && delta <= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "need c > 0, α > 0 and 0 < δ ≤ 1 (got c = {c}, α = {alpha}, δ = {delta})"
        )));
    }
    let upper = max_gamma(c, alpha, delta);
    if !(gamma > 0.0 && gamma < upper) {
        return Err(Error::InvalidParameter(format!(
            "γ = {gamma} outside (0, αδ/(3c + α) = {upper})"
        )));
    }
    let beta = alpha * (delta - gamma) / 3.0;
    let lb = ln_base(c, alpha, delta, gamma);
    let n = n as f64;
    Ok(SparseCutTail {
        beta,
        base: lb.exp(),
        bound: (gamma.ln() + 2.0 * n.ln() + n * lb).exp(),
    })
}

/// Bisection tolerance for [`gamma0_search`].
pub const GAMMA0_TOLERANCE: f64 = 1e-9;

/// A separator fraction `γ₀` in the admissible range whose base is below 1,
/// found by bisection on the sign of `ln base`. Returns the upper end of the
/// range (less the tolerance) when the whole range qualifies.
pub fn gamma0_search(c: f64, alpha: f64, delta: f64) -> Result<f64> {
    let upper = max_gamma(c, alpha, delta);
    sparse_cut_tail(1, c, alpha, delta, upper / 2.0)?;
    let f = |g: f64| ln_base(c, alpha, delta, g);
    let mut hi = upper;
    if f(hi - GAMMA0_TOLERANCE) < 0.0 {
        return Ok(hi - GAMMA0_TOLERANCE);
    }
    let mut lo = upper;
    while f(lo) >= 0.0 {
        lo /= 2.0;
        if lo < f64::MIN_POSITIVE {
            return Err(Error::InvalidParameter("no admissible γ with base below 1".into()));
        }
    }
    while hi - lo > GAMMA0_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// Explicit linear tree-width constant `(αδ)² / (9e³c²)`.
pub fn explicit_linear_constant(alpha: f64, delta: f64, c: f64) -> f64 {
    (alpha * delta).powi(2) / (9.0 * std::f64::consts::E.powi(3) * c * c)
}

/// Parameters of the sparse expansion argument, with `β` and `γ₀` derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExpansionBoundParams {
    pub alpha: f64,
    pub delta: f64,
    pub gamma: f64,
    pub beta: f64,
    pub gamma0: f64,
}

impl ExpansionBoundParams {
    pub fn new(c: f64, alpha: f64, delta: f64, gamma: f64) -> Result<Self> {
        let tail = sparse_cut_tail(1, c, alpha, delta, gamma)?;
        Ok(Self {
            alpha,
            delta,
            gamma,
            beta: tail.beta,
            gamma0: gamma0_search(c, alpha, delta)?,
        })
    }
}
