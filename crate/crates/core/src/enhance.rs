//! Robustness enhancement by adding links.
//!
//! New links are drawn one at a time from the complement of the current
//! graph. In `Alpha(α)` mode a non-adjacent pair `(u, v)` is chosen with
//! probability proportional to `(k_u k_v)^α`; ERR, ELL and EHH are the
//! `α = 0`, `α → -∞` and `α → +∞` limits (uniform, minimum link degree,
//! maximum link degree, with uniform tie-breaking). Degrees are refreshed
//! after every added link.
//!
//! Link degree zero with `α < 0` is treated as infinite weight: pairs with
//! a degree-0 endpoint are drawn uniformly before anything else.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BinaryHeap};

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, rng_from_seed, SimRng};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnhanceMode {
    /// Link-degree power law with enforcing parameter α.
    Alpha(f64),
    /// Uniformly random non-adjacent pair.
    Err,
    /// Non-adjacent pair with the lowest link degree.
    Ell,
    /// Non-adjacent pair with the highest link degree.
    Ehh,
}

impl EnhanceMode {
    /// Strategy label used in CSV output.
    pub fn label(&self) -> &'static str {
        match self {
            EnhanceMode::Alpha(_) => "alpha",
            EnhanceMode::Err => "ERR",
            EnhanceMode::Ell => "ELL",
            EnhanceMode::Ehh => "EHH",
        }
    }

    pub fn alpha(&self) -> Option<f64> {
        match self {
            EnhanceMode::Alpha(a) => Some(*a),
            _ => None,
        }
    }
}

impl std::str::FromStr for EnhanceMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "ERR" | "err" => Ok(EnhanceMode::Err),
            "ELL" | "ell" => Ok(EnhanceMode::Ell),
            "EHH" | "ehh" => Ok(EnhanceMode::Ehh),
            other => other
                .strip_prefix("alpha=")
                .or_else(|| other.strip_prefix("alpha:"))
                .and_then(|a| a.trim().parse::<f64>().ok())
                .filter(|a| a.is_finite())
                .map(EnhanceMode::Alpha)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown enhancement strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnhancePlan {
    pub mode: EnhanceMode,
    /// New links divided by the initial edge count.
    pub cost: f64,
    pub seed: u64,
}

/// A non-adjacent pair `u < v` with link degree `k_u * k_v`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateEdge {
    pub u: usize,
    pub v: usize,
    pub link_degree: f64,
}

/// All unordered non-adjacent pairs of alive nodes, in ascending `(u, v)` order.
pub fn complement_edges(g: &Graph) -> Vec<CandidateEdge> {
    let alive: Vec<usize> = g.alive_nodes().collect();
    let mut out = Vec::new();
    for (i, &u) in alive.iter().enumerate() {
        let nbrs = g.neighbors(u);
        let ku = g.degree(u) as f64;
        for &v in &alive[i + 1..] {
            if nbrs.binary_search(&v).is_err() {
                out.push(CandidateEdge {
                    u,
                    v,
                    link_degree: ku * g.degree(v) as f64,
                });
            }
        }
    }
    out
}

/// Number of non-adjacent alive pairs.
pub fn complement_size(g: &Graph) -> usize {
    let n = g.alive_count();
    n * n.saturating_sub(1) / 2 - g.edge_count()
}

/// Links added for a given cost: `round(cost * |E|)`.
pub fn links_for_cost(initial_edges: usize, cost: f64) -> usize {
    (cost * initial_edges as f64).round() as usize
}

/// Selection probability of each candidate under the link-degree power law.
pub fn selection_probabilities(candidates: &[CandidateEdge], alpha: f64) -> Result<Vec<f64>> {
    if candidates.is_empty() {
        return Err(Error::NoCandidates);
    }
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be finite, got {alpha}")));
    }
    let n = candidates.len();
    let uniform_over = |mask: &dyn Fn(&CandidateEdge) -> bool| {
        let count = candidates.iter().filter(|c| mask(c)).count() as f64;
        candidates
            .iter()
            .map(|c| if mask(c) { 1.0 / count } else { 0.0 })
            .collect::<Vec<_>>()
    };
    if alpha == 0.0 {
        return Ok(vec![1.0 / n as f64; n]);
    }
    let has_zero = candidates.iter().any(|c| c.link_degree == 0.0);
    if alpha < 0.0 && has_zero {
        return Ok(uniform_over(&|c| c.link_degree == 0.0));
    }
    if alpha > 0.0 && candidates.iter().all(|c| c.link_degree == 0.0) {
        return Ok(vec![1.0 / n as f64; n]);
    }
    // log-space weights, shifted by the maximum exponent
    let logs: Vec<f64> = candidates
        .iter()
        .map(|c| {
            if c.link_degree > 0.0 {
                alpha * c.link_degree.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let weights: Vec<f64> = logs.iter().map(|&l| (l - top).exp()).collect();
    let total: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Draws one candidate with the link-degree power-law probabilities.
pub fn sample_new_link<R: Rng + ?Sized>(
    candidates: &[CandidateEdge],
    alpha: f64,
    rng: &mut R,
) -> Result<CandidateEdge> {
    let probs = selection_probabilities(candidates, alpha)?;
    let mut cumulative = Vec::with_capacity(probs.len());
    let mut acc = 0.0;
    for p in &probs {
        acc += p;
        cumulative.push(acc);
    }
    let r = rng::unit(rng) * acc;
    let idx = cumulative.partition_point(|&c| c <= r).min(candidates.len() - 1);
    // skip zero-probability slots that can only be hit through rounding
    let idx = (idx..candidates.len())
        .chain((0..idx).rev())
        .find(|&i| probs[i] > 0.0)
        .unwrap_or(idx);
    Ok(candidates[idx])
}

const REJECTION_BUDGET: usize = 64;

fn ordered(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

/// Uniform pair among alive pairs with at least one degree-0 endpoint.
fn draw_zero_tier(g: &Graph, rng: &mut SimRng) -> Option<(usize, usize)> {
    let (zero, rest): (Vec<usize>, Vec<usize>) = g.alive_nodes().partition(|&u| g.degree(u) == 0);
    let z = zero.len();
    let zz = z * z.saturating_sub(1) / 2;
    let total = zz + z * rest.len();
    if total == 0 {
        return None;
    }
    let mut r = rng::index(rng, total);
    if r < zz {
        // unrank the r-th unordered pair (i < j) of zero-degree nodes
        let mut i = 0;
        while r >= z - 1 - i {
            r -= z - 1 - i;
            i += 1;
        }
        Some((zero[i], zero[i + 1 + r]))
    } else {
        r -= zz;
        Some(ordered(zero[r / rest.len()], rest[r % rest.len()]))
    }
}

/// Power-law draw via independent endpoint picks with weights `k^α`,
/// rejecting self-pairs and existing links. Falls back to exact
/// enumeration of the complement after repeated rejections.
fn draw_alpha(g: &Graph, alpha: f64, rng: &mut SimRng) -> Result<Option<(usize, usize)>> {
    if complement_size(g) == 0 {
        return Ok(None);
    }
    let alive: Vec<usize> = g.alive_nodes().collect();
    if alpha < 0.0 && alive.iter().any(|&u| g.degree(u) == 0) {
        return Ok(draw_zero_tier(g, rng));
    }
    let logs: Vec<f64> = alive
        .iter()
        .map(|&u| {
            let k = g.degree(u) as f64;
            if alpha == 0.0 {
                0.0
            } else if k > 0.0 {
                alpha * k.ln()
            } else {
                f64::NEG_INFINITY
            }
        })
        .collect();
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if top.is_finite() {
        let mut cumulative = Vec::with_capacity(alive.len());
        let mut acc = 0.0;
        for &l in &logs {
            acc += (l - top).exp();
            cumulative.push(acc);
        }
        let pick = |rng: &mut SimRng| {
            let r = rng::unit(rng) * acc;
            alive[cumulative.partition_point(|&c| c <= r).min(alive.len() - 1)]
        };
        for _ in 0..REJECTION_BUDGET {
            let u = pick(rng);
            let v = pick(rng);
            if u != v && !g.has_edge(u, v) {
                return Ok(Some(ordered(u, v)));
            }
        }
    }
    let candidates = complement_edges(g);
    let c = sample_new_link(&candidates, alpha, rng)?;
    Ok(Some((c.u, c.v)))
}

/// Non-adjacent pairs between degree buckets `a` and `b` (same bucket when equal).
fn non_adjacent_between(g: &Graph, buckets: &[(usize, Vec<usize>)], a: usize, b: usize) -> usize {
    let na = &buckets[a].1;
    let (kb, nb) = (buckets[b].0, &buckets[b].1);
    let links: usize = na
        .iter()
        .map(|&u| g.neighbors(u).iter().filter(|&&v| g.degree(v) == kb).count())
        .sum();
    if a == b {
        na.len() * (na.len() - 1) / 2 - links / 2
    } else {
        na.len() * nb.len() - links
    }
}

/// Uniform non-adjacent pair between two buckets known to contain one.
fn draw_in_buckets(g: &Graph, na: &[usize], nb: &[usize], same: bool, free: usize, rng: &mut SimRng) -> (usize, usize) {
    let total = if same {
        na.len() * (na.len() - 1) / 2
    } else {
        na.len() * nb.len()
    };
    if total > 4096 && free * 4 >= total {
        loop {
            let u = na[rng::index(rng, na.len())];
            let v = nb[rng::index(rng, nb.len())];
            if u != v && !g.has_edge(u, v) {
                return ordered(u, v);
            }
        }
    }
    let mut pairs = Vec::with_capacity(free);
    for (i, &u) in na.iter().enumerate() {
        let others = if same { &nb[i + 1..] } else { nb };
        for &v in others {
            if !g.has_edge(u, v) {
                pairs.push(ordered(u, v));
            }
        }
    }
    pairs[rng::index(rng, pairs.len())]
}

#[derive(PartialEq, Eq)]
struct Frontier {
    product: u64,
    i: usize,
    j: usize,
    lowest: bool,
}

impl Ord for Frontier {
    fn cmp(&self, other: &Self) -> Ordering {
        // BinaryHeap is a max-heap; flip for ascending enumeration.
        let primary = if self.lowest {
            other.product.cmp(&self.product)
        } else {
            self.product.cmp(&other.product)
        };
        primary
            .then_with(|| other.i.cmp(&self.i))
            .then_with(|| other.j.cmp(&self.j))
    }
}

impl PartialOrd for Frontier {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Non-adjacent pair with extreme link degree (lowest or highest), chosen
/// uniformly among all pairs sharing that link degree.
fn draw_extreme(g: &Graph, lowest: bool, rng: &mut SimRng) -> Option<(usize, usize)> {
    if complement_size(g) == 0 {
        return None;
    }
    let mut by_degree: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for u in g.alive_nodes() {
        by_degree.entry(g.degree(u)).or_default().push(u);
    }
    let buckets: Vec<(usize, Vec<usize>)> = by_degree.into_iter().collect();
    let m = buckets.len();
    let product = |i: usize, j: usize| buckets[i].0 as u64 * buckets[j].0 as u64;

    // Lazy enumeration of bucket pairs (i <= j) in link-degree order.
    let mut heap = BinaryHeap::new();
    for i in 0..m {
        let j = if lowest { i } else { m - 1 };
        heap.push(Frontier { product: product(i, j), i, j, lowest });
    }
    while let Some(top) = heap.peek() {
        let level = top.product;
        let mut group = Vec::new();
        while heap.peek().is_some_and(|f| f.product == level) {
            let f = heap.pop().expect("peeked");
            let next_j = if lowest {
                (f.j + 1 < m).then_some(f.j + 1)
            } else {
                (f.j > f.i).then(|| f.j - 1)
            };
            if let Some(j) = next_j {
                heap.push(Frontier { product: product(f.i, j), i: f.i, j, lowest });
            }
            let same = f.i == f.j;
            if same && buckets[f.i].1.len() < 2 {
                continue;
            }
            let free = non_adjacent_between(g, &buckets, f.i, f.j);
            if free > 0 {
                group.push((f.i, f.j, free));
            }
        }
        let total: usize = group.iter().map(|&(_, _, c)| c).sum();
        if total == 0 {
            continue;
        }
        group.sort_unstable();
        let mut r = rng::index(rng, total);
        for (i, j, free) in group {
            if r < free {
                return Some(draw_in_buckets(g, &buckets[i].1, &buckets[j].1, i == j, free, rng));
            }
            r -= free;
        }
    }
    None
}

/// Draws the next link for `mode` on the current graph without adding it.
/// `None` when the graph is complete on its alive nodes.
pub fn draw_link(g: &Graph, mode: EnhanceMode, rng: &mut SimRng) -> Result<Option<(usize, usize)>> {
    match mode {
        EnhanceMode::Alpha(alpha) => {
            if !alpha.is_finite() {
                return Err(Error::InvalidArgument(format!("alpha must be finite, got {alpha}")));
            }
            draw_alpha(g, alpha, rng)
        }
        EnhanceMode::Err => draw_alpha(g, 0.0, rng),
        EnhanceMode::Ell => Ok(draw_extreme(g, true, rng)),
        EnhanceMode::Ehh => Ok(draw_extreme(g, false, rng)),
    }
}

/// Incremental enhancement: adds links one at a time so callers can
/// inspect the graph at intermediate costs.
#[derive(Debug, Clone)]
pub struct Enhancer {
    graph: Graph,
    mode: EnhanceMode,
    rng: SimRng,
    initial_edges: usize,
    added: Vec<(usize, usize)>,
}

impl Enhancer {
    pub fn new(g: &Graph, mode: EnhanceMode, seed: u64) -> Self {
        Enhancer {
            initial_edges: g.edge_count(),
            graph: g.clone(),
            mode,
            rng: rng_from_seed(seed),
            added: Vec::new(),
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn added(&self) -> &[(usize, usize)] {
        &self.added
    }

    pub fn initial_edges(&self) -> usize {
        self.initial_edges
    }

    fn infeasible(&self, cost: f64, needed: usize) -> Error {
        let available = self.added.len() + complement_size(&self.graph);
        Error::InfeasibleCost {
            cost,
            needed,
            available,
            max_cost: if self.initial_edges > 0 {
                available as f64 / self.initial_edges as f64
            } else {
                0.0
            },
        }
    }

    /// Adds links until `round(cost * |E_init|)` have been added in total.
    pub fn advance_to_cost(&mut self, cost: f64) -> Result<()> {
        if !cost.is_finite() || cost < 0.0 {
            return Err(Error::InvalidArgument(format!("cost must be non-negative, got {cost}")));
        }
        self.advance_links(links_for_cost(self.initial_edges, cost), cost)
    }

    /// Adds links until `total` have been added in total.
    pub fn advance_to_links(&mut self, total: usize) -> Result<()> {
        let cost = if self.initial_edges > 0 {
            total as f64 / self.initial_edges as f64
        } else {
            f64::INFINITY
        };
        self.advance_links(total, cost)
    }

    fn advance_links(&mut self, target: usize, cost: f64) -> Result<()> {
        if target > self.added.len() + complement_size(&self.graph) {
            return Err(self.infeasible(cost, target));
        }
        while self.added.len() < target {
            let (u, v) = draw_link(&self.graph, self.mode, &mut self.rng)?
                .ok_or_else(|| self.infeasible(cost, target))?;
            self.graph.add_edge(u, v)?;
            self.added.push((u, v));
        }
        Ok(())
    }

    pub fn into_parts(self) -> (Graph, Vec<(usize, usize)>) {
        (self.graph, self.added)
    }
}

/// Enhanced copy of `g` and the links added, in order.
pub fn enhance(g: &Graph, plan: &EnhancePlan) -> Result<(Graph, Vec<(usize, usize)>)> {
    let mut e = Enhancer::new(g, plan.mode, plan.seed);
    e.advance_to_cost(plan.cost)?;
    Ok(e.into_parts())
}
