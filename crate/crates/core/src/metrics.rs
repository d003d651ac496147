//! Robustness measures: network efficiency, the kappa-based random-failure
//! threshold, and Brandes betweenness centrality.

use std::collections::VecDeque;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{DegreeStats, Graph};

/// Which removal process a critical fraction refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FractionKind {
    Random,
    Targeted,
}

/// Fraction of nodes whose removal collapses the network.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalFraction {
    pub value: f64,
    pub kind: FractionKind,
    /// Set when the graph was already at or below the percolation threshold
    /// (kappa < 2) and `value` was clamped to 0.
    pub subcritical: bool,
}

/// Unclamped `1 - 1/(kappa - 1)`. Negative below kappa = 2.
pub fn random_threshold_raw(kappa: f64) -> Result<f64> {
    if kappa.is_nan() || kappa <= 1.0 {
        return Err(Error::KappaTooSmall(kappa));
    }
    Ok(1.0 - 1.0 / (kappa - 1.0))
}

/// Random-failure critical fraction `f_r` from a kappa value, clamped to `[0, 1)`.
pub fn random_threshold(kappa: f64) -> Result<CriticalFraction> {
    let raw = random_threshold_raw(kappa)?;
    Ok(CriticalFraction {
        value: raw.max(0.0),
        kind: FractionKind::Random,
        subcritical: raw < 0.0,
    })
}

pub fn critical_fraction_random(stats: &DegreeStats) -> Result<CriticalFraction> {
    random_threshold(stats.kappa)
}

/// Average inverse shortest-path length over ordered pairs of alive nodes.
/// Unreachable pairs contribute zero.
pub fn efficiency(g: &Graph) -> Result<f64> {
    let n = g.alive_count();
    if n < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            found: n,
        });
    }
    let sources: Vec<usize> = g.alive_nodes().collect();
    // Integer histograms of distances keep the result independent of thread scheduling.
    let hist = sources
        .par_iter()
        .map(|&s| {
            let mut h = Vec::new();
            for d in g.bfs_distances(s).expect("alive source").into_iter().flatten() {
                if d > 0 {
                    if h.len() <= d {
                        h.resize(d + 1, 0u64);
                    }
                    h[d] += 1;
                }
            }
            h
        })
        .reduce(Vec::new, |mut a, b| {
            if a.len() < b.len() {
                a.resize(b.len(), 0);
            }
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        });
    let total: f64 = hist
        .iter()
        .enumerate()
        .skip(1)
        .map(|(d, &c)| c as f64 / d as f64)
        .sum();
    Ok(total / (n as f64 * (n as f64 - 1.0)))
}

/// Single-source Brandes dependency accumulation. Returns the dependency of
/// every node on paths starting at `s` (ordered pairs).
fn brandes_source(g: &Graph, s: usize) -> Vec<f64> {
    let n = g.node_count();
    let mut sigma = vec![0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(g.alive_count());
    let mut queue = VecDeque::new();
    sigma[s] = 1.0;
    dist[s] = 0;
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in g.neighbors(v) {
            if dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
            if dist[w] == dist[v] + 1 {
                sigma[w] += sigma[v];
            }
        }
    }
    let mut delta = vec![0f64; n];
    for &w in order.iter().rev() {
        for &v in g.neighbors(w) {
            if dist[v] != usize::MAX && dist[v] + 1 == dist[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
        }
    }
    delta[s] = 0.0;
    delta
}

/// Unnormalized shortest-path betweenness over alive nodes, each unordered
/// pair counted once. Dead nodes score zero.
pub fn betweenness(g: &Graph) -> Result<Vec<f64>> {
    if g.alive_count() == 0 {
        return Err(Error::NoAliveNodes);
    }
    let sources: Vec<usize> = g.alive_nodes().collect();
    let per_source: Vec<Vec<f64>> = sources.par_iter().map(|&s| brandes_source(g, s)).collect();
    let mut bc = vec![0f64; g.node_count()];
    for delta in per_source {
        for (b, d) in bc.iter_mut().zip(delta) {
            *b += d;
        }
    }
    for b in &mut bc {
        *b /= 2.0;
    }
    Ok(bc)
}
