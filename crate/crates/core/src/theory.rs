//! Mean-field prediction of degree moments after adding `d` links.
//!
//! Each node `i` receives an expected share `r_i` of new link endpoints,
//! computed once from the initial degrees:
//!
//! ```text
//! r_i = Σ_{j non-adjacent to i} w_ij / W,   w_ij = k_i^α k_j^α,
//! W   = Σ over unordered non-adjacent pairs of w_pq
//! ```
//!
//! so `Σ r_i = 2` (every link has two endpoints). The expected degree after
//! `d` additions is `k_i + r_i d`, giving the predicted
//! `κ = Σ (k_i + r_i d)² / (2 (|E| + d))`.

use crate::enhance::complement_size;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::random_threshold;

#[derive(Debug, Clone, PartialEq)]
pub struct TheoryPrediction {
    /// Endpoint share per node id (zero for dead nodes).
    pub r: Vec<f64>,
    pub d: usize,
    pub kappa_pred: f64,
    pub f_r_pred: f64,
}

/// Expected share of new-link endpoints landing on each node.
pub fn endpoint_fractions(g: &Graph, alpha: f64) -> Result<Vec<f64>> {
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be finite, got {alpha}")));
    }
    if complement_size(g) == 0 {
        return Err(Error::NoCandidates);
    }
    let n = g.node_count();
    let alive: Vec<usize> = g.alive_nodes().collect();
    let mut r = vec![0.0; n];

    let zeros = alive.iter().filter(|&&u| g.degree(u) == 0).count();
    if alpha < 0.0 && zeros > 0 {
        // Pairs touching a degree-0 node take all the weight, uniformly.
        let others = alive.len() - zeros;
        let total = (zeros * (zeros - 1) / 2 + zeros * others) as f64;
        for &u in &alive {
            let partners = if g.degree(u) == 0 { alive.len() - 1 } else { zeros };
            r[u] = partners as f64 / total;
        }
        return Ok(r);
    }

    // Node weights k^α, scaled by the largest so extreme α stays finite.
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
    let mut x = vec![0.0; n];
    if top.is_finite() {
        for (&u, &l) in alive.iter().zip(&logs) {
            x[u] = (l - top).exp();
        }
    }
    let sum_x: f64 = alive.iter().map(|&u| x[u]).sum();
    let mut numer = vec![0.0; n];
    for &u in &alive {
        if g.degree(u) + 1 == alive.len() {
            continue;
        }
        let nbr: f64 = g.neighbors(u).iter().map(|&v| x[v]).sum();
        numer[u] = x[u] * (sum_x - x[u] - nbr).max(0.0);
    }
    let w: f64 = numer.iter().sum::<f64>() / 2.0;
    if w > 0.0 {
        for &u in &alive {
            r[u] = numer[u] / w;
        }
    } else {
        // Every remaining pair has zero weight: fall back to uniform over the complement.
        let total = complement_size(g) as f64;
        for &u in &alive {
            r[u] = (alive.len() - 1 - g.degree(u)) as f64 / total;
        }
    }
    Ok(r)
}

/// Predicted `κ` from initial degrees and endpoint shares after `d` links.
pub fn kappa_from_fractions(g: &Graph, r: &[f64], d: usize) -> Result<f64> {
    let denom = 2.0 * (g.edge_count() + d) as f64;
    if denom == 0.0 {
        return Err(Error::ZeroDegree);
    }
    let df = d as f64;
    let numer: f64 = g
        .alive_nodes()
        .map(|u| {
            let k = g.degree(u) as f64 + r[u] * df;
            k * k
        })
        .sum();
    Ok(numer / denom)
}

pub fn predicted_kappa(g: &Graph, alpha: f64, d: usize) -> Result<f64> {
    let r = endpoint_fractions(g, alpha)?;
    kappa_from_fractions(g, &r, d)
}

/// Random-failure threshold for a predicted κ, clamped like the empirical one.
pub fn predicted_f_r(kappa_pred: f64) -> Result<f64> {
    Ok(random_threshold(kappa_pred)?.value)
}

pub fn predict(g: &Graph, alpha: f64, d: usize) -> Result<TheoryPrediction> {
    let r = endpoint_fractions(g, alpha)?;
    let kappa_pred = kappa_from_fractions(g, &r, d)?;
    Ok(TheoryPrediction {
        f_r_pred: predicted_f_r(kappa_pred)?,
        r,
        d,
        kappa_pred,
    })
}

/// Predictions at several link counts, sharing one `r` computation.
pub fn predict_curve(g: &Graph, alpha: f64, ds: &[usize]) -> Result<Vec<TheoryPrediction>> {
    let r = endpoint_fractions(g, alpha)?;
    ds.iter()
        .map(|&d| {
            let kappa_pred = kappa_from_fractions(g, &r, d)?;
            Ok(TheoryPrediction {
                r: r.clone(),
                d,
                kappa_pred,
                f_r_pred: predicted_f_r(kappa_pred)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{generate_ba, BaParams};

    #[test]
    fn four_cycle_uniform() {
        let r = endpoint_fractions(&Graph::cycle(4), 0.0).unwrap();
        assert_eq!(r, vec![0.5; 4]);
        let k = predicted_kappa(&Graph::cycle(4), 0.0, 2).unwrap();
        assert!((k - 3.0).abs() < 1e-12);
    }

    #[test]
    fn star_hub_gets_nothing() {
        let r = endpoint_fractions(&Graph::star(5), 0.0).unwrap();
        assert_eq!(r[0], 0.0);
        for &x in &r[1..] {
            assert!((x - 0.5).abs() < 1e-12);
        }
    }

    #[test]
    fn regular_graph_is_uniform() {
        let g = Graph::cycle(9);
        for alpha in [-8.0, -1.0, 0.0, 2.0] {
            let r = endpoint_fractions(&g, alpha).unwrap();
            for x in r {
                assert!((x - 2.0 / 9.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn zero_links_reproduce_empirical_kappa() {
        let g = generate_ba(&BaParams::new(2, 60, 4)).unwrap();
        let emp = g.degree_stats().unwrap().kappa;
        assert!((predicted_kappa(&g, 1.5, 0).unwrap() - emp).abs() < 1e-12);
    }

    #[test]
    fn f_r_prediction() {
        assert_eq!(predicted_f_r(2.0).unwrap(), 0.0);
        assert_eq!(predicted_f_r(3.0).unwrap(), 0.5);
        assert!(predicted_f_r(0.5).is_err());
    }

    #[test]
    fn complete_graph_errors() {
        assert_eq!(endpoint_fractions(&Graph::complete(4), 1.0), Err(Error::NoCandidates));
    }

    #[test]
    fn isolated_nodes_take_all_weight_for_negative_alpha() {
        let mut g = Graph::new(5);
        g.add_edge(0, 1).unwrap();
        g.add_edge(1, 2).unwrap();
        // zeros: 3, 4. Pairs touching them: (3,4) + 2*3 = 7
        let r = endpoint_fractions(&g, -1.0).unwrap();
        assert!((r[3] - 4.0 / 7.0).abs() < 1e-12);
        assert!((r[0] - 2.0 / 7.0).abs() < 1e-12);
        assert!((r.iter().sum::<f64>() - 2.0).abs() < 1e-12);
    }
}
