//! Test-only oracles, independent of the library's algorithms.
#![allow(dead_code)]

use netrobust::Graph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Erdős–Rényi G(n, p) with a fixed seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < p {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

fn simple_paths(g: &Graph, at: usize, target: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if at == target {
        out.push(path.clone());
        return;
    }
    for &v in g.neighbors(at) {
        if !path.contains(&v) {
            path.push(v);
            simple_paths(g, v, target, path, out);
            path.pop();
        }
    }
}

/// Betweenness by enumerating every simple path between every unordered
/// pair and keeping the shortest ones.
pub fn brute_force_betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut bc = vec![0.0; n];
    let alive: Vec<usize> = g.alive_nodes().collect();
    for (i, &s) in alive.iter().enumerate() {
        for &t in &alive[i + 1..] {
            let mut paths = Vec::new();
            simple_paths(g, s, t, &mut vec![s], &mut paths);
            let Some(best) = paths.iter().map(|p| p.len()).min() else { continue };
            let shortest: Vec<&Vec<usize>> = paths.iter().filter(|p| p.len() == best).collect();
            let total = shortest.len() as f64;
            for p in shortest {
                for &v in &p[1..p.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    bc
}

/// Analytic selection probabilities `(k_u k_v)^α / Σ`, computed directly
/// with `powf` over all non-adjacent pairs of `g` in ascending `(u, v)` order.
pub fn analytic_link_probabilities(g: &Graph, alpha: f64) -> Vec<((usize, usize), f64)> {
    let mut pairs = Vec::new();
    for u in 0..g.node_count() {
        for v in u + 1..g.node_count() {
            if !g.has_edge(u, v) {
                let w = ((g.degree(u) * g.degree(v)) as f64).powf(alpha);
                pairs.push(((u, v), w));
            }
        }
    }
    let total: f64 = pairs.iter().map(|(_, w)| w).sum();
    pairs.into_iter().map(|(e, w)| (e, w / total)).collect()
}

/// Upper tail of the chi-squared distribution.
pub fn chi2_sf(stat: f64, df: usize) -> f64 {
    gamma_q(df as f64 / 2.0, stat / 2.0)
}

fn ln_gamma(x: f64) -> f64 {
    // Lanczos, g = 7, n = 9.
    const C: [f64; 9] = [
        0.999_999_999_999_809_9,
        676.520_368_121_885_1,
        -1_259.139_216_722_402_8,
        771.323_428_777_653_1,
        -176.615_029_162_140_6,
        12.507_343_278_686_905,
        -0.138_571_095_265_720_12,
        9.984_369_578_019_572e-6,
        1.505_632_735_149_311_6e-7,
    ];
    if x < 0.5 {
        let pi = std::f64::consts::PI;
        return (pi / (pi * x).sin()).ln() - ln_gamma(1.0 - x);
    }
    let x = x - 1.0;
    let t = x + 7.5;
    let mut a = C[0];
    for (i, &c) in C.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    0.5 * (2.0 * std::f64::consts::PI).ln() + (x + 0.5) * t.ln() - t + a.ln()
}

/// Regularized upper incomplete gamma Q(a, x).
fn gamma_q(a: f64, x: f64) -> f64 {
    if x <= 0.0 {
        return 1.0;
    }
    let prefix = (-x + a * x.ln() - ln_gamma(a)).exp();
    if x < a + 1.0 {
        let (mut term, mut sum, mut ap) = (1.0 / a, 1.0 / a, a);
        for _ in 0..1000 {
            ap += 1.0;
            term *= x / ap;
            sum += term;
            if term.abs() < sum.abs() * 1e-15 {
                break;
            }
        }
        1.0 - sum * prefix
    } else {
        // Lentz continued fraction.
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..1000 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let del = d * c;
            h *= del;
            if (del - 1.0).abs() < 1e-15 {
                break;
            }
        }
        prefix * h
    }
}

/// Goodness-of-fit p-value of `observed` counts against probabilities,
/// pooling cells with expected count below 5 into one.
pub fn chi2_gof(observed: &[u64], probs: &[f64]) -> f64 {
    let n: u64 = observed.iter().sum();
    let (mut stat, mut cells) = (0.0, 0usize);
    let (mut pooled_obs, mut pooled_exp) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * n as f64;
        if e < 5.0 {
            pooled_obs += o as f64;
            pooled_exp += e;
        } else {
            stat += (o as f64 - e).powi(2) / e;
            cells += 1;
        }
    }
    if pooled_exp > 0.0 {
        stat += (pooled_obs - pooled_exp).powi(2) / pooled_exp.max(1e-12);
        cells += 1;
    }
    chi2_sf(stat, cells - 1)
}

/// Two-sample homogeneity p-value for two count vectors over the same cells.
pub fn chi2_homogeneity(a: &[u64], b: &[u64]) -> f64 {
    let na: u64 = a.iter().sum();
    let nb: u64 = b.iter().sum();
    let n = (na + nb) as f64;
    let mut stat = 0.0;
    let mut cells = 0;
    for (&x, &y) in a.iter().zip(b) {
        let col = (x + y) as f64;
        if col == 0.0 {
            continue;
        }
        for (o, tot) in [(x, na), (y, nb)] {
            let e = col * tot as f64 / n;
            stat += (o as f64 - e).powi(2) / e;
        }
        cells += 1;
    }
    chi2_sf(stat, cells - 1)
}

#[cfg(test)]
mod chi2_check {
    #[test]
    fn known_quantiles() {
        // Critical values at the 5% level.
        for (stat, df) in [(3.841459, 1), (5.991465, 2), (18.307038, 10), (124.342113, 100)] {
            assert!((super::chi2_sf(stat, df) - 0.05).abs() < 1e-6, "{df}");
        }
        assert!((super::chi2_sf(2.0, 2) - (-1.0f64).exp()).abs() < 1e-12);
    }
}
