//! Targeted attacks and random failures.
//!
//! Nodes are removed one at a time from a private copy of the graph. After
//! each removal the surviving graph is checked for collapse: by default the
//! kappa criterion (`<k²>/<k> < 2`, or no edges left), optionally a
//! giant-component criterion (largest component below 1% of the original
//! node count).

use std::cmp::Reverse;
use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::metrics::{self, CriticalFraction, FractionKind};
use crate::rng::{self, derive_seed, rng_from_seed};

/// How the next node to remove is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AttackKind {
    /// Highest degree first.
    Degree,
    /// Highest betweenness first.
    Betweenness,
    /// Uniformly random order.
    Random { seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttackStrategy {
    pub kind: AttackKind,
    /// Re-rank after every removal instead of using the initial ranking.
    pub recompute: bool,
}

impl AttackStrategy {
    pub fn degree() -> Self {
        AttackStrategy {
            kind: AttackKind::Degree,
            recompute: true,
        }
    }

    pub fn betweenness() -> Self {
        AttackStrategy {
            kind: AttackKind::Betweenness,
            recompute: true,
        }
    }

    pub fn random(seed: u64) -> Self {
        AttackStrategy {
            kind: AttackKind::Random { seed },
            recompute: false,
        }
    }

    pub fn with_recompute(mut self, recompute: bool) -> Self {
        self.recompute = recompute;
        self
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            AttackKind::Degree => "degree",
            AttackKind::Betweenness => "betweenness",
            AttackKind::Random { .. } => "random",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CollapseCriterion {
    /// Surviving graph has `<k²>/<k> < 2` or no edges.
    #[default]
    Kappa,
    /// Largest component holds fewer than 1% of the original nodes.
    GiantComponent,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AttackOptions {
    /// Removals between recorded samples. `None` picks `max(1, N/100)`.
    pub sample_interval: Option<usize>,
    pub collapse: CollapseCriterion,
    /// Stop at the first collapse instead of removing nodes until one is left.
    pub stop_at_collapse: bool,
    /// Compute network efficiency at each sample (all-pairs BFS).
    pub record_efficiency: bool,
}

impl Default for AttackOptions {
    fn default() -> Self {
        AttackOptions {
            sample_interval: None,
            collapse: CollapseCriterion::Kappa,
            stop_at_collapse: true,
            record_efficiency: true,
        }
    }
}

/// State of the surviving graph after `removed` removals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AttackSample {
    pub removed: usize,
    pub fraction_removed: f64,
    /// Size of the largest component (node count).
    pub largest_component: usize,
    /// Largest component relative to alive nodes.
    pub s: f64,
    /// Network efficiency, or NaN when not recorded.
    pub e: f64,
    /// `<k²>/<k>`, or `None` when no edges remain.
    pub kappa: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AttackTrace {
    pub samples: Vec<AttackSample>,
    pub critical_fraction: Option<CriticalFraction>,
    /// Node ids in removal order.
    pub removal_order: Vec<usize>,
}

enum Ranker {
    /// Live (degree, reverse id) index; the last element is the target.
    DegreeLive(BTreeSet<(usize, Reverse<usize>)>),
    BetweennessLive,
    /// Fixed order, consumed from the front.
    Fixed { order: Vec<usize>, next: usize },
}

/// Incremental attack state shared by trace recording and threshold search.
struct Attack {
    graph: Graph,
    ranker: Ranker,
    initial_n: usize,
    degree_sum: u64,
    degree_sq_sum: u64,
    removed: usize,
    criterion: CollapseCriterion,
}

fn order_by_score_desc(scores: &[f64], alive: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut order: Vec<usize> = alive.collect();
    // Stable sort on ascending ids gives lowest-id tie-breaking.
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    order
}

fn argmax_lowest_id(scores: &[f64], alive: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<usize> = None;
    for u in alive {
        match best {
            Some(b) if scores[u] <= scores[b] => {}
            _ => best = Some(u),
        }
    }
    best
}

impl Attack {
    fn new(g: &Graph, strategy: &AttackStrategy, criterion: CollapseCriterion) -> Result<Self> {
        if g.alive_count() == 0 {
            return Err(Error::NoAliveNodes);
        }
        let graph = g.clone();
        let ranker = match (strategy.kind, strategy.recompute) {
            (AttackKind::Degree, true) => Ranker::DegreeLive(
                graph
                    .alive_nodes()
                    .map(|u| (graph.degree(u), Reverse(u)))
                    .collect(),
            ),
            (AttackKind::Degree, false) => {
                let scores: Vec<f64> = (0..graph.node_count())
                    .map(|u| graph.degree(u) as f64)
                    .collect();
                Ranker::Fixed {
                    order: order_by_score_desc(&scores, graph.alive_nodes()),
                    next: 0,
                }
            }
            (AttackKind::Betweenness, true) => Ranker::BetweennessLive,
            (AttackKind::Betweenness, false) => {
                let scores = metrics::betweenness(&graph)?;
                Ranker::Fixed {
                    order: order_by_score_desc(&scores, graph.alive_nodes()),
                    next: 0,
                }
            }
            (AttackKind::Random { seed }, _) => {
                let mut order: Vec<usize> = graph.alive_nodes().collect();
                let mut rng = rng_from_seed(seed);
                for i in (1..order.len()).rev() {
                    let j = rng::index(&mut rng, i + 1);
                    order.swap(i, j);
                }
                Ranker::Fixed { order, next: 0 }
            }
        };
        let (degree_sum, degree_sq_sum) = graph.degree_sums();
        Ok(Attack {
            initial_n: graph.alive_count(),
            graph,
            ranker,
            degree_sum,
            degree_sq_sum,
            removed: 0,
            criterion,
        })
    }

    fn kappa(&self) -> Option<f64> {
        (self.degree_sum > 0).then(|| self.degree_sq_sum as f64 / self.degree_sum as f64)
    }

    fn collapsed(&self) -> bool {
        match self.criterion {
            // kappa < 2  <=>  Σk² < 2Σk, exact in integers.
            CollapseCriterion::Kappa => {
                self.degree_sum == 0 || self.degree_sq_sum < 2 * self.degree_sum
            }
            CollapseCriterion::GiantComponent => {
                (self.graph.largest_component_size() as f64) < 0.01 * self.initial_n as f64
            }
        }
    }

    fn next_target(&mut self) -> Result<Option<usize>> {
        if self.graph.alive_count() == 0 {
            return Ok(None);
        }
        Ok(match &mut self.ranker {
            Ranker::DegreeLive(set) => set.last().map(|&(_, Reverse(u))| u),
            Ranker::BetweennessLive => {
                let scores = metrics::betweenness(&self.graph)?;
                argmax_lowest_id(&scores, self.graph.alive_nodes())
            }
            Ranker::Fixed { order, next } => {
                while *next < order.len() && !self.graph.is_alive(order[*next]) {
                    *next += 1;
                }
                order.get(*next).copied()
            }
        })
    }

    /// Removes the next ranked node, returning its id.
    fn step(&mut self) -> Result<Option<usize>> {
        let Some(u) = self.next_target()? else {
            return Ok(None);
        };
        let ku = self.graph.degree(u) as u64;
        let mut sq_loss = ku * ku;
        for &v in self.graph.neighbors(u) {
            let kv = self.graph.degree(v) as u64;
            sq_loss += 2 * kv - 1;
        }
        if let Ranker::DegreeLive(set) = &mut self.ranker {
            set.remove(&(ku as usize, Reverse(u)));
            for &v in self.graph.neighbors(u) {
                let kv = self.graph.degree(v);
                set.remove(&(kv, Reverse(v)));
                set.insert((kv - 1, Reverse(v)));
            }
        }
        self.graph.remove_node(u)?;
        self.degree_sum -= 2 * ku;
        self.degree_sq_sum -= sq_loss;
        self.removed += 1;
        Ok(Some(u))
    }

    fn sample(&self, record_efficiency: bool) -> Result<AttackSample> {
        let alive = self.graph.alive_count();
        let largest = self.graph.largest_component_size();
        let e = if !record_efficiency {
            f64::NAN
        } else if alive >= 2 {
            metrics::efficiency(&self.graph)?
        } else {
            0.0
        };
        Ok(AttackSample {
            removed: self.removed,
            fraction_removed: self.removed as f64 / self.initial_n as f64,
            largest_component: largest,
            s: if alive > 0 {
                largest as f64 / alive as f64
            } else {
                0.0
            },
            e,
            kappa: self.kappa(),
        })
    }

    fn targeted(&self, subcritical: bool) -> CriticalFraction {
        CriticalFraction {
            value: self.removed as f64 / self.initial_n as f64,
            kind: FractionKind::Targeted,
            subcritical,
        }
    }
}

/// Removes nodes in ranked order and records the largest component and
/// efficiency every `sample_interval` removals (and at step 0 and at the
/// final step). The input graph is not modified.
pub fn run_attack(g: &Graph, strategy: &AttackStrategy, options: &AttackOptions) -> Result<AttackTrace> {
    if g.alive_count() < 2 {
        return Err(Error::TooFewNodes {
            required: 2,
            found: g.alive_count(),
        });
    }
    let mut attack = Attack::new(g, strategy, options.collapse)?;
    let interval = options
        .sample_interval
        .unwrap_or_else(|| (attack.initial_n / 100).max(1))
        .max(1);
    let mut samples = vec![attack.sample(options.record_efficiency)?];
    let mut removal_order = Vec::new();
    let mut critical = attack.collapsed().then(|| attack.targeted(true));

    let done = |a: &Attack, c: &Option<CriticalFraction>| {
        a.graph.alive_count() <= 1 || (options.stop_at_collapse && c.is_some())
    };
    while !done(&attack, &critical) {
        let Some(u) = attack.step()? else { break };
        removal_order.push(u);
        if critical.is_none() && attack.collapsed() {
            critical = Some(attack.targeted(false));
        }
        if attack.removed % interval == 0 || done(&attack, &critical) {
            samples.push(attack.sample(options.record_efficiency)?);
        }
    }
    Ok(AttackTrace {
        samples,
        critical_fraction: critical,
        removal_order,
    })
}

fn collapse_fraction(
    g: &Graph,
    strategy: &AttackStrategy,
    criterion: CollapseCriterion,
    check_initial: bool,
) -> Result<CriticalFraction> {
    let mut attack = Attack::new(g, strategy, criterion)?;
    if check_initial && attack.collapsed() {
        return Ok(attack.targeted(true));
    }
    while attack.step()?.is_some() {
        if attack.collapsed() {
            return Ok(attack.targeted(false));
        }
    }
    Ok(attack.targeted(false))
}

/// Fraction of the original nodes removed (in ranked order) when the
/// surviving graph first satisfies kappa < 2. Zero when the graph starts
/// below the threshold.
pub fn critical_fraction_targeted(g: &Graph, strategy: &AttackStrategy) -> Result<CriticalFraction> {
    collapse_fraction(g, strategy, CollapseCriterion::Kappa, true)
}

/// Same as [`critical_fraction_targeted`] with an explicit collapse criterion.
pub fn critical_fraction_with(
    g: &Graph,
    strategy: &AttackStrategy,
    criterion: CollapseCriterion,
) -> Result<CriticalFraction> {
    collapse_fraction(g, strategy, criterion, true)
}

/// Mean collapse fraction over `trials` uniform-random removal orders.
///
/// Each trial counts the removals until the surviving graph is collapsed,
/// checking only after a removal, so a graph that starts below the
/// threshold still reports one removal.
pub fn random_failure_empirical(g: &Graph, seed: u64, trials: usize) -> Result<CriticalFraction> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let values = (0..trials)
        .into_par_iter()
        .map(|t| {
            let s = AttackStrategy::random(derive_seed(seed, &[t as u64]));
            collapse_fraction(g, &s, CollapseCriterion::Kappa, false).map(|c| c.value)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean = values.iter().sum::<f64>() / trials as f64;
    Ok(CriticalFraction {
        value: mean,
        kind: FractionKind::Random,
        subcritical: g.degree_stats().map(|s| s.kappa < 2.0).unwrap_or(true),
    })
}
