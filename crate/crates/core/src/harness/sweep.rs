use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::config::{GraphSource, SweepConfig};
use super::format::sig6;
use super::stats::{confidence_interval, mean, Interval};
use crate::attack::{self, AttackKind, AttackStrategy};
use crate::enhance::{EnhanceMode, Enhancer};
use crate::error::{Error, Result};
use crate::generators::{generate_ba, load_edge_list};
use crate::graph::Graph;
use crate::metrics;
use crate::rng::derive_seed;

pub const CSV_HEADER: &str = "strategy,alpha,cost,metric,mean,ci_low,ci_high,trials,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Metric {
    FT,
    FrFormula,
    FrEmpirical,
    Kappa,
    E,
    S,
}

impl Metric {
    pub fn name(&self) -> &'static str {
        match self {
            Metric::FT => "f_t",
            Metric::FrFormula => "f_r_formula",
            Metric::FrEmpirical => "f_r_empirical",
            Metric::Kappa => "kappa",
            Metric::E => "E",
            Metric::S => "S",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub mode: EnhanceMode,
    pub cost: f64,
    pub metric: Metric,
    /// `None` when the cell failed.
    pub stats: Option<Interval>,
    pub trials: usize,
    pub status: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    /// Number of (cell, trial) enhancement evaluations performed.
    pub enhancement_runs: usize,
}

impl SweepResult {
    pub fn get(&self, mode: EnhanceMode, cost: f64, metric: Metric) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.mode == mode && r.cost == cost && r.metric == metric)
    }
}

/// Seed coordinate identifying a strategy independently of its position in the grid.
pub fn strategy_key(mode: EnhanceMode) -> u64 {
    match mode {
        EnhanceMode::Alpha(a) => derive_seed(0, &[a.to_bits()]),
        EnhanceMode::Err => 1,
        EnhanceMode::Ell => 2,
        EnhanceMode::Ehh => 3,
    }
}

/// Seed of the enhancement chain for one strategy and trial.
pub fn trial_seed(master: u64, mode: EnhanceMode, trial: usize) -> u64 {
    derive_seed(master, &[strategy_key(mode), trial as u64])
}

pub fn base_graph(config: &SweepConfig) -> Result<Graph> {
    match &config.source {
        GraphSource::Ba(p) => generate_ba(p),
        GraphSource::File(path) => Ok(load_edge_list(path)?.graph),
    }
}

pub fn enabled_metrics(config: &SweepConfig) -> Vec<Metric> {
    let mut m = vec![Metric::FT, Metric::FrFormula];
    if config.empirical_trials > 0 {
        m.push(Metric::FrEmpirical);
    }
    m.push(Metric::Kappa);
    if config.efficiency {
        m.push(Metric::E);
    }
    m.push(Metric::S);
    m
}

/// Measures one enhanced graph.
fn measure(g: &Graph, config: &SweepConfig, metrics_on: &[Metric], cell_seed: u64) -> Result<Vec<f64>> {
    let attack = match config.attack.kind {
        AttackKind::Random { .. } => AttackStrategy {
            kind: AttackKind::Random {
                seed: derive_seed(cell_seed, &[0]),
            },
            ..config.attack
        },
        _ => config.attack,
    };
    let stats = g.degree_stats()?;
    metrics_on
        .iter()
        .map(|m| {
            Ok(match m {
                Metric::FT => attack::critical_fraction_with(g, &attack, config.collapse)?.value,
                Metric::FrFormula => metrics::critical_fraction_random(&stats)?.value,
                Metric::FrEmpirical => {
                    attack::random_failure_empirical(g, derive_seed(cell_seed, &[1]), config.empirical_trials)?
                        .value
                }
                Metric::Kappa => stats.kappa,
                Metric::E => metrics::efficiency(g)?,
                Metric::S => g.largest_component_fraction()?,
            })
        })
        .collect()
}

/// One strategy/trial chain: values per cost, or the error that stopped it.
type ChainResult = Vec<std::result::Result<Vec<f64>, Error>>;

fn run_chain(base: &Graph, config: &SweepConfig, mode: EnhanceMode, trial: usize, metrics_on: &[Metric]) -> ChainResult {
    let seed = trial_seed(config.master_seed, mode, trial);
    let mut enhancer = Enhancer::new(base, mode, seed);
    let mut out = Vec::with_capacity(config.costs.len());
    let mut failed: Option<Error> = None;
    for &cost in &config.costs {
        if let Some(e) = &failed {
            out.push(Err(e.clone()));
            continue;
        }
        let cell_seed = derive_seed(seed, &[cost.to_bits()]);
        let res = enhancer
            .advance_to_cost(cost)
            .and_then(|_| measure(enhancer.graph(), config, metrics_on, cell_seed));
        if let Err(e) = &res {
            if matches!(e, Error::InfeasibleCost { .. }) {
                failed = Some(e.clone());
            }
        }
        out.push(res);
    }
    out
}

/// Runs every (strategy, cost) cell for `config.trials` trials on `base`.
///
/// Cost levels of one strategy and trial share a single gradual
/// enhancement run: the graph at cost `C` is the prefix of the run that
/// reaches any larger cost. Seeds depend only on the strategy, trial and
/// cost, so each cell is reproducible on its own.
pub fn run_sweep_on(base: &Graph, config: &SweepConfig) -> Result<SweepResult> {
    config.validate()?;
    let metrics_on = enabled_metrics(config);
    let units: Vec<(usize, usize)> = (0..config.strategies.len())
        .flat_map(|s| (0..config.trials).map(move |t| (s, t)))
        .collect();
    let chains: Vec<ChainResult> = units
        .par_iter()
        .map(|&(s, t)| run_chain(base, config, config.strategies[s], t, &metrics_on))
        .collect();

    let mut rows = Vec::new();
    for (s, &mode) in config.strategies.iter().enumerate() {
        let trials = &chains[s * config.trials..(s + 1) * config.trials];
        for (ci, &cost) in config.costs.iter().enumerate() {
            let first_err = trials.iter().find_map(|c| c[ci].as_ref().err());
            for (mi, &metric) in metrics_on.iter().enumerate() {
                let row = match first_err {
                    Some(e) => SweepRow {
                        mode,
                        cost,
                        metric,
                        stats: None,
                        trials: config.trials,
                        status: status_of(e),
                    },
                    None => {
                        let samples: Vec<f64> = trials
                            .iter()
                            .map(|c| c[ci].as_ref().expect("checked")[mi])
                            .collect();
                        let stats = if samples.len() >= 2 {
                            confidence_interval(&samples)?
                        } else {
                            Interval::point(mean(&samples))
                        };
                        SweepRow {
                            mode,
                            cost,
                            metric,
                            stats: Some(stats),
                            trials: samples.len(),
                            status: "ok".into(),
                        }
                    }
                };
                rows.push(row);
            }
        }
    }
    Ok(SweepResult {
        rows,
        enhancement_runs: config.strategies.len() * config.costs.len() * config.trials,
    })
}

fn status_of(e: &Error) -> String {
    match e {
        Error::InfeasibleCost { .. } => "infeasible".into(),
        _ => "error".into(),
    }
}

pub fn run_sweep(config: &SweepConfig) -> Result<SweepResult> {
    let base = base_graph(config)?;
    run_sweep_on(&base, config)
}

pub fn format_rows<'a>(rows: impl IntoIterator<Item = &'a SweepRow>) -> String {
    let mut out = String::new();
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let alpha = r.mode.alpha().map(sig6).unwrap_or_default();
        let (m, lo, hi) = match r.stats {
            Some(s) => (sig6(s.mean), sig6(s.lo), sig6(s.hi)),
            None => Default::default(),
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.mode.label(),
            alpha,
            sig6(r.cost),
            r.metric.name(),
            m,
            lo,
            hi,
            r.trials,
            r.status
        );
    }
    out
}

/// Writes `alpha_sweep.csv` (α rows) and `strategy_sweep.csv` (ERR/ELL/EHH
/// rows) into `dir`, skipping a family with no rows. Returns the paths written.
pub fn write_csvs(result: &SweepResult, dir: &Path) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    let alpha_rows: Vec<&SweepRow> = result.rows.iter().filter(|r| r.mode.alpha().is_some()).collect();
    let strat_rows: Vec<&SweepRow> = result.rows.iter().filter(|r| r.mode.alpha().is_none()).collect();
    for (name, rows) in [("alpha_sweep.csv", alpha_rows), ("strategy_sweep.csv", strat_rows)] {
        if rows.is_empty() {
            continue;
        }
        let path = dir.join(name);
        std::fs::write(&path, format_rows(rows))?;
        written.push(path);
    }
    Ok(written)
}
