//! Command-line front end: `generate`, `attack`, `enhance`, `sweep`, `predict`.

use std::fmt::Write as _;
use std::path::PathBuf;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use crate::attack::{run_attack, AttackKind, AttackOptions, AttackStrategy, CollapseCriterion};
use crate::enhance::{EnhanceMode, EnhancePlan};
use crate::generators::{self, BaParams};
use crate::harness::format::sig6;
use crate::harness::{self, SweepConfig};
use crate::theory;

#[derive(Parser, Debug)]
#[command(name = "netrobust", version, about = "Scale-free network robustness: attacks, link-addition enhancement, mean-field prediction")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum AttackArg {
    Degree,
    Betweenness,
    Random,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum CollapseArg {
    Kappa,
    Giant,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum StrategyArg {
    Alpha,
    #[value(name = "ERR", alias = "err")]
    Err,
    #[value(name = "ELL", alias = "ell")]
    Ell,
    #[value(name = "EHH", alias = "ehh")]
    Ehh,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a BA(m, n) graph as an edge list.
    Generate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Remove nodes in ranked order and write the S/E trace as CSV.
    Attack {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum, default_value = "degree")]
        strategy: AttackArg,
        /// Required for the random strategy.
        #[arg(long)]
        seed: Option<u64>,
        /// Rank once on the initial graph instead of after every removal.
        #[arg(long = "static")]
        static_order: bool,
        /// Removals between samples (default: N/100).
        #[arg(long)]
        interval: Option<usize>,
        #[arg(long, value_enum, default_value = "kappa")]
        collapse: CollapseArg,
        /// Keep removing nodes after collapse until one node is left.
        #[arg(long)]
        run_to_end: bool,
        /// Skip the efficiency column (all-pairs BFS per sample).
        #[arg(long)]
        no_efficiency: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Add links to a graph and write the enhanced edge list.
    Enhance {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Enforcing parameter for `--strategy alpha`.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<f64>,
        /// New links divided by the initial edge count.
        #[arg(long)]
        cost: f64,
        #[arg(long)]
        seed: u64,
        #[arg(short, long)]
        output: PathBuf,
        /// Also write the added links, in order.
        #[arg(long)]
        added: Option<PathBuf>,
    },
    /// Run a configured sweep and write result CSVs.
    Sweep {
        #[arg(long)]
        config: PathBuf,
        /// Override `master_seed` from the config.
        #[arg(long)]
        seed: Option<u64>,
        /// Override `outputs` from the config.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Mean-field κ and f_r predictions for added links.
    Predict {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        alphas: Vec<f64>,
        #[arg(long, value_delimiter = ',', required = true)]
        costs: Vec<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

fn write(path: &PathBuf, contents: String) -> anyhow::Result<()> {
    std::fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn execute(command: Command) -> anyhow::Result<()> {
    match command {
        Command::Generate { m, n, seed, output } => {
            let g = generators::generate_ba(&BaParams::new(m, n, seed))?;
            write(&output, generators::format_edge_list(&g, None))?;
            eprintln!("wrote BA({m}, {n}) with {} edges to {}", g.edge_count(), output.display());
        }
        Command::Attack {
            input,
            strategy,
            seed,
            static_order,
            interval,
            collapse,
            run_to_end,
            no_efficiency,
            output,
        } => {
            let loaded = generators::load_edge_list(&input)?;
            let kind = match strategy {
                AttackArg::Degree => AttackKind::Degree,
                AttackArg::Betweenness => AttackKind::Betweenness,
                AttackArg::Random => match seed {
                    Some(seed) => AttackKind::Random { seed },
                    None => bail!("--seed is required for the random strategy"),
                },
            };
            let strategy = AttackStrategy {
                kind,
                recompute: !static_order,
            };
            let options = AttackOptions {
                sample_interval: interval,
                collapse: match collapse {
                    CollapseArg::Kappa => CollapseCriterion::Kappa,
                    CollapseArg::Giant => CollapseCriterion::GiantComponent,
                },
                stop_at_collapse: !run_to_end,
                record_efficiency: !no_efficiency,
            };
            let trace = run_attack(&loaded.graph, &strategy, &options)?;
            let mut csv = String::from("removed,fraction_removed,largest_component,S,E,kappa\n");
            for s in &trace.samples {
                let _ = writeln!(
                    csv,
                    "{},{},{},{},{},{}",
                    s.removed,
                    sig6(s.fraction_removed),
                    s.largest_component,
                    sig6(s.s),
                    if s.e.is_nan() { String::new() } else { sig6(s.e) },
                    s.kappa.map(sig6).unwrap_or_default()
                );
            }
            write(&output, csv)?;
            match trace.critical_fraction {
                Some(c) => println!("f_t = {}", sig6(c.value)),
                None => println!("f_t = none (no collapse)"),
            }
        }
        Command::Enhance {
            input,
            strategy,
            alpha,
            cost,
            seed,
            output,
            added,
        } => {
            let mode = match (strategy, alpha) {
                (StrategyArg::Alpha, Some(a)) if a.is_finite() => EnhanceMode::Alpha(a),
                (StrategyArg::Alpha, _) => bail!("--strategy alpha needs a finite --alpha"),
                (_, Some(_)) => bail!("--alpha only applies to --strategy alpha"),
                (StrategyArg::Err, None) => EnhanceMode::Err,
                (StrategyArg::Ell, None) => EnhanceMode::Ell,
                (StrategyArg::Ehh, None) => EnhanceMode::Ehh,
            };
            let loaded = generators::load_edge_list(&input)?;
            let (g, links) = crate::enhance::enhance(&loaded.graph, &EnhancePlan { mode, cost, seed })?;
            write(&output, generators::format_edge_list(&g, Some(&loaded.labels)))?;
            if let Some(path) = added {
                let mut text = String::new();
                for &(u, v) in &links {
                    let _ = writeln!(text, "{} {}", loaded.labels[u], loaded.labels[v]);
                }
                write(&path, text)?;
            }
            eprintln!("added {} links", links.len());
        }
        Command::Sweep { config, seed, out } => {
            let mut cfg = SweepConfig::load(&config)?;
            if let Some(s) = seed {
                cfg.master_seed = s;
            }
            if let Some(o) = out {
                cfg.outputs = o;
            }
            let result = harness::run_sweep(&cfg)?;
            let paths = harness::write_csvs(&result, &cfg.outputs)?;
            eprintln!("{} enhancement runs logged", result.enhancement_runs);
            for p in paths {
                eprintln!("wrote {}", p.display());
            }
        }
        Command::Predict {
            input,
            alphas,
            costs,
            output,
        } => {
            let g = generators::load_edge_list(&input)?.graph;
            let e = g.edge_count();
            let mut csv = String::from("alpha,d,cost,kappa_pred,f_r_pred\n");
            for &alpha in &alphas {
                let ds: Vec<usize> = costs
                    .iter()
                    .map(|&c| crate::enhance::links_for_cost(e, c))
                    .collect();
                for (p, &c) in theory::predict_curve(&g, alpha, &ds)?.iter().zip(&costs) {
                    let _ = writeln!(
                        csv,
                        "{},{},{},{},{}",
                        sig6(alpha),
                        p.d,
                        sig6(c),
                        sig6(p.kappa_pred),
                        sig6(p.f_r_pred)
                    );
                }
            }
            write(&output, csv)?;
        }
    }
    Ok(())
}
