//! Sweep configuration in a flat `key = value` text format.
//!
//! ```text
//! # BA(3, 1000) ELL sweep
//! source = ba
//! m = 3
//! n = 1000
//! graph_seed = 1
//! strategies = ELL, ERR
//! costs = 0, 0.1, 0.2
//! trials = 30
//! master_seed = 42
//! attack = degree
//! outputs = out
//! ```
//!
//! Lists are comma-separated. `#` starts a comment line.

use std::collections::BTreeMap;
use std::path::PathBuf;

use crate::attack::{AttackKind, AttackStrategy, CollapseCriterion};
use crate::enhance::EnhanceMode;
use crate::error::{Error, Result};
use crate::generators::BaParams;

#[derive(Debug, Clone, PartialEq)]
pub enum GraphSource {
    Ba(BaParams),
    File(PathBuf),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub source: GraphSource,
    /// Enhancement strategies, α values already expanded into `Alpha` modes.
    pub strategies: Vec<EnhanceMode>,
    /// Non-negative, strictly ascending.
    pub costs: Vec<f64>,
    pub trials: usize,
    pub master_seed: u64,
    /// Attack used for the targeted critical fraction. A random attack
    /// draws its order from the per-trial seed.
    pub attack: AttackStrategy,
    pub collapse: CollapseCriterion,
    /// Also report efficiency of the enhanced graph.
    pub efficiency: bool,
    /// Random-removal trials for the empirical f_r (0 disables it).
    pub empirical_trials: usize,
    pub outputs: PathBuf,
}

impl SweepConfig {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        if self.strategies.is_empty() {
            return Err(Error::Config("no strategies or alphas given".into()));
        }
        if self.costs.is_empty() {
            return Err(Error::Config("costs must not be empty".into()));
        }
        if self.costs.iter().any(|c| !(c.is_finite() && *c >= 0.0)) {
            return Err(Error::Config("costs must be finite and non-negative".into()));
        }
        if self.costs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Config("costs must be strictly ascending".into()));
        }
        if let GraphSource::Ba(p) = &self.source {
            p.validate()?;
        }
        Ok(())
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut kv: BTreeMap<String, (usize, String)> = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| Error::Parse {
                line: i + 1,
                message: format!("expected `key = value`, found {line:?}"),
            })?;
            let key = k.trim().to_string();
            if kv.insert(key.clone(), (i + 1, v.trim().to_string())).is_some() {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("duplicate key {key:?}"),
                });
            }
        }
        let mut cfg = Fields { kv };
        let config = cfg.build()?;
        if let Some((key, (line, _))) = cfg.kv.into_iter().next() {
            return Err(Error::Parse {
                line,
                message: format!("unknown key {key:?}"),
            });
        }
        config.validate()?;
        Ok(config)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path.as_ref())
            .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
        Self::parse(&text)
    }
}

struct Fields {
    kv: BTreeMap<String, (usize, String)>,
}

impl Fields {
    fn take(&mut self, key: &str) -> Option<(usize, String)> {
        self.kv.remove(key)
    }

    fn parsed<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<T>> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v.parse().map(Some).map_err(|_| Error::Parse {
                line,
                message: format!("bad value {v:?} for {key}"),
            }),
        }
    }

    fn required<T: std::str::FromStr>(&mut self, key: &str) -> Result<T> {
        self.parsed(key)?
            .ok_or_else(|| Error::Config(format!("missing required key {key:?}")))
    }

    fn list<T: std::str::FromStr>(&mut self, key: &str) -> Result<Option<Vec<T>>> {
        match self.take(key) {
            None => Ok(None),
            Some((line, v)) => v
                .split(',')
                .map(str::trim)
                .filter(|s| !s.is_empty())
                .map(|s| {
                    s.parse().map_err(|_| Error::Parse {
                        line,
                        message: format!("bad list item {s:?} for {key}"),
                    })
                })
                .collect::<Result<Vec<T>>>()
                .map(Some),
        }
    }

    fn build(&mut self) -> Result<SweepConfig> {
        let source_kind: String = self.parsed("source")?.unwrap_or_else(|| "ba".into());
        let source = match source_kind.as_str() {
            "ba" => GraphSource::Ba(BaParams::new(
                self.required("m")?,
                self.required("n")?,
                self.parsed("graph_seed")?.unwrap_or(0),
            )),
            "file" => GraphSource::File(PathBuf::from(self.required::<String>("file")?)),
            other => return Err(Error::Config(format!("unknown source {other:?}"))),
        };

        let alphas: Vec<f64> = self.list("alphas")?.unwrap_or_default();
        if alphas.iter().any(|a| !a.is_finite()) {
            return Err(Error::Config("alphas must be finite".into()));
        }
        let names: Option<Vec<String>> = self.list("strategies")?;
        let mut strategies = Vec::new();
        match names {
            None => strategies.extend(alphas.iter().map(|&a| EnhanceMode::Alpha(a))),
            Some(names) => {
                if !alphas.is_empty() && !names.iter().any(|n| n == "alpha") {
                    return Err(Error::Config("alphas given but strategies lacks `alpha`".into()));
                }
                for name in names {
                    if name == "alpha" {
                        if alphas.is_empty() {
                            return Err(Error::Config("strategy `alpha` needs an `alphas` list".into()));
                        }
                        strategies.extend(alphas.iter().map(|&a| EnhanceMode::Alpha(a)));
                    } else {
                        strategies.push(name.parse()?);
                    }
                }
            }
        }

        let kind = match self.parsed::<String>("attack")?.as_deref() {
            None | Some("degree") => AttackKind::Degree,
            Some("betweenness") => AttackKind::Betweenness,
            Some("random") => AttackKind::Random { seed: 0 },
            Some(other) => return Err(Error::Config(format!("unknown attack {other:?}"))),
        };
        let recompute = self.parsed("recompute")?.unwrap_or(true);
        let collapse = match self.parsed::<String>("collapse")?.as_deref() {
            None | Some("kappa") => CollapseCriterion::Kappa,
            Some("giant") => CollapseCriterion::GiantComponent,
            Some(other) => return Err(Error::Config(format!("unknown collapse criterion {other:?}"))),
        };

        Ok(SweepConfig {
            source,
            strategies,
            costs: self.list("costs")?.unwrap_or_default(),
            trials: self.parsed("trials")?.unwrap_or(100),
            master_seed: self.required("master_seed")?,
            attack: AttackStrategy { kind, recompute },
            collapse,
            efficiency: self.parsed("efficiency")?.unwrap_or(false),
            empirical_trials: self.parsed("empirical_trials")?.unwrap_or(0),
            outputs: PathBuf::from(self.parsed::<String>("outputs")?.unwrap_or_else(|| ".".into())),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const BASIC: &str = "\
# comment
source = ba
m = 3
n = 200
graph_seed = 5
alphas = -2, 0
strategies = alpha, ELL
costs = 0, 0.1
trials = 3
master_seed = 9
outputs = out
";

    #[test]
    fn parses_basic() {
        let c = SweepConfig::parse(BASIC).unwrap();
        assert_eq!(c.source, GraphSource::Ba(BaParams::new(3, 200, 5)));
        assert_eq!(
            c.strategies,
            vec![EnhanceMode::Alpha(-2.0), EnhanceMode::Alpha(0.0), EnhanceMode::Ell]
        );
        assert_eq!(c.costs, vec![0.0, 0.1]);
        assert_eq!(c.trials, 3);
        assert_eq!(c.attack, AttackStrategy::degree());
        assert_eq!(c.outputs, PathBuf::from("out"));
    }

    #[test]
    fn alphas_without_strategies_key() {
        let c = SweepConfig::parse("m=2\nn=10\nalphas=1\ncosts=0\nmaster_seed=1\n").unwrap();
        assert_eq!(c.strategies, vec![EnhanceMode::Alpha(1.0)]);
        assert_eq!(c.trials, 100);
    }

    #[test]
    fn rejects_bad_configs() {
        for bad in [
            "m=2\nn=10\nstrategies=ELL\ncosts=0.2,0.1\nmaster_seed=1\n",
            "m=2\nn=10\nstrategies=ELL\ncosts=0\nmaster_seed=1\ntrials=0\n",
            "m=2\nn=10\nstrategies=ELL\ncosts=0\nmaster_seed=1\ncolour=red\n",
            "m=2\nn=10\nstrategies=ELL\ncosts=0\n",
            "m=2\nn=10\nstrategies=XYZ\ncosts=0\nmaster_seed=1\n",
            "m=2\nn=10\nstrategies=ELL\nalphas=1\ncosts=0\nmaster_seed=1\n",
            "m=2\nn=10\nstrategies=ELL\ncosts=0\nmaster_seed=1\nm=3\n",
            "m=2\nn=2\nstrategies=ELL\ncosts=0\nmaster_seed=1\n",
            "just words\n",
        ] {
            assert!(SweepConfig::parse(bad).is_err(), "{bad}");
        }
    }
}
