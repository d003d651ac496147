//! BA(m, N) preferential-attachment generation and edge-list file I/O.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng::{self, rng_from_seed};

/// Parameters of the BA(m, N) growth model.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BaParams {
    /// Links attached by each new node.
    pub m: usize,
    /// Final node count.
    pub n: usize,
    pub seed: u64,
}

impl BaParams {
    pub fn new(m: usize, n: usize, seed: u64) -> Self {
        BaParams { m, n, seed }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m == 0 || self.n <= self.m {
            return Err(Error::InvalidBaParams {
                m: self.m,
                n: self.n,
            });
        }
        Ok(())
    }

    /// `m(m-1)/2 + m(n-m)`.
    pub fn expected_edges(&self) -> usize {
        self.m * (self.m - 1) / 2 + self.m * (self.n - self.m)
    }
}

/// Grows a BA graph from a complete seed graph on `m` nodes. Each new node
/// attaches to `m` distinct existing nodes chosen with probability
/// proportional to their current degree.
pub fn generate_ba(params: &BaParams) -> Result<Graph> {
    params.validate()?;
    let BaParams { m, n, seed } = *params;
    let mut rng = rng_from_seed(seed);
    let mut g = Graph::new(n);
    for u in 0..m {
        for v in u + 1..m {
            g.add_edge(u, v)?;
        }
    }

    // Each edge contributes both endpoints, so a uniform pick from this list
    // is a degree-proportional pick of a node.
    let mut endpoints: Vec<usize> = Vec::with_capacity(2 * params.expected_edges());
    for (u, v) in g.edges() {
        endpoints.push(u);
        endpoints.push(v);
    }

    let mut targets = Vec::with_capacity(m);
    for new in m..n {
        targets.clear();
        if endpoints.is_empty() {
            // m = 1 starts from a single isolated node.
            targets.push(0);
        } else {
            while targets.len() < m {
                let t = endpoints[rng::index(&mut rng, endpoints.len())];
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
        }
        for &t in &targets {
            g.add_edge(new, t)?;
            endpoints.push(new);
            endpoints.push(t);
        }
    }
    Ok(g)
}

/// A graph read from an edge-list file together with the original labels,
/// indexed by dense node id.
#[derive(Debug, Clone, PartialEq)]
pub struct LoadedGraph {
    pub graph: Graph,
    pub labels: Vec<String>,
}

/// Parses edge-list text: one `u v` pair per line, `#` comments, blank
/// lines skipped. Labels are remapped to dense ids in order of first
/// appearance; repeated and reversed edges collapse to one.
pub fn parse_edge_list(text: &str) -> Result<LoadedGraph> {
    let mut ids: HashMap<&str, usize> = HashMap::new();
    let mut labels: Vec<String> = Vec::new();
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (a, b) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => (a, b),
            _ => {
                return Err(Error::Parse {
                    line: line_no,
                    message: format!("expected two labels, found {line:?}"),
                })
            }
        };
        if a == b {
            return Err(Error::Parse {
                line: line_no,
                message: format!("self-loop on {a:?}"),
            });
        }
        let mut ends = [0usize; 2];
        for (slot, label) in ends.iter_mut().zip([a, b]) {
            let next = labels.len();
            *slot = *ids.entry(label).or_insert_with(|| {
                labels.push(label.to_string());
                next
            });
        }
        edges.push((ends[0], ends[1]));
    }
    let mut graph = Graph::new(labels.len());
    for (u, v) in edges {
        if !graph.has_edge(u, v) {
            graph.add_edge(u, v)?;
        }
    }
    Ok(LoadedGraph { graph, labels })
}

pub fn load_edge_list(path: impl AsRef<Path>) -> Result<LoadedGraph> {
    let text = std::fs::read_to_string(path.as_ref())
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))?;
    parse_edge_list(&text)
}

/// Canonical edge-list text: a comment header, then edges `u v` with
/// `u < v` in ascending id order. When `labels` is given they replace ids.
pub fn format_edge_list(g: &Graph, labels: Option<&[String]>) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# nodes {} edges {}",
        g.alive_count(),
        g.edge_count()
    );
    for (u, v) in g.edges() {
        match labels {
            Some(l) => {
                let _ = writeln!(out, "{} {}", l[u], l[v]);
            }
            None => {
                let _ = writeln!(out, "{u} {v}");
            }
        }
    }
    out
}

pub fn save_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    std::fs::write(path.as_ref(), format_edge_list(g, None))
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}

/// Writes a bare list of edges (e.g. links added by an enhancement run).
pub fn save_edges(edges: &[(usize, usize)], path: impl AsRef<Path>) -> Result<()> {
    let mut out = String::new();
    for (u, v) in edges {
        let _ = writeln!(out, "{u} {v}");
    }
    std::fs::write(path.as_ref(), out)
        .map_err(|e| Error::Io(format!("{}: {e}", path.as_ref().display())))
}
