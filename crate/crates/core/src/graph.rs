//! Undirected simple graph over dense node ids.
//!
//! Nodes are never reindexed: `remove_node` clears the node's incident edges
//! and marks it dead, so ids stay stable across an attack run. Every query
//! that aggregates over nodes (degree moments, components, distances) only
//! looks at alive nodes.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Undirected simple graph with sorted adjacency lists and an alive mask.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    alive: Vec<bool>,
    alive_count: usize,
    edge_count: usize,
}

/// First and second degree moments over alive nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DegreeStats {
    pub mean_degree: f64,
    pub second_moment: f64,
    /// `second_moment / mean_degree`.
    pub kappa: f64,
}

impl DegreeStats {
    /// Builds the moments from raw sums over `alive` nodes.
    pub fn from_sums(alive: usize, degree_sum: u64, degree_sq_sum: u64) -> Result<Self> {
        if alive == 0 {
            return Err(Error::NoAliveNodes);
        }
        if degree_sum == 0 {
            return Err(Error::ZeroDegree);
        }
        let n = alive as f64;
        Ok(DegreeStats {
            mean_degree: degree_sum as f64 / n,
            second_moment: degree_sq_sum as f64 / n,
            kappa: degree_sq_sum as f64 / degree_sum as f64,
        })
    }
}

impl Graph {
    /// Graph with `n` alive nodes and no edges.
    pub fn new(n: usize) -> Self {
        Graph {
            adjacency: vec![Vec::new(); n],
            alive: vec![true; n],
            alive_count: n,
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops and duplicates.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 0..n {
            for v in u + 1..n {
                g.insert_unchecked(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Self {
        let mut g = Graph::new(n);
        if n >= 3 {
            for u in 0..n {
                g.insert_unchecked(u, (u + 1) % n);
            }
        } else if n == 2 {
            g.insert_unchecked(0, 1);
        }
        g
    }

    pub fn path(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.insert_unchecked(u - 1, u);
        }
        g
    }

    /// Star on `n` nodes with node 0 as the hub.
    pub fn star(n: usize) -> Self {
        let mut g = Graph::new(n);
        for u in 1..n {
            g.insert_unchecked(0, u);
        }
        g
    }

    /// Total number of node slots, dead ones included.
    pub fn node_count(&self) -> usize {
        self.adjacency.len()
    }

    pub fn alive_count(&self) -> usize {
        self.alive_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn is_alive(&self, u: usize) -> bool {
        self.alive.get(u).copied().unwrap_or(false)
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    /// Sorted neighbor ids of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adjacency[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adjacency.len() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn alive_nodes(&self) -> impl Iterator<Item = usize> + '_ {
        self.alive
            .iter()
            .enumerate()
            .filter_map(|(u, &a)| a.then_some(u))
    }

    /// Edges as `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency.iter().enumerate().flat_map(|(u, nbrs)| {
            nbrs.iter()
                .copied()
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    fn check_alive(&self, u: usize) -> Result<()> {
        if u >= self.adjacency.len() {
            return Err(Error::NodeOutOfRange {
                node: u,
                node_count: self.adjacency.len(),
            });
        }
        if !self.alive[u] {
            return Err(Error::DeadNode(u));
        }
        Ok(())
    }

    fn insert_unchecked(&mut self, u: usize, v: usize) {
        if let Err(pos) = self.adjacency[u].binary_search(&v) {
            self.adjacency[u].insert(pos, v);
        }
        if let Err(pos) = self.adjacency[v].binary_search(&u) {
            self.adjacency[v].insert(pos, u);
        }
        self.edge_count += 1;
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_alive(u)?;
        self.check_alive(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        let pos_u = match self.adjacency[u].binary_search(&v) {
            Ok(_) => return Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(p) => p,
        };
        self.adjacency[u].insert(pos_u, v);
        let pos_v = self.adjacency[v]
            .binary_search(&u)
            .expect_err("adjacency symmetry");
        self.adjacency[v].insert(pos_v, u);
        self.edge_count += 1;
        Ok(())
    }

    /// Marks `u` dead and drops its incident edges.
    pub fn remove_node(&mut self, u: usize) -> Result<()> {
        self.check_alive(u)?;
        let nbrs = std::mem::take(&mut self.adjacency[u]);
        for &v in &nbrs {
            let list = &mut self.adjacency[v];
            if let Ok(pos) = list.binary_search(&u) {
                list.remove(pos);
            }
        }
        self.edge_count -= nbrs.len();
        self.alive[u] = false;
        self.alive_count -= 1;
        Ok(())
    }

    /// Raw `(Σk, Σk²)` over alive nodes.
    pub fn degree_sums(&self) -> (u64, u64) {
        self.alive_nodes().fold((0, 0), |(s, sq), u| {
            let k = self.degree(u) as u64;
            (s + k, sq + k * k)
        })
    }

    pub fn degree_stats(&self) -> Result<DegreeStats> {
        let (sum, sq) = self.degree_sums();
        DegreeStats::from_sums(self.alive_count, sum, sq)
    }

    /// Unweighted hop distances from `source`; `None` marks unreachable or dead nodes.
    pub fn bfs_distances(&self, source: usize) -> Result<Vec<Option<usize>>> {
        self.check_alive(source)?;
        let mut dist = vec![None; self.node_count()];
        dist[source] = Some(0);
        let mut queue = VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &v in &self.adjacency[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Component label per node (`usize::MAX` for dead nodes) and the number of components.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.node_count();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for s in self.alive_nodes() {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = count;
            stack.push(s);
            while let Some(u) = stack.pop() {
                for &v in &self.adjacency[u] {
                    if label[v] == usize::MAX {
                        label[v] = count;
                        stack.push(v);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    /// Node count of the largest connected component among alive nodes.
    pub fn largest_component_size(&self) -> usize {
        let (label, count) = self.component_labels();
        let mut sizes = vec![0usize; count];
        for l in label.into_iter().filter(|&l| l != usize::MAX) {
            sizes[l] += 1;
        }
        sizes.into_iter().max().unwrap_or(0)
    }

    /// Largest component size divided by the number of alive nodes.
    pub fn largest_component_fraction(&self) -> Result<f64> {
        if self.alive_count == 0 {
            return Err(Error::NoAliveNodes);
        }
        Ok(self.largest_component_size() as f64 / self.alive_count as f64)
    }

    /// Checks adjacency symmetry, absence of self-loops, sortedness and the edge counter.
    pub fn check_invariants(&self) -> bool {
        let mut total = 0;
        for (u, nbrs) in self.adjacency.iter().enumerate() {
            if !self.alive[u] && !nbrs.is_empty() {
                return false;
            }
            if nbrs.windows(2).any(|w| w[0] >= w[1]) {
                return false;
            }
            for &v in nbrs {
                if v == u || !self.alive[v] || self.adjacency[v].binary_search(&u).is_err() {
                    return false;
                }
            }
            total += nbrs.len();
        }
        total == 2 * self.edge_count && self.alive.iter().filter(|&&a| a).count() == self.alive_count
    }
}
