//! Undirected simple graphs and the structural measures used by the walk code.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};

/// Undirected graph on nodes `0..n` without multi-edges.
///
/// Edges are kept in insertion order as `(min, max)` pairs; each node keeps a
/// sorted neighbor list. A self-edge `(i, i)` is only accepted when the graph
/// was created with self-edges enabled; it sets `a_ii = 1` and counts once
/// towards the degree of `i`.
///
/// Two graphs compare equal when they have the same nodes, edge set and
/// self-edge flag, whatever order the edges were added in.
#[derive(Debug, Clone, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    self_edges: bool,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.self_edges == other.self_edges && self.neighbors == other.neighbors
    }
}

impl Graph {
    pub fn new(n: usize, allow_self_edges: bool) -> Self {
        Graph { n, edges: Vec::new(), neighbors: vec![Vec::new(); n], self_edges: allow_self_edges }
    }

    /// Builds a graph from 1-based node labels.
    ///
    /// Fails on labels outside `1..=n`, on repeated pairs (in either
    /// orientation), and on self-pairs unless `allow_self_edges` is set.
    pub fn from_labels(n: usize, edges: &[(usize, usize)], allow_self_edges: bool) -> Result<Self> {
        let mut g = Graph::new(n, allow_self_edges);
        for &(u, v) in edges {
            for label in [u, v] {
                if label == 0 || label > n {
                    return Err(Error::NodeOutOfRange { label, n });
                }
            }
            g.add_edge(u - 1, v - 1)?;
        }
        Ok(g)
    }

    /// Same as [`Graph::from_labels`] with 0-based indices.
    pub fn from_indices(n: usize, edges: &[(usize, usize)], allow_self_edges: bool) -> Result<Self> {
        let mut g = Graph::new(n, allow_self_edges);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Inserts the undirected edge `{u, v}` (0-based). Errors carry 1-based labels.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::NodeOutOfRange { label: x + 1, n: self.n });
            }
        }
        if u == v && !self.self_edges {
            return Err(Error::SelfEdge { node: u + 1 });
        }
        let (a, b) = if u <= v { (u, v) } else { (v, u) };
        match self.neighbors[a].binary_search(&b) {
            Ok(_) => return Err(Error::DuplicateEdge { u: a + 1, v: b + 1 }),
            Err(pos) => self.neighbors[a].insert(pos, b),
        }
        if a != b {
            let pos = self.neighbors[b].binary_search(&a).unwrap_err();
            self.neighbors[b].insert(pos, a);
        }
        self.edges.push((a, b));
        Ok(())
    }

    /// Adds `{u, v}` unless it is already present or is a forbidden self-edge.
    /// Returns whether the edge was inserted.
    pub(crate) fn try_add_edge(&mut self, u: usize, v: usize) -> bool {
        if (u == v && !self.self_edges) || self.has_edge(u, v) {
            return false;
        }
        self.add_edge(u, v).is_ok()
    }

    pub fn n_nodes(&self) -> usize {
        self.n
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn allows_self_edges(&self) -> bool {
        self.self_edges
    }

    /// Edges in insertion order, each as `(min, max)`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edges sorted lexicographically.
    pub fn sorted_edges(&self) -> Vec<(usize, usize)> {
        let mut e = self.edges.clone();
        e.sort_unstable();
        e
    }

    /// Sorted neighbors of `i`; contains `i` itself if it carries a self-edge.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.neighbors[u].binary_search(&v).is_ok()
    }

    /// `a_ij` as 0 or 1.
    pub fn adjacency(&self, i: usize, j: usize) -> u8 {
        u8::from(self.has_edge(i, j))
    }

    /// `k_i = sum_j a_ij`.
    pub fn degree(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|i| self.degree(i)).collect()
    }

    /// Fraction of pairs of distinct neighbors of `i` that are adjacent.
    /// Nodes with fewer than two neighbors have clustering 0; self-edges are ignored.
    pub fn local_clustering(&self, i: usize) -> f64 {
        let nbrs: Vec<usize> = self.neighbors[i].iter().copied().filter(|&j| j != i).collect();
        let k = nbrs.len();
        if k < 2 {
            return 0.0;
        }
        let mut links = 0usize;
        for (a, &u) in nbrs.iter().enumerate() {
            for &v in &nbrs[a + 1..] {
                if self.has_edge(u, v) {
                    links += 1;
                }
            }
        }
        (2 * links) as f64 / (k * (k - 1)) as f64
    }

    /// Mean of [`Graph::local_clustering`] over all nodes (0 for an empty graph).
    pub fn mean_clustering(&self) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        (0..self.n).map(|i| self.local_clustering(i)).sum::<f64>() / self.n as f64
    }

    /// Hop distances from `source`; `None` marks unreachable nodes.
    pub fn bfs_distances(&self, source: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n];
        let mut queue = VecDeque::new();
        dist[source] = Some(0);
        queue.push_back(source);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap_or(0);
            for &w in &self.neighbors[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path hop count, or `None` when `j` is unreachable from `i`.
    pub fn geodesic_distance(&self, i: usize, j: usize) -> Option<usize> {
        if i == j {
            return Some(0);
        }
        self.bfs_distances(i)[j]
    }

    /// Component index per node, numbered in order of smallest member.
    pub fn component_labels(&self) -> Vec<usize> {
        let mut label = vec![usize::MAX; self.n];
        let mut next = 0;
        for s in 0..self.n {
            if label[s] != usize::MAX {
                continue;
            }
            let mut stack = vec![s];
            label[s] = next;
            while let Some(u) = stack.pop() {
                for &w in &self.neighbors[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    pub fn n_components(&self) -> usize {
        self.component_labels().iter().copied().max().map_or(0, |m| m + 1)
    }

    pub fn is_connected(&self) -> bool {
        self.n_components() <= 1
    }

    /// Disjoint union: nodes of `other` are shifted by `self.n_nodes()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let mut g = Graph::new(self.n + other.n, self.self_edges || other.self_edges);
        for &(u, v) in &self.edges {
            g.add_edge(u, v).expect("edges of a valid graph");
        }
        for &(u, v) in &other.edges {
            g.add_edge(u + self.n, v + self.n).expect("edges of a valid graph");
        }
        g
    }
}
