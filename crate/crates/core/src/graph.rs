//! Undirected simple graphs on contiguous vertex ids `0..n`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// An undirected simple graph stored as sorted adjacency lists.
///
/// No self-loops and no parallel edges; every neighbor list is sorted and
/// the adjacency relation is symmetric.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge list. Repeated edges are merged; self-loops
    /// and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut m = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            m += list.len();
        }
        Ok(Graph { adj, m: m / 2 })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn num_edges(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// A copy of `self` with the extra edges added (merged if present).
    pub fn with_edges<I>(&self, extra: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        Graph::from_edges(self.n(), self.edges().chain(extra))
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in
    /// the given order.
    pub fn induced(&self, vertices: &[Vertex]) -> Subgraph {
        let mut to_local = vec![None; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            to_local[v] = Some(i);
        }
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &u in &self.adj[v] {
                if let Some(j) = to_local[u] {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let graph = Graph::from_edges(vertices.len(), edges).expect("induced edges are valid");
        Subgraph {
            graph,
            to_global: vertices.to_vec(),
            to_local,
        }
    }

    /// Connected components of the subgraph induced by the vertices with
    /// `mask[v] == true`, each sorted, ordered by minimum vertex.
    pub fn components_within(&self, mask: &[bool]) -> Vec<Vec<Vertex>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n() {
            if !mask[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &u in &self.adj[v] {
                    if mask[u] && !seen[u] {
                        seen[u] = true;
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Connected components of the whole graph.
    pub fn components(&self) -> Vec<Vec<Vertex>> {
        self.components_within(&vec![true; self.n()])
    }

    /// `N(X) = ⋃_{v∈X} N(v) \ X`, sorted.
    pub fn neighborhood_of_set(&self, set: &[Vertex]) -> Vec<Vertex> {
        let mut inside = vec![false; self.n()];
        for &v in set {
            inside[v] = true;
        }
        let mut hit = vec![false; self.n()];
        for &v in set {
            for &u in &self.adj[v] {
                if !inside[u] {
                    hit[u] = true;
                }
            }
        }
        (0..self.n()).filter(|&u| hit[u]).collect()
    }
}

/// An induced subgraph together with its vertex relabelling.
#[derive(Debug, Clone)]
pub struct Subgraph {
    pub graph: Graph,
    /// Local id → vertex of the host graph.
    pub to_global: Vec<Vertex>,
    /// Host vertex → local id, when present.
    pub to_local: Vec<Option<Vertex>>,
}
