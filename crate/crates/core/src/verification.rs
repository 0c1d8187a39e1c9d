//! Independent checkers for colorings: monochromatic components,
//! list conformance, monochromatic paths and the hex-board oracle.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::gen_grid;
use crate::graph::{Graph, Vertex};

/// Colors are positive integers; `coloring[v]` is the color of `v`.
pub type Coloring = Vec<usize>;

struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClusterReport {
    /// `(color, vertices)` per monochromatic component, ordered by the
    /// smallest vertex.
    pub components: Vec<(usize, Vec<Vertex>)>,
    pub max_size: usize,
    pub per_color_max: BTreeMap<usize, usize>,
}

impl ClusterReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check_total(g: &Graph, coloring: &[usize]) -> Result<()> {
    if coloring.len() != g.n() {
        return Err(Error::Precondition(format!(
            "coloring has {} entries for {} vertices",
            coloring.len(),
            g.n()
        )));
    }
    if let Some(v) = coloring.iter().position(|&c| c == 0) {
        return Err(Error::Precondition(format!("vertex {v} is uncolored")));
    }
    Ok(())
}

/// Monochromatic components via union-find over same-colored edges.
pub fn monochromatic_components(g: &Graph, coloring: &[usize]) -> Result<ClusterReport> {
    check_total(g, coloring)?;
    let mut uf = UnionFind::new(g.n());
    for (u, v) in g.edges() {
        if coloring[u] == coloring[v] {
            uf.union(u, v);
        }
    }
    let mut index: Vec<Option<usize>> = vec![None; g.n()];
    let mut components: Vec<(usize, Vec<Vertex>)> = Vec::new();
    for v in 0..g.n() {
        let r = uf.find(v);
        let i = *index[r].get_or_insert_with(|| {
            components.push((coloring[v], Vec::new()));
            components.len() - 1
        });
        components[i].1.push(v);
    }
    let mut per_color_max = BTreeMap::new();
    for (c, comp) in &components {
        let e = per_color_max.entry(*c).or_insert(0);
        *e = (*e).max(comp.len());
    }
    let max_size = components.iter().map(|(_, c)| c.len()).max().unwrap_or(0);
    Ok(ClusterReport {
        components,
        max_size,
        per_color_max,
    })
}

/// Largest monochromatic component size; 0 for the empty graph.
pub fn clustering(g: &Graph, coloring: &[usize]) -> Result<usize> {
    Ok(monochromatic_components(g, coloring)?.max_size)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListConformance {
    pub ok: bool,
    /// First vertex whose color is outside its list.
    pub witness: Option<Vertex>,
}

/// Whether `coloring[v] ∈ lists[v]` for every vertex.
pub fn check_list_coloring(coloring: &[usize], lists: &[Vec<usize>]) -> ListConformance {
    let witness =
        (0..coloring.len().max(lists.len())).find(|&v| match (coloring.get(v), lists.get(v)) {
            (Some(c), Some(l)) => !l.contains(c),
            _ => true,
        });
    ListConformance {
        ok: witness.is_none(),
        witness,
    }
}

struct PathSearch<'a> {
    g: &'a Graph,
    coloring: &'a [usize],
    on_path: Vec<bool>,
    steps: u64,
    budget: u64,
    best: usize,
    target: usize,
}

impl PathSearch<'_> {
    /// DFS extending a simple path ending at `v` of `len` vertices.
    fn dfs(&mut self, v: Vertex, len: usize) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::Inconclusive(self.budget));
        }
        self.best = self.best.max(len);
        if self.best >= self.target {
            return Ok(());
        }
        self.on_path[v] = true;
        for &u in self.g.neighbors(v) {
            if !self.on_path[u] && self.coloring[u] == self.coloring[v] {
                self.dfs(u, len + 1)?;
                if self.best >= self.target {
                    break;
                }
            }
        }
        self.on_path[v] = false;
        Ok(())
    }
}

fn longest_path_upto(g: &Graph, coloring: &[usize], budget: u64, target: usize) -> Result<usize> {
    check_total(g, coloring)?;
    let mut s = PathSearch {
        g,
        coloring,
        on_path: vec![false; g.n()],
        steps: 0,
        budget,
        best: 0,
        target,
    };
    for v in 0..g.n() {
        s.dfs(v, 1)?;
        if s.best >= target {
            break;
        }
    }
    Ok(s.best)
}

/// Maximum number of vertices on a monochromatic simple path, by
/// exhaustive DFS limited to `budget` extension steps.
pub fn longest_monochromatic_path(g: &Graph, coloring: &[usize], budget: u64) -> Result<usize> {
    longest_path_upto(g, coloring, budget, usize::MAX)
}

pub const HEX_ORACLE_MAX_N: usize = 4;

/// Whether every 2-coloring of the triangulated `n × n` grid has a
/// monochromatic path on at least `n` vertices, by enumerating all
/// `2^{n²}` colorings.
pub fn hex_oracle(n: usize) -> Result<bool> {
    if n == 0 || n > HEX_ORACLE_MAX_N {
        return Err(Error::Precondition(format!(
            "hex oracle enumerates 2^(n^2) colorings; n must be in 1..={HEX_ORACLE_MAX_N}, got {n}"
        )));
    }
    let g = gen_grid(n, true)?.graph;
    let cells = n * n;
    let failures = (0u64..1 << cells)
        .into_par_iter()
        .map(|mask| {
            let coloring: Vec<usize> = (0..cells).map(|v| 1 + ((mask >> v) & 1) as usize).collect();
            longest_path_upto(&g, &coloring, 1 << 24, n).map(|len| len < n)
        })
        .try_fold(|| false, |acc, r| r.map(|bad| acc || bad))
        .try_reduce(|| false, |a, b| Ok(a || b))?;
    Ok(!failures)
}
