//! Layerings: ordered partitions `(V_1, ..., V_m)` of the vertex set such that
//! every edge joins vertices in the same or in consecutive layers.
//!
//! Layer indices are 1-based throughout. A [`Layering`] may leave some
//! vertices unassigned; such a layering is a layering of `G - Z` where `Z`
//! is the unassigned set (a "Z-layering").

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::report::{AxiomCheck, ValidationReport};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Layering {
    layers: Vec<Vec<Vertex>>,
    vertex_layer: Vec<Option<usize>>,
}

impl Layering {
    /// Builds a layering over vertices `0..n`. Layers may be empty and need
    /// not cover every vertex; a vertex may appear at most once.
    pub fn new(n: usize, layers: Vec<Vec<Vertex>>) -> Result<Self> {
        let mut vertex_layer = vec![None; n];
        let mut layers = layers;
        for (i, layer) in layers.iter_mut().enumerate() {
            layer.sort_unstable();
            for &v in layer.iter() {
                if v >= n {
                    return Err(Error::InvalidLayering(format!(
                        "vertex {v} out of range for {n} vertices"
                    )));
                }
                if let Some(prev) = vertex_layer[v] {
                    return Err(Error::InvalidLayering(format!(
                        "vertex {v} appears in layers {prev} and {}",
                        i + 1
                    )));
                }
                vertex_layer[v] = Some(i + 1);
            }
        }
        Ok(Layering {
            layers,
            vertex_layer,
        })
    }

    /// Layering given by a vertex → layer map (1-based). Layers are
    /// numbered `1..=max`.
    pub fn from_assignment(assignment: &[usize]) -> Result<Self> {
        let m = assignment.iter().copied().max().unwrap_or(0);
        let mut layers = vec![Vec::new(); m];
        for (v, &i) in assignment.iter().enumerate() {
            if i == 0 {
                return Err(Error::InvalidLayering(format!(
                    "vertex {v} assigned to layer 0; layers are 1-based"
                )));
            }
            layers[i - 1].push(v);
        }
        Layering::new(assignment.len(), layers)
    }

    pub fn num_layers(&self) -> usize {
        self.layers.len()
    }

    /// Number of vertices of the host graph.
    pub fn n(&self) -> usize {
        self.vertex_layer.len()
    }

    /// Layer `i` (1-based); out-of-range indices are empty, matching the
    /// convention `V_a = ∅` for `a ≤ 0` or `a > m`.
    pub fn layer(&self, i: i64) -> &[Vertex] {
        if i < 1 || i as usize > self.layers.len() {
            &[]
        } else {
            &self.layers[i as usize - 1]
        }
    }

    pub fn layers(&self) -> &[Vec<Vertex>] {
        &self.layers
    }

    pub fn layer_of(&self, v: Vertex) -> Option<usize> {
        self.vertex_layer[v]
    }

    /// Vertices not assigned to any layer.
    pub fn unassigned(&self) -> Vec<Vertex> {
        (0..self.n())
            .filter(|&v| self.vertex_layer[v].is_none())
            .collect()
    }

    /// Appends empty layers until there are at least `m`.
    pub fn padded(&self, m: usize) -> Layering {
        let mut out = self.clone();
        while out.layers.len() < m {
            out.layers.push(Vec::new());
        }
        out
    }
}

/// Checks that `ly` partitions `V(g)` and that every edge spans at most two
/// consecutive layers.
pub fn validate_layering(g: &Graph, ly: &Layering) -> ValidationReport {
    validate_z_layering(g, ly, &[])
}

/// Checks that `ly` is a Z-layering: a layering of `g - z`.
pub fn validate_z_layering(g: &Graph, ly: &Layering, z: &[Vertex]) -> ValidationReport {
    let mut report = ValidationReport::default();
    if ly.n() != g.n() {
        report.push(AxiomCheck::fail(
            "partition",
            Vec::new(),
            format!("layering is over {} vertices, graph has {}", ly.n(), g.n()),
        ));
        return report;
    }
    let mut in_z = vec![false; g.n()];
    for &v in z {
        if v < g.n() {
            in_z[v] = true;
        }
    }
    let bad = (0..g.n()).find(|&v| ly.layer_of(v).is_some() == in_z[v]);
    report.push(match bad {
        None => AxiomCheck::pass("partition"),
        Some(v) if in_z[v] => AxiomCheck::fail("partition", vec![v], "apex vertex is layered"),
        Some(v) => AxiomCheck::fail("partition", vec![v], "vertex in no layer"),
    });
    let bad_edge = g
        .edges()
        .find(|&(u, v)| match (ly.layer_of(u), ly.layer_of(v)) {
            (Some(a), Some(b)) => a.abs_diff(b) > 1,
            _ => false,
        });
    report.push(match bad_edge {
        None => AxiomCheck::pass("consecutive-edges"),
        Some((u, v)) => AxiomCheck::fail(
            "consecutive-edges",
            vec![u, v],
            format!(
                "edge joins layers {} and {}",
                ly.layer_of(u).unwrap(),
                ly.layer_of(v).unwrap()
            ),
        ),
    });
    report
}

/// BFS layering: `V_i` holds the vertices at distance `i - 1` from `roots`.
///
/// Components not reached from `roots` are layered from their minimum vertex
/// and appended after one empty separator layer each.
pub fn bfs_layering(g: &Graph, roots: &[Vertex]) -> Result<Layering> {
    if roots.is_empty() {
        return Err(Error::Precondition(
            "bfs_layering needs at least one root".into(),
        ));
    }
    if let Some(&r) = roots.iter().find(|&&r| r >= g.n()) {
        return Err(Error::Precondition(format!("root {r} out of range")));
    }
    let mut dist: Vec<Option<usize>> = vec![None; g.n()];
    let mut layers: Vec<Vec<Vertex>> = Vec::new();
    let mut sources: Vec<Vertex> = roots.to_vec();
    sources.sort_unstable();
    sources.dedup();
    loop {
        let offset = layers.len();
        let mut queue = VecDeque::new();
        for &r in &sources {
            dist[r] = Some(0);
            queue.push_back(r);
        }
        while let Some(v) = queue.pop_front() {
            let d = dist[v].unwrap();
            if layers.len() <= offset + d {
                layers.push(Vec::new());
            }
            layers[offset + d].push(v);
            for &u in g.neighbors(v) {
                if dist[u].is_none() {
                    dist[u] = Some(d + 1);
                    queue.push_back(u);
                }
            }
        }
        match (0..g.n()).find(|&v| dist[v].is_none()) {
            None => break,
            Some(next) => {
                layers.push(Vec::new());
                sources = vec![next];
            }
        }
    }
    Layering::new(g.n(), layers)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    #[test]
    fn path_layerings() {
        let g = path(3);
        let ly = Layering::new(3, vec![vec![0], vec![1], vec![2]]).unwrap();
        assert!(validate_layering(&g, &ly).passed());
        let ly = Layering::new(3, vec![vec![0, 2], vec![1]]).unwrap();
        assert!(validate_layering(&g, &ly).passed());
    }

    #[test]
    fn edge_skipping_a_layer_fails() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        let ly = Layering::new(2, vec![vec![0], vec![], vec![1]]).unwrap();
        let rep = validate_layering(&g, &ly);
        let check = rep.get("consecutive-edges").unwrap();
        assert!(!check.pass);
        assert_eq!(check.witness, vec![0, 1]);
    }

    #[test]
    fn uncovered_vertex_fails_partition() {
        let g = path(3);
        let ly = Layering::new(3, vec![vec![0], vec![1]]).unwrap();
        let rep = validate_layering(&g, &ly);
        assert_eq!(rep.get("partition").unwrap().witness, vec![2]);
    }

    #[test]
    fn duplicate_vertex_rejected() {
        assert!(Layering::new(2, vec![vec![0], vec![0, 1]]).is_err());
    }

    #[test]
    fn bfs_star_and_path() {
        let star = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let ly = bfs_layering(&star, &[0]).unwrap();
        assert_eq!(ly.layers(), &[vec![0], vec![1, 2, 3]]);
        let ly = bfs_layering(&path(4), &[0]).unwrap();
        assert_eq!(ly.num_layers(), 4);
        assert!(ly.layers().iter().all(|l| l.len() == 1));
    }

    #[test]
    fn bfs_disconnected_gets_separator_layer() {
        let g = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let ly = bfs_layering(&g, &[0]).unwrap();
        assert_eq!(ly.layers(), &[vec![0], vec![1], vec![], vec![2], vec![3]]);
        assert!(validate_layering(&g, &ly).passed());
    }

    #[test]
    fn bfs_rejects_empty_roots() {
        assert!(bfs_layering(&path(2), &[]).is_err());
    }

    #[test]
    fn z_layering_excludes_apex() {
        let g = Graph::from_edges(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let ly = Layering::new(3, vec![vec![0], vec![1]]).unwrap();
        assert!(validate_z_layering(&g, &ly, &[2]).passed());
        assert!(!validate_layering(&g, &ly).passed());
    }
}
