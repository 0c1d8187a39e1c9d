//! Structured graph families with certified layered tree-decompositions.

use crate::decomposition::{LayeredTreeDecomposition, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layering::Layering;

/// A generated graph with its certified layered tree-decomposition.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Graph,
    pub ltd: LayeredTreeDecomposition,
    pub max_degree: usize,
}

impl Instance {
    fn new(graph: Graph, td: TreeDecomposition, layering: Layering) -> Self {
        let max_degree = graph.max_degree();
        Instance {
            graph,
            ltd: LayeredTreeDecomposition::new(td, layering),
            max_degree,
        }
    }
}

/// The `n × n` grid with vertex `(r, c)` at id `r·n + c`, optionally with the
/// diagonal `(r, c)(r+1, c+1)` in every unit cell.
///
/// Layers are the rows; the decomposition is the path of bags
/// `columns j ∪ j+1`, so the layered width is 2 (1 when `n = 1`).
pub fn gen_grid(n: usize, triangulated: bool) -> Result<Instance> {
    if n == 0 {
        return Err(Error::Precondition("grid side must be at least 1".into()));
    }
    let id = |r: usize, c: usize| r * n + c;
    let mut edges = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if c + 1 < n {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < n {
                edges.push((id(r, c), id(r + 1, c)));
            }
            if triangulated && r + 1 < n && c + 1 < n {
                edges.push((id(r, c), id(r + 1, c + 1)));
            }
        }
    }
    let graph = Graph::from_edges(n * n, edges)?;
    let column = |c: usize| (0..n).map(move |r| id(r, c));
    let bags = if n == 1 {
        vec![vec![0]]
    } else {
        (0..n - 1)
            .map(|j| column(j).chain(column(j + 1)).collect())
            .collect()
    };
    let layering = Layering::new(
        n * n,
        (0..n).map(|r| (0..n).map(|c| id(r, c)).collect()).collect(),
    )?;
    Ok(Instance::new(
        graph,
        TreeDecomposition::path(bags),
        layering,
    ))
}

/// The `rows × cols` grid (vertex `(r, c)` at id `r·cols + c`, layers = rows)
/// with a path decomposition of width `rows`: order the vertices column by
/// column and take every window of `rows + 1` consecutive vertices.
pub fn gen_grid_strip(rows: usize, cols: usize) -> Result<Instance> {
    if rows == 0 || cols == 0 {
        return Err(Error::Precondition(
            "grid dimensions must be at least 1".into(),
        ));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    let n = rows * cols;
    let graph = Graph::from_edges(n, edges)?;
    let order: Vec<Vertex> = (0..cols)
        .flat_map(|c| (0..rows).map(move |r| id(r, c)))
        .collect();
    let bags = if n <= rows + 1 {
        vec![order.clone()]
    } else {
        (0..n - rows)
            .map(|p| order[p..=p + rows].to_vec())
            .collect()
    };
    let layering = Layering::new(
        n,
        (0..rows)
            .map(|r| (0..cols).map(|c| id(r, c)).collect())
            .collect(),
    )?;
    Ok(Instance::new(
        graph,
        TreeDecomposition::path(bags),
        layering,
    ))
}

/// The path `0 - 1 - ... - (n-1)` with singleton layers and bags `{i, i+1}`.
pub fn gen_path(n: usize) -> Result<Instance> {
    if n == 0 {
        return Err(Error::Precondition("path needs at least one vertex".into()));
    }
    let graph = Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))?;
    let bags = if n == 1 {
        vec![vec![0]]
    } else {
        (1..n).map(|i| vec![i - 1, i]).collect()
    };
    let layering = Layering::new(n, (0..n).map(|i| vec![i]).collect())?;
    Ok(Instance::new(
        graph,
        TreeDecomposition::path(bags),
        layering,
    ))
}

/// `K_{s,t}` with parts `A = 0..s` and `B = s..s+t`.
pub fn gen_kst(s: usize, t: usize) -> Graph {
    Graph::from_edges(s + t, (0..s).flat_map(|a| (s..s + t).map(move |b| (a, b))))
        .expect("complete bipartite edges are valid")
}

/// `K_{s,t}` with layering `A`, `B` and the path of bags `A ∪ {b}`; its
/// layered width is `max(s, 1)`.
pub fn gen_kst_instance(s: usize, t: usize) -> Result<Instance> {
    if s == 0 || t == 0 {
        return Err(Error::Precondition("K_{s,t} needs s, t >= 1".into()));
    }
    let graph = gen_kst(s, t);
    let bags = (s..s + t)
        .map(|b| (0..s).chain(std::iter::once(b)).collect())
        .collect();
    let layering = Layering::new(s + t, vec![(0..s).collect(), (s..s + t).collect()])?;
    Ok(Instance::new(
        graph,
        TreeDecomposition::path(bags),
        layering,
    ))
}

/// Adds `count` new vertices `n..n+count`, each adjacent to every original
/// vertex. Returns the graph and the apex set `Z`.
pub fn add_apex(g: &Graph, count: usize) -> Result<(Graph, Vec<Vertex>)> {
    if count == 0 {
        return Err(Error::Precondition("apex count must be at least 1".into()));
    }
    let n = g.n();
    let z: Vec<Vertex> = (n..n + count).collect();
    let extra = z.iter().flat_map(|&a| (0..n).map(move |v| (v, a)));
    let graph = Graph::from_edges(n + count, g.edges().chain(extra))?;
    Ok((graph, z))
}

/// `td` with every vertex of `z` added to every bag; valid for the apexed
/// graph whenever `td` is valid for the original.
pub fn apexed_decomposition(td: &TreeDecomposition, z: &[Vertex]) -> TreeDecomposition {
    let bags = td
        .bags()
        .iter()
        .map(|b| b.iter().chain(z).copied().collect())
        .collect();
    td.with_bags(bags).expect("bag count unchanged")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::layering::validate_layering;

    #[test]
    fn grid_sizes() {
        let g2 = gen_grid(2, false).unwrap();
        assert_eq!((g2.graph.n(), g2.graph.num_edges()), (4, 4));
        let t3 = gen_grid(3, true).unwrap();
        assert_eq!((t3.graph.n(), t3.graph.num_edges()), (9, 16));
        assert_eq!(t3.max_degree, 6);
        let t2 = gen_grid(2, true).unwrap();
        assert_eq!(t2.ltd.layered_width(&t2.graph).unwrap(), 2);
        assert!(gen_grid(0, false).is_err());
    }

    #[test]
    fn bfs_on_grid_corner() {
        let g = gen_grid(3, false).unwrap().graph;
        let ly = crate::layering::bfs_layering(&g, &[0]).unwrap();
        let sizes: Vec<_> = ly.layers().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![1, 2, 3, 2, 1]);
        assert!(validate_layering(&g, &ly).passed());
    }

    #[test]
    fn strip_has_width_rows() {
        let inst = gen_grid_strip(3, 10).unwrap();
        assert_eq!(inst.ltd.td.width(), 3);
        assert_eq!(inst.ltd.layered_width(&inst.graph).unwrap(), 2);
        assert_eq!(inst.max_degree, 4);
    }

    #[test]
    fn kst_examples() {
        let star = gen_kst(1, 3);
        assert_eq!((star.n(), star.num_edges(), star.degree(0)), (4, 3, 3));
        let c4 = gen_kst(2, 2);
        assert!(c4.neighbors(0) == [2, 3] && c4.num_edges() == 4);
        assert_eq!(gen_kst(2, 3).num_edges(), 6);
        let inst = gen_kst_instance(2, 3).unwrap();
        assert_eq!(inst.ltd.layered_width(&inst.graph).unwrap(), 2);
    }

    #[test]
    fn apex_examples() {
        let tri = Graph::from_edges(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        let (k4, z) = add_apex(&tri, 1).unwrap();
        assert_eq!((k4.num_edges(), z), (6, vec![3]));
        let (g, _) = add_apex(&gen_grid(2, false).unwrap().graph, 1).unwrap();
        assert_eq!((g.n(), g.num_edges()), (5, 8));
        let (g, z) = add_apex(&gen_grid(3, false).unwrap().graph, 2).unwrap();
        assert!(z.iter().all(|&a| g.degree(a) == 9));
    }
}
