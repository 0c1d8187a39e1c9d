//! 2-coloring of bounded-treewidth, bounded-degree graphs with bounded
//! clustering, and the fake-edge enlargement of a tree-decomposition.

use num_bigint::BigUint;
use num_rational::Rational64;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::decomposition::{validate_tree_decomposition, Node, TreeDecomposition};
use crate::error::{Error, Result};
use crate::fences::epsilon_fence;
use crate::graph::{Graph, Vertex};
use crate::verification::clustering;

pub const DEFAULT_C_B: u64 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColorConfig {
    /// Constant in the clustering target `B(w, Δ) = c_B·(w+1)·max(Δ, 1)`.
    pub c_b: u64,
}

impl Default for TwoColorConfig {
    fn default() -> Self {
        TwoColorConfig { c_b: DEFAULT_C_B }
    }
}

/// `B(w, Δ) = c_B·(w+1)·max(Δ, 1)`.
pub fn clustering_bound(c_b: u64, w: &BigUint, delta: &BigUint) -> BigUint {
    let d = if *delta == BigUint::ZERO {
        BigUint::from(1u8)
    } else {
        delta.clone()
    };
    BigUint::from(c_b) * (w + 1u8) * d
}

/// A partition of `V(G)` into parts arranged in a rooted forest such that
/// every edge lies inside a part or joins a part to its parent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreePartition {
    pub parts: Vec<Vec<Vertex>>,
    pub parent: Vec<Option<usize>>,
    pub depth: Vec<usize>,
    pub part_of: Vec<usize>,
}

impl TreePartition {
    pub fn max_part(&self) -> usize {
        self.parts.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Checks the tree-partition edge condition.
    pub fn check(&self, g: &Graph) -> Result<()> {
        for (u, v) in g.edges() {
            let (a, b) = (self.part_of[u], self.part_of[v]);
            if a != b && self.parent[a] != Some(b) && self.parent[b] != Some(a) {
                return Err(Error::Internal(format!(
                    "edge ({u}, {v}) joins parts {a} and {b}, which are not parent and child"
                )));
            }
        }
        Ok(())
    }
}

/// Builds a tree-partition by repeatedly splitting off the attachment set
/// of each piece.
///
/// A piece is a component `H` of what remains, with attachment set `S`
/// (its vertices adjacent to the parent part; the minimum vertex for a
/// root piece). When `|S| > (w+1)(12w+13)`, the bags of an
/// `1/(w+1)`-fence for `Q = S` are added to the part, which keeps every
/// later attachment set below `Δ(w+1)(12w+13)`. Parts therefore have at
/// most `2Δ(w+1)(12w+13)` vertices.
pub fn tree_partition(g: &Graph, td: &TreeDecomposition) -> Result<TreePartition> {
    validate_tree_decomposition(g, td).into_result(Error::InvalidDecomposition)?;
    let n = g.n();
    let w = td.width();
    let threshold = (w + 1) * (12 * w + 13);
    let eps = Rational64::new(1, (w + 1) as i64);

    let mut part_of = vec![usize::MAX; n];
    let mut parts: Vec<Vec<Vertex>> = Vec::new();
    let mut parent = Vec::new();
    let mut depth = Vec::new();
    let mut in_piece = vec![false; n];
    let mut in_part = vec![false; n];

    // (piece vertices, attachment set, parent part)
    let mut stack: Vec<(Vec<Vertex>, Vec<Vertex>, Option<usize>)> = Vec::new();
    for comp in g.components().into_iter().rev() {
        let s = vec![comp[0]];
        stack.push((comp, s, None));
    }
    while let Some((piece, s, par)) = stack.pop() {
        let mut r = s.clone();
        if s.len() > threshold {
            for &v in &piece {
                in_piece[v] = true;
            }
            let sub = td.restrict(&in_piece);
            let fence = epsilon_fence(&sub, &s, eps, w)?;
            for &t in &fence {
                r.extend_from_slice(sub.bag(t));
            }
            for &v in &piece {
                in_piece[v] = false;
            }
        }
        r.sort_unstable();
        r.dedup();
        let id = parts.len();
        for &v in &r {
            part_of[v] = id;
            in_part[v] = true;
        }
        depth.push(par.map_or(0, |p: usize| depth[p] + 1));
        parent.push(par);

        // Components of piece - R: every unassigned neighbor of a piece
        // vertex lies in the piece.
        let mut children = Vec::new();
        let mut seen_local = Vec::new();
        for &start in &piece {
            if part_of[start] != usize::MAX || in_piece[start] {
                continue;
            }
            in_piece[start] = true;
            seen_local.push(start);
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &u in g.neighbors(v) {
                    if part_of[u] == usize::MAX && !in_piece[u] {
                        in_piece[u] = true;
                        seen_local.push(u);
                        comp.push(u);
                    }
                }
            }
            comp.sort_unstable();
            let attach: Vec<Vertex> = comp
                .iter()
                .copied()
                .filter(|&v| g.neighbors(v).iter().any(|&u| in_part[u]))
                .collect();
            children.push((comp, attach, Some(id)));
        }
        for v in seen_local {
            in_piece[v] = false;
        }
        for &v in &r {
            in_part[v] = false;
        }
        parts.push(r);
        stack.extend(children.into_iter().rev());
    }
    let tp = TreePartition {
        parts,
        parent,
        depth,
        part_of,
    };
    tp.check(g)?;
    Ok(tp)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoColoring {
    /// Colors in `{1, 2}`.
    pub coloring: Vec<usize>,
    pub clustering: usize,
    /// The target `B(w, Δ)` the clustering was verified against.
    pub bound: u128,
    pub max_part: usize,
    pub parts: usize,
}

/// 2-coloring with clustering at most `B(w, Δ)`, `w` the width of `td`.
pub fn two_color_bounded_treewidth(
    g: &Graph,
    td: &TreeDecomposition,
    delta: usize,
) -> Result<TwoColoring> {
    two_color_with_config(g, td, delta, &TwoColorConfig::default())
}

/// Colors the parts of [`tree_partition`] by depth parity, so every
/// monochromatic component stays inside one part, then measures the
/// clustering and fails if it exceeds `B(w, Δ)`.
pub fn two_color_with_config(
    g: &Graph,
    td: &TreeDecomposition,
    delta: usize,
    config: &TwoColorConfig,
) -> Result<TwoColoring> {
    if g.max_degree() > delta {
        return Err(Error::Precondition(format!(
            "maximum degree {} exceeds declared delta {delta}",
            g.max_degree()
        )));
    }
    let tp = tree_partition(g, td)?;
    let coloring: Vec<usize> = (0..g.n())
        .map(|v| 1 + tp.depth[tp.part_of[v]] % 2)
        .collect();
    let measured = clustering(g, &coloring)?;
    let bound = clustering_bound(
        config.c_b,
        &BigUint::from(td.width()),
        &BigUint::from(delta),
    );
    if BigUint::from(measured) > bound {
        return Err(Error::BoundExceeded {
            stage: "two-coloring".into(),
            measured,
            bound: bound.to_string(),
        });
    }
    Ok(TwoColoring {
        coloring,
        clustering: measured,
        bound: bound.to_u128().unwrap_or(u128::MAX),
        max_part: tp.max_part(),
        parts: tp.parts.len(),
    })
}

/// Fake edges `E_i` to add, with the node set `Y_i` whose bags hold them and
/// the subtree `T_i ⊇ Y_i` receiving their endpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FakeEdgeGroup {
    pub y: Vec<Node>,
    pub t: Vec<Node>,
    pub pairs: Vec<(Vertex, Vertex)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnlargeBudget {
    /// Maximum pairs per group.
    pub k: u64,
    /// Maximum pairs containing any one vertex, over all groups.
    pub d: u64,
    /// Maximum groups whose subtree contains any one node.
    pub h: u64,
}

fn over(budget: &'static str, actual: usize, limit: u64) -> Result<()> {
    if actual as u128 > limit as u128 {
        return Err(Error::BudgetExceeded {
            budget,
            actual: actual as u128,
            limit: limit as u128,
        });
    }
    Ok(())
}

/// Adds every pair of every group as an edge and every endpoint set `Z_i`
/// to each bag of `T_i`: `X'_t = X_t ∪ ⋃{Z_i : t ∈ T_i}`.
///
/// The result is a tree-decomposition of `G'` of width at most `w + 2hk`
/// and `Δ(G') ≤ Δ(G) + d`.
pub fn enlarge(
    g: &Graph,
    td: &TreeDecomposition,
    groups: &[FakeEdgeGroup],
    budget: EnlargeBudget,
) -> Result<(Graph, TreeDecomposition)> {
    let nodes = td.num_nodes();
    let mut pair_count = vec![0usize; g.n()];
    let mut node_count = vec![0usize; nodes];
    let mut new_bags: Vec<Vec<Vertex>> = td.bags().to_vec();
    let mut extra_edges = Vec::new();
    let mut in_y_bags = vec![false; g.n()];
    let mut node_mask = vec![false; nodes];

    for (gi, group) in groups.iter().enumerate() {
        let bad = |m: String| Error::Precondition(format!("fake-edge group {gi}: {m}"));
        if let Some(&t) = group.y.iter().chain(&group.t).find(|&&t| t >= nodes) {
            return Err(bad(format!("node {t} out of range")));
        }
        for &t in &group.t {
            node_mask[t] = true;
        }
        let connected = td.is_connected_subtree(&node_mask);
        let y_inside = group.y.iter().all(|&y| node_mask[y]);
        for &t in &group.t {
            node_mask[t] = false;
        }
        if !connected {
            return Err(bad("T_i is not a subtree".into()));
        }
        if !y_inside {
            return Err(bad("Y_i is not contained in T_i".into()));
        }
        let mut pairs: Vec<(Vertex, Vertex)> = group
            .pairs
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        pairs.sort_unstable();
        pairs.dedup();
        if pairs.iter().any(|&(u, v)| u == v || v >= g.n()) {
            return Err(bad("pair is a loop or out of range".into()));
        }
        over("k", pairs.len(), budget.k)?;
        for &y in &group.y {
            for &v in td.bag(y) {
                in_y_bags[v] = true;
            }
        }
        let outside = pairs.iter().find(|&&(u, v)| !in_y_bags[u] || !in_y_bags[v]);
        for &y in &group.y {
            for &v in td.bag(y) {
                in_y_bags[v] = false;
            }
        }
        if let Some(&(u, v)) = outside {
            return Err(bad(format!("pair ({u}, {v}) not inside the bags of Y_i")));
        }
        let mut z: Vec<Vertex> = pairs.iter().flat_map(|&(u, v)| [u, v]).collect();
        z.sort_unstable();
        z.dedup();
        for &(u, v) in &pairs {
            pair_count[u] += 1;
            pair_count[v] += 1;
        }
        if !pairs.is_empty() {
            for &t in &group.t {
                node_count[t] += 1;
                new_bags[t].extend_from_slice(&z);
            }
        } else {
            for &t in &group.t {
                node_count[t] += 1;
            }
        }
        extra_edges.extend(pairs);
    }
    over("d", pair_count.iter().copied().max().unwrap_or(0), budget.d)?;
    over("h", node_count.iter().copied().max().unwrap_or(0), budget.h)?;

    let g2 = g.with_edges(extra_edges)?;
    let td2 = td.with_bags(new_bags)?;
    validate_tree_decomposition(&g2, &td2)
        .into_result(|m| Error::Internal(format!("enlarged decomposition invalid: {m}")))?;
    Ok((g2, td2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_grid_strip, gen_path};

    #[test]
    fn single_vertex() {
        let g = Graph::empty(1);
        let td = TreeDecomposition::new(vec![vec![0]], &[]).unwrap();
        let c = two_color_bounded_treewidth(&g, &td, 0).unwrap();
        assert_eq!(c.clustering, 1);
    }

    #[test]
    fn path_of_100() {
        let inst = gen_path(100).unwrap();
        let c = two_color_bounded_treewidth(&inst.graph, &inst.ltd.td, 2).unwrap();
        assert!(c.clustering as u128 <= c.bound);
        assert_eq!(c.bound, 4 * 2 * 2);
        assert!(c.coloring.iter().all(|&x| x == 1 || x == 2));
    }

    #[test]
    fn degree_precondition() {
        let inst = gen_path(5).unwrap();
        assert!(matches!(
            two_color_bounded_treewidth(&inst.graph, &inst.ltd.td, 1),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn fence_branch_on_fan_graph() {
        // apex 0 over a path 1..=300: the attachment set of the path is
        // the whole path, far above the width-2 threshold of 111
        let n = 301;
        let edges = (1..n).map(|v| (0, v)).chain((2..n).map(|v| (v - 1, v)));
        let g = Graph::from_edges(n, edges).unwrap();
        let td = TreeDecomposition::path((2..n).map(|v| vec![0, v - 1, v]).collect());
        let tp = tree_partition(&g, &td).unwrap();
        assert!(tp.max_part() <= 2 * 300 * 3 * 37);
        let c = two_color_bounded_treewidth(&g, &td, 300).unwrap();
        assert!(c.clustering as u128 <= c.bound);
    }

    #[test]
    fn strip_plateau() {
        let a = gen_grid_strip(3, 50).unwrap();
        let b = gen_grid_strip(3, 200).unwrap();
        let ca = two_color_bounded_treewidth(&a.graph, &a.ltd.td, 4).unwrap();
        let cb = two_color_bounded_treewidth(&b.graph, &b.ltd.td, 4).unwrap();
        assert_eq!(ca.clustering, cb.clustering);
        assert!(ca.clustering <= 64);
    }

    #[test]
    fn enlarge_identity_and_width() {
        let inst = gen_path(4).unwrap();
        let budget = EnlargeBudget { k: 0, d: 0, h: 0 };
        let (g2, td2) = enlarge(&inst.graph, &inst.ltd.td, &[], budget).unwrap();
        assert_eq!(g2, inst.graph);
        assert_eq!(td2, inst.ltd.td);

        let td = TreeDecomposition::path(vec![vec![0, 1, 2], vec![2, 3, 4]]);
        let g = Graph::from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let group = FakeEdgeGroup {
            y: vec![0],
            t: vec![0, 1],
            pairs: vec![(0, 2), (1, 2), (0, 1)],
        };
        let budget = EnlargeBudget { k: 3, d: 2, h: 1 };
        let (g2, td2) = enlarge(&g, &td, std::slice::from_ref(&group), budget).unwrap();
        assert!(td2.width() <= 2 + 2 * 3);
        assert!(g2.has_edge(0, 2));
        let tight = EnlargeBudget { k: 2, ..budget };
        assert!(matches!(
            enlarge(&g, &td, &[group], tight),
            Err(Error::BudgetExceeded { budget: "k", .. })
        ));
    }

    #[test]
    fn enlarge_disjoint_groups() {
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2], vec![2, 3]]);
        let g = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let groups = [
            FakeEdgeGroup {
                y: vec![0],
                t: vec![0],
                pairs: vec![(0, 1)],
            },
            FakeEdgeGroup {
                y: vec![2],
                t: vec![2],
                pairs: vec![(2, 3)],
            },
        ];
        let (_, td2) = enlarge(&g, &td, &groups, EnlargeBudget { k: 1, d: 1, h: 1 }).unwrap();
        for t in 0..3 {
            assert!(td2.bag(t).len() <= td.bag(t).len() + 2);
        }
    }

    #[test]
    fn enlarge_rejects_pairs_outside_y() {
        let td = TreeDecomposition::path(vec![vec![0, 1], vec![1, 2]]);
        let g = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        let group = FakeEdgeGroup {
            y: vec![0],
            t: vec![0, 1],
            pairs: vec![(0, 2)],
        };
        assert!(enlarge(&g, &td, &[group], EnlargeBudget { k: 5, d: 5, h: 5 }).is_err());
    }
}
