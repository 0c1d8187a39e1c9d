//! Separators in a tree-decomposition: `F`-parts, central nodes,
//! ε-fences and minimal fences.

use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::decomposition::{Node, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// A part of `T` cut by `F`, with its boundary `∂T' = F ∩ V(T')`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FPart {
    pub nodes: Vec<Node>,
    pub boundary: Vec<Node>,
}

/// Distinct-element counter over vertex ids, reused across queries.
struct Marker {
    stamp: Vec<u32>,
    cur: u32,
}

impl Marker {
    fn new(n: usize) -> Self {
        Marker {
            stamp: vec![0; n],
            cur: 0,
        }
    }

    fn reset(&mut self) {
        self.cur += 1;
    }

    /// Marks `v`; true if it was not yet marked in this round.
    fn insert(&mut self, v: usize) -> bool {
        if self.stamp[v] == self.cur {
            false
        } else {
            self.stamp[v] = self.cur;
            true
        }
    }
}

fn vertex_bound(td: &TreeDecomposition, q: &[Vertex]) -> usize {
    let in_bags = td.bags().iter().flatten().copied().max();
    let in_q = q.iter().copied().max();
    in_bags.max(in_q).map_or(0, |m| m + 1)
}

fn node_mask(len: usize, nodes: &[Node]) -> Vec<bool> {
    let mut mask = vec![false; len];
    for &t in nodes {
        mask[t] = true;
    }
    mask
}

/// `F`-parts of the subtree induced by `mask`.
///
/// Each component of `T - F` together with its adjacent `F`-nodes is a part.
/// A tree edge joining two `F`-nodes forms a two-node part of its own, and a
/// lone `F`-node with no tree neighbor is a part by itself, so every node
/// lies in some part.
fn parts_within(adj: &[Vec<Node>], mask: &[bool], in_f: &[bool]) -> Vec<FPart> {
    let mut parts = Vec::new();
    let mut seen = vec![false; adj.len()];
    for start in 0..adj.len() {
        if !mask[start] || in_f[start] || seen[start] {
            continue;
        }
        let mut nodes = Vec::new();
        let mut boundary = Vec::new();
        let mut stack = vec![start];
        seen[start] = true;
        while let Some(t) = stack.pop() {
            nodes.push(t);
            for &u in &adj[t] {
                if !mask[u] {
                    continue;
                }
                if in_f[u] {
                    boundary.push(u);
                } else if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        boundary.sort_unstable();
        boundary.dedup();
        nodes.extend(&boundary);
        nodes.sort_unstable();
        parts.push(FPart { nodes, boundary });
    }
    for a in 0..adj.len() {
        if !mask[a] || !in_f[a] {
            continue;
        }
        let mut lone = true;
        for &b in &adj[a] {
            if mask[b] {
                lone = false;
                if in_f[b] && a < b {
                    parts.push(FPart {
                        nodes: vec![a, b],
                        boundary: vec![a, b],
                    });
                }
            }
        }
        if lone {
            parts.push(FPart {
                nodes: vec![a],
                boundary: vec![a],
            });
        }
    }
    parts
}

/// The `F`-parts of the tree of `td`.
pub fn f_parts(td: &TreeDecomposition, f: &[Node]) -> Result<Vec<FPart>> {
    let n = td.num_nodes();
    if let Some(&t) = f.iter().find(|&&t| t >= n) {
        return Err(Error::Precondition(format!("fence node {t} out of range")));
    }
    Ok(parts_within(
        td.tree_adjacency(),
        &vec![true; n],
        &node_mask(n, f),
    ))
}

/// `|(Q ∩ ⋃_{t∈nodes} X_t) ∪ ⋃_{t∈extra} X_t|`.
fn content(
    td: &TreeDecomposition,
    nodes: &[Node],
    extra: &[Node],
    in_q: &[bool],
    marker: &mut Marker,
) -> usize {
    marker.reset();
    let mut count = 0;
    for &t in nodes {
        for &v in td.bag(t) {
            if in_q[v] && marker.insert(v) {
                count += 1;
            }
        }
    }
    for &t in extra {
        for &v in td.bag(t) {
            if marker.insert(v) {
                count += 1;
            }
        }
    }
    count
}

/// Components of `mask - t`, one per tree neighbor of `t` inside `mask`.
fn components_around(adj: &[Vec<Node>], mask: &[bool], t: Node) -> Vec<Vec<Node>> {
    let mut out = Vec::new();
    for &u in &adj[t] {
        if !mask[u] {
            continue;
        }
        let mut comp = vec![u];
        let mut stack = vec![(u, t)];
        while let Some((x, from)) = stack.pop() {
            for &y in &adj[x] {
                if y != from && mask[y] {
                    comp.push(y);
                    stack.push((y, x));
                }
            }
        }
        out.push(comp);
    }
    out
}

fn dedup_sorted(q: &[Vertex]) -> Vec<Vertex> {
    let mut q = q.to_vec();
    q.sort_unstable();
    q.dedup();
    q
}

fn central_within(
    td: &TreeDecomposition,
    nodes: &[Node],
    q: &[Vertex],
    w: usize,
    in_q: &[bool],
    marker: &mut Marker,
) -> Result<Node> {
    if q.len() < 12 * w + 13 {
        return Err(Error::Precondition(format!(
            "central node needs |Q| >= 12w+13 = {}, got {}",
            12 * w + 13,
            q.len()
        )));
    }
    let mask = node_mask(td.num_nodes(), nodes);
    let mut sorted = nodes.to_vec();
    sorted.sort_unstable();
    for &t in &sorted {
        let ok = components_around(td.tree_adjacency(), &mask, t)
            .iter()
            .all(|comp| 3 * content(td, comp, &[t], in_q, marker) < 2 * q.len());
        if ok {
            return Ok(t);
        }
    }
    Err(Error::Internal(
        "no node separates Q into parts below 2|Q|/3".into(),
    ))
}

/// A node `t*` such that every component `T'` of `T - t*` has
/// `|(Q ∩ X_{V(T')}) ∪ X_{t*}| < 2|Q|/3`. The smallest such node id is
/// returned. Requires `|Q| >= 12w + 13`; existence holds when the width is
/// at most `w`.
pub fn central_node(td: &TreeDecomposition, q: &[Vertex], w: usize) -> Result<Node> {
    let q = dedup_sorted(q);
    let nv = vertex_bound(td, &q);
    let in_q = node_mask(nv, &q);
    let all: Vec<Node> = (0..td.num_nodes()).collect();
    central_within(td, &all, &q, w, &in_q, &mut Marker::new(nv))
}

fn check_width(td: &TreeDecomposition, w: usize) -> Result<()> {
    if td.max_bag_size() > w + 1 {
        return Err(Error::Precondition(format!(
            "decomposition has width {} > {w}",
            td.width()
        )));
    }
    Ok(())
}

fn rat(x: usize) -> Rational64 {
    Rational64::from_integer(x as i64)
}

/// `|Q| <= (1/ε)(12w+13)`, i.e. `ε|Q| <= 12w+13`.
fn below_threshold(size: usize, eps: Rational64, w: usize) -> bool {
    rat(size) * eps <= rat(12 * w + 13)
}

struct EpsFence<'a> {
    td: &'a TreeDecomposition,
    eps: Rational64,
    w: usize,
    marker: Marker,
    nv: usize,
}

impl EpsFence<'_> {
    fn run(&mut self, nodes: &[Node], q: &[Vertex]) -> Result<Vec<Node>> {
        if below_threshold(q.len(), self.eps, self.w) {
            return Ok(Vec::new());
        }
        let in_q = node_mask(self.nv, q);
        let t_star = central_within(self.td, nodes, q, self.w, &in_q, &mut self.marker)?;
        let mask = node_mask(self.td.num_nodes(), nodes);
        let mut fence = vec![t_star];
        for mut comp in components_around(self.td.tree_adjacency(), &mask, t_star) {
            comp.push(t_star);
            let mut q_part: Vec<Vertex> = comp
                .iter()
                .flat_map(|&t| self.td.bag(t).iter().copied())
                .filter(|&v| in_q[v])
                .chain(self.td.bag(t_star).iter().copied())
                .collect();
            q_part.sort_unstable();
            q_part.dedup();
            if !below_threshold(q_part.len(), self.eps, self.w) {
                fence.extend(self.run(&comp, &q_part)?);
            }
        }
        fence.sort_unstable();
        fence.dedup();
        Ok(fence)
    }
}

/// An ε-fence: a node set `F` with `|F| <= max{ε(|Q| - 3w - 3), 0}` such
/// that every `F`-part `T'` has
/// `|(Q ∩ X_{V(T')}) ∪ X_{∂T'}| <= (1/ε)(12w+13)`.
///
/// Built by recursive splitting at central nodes; both conclusions are
/// checked before returning.
pub fn epsilon_fence(
    td: &TreeDecomposition,
    q: &[Vertex],
    epsilon: Rational64,
    w: usize,
) -> Result<Vec<Node>> {
    if epsilon > Rational64::one() || epsilon * rat(w + 1) < Rational64::one() {
        return Err(Error::Precondition(format!(
            "epsilon {epsilon} outside [1/(w+1), 1] for w = {w}"
        )));
    }
    check_width(td, w)?;
    let q = dedup_sorted(q);
    let nv = vertex_bound(td, &q);
    let mut state = EpsFence {
        td,
        eps: epsilon,
        w,
        marker: Marker::new(nv),
        nv,
    };
    let all: Vec<Node> = (0..td.num_nodes()).collect();
    let fence = if td.num_nodes() == 0 {
        Vec::new()
    } else {
        state.run(&all, &q)?
    };

    let size_bound = (epsilon * (rat(q.len()) - rat(3 * w + 3))).max(Rational64::zero());
    if rat(fence.len()) > size_bound {
        return Err(Error::Internal(format!(
            "epsilon-fence has {} nodes, bound {size_bound}",
            fence.len()
        )));
    }
    let in_q = node_mask(nv, &q);
    for part in f_parts(td, &fence)? {
        let c = content(td, &part.nodes, &part.boundary, &in_q, &mut state.marker);
        if rat(c) * epsilon > rat(12 * w + 13) {
            return Err(Error::Internal(format!(
                "epsilon-fence part {:?} has content {c}",
                part.nodes
            )));
        }
    }
    Ok(fence)
}

/// A `(T, X, Q)`-fence for width `w`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fence {
    pub nodes: Vec<Node>,
    pub w: usize,
    pub q: Vec<Vertex>,
}

/// Which fence condition failed, with the offending node or part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FenceViolation {
    Size { size: usize, bound: usize },
    PartContent { part: Vec<Node>, content: usize },
    Separation { node: Node, parts: usize },
}

fn separating_parts(td: &TreeDecomposition, parts: &[FPart], t_star: Node, in_q: &[bool]) -> usize {
    let bag = td.bag(t_star);
    parts
        .iter()
        .filter(|p| p.boundary.contains(&t_star))
        .filter(|p| {
            p.nodes.iter().any(|&t| {
                td.bag(t)
                    .iter()
                    .any(|&v| in_q[v] && bag.binary_search(&v).is_err())
            })
        })
        .count()
}

/// Checks the three fence conditions; returns every violation found.
pub fn check_fence(td: &TreeDecomposition, fence: &Fence) -> Result<Vec<FenceViolation>> {
    let w = fence.w;
    let q = dedup_sorted(&fence.q);
    let nv = vertex_bound(td, &q);
    let in_q = node_mask(nv, &q);
    let mut marker = Marker::new(nv);
    let mut out = Vec::new();
    let bound = q.len().saturating_sub(3 * w + 3);
    if fence.nodes.len() > bound {
        out.push(FenceViolation::Size {
            size: fence.nodes.len(),
            bound,
        });
    }
    let parts = f_parts(td, &fence.nodes)?;
    for p in &parts {
        let c = content(td, &p.nodes, &[], &in_q, &mut marker);
        if c > 12 * w + 13 {
            out.push(FenceViolation::PartContent {
                part: p.nodes.clone(),
                content: c,
            });
        }
    }
    if !q.is_empty() {
        for &t in &fence.nodes {
            let k = separating_parts(td, &parts, t, &in_q);
            if k < 2 {
                out.push(FenceViolation::Separation { node: t, parts: k });
            }
        }
    }
    Ok(out)
}

/// A minimal fence: the ε-fence for `ε = 1`, then fence nodes that fail
/// the two-part separation condition are deleted, smallest id first, until
/// none remain.
pub fn fence(td: &TreeDecomposition, q: &[Vertex], w: usize) -> Result<Fence> {
    let q = dedup_sorted(q);
    let mut nodes = epsilon_fence(td, &q, Rational64::one(), w)?;
    if !q.is_empty() {
        let nv = vertex_bound(td, &q);
        let in_q = node_mask(nv, &q);
        loop {
            let parts = f_parts(td, &nodes)?;
            let bad = nodes
                .iter()
                .position(|&t| separating_parts(td, &parts, t, &in_q) < 2);
            match bad {
                Some(i) => {
                    nodes.remove(i);
                }
                None => break,
            }
        }
    }
    let fence = Fence { nodes, w, q };
    let violations = check_fence(td, &fence)?;
    if let Some(v) = violations.first() {
        return Err(Error::Internal(format!("fence violates {v:?}")));
    }
    Ok(fence)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_td(n: usize) -> TreeDecomposition {
        TreeDecomposition::path((0..n).map(|i| vec![i]).collect())
    }

    #[test]
    fn parts_of_path_and_star() {
        let td = TreeDecomposition::path(vec![vec![]; 3]);
        let parts = f_parts(&td, &[1]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[0].nodes, vec![0, 1]);
        assert_eq!(parts[1].nodes, vec![1, 2]);
        assert!(parts.iter().all(|p| p.boundary == vec![1]));
        let whole = f_parts(&td, &[]).unwrap();
        assert_eq!(
            whole,
            vec![FPart {
                nodes: vec![0, 1, 2],
                boundary: vec![]
            }]
        );
        let star = TreeDecomposition::new(vec![vec![]; 4], &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let parts = f_parts(&star, &[0]).unwrap();
        assert_eq!(parts.len(), 3);
        assert!(parts
            .iter()
            .all(|p| p.nodes.len() == 2 && p.boundary == vec![0]));
    }

    #[test]
    fn adjacent_fence_nodes_form_a_part() {
        let td = TreeDecomposition::path(vec![vec![]; 3]);
        let parts = f_parts(&td, &[1, 2]).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(parts[1].nodes, vec![1, 2]);
    }

    #[test]
    fn central_node_examples() {
        let single = TreeDecomposition::new(vec![(0..13).collect()], &[]).unwrap();
        assert_eq!(
            central_node(&single, &(0..13).collect::<Vec<_>>(), 0).unwrap(),
            0
        );
        let td = path_td(13);
        let q: Vec<_> = (0..13).collect();
        // nodes 5..=7 all qualify; the smallest id wins
        assert_eq!(central_node(&td, &q, 0).unwrap(), 5);
        assert!(central_node(&path_td(24), &(0..24).collect::<Vec<_>>(), 1).is_err());
    }

    #[test]
    fn epsilon_fence_examples() {
        let td = path_td(20);
        let q: Vec<_> = (0..20).collect();
        assert!(epsilon_fence(
            &path_td(13),
            &(0..13).collect::<Vec<_>>(),
            Rational64::one(),
            0
        )
        .unwrap()
        .is_empty());
        let f = epsilon_fence(&td, &q, Rational64::one(), 0).unwrap();
        assert!(!f.is_empty() && f.len() <= 17);
        assert!(epsilon_fence(&td, &q, Rational64::new(1, 2), 1).is_ok());
        assert!(epsilon_fence(&td, &q, Rational64::new(1, 3), 1).is_err());
        assert!(epsilon_fence(&td, &q, Rational64::new(3, 2), 1).is_err());
    }

    #[test]
    fn fence_examples() {
        let td = path_td(20);
        assert!(fence(&td, &[], 0).unwrap().nodes.is_empty());
        let q: Vec<_> = (0..20).collect();
        let f = fence(&td, &q, 0).unwrap();
        assert!(check_fence(&td, &f).unwrap().is_empty());
        let big = TreeDecomposition::path(vec![(0..5).collect(), vec![5]]);
        assert!(fence(&big, &[0, 1, 2, 3, 4], 4).unwrap().nodes.is_empty());
    }
}
