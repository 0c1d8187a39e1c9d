//! Tree-decompositions and layered tree-decompositions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layering::{validate_layering, Layering};
use crate::report::{AxiomCheck, ValidationReport};

pub type Node = usize;

/// A tree `T` on nodes `0..N` together with bags `X_t`.
///
/// Bags are stored sorted and deduplicated. Validity against a graph is not
/// enforced at construction; use [`validate_tree_decomposition`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeDecomposition {
    bags: Vec<Vec<Vertex>>,
    tree: Vec<Vec<Node>>,
    root: Option<Node>,
}

impl TreeDecomposition {
    /// Builds a decomposition from bags and tree edges. Tree edges must be
    /// in range and loop-free; acyclicity is checked by the validator.
    pub fn new(mut bags: Vec<Vec<Vertex>>, tree_edges: &[(Node, Node)]) -> Result<Self> {
        let n = bags.len();
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
        }
        let mut tree = vec![Vec::new(); n];
        for &(a, b) in tree_edges {
            if a >= n || b >= n {
                return Err(Error::InvalidDecomposition(format!(
                    "tree edge ({a}, {b}) out of range for {n} nodes"
                )));
            }
            if a == b {
                return Err(Error::InvalidDecomposition(format!(
                    "tree loop at node {a}"
                )));
            }
            tree[a].push(b);
            tree[b].push(a);
        }
        for list in &mut tree {
            list.sort_unstable();
            list.dedup();
        }
        Ok(TreeDecomposition {
            bags,
            tree,
            root: None,
        })
    }

    /// A path decomposition: bag `i` adjacent to bag `i + 1`.
    pub fn path(bags: Vec<Vec<Vertex>>) -> Self {
        let edges: Vec<_> = (1..bags.len()).map(|i| (i - 1, i)).collect();
        TreeDecomposition::new(bags, &edges).expect("path edges are in range")
    }

    pub fn with_root(mut self, root: Node) -> Self {
        self.root = Some(root);
        self
    }

    pub fn root(&self) -> Option<Node> {
        self.root
    }

    pub fn num_nodes(&self) -> usize {
        self.bags.len()
    }

    pub fn bag(&self, t: Node) -> &[Vertex] {
        &self.bags[t]
    }

    pub fn bags(&self) -> &[Vec<Vertex>] {
        &self.bags
    }

    pub fn tree_neighbors(&self, t: Node) -> &[Node] {
        &self.tree[t]
    }

    pub fn tree_adjacency(&self) -> &[Vec<Node>] {
        &self.tree
    }

    /// Tree edges `(a, b)` with `a < b`.
    pub fn tree_edges(&self) -> Vec<(Node, Node)> {
        let mut out = Vec::new();
        for (a, list) in self.tree.iter().enumerate() {
            for &b in list {
                if a < b {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn max_bag_size(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `max |X_t| - 1`, or 0 for a decomposition with only empty bags.
    pub fn width(&self) -> usize {
        self.max_bag_size().saturating_sub(1)
    }

    /// Same tree with every bag intersected with `{v : keep[v]}`.
    pub fn restrict(&self, keep: &[bool]) -> TreeDecomposition {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| b.iter().copied().filter(|&v| keep[v]).collect())
                .collect(),
            tree: self.tree.clone(),
            root: self.root,
        }
    }

    /// Same tree with bags mapped through `to_local`, dropping unmapped
    /// vertices. Pairs with [`Graph::induced`].
    pub fn relabel(&self, to_local: &[Option<Vertex>]) -> TreeDecomposition {
        TreeDecomposition {
            bags: self
                .bags
                .iter()
                .map(|b| {
                    let mut nb: Vec<_> = b.iter().filter_map(|&v| to_local[v]).collect();
                    nb.sort_unstable();
                    nb
                })
                .collect(),
            tree: self.tree.clone(),
            root: self.root,
        }
    }

    /// Replaces the bags, keeping the tree.
    pub fn with_bags(&self, bags: Vec<Vec<Vertex>>) -> Result<TreeDecomposition> {
        if bags.len() != self.bags.len() {
            return Err(Error::InvalidDecomposition(format!(
                "expected {} bags, got {}",
                self.bags.len(),
                bags.len()
            )));
        }
        let mut out = self.clone();
        out.bags = bags;
        for bag in &mut out.bags {
            bag.sort_unstable();
            bag.dedup();
        }
        Ok(out)
    }

    /// For each vertex `< n`, the sorted list of nodes whose bag contains it.
    pub fn occurrences(&self, n: usize) -> Vec<Vec<Node>> {
        let mut occ = vec![Vec::new(); n];
        for (t, bag) in self.bags.iter().enumerate() {
            for &v in bag {
                if v < n {
                    occ[v].push(t);
                }
            }
        }
        occ
    }

    /// Rooted view at `root`, or at the stored root, or at node 0.
    pub fn rooted(&self, root: Option<Node>) -> Result<RootedTree> {
        let r = root.or(self.root).unwrap_or(0);
        RootedTree::new(&self.tree, r)
    }

    /// Whether the nodes with `mask[t]` induce a connected subgraph of `T`.
    /// The empty set counts as connected.
    pub fn is_connected_subtree(&self, mask: &[bool]) -> bool {
        connected_within(&self.tree, mask)
    }
}

/// Whether the nodes selected by `mask` induce a connected subgraph.
pub(crate) fn connected_within(adj: &[Vec<usize>], mask: &[bool]) -> bool {
    let Some(start) = (0..adj.len()).find(|&t| mask[t]) else {
        return true;
    };
    let mut seen = vec![false; adj.len()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(t) = stack.pop() {
        for &u in &adj[t] {
            if mask[u] && !seen[u] {
                seen[u] = true;
                count += 1;
                stack.push(u);
            }
        }
    }
    count == mask.iter().filter(|&&b| b).count()
}

/// A rooted tree: parents, sorted children, depths and a preorder in which
/// children are visited by ascending id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedTree {
    pub root: Node,
    pub parent: Vec<Option<Node>>,
    pub children: Vec<Vec<Node>>,
    pub depth: Vec<usize>,
    pub preorder: Vec<Node>,
}

impl RootedTree {
    pub fn new(adj: &[Vec<Node>], root: Node) -> Result<Self> {
        let n = adj.len();
        if root >= n {
            return Err(Error::InvalidDecomposition(format!(
                "root {root} out of range for {n} nodes"
            )));
        }
        let mut parent = vec![None; n];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut seen = vec![false; n];
        let mut preorder = Vec::with_capacity(n);
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(t) = stack.pop() {
            preorder.push(t);
            let mut kids: Vec<Node> = Vec::new();
            for &u in &adj[t] {
                if !seen[u] {
                    seen[u] = true;
                    parent[u] = Some(t);
                    depth[u] = depth[t] + 1;
                    kids.push(u);
                } else if parent[t] != Some(u) {
                    return Err(Error::InvalidDecomposition(format!(
                        "tree has a cycle through nodes {t} and {u}"
                    )));
                }
            }
            kids.sort_unstable();
            stack.extend(kids.iter().rev());
            children[t] = kids;
        }
        if preorder.len() != n {
            return Err(Error::InvalidDecomposition("tree is disconnected".into()));
        }
        Ok(RootedTree {
            root,
            parent,
            children,
            depth,
            preorder,
        })
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Whether `a` is an ancestor of `b` (every node is its own ancestor).
    pub fn is_ancestor(&self, a: Node, b: Node) -> bool {
        let mut cur = b;
        loop {
            if cur == a {
                return true;
            }
            if self.depth[cur] <= self.depth[a] {
                return false;
            }
            match self.parent[cur] {
                Some(p) => cur = p,
                None => return false,
            }
        }
    }

    /// Nodes of the subtree `T_t` rooted at `t`, in preorder.
    pub fn subtree(&self, t: Node) -> Vec<Node> {
        let mut out = Vec::new();
        let mut stack = vec![t];
        while let Some(u) = stack.pop() {
            out.push(u);
            stack.extend(self.children[u].iter().rev());
        }
        out
    }
}

/// Checks the tree axioms and the three decomposition axioms.
pub fn validate_tree_decomposition(g: &Graph, td: &TreeDecomposition) -> ValidationReport {
    let mut report = ValidationReport::default();
    let nodes = td.num_nodes();
    let edges = td.tree_edges();
    let tree_ok = if nodes == 0 {
        g.n() == 0
    } else {
        edges.len() == nodes - 1 && connected_within(td.tree_adjacency(), &vec![true; nodes])
    };
    report.push(if tree_ok {
        AxiomCheck::pass("tree")
    } else {
        AxiomCheck::fail(
            "tree",
            Vec::new(),
            format!(
                "{nodes} nodes with {} edges do not form a tree",
                edges.len()
            ),
        )
    });

    if let Some((t, &v)) = td
        .bags()
        .iter()
        .enumerate()
        .find_map(|(t, b)| b.iter().find(|&&v| v >= g.n()).map(|v| (t, v)))
    {
        report.push(AxiomCheck::fail(
            "vertex-range",
            vec![t, v],
            format!("bag {t} contains vertex {v}, graph has {} vertices", g.n()),
        ));
        return report;
    }

    let occ = td.occurrences(g.n());
    report.push(match (0..g.n()).find(|&v| occ[v].is_empty()) {
        None => AxiomCheck::pass("vertex-coverage"),
        Some(v) => AxiomCheck::fail("vertex-coverage", vec![v], "vertex in no bag"),
    });

    let uncovered = g.edges().find(|&(u, v)| {
        let (a, b) = (&occ[u], &occ[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => return false,
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        true
    });
    report.push(match uncovered {
        None => AxiomCheck::pass("edge-coverage"),
        Some((u, v)) => AxiomCheck::fail("edge-coverage", vec![u, v], "no bag holds this edge"),
    });

    let mut mask = vec![false; nodes];
    let disconnected = (0..g.n()).find(|&v| {
        for &t in &occ[v] {
            mask[t] = true;
        }
        let ok = connected_within(td.tree_adjacency(), &mask);
        for &t in &occ[v] {
            mask[t] = false;
        }
        !ok
    });
    report.push(match disconnected {
        None => AxiomCheck::pass("connectivity"),
        Some(v) => AxiomCheck::fail(
            "connectivity",
            vec![v],
            "nodes holding this vertex are not a subtree",
        ),
    });
    report
}

/// A tree-decomposition paired with a layering of the same graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayeredTreeDecomposition {
    pub td: TreeDecomposition,
    pub layering: Layering,
}

impl LayeredTreeDecomposition {
    pub fn new(td: TreeDecomposition, layering: Layering) -> Self {
        LayeredTreeDecomposition { td, layering }
    }

    /// Both validators, concatenated.
    pub fn validate(&self, g: &Graph) -> ValidationReport {
        let mut report = validate_tree_decomposition(g, &self.td);
        report
            .checks
            .extend(validate_layering(g, &self.layering).checks);
        report
    }

    /// `max_{t,i} |X_t ∩ V_i|`, without validating.
    pub fn layered_width_unchecked(&self) -> usize {
        let m = self.layering.num_layers();
        let mut count = vec![0usize; m + 1];
        let mut best = 0;
        for bag in self.td.bags() {
            for &v in bag {
                if let Some(i) = self.layering.layer_of(v) {
                    count[i] += 1;
                    best = best.max(count[i]);
                }
            }
            for &v in bag {
                if let Some(i) = self.layering.layer_of(v) {
                    count[i] = 0;
                }
            }
        }
        best
    }

    /// Validates against `g`, then returns the layered width.
    pub fn layered_width(&self, g: &Graph) -> Result<usize> {
        self.validate(g).into_result(Error::InvalidDecomposition)?;
        Ok(self.layered_width_unchecked())
    }
}
