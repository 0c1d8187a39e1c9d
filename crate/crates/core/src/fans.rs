//! Parades and fans in rooted tree-decompositions.
//!
//! A fan is read through its common core: a sequence `(t_1, ..., t_m)`
//! descending in the rooted tree together with a vertex set `K`, `|K| = ℓ`,
//! such that `K ⊆ X_{t_j}` for every `j` and the sets `X_{t_j} - K` are
//! pairwise disjoint. The anchor pair is `(t_1, t_m)`.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::decomposition::{Node, RootedTree, TreeDecomposition};
use crate::error::{Error, Result};
use crate::graph::Vertex;

/// Checks that `nodes` is a parade: each node is a proper descendant of
/// the previous one.
pub fn validate_parade(rooted: &RootedTree, nodes: &[Node]) -> Result<()> {
    if let Some(&t) = nodes.iter().find(|&&t| t >= rooted.len()) {
        return Err(Error::Precondition(format!("parade node {t} out of range")));
    }
    for pair in nodes.windows(2) {
        if pair[0] == pair[1] || !rooted.is_ancestor(pair[0], pair[1]) {
            return Err(Error::Precondition(format!(
                "parade step {} -> {} does not descend",
                pair[0], pair[1]
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub nodes: Vec<Node>,
    /// The common core `K`; `ℓ = |K|`.
    pub core: Vec<Vertex>,
    pub anchor: (Node, Node),
}

impl Fan {
    pub fn ell(&self) -> usize {
        self.core.len()
    }
}

/// `N(w, k) = max{k, 2}·((k − 1)(w + 1))^w`.
pub fn n_fan_bound(w: u32, k: u64) -> BigUint {
    let mut n = BigUint::from(k.max(2));
    let step = BigUint::from(k.saturating_sub(1)) * BigUint::from(u64::from(w) + 1);
    for _ in 0..w {
        n *= &step;
    }
    n
}

fn disjoint(a: &[Vertex], b: &[Vertex]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Equal => return false,
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
        }
    }
    true
}

fn intersection(a: &[Vertex], b: &[Vertex]) -> Vec<Vertex> {
    a.iter()
        .copied()
        .filter(|v| b.binary_search(v).is_ok())
        .collect()
}

fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    a.iter().all(|v| b.binary_search(v).is_ok())
}

/// Verifies the fan conditions for `fan` and reports the first failure.
pub fn check_fan(td: &TreeDecomposition, rooted: &RootedTree, fan: &Fan) -> Result<()> {
    validate_parade(rooted, &fan.nodes)?;
    let bad = |m: String| Err(Error::Internal(format!("fan check: {m}")));
    if fan.nodes.is_empty() {
        return bad("empty fan".into());
    }
    if fan.anchor != (fan.nodes[0], *fan.nodes.last().unwrap()) {
        return bad("anchor is not (first, last)".into());
    }
    let last = fan.anchor.1;
    if let Some(&t) = fan.nodes.iter().find(|&&t| !rooted.is_ancestor(t, last)) {
        return bad(format!("last node outside the subtree of {t}"));
    }
    let mut core = fan.core.clone();
    core.sort_unstable();
    for &t in &fan.nodes {
        if !is_subset(&core, td.bag(t)) {
            return bad(format!("core not contained in bag {t}"));
        }
    }
    let rest: Vec<Vec<Vertex>> = fan
        .nodes
        .iter()
        .map(|&t| {
            td.bag(t)
                .iter()
                .copied()
                .filter(|v| core.binary_search(v).is_err())
                .collect()
        })
        .collect();
    for i in 0..rest.len() {
        for j in i + 1..rest.len() {
            if !disjoint(&rest[i], &rest[j]) {
                return bad(format!(
                    "bags of {} and {} meet outside the core",
                    fan.nodes[i], fan.nodes[j]
                ));
            }
        }
    }
    Ok(())
}

/// Extracts a fan of size `k` with `ℓ ∈ [0, w]` from a parade of length at
/// least `N(w, k)` whose bags have at most `w + 1` vertices and satisfy
/// `X_{t_i} ⊄ X_{t_j}` for `i > j`.
///
/// Follows the inductive construction: either `k` nodes with pairwise
/// disjoint bags exist, or a dense family meets one greedy node's bag in a
/// common set `Z`, which is stripped before recursing on a smaller width.
pub fn find_fan(
    td: &TreeDecomposition,
    rooted: &RootedTree,
    parade: &[Node],
    w: usize,
    k: usize,
) -> Result<Fan> {
    if k == 0 {
        return Err(Error::Precondition("fan size k must be at least 1".into()));
    }
    validate_parade(rooted, parade)?;
    if parade.is_empty() {
        // N(w, 1) = 0 for w ≥ 1, but a fan needs a node
        return Err(Error::Precondition("parade is empty".into()));
    }
    let need = n_fan_bound(w as u32, k as u64);
    if BigUint::from(parade.len()) < need {
        return Err(Error::Precondition(format!(
            "parade has {} nodes, N({w}, {k}) = {need}",
            parade.len()
        )));
    }
    if let Some(&t) = parade.iter().find(|&&t| td.bag(t).len() > w + 1) {
        return Err(Error::Precondition(format!(
            "bag {t} has more than w+1 vertices"
        )));
    }
    for i in 0..parade.len() {
        for j in 0..i {
            if is_subset(td.bag(parade[i]), td.bag(parade[j])) {
                return Err(Error::Precondition(format!(
                    "bag of {} is contained in the bag of earlier node {}",
                    parade[i], parade[j]
                )));
            }
        }
    }
    let bags: Vec<(Node, Vec<Vertex>)> = parade.iter().map(|&t| (t, td.bag(t).to_vec())).collect();
    let (nodes, mut core) = fan_rec(&bags, w, k)?;
    core.sort_unstable();
    if core.len() > w {
        return Err(Error::Internal(format!(
            "fan core of size {} exceeds w",
            core.len()
        )));
    }
    let fan = Fan {
        anchor: (nodes[0], *nodes.last().unwrap()),
        nodes,
        core,
    };
    check_fan(td, rooted, &fan)?;
    Ok(fan)
}

/// Returns the fan nodes and its core over the current (stripped) bags.
fn fan_rec(parade: &[(Node, Vec<Vertex>)], w: usize, k: usize) -> Result<(Vec<Node>, Vec<Vertex>)> {
    if k == 1 {
        return Ok((vec![parade[0].0], Vec::new()));
    }
    let mut greedy: Vec<usize> = Vec::new();
    for (i, (_, bag)) in parade.iter().enumerate() {
        if greedy.iter().all(|&g| disjoint(&parade[g].1, bag)) {
            greedy.push(i);
            if greedy.len() == k {
                return Ok((greedy.iter().map(|&g| parade[g].0).collect(), Vec::new()));
            }
        }
    }
    if w == 0 {
        return Err(Error::Internal(
            "width-0 parade without k disjoint bags".into(),
        ));
    }
    // S_i: parade positions at or after q_i whose bag meets X_{q_i}.
    let dense: Vec<Vec<usize>> = greedy
        .iter()
        .map(|&g| {
            (g..parade.len())
                .filter(|&j| !disjoint(&parade[j].1, &parade[g].1))
                .collect()
        })
        .collect();
    let i1 = first_max(dense.iter().map(Vec::len))
        .ok_or_else(|| Error::Internal("no greedy nodes".into()))?;
    let q_bag = &parade[greedy[i1]].1;
    let mut by_alpha: Vec<Vec<usize>> = vec![Vec::new(); w + 2];
    for &j in &dense[i1] {
        let alpha = intersection(&parade[j].1, q_bag).len();
        by_alpha[alpha].push(j);
    }
    let alpha_star = first_max(by_alpha.iter().map(Vec::len))
        .ok_or_else(|| Error::Internal("empty dense family".into()))?;
    if alpha_star == 0 || alpha_star > w {
        return Err(Error::Internal(format!(
            "intersection level {alpha_star} outside [1, w]"
        )));
    }
    let family = &by_alpha[alpha_star];
    let z = intersection(&parade[family[0]].1, q_bag);
    if family
        .iter()
        .any(|&j| intersection(&parade[j].1, q_bag) != z)
    {
        return Err(Error::Internal(
            "dense family does not share a common intersection".into(),
        ));
    }
    let stripped: Vec<(Node, Vec<Vertex>)> = family
        .iter()
        .map(|&j| {
            let (t, bag) = &parade[j];
            (
                *t,
                bag.iter()
                    .copied()
                    .filter(|v| z.binary_search(v).is_err())
                    .collect(),
            )
        })
        .collect();
    let (nodes, inner) = fan_rec(&stripped, w - alpha_star, k)?;
    let mut core = z;
    core.extend(inner);
    Ok((nodes, core))
}

/// Index of the first maximum.
fn first_max(it: impl Iterator<Item = usize>) -> Option<usize> {
    let mut best: Option<(usize, usize)> = None;
    for (i, x) in it.enumerate() {
        if best.is_none_or(|(_, b)| x > b) {
            best = Some((i, x));
        }
    }
    best.map(|(i, _)| i)
}

/// `N(w, k)` when it fits in a `u64`.
pub fn n_fan_bound_u64(w: u32, k: u64) -> Option<u64> {
    u64::try_from(&n_fan_bound(w, k)).ok()
}
