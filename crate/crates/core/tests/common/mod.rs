#![allow(dead_code)]

use layered_coloring::decomposition::TreeDecomposition;
use layered_coloring::graph::{Graph, Vertex};
use layered_coloring::layering::{bfs_layering, Layering};
use layered_coloring::lists::{compatible_lists, progress, StandardPair};
use layered_coloring::neighborhoods::{has_kst_subgraph, KstResult};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A random tree-decomposition of width at most `w` on `nodes` nodes,
/// together with its vertex count. Each child bag keeps at most `w`
/// vertices of its parent and adds at least one fresh vertex.
pub fn random_td(r: &mut impl Rng, nodes: usize, w: usize) -> (TreeDecomposition, usize) {
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(nodes);
    let mut edges = Vec::new();
    let mut next = 0usize;
    let root_size = r.gen_range(1..=w + 1);
    bags.push((0..root_size).collect());
    next += root_size;
    for t in 1..nodes {
        let parent = r.gen_range(0..t);
        let mut keep = bags[parent].clone();
        keep.shuffle(r);
        keep.truncate(r.gen_range(0..=w.min(keep.len())));
        let fresh = r.gen_range(1..=w + 1 - keep.len());
        keep.extend(next..next + fresh);
        next += fresh;
        keep.sort_unstable();
        bags.push(keep);
        edges.push((parent, t));
    }
    (TreeDecomposition::new(bags, &edges).unwrap(), next)
}

/// A random graph whose edges all lie inside bags of `td`.
pub fn graph_in_bags(r: &mut impl Rng, td: &TreeDecomposition, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for bag in td.bags() {
        for i in 0..bag.len() {
            for j in i + 1..bag.len() {
                if r.gen_bool(p) {
                    edges.push((bag[i], bag[j]));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Graph::from_edges(n, edges).unwrap()
}

pub fn random_graph(r: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if r.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A random `K_{s,t}`-free graph: candidate edges in random order, each kept
/// only if the graph stays `K_{s,t}`-free.
pub fn random_kst_free(r: &mut impl Rng, n: usize, s: usize, t: usize, p: f64) -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(r);
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for e in pairs {
        if !r.gen_bool(p) {
            continue;
        }
        edges.push(e);
        let g = Graph::from_edges(n, edges.iter().copied()).unwrap();
        if has_kst_subgraph(&g, s, t).unwrap() != KstResult::NotFound {
            edges.pop();
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// A BFS layering of `g` from vertex 0.
pub fn any_layering(g: &Graph) -> Layering {
    bfs_layering(g, &[0]).unwrap()
}

/// A random standard pair reached from `(∅, L)` with compatible lists by a
/// few random progresses.
pub fn random_standard_pair(r: &mut impl Rng, g: &Graph, ly: &Layering, s: usize) -> StandardPair {
    let mut pair = StandardPair::empty(compatible_lists(ly, s));
    for _ in 0..r.gen_range(0..4) {
        let w: Vec<Vertex> = (0..g.n()).filter(|_| r.gen_bool(0.2)).collect();
        let i = r.gen_range(1..=s + 2);
        pair = progress(g, &pair, &w, i, s).unwrap();
    }
    pair
}

/// A chain of `len` bags of size at most `w + 1` where each bag keeps at
/// most `w` vertices of the previous one and gains at least one fresh
/// vertex, so no bag is contained in an earlier one.
pub fn random_parade(r: &mut impl Rng, len: usize, w: usize) -> TreeDecomposition {
    let mut bags: Vec<Vec<Vertex>> = Vec::with_capacity(len);
    let mut next = 0usize;
    for i in 0..len {
        let mut bag: Vec<Vertex> = if i == 0 {
            Vec::new()
        } else {
            let mut prev = bags[i - 1].clone();
            prev.shuffle(r);
            prev.truncate(r.gen_range(0..=w.min(prev.len())));
            prev
        };
        let fresh = r.gen_range(1..=w + 1 - bag.len());
        bag.extend(next..next + fresh);
        next += fresh;
        bag.sort_unstable();
        bags.push(bag);
    }
    TreeDecomposition::path(bags)
}
