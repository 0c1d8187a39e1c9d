//! 3-coloring of graphs with bounded layered treewidth and bounded degree.
//!
//! Layers are grouped into classes `U_j = ⋃ V_{3i+j}`. Each layer of `U_1`
//! is 2-colored with `{1, 2}`. Color-2 components of a `U_1` layer turn
//! their neighborhood in the next layer into a clique of fake edges; the
//! enlarged `U_2` layers are 2-colored with `{2, 3}`. The `U_3` layers get
//! fake edges from color-3 components of the previous (enlarged) layer and
//! color-1 components of the next layer, and are 2-colored with `{1, 3}`.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Serialize, Serializer};

use crate::decomposition::{LayeredTreeDecomposition, Node, TreeDecomposition};
use crate::decomposition_coloring::{
    clustering_bound, enlarge, two_color_with_config, EnlargeBudget, FakeEdgeGroup, TwoColorConfig,
    DEFAULT_C_B,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layering::Layering;
use crate::verification::{clustering, monochromatic_components};

fn as_string<S: Serializer>(x: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&x.to_string())
}

/// The constant chain for a given `(w, Δ)` and clustering target `B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ThreeColorConstants {
    pub w: usize,
    pub delta: usize,
    pub c_b: u64,
    #[serde(serialize_with = "as_string")]
    pub f1: BigUint,
    #[serde(serialize_with = "as_string")]
    pub delta2: BigUint,
    #[serde(serialize_with = "as_string")]
    pub w2: BigUint,
    #[serde(serialize_with = "as_string")]
    pub f2: BigUint,
    #[serde(serialize_with = "as_string")]
    pub delta3: BigUint,
    #[serde(serialize_with = "as_string")]
    pub w3: BigUint,
    #[serde(serialize_with = "as_string")]
    pub f3: BigUint,
    #[serde(serialize_with = "as_string")]
    pub g: BigUint,
}

/// Constants with the default `c_B`.
pub fn compute_constants(w: usize, delta: usize) -> ThreeColorConstants {
    compute_constants_with(w, delta, DEFAULT_C_B)
}

pub fn compute_constants_with(w: usize, delta: usize, c_b: u64) -> ThreeColorConstants {
    let b = |w: &BigUint, d: &BigUint| clustering_bound(c_b, w, d);
    let wb = BigUint::from(w);
    let d = BigUint::from(delta);
    let d2 = &d * &d;
    let f1 = b(&wb, &d);
    let delta2 = &d + &f1 * &d2;
    let w2 = &wb + 2u8 * (&wb + 1u8) * &f1 * &f1 * &d2;
    let f2 = b(&w2, &delta2);
    let delta3 = &d + &f2 * &d2;
    let w3 = &wb + 4u8 * (&w2 + 1u8) * &f2 * &f2 * &d2;
    let f3 = b(&w3, &delta3);
    let g = (1u8 + &f2 * &d) * &f3;
    ThreeColorConstants {
        w,
        delta,
        c_b,
        f1,
        delta2,
        w2,
        f2,
        delta3,
        w3,
        f3,
        g,
    }
}

/// `U_1, U_2, U_3` with `U_j = ⋃_i V_{3i+j}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerClassSplit {
    pub u: [Vec<Vertex>; 3],
}

/// Class index `j ∈ {1, 2, 3}` of layer `i`.
pub fn layer_class(i: usize) -> usize {
    (i - 1) % 3 + 1
}

pub fn split_layer_classes(ly: &Layering) -> LayerClassSplit {
    let mut u: [Vec<Vertex>; 3] = Default::default();
    for (idx, layer) in ly.layers().iter().enumerate() {
        u[layer_class(idx + 1) - 1].extend_from_slice(layer);
    }
    for class in &mut u {
        class.sort_unstable();
    }
    LayerClassSplit { u }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ThreeColorConfig {
    pub c_b: Option<u64>,
    /// Declared layered width; the larger of this and the measured width is
    /// used.
    pub declared_w: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StageStats {
    pub stage: usize,
    pub layers: usize,
    pub groups: usize,
    pub fake_edges: usize,
    /// Largest width of a decomposition handed to the 2-coloring.
    pub max_width: usize,
    pub max_degree: usize,
    pub clustering: usize,
    #[serde(serialize_with = "as_string")]
    pub bound: BigUint,
}

#[derive(Debug, Clone, Serialize)]
pub struct ThreeColoring {
    pub coloring: Vec<usize>,
    pub clustering: usize,
    pub constants: ThreeColorConstants,
    pub stages: Vec<StageStats>,
    /// `G[U_2]` plus every stage-2 fake edge, on the vertex set of `G`.
    #[serde(skip)]
    pub g2: Graph,
    /// `G[U_3]` plus every stage-3 fake edge, on the vertex set of `G`.
    #[serde(skip)]
    pub g3: Graph,
}

/// One layer as a standalone graph with its restricted decomposition.
struct LayerGraph {
    vertices: Vec<Vertex>,
    to_local: Vec<Option<Vertex>>,
    graph: Graph,
    td: TreeDecomposition,
}

impl LayerGraph {
    fn new(g: &Graph, td: &TreeDecomposition, layer: &[Vertex]) -> Self {
        let sub = g.induced(layer);
        let td = td.relabel(&sub.to_local);
        LayerGraph {
            vertices: sub.to_global,
            to_local: sub.to_local,
            graph: sub.graph,
            td,
        }
    }

    fn local(&self, v: Vertex) -> Vertex {
        self.to_local[v].expect("vertex belongs to this layer")
    }
}

/// Monochromatic components of `graph` with the given local color, in
/// global ids.
fn components_of_color(
    graph: &Graph,
    local_colors: &[usize],
    color: usize,
    to_global: &[Vertex],
) -> Result<Vec<Vec<Vertex>>> {
    Ok(monochromatic_components(graph, local_colors)?
        .components
        .into_iter()
        .filter(|(c, _)| *c == color)
        .map(|(_, comp)| {
            let mut g: Vec<Vertex> = comp.into_iter().map(|v| to_global[v]).collect();
            g.sort_unstable();
            g
        })
        .collect())
}

struct Occurrences {
    occ: Vec<Vec<Node>>,
}

impl Occurrences {
    /// Smallest node whose bag contains both `u` and `v`.
    fn first_common(&self, u: Vertex, v: Vertex) -> Option<Node> {
        let (a, b) = (&self.occ[u], &self.occ[v]);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Equal => return Some(a[i]),
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
            }
        }
        None
    }
}

/// Builds the fake-edge group of component `comp` towards layer `target`.
///
/// `Y` covers every `comp`–`target` edge by a bag of the original
/// decomposition (greedy, smallest node first), `T` is the set of nodes
/// whose bag in `t_bags` meets `comp`, and the pairs are all pairs of
/// `N(comp) ∩ target`, in the target layer's local ids.
fn fake_group(
    g: &Graph,
    occ: &Occurrences,
    td: &TreeDecomposition,
    comp: &[Vertex],
    target: &LayerGraph,
    t_nodes: Vec<Node>,
) -> Result<FakeEdgeGroup> {
    let mut cross: Vec<(Vertex, Vertex)> = Vec::new();
    for &c in comp {
        for &u in g.neighbors(c) {
            if target.to_local[u].is_some() {
                cross.push((c, u));
            }
        }
    }
    cross.sort_unstable();
    let mut y: Vec<Node> = Vec::new();
    for &(c, u) in &cross {
        let covered = y.iter().any(|&t| {
            let bag = td.bag(t);
            bag.binary_search(&c).is_ok() && bag.binary_search(&u).is_ok()
        });
        if !covered {
            let t = occ
                .first_common(c, u)
                .ok_or_else(|| Error::Internal(format!("edge ({c}, {u}) in no bag")))?;
            y.push(t);
        }
    }
    y.sort_unstable();
    let mut nbrs: Vec<Vertex> = cross.iter().map(|&(_, u)| target.local(u)).collect();
    nbrs.sort_unstable();
    nbrs.dedup();
    let mut pairs = Vec::new();
    for i in 0..nbrs.len() {
        for j in i + 1..nbrs.len() {
            pairs.push((nbrs[i], nbrs[j]));
        }
    }
    Ok(FakeEdgeGroup {
        y,
        t: t_nodes,
        pairs,
    })
}

fn nodes_meeting(bags: &[Vec<Vertex>], set: &[Vertex]) -> Vec<Node> {
    bags.iter()
        .enumerate()
        .filter(|(_, bag)| bag.iter().any(|v| set.binary_search(v).is_ok()))
        .map(|(t, _)| t)
        .collect()
}

fn saturate(x: &BigUint) -> u64 {
    x.to_u64().unwrap_or(u64::MAX)
}

fn check_stage(stage: &str, measured: usize, bound: &BigUint) -> Result<()> {
    if BigUint::from(measured) > *bound {
        return Err(Error::BoundExceeded {
            stage: stage.into(),
            measured,
            bound: bound.to_string(),
        });
    }
    Ok(())
}

/// Per-layer outcome of stage 2 or 3: the enlarged layer graph, its
/// decomposition and its local coloring (`{1, 2}` before remapping).
struct Enlarged {
    graph: Graph,
    td_bags: Vec<Vec<Vertex>>,
    colors: Vec<usize>,
}

pub fn three_color(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    delta: usize,
) -> Result<ThreeColoring> {
    three_color_with(g, ltd, delta, &ThreeColorConfig::default())
}

pub fn three_color_with(
    g: &Graph,
    ltd: &LayeredTreeDecomposition,
    delta: usize,
    config: &ThreeColorConfig,
) -> Result<ThreeColoring> {
    let measured_w = ltd.layered_width(g)?;
    if g.max_degree() > delta {
        return Err(Error::Precondition(format!(
            "maximum degree {} exceeds declared delta {delta}",
            g.max_degree()
        )));
    }
    let w = measured_w.max(config.declared_w.unwrap_or(0)).max(1);
    let delta = delta.max(1);
    let c_b = config.c_b.unwrap_or(DEFAULT_C_B);
    let two = TwoColorConfig { c_b };
    let k = compute_constants_with(w, delta, c_b);
    let td = &ltd.td;
    let ly = &ltd.layering;
    let m = ly.num_layers();
    let occ = Occurrences {
        occ: td.occurrences(g.n()),
    };
    let d_sq = BigUint::from(delta) * BigUint::from(delta);

    let layers: Vec<LayerGraph> = (1..=m)
        .map(|i| LayerGraph::new(g, td, ly.layer(i as i64)))
        .collect();
    let layer = |i: usize| -> Option<&LayerGraph> {
        if i >= 1 && i <= m {
            Some(&layers[i - 1])
        } else {
            None
        }
    };

    let mut coloring = vec![0usize; g.n()];
    let mut stages = Vec::new();

    // Stage 1: layers of U_1 with colors {1, 2}.
    let mut c1: Vec<Option<Vec<usize>>> = vec![None; m + 1];
    let mut st1 = StageStats {
        stage: 1,
        layers: 0,
        groups: 0,
        fake_edges: 0,
        max_width: 0,
        max_degree: 0,
        clustering: 0,
        bound: k.f1.clone(),
    };
    for i in (1..=m).filter(|&i| layer_class(i) == 1) {
        let lg = &layers[i - 1];
        let res = two_color_with_config(&lg.graph, &lg.td, delta, &two)?;
        check_stage("stage 1", res.clustering, &k.f1)?;
        st1.layers += 1;
        st1.max_width = st1.max_width.max(lg.td.width());
        st1.max_degree = st1.max_degree.max(lg.graph.max_degree());
        st1.clustering = st1.clustering.max(res.clustering);
        for (local, &v) in lg.vertices.iter().enumerate() {
            coloring[v] = res.coloring[local];
        }
        c1[i] = Some(res.coloring);
    }
    stages.push(st1);

    // Stage 2: layers of U_2, fake edges from color-2 components of the
    // previous U_1 layer; colors {2, 3}.
    let budget2 = EnlargeBudget {
        k: saturate(&(&k.f1 * &k.f1 * &d_sq)),
        d: saturate(&(&k.f1 * &d_sq)),
        h: (w + 1) as u64,
    };
    let mut g2_edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut stage2: Vec<Option<Enlarged>> = (0..=m).map(|_| None).collect();
    let mut st2 = StageStats {
        stage: 2,
        layers: 0,
        groups: 0,
        fake_edges: 0,
        max_width: 0,
        max_degree: 0,
        clustering: 0,
        bound: k.f2.clone(),
    };
    for i in (1..=m).filter(|&i| layer_class(i) == 2) {
        let target = &layers[i - 1];
        let mut groups = Vec::new();
        if let (Some(prev), Some(Some(colors))) = (layer(i - 1), c1.get(i - 1)) {
            for comp in components_of_color(&prev.graph, colors, 2, &prev.vertices)? {
                let t_nodes = nodes_meeting(td.bags(), &comp);
                let group = fake_group(g, &occ, td, &comp, target, t_nodes)?;
                if !group.pairs.is_empty() {
                    groups.push(group);
                }
            }
        }
        let (eg, etd) = enlarge(&target.graph, &target.td, &groups, budget2)
            .map_err(|e| stage_error("stage 2 enlarge", e))?;
        let res = two_color_with_config(&eg, &etd, saturate(&k.delta2) as usize, &two)?;
        check_stage("stage 2", res.clustering, &k.f2)?;
        st2.layers += 1;
        st2.groups += groups.len();
        st2.fake_edges += eg.num_edges() - target.graph.num_edges();
        st2.max_width = st2.max_width.max(etd.width());
        st2.max_degree = st2.max_degree.max(eg.max_degree());
        st2.clustering = st2.clustering.max(res.clustering);
        for (local, &v) in target.vertices.iter().enumerate() {
            coloring[v] = res.coloring[local] + 1;
        }
        g2_edges.extend(
            eg.edges()
                .map(|(a, b)| (target.vertices[a], target.vertices[b])),
        );
        stage2[i] = Some(Enlarged {
            graph: eg,
            td_bags: etd.bags().to_vec(),
            colors: res.coloring,
        });
    }
    stages.push(st2);

    // Stage 3: layers of U_3, fake edges from color-3 components of the
    // previous enlarged U_2 layer and color-1 components of the next U_1
    // layer; colors {1, 3}.
    let budget3 = EnlargeBudget {
        k: saturate(&(&k.f2 * &k.f2 * &d_sq)),
        d: saturate(&(&k.f2 * &d_sq)),
        h: saturate(&(2u8 * (&k.w2 + 1u8))),
    };
    let mut g3_edges: Vec<(Vertex, Vertex)> = Vec::new();
    let mut st3 = StageStats {
        stage: 3,
        layers: 0,
        groups: 0,
        fake_edges: 0,
        max_width: 0,
        max_degree: 0,
        clustering: 0,
        bound: k.f3.clone(),
    };
    for i in (1..=m).filter(|&i| layer_class(i) == 3) {
        let target = &layers[i - 1];
        let mut groups = Vec::new();
        if let (Some(prev), Some(Some(e2))) = (layer(i - 1), stage2.get(i - 1)) {
            // stage-2 colors 2 -> 3, so local color 2 is color 3
            for comp in components_of_color(&e2.graph, &e2.colors, 2, &prev.vertices)? {
                let local: Vec<Vertex> = {
                    let mut l: Vec<Vertex> = comp.iter().map(|&v| prev.local(v)).collect();
                    l.sort_unstable();
                    l
                };
                let t_nodes = nodes_meeting(&e2.td_bags, &local);
                let group = fake_group(g, &occ, td, &comp, target, t_nodes)?;
                if !group.pairs.is_empty() {
                    groups.push(group);
                }
            }
        }
        if let (Some(next), Some(Some(colors))) = (layer(i + 1), c1.get(i + 1)) {
            for comp in components_of_color(&next.graph, colors, 1, &next.vertices)? {
                let t_nodes = nodes_meeting(td.bags(), &comp);
                let group = fake_group(g, &occ, td, &comp, target, t_nodes)?;
                if !group.pairs.is_empty() {
                    groups.push(group);
                }
            }
        }
        let (eg, etd) = enlarge(&target.graph, &target.td, &groups, budget3)
            .map_err(|e| stage_error("stage 3 enlarge", e))?;
        let res = two_color_with_config(&eg, &etd, saturate(&k.delta3) as usize, &two)?;
        check_stage("stage 3", res.clustering, &k.f3)?;
        st3.layers += 1;
        st3.groups += groups.len();
        st3.fake_edges += eg.num_edges() - target.graph.num_edges();
        st3.max_width = st3.max_width.max(etd.width());
        st3.max_degree = st3.max_degree.max(eg.max_degree());
        st3.clustering = st3.clustering.max(res.clustering);
        for (local, &v) in target.vertices.iter().enumerate() {
            coloring[v] = if res.coloring[local] == 1 { 1 } else { 3 };
        }
        g3_edges.extend(
            eg.edges()
                .map(|(a, b)| (target.vertices[a], target.vertices[b])),
        );
    }
    stages.push(st3);

    if let Some(v) = coloring.iter().position(|&c| c == 0) {
        return Err(Error::Internal(format!("vertex {v} left uncolored")));
    }
    let measured = clustering(g, &coloring)?;
    check_stage("final coloring", measured, &k.g)?;
    Ok(ThreeColoring {
        coloring,
        clustering: measured,
        constants: k,
        stages,
        g2: Graph::from_edges(g.n(), g2_edges)?,
        g3: Graph::from_edges(g.n(), g3_edges)?,
    })
}

fn stage_error(stage: &str, e: Error) -> Error {
    match e {
        Error::Precondition(m) => Error::Internal(format!("{stage}: {m}")),
        other => other,
    }
}

/// The colors allowed for class `j`.
pub fn class_palette(j: usize) -> [usize; 2] {
    match j {
        1 => [1, 2],
        2 => [2, 3],
        _ => [1, 3],
    }
}
