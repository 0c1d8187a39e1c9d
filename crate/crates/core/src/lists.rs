//! List-coloring scaffolding over a layering: segments, compatible list
//! assignments, standard pairs, progress, gates, the segment-local
//! clustering check, and splitting apex vertices into per-layer copies.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layering::{validate_layering, validate_z_layering, Layering};
use crate::neighborhoods::n_lt_s;
use crate::report::{AxiomCheck, ValidationReport};
use crate::verification::{check_list_coloring, clustering};

/// `lists[v]`: a nonempty sorted set of colors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListAssignment {
    lists: Vec<Vec<usize>>,
}

impl ListAssignment {
    pub fn new(lists: Vec<Vec<usize>>) -> Result<Self> {
        let mut lists = lists;
        for (v, l) in lists.iter_mut().enumerate() {
            l.sort_unstable();
            l.dedup();
            if l.is_empty() {
                return Err(Error::Precondition(format!("list of vertex {v} is empty")));
            }
        }
        Ok(ListAssignment { lists })
    }

    pub fn len(&self) -> usize {
        self.lists.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lists.is_empty()
    }

    pub fn get(&self, v: Vertex) -> &[usize] {
        &self.lists[v]
    }

    pub fn lists(&self) -> &[Vec<usize>] {
        &self.lists
    }

    pub fn into_lists(self) -> Vec<Vec<usize>> {
        self.lists
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StandardPair {
    /// Sorted.
    pub y1: Vec<Vertex>,
    pub lists: ListAssignment,
}

impl StandardPair {
    /// `(∅, L)`; a standard pair whenever every list has `s + 1` colors.
    pub fn empty(lists: ListAssignment) -> Self {
        StandardPair {
            y1: Vec::new(),
            lists,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Segment {
    pub level: usize,
    /// Start index `a`, possibly non-positive.
    pub start: i64,
    /// Layer indices of `[a, a + s] ∩ [1, m]`.
    pub layers: Vec<usize>,
    /// Sorted.
    pub vertices: Vec<Vertex>,
}

fn check_s(s: usize) -> Result<()> {
    if s == 0 {
        return Err(Error::Precondition("s must be positive".into()));
    }
    Ok(())
}

/// The color forbidden on layer `j`: the residue of `j` mod `s + 2` in
/// `[s + 2]`.
pub fn forbidden_color(j: usize, s: usize) -> usize {
    let r = j % (s + 2);
    if r == 0 {
        s + 2
    } else {
        r
    }
}

/// All `s`-segments of the given level that share a layer with `[1, m]`.
pub fn segments(ly: &Layering, s: usize, level: usize) -> Result<Vec<Segment>> {
    check_s(s)?;
    if level == 0 || level > s + 2 {
        return Err(Error::Precondition(format!(
            "level {level} outside [1, {}]",
            s + 2
        )));
    }
    let p = (s + 2) as i64;
    let m = ly.num_layers() as i64;
    // smallest a ≡ level + 1 (mod s + 2) with a + s ≥ 1
    let residue = (level as i64 + 1).rem_euclid(p);
    let lowest = 1 - s as i64;
    let mut a = lowest + (residue - lowest).rem_euclid(p);
    let mut out = Vec::new();
    while a <= m {
        let layers: Vec<usize> = (a.max(1)..=(a + s as i64).min(m))
            .map(|j| j as usize)
            .collect();
        if layers.is_empty() {
            a += p;
            continue;
        }
        let mut vertices: Vec<Vertex> = layers
            .iter()
            .flat_map(|&j| ly.layer(j as i64).iter().copied())
            .collect();
        vertices.sort_unstable();
        out.push(Segment {
            level,
            start: a,
            layers,
            vertices,
        });
        a += p;
    }
    Ok(out)
}

/// `L(v) = [s + 2]` minus the color forbidden on the layer of `v`.
/// Vertices outside the layering get `[s + 1]`.
pub fn compatible_lists(ly: &Layering, s: usize) -> ListAssignment {
    let lists = (0..ly.n())
        .map(|v| match ly.layer_of(v) {
            Some(j) => {
                let f = forbidden_color(j, s);
                (1..=s + 2).filter(|&c| c != f).collect()
            }
            None => (1..=s + 1).collect(),
        })
        .collect();
    ListAssignment { lists }
}

/// Checks `(s, V)`-compatibility: lists inside `[s + 2]`, and color `i`
/// absent on layers `j ≡ i (mod s + 2)`. Unlayered vertices are only held
/// to the palette.
pub fn validate_compatible(ly: &Layering, lists: &ListAssignment, s: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    if lists.len() != ly.n() {
        report.push(AxiomCheck::fail(
            "domain",
            Vec::new(),
            format!("{} lists for {} vertices", lists.len(), ly.n()),
        ));
        return report;
    }
    report.push(AxiomCheck::pass("domain"));
    match (0..ly.n()).find(|&v| lists.get(v).iter().any(|&c| c == 0 || c > s + 2)) {
        Some(v) => report.push(AxiomCheck::fail(
            "palette",
            vec![v],
            format!("list {:?} leaves [1, {}]", lists.get(v), s + 2),
        )),
        None => report.push(AxiomCheck::pass("palette")),
    }
    let bad = (1..=ly.num_layers()).find_map(|j| {
        let banned = forbidden_color(j, s);
        ly.layer(j as i64)
            .iter()
            .find(|&&v| lists.get(v).contains(&banned))
            .map(|&v| (v, j))
    });
    match bad {
        Some((v, j)) => report.push(AxiomCheck::fail(
            "forbidden-color",
            vec![v],
            format!("list {:?} on layer {j}", lists.get(v)),
        )),
        None => report.push(AxiomCheck::pass("forbidden-color")),
    }
    report
}

fn sorted_mask(n: usize, set: &[Vertex]) -> Result<Vec<bool>> {
    let mut mask = vec![false; n];
    for &v in set {
        if v >= n {
            return Err(Error::Precondition(format!("vertex {v} out of range")));
        }
        mask[v] = true;
    }
    Ok(mask)
}

fn disjoint(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|c| b.binary_search(c).is_err())
}

/// Checks (L1), (L2) and (L3) for `pair`.
pub fn validate_standard_pair(g: &Graph, pair: &StandardPair, s: usize) -> ValidationReport {
    let mut report = ValidationReport::default();
    let l = &pair.lists;
    if l.len() != g.n() || pair.y1.iter().any(|&v| v >= g.n()) || s == 0 {
        report.push(AxiomCheck::fail(
            "domain",
            Vec::new(),
            "lists or Y1 do not match the graph, or s = 0",
        ));
        return report;
    }
    let in_y = sorted_mask(g.n(), &pair.y1).expect("range checked");

    let l1 = (0..g.n()).find(|&v| in_y[v] != (l.get(v).len() == 1));
    report.push(match l1 {
        None => AxiomCheck::pass("L1"),
        Some(v) => AxiomCheck::fail(
            "L1",
            vec![v],
            format!("in Y1: {}, list {:?}", in_y[v], l.get(v)),
        ),
    });

    let mut l2 = AxiomCheck::pass("L2");
    'outer: for y in n_lt_s(g, &pair.y1, s).expect("s checked") {
        let precolored: Vec<Vertex> = g
            .neighbors(y)
            .iter()
            .copied()
            .filter(|&u| in_y[u])
            .collect();
        let want = s + 1 - precolored.len();
        if l.get(y).len() != want {
            l2 = AxiomCheck::fail(
                "L2",
                vec![y],
                format!("list {:?} should have {want} colors", l.get(y)),
            );
            break;
        }
        for u in precolored {
            if !disjoint(l.get(y), l.get(u)) {
                l2 = AxiomCheck::fail(
                    "L2",
                    vec![u, y],
                    format!("lists {:?} and {:?} meet", l.get(u), l.get(y)),
                );
                break 'outer;
            }
        }
    }
    report.push(l2);

    let closed: Vec<bool> = (0..g.n())
        .map(|v| in_y[v] || g.neighbors(v).iter().any(|&u| in_y[u]))
        .collect();
    let l3 = (0..g.n()).find(|&v| !closed[v] && l.get(v).len() != s + 1);
    report.push(match l3 {
        None => AxiomCheck::pass("L3"),
        Some(v) => AxiomCheck::fail(
            "L3",
            vec![v],
            format!("list {:?} should have {} colors", l.get(v), s + 1),
        ),
    });
    report
}

/// The `(W, i)`-progress of `pair`.
///
/// New precolored vertices take the smallest color of `L(v) - {i}`. A
/// vertex of `N^{<s}(Y_1 ∪ W)` loses the colors of its newly precolored
/// neighbors, then its largest colors until it has
/// `|L(v)| - |N(v) ∩ (W - Y_1)|` of them.
pub fn progress(
    g: &Graph,
    pair: &StandardPair,
    w: &[Vertex],
    i: usize,
    s: usize,
) -> Result<StandardPair> {
    check_s(s)?;
    if pair.lists.len() != g.n() {
        return Err(Error::Precondition("lists do not match the graph".into()));
    }
    let in_y = sorted_mask(g.n(), &pair.y1)?;
    let in_w = sorted_mask(g.n(), w)?;
    let fresh: Vec<bool> = (0..g.n()).map(|v| in_w[v] && !in_y[v]).collect();
    let mut lists = pair.lists.lists.clone();
    for v in (0..g.n()).filter(|&v| fresh[v]) {
        let c = lists[v].iter().copied().find(|&c| c != i).ok_or_else(|| {
            Error::Precondition(format!("vertex {v} has no color besides {i} in its list"))
        })?;
        lists[v] = vec![c];
    }
    let mut y1: Vec<Vertex> = (0..g.n()).filter(|&v| in_y[v] || in_w[v]).collect();
    y1.sort_unstable();
    for v in n_lt_s(g, &y1, s)? {
        let forced: Vec<Vertex> = g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&u| fresh[u])
            .collect();
        if forced.is_empty() {
            continue;
        }
        let size = lists[v].len().checked_sub(forced.len()).ok_or_else(|| {
            Error::Precondition(format!(
                "vertex {v} has more new precolored neighbors than colors"
            ))
        })?;
        let taken: Vec<usize> = forced.iter().map(|&u| lists[u][0]).collect();
        let mut kept: Vec<usize> = lists[v]
            .iter()
            .copied()
            .filter(|c| !taken.contains(c))
            .collect();
        kept.truncate(size);
        if kept.is_empty() {
            return Err(Error::Precondition(format!(
                "list of vertex {v} would become empty"
            )));
        }
        lists[v] = kept;
    }
    Ok(StandardPair {
        y1,
        lists: ListAssignment { lists },
    })
}

/// `A(W)`: vertices outside `Y_1` adjacent to some `y ∈ W` whose list meets
/// `L(y)`. Sorted.
pub fn gates(g: &Graph, pair: &StandardPair, w: &[Vertex]) -> Result<Vec<Vertex>> {
    let in_y = sorted_mask(g.n(), &pair.y1)?;
    let in_y = &in_y;
    if let Some(&v) = w.iter().find(|&&v| v >= g.n() || !in_y[v]) {
        return Err(Error::Precondition(format!("vertex {v} of W is not in Y1")));
    }
    let mut out: Vec<Vertex> = w
        .iter()
        .flat_map(|&y| {
            let ly = pair.lists.get(y);
            g.neighbors(y)
                .iter()
                .copied()
                .filter(move |&v| !in_y[v] && !disjoint(pair.lists.get(v), ly))
                .collect::<Vec<_>>()
        })
        .collect();
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Whether every color-`i` component inside every level-`i` segment has at
/// most `k` vertices. When it does, the global clustering is recomputed and
/// must also be at most `k`.
pub fn segment_local_clustering_check(
    g: &Graph,
    ly: &Layering,
    lists: &ListAssignment,
    coloring: &[usize],
    s: usize,
    k: usize,
) -> Result<bool> {
    check_s(s)?;
    validate_layering(g, ly).into_result(Error::InvalidLayering)?;
    validate_compatible(ly, lists, s).into_result(Error::Precondition)?;
    let conf = check_list_coloring(coloring, lists.lists());
    if !conf.ok {
        return Err(Error::Precondition(format!(
            "not an L-coloring at vertex {:?}",
            conf.witness
        )));
    }
    let mut ok = true;
    'levels: for level in 1..=s + 2 {
        for seg in segments(ly, s, level)? {
            let mut mask = vec![false; g.n()];
            for &v in &seg.vertices {
                mask[v] = coloring[v] == level;
            }
            if g.components_within(&mask).iter().any(|c| c.len() > k) {
                ok = false;
                break 'levels;
            }
        }
    }
    if ok {
        let global = clustering(g, coloring)?;
        if global > k {
            return Err(Error::Internal(format!(
                "segment-local clustering ≤ {k} but global clustering is {global}"
            )));
        }
    }
    Ok(ok)
}

/// Result of splitting apex vertices into per-layer copies.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApexSplit {
    pub graph: Graph,
    pub layering: Layering,
    /// Original vertex of each vertex of the new graph.
    pub origin: Vec<Vertex>,
    /// For each apex `z`, its copy in layer `i` at index `i - 1`, or `None`
    /// when that copy was pruned.
    pub copies: BTreeMap<Vertex, Vec<Option<Vertex>>>,
    /// Lists carried over to the new graph when lists were given.
    pub lists: Option<ListAssignment>,
}

/// Replaces each `z ∈ Z` by copies `z_i ∈ V_i`, with `z_i` adjacent to the
/// neighbors of `z` in `V_i`. Edges inside `Z` are dropped. The layering is
/// padded to at least two layers.
///
/// With `lists = Some((L, s))`, a copy `z_i` with `L(z) = {i'}` and
/// `i ≡ i' (mod s + 2)` is deleted and its edges move to `z_{i-1}` (to
/// `z_2` when `i = 1`).
pub fn apex_split(
    g: &Graph,
    z: &[Vertex],
    ly: &Layering,
    lists: Option<(&ListAssignment, usize)>,
) -> Result<ApexSplit> {
    validate_z_layering(g, ly, z).into_result(Error::InvalidLayering)?;
    if let Some((l, s)) = lists {
        check_s(s)?;
        if l.len() != g.n() {
            return Err(Error::Precondition("lists do not match the graph".into()));
        }
    }
    let mut z: Vec<Vertex> = z.to_vec();
    z.sort_unstable();
    z.dedup();
    let in_z = sorted_mask(g.n(), &z)?;
    let ly = ly.padded(2);
    let m = ly.num_layers();

    let mut origin: Vec<Vertex> = (0..g.n()).filter(|&v| !in_z[v]).collect();
    let mut new_id: Vec<Option<Vertex>> = vec![None; g.n()];
    for (i, &v) in origin.iter().enumerate() {
        new_id[v] = Some(i);
    }
    let pruned = |zv: Vertex, i: usize| -> bool {
        match lists {
            Some((l, s)) if l.get(zv).len() == 1 => forbidden_color(i, s) == l.get(zv)[0],
            _ => false,
        }
    };
    let mut copies: BTreeMap<Vertex, Vec<Option<Vertex>>> = BTreeMap::new();
    let mut layers: Vec<Vec<Vertex>> = ly
        .layers()
        .iter()
        .map(|layer| {
            layer
                .iter()
                .map(|&v| new_id[v].expect("layered vertex"))
                .collect()
        })
        .collect();
    for &zv in &z {
        let mut per_layer = Vec::with_capacity(m);
        for (i, layer) in layers.iter_mut().enumerate() {
            if pruned(zv, i + 1) {
                per_layer.push(None);
            } else {
                let id = origin.len();
                origin.push(zv);
                layer.push(id);
                per_layer.push(Some(id));
            }
        }
        copies.insert(zv, per_layer);
    }

    let mut edges: Vec<(Vertex, Vertex)> = g
        .edges()
        .filter_map(|(u, v)| Some((new_id[u]?, new_id[v]?)))
        .collect();
    for (&zv, per_layer) in &copies {
        for &v in g.neighbors(zv) {
            if in_z[v] {
                continue;
            }
            let i = ly.layer_of(v).expect("layered vertex");
            let target = match per_layer[i - 1] {
                Some(c) => c,
                None => {
                    let j = if i > 1 { i - 1 } else { i + 1 };
                    per_layer[j - 1].ok_or_else(|| {
                        Error::Internal(format!("copies of {zv} in layers {i} and {j} both pruned"))
                    })?
                }
            };
            edges.push((target, new_id[v].expect("layered vertex")));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let graph = Graph::from_edges(origin.len(), edges)?;
    let layering = Layering::new(origin.len(), layers)?;
    validate_layering(&graph, &layering).into_result(Error::Internal)?;
    let lists = lists.map(|(l, _)| ListAssignment {
        lists: origin.iter().map(|&v| l.get(v).to_vec()).collect(),
    });
    Ok(ApexSplit {
        graph,
        layering,
        origin,
        copies,
        lists,
    })
}
