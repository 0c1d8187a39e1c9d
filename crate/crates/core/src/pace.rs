//! Text formats: PACE 2017 `.gr` and `.td`, the layering sidecar, and
//! coloring and list files. Files use 1-based vertex ids; everything in
//! memory is 0-based.

use std::fmt::Write as _;
use std::path::Path;

use crate::decomposition::TreeDecomposition;
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::layering::Layering;

fn perr(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'))
}

fn parse_num(tok: &str, line: usize) -> Result<usize> {
    tok.parse().map_err(|_| {
        perr(
            line,
            format!("expected a nonnegative integer, found `{tok}`"),
        )
    })
}

/// 1-based id in `1..=n` to a 0-based vertex.
fn parse_id(tok: &str, n: usize, line: usize, what: &str) -> Result<usize> {
    let x = parse_num(tok, line)?;
    if x == 0 || x > n {
        return Err(perr(line, format!("{what} id {x} out of range 1..={n}")));
    }
    Ok(x - 1)
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p tw {} {}\n", g.n(), g.num_edges());
    for (u, v) in g.edges() {
        writeln!(out, "{} {}", u + 1, v + 1).unwrap();
    }
    out
}

pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing `p tw` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 4 || toks[0] != "p" || toks[1] != "tw" {
        return Err(perr(hline, format!("malformed header `{header}`")));
    }
    let n = parse_num(toks[2], hline)?;
    let m = parse_num(toks[3], hline)?;
    let mut edges = Vec::with_capacity(m);
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(perr(ln, format!("expected an edge `u v`, found `{l}`")));
        }
        let u = parse_id(toks[0], n, ln, "vertex")?;
        let v = parse_id(toks[1], n, ln, "vertex")?;
        if u == v {
            return Err(perr(ln, format!("self-loop at vertex {}", u + 1)));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(perr(
            hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::from_edges(n, edges)
}

/// `.td` text for a decomposition of a graph on `n` vertices.
pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let mut out = format!("s td {} {} {}\n", td.num_nodes(), td.max_bag_size(), n);
    for (t, bag) in td.bags().iter().enumerate() {
        write!(out, "b {}", t + 1).unwrap();
        for &v in bag {
            write!(out, " {}", v + 1).unwrap();
        }
        out.push('\n');
    }
    for (a, b) in td.tree_edges() {
        writeln!(out, "{} {}", a + 1, b + 1).unwrap();
    }
    out
}

/// Parses `.td` text; returns the decomposition and the declared vertex count.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| perr(1, "missing `s td` header"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 5 || toks[0] != "s" || toks[1] != "td" {
        return Err(perr(hline, format!("malformed header `{header}`")));
    }
    let nodes = parse_num(toks[2], hline)?;
    let max_bag = parse_num(toks[3], hline)?;
    let n = parse_num(toks[4], hline)?;
    let mut bags: Vec<Option<Vec<Vertex>>> = vec![None; nodes];
    let mut edges = Vec::new();
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] == "b" {
            if toks.len() < 2 {
                return Err(perr(ln, "bag line without an id"));
            }
            let id = parse_id(toks[1], nodes, ln, "bag")?;
            if bags[id].is_some() {
                return Err(perr(ln, format!("duplicate bag id {}", id + 1)));
            }
            let bag = toks[2..]
                .iter()
                .map(|t| parse_id(t, n, ln, "vertex"))
                .collect::<Result<Vec<_>>>()?;
            if bag.len() > max_bag {
                return Err(perr(
                    ln,
                    format!(
                        "bag of size {} exceeds declared maximum {max_bag}",
                        bag.len()
                    ),
                ));
            }
            bags[id] = Some(bag);
        } else {
            if toks.len() != 2 {
                return Err(perr(ln, format!("expected a tree edge `a b`, found `{l}`")));
            }
            let a = parse_id(toks[0], nodes, ln, "bag")?;
            let b = parse_id(toks[1], nodes, ln, "bag")?;
            edges.push((a, b));
        }
    }
    if let Some(t) = bags.iter().position(Option::is_none) {
        return Err(perr(hline, format!("bag {} is never defined", t + 1)));
    }
    let bags: Vec<Vec<Vertex>> = bags.into_iter().map(Option::unwrap).collect();
    let td = TreeDecomposition::new(bags, &edges).map_err(|e| perr(hline, e.to_string()))?;
    Ok((td, n))
}

/// Layering sidecar: line `i` lists the 1-based ids of layer `i`.
pub fn write_layering(ly: &Layering) -> String {
    let mut out = String::new();
    for layer in ly.layers() {
        let ids: Vec<String> = layer.iter().map(|v| (v + 1).to_string()).collect();
        out.push_str(&ids.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a layering sidecar for a graph on `n` vertices. Blank lines are
/// empty layers; comments are not allowed.
pub fn parse_layering(text: &str, n: usize) -> Result<Layering> {
    let mut layers = Vec::new();
    let mut seen = vec![false; n];
    for (i, l) in text.lines().enumerate() {
        let ln = i + 1;
        let mut layer = Vec::new();
        for tok in l.split_whitespace() {
            let v = parse_id(tok, n, ln, "vertex")?;
            if seen[v] {
                return Err(perr(ln, format!("vertex {} already layered", v + 1)));
            }
            seen[v] = true;
            layer.push(v);
        }
        layers.push(layer);
    }
    Layering::new(n, layers)
}

/// Coloring file: one `vertex color` pair per line, 1-based vertices.
pub fn write_coloring(coloring: &[usize]) -> String {
    let mut out = String::new();
    for (v, c) in coloring.iter().enumerate() {
        writeln!(out, "{} {}", v + 1, c).unwrap();
    }
    out
}

/// Parses a coloring of all `n` vertices; every vertex must appear once.
pub fn parse_coloring(text: &str, n: usize) -> Result<Vec<usize>> {
    let mut colors: Vec<Option<usize>> = vec![None; n];
    let mut last = 0;
    for (ln, l) in content_lines(text) {
        last = ln;
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(perr(ln, format!("expected `vertex color`, found `{l}`")));
        }
        let v = parse_id(toks[0], n, ln, "vertex")?;
        let c = parse_num(toks[1], ln)?;
        if c == 0 {
            return Err(perr(ln, "colors are positive integers"));
        }
        if colors[v].replace(c).is_some() {
            return Err(perr(ln, format!("vertex {} colored twice", v + 1)));
        }
    }
    colors
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or_else(|| perr(last + 1, format!("vertex {} has no color", v + 1))))
        .collect()
}

/// List file: `vertex c1 c2 ...` per line; every vertex must appear once.
pub fn parse_lists(text: &str, n: usize) -> Result<Vec<Vec<usize>>> {
    let mut lists: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut last = 0;
    for (ln, l) in content_lines(text) {
        last = ln;
        let mut toks = l.split_whitespace();
        let v = parse_id(toks.next().unwrap(), n, ln, "vertex")?;
        let mut list = toks.map(|t| parse_num(t, ln)).collect::<Result<Vec<_>>>()?;
        if list.is_empty() {
            return Err(perr(ln, format!("empty list for vertex {}", v + 1)));
        }
        list.sort_unstable();
        list.dedup();
        if lists[v].replace(list).is_some() {
            return Err(perr(ln, format!("vertex {} listed twice", v + 1)));
        }
    }
    lists
        .into_iter()
        .enumerate()
        .map(|(v, l)| l.ok_or_else(|| perr(last + 1, format!("vertex {} has no list", v + 1))))
        .collect()
}

pub fn write_lists(lists: &[Vec<usize>]) -> String {
    let mut out = String::new();
    for (v, list) in lists.iter().enumerate() {
        write!(out, "{}", v + 1).unwrap();
        for c in list {
            write!(out, " {c}").unwrap();
        }
        out.push('\n');
    }
    out
}

pub fn read_gr(path: impl AsRef<Path>) -> Result<Graph> {
    parse_gr(&std::fs::read_to_string(path)?)
}

pub fn write_gr_file(path: impl AsRef<Path>, g: &Graph) -> Result<()> {
    Ok(std::fs::write(path, write_gr(g))?)
}

pub fn read_td(path: impl AsRef<Path>) -> Result<(TreeDecomposition, usize)> {
    parse_td(&std::fs::read_to_string(path)?)
}

pub fn write_td_file(path: impl AsRef<Path>, td: &TreeDecomposition, n: usize) -> Result<()> {
    Ok(std::fs::write(path, write_td(td, n))?)
}
