//! Text formats: edge lists, rotation systems, PACE `.td` files, colorings
//! and path partitions. Writers emit LF line endings and reparse to equal
//! values.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::coloring::Coloring;
use crate::embedding::Rotation;
use crate::error::{Error, Result};
use crate::graph::{Graph, Partition, VertexPath};
use crate::treedecomp::TreeDecomposition;

/// Names of the vertices of a parsed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Labels {
    names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Labels {
    /// Vertex `i` is called `i`.
    pub fn identity(n: usize) -> Self {
        Self::from_names((0..n).map(|i| i.to_string()).collect())
    }

    fn from_names(names: Vec<String>) -> Self {
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        Labels { names, index }
    }

    pub fn name(&self, v: usize) -> &str {
        &self.names[v]
    }

    pub fn lookup(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    fn vertex(&self, token: &str, line: usize) -> Result<usize> {
        self.lookup(token).ok_or_else(|| parse_error(line, format!("unknown vertex {token:?}")))
    }
}

fn parse_error(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

/// Lines with comments stripped, numbered from 1; blank lines are skipped.
fn content_lines<'a>(
    text: &'a str,
    comment: &'a str,
) -> impl Iterator<Item = (usize, Vec<&'a str>)> + 'a {
    text.lines().enumerate().filter_map(move |(i, line)| {
        let line = line.split(comment).next().unwrap_or("");
        let tokens: Vec<&str> = line.split_whitespace().collect();
        (!tokens.is_empty()).then_some((i + 1, tokens))
    })
}

fn number(token: &str, line: usize) -> Result<usize> {
    token
        .parse()
        .map_err(|_| parse_error(line, format!("expected a non-negative integer, found {token:?}")))
}

/// Graph with the names used in its source file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeList {
    pub graph: Graph,
    pub labels: Labels,
}

/// Parses `n m` followed by `m` lines `u v`. When every endpoint is an
/// integer below `n` the ids are used as they are; otherwise names are
/// numbered in order of first appearance and vertices never mentioned get
/// the remaining ids.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut lines = content_lines(text, "#");
    let (line, header) = lines.next().ok_or_else(|| parse_error(1, "missing `n m` header"))?;
    if header.len() != 2 {
        return Err(parse_error(line, "header must be `n m`"));
    }
    let (n, m) = (number(header[0], line)?, number(header[1], line)?);
    let mut raw = Vec::with_capacity(m);
    for (line, tokens) in lines {
        if tokens.len() != 2 {
            return Err(parse_error(line, "edge lines must be `u v`"));
        }
        raw.push((line, tokens[0], tokens[1]));
    }
    if raw.len() != m {
        return Err(parse_error(line, format!("header announces {m} edges, found {}", raw.len())));
    }
    let numeric = raw
        .iter()
        .all(|&(_, a, b)| [a, b].iter().all(|t| t.parse::<usize>().is_ok_and(|v| v < n)));
    let labels = if numeric {
        Labels::identity(n)
    } else {
        let mut names: Vec<String> = Vec::new();
        let mut seen: HashMap<&str, usize> = HashMap::new();
        for &(line, a, b) in &raw {
            for t in [a, b] {
                if !seen.contains_key(t) {
                    if names.len() == n {
                        return Err(parse_error(line, format!("more than {n} distinct vertices")));
                    }
                    seen.insert(t, names.len());
                    names.push(t.to_string());
                }
            }
        }
        let mut spare = 0usize;
        while names.len() < n {
            while seen.contains_key(format!("_{spare}").as_str()) {
                spare += 1;
            }
            names.push(format!("_{spare}"));
            spare += 1;
        }
        Labels::from_names(names)
    };
    let mut edges = Vec::with_capacity(m);
    for &(line, a, b) in &raw {
        let (u, v) = (labels.vertex(a, line)?, labels.vertex(b, line)?);
        if u == v {
            return Err(parse_error(line, format!("self-loop at {a}")));
        }
        edges.push((u, v));
    }
    Ok(EdgeList {
        graph: Graph::new(n, edges)?,
        labels,
    })
}

pub fn write_edge_list(g: &Graph, labels: &Labels) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", labels.name(u), labels.name(v));
    }
    out
}

/// Parses a rotation system: line `i` lists the neighbours of vertex `i` in
/// cyclic order. Lines starting with `#` are skipped; an empty line stands
/// for an isolated vertex.
pub fn parse_rotation(text: &str, g: &Graph, labels: &Labels) -> Result<Rotation> {
    let mut order = Vec::with_capacity(g.n());
    for (i, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        if order.len() == g.n() {
            if line.trim().is_empty() {
                continue;
            }
            return Err(parse_error(i + 1, format!("more than {} rotation lines", g.n())));
        }
        let around = line
            .split_whitespace()
            .map(|t| labels.vertex(t, i + 1))
            .collect::<Result<Vec<_>>>()?;
        order.push(around);
    }
    if order.len() != g.n() {
        return Err(parse_error(
            text.lines().count(),
            format!("expected {} rotation lines, found {}", g.n(), order.len()),
        ));
    }
    Rotation::new(g, order)
}

pub fn write_rotation(rotation: &Rotation, labels: &Labels) -> String {
    let mut out = String::new();
    for around in &rotation.order {
        let names: Vec<&str> = around.iter().map(|&w| labels.name(w)).collect();
        out.push_str(&names.join(" "));
        out.push('\n');
    }
    out
}

/// Parses a PACE `.td` file (`s td <bags> <width+1> <n>`, `b <id> v...`,
/// then tree edges; bag ids and vertices are 1-based).
pub fn parse_td(text: &str) -> Result<TreeDecomposition> {
    let mut header = None;
    let mut bags: Vec<Option<Vec<usize>>> = Vec::new();
    let mut edges = Vec::new();
    for (line, tokens) in content_lines(text, "\u{0}") {
        match tokens[0] {
            "c" => continue,
            "s" => {
                if tokens.len() != 5 || tokens[1] != "td" || header.is_some() {
                    return Err(parse_error(line, "expected a single `s td <bags> <width+1> <n>`"));
                }
                let k = number(tokens[2], line)?;
                let n = number(tokens[4], line)?;
                header = Some((k, number(tokens[3], line)?, n));
                bags = vec![None; k];
            }
            "b" => {
                let (k, _, n) = header.ok_or_else(|| parse_error(line, "bag before header"))?;
                let id = number(tokens.get(1).copied().unwrap_or(""), line)?;
                if id == 0 || id > k || bags[id - 1].is_some() {
                    return Err(parse_error(line, format!("bad or repeated bag id {id}")));
                }
                let mut bag = Vec::with_capacity(tokens.len() - 2);
                for t in &tokens[2..] {
                    let v = number(t, line)?;
                    if v == 0 || v > n {
                        return Err(parse_error(line, format!("vertex {v} outside 1..={n}")));
                    }
                    bag.push(v - 1);
                }
                bags[id - 1] = Some(bag);
            }
            _ => {
                let (k, _, _) = header.ok_or_else(|| parse_error(line, "edge before header"))?;
                if tokens.len() != 2 {
                    return Err(parse_error(line, "tree edges must be `a b`"));
                }
                let (a, b) = (number(tokens[0], line)?, number(tokens[1], line)?);
                if a == 0 || b == 0 || a > k || b > k {
                    return Err(parse_error(line, format!("tree edge ({a}, {b}) outside 1..={k}")));
                }
                edges.push((a - 1, b - 1));
            }
        }
    }
    let (_, declared, n) = header.ok_or_else(|| parse_error(1, "missing `s td` header"))?;
    let bags = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_error(0, format!("bag {} is missing", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    let largest = bags.iter().map(Vec::len).max().unwrap_or(0);
    if largest > declared {
        return Err(parse_error(0, format!("bag of size {largest} above the declared {declared}")));
    }
    TreeDecomposition::from_tree_edges(n, bags, &edges)
}

pub fn write_td(td: &TreeDecomposition) -> String {
    let largest = td.bags.iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.len(), largest, td.num_vertices);
    for (i, bag) in td.bags.iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for (child, parent) in td.tree_edges() {
        let _ = writeln!(out, "{} {}", parent + 1, child + 1);
    }
    out
}

/// Coloring file contents: the coloring and the `p` from its header.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoringFile {
    pub coloring: Coloring,
    pub p: Option<usize>,
}

/// Parses `c colors=<k> p=<p>` followed by `v c` lines, one per vertex.
pub fn parse_coloring(text: &str, labels: &Labels) -> Result<ColoringFile> {
    let n = labels.len();
    let mut colors = vec![usize::MAX; n];
    let mut declared = None;
    let mut p = None;
    for (line, tokens) in content_lines(text, "#") {
        if tokens[0] == "c" {
            for field in &tokens[1..] {
                match field.split_once('=') {
                    Some(("colors", k)) => declared = Some(number(k, line)?),
                    Some(("p", k)) => p = Some(number(k, line)?),
                    _ => return Err(parse_error(line, format!("unknown header field {field:?}"))),
                }
            }
            continue;
        }
        if tokens.len() != 2 {
            return Err(parse_error(line, "coloring lines must be `v c`"));
        }
        let v = labels.vertex(tokens[0], line)?;
        if colors[v] != usize::MAX {
            return Err(parse_error(line, format!("vertex {} colored twice", tokens[0])));
        }
        colors[v] = number(tokens[1], line)?;
    }
    if let Some(v) = colors.iter().position(|&c| c == usize::MAX) {
        return Err(parse_error(0, format!("vertex {} has no color", labels.name(v))));
    }
    let mut coloring = Coloring::new(colors);
    if let Some(k) = declared {
        if k < coloring.num_colors {
            return Err(parse_error(0, format!("color ids reach {} but colors={k}", coloring.num_colors - 1)));
        }
        coloring.num_colors = k;
    }
    Ok(ColoringFile { coloring, p })
}

pub fn write_coloring(c: &Coloring, p: usize, labels: &Labels) -> String {
    let mut out = format!("c colors={} p={p}\n", c.num_colors);
    for (v, &color) in c.colors.iter().enumerate() {
        let _ = writeln!(out, "{} {color}", labels.name(v));
    }
    out
}

/// Parses `part_id: v1 v2 ...` lines; part ids must be `0, 1, ...` in order.
pub fn parse_partition(text: &str, g: &Graph, labels: &Labels) -> Result<Partition> {
    let mut parts = Vec::new();
    for (line, tokens) in content_lines(text, "#") {
        let id = tokens[0]
            .strip_suffix(':')
            .ok_or_else(|| parse_error(line, "expected `part_id:`"))?;
        if number(id, line)? != parts.len() {
            return Err(parse_error(line, format!("expected part {}", parts.len())));
        }
        let vertices = tokens[1..]
            .iter()
            .map(|t| labels.vertex(t, line))
            .collect::<Result<Vec<_>>>()?;
        let mut path = VertexPath::new(g, vertices)?;
        path.is_geodesic = path.verify_geodesic(g);
        parts.push(path);
    }
    Partition::new(g, parts)
}

pub fn write_partition(partition: &Partition, labels: &Labels) -> String {
    let mut out = String::new();
    for (i, part) in partition.parts.iter().enumerate() {
        let _ = write!(out, "{i}:");
        for &v in &part.vertices {
            let _ = write!(out, " {}", labels.name(v));
        }
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators;
    use crate::planar::planar_geodesic_partition;

    fn same_tree(a: &TreeDecomposition, b: &TreeDecomposition) -> bool {
        let undirected = |t: &TreeDecomposition| {
            let mut e: Vec<_> = t.tree_edges().into_iter().map(|(x, y)| (x.min(y), x.max(y))).collect();
            e.sort_unstable();
            e
        };
        a.num_vertices == b.num_vertices && a.bags == b.bags && undirected(a) == undirected(b)
    }

    #[test]
    fn edge_list_round_trip() {
        let g = generators::grid(4, 5);
        let labels = Labels::identity(g.graph.n());
        let text = write_edge_list(&g.graph, &labels);
        assert_eq!(parse_edge_list(&text).unwrap().graph, g.graph);
    }

    #[test]
    fn edge_list_with_names_and_comments() {
        let text = "# a triangle\n4 3\nx y\ny z # closing\nz x\n";
        let parsed = parse_edge_list(text).unwrap();
        assert_eq!(parsed.graph.m(), 3);
        assert_eq!(parsed.labels.lookup("z"), Some(2));
        assert_eq!(parsed.graph.degree(3), 0);
        let again = parse_edge_list(&write_edge_list(&parsed.graph, &parsed.labels)).unwrap();
        assert_eq!(again.graph, parsed.graph);
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("2 1\n1 1\n").is_err());
    }

    #[test]
    fn rotation_round_trip() {
        let t = generators::toroidal_grid(3, 4);
        let labels = Labels::identity(t.graph.n());
        let text = write_rotation(&t.rotation, &labels);
        assert_eq!(parse_rotation(&text, &t.graph, &labels).unwrap(), t.rotation);
    }

    #[test]
    fn td_round_trip() {
        let g = generators::grid(6, 6);
        let gp = planar_geodesic_partition(&g.graph, &g.rotation).unwrap();
        let text = write_td(&gp.decomposition);
        let back = parse_td(&text).unwrap();
        assert!(same_tree(&back, &gp.decomposition));
        assert_eq!(parse_td(&write_td(&back)).unwrap(), back);
    }

    #[test]
    fn td_is_one_based() {
        let td = parse_td("c path\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n").unwrap();
        assert_eq!(td.bags, vec![vec![0, 1], vec![1, 2]]);
        assert!(parse_td("s td 1 1 2\nb 1 0\n").is_err());
    }

    #[test]
    fn coloring_round_trip() {
        let labels = Labels::identity(4);
        let c = Coloring::new(vec![0, 2, 1, 2]);
        let text = write_coloring(&c, 3, &labels);
        assert!(text.starts_with("c colors=3 p=3\n"));
        let back = parse_coloring(&text, &labels).unwrap();
        assert_eq!(back.coloring, c);
        assert_eq!(back.p, Some(3));
        assert!(parse_coloring("0 1\n", &labels).is_err());
    }

    #[test]
    fn partition_round_trip() {
        let g = generators::grid(5, 7);
        let gp = planar_geodesic_partition(&g.graph, &g.rotation).unwrap();
        let labels = Labels::identity(g.graph.n());
        let text = write_partition(&gp.partition, &labels);
        assert_eq!(parse_partition(&text, &g.graph, &labels).unwrap(), gp.partition);
    }
}
