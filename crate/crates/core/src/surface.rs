//! Cut graphs of embeddings on orientable surfaces and centered colorings of
//! bounded-genus graphs.

use crate::coloring::Coloring;
use crate::embedding::{Embedding, Rotation};
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, Graph, VertexPath};
use crate::lifting::{layered_lift, planar_centered_coloring, planar_window_coloring, Window};

/// Subgraph whose removal leaves a planar graph, split into geodesic paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutGraph {
    /// Vertices of the cut graph, sorted.
    pub vertices: Vec<usize>,
    /// Edges of the cut graph as `(u, v)` with `u < v`.
    pub edges: Vec<(usize, usize)>,
    /// The edges outside both the BFS tree and the dual spanning tree.
    pub extra_edges: Vec<(usize, usize)>,
    /// Disjoint shortest paths covering `vertices`.
    pub parts: Vec<VertexPath>,
    pub genus: usize,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Tree-cotree cut graph: a BFS tree from vertex 0, a spanning tree of the
/// dual avoiding the duals of tree edges, and the 2g edges left over,
/// joined to the root through the BFS tree.
pub fn cut_graph(e: &Embedding) -> Result<CutGraph> {
    if e.genus == 0 {
        return Err(Error::PlanarInput);
    }
    let g = &e.graph;
    let layering = bfs_layering(g, 0)?;
    let in_tree = |u: usize, v: usize| layering.parent[u] == Some(v) || layering.parent[v] == Some(u);
    let mut dual = UnionFind((0..e.num_faces()).collect());
    let mut extra = Vec::new();
    for (u, v) in g.edges() {
        if in_tree(u, v) {
            continue;
        }
        let (f1, f2) = e.faces_of_edge(u, v);
        if !dual.union(f1, f2) {
            extra.push((u, v));
        }
    }
    if extra.len() != 2 * e.genus {
        return Err(Error::Internal(format!(
            "{} leftover edges for genus {}",
            extra.len(),
            e.genus
        )));
    }

    // Union of the leftover edges with the tree paths to their endpoints.
    let n = g.n();
    let mut in_cut = vec![false; n];
    let mut endpoints = Vec::new();
    for &(u, v) in &extra {
        for x in [u, v] {
            if !endpoints.contains(&x) {
                endpoints.push(x);
            }
            let mut y = x;
            while !in_cut[y] {
                in_cut[y] = true;
                match layering.parent[y] {
                    Some(up) => y = up,
                    None => break,
                }
            }
        }
    }
    let mut edges: Vec<(usize, usize)> = extra.clone();
    for v in 0..n {
        if let Some(up) = layering.parent[v] {
            if in_cut[v] {
                edges.push((v.min(up), v.max(up)));
            }
        }
    }
    // Only the root can be a leaf; peel it and the chain below it.
    let mut degree = vec![0usize; n];
    for &(u, v) in &edges {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut leaf = (0..n).find(|&v| in_cut[v] && degree[v] == 1);
    while let Some(v) = leaf {
        in_cut[v] = false;
        let pos = edges.iter().position(|&(a, b)| a == v || b == v).unwrap();
        let (a, b) = edges.swap_remove(pos);
        let other = if a == v { b } else { a };
        degree[v] = 0;
        degree[other] -= 1;
        leaf = (in_cut[other] && degree[other] == 1).then_some(other);
    }
    edges.sort_unstable();

    let mut assigned = vec![false; n];
    let mut parts = Vec::new();
    for &x in &endpoints {
        let mut path = Vec::new();
        let mut y = x;
        loop {
            if !in_cut[y] || assigned[y] {
                break;
            }
            assigned[y] = true;
            path.push(y);
            match layering.parent[y] {
                Some(up) => y = up,
                None => break,
            }
        }
        if !path.is_empty() {
            path.reverse();
            parts.push(VertexPath::new(g, path)?);
        }
    }
    for part in &mut parts {
        part.is_geodesic = true;
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| in_cut[v]).collect();
    Ok(CutGraph {
        vertices,
        edges,
        extra_edges: extra,
        parts,
        genus: e.genus,
    })
}

/// Window coloring for embedded graphs of positive genus: distinct colors on
/// a cut graph and the planar pipeline on the rest.
pub fn genus_window_coloring(window: &Window, p: usize) -> Result<Coloring> {
    let rotation = window
        .rotation
        .clone()
        .ok_or_else(|| Error::InvalidRotation("windows need a rotation system".into()))?;
    let e = Embedding::new(&window.graph, rotation)?;
    if e.genus == 0 {
        return planar_window_coloring(window, p);
    }
    let cut = cut_graph(&e)?;
    let (rest, kept) = window.graph.without_vertices(&cut.vertices);
    let inner = planar_centered_coloring(&rest, &e.rotation.restrict(&kept), p)?;
    let mut colors = vec![0; window.graph.n()];
    for (i, &v) in kept.iter().enumerate() {
        colors[v] = inner.colors[i];
    }
    for (i, &v) in cut.vertices.iter().enumerate() {
        colors[v] = inner.num_colors + i;
    }
    Ok(Coloring::from_values(&colors))
}

/// p-centered coloring of a graph embedded on an orientable surface of
/// genus g, with at most (p+1) (4g(4p+1) + F)^2 colors where F is the
/// planar bound. Planar inputs get exactly the planar pipeline's coloring.
pub fn genus_centered_coloring(g: &Graph, rotation: &Rotation, p: usize) -> Result<Coloring> {
    let mut planar = true;
    for component in g.components() {
        let sub = g.induced_subgraph(&component);
        let e = Embedding::new(&sub, rotation.restrict(&component))?;
        planar &= e.genus == 0;
    }
    if planar {
        return planar_centered_coloring(g, rotation, p);
    }
    layered_lift(g, Some(rotation), p, &genus_window_coloring)
}

/// Genus of each component's embedding, maximized.
pub fn max_component_genus(g: &Graph, rotation: &Rotation) -> Result<usize> {
    let mut genus = 0;
    for component in g.components() {
        let sub = g.induced_subgraph(&component);
        genus = genus.max(Embedding::new(&sub, rotation.restrict(&component))?.genus);
    }
    Ok(genus)
}
