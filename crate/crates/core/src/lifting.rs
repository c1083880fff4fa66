//! Building p-centered colorings of whole graphs from colorings of pieces:
//! bounded-radius windows of a BFS layering, and quotients by partitions
//! into short paths.

use rayon::prelude::*;

use crate::coloring::{canonicalize, Coloring};
use crate::embedding::{Embedding, Rotation};
use crate::error::{Error, Result};
use crate::graph::{bfs_layering, Graph, Layering, Partition};
use crate::planar::planar_geodesic_partition;
use crate::treedecomp::treewidth_centered_coloring;

/// Connected piece of bounded radius handed to a window colorer.
#[derive(Clone, Debug)]
pub struct Window {
    pub graph: Graph,
    /// Present when the host graph came with a rotation system.
    pub rotation: Option<Rotation>,
    /// Host vertex of each local vertex; `None` for the vertex that replaces
    /// the contracted inner layers.
    pub origin: Vec<Option<usize>>,
    /// Local id of the vertex every other vertex is within `2p` of.
    pub center: usize,
}

/// Colors a window of radius at most `2p`; the result must be p-centered.
pub trait WindowColorer: Sync {
    fn color(&self, window: &Window, p: usize) -> Result<Coloring>;
}

impl<F> WindowColorer for F
where
    F: Fn(&Window, usize) -> Result<Coloring> + Sync,
{
    fn color(&self, window: &Window, p: usize) -> Result<Coloring> {
        self(window, p)
    }
}

/// Colors of one vertex before canonicalization: layer index mod (p+1) and
/// two window colors.
type LayerTriple = (usize, usize, usize);

/// Extends a coloring procedure for graphs of radius at most `2p` to all
/// graphs, using at most (p+1) f^2 colors when windows use at most f.
///
/// Every component is layered by BFS from its smallest vertex. For each
/// `j` divisible by `p`, the window consists of layers `j .. j+2p-1`, with
/// all lower layers contracted into one vertex.
pub fn layered_lift(
    g: &Graph,
    rotation: Option<&Rotation>,
    p: usize,
    colorer: &dyn WindowColorer,
) -> Result<Coloring> {
    if let Some(rot) = rotation {
        Rotation::new(g, rot.order.clone())?;
    }
    if p == 0 {
        return Ok(Coloring::from_values(&vec![0; g.n()]));
    }
    let mut triples: Vec<LayerTriple> = vec![(0, 0, 0); g.n()];
    for component in g.components() {
        let sub = g.induced_subgraph(&component);
        let sub_rotation = rotation.map(|r| r.restrict(&component));
        let layering = bfs_layering(&sub, 0)?;
        let starts: Vec<usize> = (0..=layering.depth()).step_by(p).collect();
        let window_colors: Vec<Vec<usize>> = starts
            .par_iter()
            .map(|&j| {
                let window = build_window(&sub, sub_rotation.as_ref(), &layering, j, p);
                let coloring = colorer.color(&window, p)?;
                if coloring.len() != window.graph.n() {
                    return Err(Error::ColoringLength {
                        expected: window.graph.n(),
                        found: coloring.len(),
                    });
                }
                // Color by local vertex id of the component.
                let mut by_vertex = vec![usize::MAX; sub.n()];
                for (i, origin) in window.origin.iter().enumerate() {
                    if let Some(v) = origin {
                        by_vertex[*v] = coloring.colors[i];
                    }
                }
                Ok(by_vertex)
            })
            .collect::<Result<_>>()?;
        for (local, &v) in component.iter().enumerate() {
            let i = layering.layer_of[local];
            let w = i / p;
            let own = window_colors[w][local];
            let previous = if w == 0 { 0 } else { window_colors[w - 1][local] };
            debug_assert!(own != usize::MAX && previous != usize::MAX);
            triples[v] = if w % 2 == 0 {
                (i % (p + 1), own, previous)
            } else {
                (i % (p + 1), previous, own)
            };
        }
    }
    Ok(canonicalize(&triples).0)
}

/// Window starting at layer `j`: layers `j .. j+2p-1` plus, when `j > 0`, a
/// vertex standing for layers below `j`.
fn build_window(
    g: &Graph,
    rotation: Option<&Rotation>,
    layering: &Layering,
    j: usize,
    p: usize,
) -> Window {
    let top = j + 2 * p - 1;
    let kept: Vec<usize> = (j..=top.min(layering.depth()))
        .flat_map(|i| layering.layers[i].iter().copied())
        .collect();
    if j == 0 {
        let center = kept.iter().position(|&v| v == layering.root).unwrap();
        return Window {
            graph: g.induced_subgraph(&kept),
            rotation: rotation.map(|r| r.restrict(&kept)),
            origin: kept.iter().map(|&v| Some(v)).collect(),
            center,
        };
    }
    // Local id 0 is the contracted vertex.
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in kept.iter().enumerate() {
        local[v] = i + 1;
    }
    let below = |v: usize| layering.layer_of[v] < j;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &v in &kept {
        for &w in g.neighbors(v) {
            if local[w] != usize::MAX && local[v] < local[w] {
                edges.push((local[v], local[w]));
            } else if below(w) {
                edges.push((0, local[v]));
            }
        }
    }
    let graph = Graph::new(kept.len() + 1, edges).expect("local ids are in range");
    let rotation = rotation.map(|rot| {
        // Walk around the BFS tree of the contracted layers to get the
        // cyclic order of the edges leaving them; keep the first edge to
        // each outside neighbor.
        let crossing = boundary_walk(rot, layering, j);
        let mut chosen = vec![usize::MAX; g.n()];
        let mut order0 = Vec::new();
        for &(s, x) in &crossing {
            if chosen[x] == usize::MAX {
                chosen[x] = s;
                order0.push(local[x]);
            }
        }
        let mut order = vec![order0];
        for &v in &kept {
            order.push(
                rot.order[v]
                    .iter()
                    .filter_map(|&w| {
                        if local[w] != usize::MAX {
                            Some(local[w])
                        } else if below(w) && chosen[v] == w {
                            Some(0)
                        } else {
                            None
                        }
                    })
                    .collect(),
            );
        }
        Rotation { order }
    });
    let mut origin = vec![None];
    origin.extend(kept.iter().map(|&v| Some(v)));
    Window {
        graph,
        rotation,
        origin,
        center: 0,
    }
}

/// Darts `(s, x)` from layers below `j` to layer `j`, in the cyclic order in
/// which they leave the contracted region.
fn boundary_walk(rot: &Rotation, layering: &Layering, j: usize) -> Vec<(usize, usize)> {
    let below = |v: usize| layering.layer_of[v] < j;
    let is_child = |s: usize, y: usize| layering.parent[y] == Some(s) && below(y);
    let mut crossing = Vec::new();
    let root = layering.root;
    // Frame: vertex, rotation index to look at next, number of entries left.
    let mut stack = vec![(root, 0usize, rot.order[root].len())];
    while let Some(frame) = stack.last_mut() {
        let (s, idx, left) = *frame;
        if left == 0 {
            stack.pop();
            continue;
        }
        let list = &rot.order[s];
        let y = list[idx % list.len()];
        frame.1 += 1;
        frame.2 -= 1;
        if is_child(s, y) {
            let around = &rot.order[y];
            let back = around.iter().position(|&x| x == s).unwrap();
            stack.push((y, back + 1, around.len() - 1));
        } else if !below(y) {
            crossing.push((s, y));
        }
    }
    crossing
}

/// Colors each vertex by its position within its part together with the
/// color of its part in a coloring of the quotient graph.
pub fn partition_lift<F>(g: &Graph, partition: &Partition, p: usize, quotient_colorer: F) -> Result<Coloring>
where
    F: FnOnce(&Graph, usize) -> Result<Coloring>,
{
    let q = crate::graph::quotient(g, partition);
    let outer = quotient_colorer(&q, p)?;
    if outer.len() != q.n() {
        return Err(Error::ColoringLength {
            expected: q.n(),
            found: outer.len(),
        });
    }
    let mut pairs = vec![(0, 0); g.n()];
    for (id, part) in partition.parts.iter().enumerate() {
        for (position, &v) in part.vertices.iter().enumerate() {
            pairs[v] = (position, outer.colors[id]);
        }
    }
    Ok(canonicalize(&pairs).0)
}

/// Coloring of a planar window: geodesic partition, then the treewidth
/// coloring of the width-8 quotient, lifted through the partition.
pub fn planar_window_coloring(window: &Window, p: usize) -> Result<Coloring> {
    let rotation = window
        .rotation
        .as_ref()
        .ok_or_else(|| Error::InvalidRotation("planar windows need a rotation system".into()))?;
    let gp = planar_geodesic_partition(&window.graph, rotation)?;
    partition_lift(&window.graph, &gp.partition, p, |q, p| {
        treewidth_centered_coloring(q, &gp.decomposition, p)
    })
}

/// p-centered coloring of a planar graph with at most
/// (p+1) (4p+1)^2 C(p+8, 8)^2 colors.
pub fn planar_centered_coloring(g: &Graph, rotation: &Rotation, p: usize) -> Result<Coloring> {
    for component in g.components() {
        let sub = g.induced_subgraph(&component);
        let e = Embedding::new(&sub, rotation.restrict(&component))?;
        if e.genus != 0 {
            return Err(Error::GenusMismatch {
                expected: 0,
                found: e.genus,
            });
        }
    }
    layered_lift(g, Some(rotation), p, &planar_window_coloring)
}
