//! Simple undirected graphs on dense vertex ids, BFS layerings, geodesic
//! paths, partitions and quotients.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are merged; loops are rejected.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        Ok(Self::from_raw_adjacency(adj))
    }

    /// Graph without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    fn from_raw_adjacency(mut adj: Vec<Vec<usize>>) -> Self {
        let mut twice = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            twice += list.len();
        }
        Graph { adj, m: twice / 2 }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Neighbors of `v` in increasing order.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> bool {
        if u == v || self.has_edge(u, v) {
            return false;
        }
        let pos = self.adj[u].binary_search(&v).unwrap_err();
        self.adj[u].insert(pos, v);
        let pos = self.adj[v].binary_search(&u).unwrap_err();
        self.adj[v].insert(pos, u);
        self.m += 1;
        true
    }

    /// Subgraph induced by `vertices`; local id `i` corresponds to `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Graph {
        let mut local = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let adj = vertices
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                    .collect()
            })
            .collect();
        Graph::from_raw_adjacency(adj)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut i = 0;
            while i < comp.len() {
                let v = comp[i];
                i += 1;
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    /// BFS distances from `sources`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, sources: &[usize]) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if dist[s] == usize::MAX {
                dist[s] = 0;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Graph obtained by deleting `removed` vertices; ids of survivors are kept
    /// in the returned map.
    pub fn without_vertices(&self, removed: &[usize]) -> (Graph, Vec<usize>) {
        let mut gone = vec![false; self.n()];
        for &v in removed {
            gone[v] = true;
        }
        let keep: Vec<usize> = (0..self.n()).filter(|&v| !gone[v]).collect();
        (self.induced_subgraph(&keep), keep)
    }
}

/// Simple path given by its vertex sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexPath {
    pub vertices: Vec<usize>,
    /// Set by producers that construct shortest paths.
    pub is_geodesic: bool,
}

impl VertexPath {
    /// Checks that consecutive vertices are adjacent and no vertex repeats.
    pub fn new(g: &Graph, vertices: Vec<usize>) -> Result<Self> {
        check_simple_path(g, &vertices)?;
        Ok(VertexPath {
            vertices,
            is_geodesic: false,
        })
    }

    pub(crate) fn geodesic_unchecked(vertices: Vec<usize>) -> Self {
        VertexPath {
            vertices,
            is_geodesic: true,
        }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// True if the path is simple and its length equals the distance between its ends.
    pub fn verify_geodesic(&self, g: &Graph) -> bool {
        if self.vertices.is_empty() || check_simple_path(g, &self.vertices).is_err() {
            return false;
        }
        let dist = g.distances_from(&self.vertices[..1]);
        dist[*self.vertices.last().unwrap()] == self.vertices.len() - 1
    }
}

fn check_simple_path(g: &Graph, vertices: &[usize]) -> Result<()> {
    let mut seen = std::collections::HashSet::new();
    for (i, &v) in vertices.iter().enumerate() {
        if v >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: v, n: g.n() });
        }
        if !seen.insert(v) {
            return Err(Error::InvalidPath(format!("vertex {v} repeats")));
        }
        if i > 0 && !g.has_edge(vertices[i - 1], v) {
            return Err(Error::InvalidPath(format!(
                "{} and {v} are not adjacent",
                vertices[i - 1]
            )));
        }
    }
    Ok(())
}

/// BFS layers from a root, with parents chosen as the smallest-id neighbor in
/// the previous layer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layering {
    pub root: usize,
    pub layers: Vec<Vec<usize>>,
    pub layer_of: Vec<usize>,
    pub parent: Vec<Option<usize>>,
}

impl Layering {
    /// Index of the deepest layer.
    pub fn depth(&self) -> usize {
        self.layers.len() - 1
    }
}

/// BFS layering of a connected graph from `root`.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<Layering> {
    if root >= g.n() {
        return Err(Error::VertexOutOfRange { vertex: root, n: g.n() });
    }
    let layer_of = g.distances_from(&[root]);
    if layer_of.contains(&usize::MAX) {
        return Err(Error::Disconnected);
    }
    let depth = layer_of.iter().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    for (v, &d) in layer_of.iter().enumerate() {
        layers[d].push(v);
    }
    let parent = (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .copied()
                .find(|&w| layer_of[w] + 1 == layer_of[v])
        })
        .collect();
    Ok(Layering {
        root,
        layers,
        layer_of,
        parent,
    })
}

/// Shortest path from `u` to `v`; every vertex steps to its smallest-id
/// neighbor closer to `u`.
pub fn shortest_path(g: &Graph, u: usize, v: usize) -> Result<VertexPath> {
    for w in [u, v] {
        if w >= g.n() {
            return Err(Error::VertexOutOfRange { vertex: w, n: g.n() });
        }
    }
    let dist = g.distances_from(&[u]);
    if dist[v] == usize::MAX {
        return Err(Error::Unreachable { from: u, to: v });
    }
    let mut path = vec![v];
    let mut cur = v;
    while cur != u {
        cur = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| dist[w] + 1 == dist[cur])
            .expect("BFS predecessor exists");
        path.push(cur);
    }
    path.reverse();
    Ok(VertexPath::geodesic_unchecked(path))
}

/// Partition of the vertex set into paths.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    pub parts: Vec<VertexPath>,
    pub part_of: Vec<usize>,
}

impl Partition {
    /// Validates that the parts are disjoint, cover all vertices and are paths of `g`.
    pub fn new(g: &Graph, parts: Vec<VertexPath>) -> Result<Self> {
        let mut part_of = vec![usize::MAX; g.n()];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPartition(format!("part {i} is empty")));
            }
            check_simple_path(g, &part.vertices)?;
            for &v in &part.vertices {
                if part_of[v] != usize::MAX {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {v} lies in parts {} and {i}",
                        part_of[v]
                    )));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return Err(Error::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Partition { parts, part_of })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest part size.
    pub fn max_part_size(&self) -> usize {
        self.parts.iter().map(VertexPath::len).max().unwrap_or(0)
    }
}

/// Quotient graph: one vertex per part, adjacent when some edge joins the parts.
pub fn quotient(g: &Graph, partition: &Partition) -> Graph {
    let edges = g.edges().filter_map(|(u, v)| {
        let (a, b) = (partition.part_of[u], partition.part_of[v]);
        (a != b).then_some((a, b))
    });
    Graph::new(partition.len(), edges).expect("part ids are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn layering_of_a_path() {
        let l = bfs_layering(&path(5), 0).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1], vec![2], vec![3], vec![4]]);
        assert_eq!(l.depth(), 4);
    }

    #[test]
    fn layering_of_a_star() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let l = bfs_layering(&g, 0).unwrap();
        assert_eq!(l.layers, vec![vec![0], vec![1, 2, 3]]);
    }

    #[test]
    fn layering_rejects_disconnected_graphs() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(bfs_layering(&g, 0), Err(Error::Disconnected)));
    }

    #[test]
    fn shortest_path_prefers_small_ids() {
        let p = shortest_path(&cycle(4), 0, 2).unwrap();
        assert_eq!(p.vertices, vec![0, 1, 2]);
        assert!(p.verify_geodesic(&cycle(4)));
    }

    #[test]
    fn shortest_path_to_itself() {
        assert_eq!(shortest_path(&path(3), 1, 1).unwrap().vertices, vec![1]);
    }

    #[test]
    fn shortest_path_unreachable() {
        let g = Graph::new(3, [(0, 1)]).unwrap();
        assert!(matches!(shortest_path(&g, 0, 2), Err(Error::Unreachable { .. })));
    }

    #[test]
    fn quotient_of_a_path() {
        let g = path(4);
        let parts = vec![
            VertexPath::new(&g, vec![0, 1]).unwrap(),
            VertexPath::new(&g, vec![2, 3]).unwrap(),
        ];
        let q = quotient(&g, &Partition::new(&g, parts).unwrap());
        assert_eq!(q.edges().collect::<Vec<_>>(), vec![(0, 1)]);
    }

    #[test]
    fn quotient_of_triangle_by_singletons_is_a_triangle() {
        let g = cycle(3);
        let parts = (0..3).map(|v| VertexPath::new(&g, vec![v]).unwrap()).collect();
        let q = quotient(&g, &Partition::new(&g, parts).unwrap());
        assert_eq!(q, g);
    }

    #[test]
    fn partition_rejects_overlap_and_gaps() {
        let g = path(3);
        let a = VertexPath::new(&g, vec![0, 1]).unwrap();
        let b = VertexPath::new(&g, vec![1, 2]).unwrap();
        assert!(Partition::new(&g, vec![a.clone(), b]).is_err());
        assert!(Partition::new(&g, vec![a]).is_err());
    }

    #[test]
    fn path_checks() {
        let g = cycle(5);
        assert!(VertexPath::new(&g, vec![0, 2]).is_err());
        assert!(VertexPath::new(&g, vec![0, 1, 0]).is_err());
        let long = VertexPath::new(&g, vec![0, 1, 2, 3]).unwrap();
        assert!(!long.verify_geodesic(&g));
    }

    #[test]
    fn duplicate_edges_merge() {
        let g = Graph::new(2, [(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.m(), 1);
        assert!(matches!(Graph::new(2, [(1, 1)]), Err(Error::SelfLoop(1))));
    }
}
