//! Combinatorial embeddings given by rotation systems.
//!
//! Faces are traced by the rule: after the dart `u -> v` comes the dart
//! `v -> w`, where `w` follows `u` in the cyclic order around `v`.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Cyclic order of the neighbors around every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rotation {
    pub order: Vec<Vec<usize>>,
}

impl Rotation {
    /// Checks that each list is a permutation of the neighbors in `g`.
    pub fn new(g: &Graph, order: Vec<Vec<usize>>) -> Result<Self> {
        if order.len() != g.n() {
            return Err(Error::InvalidRotation(format!(
                "{} rotation lists for {} vertices",
                order.len(),
                g.n()
            )));
        }
        for (v, list) in order.iter().enumerate() {
            let mut sorted = list.clone();
            sorted.sort_unstable();
            if sorted != g.neighbors(v) {
                return Err(Error::InvalidRotation(format!(
                    "rotation at {v} is not a permutation of its neighbors"
                )));
            }
        }
        Ok(Rotation { order })
    }

    /// Graph whose edges are read off the rotation lists.
    pub fn graph(&self) -> Result<Graph> {
        let edges = self
            .order
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().map(move |&v| (u, v)));
        let g = Graph::new(self.order.len(), edges)?;
        Rotation::new(&g, self.order.clone())?;
        Ok(g)
    }

    /// Rotation of the subgraph induced by `vertices` (local ids follow `vertices`).
    pub fn restrict(&self, vertices: &[usize]) -> Rotation {
        let mut local = vec![usize::MAX; self.order.len()];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        Rotation {
            order: vertices
                .iter()
                .map(|&v| {
                    self.order[v]
                        .iter()
                        .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                        .collect()
                })
                .collect(),
        }
    }
}

/// Dart tables of a rotation system. Dart ids are grouped by tail vertex in rotation order.
#[derive(Clone, Debug)]
pub(crate) struct Darts {
    pub offset: Vec<usize>,
    pub head: Vec<usize>,
    pub tail: Vec<usize>,
    pub rev: Vec<usize>,
    /// Per vertex: `(neighbor, dart)` sorted by neighbor.
    lookup: Vec<Vec<(usize, usize)>>,
}

impl Darts {
    pub fn new(rotation: &Rotation) -> Self {
        let n = rotation.order.len();
        let mut offset = Vec::with_capacity(n + 1);
        let mut head = Vec::new();
        let mut tail = Vec::new();
        offset.push(0);
        for (v, list) in rotation.order.iter().enumerate() {
            head.extend_from_slice(list);
            tail.extend(std::iter::repeat_n(v, list.len()));
            offset.push(head.len());
        }
        let lookup: Vec<Vec<(usize, usize)>> = (0..n)
            .map(|v| {
                let mut l: Vec<(usize, usize)> =
                    (offset[v]..offset[v + 1]).map(|d| (head[d], d)).collect();
                l.sort_unstable();
                l
            })
            .collect();
        let mut darts = Darts {
            offset,
            head,
            tail,
            rev: Vec::new(),
            lookup,
        };
        darts.rev = (0..darts.head.len())
            .map(|d| darts.dart(darts.head[d], darts.tail[d]))
            .collect();
        darts
    }

    pub fn len(&self) -> usize {
        self.head.len()
    }

    /// Dart `u -> v`.
    pub fn dart(&self, u: usize, v: usize) -> usize {
        let l = &self.lookup[u];
        l[l.binary_search_by_key(&v, |&(w, _)| w).expect("edge exists")].1
    }

    /// Next dart around the tail vertex.
    pub fn next_around(&self, d: usize) -> usize {
        let v = self.tail[d];
        let deg = self.offset[v + 1] - self.offset[v];
        self.offset[v] + (d - self.offset[v] + 1) % deg
    }

    /// Next dart along the boundary walk of the face of `d`.
    pub fn face_next(&self, d: usize) -> usize {
        self.next_around(self.rev[d])
    }

    /// Traces all faces; returns the dart sequence of each face and the face of each dart.
    pub fn faces(&self) -> (Vec<Vec<usize>>, Vec<usize>) {
        let mut face_of = vec![usize::MAX; self.len()];
        let mut faces = Vec::new();
        for start in 0..self.len() {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut walk = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = id;
                walk.push(d);
                d = self.face_next(d);
            }
            faces.push(walk);
        }
        (faces, face_of)
    }
}

/// Rotation system of a connected graph with its traced faces.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub graph: Graph,
    pub rotation: Rotation,
    /// Each face as the cyclic sequence of vertices met along its boundary walk.
    pub faces: Vec<Vec<usize>>,
    /// Solution of V - E + F = 2 - 2g.
    pub genus: usize,
    pub(crate) darts: Darts,
    pub(crate) face_of_dart: Vec<usize>,
}

impl Embedding {
    pub fn new(graph: &Graph, rotation: Rotation) -> Result<Self> {
        let rotation = Rotation::new(graph, rotation.order)?;
        if graph.n() == 0 || !graph.is_connected() {
            return Err(Error::Disconnected);
        }
        let darts = Darts::new(&rotation);
        let (dart_faces, face_of_dart) = darts.faces();
        let mut faces: Vec<Vec<usize>> = dart_faces
            .iter()
            .map(|walk| walk.iter().map(|&d| darts.tail[d]).collect())
            .collect();
        if faces.is_empty() {
            faces.push(Vec::new());
        }
        let (v, e, f) = (graph.n() as i64, graph.m() as i64, faces.len() as i64);
        let twice = 2 - v + e - f;
        if twice < 0 || twice % 2 != 0 {
            return Err(Error::InvalidRotation(format!(
                "Euler characteristic {} is not of an orientable surface",
                v - e + f
            )));
        }
        Ok(Embedding {
            graph: graph.clone(),
            rotation,
            faces,
            genus: (twice / 2) as usize,
            darts,
            face_of_dart,
        })
    }

    /// Number of faces.
    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Faces incident to the two sides of edge `(u, v)`.
    pub fn faces_of_edge(&self, u: usize, v: usize) -> (usize, usize) {
        let d = self.darts.dart(u, v);
        (self.face_of_dart[d], self.face_of_dart[self.darts.rev[d]])
    }
}

/// Faces of a rotation system of a connected graph.
pub fn trace_faces(g: &Graph, rotation: &Rotation) -> Result<Vec<Vec<usize>>> {
    Ok(Embedding::new(g, rotation.clone())?.faces)
}

/// A planar triangulation containing the original graph.
#[derive(Clone, Debug)]
pub struct Triangulation {
    pub embedding: Embedding,
    /// Edges added to the original graph, as `(u, v)` with `u < v`.
    pub added: Vec<(usize, usize)>,
}

/// Adds chords inside the faces of a planar embedding until every face is a
/// triangle. Graphs with fewer than three vertices are returned unchanged.
pub fn triangulate(e: &Embedding) -> Result<Triangulation> {
    if e.genus != 0 {
        return Err(Error::GenusMismatch {
            expected: 0,
            found: e.genus,
        });
    }
    let n = e.graph.n();
    if n < 3 {
        return Ok(Triangulation {
            embedding: e.clone(),
            added: Vec::new(),
        });
    }
    let mut rot = e.rotation.order.clone();
    let mut edges: HashSet<(usize, usize)> = e.graph.edges().collect();
    let mut added = Vec::new();
    for face in &e.faces {
        if face.len() > 3 {
            clip_face(face, &mut rot, &mut edges, &mut added)?;
        }
    }
    let mut graph = e.graph.clone();
    for &(u, v) in &added {
        graph.add_edge(u, v);
    }
    let embedding = Embedding::new(&graph, Rotation { order: rot })?;
    debug_assert_eq!(embedding.genus, 0);
    debug_assert!(embedding.faces.iter().all(|f| f.len() == 3));
    added.sort_unstable();
    Ok(Triangulation { embedding, added })
}

fn key(u: usize, v: usize) -> (usize, usize) {
    (u.min(v), u.max(v))
}

fn insert_after(list: &mut Vec<usize>, anchor: usize, value: usize) {
    let pos = list.iter().position(|&x| x == anchor).expect("anchor in rotation");
    list.insert(pos + 1, value);
}

/// Cuts off ears `a b c` (chord `a c`) from a face walk until it is a triangle.
fn clip_face(
    face: &[usize],
    rot: &mut [Vec<usize>],
    edges: &mut HashSet<(usize, usize)>,
    added: &mut Vec<(usize, usize)>,
) -> Result<()> {
    let k = face.len();
    let mut next: Vec<usize> = (0..k).map(|i| (i + 1) % k).collect();
    let mut prev: Vec<usize> = (0..k).map(|i| (i + k - 1) % k).collect();
    let mut len = k;
    let mut cur = 0;
    let mut failures = 0;
    while len > 3 {
        let (ib, ia, ic) = (cur, prev[cur], next[cur]);
        let (a, b, c) = (face[ia], face[ib], face[ic]);
        if a != c && !edges.contains(&key(a, c)) {
            let before_a = face[prev[ia]];
            // The walk ... before_a -> a -> b -> c -> after ... becomes
            // ... before_a -> a -> c -> after ..., leaving the triangle a b c.
            insert_after(&mut rot[a], before_a, c);
            insert_after(&mut rot[c], b, a);
            edges.insert(key(a, c));
            added.push(key(a, c));
            next[ia] = ic;
            prev[ic] = ia;
            len -= 1;
            cur = ic;
            failures = 0;
        } else {
            cur = ic;
            failures += 1;
            if failures > len {
                let mut walk = vec![face[cur]];
                let mut i = next[cur];
                while i != cur {
                    walk.push(face[i]);
                    i = next[i];
                }
                return Err(Error::Untriangulable(walk));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn cycle_embedding(n: usize) -> Embedding {
        let g = Graph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let order = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
        Embedding::new(&g, Rotation { order }).unwrap()
    }

    #[test]
    fn cycle_has_two_faces() {
        let e = cycle_embedding(4);
        assert_eq!(e.num_faces(), 2);
        assert_eq!(e.genus, 0);
    }

    #[test]
    fn tree_has_one_face() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        let rot = Rotation::new(&g, vec![vec![1, 2, 3], vec![0], vec![0], vec![0]]).unwrap();
        let e = Embedding::new(&g, rot).unwrap();
        assert_eq!(e.num_faces(), 1);
        assert_eq!(e.faces[0].len(), 6);
    }

    #[test]
    fn single_vertex() {
        let e = Embedding::new(&Graph::empty(1), Rotation { order: vec![vec![]] }).unwrap();
        assert_eq!((e.num_faces(), e.genus), (1, 0));
    }

    #[test]
    fn k4_in_the_plane() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
        let order = vec![vec![1, 2, 3], vec![0, 3, 2], vec![0, 1, 3], vec![0, 2, 1]];
        let e = Embedding::new(&g, Rotation::new(&g, order).unwrap()).unwrap();
        assert_eq!((e.num_faces(), e.genus), (4, 0));
    }

    #[test]
    fn k4_with_twisted_rotation_is_toroidal() {
        let g = Graph::new(4, [(0, 1), (0, 2), (0, 3), (1, 2), (2, 3), (3, 1)]).unwrap();
        let order = vec![vec![1, 2, 3], vec![0, 2, 3], vec![0, 1, 3], vec![0, 1, 2]];
        let e = Embedding::new(&g, Rotation::new(&g, order).unwrap()).unwrap();
        assert_eq!(e.genus, 1);
    }

    #[test]
    fn rotation_must_permute_neighbors() {
        let g = Graph::new(3, [(0, 1), (1, 2)]).unwrap();
        assert!(Rotation::new(&g, vec![vec![1], vec![0], vec![1]]).is_err());
        assert!(Rotation::new(&g, vec![vec![1], vec![0, 2], vec![0]]).is_err());
    }

    #[test]
    fn triangulating_small_cycles() {
        for (n, chords) in [(3, 0), (4, 2), (5, 4), (8, 10)] {
            let t = triangulate(&cycle_embedding(n)).unwrap();
            assert_eq!(t.added.len(), chords, "C{n}");
            assert_eq!(t.embedding.graph.m(), 3 * n - 6);
            assert!(t.embedding.faces.iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn triangulating_a_star() {
        let g = Graph::new(5, [(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        let rot = Rotation::new(&g, vec![vec![1, 2, 3, 4], vec![0], vec![0], vec![0], vec![0]]).unwrap();
        let t = triangulate(&Embedding::new(&g, rot).unwrap()).unwrap();
        assert_eq!(t.embedding.graph.m(), 9);
        assert_eq!(t.embedding.genus, 0);
    }

    #[test]
    fn triangulation_keeps_original_edges() {
        let e = cycle_embedding(6);
        let t = triangulate(&e).unwrap();
        assert!(e.graph.edges().all(|(u, v)| t.embedding.graph.has_edge(u, v)));
    }
}
