//! Partition of a planar graph into geodesic paths whose quotient has
//! treewidth at most 8.
//!
//! The graph is first triangulated. Starting from a face, the recursion keeps
//! a cycle of the triangulation split into at most six pieces, each a
//! shortest path of the original graph, and cuts the disk it bounds along
//! three shortest paths that meet at a single face.

use std::collections::VecDeque;

use crate::embedding::{triangulate, Darts, Embedding, Rotation};
use crate::error::{Error, Result};
use crate::graph::{quotient, Graph, Partition, VertexPath};
use crate::treedecomp::TreeDecomposition;

/// Geodesic partition with a decomposition of its quotient.
#[derive(Clone, Debug)]
pub struct GeodesicPartition {
    pub partition: Partition,
    pub quotient: Graph,
    /// Decomposition of `quotient`; bags hold part ids.
    pub decomposition: TreeDecomposition,
}

/// Pending disk: its boundary cycle, oriented like the faces inside it, and
/// the lengths of its pieces starting at index 0.
struct Disk {
    cycle: Vec<usize>,
    pieces: Vec<usize>,
    parent: Option<usize>,
}

struct Builder<'a> {
    g: &'a Graph,
    darts: &'a Darts,
    face_of_dart: &'a [usize],
    faces: &'a [Vec<usize>],
    parts: Vec<Vec<usize>>,
    part_of: Vec<usize>,
    bags: Vec<Vec<usize>>,
    parent: Vec<Option<usize>>,
    stamp: u32,
    on_cycle: Vec<u32>,
    inside: Vec<u32>,
    reached: Vec<u32>,
    pos: Vec<usize>,
    group: Vec<u8>,
    nearest: Vec<usize>,
    toward: Vec<usize>,
}

/// Splits a connected planar graph into geodesic paths such that contracting
/// each path gives a graph with a decomposition of width at most 8.
pub fn planar_geodesic_partition(g: &Graph, rotation: &Rotation) -> Result<GeodesicPartition> {
    let e = Embedding::new(g, rotation.clone())?;
    if e.genus != 0 {
        return Err(Error::GenusMismatch {
            expected: 0,
            found: e.genus,
        });
    }
    let n = g.n();
    if n <= 3 {
        let parts: Vec<VertexPath> = (0..n).map(|v| VertexPath::geodesic_unchecked(vec![v])).collect();
        let partition = Partition::new(g, parts)?;
        let decomposition = TreeDecomposition::new(n, vec![(0..n).collect()], vec![None])?;
        return Ok(GeodesicPartition {
            quotient: quotient(g, &partition),
            partition,
            decomposition,
        });
    }
    let plus = triangulate(&e)?.embedding;
    let mut b = Builder {
        g,
        darts: &plus.darts,
        face_of_dart: &plus.face_of_dart,
        faces: &plus.faces,
        parts: Vec::new(),
        part_of: vec![usize::MAX; n],
        bags: Vec::new(),
        parent: Vec::new(),
        stamp: 0,
        on_cycle: vec![0; n],
        inside: vec![0; n],
        reached: vec![0; n],
        pos: vec![0; n],
        group: vec![0; n],
        nearest: vec![0; n],
        toward: vec![0; n],
    };
    let outer = &plus.faces[plus.face_of_dart[0]];
    let cycle = vec![outer[0], outer[2], outer[1]];
    for &v in &cycle {
        b.new_part(vec![v]);
    }
    let mut stack = vec![Disk {
        cycle,
        pieces: vec![1, 1, 1],
        parent: None,
    }];
    while let Some(disk) = stack.pop() {
        b.process(disk, &mut stack)?;
    }
    let parts = b
        .parts
        .into_iter()
        .map(VertexPath::geodesic_unchecked)
        .collect();
    let partition = Partition::new(g, parts)?;
    let decomposition = TreeDecomposition::new(partition.len(), b.bags, b.parent)?;
    let quotient = quotient(g, &partition);
    debug_assert!(decomposition.validate(&quotient).is_ok());
    Ok(GeodesicPartition {
        partition,
        quotient,
        decomposition,
    })
}

impl Builder<'_> {
    fn new_part(&mut self, vertices: Vec<usize>) -> usize {
        let id = self.parts.len();
        for &v in &vertices {
            self.part_of[v] = id;
        }
        self.parts.push(vertices);
        id
    }

    fn add_node(&mut self, mut bag: Vec<usize>, parent: Option<usize>) -> usize {
        bag.sort_unstable();
        bag.dedup();
        self.bags.push(bag);
        self.parent.push(parent);
        self.bags.len() - 1
    }

    /// Neighbors of `w` strictly between `a` and `b`, going around `w` from `a`.
    fn sector(&self, w: usize, a: usize, b: usize) -> impl Iterator<Item = usize> + '_ {
        let darts = self.darts;
        let mut d = darts.next_around(darts.dart(w, a));
        std::iter::from_fn(move || {
            let x = darts.head[d];
            if x == b {
                return None;
            }
            d = darts.next_around(d);
            Some(x)
        })
    }

    fn process(&mut self, disk: Disk, stack: &mut Vec<Disk>) -> Result<()> {
        let Disk {
            cycle,
            mut pieces,
            parent,
        } = disk;
        debug_assert!(pieces.len() <= 6 && pieces.iter().sum::<usize>() == cycle.len());
        self.stamp += 1;
        let stamp = self.stamp;
        let len = cycle.len();
        for (t, &v) in cycle.iter().enumerate() {
            self.on_cycle[v] = stamp;
            self.pos[v] = t;
        }

        let mut interior = Vec::new();
        for t in 0..len {
            let (w, a, b) = (cycle[t], cycle[(t + len - 1) % len], cycle[(t + 1) % len]);
            let seeds: Vec<usize> = self.sector(w, a, b).collect();
            for x in seeds {
                if self.on_cycle[x] != stamp && self.inside[x] != stamp {
                    self.inside[x] = stamp;
                    interior.push(x);
                }
            }
        }
        let mut i = 0;
        while i < interior.len() {
            let v = interior[i];
            i += 1;
            for d in self.darts.offset[v]..self.darts.offset[v + 1] {
                let x = self.darts.head[d];
                if self.on_cycle[x] != stamp && self.inside[x] != stamp {
                    self.inside[x] = stamp;
                    interior.push(x);
                }
            }
        }

        let cycle_parts: Vec<usize> = cycle.iter().map(|&v| self.part_of[v]).collect();
        if interior.is_empty() {
            self.add_node(cycle_parts, parent);
            return Ok(());
        }

        // At least three pieces, then three consecutive groups of one or two.
        if pieces.len() == 1 {
            pieces = vec![len / 3, len / 3, len - 2 * (len / 3)];
        } else if pieces.len() == 2 {
            let i = if pieces[0] >= pieces[1] { 0 } else { 1 };
            let half = pieces[i] / 2;
            pieces[i] -= half;
            pieces.insert(i + 1, half);
        }
        let group_sizes: &[usize] = match pieces.len() {
            3 => &[1, 1, 1],
            4 => &[2, 1, 1],
            5 => &[2, 2, 1],
            _ => &[2, 2, 2],
        };
        let mut piece_at = Vec::with_capacity(len);
        let mut piece = 0;
        for (j, &size) in group_sizes.iter().enumerate() {
            for _ in 0..size {
                for _ in 0..pieces[piece] {
                    self.group[cycle[piece_at.len()]] = j as u8;
                    piece_at.push(piece);
                }
                piece += 1;
            }
        }

        // Nearest cycle vertex in the original graph, ties to the lower group
        // and then the lower id.
        let mut sources = cycle.clone();
        sources.sort_by_key(|&v| (self.group[v], v));
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in &sources {
            self.reached[s] = stamp;
            self.nearest[s] = s;
            self.toward[s] = s;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &w in self.g.neighbors(v) {
                if self.inside[w] == stamp && self.reached[w] != stamp {
                    self.reached[w] = stamp;
                    self.nearest[w] = self.nearest[v];
                    self.toward[w] = v;
                    queue.push_back(w);
                }
            }
        }
        if let Some(&v) = interior.iter().find(|&&v| self.reached[v] != stamp) {
            return Err(Error::Internal(format!("vertex {v} not reached from the cycle")));
        }

        let face = self.rainbow_face(&interior, &cycle)?;
        let corner: Vec<usize> = (0..3)
            .map(|j| {
                *face
                    .iter()
                    .find(|&&v| self.group[self.nearest[v]] as usize == j)
                    .unwrap()
            })
            .collect();
        let first = face.iter().position(|&v| v == corner[0]).unwrap();
        if face[(first + 1) % 3] != corner[1] {
            return Err(Error::Internal("face meeting the three groups has the wrong orientation".into()));
        }

        // Shortest paths from the corners down to the cycle, without their last vertex.
        let legs: Vec<Vec<usize>> = corner
            .iter()
            .map(|&v| {
                let mut leg = Vec::new();
                let mut x = v;
                while self.on_cycle[x] != stamp {
                    leg.push(x);
                    x = self.toward[x];
                }
                leg
            })
            .collect();
        let mut bag = cycle_parts;
        for leg in &legs {
            if !leg.is_empty() {
                bag.push(self.new_part(leg.clone()));
            }
        }
        let node = self.add_node(bag, parent);

        for j in 0..3 {
            let next = (j + 1) % 3;
            let s = self.pos[self.nearest[corner[j]]];
            let t = self.pos[self.nearest[corner[next]]];
            let mut child = Vec::new();
            let mut child_pieces: Vec<usize> = Vec::new();
            let mut k = s;
            loop {
                if child.is_empty() || piece_at[k] != piece_at[(k + len - 1) % len] {
                    child_pieces.push(0);
                }
                child.push(cycle[k]);
                *child_pieces.last_mut().unwrap() += 1;
                if k == t {
                    break;
                }
                k = (k + 1) % len;
            }
            if !legs[next].is_empty() {
                child.extend(legs[next].iter().rev());
                child_pieces.push(legs[next].len());
            }
            if !legs[j].is_empty() {
                child.extend(legs[j].iter());
                child_pieces.push(legs[j].len());
            }
            if child.len() >= 3 {
                stack.push(Disk {
                    cycle: child,
                    pieces: child_pieces,
                    parent: Some(node),
                });
            }
        }
        Ok(())
    }

    /// A face inside the current disk whose vertices lie in three different groups.
    fn rainbow_face(&self, interior: &[usize], cycle: &[usize]) -> Result<Vec<usize>> {
        let len = cycle.len();
        let is_rainbow = |f: usize| {
            let face = &self.faces[f];
            let mut seen = [false; 3];
            for &v in face {
                seen[self.group[self.nearest[v]] as usize] = true;
            }
            seen.iter().all(|&s| s)
        };
        for &v in interior {
            for d in self.darts.offset[v]..self.darts.offset[v + 1] {
                let f = self.face_of_dart[d];
                if is_rainbow(f) {
                    return Ok(self.faces[f].clone());
                }
            }
        }
        for t in 0..len {
            let (w, a, b) = (cycle[t], cycle[(t + len - 1) % len], cycle[(t + 1) % len]);
            let mut d = self.darts.next_around(self.darts.dart(w, a));
            loop {
                let f = self.face_of_dart[d];
                if is_rainbow(f) {
                    return Ok(self.faces[f].clone());
                }
                if self.darts.head[d] == b {
                    break;
                }
                d = self.darts.next_around(d);
            }
        }
        Err(Error::Internal("no face meets all three groups".into()))
    }
}
