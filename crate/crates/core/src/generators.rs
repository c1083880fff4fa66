//! Deterministic and seeded instance generators.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::embedding::Rotation;
use crate::graph::Graph;
use crate::treedecomp::TreeDecomposition;

/// Graph together with a rotation system.
#[derive(Clone, Debug)]
pub struct EmbeddedGraph {
    pub graph: Graph,
    pub rotation: Rotation,
}

impl EmbeddedGraph {
    fn from_rotation(order: Vec<Vec<usize>>) -> Self {
        let rotation = Rotation { order };
        let graph = rotation.graph().expect("generated rotation is consistent");
        EmbeddedGraph { graph, rotation }
    }
}

pub fn path(n: usize) -> Graph {
    Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> EmbeddedGraph {
    EmbeddedGraph::from_rotation((0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect())
}

pub fn complete(n: usize) -> Graph {
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// `rows x cols` grid in the plane; vertex `(r, c)` has id `r * cols + c`.
pub fn grid(rows: usize, cols: usize) -> EmbeddedGraph {
    let id = |r: usize, c: usize| r * cols + c;
    let order = (0..rows * cols)
        .map(|v| {
            let (r, c) = (v / cols, v % cols);
            let mut around = Vec::with_capacity(4);
            if c + 1 < cols {
                around.push(id(r, c + 1));
            }
            if r > 0 {
                around.push(id(r - 1, c));
            }
            if c > 0 {
                around.push(id(r, c - 1));
            }
            if r + 1 < rows {
                around.push(id(r + 1, c));
            }
            around
        })
        .collect();
    EmbeddedGraph::from_rotation(order)
}

/// `rows x cols` grid with wrap-around in both directions, embedded on the torus.
/// Both dimensions must be at least 3.
pub fn toroidal_grid(rows: usize, cols: usize) -> EmbeddedGraph {
    assert!(rows >= 3 && cols >= 3, "toroidal grids need both sides >= 3");
    let id = |r: usize, c: usize| r * cols + c;
    let order = (0..rows * cols)
        .map(|v| {
            let (r, c) = (v / cols, v % cols);
            vec![
                id(r, (c + 1) % cols),
                id((r + rows - 1) % rows, c),
                id(r, (c + cols - 1) % cols),
                id((r + 1) % rows, c),
            ]
        })
        .collect();
    EmbeddedGraph::from_rotation(order)
}

/// Embedding of a convex polytope from vertex coordinates and edges: the
/// neighbors of each vertex are sorted by angle around the outward direction.
fn polytope(points: &[[f64; 3]], edges: &[(usize, usize)]) -> EmbeddedGraph {
    let n = points.len();
    let mut nbrs = vec![Vec::new(); n];
    for &(u, v) in edges {
        nbrs[u].push(v);
        nbrs[v].push(u);
    }
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    };
    let order = (0..n)
        .map(|v| {
            let normal = points[v];
            let project = |w: usize| {
                let d = sub(points[w], points[v]);
                let t = dot(d, normal) / dot(normal, normal);
                [d[0] - t * normal[0], d[1] - t * normal[1], d[2] - t * normal[2]]
            };
            let e1 = project(nbrs[v][0]);
            let e2 = cross(normal, e1);
            let mut around = nbrs[v].clone();
            around.sort_by(|&a, &b| {
                let (pa, pb) = (project(a), project(b));
                let ang_a = dot(pa, e2).atan2(dot(pa, e1));
                let ang_b = dot(pb, e2).atan2(dot(pb, e1));
                ang_a.partial_cmp(&ang_b).unwrap()
            });
            around
        })
        .collect();
    EmbeddedGraph::from_rotation(order)
}

fn edges_at_distance(points: &[[f64; 3]], length: f64) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    for u in 0..points.len() {
        for v in u + 1..points.len() {
            let d: f64 = (0..3).map(|i| (points[u][i] - points[v][i]).powi(2)).sum::<f64>().sqrt();
            if (d - length).abs() < 1e-6 {
                edges.push((u, v));
            }
        }
    }
    edges
}

/// Regular dodecahedron (20 vertices, 30 edges, 12 pentagonal faces).
pub fn dodecahedron() -> EmbeddedGraph {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let inv = 1.0 / phi;
    let mut points = Vec::new();
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                points.push([x, y, z]);
            }
        }
    }
    for &a in &[-inv, inv] {
        for &b in &[-phi, phi] {
            points.push([0.0, a, b]);
            points.push([a, b, 0.0]);
            points.push([b, 0.0, a]);
        }
    }
    let edges = edges_at_distance(&points, 2.0 * inv);
    polytope(&points, &edges)
}

/// Regular icosahedron (12 vertices, 30 edges, 20 triangular faces).
pub fn icosahedron() -> EmbeddedGraph {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut points = Vec::new();
    for &a in &[-1.0, 1.0] {
        for &b in &[-phi, phi] {
            points.push([0.0, a, b]);
            points.push([a, b, 0.0]);
            points.push([b, 0.0, a]);
        }
    }
    let edges = edges_at_distance(&points, 2.0);
    polytope(&points, &edges)
}

fn insert_after(list: &mut Vec<usize>, anchor: usize, value: usize) {
    let pos = list.iter().position(|&x| x == anchor).unwrap();
    list.insert(pos + 1, value);
}

fn succ(rot: &[Vec<usize>], v: usize, w: usize) -> usize {
    let list = &rot[v];
    let pos = list.iter().position(|&x| x == w).unwrap();
    list[(pos + 1) % list.len()]
}

/// Random planar triangulation on `n >= 3` vertices: repeated insertion of a
/// vertex into a random face, followed by random edge flips.
pub fn random_triangulation<R: Rng>(n: usize, rng: &mut R) -> EmbeddedGraph {
    assert!(n >= 3, "a triangulation needs at least three vertices");
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // Face walks (x, y, z) with succ_y(x) = z.
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1]];
    for w in 3..n {
        let f = rng.gen_range(0..faces.len());
        let [x, y, z] = faces[f];
        rot.push(vec![x, z, y]);
        insert_after(&mut rot[y], x, w);
        insert_after(&mut rot[z], y, w);
        insert_after(&mut rot[x], z, w);
        faces[f] = [x, y, w];
        faces.push([y, z, w]);
        faces.push([z, x, w]);
    }
    for _ in 0..3 * n {
        let a = rng.gen_range(0..n);
        let b = rot[a][rng.gen_range(0..rot[a].len())];
        if rot[a].len() <= 3 || rot[b].len() <= 3 {
            continue;
        }
        let c = succ(&rot, b, a);
        let d = succ(&rot, a, b);
        if c == d || rot[c].contains(&d) {
            continue;
        }
        rot[a].retain(|&x| x != b);
        rot[b].retain(|&x| x != a);
        insert_after(&mut rot[d], a, c);
        insert_after(&mut rot[c], b, d);
    }
    EmbeddedGraph::from_rotation(rot)
}

/// Connected planar graph: a random triangulation with edges removed at
/// random (each with probability `drop`) as long as the graph stays connected.
pub fn random_planar<R: Rng>(n: usize, drop: f64, rng: &mut R) -> EmbeddedGraph {
    let base = random_triangulation(n, rng);
    let mut edges: Vec<(usize, usize)> = base.graph.edges().collect();
    edges.shuffle(rng);
    let mut rot = base.rotation.order;
    let mut g = base.graph;
    for (u, v) in edges {
        if !rng.gen_bool(drop) {
            continue;
        }
        let kept: Vec<(usize, usize)> = g.edges().filter(|&e| e != (u, v)).collect();
        let smaller = Graph::new(g.n(), kept).unwrap();
        if smaller.is_connected() {
            g = smaller;
            rot[u].retain(|&x| x != v);
            rot[v].retain(|&x| x != u);
        }
    }
    EmbeddedGraph::from_rotation(rot)
}

/// Random partial k-tree on `n` vertices with a decomposition of width
/// `min(k, n - 1)`; each edge survives with probability `keep`.
pub fn random_partial_ktree<R: Rng>(
    n: usize,
    k: usize,
    keep: f64,
    rng: &mut R,
) -> (Graph, TreeDecomposition) {
    let base = (k + 1).min(n);
    let mut edges = Vec::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.push((u, v));
        }
    }
    let mut bags = vec![(0..base).collect::<Vec<usize>>()];
    let mut parent = vec![None];
    for v in base..n {
        let x = rng.gen_range(0..bags.len());
        let mut bag = bags[x].clone();
        bag.remove(rng.gen_range(0..bag.len()));
        for &u in &bag {
            edges.push((u, v));
        }
        bag.push(v);
        bags.push(bag);
        parent.push(Some(x));
    }
    edges.retain(|_| rng.gen_bool(keep));
    let g = Graph::new(n, edges).unwrap();
    let td = TreeDecomposition::new(n, bags, parent).unwrap();
    (g, td)
}

/// Random graph with edge probability `density`.
pub fn random_graph<R: Rng>(n: usize, density: f64, rng: &mut R) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::Embedding;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn genus(e: &EmbeddedGraph) -> usize {
        Embedding::new(&e.graph, e.rotation.clone()).unwrap().genus
    }

    #[test]
    fn grids_are_planar() {
        let g = grid(4, 5);
        assert_eq!((g.graph.n(), g.graph.m()), (20, 31));
        assert_eq!(genus(&g), 0);
    }

    #[test]
    fn toroidal_grids_have_genus_one() {
        let g = toroidal_grid(3, 3);
        assert_eq!((g.graph.n(), g.graph.m()), (9, 18));
        let e = Embedding::new(&g.graph, g.rotation).unwrap();
        assert_eq!((e.num_faces(), e.genus), (9, 1));
    }

    #[test]
    fn platonic_solids() {
        let d = dodecahedron();
        assert_eq!((d.graph.n(), d.graph.m()), (20, 30));
        let e = Embedding::new(&d.graph, d.rotation).unwrap();
        assert_eq!((e.num_faces(), e.genus), (12, 0));
        let i = icosahedron();
        assert_eq!((i.graph.n(), i.graph.m()), (12, 30));
        assert_eq!(genus(&i), 0);
    }

    #[test]
    fn random_triangulations_are_triangulations() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [3, 4, 10, 60] {
            let t = random_triangulation(n, &mut rng);
            assert_eq!(t.graph.m(), 3 * n - 6);
            let e = Embedding::new(&t.graph, t.rotation).unwrap();
            assert_eq!(e.genus, 0);
            assert!(e.faces.iter().all(|f| f.len() == 3));
        }
    }

    #[test]
    fn random_planar_graphs_stay_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = random_planar(40, 0.5, &mut rng);
        assert!(g.graph.is_connected());
        assert_eq!(genus(&g), 0);
    }

    #[test]
    fn partial_ktree_decomposition_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in 1..=4 {
            let (g, td) = random_partial_ktree(30, k, 0.7, &mut rng);
            assert_eq!(td.validate(&g).unwrap().width, k);
        }
    }
}
