//! Rooted tree decompositions, their skeleton DAG, and centered colorings of
//! bounded-width graphs.

use crate::coloring::{canonicalize, Coloring};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Rooted tree decomposition. Bags are kept sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeDecomposition {
    pub num_vertices: usize,
    pub bags: Vec<Vec<usize>>,
    pub parent: Vec<Option<usize>>,
    pub root: usize,
}

/// Width and adhesion of a valid decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TdStats {
    pub width: usize,
    pub adhesion: usize,
}

impl TreeDecomposition {
    /// Builds a rooted decomposition from parent pointers; exactly one node must be a root.
    pub fn new(num_vertices: usize, bags: Vec<Vec<usize>>, parent: Vec<Option<usize>>) -> Result<Self> {
        if bags.len() != parent.len() || bags.is_empty() {
            return Err(Error::InvalidDecomposition(
                "need one parent entry per bag and at least one bag".into(),
            ));
        }
        let roots: Vec<usize> = (0..bags.len()).filter(|&x| parent[x].is_none()).collect();
        if roots.len() != 1 {
            return Err(Error::InvalidDecomposition(format!("{} roots", roots.len())));
        }
        let mut bags = bags;
        for bag in &mut bags {
            bag.sort_unstable();
            bag.dedup();
            if let Some(&v) = bag.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::VertexOutOfRange { vertex: v, n: num_vertices });
            }
        }
        let td = TreeDecomposition {
            num_vertices,
            bags,
            parent,
            root: roots[0],
        };
        if td.preorder().len() != td.len() {
            return Err(Error::InvalidDecomposition("parent pointers contain a cycle".into()));
        }
        Ok(td)
    }

    /// Builds a decomposition from an unrooted tree; the root is the node whose
    /// sorted bag is lexicographically smallest.
    pub fn from_tree_edges(
        num_vertices: usize,
        bags: Vec<Vec<usize>>,
        edges: &[(usize, usize)],
    ) -> Result<Self> {
        let k = bags.len();
        if k == 0 {
            return Err(Error::InvalidDecomposition("no bags".into()));
        }
        if edges.len() + 1 != k {
            return Err(Error::InvalidDecomposition(format!(
                "{k} bags but {} tree edges",
                edges.len()
            )));
        }
        let mut sorted = bags;
        for bag in &mut sorted {
            bag.sort_unstable();
            bag.dedup();
        }
        let mut adj = vec![Vec::new(); k];
        for &(a, b) in edges {
            if a >= k || b >= k || a == b {
                return Err(Error::InvalidDecomposition(format!("bad tree edge ({a}, {b})")));
            }
            adj[a].push(b);
            adj[b].push(a);
        }
        let root = (0..k).min_by(|&a, &b| sorted[a].cmp(&sorted[b])).unwrap();
        let mut parent = vec![None; k];
        let mut seen = vec![false; k];
        seen[root] = true;
        let mut stack = vec![root];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some(x);
                    stack.push(y);
                }
            }
        }
        if seen.contains(&false) {
            return Err(Error::InvalidDecomposition("tree is disconnected".into()));
        }
        Self::new(num_vertices, sorted, parent)
    }

    pub fn len(&self) -> usize {
        self.bags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bags.is_empty()
    }

    /// Undirected tree edges `(child, parent)`.
    pub fn tree_edges(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .filter_map(|x| self.parent[x].map(|y| (x, y)))
            .collect()
    }

    pub fn children(&self) -> Vec<Vec<usize>> {
        let mut children = vec![Vec::new(); self.len()];
        for x in 0..self.len() {
            if let Some(y) = self.parent[x] {
                children[y].push(x);
            }
        }
        children
    }

    /// Nodes in preorder from the root; children in increasing id order.
    pub fn preorder(&self) -> Vec<usize> {
        let children = self.children();
        let mut order = Vec::with_capacity(self.len());
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            order.push(x);
            stack.extend(children[x].iter().rev());
        }
        order
    }

    /// Depth of each node; the root has depth 0.
    pub fn node_depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.len()];
        for x in self.preorder() {
            if let Some(y) = self.parent[x] {
                depth[x] = depth[y] + 1;
            }
        }
        depth
    }

    /// Bag of `x` intersected with the bag of its parent; empty for the root.
    pub fn adhesion_set(&self, x: usize) -> Vec<usize> {
        match self.parent[x] {
            None => Vec::new(),
            Some(y) => intersect(&self.bags[x], &self.bags[y]),
        }
    }

    /// Bag of `x` minus its adhesion set.
    pub fn margin(&self, x: usize) -> Vec<usize> {
        let adhesion = self.adhesion_set(x);
        self.bags[x]
            .iter()
            .copied()
            .filter(|v| adhesion.binary_search(v).is_err())
            .collect()
    }

    /// For each vertex, the node whose margin contains it (the topmost node
    /// containing it); `usize::MAX` for vertices in no bag.
    pub fn home_nodes(&self) -> Vec<usize> {
        let mut home = vec![usize::MAX; self.num_vertices];
        for x in 0..self.len() {
            for v in self.margin(x) {
                home[v] = x;
            }
        }
        home
    }

    pub fn width(&self) -> usize {
        self.bags.iter().map(Vec::len).max().unwrap_or(0).saturating_sub(1)
    }

    pub fn adhesion(&self) -> usize {
        (0..self.len()).map(|x| self.adhesion_set(x).len()).max().unwrap_or(0)
    }

    /// Checks both decomposition conditions for `g` and reports the first violation.
    pub fn validate(&self, g: &Graph) -> Result<TdStats> {
        if g.n() != self.num_vertices {
            return Err(Error::InvalidDecomposition(format!(
                "decomposition is over {} vertices, graph has {}",
                self.num_vertices,
                g.n()
            )));
        }
        let mut occurrences = vec![0usize; g.n()];
        let mut tops = vec![0usize; g.n()];
        for x in 0..self.len() {
            let up = self.parent[x].map(|y| &self.bags[y]);
            for &v in &self.bags[x] {
                occurrences[v] += 1;
                if up.is_none_or(|b| b.binary_search(&v).is_err()) {
                    tops[v] += 1;
                }
            }
        }
        for v in 0..g.n() {
            if occurrences[v] == 0 {
                return Err(Error::VertexCondition {
                    vertex: v,
                    detail: "appears in no bag".into(),
                });
            }
            if tops[v] != 1 {
                return Err(Error::VertexCondition {
                    vertex: v,
                    detail: format!("appears in {} disconnected groups of bags", tops[v]),
                });
            }
        }
        let home = self.home_nodes();
        let depth = self.node_depths();
        for (u, v) in g.edges() {
            // The deeper home node must contain the other endpoint.
            let (low, other) = if depth[home[u]] >= depth[home[v]] { (u, v) } else { (v, u) };
            if self.bags[home[low]].binary_search(&other).is_err() {
                return Err(Error::EdgeCondition(u, v));
            }
        }
        Ok(TdStats {
            width: self.width(),
            adhesion: self.adhesion(),
        })
    }

    /// Contracts adjacent equal bags and splits every margin with more than
    /// one vertex into a chain, so that all margins have at most one vertex.
    /// A decomposition already in that form is returned unchanged.
    pub fn normalize(&self) -> TreeDecomposition {
        let merged = self.contract_equal_neighbors();
        let mut bags = merged.bags.clone();
        let mut parent = merged.parent.clone();
        let mut root = merged.root;
        for x in 0..merged.len() {
            let margin = merged.margin(x);
            if margin.len() <= 1 {
                continue;
            }
            let mut bag = merged.adhesion_set(x);
            let mut above = merged.parent[x];
            for &v in &margin[..margin.len() - 1] {
                bag.push(v);
                bag.sort_unstable();
                bags.push(bag.clone());
                parent.push(above);
                let id = bags.len() - 1;
                if above.is_none() {
                    root = id;
                }
                above = Some(id);
            }
            parent[x] = above;
        }
        TreeDecomposition {
            num_vertices: self.num_vertices,
            bags,
            parent,
            root,
        }
    }

    fn contract_equal_neighbors(&self) -> TreeDecomposition {
        let mut rep: Vec<usize> = (0..self.len()).collect();
        for x in self.preorder() {
            if let Some(y) = self.parent[x] {
                if self.bags[x] == self.bags[y] {
                    rep[x] = rep[y];
                }
            }
        }
        if rep.iter().enumerate().all(|(x, &r)| x == r) {
            return self.clone();
        }
        let mut new_id = vec![usize::MAX; self.len()];
        let mut bags = Vec::new();
        for x in 0..self.len() {
            if rep[x] == x {
                new_id[x] = bags.len();
                bags.push(self.bags[x].clone());
            }
        }
        let mut parent = vec![None; bags.len()];
        for x in 0..self.len() {
            if rep[x] == x {
                parent[new_id[x]] = self.parent[x].map(|y| new_id[rep[y]]);
            }
        }
        TreeDecomposition {
            num_vertices: self.num_vertices,
            bags,
            parent,
            root: new_id[self.root],
        }
    }

    /// Torso of node `x`: the graph induced by its bag with cliques added on
    /// the adhesion set of `x` and of each child.
    pub fn torso(&self, g: &Graph, x: usize) -> Torso {
        let vertices = self.bags[x].clone();
        let local = |v: usize| vertices.binary_search(&v).unwrap();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &w in g.neighbors(v) {
                if let Ok(j) = vertices.binary_search(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        let mut cliques = vec![self.adhesion_set(x)];
        for y in 0..self.len() {
            if self.parent[y] == Some(x) {
                cliques.push(self.adhesion_set(y));
            }
        }
        for clique in cliques {
            for (i, &a) in clique.iter().enumerate() {
                for &b in &clique[i + 1..] {
                    edges.push((local(a), local(b)));
                }
            }
        }
        Torso {
            graph: Graph::new(vertices.len(), edges).expect("local ids are in range"),
            vertices,
        }
    }
}

/// Torso graph together with the original id of each local vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Torso {
    pub graph: Graph,
    pub vertices: Vec<usize>,
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().copied().filter(|v| b.binary_search(v).is_ok()).collect()
}

/// Directed acyclic graph on the vertices of a decomposed graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SkeletonDag {
    /// Out-neighbors of each vertex, sorted.
    pub out: Vec<Vec<usize>>,
    /// Every arc `(u, v)` has `v` before `u`.
    pub sinks_first: Vec<usize>,
}

impl SkeletonDag {
    /// Builds a DAG from arbitrary arcs, rejecting cycles.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize)]) -> Result<Self> {
        let mut out = vec![Vec::new(); n];
        let mut remaining = vec![0usize; n];
        let mut into = vec![Vec::new(); n];
        for &(u, v) in arcs {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            out[u].push(v);
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        for u in 0..n {
            remaining[u] = out[u].len();
            for &v in &out[u] {
                into[v].push(u);
            }
        }
        let mut order: Vec<usize> = (0..n).filter(|&u| remaining[u] == 0).collect();
        let mut i = 0;
        while i < order.len() {
            let v = order[i];
            i += 1;
            for &u in &into[v] {
                remaining[u] -= 1;
                if remaining[u] == 0 {
                    order.push(u);
                }
            }
        }
        if order.len() != n {
            return Err(Error::CyclicSkeleton);
        }
        Ok(SkeletonDag {
            out,
            sinks_first: order,
        })
    }

    pub fn n(&self) -> usize {
        self.out.len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Vertices reachable from each vertex by directed paths of length at most `p`.
    pub fn reach_within(&self, p: usize) -> Vec<Vec<usize>> {
        let mut reach: Vec<Vec<usize>> = (0..self.n()).map(|u| vec![u]).collect();
        for _ in 0..p {
            let next = (0..self.n())
                .map(|u| {
                    let mut set = vec![u];
                    for &w in &self.out[u] {
                        set.extend_from_slice(&reach[w]);
                    }
                    set.sort_unstable();
                    set.dedup();
                    set
                })
                .collect();
            reach = next;
        }
        reach
    }
}

/// Skeleton of a decomposition: arcs from each vertex of a margin to every
/// vertex of the adhesion set of the same node.
pub fn skeleton(td: &TreeDecomposition) -> SkeletonDag {
    let mut out = vec![Vec::new(); td.num_vertices];
    for x in 0..td.len() {
        let adhesion = td.adhesion_set(x);
        for u in td.margin(x) {
            out[u] = adhesion.clone();
        }
    }
    let home = td.home_nodes();
    let depth = td.node_depths();
    let mut order: Vec<usize> = (0..td.num_vertices).collect();
    order.sort_by_key(|&v| (home.get(v).map_or(0, |&h| if h == usize::MAX { 0 } else { depth[h] }), v));
    SkeletonDag {
        out,
        sinks_first: order,
    }
}

/// Greedy coloring of the p-step transitive closure of `s`, taking vertices
/// sinks first. Skeletons of decompositions with adhesion at most `k` get at
/// most C(p+k, k) colors.
pub fn skeleton_coloring(s: &SkeletonDag, p: usize, k: usize) -> Result<Coloring> {
    for (u, list) in s.out.iter().enumerate() {
        if list.len() > k {
            return Err(Error::OutDegree {
                vertex: u,
                degree: list.len(),
                limit: k,
            });
        }
    }
    let reach = s.reach_within(p);
    let mut color = vec![usize::MAX; s.n()];
    let mut taken = Vec::new();
    for &u in &s.sinks_first {
        taken.clear();
        taken.extend(reach[u].iter().filter(|&&v| v != u).map(|&v| color[v]));
        taken.sort_unstable();
        taken.dedup();
        color[u] = taken.iter().enumerate().find(|&(i, &c)| i != c).map_or(taken.len(), |(i, _)| i);
    }
    Ok(Coloring::new(color))
}

/// p-centered coloring with at most C(p+w, w) colors from a decomposition of width `w`.
pub fn treewidth_centered_coloring(g: &Graph, td: &TreeDecomposition, p: usize) -> Result<Coloring> {
    td.validate(g)?;
    let normal = td.normalize();
    let k = normal.width();
    skeleton_coloring(&skeleton(&normal), p, k)
}

/// Product of the skeleton coloring of `td` with colorings of the torsos:
/// vertex `u` gets the pair (skeleton color, color of `u` in the torso of its home node).
pub fn lift_over_td<F>(g: &Graph, td: &TreeDecomposition, p: usize, torso_colorer: F) -> Result<Coloring>
where
    F: Fn(&Graph, usize) -> Result<Coloring>,
{
    let stats = td.validate(g)?;
    let outer = skeleton_coloring(&skeleton(td), p, stats.adhesion)?;
    let home = td.home_nodes();
    let mut inner = vec![0; g.n()];
    for x in 0..td.len() {
        let margin = td.margin(x);
        if margin.is_empty() {
            continue;
        }
        let torso = td.torso(g, x);
        let local = torso_colorer(&torso.graph, p)?;
        if local.len() != torso.vertices.len() {
            return Err(Error::ColoringLength {
                expected: torso.vertices.len(),
                found: local.len(),
            });
        }
        for v in margin {
            debug_assert_eq!(home[v], x);
            inner[v] = local.colors[torso.vertices.binary_search(&v).unwrap()];
        }
    }
    let pairs: Vec<(usize, usize)> = (0..g.n()).map(|v| (outer.colors[v], inner[v])).collect();
    Ok(canonicalize(&pairs).0)
}

/// Decomposition from a greedy minimum-degree elimination ordering.
pub fn min_degree_decomposition(g: &Graph) -> TreeDecomposition {
    let n = g.n();
    if n == 0 {
        return TreeDecomposition {
            num_vertices: 0,
            bags: vec![Vec::new()],
            parent: vec![None],
            root: 0,
        };
    }
    let mut adj: Vec<std::collections::BTreeSet<usize>> =
        (0..n).map(|v| g.neighbors(v).iter().copied().collect()).collect();
    let mut eliminated = vec![false; n];
    let mut position = vec![0; n];
    let mut bags = Vec::with_capacity(n);
    let mut order = Vec::with_capacity(n);
    for step in 0..n {
        let v = (0..n)
            .filter(|&v| !eliminated[v])
            .min_by_key(|&v| (adj[v].len(), v))
            .unwrap();
        eliminated[v] = true;
        position[v] = step;
        order.push(v);
        let nbrs: Vec<usize> = adj[v].iter().copied().collect();
        let mut bag = nbrs.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        for (i, &a) in nbrs.iter().enumerate() {
            adj[a].remove(&v);
            for &b in &nbrs[i + 1..] {
                adj[a].insert(b);
                adj[b].insert(a);
            }
        }
    }
    let mut parent = vec![None; n];
    for step in 0..n - 1 {
        let v = order[step];
        let next = bags[step]
            .iter()
            .filter(|&&w| w != v)
            .map(|&w| position[w])
            .min()
            .unwrap_or(step + 1);
        parent[step] = Some(next);
    }
    TreeDecomposition {
        num_vertices: n,
        bags,
        parent,
        root: n - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::check_p_centered;

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn path_td(n: usize) -> TreeDecomposition {
        let bags = (1..n).map(|i| vec![i - 1, i]).collect();
        let parent = (0..n - 1).map(|i| i.checked_sub(1)).collect();
        TreeDecomposition::new(n, bags, parent).unwrap()
    }

    #[test]
    fn path_decomposition_is_valid() {
        let stats = path_td(3).validate(&path(3)).unwrap();
        assert_eq!(stats, TdStats { width: 1, adhesion: 1 });
    }

    #[test]
    fn missing_vertex_is_reported() {
        let td = TreeDecomposition::new(3, vec![vec![0, 1]], vec![None]).unwrap();
        assert!(matches!(
            td.validate(&path(3)),
            Err(Error::VertexCondition { vertex: 2, .. })
        ));
    }

    #[test]
    fn uncovered_edge_is_reported() {
        let td = TreeDecomposition::new(3, vec![vec![0, 1], vec![2]], vec![None, Some(0)]).unwrap();
        assert!(matches!(td.validate(&path(3)), Err(Error::EdgeCondition(1, 2))));
    }

    #[test]
    fn disconnected_occurrence_is_reported() {
        let td = TreeDecomposition::new(
            3,
            vec![vec![0, 1], vec![1, 2], vec![0]],
            vec![None, Some(0), Some(1)],
        )
        .unwrap();
        assert!(matches!(
            td.validate(&path(3)),
            Err(Error::VertexCondition { vertex: 0, .. })
        ));
    }

    #[test]
    fn normalizing_a_single_clique_bag() {
        let td = TreeDecomposition::new(4, vec![vec![0, 1, 2, 3]], vec![None]).unwrap();
        let normal = td.normalize();
        assert_eq!(normal.len(), 4);
        assert!((0..4).all(|x| normal.margin(x).len() == 1));
        normal.validate(&complete(4)).unwrap();
        assert_eq!(normal.bags[normal.root], vec![0]);
    }

    #[test]
    fn normal_form_is_fixed() {
        let td = path_td(5).normalize();
        assert_eq!(td.normalize(), td);
        let normal = TreeDecomposition::new(4, vec![vec![0, 1, 2, 3]], vec![None]).unwrap().normalize();
        assert_eq!(normal.normalize(), normal);
    }

    #[test]
    fn equal_neighbors_are_contracted() {
        let td = TreeDecomposition::new(2, vec![vec![0, 1], vec![0, 1]], vec![None, Some(0)]).unwrap();
        let normal = td.normalize();
        assert_eq!(normal.len(), 2);
        assert_eq!(normal.bags[normal.root], vec![0]);
    }

    #[test]
    fn skeleton_of_a_path() {
        let s = skeleton(&path_td(4));
        // root bag {0,1}: margin {0,1}, no arcs; then 2 -> 1, 3 -> 2
        assert_eq!(s.out, vec![vec![], vec![], vec![1], vec![2]]);
    }

    #[test]
    fn skeleton_without_arcs_uses_one_color() {
        let s = SkeletonDag::from_arcs(3, &[]).unwrap();
        assert_eq!(skeleton_coloring(&s, 2, 0).unwrap().distinct(), 1);
    }

    #[test]
    fn out_degree_above_limit_is_rejected() {
        let s = SkeletonDag::from_arcs(3, &[(0, 1), (0, 2)]).unwrap();
        assert!(matches!(skeleton_coloring(&s, 1, 1), Err(Error::OutDegree { vertex: 0, .. })));
    }

    #[test]
    fn cyclic_arcs_are_rejected() {
        assert!(matches!(
            SkeletonDag::from_arcs(2, &[(0, 1), (1, 0)]),
            Err(Error::CyclicSkeleton)
        ));
    }

    #[test]
    fn clique_needs_all_colors() {
        let g = complete(4);
        let td = TreeDecomposition::new(4, vec![vec![0, 1, 2, 3]], vec![None]).unwrap();
        let c = treewidth_centered_coloring(&g, &td, 1).unwrap();
        assert_eq!(c.distinct(), 4);
        assert!(check_p_centered(&g, &c, 1).unwrap().ok);
    }

    #[test]
    fn path_coloring_within_bound() {
        let g = path(12);
        for p in 1..=4 {
            let c = treewidth_centered_coloring(&g, &path_td(12), p).unwrap();
            assert!(c.distinct() as u128 <= crate::coloring::treewidth_bound(p, 1));
            assert!(check_p_centered(&g, &c, p).unwrap().ok);
        }
    }

    #[test]
    fn torso_adds_adhesion_cliques() {
        // Two triangles sharing the edge {1, 2}, with the edge itself removed.
        let g = Graph::new(4, [(0, 1), (0, 2), (3, 1), (3, 2)]).unwrap();
        let td = TreeDecomposition::new(4, vec![vec![0, 1, 2], vec![1, 2, 3]], vec![None, Some(0)]).unwrap();
        td.validate(&g).unwrap();
        let t = td.torso(&g, 0);
        assert_eq!(t.vertices, vec![0, 1, 2]);
        assert_eq!(t.graph.m(), 3);
    }

    #[test]
    fn min_degree_decomposition_is_valid() {
        let g = complete(5);
        let td = min_degree_decomposition(&g);
        assert_eq!(td.validate(&g).unwrap().width, 4);
        let p = path(9);
        assert_eq!(min_degree_decomposition(&p).validate(&p).unwrap().width, 1);
        let disconnected = Graph::new(4, [(0, 1)]).unwrap();
        min_degree_decomposition(&disconnected).validate(&disconnected).unwrap();
    }

    #[test]
    fn lift_with_distinct_torso_colors() {
        let g = complete(4);
        let td = TreeDecomposition::new(4, vec![vec![0, 1, 2, 3]], vec![None]).unwrap();
        let c = lift_over_td(&g, &td, 2, |t, _| Ok(Coloring::new((0..t.n()).collect()))).unwrap();
        assert_eq!(c.distinct(), 4);
    }

    #[test]
    fn unrooted_input_is_rooted_at_smallest_bag() {
        let td = TreeDecomposition::from_tree_edges(3, vec![vec![1, 2], vec![0, 1]], &[(0, 1)]).unwrap();
        assert_eq!(td.root, 1);
    }
}
