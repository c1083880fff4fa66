//! Exact checks for p-centered colorings, treedepth forests extracted from
//! them, and an exact minimum-color search for small graphs.

use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Outcome of [`check_p_centered`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub ok: bool,
    /// Vertex set of a connected subgraph with at most `p` colors and no
    /// uniquely colored vertex, shrunk greedily. Empty when `ok`.
    pub counterexample: Vec<usize>,
}

/// Decides whether `c` is p-centered.
///
/// A failing connected subgraph uses a connected set of colors, so it is
/// enough to look at every connected color set `X` with `|X| <= p`: inside
/// each component of `G[c^-1(X)]` some vertex must carry a unique color,
/// and after deleting it the remaining components must pass the same test.
pub fn check_p_centered(g: &Graph, c: &Coloring, p: usize) -> Result<Verdict> {
    if c.len() != g.n() {
        return Err(Error::ColoringLength {
            expected: g.n(),
            found: c.len(),
        });
    }
    if p == 0 || g.n() == 0 {
        return Ok(Verdict {
            ok: true,
            counterexample: Vec::new(),
        });
    }
    let classes = c.classes();
    let color_graph = color_adjacency(g, c);
    let failure = (0..c.num_colors)
        .into_par_iter()
        .filter(|&start| !classes[start].is_empty())
        .map_init(
            || Scratch::new(g.n(), c.num_colors),
            |scratch, start| {
                let mut found = None;
                for_each_connected_set(&color_graph, start, p, &mut |set| {
                    found = scratch.check_color_set(g, c, &classes, set);
                    found.is_none()
                });
                found
            },
        )
        .find_first(Option::is_some)
        .flatten();
    Ok(match failure {
        None => Verdict {
            ok: true,
            counterexample: Vec::new(),
        },
        Some(component) => Verdict {
            ok: false,
            counterexample: shrink_counterexample(g, c, component),
        },
    })
}

/// Color graph: colors adjacent when an edge joins their classes.
pub(crate) fn color_adjacency(g: &Graph, c: &Coloring) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); c.num_colors];
    for (u, v) in g.edges() {
        let (a, b) = (c.colors[u], c.colors[v]);
        if a != b {
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    adj
}

/// Enumerates every connected vertex set of `adj` of size at most `limit`
/// whose smallest element is `start`, each exactly once. `visit` returns
/// false to stop early.
pub(crate) fn for_each_connected_set(
    adj: &[Vec<usize>],
    start: usize,
    limit: usize,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let mut set = vec![start];
    let extension: Vec<usize> = adj[start].iter().copied().filter(|&w| w > start).collect();
    extend(adj, start, limit, &mut set, extension, visit)
}

fn extend(
    adj: &[Vec<usize>],
    start: usize,
    limit: usize,
    set: &mut Vec<usize>,
    mut extension: Vec<usize>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if !visit(set) {
        return false;
    }
    if set.len() == limit {
        return true;
    }
    while let Some(w) = extension.pop() {
        let mut next = extension.clone();
        for &x in &adj[w] {
            if x > start
                && !set.contains(&x)
                && !next.contains(&x)
                && x != w
                && !set.iter().any(|&s| adj[s].binary_search(&x).is_ok())
            {
                next.push(x);
            }
        }
        set.push(w);
        let keep_going = extend(adj, start, limit, set, next, visit);
        set.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// Per-thread buffers indexed by vertex and color.
struct Scratch {
    alive: Vec<bool>,
    count: Vec<usize>,
}

impl Scratch {
    fn new(n: usize, colors: usize) -> Self {
        Scratch {
            alive: vec![false; n],
            count: vec![0; colors],
        }
    }

    /// Returns a failing component of `G[c^-1(set)]`, if any.
    fn check_color_set(
        &mut self,
        g: &Graph,
        c: &Coloring,
        classes: &[Vec<usize>],
        set: &[usize],
    ) -> Option<Vec<usize>> {
        let vertices: Vec<usize> = set.iter().flat_map(|&x| classes[x].iter().copied()).collect();
        for &v in &vertices {
            self.alive[v] = true;
        }
        let mut failure = None;
        let mut stack = components_among(g, &vertices, &mut self.alive);
        while let Some(component) = stack.pop() {
            if component.len() == 1 {
                continue;
            }
            for &v in &component {
                self.count[c.colors[v]] += 1;
            }
            let center = component.iter().copied().find(|&v| self.count[c.colors[v]] == 1);
            for &v in &component {
                self.count[c.colors[v]] = 0;
            }
            match center {
                None => {
                    failure = Some(component);
                    break;
                }
                Some(center) => {
                    let rest: Vec<usize> =
                        component.into_iter().filter(|&v| v != center).collect();
                    for &v in &rest {
                        self.alive[v] = true;
                    }
                    stack.extend(components_among(g, &rest, &mut self.alive));
                }
            }
        }
        for &v in &vertices {
            self.alive[v] = false;
        }
        failure
    }
}

/// Components of the subgraph induced by the vertices flagged in `alive`,
/// restricted to `vertices`. Clears the flags it visits.
fn components_among(g: &Graph, vertices: &[usize], alive: &mut [bool]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for &s in vertices {
        if !alive[s] {
            continue;
        }
        alive[s] = false;
        let mut comp = vec![s];
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            i += 1;
            for &w in g.neighbors(v) {
                if alive[w] {
                    alive[w] = false;
                    comp.push(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

/// True if `vertices` induce a connected subgraph in which no color occurs exactly once.
fn fails(g: &Graph, c: &Coloring, vertices: &[usize]) -> bool {
    if vertices.len() < 2 {
        return false;
    }
    let mut alive = vec![false; g.n()];
    for &v in vertices {
        alive[v] = true;
    }
    if components_among(g, vertices, &mut alive).len() != 1 {
        return false;
    }
    let mut count = std::collections::HashMap::new();
    for &v in vertices {
        *count.entry(c.colors[v]).or_insert(0usize) += 1;
    }
    count.values().all(|&k| k > 1)
}

fn shrink_counterexample(g: &Graph, c: &Coloring, mut witness: Vec<usize>) -> Vec<usize> {
    witness.sort_unstable();
    let mut i = 0;
    while i < witness.len() {
        let mut candidate = witness.clone();
        candidate.remove(i);
        if fails(g, c, &candidate) {
            witness = candidate;
        } else {
            i += 1;
        }
    }
    witness
}

/// Reference check by enumerating all connected vertex subsets; graphs up to 20 vertices.
pub fn check_p_centered_exhaustive(g: &Graph, c: &Coloring, p: usize) -> Result<bool> {
    let n = g.n();
    if n > 20 {
        return Err(Error::TooLarge(format!("{n} vertices for subset enumeration")));
    }
    if c.len() != n {
        return Err(Error::ColoringLength {
            expected: n,
            found: c.len(),
        });
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    let mut counts = vec![0usize; c.num_colors];
    for subset in 1u32..(1u32 << n) {
        if !mask_connected(subset, &masks) {
            continue;
        }
        let mut used = 0;
        for v in (0..n).filter(|&v| subset >> v & 1 == 1) {
            let k = &mut counts[c.colors[v]];
            if *k == 0 {
                used += 1;
            }
            *k += 1;
        }
        let unique = (0..n).any(|v| subset >> v & 1 == 1 && counts[c.colors[v]] == 1);
        for v in (0..n).filter(|&v| subset >> v & 1 == 1) {
            counts[c.colors[v]] = 0;
        }
        if used <= p && !unique {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn mask_connected(subset: u32, adjacency: &[u32]) -> bool {
    let first = subset & subset.wrapping_neg();
    let mut reached = first;
    let mut frontier = first;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let fresh = adjacency[v] & subset & !reached;
        reached |= fresh;
        frontier |= fresh;
    }
    reached == subset
}

/// Rooted forest given by parent pointers over a subset of vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreedepthForest {
    /// Vertices covered by the forest.
    pub vertices: Vec<usize>,
    /// Parent of each vertex of the host graph; `None` for roots and for
    /// vertices outside the forest.
    pub parent: Vec<Option<usize>>,
    /// Depth (1 for roots) of each covered vertex; 0 outside the forest.
    pub depth_of: Vec<usize>,
}

impl TreedepthForest {
    /// Number of vertices on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.depth_of.iter().copied().max().unwrap_or(0)
    }

    pub fn contains(&self, v: usize) -> bool {
        self.depth_of[v] > 0
    }

    /// Whether `a` is an ancestor of `b` or equal to it.
    pub fn is_ancestor(&self, a: usize, mut b: usize) -> bool {
        loop {
            if a == b {
                return true;
            }
            match self.parent[b] {
                Some(up) => b = up,
                None => return false,
            }
        }
    }

    /// True if every edge of `g` between covered vertices joins an ancestor and a descendant.
    pub fn closure_contains(&self, g: &Graph) -> bool {
        g.edges().all(|(u, v)| {
            !(self.contains(u) && self.contains(v))
                || self.is_ancestor(u, v)
                || self.is_ancestor(v, u)
        })
    }
}

/// Treedepth forest of `G[c^-1(colors)]`: in every component the vertex with a
/// unique color becomes the root and the remainder is handled recursively.
pub fn treedepth_forest_from_coloring(
    g: &Graph,
    c: &Coloring,
    colors: &[usize],
) -> Result<TreedepthForest> {
    if c.len() != g.n() {
        return Err(Error::ColoringLength {
            expected: g.n(),
            found: c.len(),
        });
    }
    let mut selected = vec![false; c.num_colors.max(1)];
    for &x in colors {
        if x < selected.len() {
            selected[x] = true;
        }
    }
    let vertices: Vec<usize> = (0..g.n()).filter(|&v| selected[c.colors[v]]).collect();
    let mut parent = vec![None; g.n()];
    let mut depth_of = vec![0; g.n()];
    let mut alive = vec![false; g.n()];
    let mut count = vec![0usize; c.num_colors];
    for &v in &vertices {
        alive[v] = true;
    }
    let mut stack: Vec<(Vec<usize>, Option<usize>)> = components_among(g, &vertices, &mut alive)
        .into_iter()
        .map(|comp| (comp, None))
        .collect();
    while let Some((component, above)) = stack.pop() {
        for &v in &component {
            count[c.colors[v]] += 1;
        }
        let root = component.iter().copied().find(|&v| count[c.colors[v]] == 1);
        for &v in &component {
            count[c.colors[v]] = 0;
        }
        let Some(root) = root else {
            return Err(Error::NotCentered {
                witness: component,
            });
        };
        parent[root] = above;
        depth_of[root] = above.map_or(1, |a| depth_of[a] + 1);
        let rest: Vec<usize> = component.into_iter().filter(|&v| v != root).collect();
        for &v in &rest {
            alive[v] = true;
        }
        for comp in components_among(g, &rest, &mut alive) {
            stack.push((comp, Some(root)));
        }
    }
    Ok(TreedepthForest {
        vertices,
        parent,
        depth_of,
    })
}

/// Minimum number of colors of a p-centered coloring, by exhaustive search.
/// Graphs up to 12 vertices.
pub fn min_p_centered_colors(g: &Graph, p: usize) -> Result<usize> {
    let n = g.n();
    if n > 12 {
        return Err(Error::TooLarge(format!("{n} vertices for the exact search")));
    }
    if n == 0 {
        return Ok(0);
    }
    let masks: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |acc, &w| acc | 1 << w))
        .collect();
    // Connected subsets grouped by their largest vertex, so that a subset is
    // examined as soon as all its vertices are colored.
    let mut by_last: Vec<Vec<u32>> = vec![Vec::new(); n];
    for subset in 1u32..(1u32 << n) {
        if subset.count_ones() >= 2 && mask_connected(subset, &masks) {
            by_last[31 - subset.leading_zeros() as usize].push(subset);
        }
    }
    for k in 1..=n {
        let mut colors = vec![0usize; n];
        if search_coloring(0, 0, k, p, &by_last, &mut colors) {
            return Ok(k);
        }
    }
    unreachable!("n colors always suffice")
}

fn search_coloring(
    v: usize,
    used: usize,
    k: usize,
    p: usize,
    by_last: &[Vec<u32>],
    colors: &mut [usize],
) -> bool {
    if v == colors.len() {
        return true;
    }
    // Canonical order: vertex v may open at most one new color.
    for col in 0..k.min(used + 1) {
        colors[v] = col;
        if by_last[v].iter().all(|&s| subset_is_centered(s, p, colors))
            && search_coloring(v + 1, used.max(col + 1), k, p, by_last, colors)
        {
            return true;
        }
    }
    false
}

fn subset_is_centered(subset: u32, p: usize, colors: &[usize]) -> bool {
    let mut counts = [0u8; 32];
    let mut rest = subset;
    let mut distinct = 0;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        if counts[colors[v]] == 0 {
            distinct += 1;
        }
        counts[colors[v]] = counts[colors[v]].saturating_add(1);
    }
    distinct > p || counts.iter().any(|&k| k == 1)
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

    fn complete(n: usize) -> Graph {
        Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    #[test]
    fn path_with_center_color() {
        let v = check_p_centered(&path(3), &Coloring::new(vec![1, 0, 1]), 2).unwrap();
        assert!(v.ok);
    }

    #[test]
    fn path_with_alternating_colors_fails() {
        let v = check_p_centered(&path(4), &Coloring::new(vec![0, 1, 0, 1]), 2).unwrap();
        assert!(!v.ok);
        assert_eq!(v.counterexample, vec![0, 1, 2, 3]);
    }

    #[test]
    fn one_centered_means_proper() {
        let g = cycle(5);
        let proper = Coloring::new(vec![0, 1, 0, 1, 2]);
        assert!(check_p_centered(&g, &proper, 1).unwrap().ok);
        let improper = Coloring::new(vec![0, 0, 1, 0, 1]);
        let v = check_p_centered(&g, &improper, 1).unwrap();
        assert!(!v.ok);
        assert_eq!(v.counterexample, vec![0, 1]);
    }

    #[test]
    fn distinct_colors_always_pass() {
        let g = complete(5);
        let c = Coloring::new((0..5).collect());
        for p in 0..7 {
            assert!(check_p_centered(&g, &c, p).unwrap().ok);
        }
    }

    #[test]
    fn counterexample_is_minimal_failure() {
        let g = cycle(6);
        let c = Coloring::new(vec![0, 1, 0, 1, 0, 1]);
        let v = check_p_centered(&g, &c, 2).unwrap();
        assert!(!v.ok);
        assert!(fails(&g, &c, &v.counterexample));
        assert_eq!(v.counterexample.len(), 4);
    }

    #[test]
    fn exhaustive_agrees_on_small_cases() {
        let g = cycle(5);
        for code in 0..243usize {
            let colors: Vec<usize> = (0..5).map(|i| code / 3usize.pow(i) % 3).collect();
            let c = Coloring::new(colors);
            for p in 1..=3 {
                assert_eq!(
                    check_p_centered(&g, &c, p).unwrap().ok,
                    check_p_centered_exhaustive(&g, &c, p).unwrap()
                );
            }
        }
    }

    #[test]
    fn connected_sets_are_enumerated_once() {
        let adj = vec![vec![1, 2], vec![0, 2], vec![0, 1, 3], vec![2]];
        let mut seen = Vec::new();
        for start in 0..4 {
            for_each_connected_set(&adj, start, 4, &mut |s| {
                let mut s = s.to_vec();
                s.sort_unstable();
                seen.push(s);
                true
            });
        }
        let mut unique = seen.clone();
        unique.sort();
        unique.dedup();
        assert_eq!(unique.len(), seen.len());
        // 4 singletons, 4 edges, 3 triples, 1 whole set
        assert_eq!(seen.len(), 12);
    }

    #[test]
    fn minimum_colors() {
        assert_eq!(min_p_centered_colors(&complete(3), 2).unwrap(), 3);
        assert_eq!(min_p_centered_colors(&Graph::empty(1), 3).unwrap(), 1);
        assert_eq!(min_p_centered_colors(&path(4), 1).unwrap(), 2);
        assert_eq!(min_p_centered_colors(&path(7), 2).unwrap(), 3);
    }

    #[test]
    fn forest_from_center_coloring() {
        let g = path(3);
        let c = Coloring::new(vec![1, 0, 1]);
        let f = treedepth_forest_from_coloring(&g, &c, &[0, 1]).unwrap();
        assert_eq!(f.depth(), 2);
        assert_eq!(f.parent[0], Some(1));
        assert!(f.closure_contains(&g));
        let single = treedepth_forest_from_coloring(&g, &c, &[1]).unwrap();
        assert_eq!(single.depth(), 1);
    }

    #[test]
    fn forest_reports_non_centered_component() {
        let g = path(2);
        let c = Coloring::new(vec![0, 0]);
        assert!(matches!(
            treedepth_forest_from_coloring(&g, &c, &[0]),
            Err(Error::NotCentered { .. })
        ));
    }
}
