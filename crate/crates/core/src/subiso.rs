//! Subgraph isomorphism on hosts with a p-centered coloring.
//!
//! For every small set of colors the host restricted to those colors has a
//! shallow treedepth forest. Color coding labels host vertices with pattern
//! vertices, and a recursion over the forest looks for an embedding that
//! respects the labels while keeping only one stack frame per forest level.

use std::collections::HashSet;
use std::sync::Mutex;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::coloring::Coloring;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verify::{
    check_p_centered, color_adjacency, for_each_connected_set, treedepth_forest_from_coloring,
};

/// Label of a host vertex that no pattern vertex may use.
pub const UNLABELED: usize = usize::MAX;

const MAX_PATTERN: usize = 64;

/// How label maps are produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FamilyMode {
    /// Every injective placement is covered. Cost grows like `m^p` per
    /// color set of `m` vertices.
    Exhaustive,
    /// `trials` seeded hash functions into `p^2` buckets; a fixed injection
    /// is missed with probability at most `2^-trials`.
    Randomized { seed: u64, trials: usize },
}

/// Hash functions into `p^2` buckets, one per trial.
#[derive(Clone, Debug)]
pub struct BucketMaps {
    pub buckets: usize,
    pub maps: Vec<Vec<usize>>,
}

impl BucketMaps {
    pub fn random(n: usize, p: usize, trials: usize, seed: u64) -> Result<BucketMaps> {
        if trials == 0 {
            return Err(Error::InvalidArgument("at least one trial is required".into()));
        }
        let buckets = (p * p).max(1);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let maps = (0..trials)
            .map(|_| (0..n).map(|_| rng.gen_range(0..buckets)).collect())
            .collect();
        Ok(BucketMaps { buckets, maps })
    }

    /// Whether some trial is injective on `vertices`.
    pub fn covers(&self, vertices: &[usize]) -> bool {
        self.maps.iter().any(|f| {
            let mut seen = vec![false; self.buckets];
            vertices.iter().all(|&v| !std::mem::replace(&mut seen[f[v]], true))
        })
    }
}

/// Label maps `V(G) -> V(H)` such that every injection `eta` from the
/// pattern into the host has some `alpha` with `alpha(eta(u)) = u`.
///
/// Exhaustive mode lists all total maps, deduplicated. Randomized mode
/// composes each hash function with every map from the buckets it hits to
/// the pattern.
pub fn compliant_family(
    host_size: usize,
    pattern_size: usize,
    mode: FamilyMode,
) -> Result<Vec<Vec<usize>>> {
    if pattern_size == 0 {
        return Err(Error::InvalidArgument("pattern has no vertices".into()));
    }
    let budget = 1u128 << 22;
    let count = |k: usize| (pattern_size as u128).checked_pow(k as u32).filter(|&c| c <= budget);
    let all_maps = |k: usize| -> Vec<Vec<usize>> {
        let total = count(k).unwrap() as usize;
        (0..total)
            .map(|mut code| {
                (0..k)
                    .map(|_| {
                        let d = code % pattern_size;
                        code /= pattern_size;
                        d
                    })
                    .collect()
            })
            .collect()
    };
    match mode {
        FamilyMode::Exhaustive => {
            count(host_size).ok_or_else(|| Error::TooLarge("exhaustive label family".into()))?;
            Ok(all_maps(host_size))
        }
        FamilyMode::Randomized { seed, trials } => {
            let maps = BucketMaps::random(host_size, pattern_size, trials, seed)?;
            let mut family = Vec::new();
            let mut seen = HashSet::new();
            for f in &maps.maps {
                let mut hit: Vec<usize> = f.clone();
                hit.sort_unstable();
                hit.dedup();
                count(hit.len()).ok_or_else(|| Error::TooLarge("randomized label family".into()))?;
                for g in all_maps(hit.len()) {
                    let alpha: Vec<usize> = f
                        .iter()
                        .map(|b| g[hit.binary_search(b).unwrap()])
                        .collect();
                    if seen.insert(alpha.clone()) {
                        family.push(alpha);
                    }
                }
            }
            Ok(family)
        }
    }
}

/// Host graph with a treedepth forest and a label per vertex.
#[derive(Clone, Debug)]
pub struct TreedepthHost {
    pub graph: Graph,
    pub parent: Vec<Option<usize>>,
    /// Pattern vertex of each host vertex, or [`UNLABELED`].
    pub labels: Vec<usize>,
    children: Vec<Vec<usize>>,
    roots: Vec<usize>,
    depth_of: Vec<usize>,
}

impl TreedepthHost {
    /// Checks that `parent` is a forest and that every edge joins an
    /// ancestor with a descendant.
    pub fn new(graph: Graph, parent: Vec<Option<usize>>, labels: Vec<usize>) -> Result<Self> {
        let n = graph.n();
        if parent.len() != n || labels.len() != n {
            return Err(Error::InvalidDecomposition(
                "forest and labels must cover every host vertex".into(),
            ));
        }
        let mut depth_of = vec![0usize; n];
        for v in 0..n {
            let mut steps = 1;
            let mut x = v;
            while let Some(up) = parent[x] {
                if up >= n || steps > n {
                    return Err(Error::InvalidDecomposition("parent pointers do not form a forest".into()));
                }
                steps += 1;
                x = up;
            }
            depth_of[v] = steps;
        }
        let is_ancestor = |a: usize, mut b: usize| {
            while depth_of[b] > depth_of[a] {
                b = parent[b].unwrap();
            }
            a == b
        };
        for (u, v) in graph.edges() {
            if !is_ancestor(u, v) && !is_ancestor(v, u) {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({u}, {v}) joins unrelated forest vertices"
                )));
            }
        }
        let mut children = vec![Vec::new(); n];
        let mut roots = Vec::new();
        for v in 0..n {
            match parent[v] {
                Some(up) => children[up].push(v),
                None => roots.push(v),
            }
        }
        Ok(TreedepthHost {
            graph,
            parent,
            labels,
            children,
            roots,
            depth_of,
        })
    }

    /// Number of vertices on the longest root-to-leaf path.
    pub fn depth(&self) -> usize {
        self.depth_of.iter().copied().max().unwrap_or(0)
    }
}

/// Counters collected by an instrumented search.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub calls: u64,
    /// Deepest recursion stack seen, in frames.
    pub max_depth: usize,
    pub distinct_keys: usize,
    /// Subproblems entered more than once.
    pub repeated_keys: u64,
}

type Key = (usize, u64, u64, Vec<usize>);

struct Search<'a> {
    pattern: &'a [u64],
    host: &'a TreedepthHost,
    below: Vec<u64>,
    gamma: Vec<usize>,
    eta: Vec<usize>,
    frames: usize,
    stats: Option<(SearchStats, HashSet<Key>)>,
}

impl Search<'_> {
    fn value(&mut self, u: usize, x: u64, d: u64) -> bool {
        self.frames += 1;
        if let Some((stats, keys)) = &mut self.stats {
            stats.calls += 1;
            stats.max_depth = stats.max_depth.max(self.frames);
            let image = bits(d).map(|y| self.gamma[y]).collect();
            if !keys.insert((u, x, d, image)) {
                stats.repeated_keys += 1;
            }
        }
        let result = self.evaluate(u, x, d);
        self.frames -= 1;
        result
    }

    fn evaluate(&mut self, u: usize, x: u64, d: u64) -> bool {
        if x == 0 {
            // Edges inside D were checked as their endpoints were placed.
            return true;
        }
        if x & !self.below[u] != 0 {
            return false;
        }
        let w = self.host.labels[u];
        let children = &self.host.children[u];
        if children.is_empty() {
            if w != UNLABELED && x == 1 << w && self.fits(w, u) {
                self.eta[w] = u;
                return true;
            }
            return false;
        }
        for i in 0..children.len() {
            let v = self.host.children[u][i];
            if self.value(v, x, d) {
                return true;
            }
        }
        if w == UNLABELED || x & (1 << w) == 0 || !self.fits(w, u) {
            return false;
        }
        self.gamma[w] = u;
        let rest = x & !(1 << w);
        let mut ok = true;
        for z in components(self.pattern, rest) {
            let mut placed = false;
            for i in 0..self.host.children[u].len() {
                let v = self.host.children[u][i];
                if self.value(v, z, d | 1 << w) {
                    placed = true;
                    break;
                }
            }
            if !placed {
                ok = false;
                break;
            }
        }
        self.gamma[w] = UNLABELED;
        if ok {
            self.eta[w] = u;
        }
        ok
    }

    /// Whether `w` may sit at `u` given the placed neighbours of `w`.
    fn fits(&self, w: usize, u: usize) -> bool {
        bits(self.pattern[w]).all(|y| {
            let at = self.gamma[y];
            at == UNLABELED || self.host.graph.has_edge(u, at)
        })
    }
}

fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let b = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            b
        })
    })
}

fn components(adjacency: &[u64], set: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut left = set;
    while left != 0 {
        let mut comp = left & left.wrapping_neg();
        loop {
            let grown = bits(comp).fold(comp, |acc, y| acc | (adjacency[y] & set));
            if grown == comp {
                break;
            }
            comp = grown;
        }
        out.push(comp);
        left &= !comp;
    }
    out
}

fn pattern_masks(h: &Graph) -> Result<Vec<u64>> {
    if h.n() == 0 {
        return Err(Error::InvalidArgument("pattern has no vertices".into()));
    }
    if h.n() > MAX_PATTERN {
        return Err(Error::TooLarge(format!("pattern with {} vertices", h.n())));
    }
    Ok((0..h.n())
        .map(|v| h.neighbors(v).iter().fold(0u64, |m, &y| m | 1 << y))
        .collect())
}

fn run(h: &Graph, host: &TreedepthHost, instrument: bool) -> Result<(Option<Vec<usize>>, Option<SearchStats>)> {
    let pattern = pattern_masks(h)?;
    if host.labels.iter().any(|&l| l != UNLABELED && l >= h.n()) {
        return Err(Error::InvalidArgument("label outside the pattern".into()));
    }
    let n = host.graph.n();
    let mut below: Vec<u64> = host
        .labels
        .iter()
        .map(|&l| if l == UNLABELED { 0 } else { 1 << l })
        .collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(host.depth_of[v]));
    for v in order {
        if let Some(up) = host.parent[v] {
            below[up] |= below[v];
        }
    }
    let mut search = Search {
        pattern: &pattern,
        host,
        below,
        gamma: vec![UNLABELED; h.n()],
        eta: vec![UNLABELED; h.n()],
        frames: 0,
        stats: instrument.then(|| (SearchStats::default(), HashSet::new())),
    };
    let full = if h.n() == 64 { u64::MAX } else { (1u64 << h.n()) - 1 };
    let mut found = true;
    for x in components(&pattern, full) {
        if !host.roots.iter().any(|&r| search.value(r, x, 0)) {
            found = false;
            break;
        }
    }
    let stats = search.stats.take().map(|(mut s, keys)| {
        s.distinct_keys = keys.len();
        s
    });
    Ok((found.then_some(search.eta), stats))
}

/// Looks for an embedding of `h` into the host with `labels[eta(u)] = u`.
/// Returns the embedding as host vertices indexed by pattern vertex.
pub fn si_compliant(h: &Graph, host: &TreedepthHost) -> Result<Option<Vec<usize>>> {
    Ok(run(h, host, false)?.0)
}

/// [`si_compliant`] with recursion counters.
pub fn si_compliant_instrumented(
    h: &Graph,
    host: &TreedepthHost,
) -> Result<(Option<Vec<usize>>, SearchStats)> {
    let (found, stats) = run(h, host, true)?;
    Ok((found, stats.unwrap()))
}

/// Settings for [`subgraph_isomorphism`].
#[derive(Clone, Copy, Debug)]
pub struct SubisoOptions {
    /// Centering parameter; defaults to the number of pattern vertices.
    pub p: Option<usize>,
    pub mode: FamilyMode,
    /// Verify the host coloring before searching.
    pub verify_coloring: bool,
    /// Collect recursion counters for every search.
    pub instrument: bool,
}

impl Default for SubisoOptions {
    fn default() -> Self {
        SubisoOptions {
            p: None,
            mode: FamilyMode::Exhaustive,
            verify_coloring: false,
            instrument: false,
        }
    }
}

/// Totals over all searches of one [`subgraph_isomorphism`] call.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DriverStats {
    pub color_sets: u64,
    pub label_maps: u64,
    pub calls: u64,
    pub max_depth: usize,
    /// Searches whose stack got deeper than their forest.
    pub depth_violations: u64,
    pub repeated_keys: u64,
    /// Searches with more distinct subproblems than `3^p p^d n`.
    pub key_bound_violations: u64,
}

impl DriverStats {
    fn absorb(&mut self, other: &DriverStats) {
        self.color_sets += other.color_sets;
        self.label_maps += other.label_maps;
        self.calls += other.calls;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.depth_violations += other.depth_violations;
        self.repeated_keys += other.repeated_keys;
        self.key_bound_violations += other.key_bound_violations;
    }
}

/// Result of [`subgraph_isomorphism`].
#[derive(Clone, Debug)]
pub struct SubisoOutcome {
    /// Host vertex of each pattern vertex when `h` is a subgraph of `g`.
    pub embedding: Option<Vec<usize>>,
    pub coloring: Coloring,
    pub stats: DriverStats,
}

/// Decides whether `h` is a subgraph of `g`.
///
/// `colorer` must return a p-centered coloring of `g` where `p` is at least
/// the number of pattern vertices. The image of every pattern component uses
/// a connected set of colors, so color sets are enumerated as unions of at
/// most as many non-adjacent connected pieces as the pattern has components.
pub fn subgraph_isomorphism(
    h: &Graph,
    g: &Graph,
    colorer: &dyn Fn(&Graph, usize) -> Result<Coloring>,
    options: SubisoOptions,
) -> Result<SubisoOutcome> {
    pattern_masks(h)?;
    let p = options.p.unwrap_or(h.n());
    if p < h.n() {
        return Err(Error::InvalidArgument(format!(
            "p = {p} is below the pattern size {}",
            h.n()
        )));
    }
    if let FamilyMode::Randomized { trials: 0, .. } = options.mode {
        return Err(Error::InvalidArgument("at least one trial is required".into()));
    }
    let coloring = colorer(g, p)?;
    if coloring.len() != g.n() {
        return Err(Error::ColoringLength {
            expected: g.n(),
            found: coloring.len(),
        });
    }
    if options.verify_coloring {
        let verdict = check_p_centered(g, &coloring, p)?;
        if !verdict.ok {
            return Err(Error::NotCentered {
                witness: verdict.counterexample,
            });
        }
    }
    let done = |embedding, stats| {
        Ok(SubisoOutcome {
            embedding,
            coloring: coloring.clone(),
            stats,
        })
    };
    if h.n() > g.n() {
        return done(None, DriverStats::default());
    }

    // Isolated pattern vertices go to unused host vertices at the end.
    let core: Vec<usize> = (0..h.n()).filter(|&v| h.degree(v) > 0).collect();
    let attach = |core_image: &[usize]| -> Vec<usize> {
        let mut used = vec![false; g.n()];
        let mut eta = vec![UNLABELED; h.n()];
        for (i, &v) in core.iter().enumerate() {
            eta[v] = core_image[i];
            used[core_image[i]] = true;
        }
        let mut free = (0..g.n()).filter(|&x| !used[x]);
        for slot in eta.iter_mut().filter(|s| **s == UNLABELED) {
            *slot = free.next().unwrap();
        }
        eta
    };
    if core.is_empty() {
        return done(Some(attach(&[])), DriverStats::default());
    }
    let pattern = h.induced_subgraph(&core);
    let parts = components(&pattern_masks(&pattern)?, (1u64 << core.len()) - 1).len();
    let color_sets = color_sets(&color_adjacency(g, &coloring), core.len(), parts);
    let buckets = match options.mode {
        FamilyMode::Exhaustive => None,
        FamilyMode::Randomized { seed, trials } => {
            Some(BucketMaps::random(g.n(), core.len(), trials, seed)?)
        }
    };

    let totals = Mutex::new(DriverStats::default());
    let classes = coloring.classes();
    let found = color_sets
        .par_iter()
        .map(|set| -> Result<Option<Vec<usize>>> {
            let mut local = DriverStats {
                color_sets: 1,
                ..DriverStats::default()
            };
            let found = search_color_set(
                &pattern,
                g,
                &coloring,
                &classes,
                set,
                buckets.as_ref(),
                options.instrument,
                &mut local,
            );
            totals.lock().unwrap().absorb(&local);
            found
        })
        .find_map_first(|r| match r {
            Ok(None) => None,
            other => Some(other),
        })
        .transpose()?
        .flatten();
    let stats = totals.into_inner().unwrap();
    done(found.map(|image| attach(&image)), stats)
}

/// Sets of at most `size` colors whose induced pieces in the color graph
/// number at most `pieces`, each listed once.
fn color_sets(adj: &[Vec<usize>], size: usize, pieces: usize) -> Vec<Vec<usize>> {
    fn grow(
        adj: &[Vec<usize>],
        from: usize,
        size: usize,
        pieces: usize,
        chosen: &mut Vec<usize>,
        blocked: &mut Vec<u32>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if pieces == 0 || size == 0 {
            return;
        }
        for start in from..adj.len() {
            if blocked[start] > 0 {
                continue;
            }
            let mut pieces_here = Vec::new();
            for_each_connected_set(adj, start, size, &mut |set| {
                if set.iter().all(|&c| blocked[c] == 0) {
                    pieces_here.push(set.to_vec());
                }
                true
            });
            for piece in pieces_here {
                let mark = |blocked: &mut Vec<u32>, delta: i64| {
                    for &c in &piece {
                        blocked[c] = (blocked[c] as i64 + delta) as u32;
                        for &y in &adj[c] {
                            blocked[y] = (blocked[y] as i64 + delta) as u32;
                        }
                    }
                };
                let before = chosen.len();
                chosen.extend_from_slice(&piece);
                let mut sorted = chosen.clone();
                sorted.sort_unstable();
                out.push(sorted);
                mark(blocked, 1);
                grow(adj, start + 1, size - piece.len(), pieces - 1, chosen, blocked, out);
                mark(blocked, -1);
                chosen.truncate(before);
            }
        }
    }
    let mut out = Vec::new();
    let mut blocked = vec![0u32; adj.len()];
    grow(adj, 0, size, pieces, &mut Vec::new(), &mut blocked, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn search_color_set(
    pattern: &Graph,
    g: &Graph,
    coloring: &Coloring,
    classes: &[Vec<usize>],
    set: &[usize],
    buckets: Option<&BucketMaps>,
    instrument: bool,
    stats: &mut DriverStats,
) -> Result<Option<Vec<usize>>> {
    let p = pattern.n();
    let mut vertices: Vec<usize> = set.iter().flat_map(|&c| classes[c].iter().copied()).collect();
    if vertices.len() < p {
        return Ok(None);
    }
    vertices.sort_unstable();
    let forest = treedepth_forest_from_coloring(g, coloring, set)?;
    let mut local = vec![UNLABELED; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let sub = g.induced_subgraph(&vertices);
    let parent: Vec<Option<usize>> = vertices.iter().map(|&v| forest.parent[v].map(|a| local[a])).collect();
    let color_index: Vec<usize> = vertices
        .iter()
        .map(|&v| set.binary_search(&coloring.colors[v]).unwrap())
        .collect();
    let mut host = TreedepthHost::new(sub, parent, vec![UNLABELED; vertices.len()])?;
    let depth = host.depth();
    let key_bound = 3f64.powi(p as i32) * (p as f64).powi(depth as i32) * vertices.len() as f64;

    let trials: Vec<Vec<usize>> = match buckets {
        None => vec![(0..vertices.len()).collect()],
        Some(maps) => maps
            .maps
            .iter()
            .map(|f| vertices.iter().map(|&v| f[v]).collect())
            .collect(),
    };
    for bucket_of in trials {
        let mut groups: Vec<usize> = bucket_of.clone();
        groups.sort_unstable();
        groups.dedup();
        let members: Vec<Vec<usize>> = groups
            .iter()
            .map(|b| (0..vertices.len()).filter(|&x| bucket_of[x] == *b).collect())
            .collect();
        // Buckets each pattern vertex may take under the degree filter.
        let allowed: Vec<Vec<usize>> = (0..p)
            .map(|w| {
                (0..groups.len())
                    .filter(|&b| members[b].iter().any(|&x| host.graph.degree(x) >= pattern.degree(w)))
                    .collect()
            })
            .collect();
        let mut assignment = vec![UNLABELED; p];
        let mut taken = vec![false; groups.len()];
        let mut found = None;
        let mut failure = None;
        assign(0, &allowed, &mut assignment, &mut taken, &mut |assignment| {
            let mut labels = vec![UNLABELED; vertices.len()];
            for (w, &b) in assignment.iter().enumerate() {
                for &x in &members[b] {
                    if host.graph.degree(x) >= pattern.degree(w) {
                        labels[x] = w;
                    }
                }
            }
            // Only images that use every color of the set are sought here.
            let mut seen = vec![false; set.len()];
            for x in 0..vertices.len() {
                if labels[x] != UNLABELED {
                    seen[color_index[x]] = true;
                }
            }
            if seen.contains(&false) {
                return true;
            }
            host.labels = labels;
            stats.label_maps += 1;
            match run(pattern, &host, instrument) {
                Err(e) => {
                    failure = Some(e);
                    false
                }
                Ok((eta, run_stats)) => {
                    if let Some(s) = run_stats {
                        stats.calls += s.calls;
                        stats.max_depth = stats.max_depth.max(s.max_depth);
                        stats.depth_violations += u64::from(s.max_depth > depth);
                        stats.repeated_keys += s.repeated_keys;
                        stats.key_bound_violations += u64::from(s.distinct_keys as f64 > key_bound);
                    }
                    found = eta;
                    found.is_none()
                }
            }
        });
        if let Some(e) = failure {
            return Err(e);
        }
        if let Some(eta) = found {
            return Ok(Some(eta.into_iter().map(|x| vertices[x]).collect()));
        }
    }
    Ok(None)
}

fn assign(
    w: usize,
    allowed: &[Vec<usize>],
    assignment: &mut Vec<usize>,
    taken: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    if w == allowed.len() {
        return visit(assignment);
    }
    for &b in &allowed[w] {
        if taken[b] {
            continue;
        }
        taken[b] = true;
        assignment[w] = b;
        let go_on = assign(w + 1, allowed, assignment, taken, visit);
        taken[b] = false;
        if !go_on {
            return false;
        }
    }
    true
}
