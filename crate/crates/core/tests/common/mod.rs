//! Reference implementations used only by tests. Each one is written
//! independently of the library routine it checks.
#![allow(dead_code)]

use std::collections::VecDeque;

use centered::Graph;

/// Plain adjacency lists, so the oracles do not lean on library helpers.
pub fn adjacency(g: &Graph) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); g.n()];
    for (u, v) in g.edges() {
        adj[u].push(v);
        adj[v].push(u);
    }
    adj
}

pub fn bfs(adj: &[Vec<usize>], source: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; adj.len()];
    dist[source] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Simple path whose length equals the BFS distance between its ends.
pub fn is_geodesic(adj: &[Vec<usize>], path: &[usize]) -> bool {
    if path.is_empty() {
        return false;
    }
    let mut seen = std::collections::HashSet::new();
    if !path.iter().all(|&v| seen.insert(v)) {
        return false;
    }
    if !path.windows(2).all(|w| adj[w[0]].contains(&w[1])) {
        return false;
    }
    bfs(adj, path[0])[*path.last().unwrap()] == path.len() - 1
}

pub fn is_embedding(h: &Graph, g: &Graph, eta: &[usize]) -> bool {
    if eta.len() != h.n() || eta.iter().any(|&x| x >= g.n()) {
        return false;
    }
    let mut used = vec![false; g.n()];
    if !eta.iter().all(|&x| !std::mem::replace(&mut used[x], true)) {
        return false;
    }
    let gadj = adjacency(g);
    h.edges().all(|(a, b)| gadj[eta[a]].contains(&eta[b]))
}

/// Backtracking subgraph matcher: pattern vertices in order of decreasing
/// degree, each tried on every unused host vertex.
pub fn naive_subgraph(h: &Graph, g: &Graph) -> Option<Vec<usize>> {
    if h.n() > g.n() {
        return None;
    }
    let hadj = adjacency(h);
    let gadj = adjacency(g);
    let mut order: Vec<usize> = (0..h.n()).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(hadj[v].len()));
    let mut eta = vec![usize::MAX; h.n()];
    let mut used = vec![false; g.n()];
    fn go(
        i: usize,
        order: &[usize],
        hadj: &[Vec<usize>],
        gadj: &[Vec<usize>],
        eta: &mut [usize],
        used: &mut [bool],
    ) -> bool {
        if i == order.len() {
            return true;
        }
        let u = order[i];
        for x in 0..gadj.len() {
            if used[x] || gadj[x].len() < hadj[u].len() {
                continue;
            }
            let fits = hadj[u]
                .iter()
                .all(|&w| eta[w] == usize::MAX || gadj[x].contains(&eta[w]));
            if !fits {
                continue;
            }
            eta[u] = x;
            used[x] = true;
            if go(i + 1, order, hadj, gadj, eta, used) {
                return true;
            }
            eta[u] = usize::MAX;
            used[x] = false;
        }
        false
    }
    go(0, &order, &hadj, &gadj, &mut eta, &mut used).then_some(eta)
}

/// Injections `eta` with `labels[eta(u)] == u` that are embeddings, by
/// enumerating candidates per pattern vertex.
pub fn brute_force_compliant(h: &Graph, g: &Graph, labels: &[usize]) -> bool {
    let candidates: Vec<Vec<usize>> = (0..h.n())
        .map(|u| (0..g.n()).filter(|&x| labels[x] == u).collect())
        .collect();
    let gadj = adjacency(g);
    let mut eta = vec![0; h.n()];
    fn go(u: usize, candidates: &[Vec<usize>], h: &Graph, gadj: &[Vec<usize>], eta: &mut Vec<usize>) -> bool {
        if u == candidates.len() {
            return h.edges().all(|(a, b)| gadj[eta[a]].contains(&eta[b]));
        }
        for &x in &candidates[u] {
            eta[u] = x;
            if go(u + 1, candidates, h, gadj, eta) {
                return true;
            }
        }
        false
    }
    go(0, &candidates, h, &gadj, &mut eta)
}

/// Every vertex in a bag, every edge inside a bag, and the bags holding a
/// vertex connected in the tree.
pub fn is_tree_decomposition(g: &Graph, bags: &[Vec<usize>], tree_edges: &[(usize, usize)]) -> bool {
    let k = bags.len();
    if k == 0 || tree_edges.len() + 1 != k {
        return false;
    }
    let mut tadj = vec![Vec::new(); k];
    for &(a, b) in tree_edges {
        tadj[a].push(b);
        tadj[b].push(a);
    }
    if bfs(&tadj, 0).contains(&usize::MAX) {
        return false;
    }
    for (u, v) in g.edges() {
        if !bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return false;
        }
    }
    for v in 0..g.n() {
        let holding: Vec<usize> = (0..k).filter(|&x| bags[x].contains(&v)).collect();
        let Some(&first) = holding.first() else {
            return false;
        };
        // Connected within the subtree of bags holding v.
        let mut seen = vec![false; k];
        seen[first] = true;
        let mut stack = vec![first];
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &y in &tadj[x] {
                if !seen[y] && bags[y].contains(&v) {
                    seen[y] = true;
                    count += 1;
                    stack.push(y);
                }
            }
        }
        if count != holding.len() {
            return false;
        }
    }
    true
}

/// Planarity by the Demoucron-Malgrange-Pertuiset face-embedding algorithm,
/// run on each biconnected block.
pub fn is_planar(g: &Graph) -> bool {
    let n = g.n();
    if n >= 3 && g.m() > 3 * n - 6 {
        return false;
    }
    let adj = adjacency(g);
    blocks(&adj).iter().all(|block| block_is_planar(block))
}

/// Edge sets of the biconnected components.
fn blocks(adj: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adj.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut out = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // Frames: (vertex, parent, next neighbour index).
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (v, parent, ref mut i)) = stack.last_mut() {
            if *i < adj[v].len() {
                let w = adj[v][*i];
                *i += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

fn block_is_planar(block: &[(usize, usize)]) -> bool {
    let mut vertices: Vec<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    if vertices.len() <= 4 {
        return true;
    }
    let local = |v: usize| vertices.binary_search(&v).unwrap();
    let k = vertices.len();
    let mut adj = vec![Vec::new(); k];
    for &(a, b) in block {
        let (a, b) = (local(a), local(b));
        adj[a].push(b);
        adj[b].push(a);
    }
    if block.len() > 3 * k - 6 {
        return false;
    }

    // Start from any cycle: a DFS back edge closes one.
    let cycle = find_cycle(&adj);
    let mut in_h = vec![false; k];
    let mut h_edge = std::collections::HashSet::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        in_h[a] = true;
        h_edge.insert((a.min(b), a.max(b)));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    loop {
        let fragments = fragments(&adj, &in_h, &h_edge);
        if fragments.is_empty() {
            return true;
        }
        let mut choice = None;
        for (i, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return false,
                1 => {
                    choice = Some((i, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((i, admissible[0]));
                    }
                }
            }
        }
        let (i, f) = choice.unwrap();
        let path = fragment_path(&adj, &in_h, &fragments[i]);
        for w in path.windows(2) {
            h_edge.insert((w[0].min(w[1]), w[0].max(w[1])));
        }
        for &v in &path {
            in_h[v] = true;
        }
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], *path.last().unwrap());
        let ia = face.iter().position(|&x| x == a).unwrap();
        let ib = face.iter().position(|&x| x == b).unwrap();
        let arc = |from: usize, to: usize| {
            let mut out = vec![face[from]];
            let mut j = from;
            while j != to {
                j = (j + 1) % face.len();
                out.push(face[j]);
            }
            out
        };
        let inner = &path[1..path.len() - 1];
        let mut first = arc(ia, ib);
        first.extend(inner.iter().rev());
        let mut second = arc(ib, ia);
        second.extend(inner.iter());
        faces.push(first);
        faces.push(second);
    }
}

fn find_cycle(adj: &[Vec<usize>]) -> Vec<usize> {
    let k = adj.len();
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    depth[0] = 0;
    let mut stack = vec![(0usize, 0usize)];
    while let Some(&mut (v, ref mut i)) = stack.last_mut() {
        if *i == adj[v].len() {
            stack.pop();
            continue;
        }
        let w = adj[v][*i];
        *i += 1;
        if depth[w] == usize::MAX {
            depth[w] = depth[v] + 1;
            parent[w] = v;
            stack.push((w, 0));
        } else if w != parent[v] && depth[w] < depth[v] {
            let mut cycle = vec![v];
            let mut x = v;
            while x != w {
                x = parent[x];
                cycle.push(x);
            }
            return cycle;
        }
    }
    unreachable!("a biconnected block with more than two vertices has a cycle")
}

struct Fragment {
    /// Component vertices outside H; empty for a single chord.
    inside: Vec<usize>,
    chord: Option<(usize, usize)>,
    attachments: Vec<usize>,
}

fn fragments(adj: &[Vec<usize>], in_h: &[bool], h_edge: &std::collections::HashSet<(usize, usize)>) -> Vec<Fragment> {
    let k = adj.len();
    let mut out = Vec::new();
    for a in 0..k {
        for &b in &adj[a] {
            if a < b && in_h[a] && in_h[b] && !h_edge.contains(&(a, b)) {
                out.push(Fragment {
                    inside: Vec::new(),
                    chord: Some((a, b)),
                    attachments: vec![a, b],
                });
            }
        }
    }
    let mut seen = vec![false; k];
    for s in 0..k {
        if in_h[s] || seen[s] {
            continue;
        }
        seen[s] = true;
        let mut inside = vec![s];
        let mut attachments = Vec::new();
        let mut i = 0;
        while i < inside.len() {
            let x = inside[i];
            i += 1;
            for &y in &adj[x] {
                if in_h[y] {
                    attachments.push(y);
                } else if !seen[y] {
                    seen[y] = true;
                    inside.push(y);
                }
            }
        }
        attachments.sort_unstable();
        attachments.dedup();
        out.push(Fragment {
            inside,
            chord: None,
            attachments,
        });
    }
    out
}

/// Path through the fragment between two different attachment vertices.
fn fragment_path(adj: &[Vec<usize>], in_h: &[bool], frag: &Fragment) -> Vec<usize> {
    if let Some((a, b)) = frag.chord {
        return vec![a, b];
    }
    let a = frag.attachments[0];
    let start = *frag.inside.iter().find(|&&x| adj[x].contains(&a)).unwrap();
    let mut prev = vec![usize::MAX; adj.len()];
    prev[start] = start;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if let Some(&b) = adj[x].iter().find(|&&y| in_h[y] && y != a) {
            let mut path = vec![b, x];
            let mut y = x;
            while y != start {
                y = prev[y];
                path.push(y);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in &adj[x] {
            if !in_h[y] && prev[y] == usize::MAX {
                prev[y] = x;
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragments of a biconnected block have two attachments")
}

/// Canonical colorings (restricted growth strings) of `n` vertices with at
/// most `k` colors.
pub fn canonical_colorings(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, k: usize, current: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<usize>>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        for c in 0..(used + 1).min(k) {
            current.push(c);
            go(n, k, current, used.max(c + 1), out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(n, k, &mut Vec::new(), 0, &mut out);
    out
}

/// p-centered check by listing every vertex subset (n <= 20): a connected
/// subset with at most `p` colors needs a color seen exactly once.
pub fn centered_by_subsets(g: &Graph, colors: &[usize], p: usize) -> bool {
    let n = g.n();
    assert!(n <= 20);
    let adj = adjacency(g);
    for mask in 1u32..(1u32 << n) {
        let members: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut reached = 1u32 << members[0];
        let mut stack = vec![members[0]];
        while let Some(x) = stack.pop() {
            for &y in &adj[x] {
                if mask >> y & 1 == 1 && reached >> y & 1 == 0 {
                    reached |= 1 << y;
                    stack.push(y);
                }
            }
        }
        if reached != mask {
            continue;
        }
        let mut count = std::collections::BTreeMap::new();
        for &v in &members {
            *count.entry(colors[v]).or_insert(0usize) += 1;
        }
        if count.len() <= p && !count.values().any(|&c| c == 1) {
            return false;
        }
    }
    true
}
