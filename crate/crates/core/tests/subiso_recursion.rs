//! The compliant-embedding recursion against brute force on small random
//! treedepth hosts.

mod common;

use centered::subiso::{compliant_family, si_compliant_instrumented, FamilyMode, TreedepthHost, UNLABELED};
use centered::{generators, Graph};
use common::{brute_force_compliant, is_embedding};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Random forest of depth at most `max_depth` with random ancestor edges.
fn random_host(n: usize, max_depth: usize, rng: &mut ChaCha8Rng) -> (Graph, Vec<Option<usize>>) {
    let mut parent = vec![None; n];
    let mut depth = vec![1; n];
    for v in 1..n {
        if rng.gen_bool(0.8) {
            let candidates: Vec<usize> = (0..v).filter(|&u| depth[u] < max_depth).collect();
            if !candidates.is_empty() {
                let up = candidates[rng.gen_range(0..candidates.len())];
                parent[v] = Some(up);
                depth[v] = depth[up] + 1;
            }
        }
    }
    let mut edges = Vec::new();
    for v in 0..n {
        let mut a = parent[v];
        while let Some(up) = a {
            if rng.gen_bool(0.6) {
                edges.push((up, v));
            }
            a = parent[up];
        }
    }
    (Graph::new(n, edges).unwrap(), parent)
}

fn check(h: &Graph, g: &Graph, parent: &[Option<usize>], labels: Vec<usize>) {
    let expected = brute_force_compliant(h, g, &labels);
    let host = TreedepthHost::new(g.clone(), parent.to_vec(), labels.clone()).unwrap();
    let (found, stats) = si_compliant_instrumented(h, &host).unwrap();
    assert_eq!(found.is_some(), expected, "labels {labels:?}");
    if let Some(eta) = found {
        assert!(is_embedding(h, g, &eta));
        assert!((0..h.n()).all(|u| labels[eta[u]] == u));
    }
    let p = h.n() as i32;
    let bound = 3f64.powi(p) * (p as f64).powi(host.depth() as i32) * g.n() as f64;
    assert_eq!(stats.repeated_keys, 0);
    assert!(stats.max_depth <= host.depth());
    assert!(stats.distinct_keys as f64 <= bound);
}

#[test]
fn all_label_maps_on_small_hosts() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..12 {
        let n = rng.gen_range(3..=7);
        let (g, parent) = random_host(n, 4, &mut rng);
        let p = rng.gen_range(1..=3);
        let h = generators::random_graph(p, 0.6, &mut rng);
        for labels in compliant_family(n, p, FamilyMode::Exhaustive).unwrap() {
            check(&h, &g, &parent, labels);
        }
    }
}

#[test]
fn random_label_maps_on_larger_hosts() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..300 {
        let n = rng.gen_range(5..=15);
        let (g, parent) = random_host(n, 5, &mut rng);
        let p = rng.gen_range(1..=4);
        let h = generators::random_graph(p, 0.5, &mut rng);
        for _ in 0..20 {
            let labels: Vec<usize> = (0..n)
                .map(|_| {
                    let l = rng.gen_range(0..=p);
                    if l == p {
                        UNLABELED
                    } else {
                        l
                    }
                })
                .collect();
            check(&h, &g, &parent, labels);
        }
    }
}

#[test]
fn planted_patterns_are_found() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let mut planted = 0;
    for _ in 0..200 {
        let n = rng.gen_range(6..=15);
        let (g, parent) = random_host(n, 5, &mut rng);
        // Pattern: a random subgraph on a random set of host vertices.
        let p = rng.gen_range(2..=4);
        let mut chosen: Vec<usize> = Vec::new();
        while chosen.len() < p {
            let v = rng.gen_range(0..n);
            if !chosen.contains(&v) {
                chosen.push(v);
            }
        }
        let edges: Vec<(usize, usize)> = (0..p)
            .flat_map(|a| (a + 1..p).map(move |b| (a, b)))
            .filter(|&(a, b)| g.has_edge(chosen[a], chosen[b]))
            .collect();
        let h = Graph::new(p, edges).unwrap();
        let mut labels = vec![UNLABELED; n];
        for (u, &x) in chosen.iter().enumerate() {
            labels[x] = u;
        }
        for x in 0..n {
            if labels[x] == UNLABELED && rng.gen_bool(0.5) {
                labels[x] = rng.gen_range(0..p);
            }
        }
        check(&h, &g, &parent, labels);
        planted += 1;
    }
    assert_eq!(planted, 200);
}
