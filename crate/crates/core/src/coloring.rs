//! Vertex colorings with dense color ids.

use std::collections::HashMap;
use std::hash::Hash;

/// Vertex coloring; producers in this crate always emit dense ids `0..num_colors`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub colors: Vec<usize>,
    pub num_colors: usize,
}

impl Coloring {
    /// Wraps raw color ids; `num_colors` is one more than the largest id.
    pub fn new(colors: Vec<usize>) -> Self {
        let num_colors = colors.iter().map(|&c| c + 1).max().unwrap_or(0);
        Coloring { colors, num_colors }
    }

    /// Relabels arbitrary hashable color values densely in order of first appearance.
    pub fn from_values<T: Hash + Eq + Clone>(values: &[T]) -> Self {
        canonicalize(values).0
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    /// Number of distinct colors actually used.
    pub fn distinct(&self) -> usize {
        let mut seen = vec![false; self.num_colors];
        self.colors.iter().filter(|&&c| !std::mem::replace(&mut seen[c], true)).count()
    }

    /// Vertices grouped by color.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut classes = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.colors.iter().enumerate() {
            classes[c].push(v);
        }
        classes
    }
}

/// Dense relabeling of `values` in order of first appearance, together with
/// the dictionary mapping each new id back to its value.
pub fn canonicalize<T: Hash + Eq + Clone>(values: &[T]) -> (Coloring, Vec<T>) {
    let mut ids: HashMap<&T, usize> = HashMap::new();
    let mut dictionary = Vec::new();
    let colors = values
        .iter()
        .map(|value| {
            *ids.entry(value).or_insert_with(|| {
                dictionary.push(value.clone());
                dictionary.len() - 1
            })
        })
        .collect();
    (
        Coloring {
            colors,
            num_colors: dictionary.len(),
        },
        dictionary,
    )
}

/// Binomial coefficient, saturating at `u128::MAX`.
pub fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Color bound for graphs of treewidth `width`: C(p + width, width).
pub fn treewidth_bound(p: usize, width: usize) -> u128 {
    binomial((p + width) as u128, width as u128)
}

/// Color bound for the layered construction over windows colored with `inner` colors.
pub fn layered_bound(p: usize, inner: u128) -> u128 {
    (p as u128 + 1).saturating_mul(inner.saturating_mul(inner))
}

/// Colors used per window by the planar route: (4p+1) C(p+8, 8).
pub fn planar_window_bound(p: usize) -> u128 {
    (4 * p as u128 + 1).saturating_mul(treewidth_bound(p, 8))
}

/// Color bound of the planar pipeline: (p+1) (4p+1)^2 C(p+8, 8)^2.
pub fn planar_bound(p: usize) -> u128 {
    layered_bound(p, planar_window_bound(p))
}

/// Color bound for genus `genus`: (p+1) (4g(4p+1) + planar_bound(p))^2.
pub fn genus_bound(p: usize, genus: usize) -> u128 {
    let cut = (4 * genus as u128).saturating_mul(4 * p as u128 + 1);
    layered_bound(p, cut.saturating_add(planar_bound(p)))
}
