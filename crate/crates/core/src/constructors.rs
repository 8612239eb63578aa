//! Deterministic witnesses for the equality cases: complete bipartite graphs,
//! biregular graphs of any multiple size, circulant regular graphs and
//! disjoint unions.
//!
//! An `(a, b)`-biregular graph on `n` vertices needs `n` divisible by
//! `(a + b) / gcd(a, b)`; [`biregular`] only builds the sizes `(a + b) t`.

use crate::error::{Error, Result};
use crate::graph::Graph;

/// `K_{a,b}`: vertices `0..a` on one side, `a..a+b` on the other.
pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    let edges: Vec<_> = (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))).collect();
    Graph::from_sorted_unchecked(a + b, edges)
}

/// Bipartite graph with `b t` vertices of degree `a` (labelled first) and
/// `a t` vertices of degree `b`.
///
/// Slot `j` of left vertex `i` goes to right vertex `(i a + j) mod (a t)`.
/// Those `a` residues are consecutive, hence distinct, so the graph is simple;
/// each right vertex is hit exactly `b` times. With `t = 1` this is `K_{b,a}`.
pub fn biregular(a: usize, b: usize, t: usize) -> Result<Graph> {
    if a == 0 || b == 0 || t == 0 {
        return Err(Error::InvalidParameters(format!(
            "biregular needs a, b, t >= 1, got ({a}, {b}, {t})"
        )));
    }
    let left = b * t;
    let right = a * t;
    let mut edges = Vec::with_capacity(a * b * t);
    for i in 0..left {
        for j in 0..a {
            edges.push((i, left + (i * a + j) % right));
        }
    }
    Graph::from_edges(left + right, edges)
}

/// Circulant `r`-regular graph on `n` vertices: offsets `1..=r/2`, plus the
/// antipodal offset `n/2` when `r` is odd.
pub fn circulant_regular(n: usize, r: usize) -> Result<Graph> {
    if r >= n && !(n == 0 && r == 0) {
        return Err(Error::InvalidParameters(format!(
            "circulant needs r < n, got n = {n}, r = {r}"
        )));
    }
    if r % 2 == 1 && n % 2 == 1 {
        return Err(Error::InvalidParameters(format!(
            "no {r}-regular graph on {n} vertices: r n must be even"
        )));
    }
    let mut edges = Vec::with_capacity(n * r / 2);
    for s in 1..=r / 2 {
        edges.extend((0..n).map(|i| (i, (i + s) % n)));
    }
    if r % 2 == 1 {
        edges.extend((0..n / 2).map(|i| (i, i + n / 2)));
    }
    Graph::from_edges(n, edges)
}

/// Vertex-disjoint union; the vertices of `graphs[k]` follow those of
/// `graphs[k - 1]`.
pub fn disjoint_union(graphs: &[Graph]) -> Graph {
    let mut offset = 0;
    let mut edges = Vec::new();
    for g in graphs {
        edges.extend(g.edges().iter().map(|&(u, v)| (u + offset, v + offset)));
        offset += g.order();
    }
    // Blocks are already sorted and increasing.
    Graph::from_sorted_unchecked(offset, edges)
}
