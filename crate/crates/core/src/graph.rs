//! Simple undirected graphs, degree ranges and the structural predicates the
//! bounds are stated in terms of.

use serde::Serialize;

use crate::error::{Error, Result};

/// A simple undirected graph on vertices `0..n`.
///
/// Edges are stored once, as `(u, v)` with `u < v`, in lexicographic order.
/// Values are immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    /// Builds a graph, rejecting self-loops, repeated edges and endpoints `>= n`.
    /// Edge orientation and order do not matter.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut list = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u.min(v), u.max(v)));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted_unchecked(n, list))
    }

    /// `edges` must already be normalised, sorted and duplicate free.
    pub(crate) fn from_sorted_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph { n, edges, adj }
    }

    /// Number of vertices, |G|.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of edges.
    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, u: usize) -> u32 {
        self.adj[u].len() as u32
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.adj.iter().map(|a| a.len() as u32).collect()
    }

    pub fn neighbours(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// First vertex of degree zero, if any.
    pub fn isolated_vertex(&self) -> Option<usize> {
        self.adj.iter().position(Vec::is_empty)
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut i = 0;
            while i < comp.len() {
                let u = comp[i];
                i += 1;
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// The graph with vertex `u` renamed to `perm[u]`.
    ///
    /// Panics if `perm` is not a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length must equal graph order");
        let mut check = vec![false; self.n];
        for &p in perm {
            assert!(p < self.n && !check[p], "not a permutation");
            check[p] = true;
        }
        let mut edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (perm[u], perm[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        edges.sort_unstable();
        Graph::from_sorted_unchecked(self.n, edges)
    }
}

/// The admissible degree window `[delta, Delta]` with `1 <= delta <= Delta`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct DegreeRange {
    #[serde(rename = "delta")]
    min: u32,
    #[serde(rename = "Delta")]
    max: u32,
}

impl DegreeRange {
    pub fn new(min: u32, max: u32) -> Result<Self> {
        if min == 0 || min > max {
            return Err(Error::InvalidRange { min, max });
        }
        Ok(DegreeRange { min, max })
    }

    /// Minimum admissible degree (delta).
    pub fn min(&self) -> u32 {
        self.min
    }

    /// Maximum admissible degree (Delta).
    pub fn max(&self) -> u32 {
        self.max
    }

    pub fn contains(&self, d: u32) -> bool {
        self.min <= d && d <= self.max
    }

    /// All pairs `a <= b` in the window, lexicographically.
    pub fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        (self.min..=self.max).flat_map(move |a| (a..=self.max).map(move |b| (a, b)))
    }

    pub fn pair_count(&self) -> usize {
        let w = (self.max - self.min + 1) as usize;
        w * (w + 1) / 2
    }
}

/// Per-vertex degrees with the observed extremes (absent for the empty graph).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSummary {
    pub degrees: Vec<u32>,
    pub min: Option<u32>,
    pub max: Option<u32>,
}

pub fn degree_summary(g: &Graph) -> DegreeSummary {
    let degrees = g.degrees();
    DegreeSummary {
        min: degrees.iter().copied().min(),
        max: degrees.iter().copied().max(),
        degrees,
    }
}

/// Structural verdict. When several would apply the earlier variant wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Structure {
    Regular(u32),
    /// `a < b`, both at least 1, every edge joins a degree-`a` vertex to a degree-`b` one.
    Biregular(u32, u32),
    /// Every component is regular but the whole graph is not.
    ComponentwiseRegular,
    Irregular,
}

impl Structure {
    /// True for regular graphs and for graphs whose components are all regular.
    pub fn is_componentwise_regular(&self) -> bool {
        matches!(self, Structure::Regular(_) | Structure::ComponentwiseRegular)
    }

    /// Whether the graph is `(a, b)`-biregular in the broad sense, so that
    /// `(r, r)` means `r`-regular.
    pub fn is_biregular_pair(&self, a: u32, b: u32) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        match *self {
            Structure::Regular(r) => a == b && r == a,
            Structure::Biregular(x, y) => x == a && y == b,
            _ => false,
        }
    }
}

impl std::fmt::Display for Structure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Structure::Regular(r) => write!(f, "{r}-regular"),
            Structure::Biregular(a, b) => write!(f, "({a},{b})-biregular"),
            Structure::ComponentwiseRegular => write!(f, "componentwise regular"),
            Structure::Irregular => write!(f, "irregular"),
        }
    }
}

/// Classifies `g` as regular, biregular, componentwise regular or irregular.
///
/// The empty graph is reported as `Regular(0)`. Isolated vertices never
/// yield a `Biregular` verdict.
pub fn classify_structure(g: &Graph) -> Structure {
    let degrees = g.degrees();
    let (Some(&lo), Some(&hi)) = (degrees.iter().min(), degrees.iter().max()) else {
        return Structure::Regular(0);
    };
    if lo == hi {
        return Structure::Regular(lo);
    }
    let two_valued = degrees.iter().all(|&d| d == lo || d == hi);
    if lo >= 1
        && two_valued
        && g
            .edges()
            .iter()
            .all(|&(u, v)| degrees[u] != degrees[v])
    {
        return Structure::Biregular(lo, hi);
    }
    let componentwise = g.components().iter().all(|comp| {
        let d0 = degrees[comp[0]];
        comp.iter().all(|&u| degrees[u] == d0)
    });
    if componentwise {
        Structure::ComponentwiseRegular
    } else {
        Structure::Irregular
    }
}

/// Checks that every degree lies in `range`, reporting the first offender.
pub fn check_degrees(g: &Graph, range: DegreeRange) -> Result<()> {
    for u in 0..g.order() {
        let d = g.degree(u);
        if d == 0 {
            return Err(Error::IsolatedVertex(u));
        }
        if !range.contains(d) {
            return Err(Error::DegreeOutOfRange {
                vertex: u,
                degree: d,
                min: range.min(),
                max: range.max(),
            });
        }
    }
    Ok(())
}
