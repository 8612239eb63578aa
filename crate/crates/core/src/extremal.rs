//! Sharp per-vertex bounds for degree-based indices.
//!
//! With the edge weighting `w(uv) = 1/d(u) + 1/d(v)` the weights of any graph
//! without isolated vertices sum to `|G|`, and `f(d(u), d(v)) / w(uv)` equals
//! the pair objective `h(a, b) = ab f(a, b) / (a + b)`. Hence
//! `F(G) >= h* |G|` where `h*` is the least objective over admissible degree
//! pairs, with equality exactly when every edge carries an optimal pair.
//! Maximisation is the same argument applied to `-f`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::{check_degrees, DegreeRange, Graph};
use crate::kernel::Kernel;
use crate::value::{format_rational, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Min,
    Max,
}

impl FromStr for Direction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "min" | "minimise" | "minimize" => Ok(Direction::Min),
            "max" | "maximise" | "maximize" => Ok(Direction::Max),
            other => Err(Error::InvalidParameters(format!("unknown direction {other:?}"))),
        }
    }
}

/// Optimal degree pairs for a kernel over a degree window.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExtremalResult {
    pub direction: Direction,
    pub range: DegreeRange,
    /// Sorted lexicographically, each with `a <= b`.
    pub optimal_pairs: Vec<(u32, u32)>,
    /// `F(G) >= coefficient * |G|` for `Min`, `<=` for `Max`.
    pub coefficient: Value,
    pub unique: bool,
}

impl ExtremalResult {
    pub fn is_optimal_pair(&self, a: u32, b: u32) -> bool {
        self.optimal_pairs.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    /// The bound on `F(G)` for a graph on `n` vertices.
    pub fn bound_for_order(&self, n: usize) -> Value {
        self.coefficient.scale(n)
    }
}

/// `ab f(a, b) / (a + b)`.
pub fn pair_objective(k: &Kernel, a: u32, b: u32) -> Result<Value> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidParameters("degrees in a pair must be >= 1".into()));
    }
    let f = k.value(a, b)?;
    let (a, b) = (u64::from(a), u64::from(b));
    Ok(match f {
        Value::Exact(r) => Value::Exact(r * BigRational::new(BigInt::from(a * b), BigInt::from(a + b))),
        Value::Approx(x) => Value::Approx((a * b) as f64 * x / (a + b) as f64),
    })
}

/// Exhaustive search over all pairs `delta <= a <= b <= Delta`.
///
/// Every pair tying with the optimum is reported: exactly for rational
/// kernels, within `1e-9 * max(1, |h|)` otherwise.
pub fn optimal_pairs(k: &Kernel, range: DegreeRange, direction: Direction) -> Result<ExtremalResult> {
    let scored = range
        .pairs()
        .map(|(a, b)| pair_objective(k, a, b).map(|h| ((a, b), h)))
        .collect::<Result<Vec<_>>>()?;
    let best = scored
        .iter()
        .map(|(_, h)| h)
        .reduce(|x, y| {
            let better = match direction {
                Direction::Min => y.compare(x).is_lt(),
                Direction::Max => y.compare(x).is_gt(),
            };
            if better {
                y
            } else {
                x
            }
        })
        .expect("a valid range has at least one pair")
        .clone();
    let optimal_pairs: Vec<_> = scored
        .iter()
        .filter(|(_, h)| h.ties(&best))
        .map(|&(p, _)| p)
        .collect();
    Ok(ExtremalResult {
        direction,
        range,
        unique: optimal_pairs.len() == 1,
        optimal_pairs,
        coefficient: best,
    })
}

/// The sharp coefficient `c` with `F(G) >= c|G|` (or `<=` when maximising).
pub fn vertex_bound(k: &Kernel, range: DegreeRange, direction: Direction) -> Result<Value> {
    Ok(optimal_pairs(k, range, direction)?.coefficient)
}

/// Sum over edges of `1/d(u) + 1/d(v)`, exactly. Equals `|G|` whenever no
/// vertex is isolated.
pub fn weight_certificate(g: &Graph) -> Result<BigRational> {
    if let Some(u) = g.isolated_vertex() {
        return Err(Error::IsolatedVertex(u));
    }
    let inv = |d: u32| BigRational::new(BigInt::from(1), BigInt::from(d));
    Ok(g.edges().iter().fold(BigRational::zero(), |acc, &(u, v)| {
        acc + inv(g.degree(u)) + inv(g.degree(v))
    }))
}

/// Outcome of the per-edge equality test.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EqualityCertificate {
    pub holds: bool,
    pub violating_edges: Vec<(usize, usize)>,
    #[serde(serialize_with = "serialize_rational")]
    pub weight_sum: BigRational,
}

fn serialize_rational<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Edges whose sorted degree pair is not among `result.optimal_pairs`.
pub fn non_optimal_edges(g: &Graph, result: &ExtremalResult) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .copied()
        .filter(|&(u, v)| !result.is_optimal_pair(g.degree(u), g.degree(v)))
        .collect()
}

/// Decides whether `g` attains the bound: it does exactly when every edge
/// carries an optimal degree pair. Degrees must lie in `range`.
pub fn certify_equality(
    g: &Graph,
    k: &Kernel,
    range: DegreeRange,
    direction: Direction,
) -> Result<EqualityCertificate> {
    check_degrees(g, range)?;
    let result = optimal_pairs(k, range, direction)?;
    let violating_edges = non_optimal_edges(g, &result);
    Ok(EqualityCertificate {
        holds: violating_edges.is_empty(),
        violating_edges,
        weight_sum: weight_certificate(g)?,
    })
}
