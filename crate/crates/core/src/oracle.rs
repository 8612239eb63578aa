//! Exhaustive brute-force checking over all labelled graphs of small order
//! whose degrees lie in a window.
//!
//! Enumeration is a depth-first search over the `n(n-1)/2` edge slots in
//! lexicographic order, trying "absent" before "present". A branch is cut as
//! soon as a vertex would exceed `Delta`, or as soon as a vertex could no
//! longer reach `delta` with the slots it has left. Every admissible labelled
//! graph is produced exactly once; witnesses are reduced to a canonical form
//! afterwards.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::extremal::{non_optimal_edges, optimal_pairs, Direction};
use crate::format::to_graph6;
use crate::graph::{classify_structure, DegreeRange, Graph, Structure};
use crate::kernel::Kernel;
use crate::regimes::{classify, Regime, RegimeReport};
use crate::value::Value;

/// Hard cap on the order for exhaustive search.
pub const MAX_ORDER: usize = 8;

/// Absolute tolerance for comparing floating index totals with bounds.
pub const VALUE_TOLERANCE: f64 = 1e-9;

/// Iterator over every labelled graph on `n` vertices with degrees in a window.
#[derive(Debug, Clone)]
pub struct Enumeration {
    n: usize,
    range: DegreeRange,
    slots: Vec<(usize, usize)>,
    degree: Vec<u32>,
    remaining: Vec<u32>,
    present: Vec<bool>,
    stack: Vec<Frame>,
}

#[derive(Debug, Clone, Copy, Default)]
struct Frame {
    tried: u8,
    applied: Option<bool>,
}

/// All labelled graphs on `n` vertices (`1 <= n <= 8`) with every degree in `range`.
pub fn enumerate(n: usize, range: DegreeRange) -> Result<Enumeration> {
    if n > MAX_ORDER {
        return Err(Error::TooLarge { n, cap: MAX_ORDER });
    }
    if n == 0 {
        return Err(Error::InvalidParameters("enumeration needs n >= 1".into()));
    }
    let slots: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    // With n - 1 < delta nothing is admissible; an empty slot list means n = 1,
    // whose only graph has an isolated vertex.
    let feasible = n as u32 > range.min() && !slots.is_empty();
    let stack = if feasible { vec![Frame::default()] } else { Vec::new() };
    Ok(Enumeration {
        n,
        range,
        present: vec![false; slots.len()],
        slots,
        degree: vec![0; n],
        remaining: vec![n as u32 - 1; n],
        stack,
    })
}

impl Enumeration {
    fn apply(&mut self, slot: usize, include: bool) -> bool {
        let (u, v) = self.slots[slot];
        if include {
            if self.degree[u] >= self.range.max() || self.degree[v] >= self.range.max() {
                return false;
            }
            self.degree[u] += 1;
            self.degree[v] += 1;
        }
        self.remaining[u] -= 1;
        self.remaining[v] -= 1;
        let lo = self.range.min();
        if !include && (self.degree[u] + self.remaining[u] < lo || self.degree[v] + self.remaining[v] < lo) {
            self.remaining[u] += 1;
            self.remaining[v] += 1;
            return false;
        }
        self.present[slot] = include;
        true
    }

    fn undo(&mut self, slot: usize, include: bool) {
        let (u, v) = self.slots[slot];
        if include {
            self.degree[u] -= 1;
            self.degree[v] -= 1;
        }
        self.remaining[u] += 1;
        self.remaining[v] += 1;
        self.present[slot] = false;
    }

    fn current(&self) -> Graph {
        let edges = self
            .slots
            .iter()
            .zip(&self.present)
            .filter(|(_, &p)| p)
            .map(|(&e, _)| e)
            .collect();
        Graph::from_sorted_unchecked(self.n, edges)
    }
}

impl Iterator for Enumeration {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        loop {
            let depth = self.stack.len().checked_sub(1)?;
            if let Some(include) = self.stack[depth].applied.take() {
                self.undo(depth, include);
            }
            let tried = self.stack[depth].tried;
            if tried >= 2 {
                self.stack.pop();
                continue;
            }
            self.stack[depth].tried += 1;
            let include = tried == 1;
            if !self.apply(depth, include) {
                continue;
            }
            self.stack[depth].applied = Some(include);
            if depth + 1 == self.slots.len() {
                return Some(self.current());
            }
            self.stack.push(Frame::default());
        }
    }
}

/// Canonical relabelling of `g`: vertices are grouped by ascending degree and,
/// within those classes, ordered to minimise the graph6 adjacency bitstring.
///
/// Bits are produced column by column, so a partial ordering fixes a prefix
/// of the bitstring and branches whose prefix already exceeds the best are
/// cut. Exponential in the worst case; intended for `n <= 8`.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.order();
    let degrees = g.degrees();
    let mut by_degree: Vec<usize> = (0..n).collect();
    by_degree.sort_by_key(|&u| (degrees[u], u));
    let slot_degree: Vec<u32> = by_degree.iter().map(|&u| degrees[u]).collect();

    let mut search = CanonSearch {
        g,
        degrees: &degrees,
        slot_degree: &slot_degree,
        order: Vec::with_capacity(n),
        used: vec![false; n],
        bits: Vec::with_capacity(n * n.saturating_sub(1) / 2),
        best: None,
    };
    search.run();
    let (order, _) = search.best.expect("search visits at least one ordering");
    // order[p] is the original vertex placed at position p.
    let mut perm = vec![0; n];
    for (p, &u) in order.iter().enumerate() {
        perm[u] = p;
    }
    g.relabel(&perm)
}

/// graph6 string of [`canonical_form`].
pub fn canonical_graph6(g: &Graph) -> String {
    to_graph6(&canonical_form(g))
}

struct CanonSearch<'a> {
    g: &'a Graph,
    degrees: &'a [u32],
    slot_degree: &'a [u32],
    order: Vec<usize>,
    used: Vec<bool>,
    bits: Vec<bool>,
    best: Option<(Vec<usize>, Vec<bool>)>,
}

impl CanonSearch<'_> {
    fn run(&mut self) {
        let p = self.order.len();
        if p == self.g.order() {
            let better = match &self.best {
                None => true,
                Some((_, b)) => self.bits < *b,
            };
            if better {
                self.best = Some((self.order.clone(), self.bits.clone()));
            }
            return;
        }
        for u in 0..self.g.order() {
            if self.used[u] || self.degrees[u] != self.slot_degree[p] {
                continue;
            }
            let mark = self.bits.len();
            self.bits
                .extend(self.order.iter().map(|&w| self.g.has_edge(w, u)));
            let prune = match &self.best {
                Some((_, b)) => self.bits[..] > b[..self.bits.len()],
                None => false,
            };
            if !prune {
                self.used[u] = true;
                self.order.push(u);
                self.run();
                self.order.pop();
                self.used[u] = false;
            }
            self.bits.truncate(mark);
        }
    }
}

/// Per-pair kernel values over a window, so each graph costs a tally and a
/// handful of multiplications.
struct PairTable {
    lo: u32,
    width: usize,
    values: Vec<Value>,
    exact: bool,
}

impl PairTable {
    fn new(k: &Kernel, range: DegreeRange) -> Result<Self> {
        let width = (range.max() - range.min() + 1) as usize;
        let mut values = Vec::with_capacity(width * width);
        for a in range.min()..=range.max() {
            for b in range.min()..=range.max() {
                values.push(k.value(a, b)?);
            }
        }
        Ok(PairTable {
            lo: range.min(),
            width,
            values,
            exact: k.is_exact(),
        })
    }

    fn index(&self, g: &Graph) -> Value {
        if !self.exact {
            let sum = g
                .edges()
                .iter()
                .map(|&(u, v)| self.slot(g.degree(u), g.degree(v)).to_f64())
                .sum();
            return Value::Approx(sum);
        }
        let mut counts = vec![0usize; self.width * self.width];
        for &(u, v) in g.edges() {
            let (a, b) = (g.degree(u), g.degree(v));
            let (a, b) = (a.min(b), a.max(b));
            counts[(a - self.lo) as usize * self.width + (b - self.lo) as usize] += 1;
        }
        counts
            .iter()
            .zip(&self.values)
            .filter(|(&c, _)| c > 0)
            .fold(Value::zero(true), |acc, (&c, v)| acc.add(&v.scale(c)))
    }

    fn slot(&self, a: u32, b: u32) -> &Value {
        &self.values[(a - self.lo) as usize * self.width + (b - self.lo) as usize]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    /// The index lies on the wrong side of the bound.
    BoundViolated,
    /// The per-edge equality test and the numeric totals disagree.
    EqualityMismatch,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    pub graph6: String,
    pub value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub range: DegreeRange,
    pub kernel: String,
    pub direction: Direction,
    pub graphs_checked: u64,
    /// Smallest (min) or largest (max) index seen; absent when no graph qualifies.
    pub extreme_value: Option<Value>,
    pub bound_value: Value,
    pub attained: bool,
    /// Canonical graph6 encodings of the graphs reaching `extreme_value`.
    pub witnesses: Vec<String>,
    pub violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the sharp bound on every admissible graph of order `n`.
///
/// Besides the inequality itself, each graph's per-edge equality verdict is
/// compared with the numeric test `|F(G) - bound| <= 1e-9` (exact for rational
/// kernels); any disagreement is recorded as a violation too.
pub fn verify_bound(n: usize, range: DegreeRange, k: &Kernel, direction: Direction) -> Result<VerificationReport> {
    let graphs = enumerate(n, range)?;
    let result = optimal_pairs(k, range, direction)?;
    let table = PairTable::new(k, range)?;
    let bound = result.bound_for_order(n);

    let mut graphs_checked = 0u64;
    let mut extreme: Option<Value> = None;
    let mut extreme_graphs: Vec<Graph> = Vec::new();
    let mut violations = Vec::new();

    for g in graphs {
        graphs_checked += 1;
        let value = table.index(&g);
        let on_bound = value.approx_eq(&bound, VALUE_TOLERANCE);
        let beyond = match direction {
            Direction::Min => value.compare(&bound).is_lt(),
            Direction::Max => value.compare(&bound).is_gt(),
        };
        if beyond && !on_bound {
            violations.push(Violation {
                kind: ViolationKind::BoundViolated,
                graph6: canonical_graph6(&g),
                value: value.clone(),
            });
        }
        if non_optimal_edges(&g, &result).is_empty() != on_bound {
            violations.push(Violation {
                kind: ViolationKind::EqualityMismatch,
                graph6: canonical_graph6(&g),
                value: value.clone(),
            });
        }
        track_extreme(&mut extreme, &mut extreme_graphs, g, value, direction);
    }

    let attained = extreme
        .as_ref()
        .is_some_and(|e| e.approx_eq(&bound, VALUE_TOLERANCE));
    violations.sort_by(|a, b| (a.kind, &a.graph6).cmp(&(b.kind, &b.graph6)));
    violations.dedup_by(|a, b| a.kind == b.kind && a.graph6 == b.graph6);

    Ok(VerificationReport {
        n,
        range,
        kernel: k.name(),
        direction,
        graphs_checked,
        extreme_value: extreme,
        bound_value: bound,
        attained,
        witnesses: canonical_set(&extreme_graphs),
        violations,
    })
}

fn track_extreme(
    extreme: &mut Option<Value>,
    graphs: &mut Vec<Graph>,
    g: Graph,
    value: Value,
    direction: Direction,
) {
    match extreme {
        Some(best) if value.approx_eq(best, VALUE_TOLERANCE) => graphs.push(g),
        Some(best) => {
            let better = match direction {
                Direction::Min => value.compare(best).is_lt(),
                Direction::Max => value.compare(best).is_gt(),
            };
            if better {
                *best = value;
                graphs.clear();
                graphs.push(g);
            }
        }
        None => {
            *extreme = Some(value);
            graphs.push(g);
        }
    }
}

fn canonical_set(graphs: &[Graph]) -> Vec<String> {
    graphs
        .iter()
        .map(canonical_graph6)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

/// Minimisers of `R_alpha` at one exponent, compared with the family
/// predicted by the regime classification.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeScan {
    pub alpha: f64,
    pub regimes: Vec<Regime>,
    pub predicted_families: Vec<String>,
    pub min_value: Option<f64>,
    pub bound_value: f64,
    pub attained: bool,
    /// Canonical graph6 of every enumerated minimiser.
    pub minimisers: Vec<String>,
    pub minimiser_structures: Vec<Structure>,
    /// Canonical graph6 of every enumerated graph whose edges all carry a
    /// predicted pair. Away from a threshold that is the predicted family; on
    /// one it also holds mixtures of the two tied families.
    pub family_members: Vec<String>,
    /// Whether the minimisers are exactly the predicted family; `None` when no
    /// member of the family exists at this order.
    pub matches: Option<bool>,
}

fn edges_on_pairs(g: &Graph, pairs: &[(u32, u32)]) -> bool {
    g.edges().iter().all(|&(u, v)| {
        let (a, b) = (g.degree(u), g.degree(v));
        pairs.contains(&(a.min(b), a.max(b)))
    })
}

/// For each exponent, finds the enumerated minimisers of `R_alpha` on order
/// `n` and checks them against the predicted extremal family.
pub fn scan_regimes(n: usize, range: DegreeRange, alphas: &[f64]) -> Result<Vec<RegimeScan>> {
    let reports = alphas
        .iter()
        .map(|&a| classify(range, a))
        .collect::<Result<Vec<_>>>()?;
    let tables = alphas
        .iter()
        .map(|&a| PairTable::new(&Kernel::general_randic(a)?, range))
        .collect::<Result<Vec<_>>>()?;

    let mut extremes: Vec<Option<Value>> = vec![None; alphas.len()];
    let mut minimisers: Vec<Vec<Graph>> = vec![Vec::new(); alphas.len()];
    let mut members: Vec<BTreeSet<String>> = vec![BTreeSet::new(); alphas.len()];

    let predicted: Vec<_> = reports.iter().map(RegimeReport::predicted_min_pairs).collect();

    for g in enumerate(n, range)? {
        for i in 0..reports.len() {
            let value = tables[i].index(&g);
            if edges_on_pairs(&g, &predicted[i]) {
                members[i].insert(canonical_graph6(&g));
            }
            track_extreme(&mut extremes[i], &mut minimisers[i], g.clone(), value, Direction::Min);
        }
    }

    Ok(reports
        .iter()
        .enumerate()
        .map(|(i, report)| {
            let bound_value = report.lower_coefficient * n as f64;
            let min_value = extremes[i].as_ref().map(Value::to_f64);
            let canon = canonical_set(&minimisers[i]);
            let mut structures: Vec<Structure> = minimisers[i].iter().map(classify_structure).collect();
            structures.sort_by_key(|s| format!("{s:?}"));
            structures.dedup();
            let family_members: Vec<String> = members[i].iter().cloned().collect();
            let matches = (!family_members.is_empty()).then(|| canon == family_members);
            RegimeScan {
                alpha: report.alpha,
                regimes: report.minimising_regimes(),
                predicted_families: report.lower_extremal.clone(),
                min_value,
                bound_value,
                attained: min_value.is_some_and(|m| (m - bound_value).abs() <= VALUE_TOLERANCE),
                minimisers: canon,
                minimiser_structures: structures,
                family_members,
                matches,
            }
        })
        .collect())
}
