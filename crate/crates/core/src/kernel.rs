//! Symmetric degree-pair kernels `f(a, b)` and the degree-based index
//! `F(G) = sum over edges uv of f(d(u), d(v))`.

use std::collections::BTreeMap;
use std::fmt;
use std::io::Read;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DegreeRange, Graph};
use crate::value::Value;

/// Largest |alpha| for which integer exponents are evaluated exactly.
const EXACT_EXPONENT_LIMIT: f64 = 64.0;

/// A finite real exponent for the generalised Randić kernel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Alpha(f64);

impl Alpha {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidAlpha(value))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    fn exact_exponent(self) -> Option<i32> {
        (self.0.fract() == 0.0 && self.0.abs() <= EXACT_EXPONENT_LIMIT).then_some(self.0 as i32)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    RationalExact,
    Floating,
}

/// A kernel given by a finite table over a square degree window.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    lo: u32,
    hi: u32,
    entries: Vec<Value>,
}

impl Table {
    /// Tabulates `f` over `[lo, hi]^2`. `f` is only queried for `a <= b`.
    pub fn from_fn(lo: u32, hi: u32, f: impl Fn(u32, u32) -> Value) -> Result<Self> {
        DegreeRange::new(lo, hi)?;
        let w = (hi - lo + 1) as usize;
        let mut entries = vec![Value::Approx(0.0); w * w];
        for a in lo..=hi {
            for b in a..=hi {
                let v = f(a, b);
                entries[(a - lo) as usize * w + (b - lo) as usize] = v.clone();
                entries[(b - lo) as usize * w + (a - lo) as usize] = v;
            }
        }
        let table = Table { lo, hi, entries };
        Ok(table.harmonised())
    }

    /// Reads a CSV with header `a,b,value`. Each unordered pair in the
    /// covered square must appear; when both orders appear they must agree.
    /// Values written as integers, decimals or `p/q` are kept exact.
    pub fn from_csv<R: Read>(reader: R) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
        let headers = rdr.headers()?.clone();
        if headers.iter().collect::<Vec<_>>() != ["a", "b", "value"] {
            return Err(Error::InvalidTable(format!(
                "expected header a,b,value, found {}",
                headers.iter().collect::<Vec<_>>().join(",")
            )));
        }
        let mut cells: BTreeMap<(u32, u32), Value> = BTreeMap::new();
        for (row, record) in rdr.records().enumerate() {
            let record = record?;
            let line = row + 2;
            let degree = |i: usize| -> Result<u32> {
                let d: u32 = record[i].parse().map_err(|_| {
                    Error::InvalidTable(format!("line {line}: bad degree {:?}", &record[i]))
                })?;
                if d == 0 {
                    return Err(Error::InvalidTable(format!("line {line}: degrees start at 1")));
                }
                Ok(d)
            };
            let (a, b) = (degree(0)?, degree(1)?);
            let value = parse_value(&record[2]).ok_or_else(|| {
                Error::InvalidTable(format!("line {line}: bad value {:?}", &record[2]))
            })?;
            if cells.insert((a, b), value).is_some() {
                return Err(Error::InvalidTable(format!("line {line}: repeated entry ({a},{b})")));
            }
        }
        let (Some(lo), Some(hi)) = (
            cells.keys().map(|&(a, b)| a.min(b)).min(),
            cells.keys().map(|&(a, b)| a.max(b)).max(),
        ) else {
            return Err(Error::InvalidTable("table is empty".into()));
        };
        for a in lo..=hi {
            for b in a..=hi {
                match (cells.get(&(a, b)), cells.get(&(b, a))) {
                    (None, None) => {
                        return Err(Error::InvalidTable(format!("missing entry ({a},{b})")))
                    }
                    (Some(x), Some(y)) if !x.ties(y) => {
                        return Err(Error::InvalidTable(format!(
                            "asymmetric entries f({a},{b}) = {x}, f({b},{a}) = {y}"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Table::from_fn(lo, hi, |a, b| {
            cells.get(&(a, b)).or_else(|| cells.get(&(b, a))).cloned().expect("checked above")
        })
    }

    pub fn range(&self) -> DegreeRange {
        DegreeRange::new(self.lo, self.hi).expect("validated on construction")
    }

    pub fn is_exact(&self) -> bool {
        self.entries.iter().all(Value::is_exact)
    }

    fn get(&self, a: u32, b: u32) -> Option<&Value> {
        if a < self.lo || b < self.lo || a > self.hi || b > self.hi {
            return None;
        }
        let w = (self.hi - self.lo + 1) as usize;
        self.entries.get((a - self.lo) as usize * w + (b - self.lo) as usize)
    }

    // A table mixing exact and floating entries is treated as floating.
    fn harmonised(mut self) -> Self {
        if !self.is_exact() {
            for e in &mut self.entries {
                *e = Value::Approx(e.to_f64());
            }
        }
        self
    }
}

fn parse_value(s: &str) -> Option<Value> {
    if let Some(r) = parse_rational(s) {
        return Some(Value::Exact(r));
    }
    s.parse::<f64>().ok().filter(|x| x.is_finite()).map(Value::Approx)
}

/// Integers, `p/q` and plain decimals (no exponent).
fn parse_rational(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).ok()?;
        let q = BigInt::from_str(q.trim()).ok()?;
        return (q != BigInt::from(0)).then(|| BigRational::new(p, q));
    }
    let (sign, body) = match s.strip_prefix('-') {
        Some(rest) => (-1, rest),
        None => (1, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits_ok = |t: &str| t.bytes().all(|b| b.is_ascii_digit());
    if int.is_empty() && frac.is_empty() || !digits_ok(int) || !digits_ok(frac) {
        return None;
    }
    let numer = BigInt::from_str(&format!("{int}{frac}")).ok()?;
    let denom = BigInt::from(10u32).pow(frac.len() as u32);
    Some(BigRational::new(numer * sign, denom))
}

/// A user-supplied floating kernel. Symmetry is the caller's promise; see
/// [`Kernel::is_symmetric_on`].
#[derive(Clone)]
pub struct CustomKernel {
    name: String,
    f: Arc<dyn Fn(u32, u32) -> f64 + Send + Sync>,
}

impl fmt::Debug for CustomKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CustomKernel").field("name", &self.name).finish_non_exhaustive()
    }
}

/// The symmetric function `f(a, b)` defining a degree-based index.
#[derive(Clone, Debug)]
pub enum Kernel {
    /// `(ab)^(-1/2)`
    Randic,
    /// `(ab)^alpha`
    GeneralRandic(Alpha),
    /// `a + b`
    ZagrebFirst,
    /// `a * b`
    ZagrebSecond,
    Tabulated(Table),
    Custom(CustomKernel),
}

impl Kernel {
    pub fn general_randic(alpha: f64) -> Result<Self> {
        Ok(Kernel::GeneralRandic(Alpha::new(alpha)?))
    }

    pub fn custom(name: impl Into<String>, f: impl Fn(u32, u32) -> f64 + Send + Sync + 'static) -> Self {
        Kernel::Custom(CustomKernel {
            name: name.into(),
            f: Arc::new(f),
        })
    }

    /// Looks up a built-in kernel by name. `general_randic` needs `alpha`.
    pub fn from_name(name: &str, alpha: Option<f64>) -> Result<Self> {
        let key = name.to_ascii_lowercase().replace('-', "_");
        let kernel = match key.as_str() {
            "randic" => Kernel::Randic,
            "general_randic" | "generalised_randic" | "generalized_randic" => {
                let alpha = alpha.ok_or_else(|| {
                    Error::InvalidParameters("general_randic needs an exponent alpha".into())
                })?;
                return Kernel::general_randic(alpha);
            }
            "zagreb_first" | "m1" => Kernel::ZagrebFirst,
            "zagreb_second" | "m2" => Kernel::ZagrebSecond,
            _ => return Err(Error::UnknownKernel(name.to_string())),
        };
        if alpha.is_some() {
            return Err(Error::InvalidParameters(format!("kernel {key} takes no exponent")));
        }
        Ok(kernel)
    }

    pub fn name(&self) -> String {
        match self {
            Kernel::Randic => "randic".into(),
            Kernel::GeneralRandic(a) => format!("general_randic({})", a.value()),
            Kernel::ZagrebFirst => "zagreb_first".into(),
            Kernel::ZagrebSecond => "zagreb_second".into(),
            Kernel::Tabulated(_) => "tabulated".into(),
            Kernel::Custom(c) => c.name.clone(),
        }
    }

    /// Zagreb kernels, integer exponents up to 64 in magnitude and fully
    /// rational tables are evaluated in exact arithmetic.
    pub fn exactness(&self) -> Exactness {
        let exact = match self {
            Kernel::ZagrebFirst | Kernel::ZagrebSecond => true,
            Kernel::GeneralRandic(a) => a.exact_exponent().is_some(),
            Kernel::Tabulated(t) => t.is_exact(),
            Kernel::Randic | Kernel::Custom(_) => false,
        };
        if exact {
            Exactness::RationalExact
        } else {
            Exactness::Floating
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exactness() == Exactness::RationalExact
    }

    pub fn accepts_degree(&self, d: u32) -> bool {
        match self {
            Kernel::Tabulated(t) => t.range().contains(d),
            _ => d >= 1,
        }
    }

    pub fn check_degree(&self, d: u32) -> Result<()> {
        if self.accepts_degree(d) {
            Ok(())
        } else {
            Err(Error::KernelDomain {
                kernel: self.name(),
                degree: d,
            })
        }
    }

    /// Floating evaluation; NaN outside the kernel's domain.
    pub fn eval(&self, a: u32, b: u32) -> f64 {
        let (x, y) = (f64::from(a), f64::from(b));
        match self {
            Kernel::Randic => 1.0 / (x * y).sqrt(),
            Kernel::GeneralRandic(alpha) => (x * y).powf(alpha.value()),
            Kernel::ZagrebFirst => x + y,
            Kernel::ZagrebSecond => x * y,
            Kernel::Tabulated(t) => t.get(a, b).map_or(f64::NAN, Value::to_f64),
            Kernel::Custom(c) => (c.f)(a, b),
        }
    }

    /// Exact evaluation for rational-exact kernels.
    pub fn eval_exact(&self, a: u32, b: u32) -> Option<BigRational> {
        let int = |v: u64| BigRational::from_integer(BigInt::from(v));
        match self {
            Kernel::ZagrebFirst => Some(int(u64::from(a) + u64::from(b))),
            Kernel::ZagrebSecond => Some(int(u64::from(a) * u64::from(b))),
            Kernel::GeneralRandic(alpha) => {
                let e = alpha.exact_exponent()?;
                let base = BigInt::from(u64::from(a) * u64::from(b));
                let p = base.pow(e.unsigned_abs());
                let r = BigRational::from_integer(p);
                Some(if e >= 0 { r } else { BigRational::one() / r })
            }
            Kernel::Tabulated(t) => t.get(a, b)?.as_exact().cloned(),
            Kernel::Randic | Kernel::Custom(_) => None,
        }
    }

    /// `f(a, b)` as a [`Value`], exact whenever the kernel is.
    pub fn value(&self, a: u32, b: u32) -> Result<Value> {
        self.check_degree(a)?;
        self.check_degree(b)?;
        Ok(match self.eval_exact(a, b) {
            Some(r) => Value::Exact(r),
            None => Value::Approx(self.eval(a, b)),
        })
    }

    /// Sweeps `range^2` checking `f(a, b) = f(b, a)` and finiteness.
    pub fn is_symmetric_on(&self, range: DegreeRange) -> bool {
        (range.min()..=range.max()).all(|a| {
            (range.min()..=range.max()).all(|b| {
                let (x, y) = (self.eval(a, b), self.eval(b, a));
                x.is_finite() && x == y
            })
        })
    }
}

/// Evaluates the degree-based index of `g` under `k`.
///
/// Edges are tallied by sorted degree pair first, so each distinct pair is
/// evaluated once; exact kernels sum in rational arithmetic. The edgeless
/// graph has index 0.
pub fn index_value(g: &Graph, k: &Kernel) -> Result<Value> {
    let degrees = g.degrees();
    for &d in degrees.iter().filter(|&&d| d > 0) {
        k.check_degree(d)?;
    }
    let mut tally: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for &(u, v) in g.edges() {
        let (a, b) = (degrees[u], degrees[v]);
        *tally.entry((a.min(b), a.max(b))).or_default() += 1;
    }
    let mut total = Value::zero(k.is_exact());
    for ((a, b), count) in tally {
        total = total.add(&k.value(a, b)?.scale(count));
    }
    Ok(total)
}

/// Floating-point index, skipping domain checks. Used on hot paths where the
/// degrees are already known to be admissible.
pub fn index_value_f64(g: &Graph, k: &Kernel) -> f64 {
    g.edges()
        .iter()
        .map(|&(u, v)| k.eval(g.degree(u), g.degree(v)))
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    fn k(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j)))).unwrap()
    }

    #[test]
    fn builtin_values() {
        assert_eq!(Kernel::Randic.eval(1, 4), 0.5);
        assert_eq!(Kernel::general_randic(1.0).unwrap().value(2, 3).unwrap(), Value::from_integer(6));
        assert_eq!(Kernel::ZagrebFirst.value(3, 5).unwrap(), Value::from_integer(8));
        assert_eq!(Kernel::ZagrebSecond.value(3, 5).unwrap(), Value::from_integer(15));
        let zero = Kernel::general_randic(0.0).unwrap();
        for a in 1..10 {
            for b in 1..10 {
                assert_eq!(zero.value(a, b).unwrap(), Value::from_integer(1));
            }
        }
        assert_eq!(
            Kernel::general_randic(-1.0).unwrap().value(2, 3).unwrap(),
            Value::Exact(r(1, 6))
        );
    }

    #[test]
    fn exactness_classes() {
        assert!(!Kernel::Randic.is_exact());
        assert!(Kernel::general_randic(2.0).unwrap().is_exact());
        assert!(!Kernel::general_randic(-0.5).unwrap().is_exact());
        assert!(!Kernel::general_randic(100.0).unwrap().is_exact());
        assert!(Kernel::ZagrebFirst.is_exact());
    }

    #[test]
    fn kernel_names() {
        assert!(matches!(Kernel::from_name("randic", None), Ok(Kernel::Randic)));
        assert!(matches!(Kernel::from_name("zagreb-second", None), Ok(Kernel::ZagrebSecond)));
        assert!(matches!(
            Kernel::from_name("general_randic", Some(-0.5)),
            Ok(Kernel::GeneralRandic(_))
        ));
        assert!(Kernel::from_name("general_randic", None).is_err());
        assert!(matches!(Kernel::from_name("wiener", None), Err(Error::UnknownKernel(_))));
        assert!(Kernel::general_randic(f64::NAN).is_err());
    }

    #[test]
    fn general_randic_matches_randic() {
        let g = Kernel::general_randic(-0.5).unwrap();
        for a in 1..=16 {
            for b in 1..=16 {
                assert!((g.eval(a, b) - Kernel::Randic.eval(a, b)).abs() <= 1e-15);
            }
        }
    }

    #[test]
    fn index_examples() {
        let star = k(1, 3);
        let v = index_value(&star, &Kernel::Randic).unwrap().to_f64();
        assert!((v - 3f64.sqrt()).abs() < 1e-12);

        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!((index_value(&k4, &Kernel::Randic).unwrap().to_f64() - 2.0).abs() < 1e-12);

        assert_eq!(
            index_value(&k(2, 3), &Kernel::ZagrebSecond).unwrap(),
            Value::from_integer(36)
        );
        assert_eq!(
            index_value(&Graph::empty(3), &Kernel::Randic).unwrap(),
            Value::Approx(0.0)
        );
    }

    #[test]
    fn tabulated_from_csv() {
        let csv = "a,b,value\n1,1,1/2\n1,2,0.25\n2,2,3\n";
        let t = Table::from_csv(csv.as_bytes()).unwrap();
        assert!(t.is_exact());
        let k = Kernel::Tabulated(t);
        assert_eq!(k.value(2, 1).unwrap(), Value::Exact(r(1, 4)));
        let p3 = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(index_value(&p3, &k).unwrap(), Value::Exact(r(1, 2)));
        let k4 = Graph::from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(matches!(
            index_value(&k4, &k),
            Err(Error::KernelDomain { degree: 3, .. })
        ));
    }

    #[test]
    fn tabulated_rejects_bad_tables() {
        let asym = "a,b,value\n1,1,1\n1,2,2\n2,1,3\n2,2,1\n";
        assert!(matches!(Table::from_csv(asym.as_bytes()), Err(Error::InvalidTable(_))));
        let incomplete = "a,b,value\n1,1,1\n2,2,1\n";
        assert!(matches!(Table::from_csv(incomplete.as_bytes()), Err(Error::InvalidTable(_))));
        let header = "x,y,z\n1,1,1\n";
        assert!(matches!(Table::from_csv(header.as_bytes()), Err(Error::InvalidTable(_))));
        let float = "a,b,value\n1,1,1e-3\n";
        let t = Table::from_csv(float.as_bytes()).unwrap();
        assert!(!t.is_exact());
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(parse_rational("-1.25"), Some(r(-5, 4)));
        assert_eq!(parse_rational("3"), Some(r(3, 1)));
        assert_eq!(parse_rational("6/4"), Some(r(3, 2)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("."), None);
        assert_eq!(parse_rational("1e3"), None);
    }
}
