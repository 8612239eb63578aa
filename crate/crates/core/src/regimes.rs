//! Extremal behaviour of the generalised Randić index `R_alpha` over a degree
//! window `[delta, Delta]` with `delta < Delta`.
//!
//! For `f(a, b) = (ab)^alpha` the pair objective is `1 / g(a, b)` with
//! `g(x, y) = (x + y) / (xy)^(1 + alpha)`, so the lower bound is governed by
//! the maximum of `g` on the box, which always sits at one of the corners
//! `(Delta, Delta)`, `(delta, Delta)`, `(delta, delta)`. Writing
//! `c = delta / Delta`, the crossover exponents are
//!
//! ```text
//! t1 = log_c((1 + c) / (2c))     (Delta-regular  <-> biregular)
//! t2 = log_c(2 / (1 + c))        (biregular      <-> delta-regular)
//! ```
//!
//! with `-1 < t1 < -1/2 < t2 < 0` and `t1 + t2 = -1`.
//!
//! Erratum: the ratio is sometimes written `c = Delta / delta`. With that
//! convention the formulas put the thresholds in the wrong order (for `(1, 2)`
//! they give `t1 = -0.415 > t2 = -0.585`). Comparing `g(delta, Delta)` with the
//! two diagonal corners yields `c = delta / Delta`, which is what this module uses.

use std::fmt;
use std::io::Write;

use num_rational::Ratio;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::graph::DegreeRange;
use crate::value::{format_float, TIE_TOLERANCE};

/// `alpha` within this distance of a threshold is treated as on the boundary.
pub const BOUNDARY_TOLERANCE: f64 = 1e-12;

/// Which family minimises `R_alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Regime {
    /// Every vertex has the maximum degree.
    #[serde(rename = "DeltaRegular")]
    MaxDegreeRegular,
    /// `(delta, Delta)`-biregular.
    #[serde(rename = "Biregular")]
    Biregular,
    /// Every vertex has the minimum degree.
    #[serde(rename = "deltaRegular")]
    MinDegreeRegular,
}

impl Regime {
    pub fn label(self) -> &'static str {
        match self {
            Regime::MaxDegreeRegular => "DeltaRegular",
            Regime::Biregular => "Biregular",
            Regime::MinDegreeRegular => "deltaRegular",
        }
    }

    /// The optimal degree pair for this regime.
    pub fn corner(self, range: DegreeRange) -> (u32, u32) {
        match self {
            Regime::MaxDegreeRegular => (range.max(), range.max()),
            Regime::Biregular => (range.min(), range.max()),
            Regime::MinDegreeRegular => (range.min(), range.min()),
        }
    }

    fn family(self, range: DegreeRange) -> String {
        match self {
            Regime::MaxDegreeRegular => format!("{}-regular", range.max()),
            Regime::Biregular => format!("({},{})-biregular", range.min(), range.max()),
            Regime::MinDegreeRegular => format!("{}-regular", range.min()),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Boundary {
    None,
    T1,
    T2,
}

/// Thresholds for a ratio `c = delta / Delta` strictly inside `(0, 1)`.
pub fn thresholds_for_ratio(c: f64) -> Result<(f64, f64)> {
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::InvalidParameters(format!("ratio c must lie in (0, 1), got {c}")));
    }
    let ln_c = c.ln();
    let t1 = ((1.0 + c) / (2.0 * c)).ln() / ln_c;
    let t2 = (2.0 / (1.0 + c)).ln() / ln_c;
    Ok((t1, t2))
}

fn require_strict(range: DegreeRange) -> Result<()> {
    if range.min() == range.max() {
        Err(Error::DegenerateRange(range.min()))
    } else {
        Ok(())
    }
}

/// `(t1, t2)` for an integer window with `delta < Delta`.
pub fn thresholds(range: DegreeRange) -> Result<(f64, f64)> {
    require_strict(range)?;
    thresholds_for_ratio(f64::from(range.min()) / f64::from(range.max()))
}

/// Regime of `alpha` given thresholds. On a boundary the middle regime is
/// returned together with the boundary flag.
pub fn regime_at(t1: f64, t2: f64, alpha: f64) -> (Regime, Boundary) {
    if (alpha - t1).abs() <= BOUNDARY_TOLERANCE {
        (Regime::Biregular, Boundary::T1)
    } else if (alpha - t2).abs() <= BOUNDARY_TOLERANCE {
        (Regime::Biregular, Boundary::T2)
    } else if alpha < t1 {
        (Regime::MaxDegreeRegular, Boundary::None)
    } else if alpha < t2 {
        (Regime::Biregular, Boundary::None)
    } else {
        (Regime::MinDegreeRegular, Boundary::None)
    }
}

/// Every regime whose equality case applies at `(regime, boundary)`.
pub fn regimes_in_force(regime: Regime, boundary: Boundary) -> Vec<Regime> {
    match boundary {
        Boundary::None => vec![regime],
        Boundary::T1 => vec![Regime::MaxDegreeRegular, Regime::Biregular],
        Boundary::T2 => vec![Regime::Biregular, Regime::MinDegreeRegular],
    }
}

/// Which side of `alpha = -1/2` the upper bound falls on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpperRegime {
    MinDegreeRegular,
    ComponentwiseRegular,
    MaxDegreeRegular,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeReport {
    pub range: DegreeRange,
    pub alpha: f64,
    #[serde(serialize_with = "serialize_ratio")]
    pub c: Ratio<u32>,
    pub t1: f64,
    pub t2: f64,
    pub regime: Regime,
    pub boundary: Boundary,
    /// `R_alpha(G) >= lower_coefficient * |G|`.
    pub lower_coefficient: f64,
    /// `R_alpha(G) <= upper_coefficient * |G|`.
    pub upper_coefficient: f64,
    pub lower_extremal: Vec<String>,
    pub upper_regime: UpperRegime,
    pub upper_extremal: String,
}

fn serialize_ratio<S: Serializer>(r: &Ratio<u32>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", r.numer(), r.denom()))
}

impl RegimeReport {
    /// Regimes whose minimising family attains the lower bound.
    pub fn minimising_regimes(&self) -> Vec<Regime> {
        regimes_in_force(self.regime, self.boundary)
    }

    /// Degree pairs that minimise the pair objective, lexicographically.
    pub fn predicted_min_pairs(&self) -> Vec<(u32, u32)> {
        let mut pairs: Vec<_> = self
            .minimising_regimes()
            .into_iter()
            .map(|r| r.corner(self.range))
            .collect();
        pairs.sort_unstable();
        pairs
    }

    /// Degree pairs that maximise the pair objective. At `alpha = -1/2`
    /// every diagonal pair ties.
    pub fn predicted_max_pairs(&self) -> Vec<(u32, u32)> {
        let (lo, hi) = (self.range.min(), self.range.max());
        match self.upper_regime {
            UpperRegime::MinDegreeRegular => vec![(lo, lo)],
            UpperRegime::MaxDegreeRegular => vec![(hi, hi)],
            UpperRegime::ComponentwiseRegular => (lo..=hi).map(|d| (d, d)).collect(),
        }
    }
}

/// Classifies `alpha` for the window `range` and reports both bounds.
pub fn classify(range: DegreeRange, alpha: f64) -> Result<RegimeReport> {
    if !alpha.is_finite() {
        return Err(Error::InvalidAlpha(alpha));
    }
    let (t1, t2) = thresholds(range)?;
    let (regime, boundary) = regime_at(t1, t2, alpha);
    let (lo, hi) = (f64::from(range.min()), f64::from(range.max()));

    let lower_coefficient = match regime {
        Regime::MaxDegreeRegular => hi.powf(1.0 + 2.0 * alpha) / 2.0,
        Regime::Biregular => (lo * hi).powf(1.0 + alpha) / (lo + hi),
        Regime::MinDegreeRegular => lo.powf(1.0 + 2.0 * alpha) / 2.0,
    };
    let lower_extremal = regimes_in_force(regime, boundary)
        .into_iter()
        .map(|r| r.family(range))
        .collect();

    let (upper_regime, upper_coefficient, upper_extremal) = if (alpha + 0.5).abs() <= BOUNDARY_TOLERANCE {
        (UpperRegime::ComponentwiseRegular, 0.5, "every component regular".to_string())
    } else if alpha < -0.5 {
        (
            UpperRegime::MinDegreeRegular,
            lo.powf(1.0 + 2.0 * alpha) / 2.0,
            Regime::MinDegreeRegular.family(range),
        )
    } else {
        (
            UpperRegime::MaxDegreeRegular,
            hi.powf(1.0 + 2.0 * alpha) / 2.0,
            Regime::MaxDegreeRegular.family(range),
        )
    };

    Ok(RegimeReport {
        range,
        alpha,
        c: Ratio::new(range.min(), range.max()),
        t1,
        t2,
        regime,
        boundary,
        lower_coefficient,
        upper_coefficient,
        lower_extremal,
        upper_regime,
        upper_extremal,
    })
}

fn check_point(x: f64, y: f64) -> Result<()> {
    if x > 0.0 && y > 0.0 {
        Ok(())
    } else {
        Err(Error::NonPositiveCoordinate(x, y))
    }
}

/// `g(x, y) = (x + y) / (xy)^(1 + alpha)`.
pub fn g_eval(x: f64, y: f64, alpha: f64) -> Result<f64> {
    check_point(x, y)?;
    Ok((x + y) / (x * y).powf(1.0 + alpha))
}

/// Closed-form gradient of `g`:
/// `dg/dx = (-alpha x - (1 + alpha) y) / (x^(2 + alpha) y^(1 + alpha))`, and symmetrically.
pub fn g_gradient(x: f64, y: f64, alpha: f64) -> Result<(f64, f64)> {
    check_point(x, y)?;
    let partial = |u: f64, v: f64| {
        (-alpha * u - (1.0 + alpha) * v) / (u.powf(2.0 + alpha) * v.powf(1.0 + alpha))
    };
    Ok((partial(x, y), partial(y, x)))
}

/// `d^2 g / dx^2 = (alpha(1 + alpha) x + (1 + alpha)(2 + alpha) y) / (x^(3 + alpha) y^(1 + alpha))`.
pub fn g_second_x(x: f64, y: f64, alpha: f64) -> Result<f64> {
    check_point(x, y)?;
    Ok((alpha * (1.0 + alpha) * x + (1.0 + alpha) * (2.0 + alpha) * y)
        / (x.powf(3.0 + alpha) * y.powf(1.0 + alpha)))
}

/// A real box `[lo, hi]^2` with `0 < lo <= hi`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if lo > 0.0 && lo <= hi && hi.is_finite() {
            Ok(Interval { lo, hi })
        } else {
            Err(Error::InvalidParameters(format!("need 0 < lo <= hi, got [{lo}, {hi}]")))
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }
}

impl From<DegreeRange> for Interval {
    fn from(r: DegreeRange) -> Self {
        Interval {
            lo: f64::from(r.min()),
            hi: f64::from(r.max()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoxExtremum {
    pub value: f64,
    /// Corners attaining `value` within the tie tolerance, with `x <= y`.
    pub corners: Vec<(f64, f64)>,
}

fn corner_extremum(candidates: &[(f64, f64)], alpha: f64, maximise: bool) -> BoxExtremum {
    let mut scored: Vec<_> = candidates
        .iter()
        .map(|&(x, y)| ((x, y), (x + y) / (x * y).powf(1.0 + alpha)))
        .collect();
    scored.dedup_by(|a, b| a.0 == b.0);
    let value = scored
        .iter()
        .map(|&(_, v)| v)
        .reduce(if maximise { f64::max } else { f64::min })
        .expect("at least one corner");
    let corners = scored
        .iter()
        .filter(|&&(_, v)| (v - value).abs() <= TIE_TOLERANCE * value.abs().max(1.0))
        .map(|&(p, _)| p)
        .collect();
    BoxExtremum { value, corners }
}

/// Maximum of `g` on the box, taken over the corners `(lo, lo)`, `(lo, hi)`,
/// `(hi, hi)` where it is always attained.
pub fn g_box_max(region: impl Into<Interval>, alpha: f64) -> BoxExtremum {
    let Interval { lo, hi } = region.into();
    corner_extremum(&[(lo, lo), (lo, hi), (hi, hi)], alpha, true)
}

/// Minimum of `g` on the box. Away from `alpha = -1/2` it sits at `(lo, lo)`
/// (for `alpha < -1/2`) or `(hi, hi)`; at `-1/2` the whole diagonal ties.
pub fn g_box_min(region: impl Into<Interval>, alpha: f64) -> BoxExtremum {
    let Interval { lo, hi } = region.into();
    corner_extremum(&[(lo, lo), (hi, hi)], alpha, false)
}

/// Label of a point in the `(c, alpha)` plane.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RegionLabel {
    Interior(Regime),
    /// Exactly on the boundary between two regimes.
    Boundary(Regime, Regime),
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Interior(r) => write!(f, "{r}"),
            RegionLabel::Boundary(a, b) => write!(f, "{a}|{b}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DiagramRow {
    pub c: f64,
    pub alpha: f64,
    pub region: RegionLabel,
    pub t1: f64,
    pub t2: f64,
}

/// `lo, lo + step, ...` up to `hi` (inclusive, with a little slack for rounding).
pub fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>> {
    if step.is_nan() || step <= 0.0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(Error::InvalidParameters(format!(
            "need finite lo <= hi and step > 0, got [{lo}, {hi}] step {step}"
        )));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    Ok((0..count).map(|k| lo + k as f64 * step).collect())
}

/// Region labels on a `(c, alpha)` grid, ordered by `c` then `alpha`.
pub fn diagram_data(c_samples: &[f64], alpha_lo: f64, alpha_hi: f64, step: f64) -> Result<Vec<DiagramRow>> {
    let alphas = grid(alpha_lo, alpha_hi, step)?;
    let mut rows = Vec::with_capacity(c_samples.len() * alphas.len());
    for &c in c_samples {
        let (t1, t2) = thresholds_for_ratio(c)?;
        for &alpha in &alphas {
            let region = match regime_at(t1, t2, alpha) {
                (r, Boundary::None) => RegionLabel::Interior(r),
                (_, Boundary::T1) => RegionLabel::Boundary(Regime::MaxDegreeRegular, Regime::Biregular),
                (_, Boundary::T2) => RegionLabel::Boundary(Regime::Biregular, Regime::MinDegreeRegular),
            };
            rows.push(DiagramRow {
                c,
                alpha,
                region,
                t1,
                t2,
            });
        }
    }
    Ok(rows)
}

/// Writes rows as CSV with header `c,alpha,regime,t1,t2`.
pub fn write_diagram_csv<W: Write>(rows: &[DiagramRow], out: W) -> Result<()> {
    let mut wtr = csv::Writer::from_writer(out);
    wtr.write_record(["c", "alpha", "regime", "t1", "t2"])?;
    for row in rows {
        wtr.write_record([
            format_float(row.c),
            format_float(row.alpha),
            row.region.to_string(),
            format_float(row.t1),
            format_float(row.t2),
        ])?;
    }
    wtr.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn range(a: u32, b: u32) -> DegreeRange {
        DegreeRange::new(a, b).unwrap()
    }

    #[test]
    fn thresholds_closed_forms() {
        let (t1, t2) = thresholds(range(1, 2)).unwrap();
        assert!((t1 - (1.0 - 3f64.log2())).abs() < 1e-12);
        assert!((t2 - 0.75f64.log2()).abs() < 1e-12);
        assert_eq!(thresholds(range(2, 4)).unwrap(), (t1, t2));
        let (t1, t2) = thresholds(range(1, 4)).unwrap();
        assert!((t1 + 0.6610).abs() < 1e-4 && (t2 + 0.3390).abs() < 1e-4);
        assert!((t1 + t2 + 1.0).abs() < 1e-12);
        assert!(matches!(thresholds(range(3, 3)), Err(Error::DegenerateRange(3))));
    }

    #[test]
    fn classify_examples() {
        let r = classify(range(1, 2), -1.0).unwrap();
        assert_eq!((r.regime, r.boundary), (Regime::MaxDegreeRegular, Boundary::None));
        assert!((r.lower_coefficient - 0.25).abs() < 1e-15);
        assert_eq!(r.lower_extremal, vec!["2-regular"]);
        assert!((r.upper_coefficient - 0.5).abs() < 1e-15);

        let r = classify(range(1, 2), -0.5).unwrap();
        assert_eq!(r.regime, Regime::Biregular);
        assert!((r.lower_coefficient - 2f64.sqrt() / 3.0).abs() < 1e-15);
        assert_eq!(r.upper_regime, UpperRegime::ComponentwiseRegular);
        assert_eq!(r.upper_coefficient, 0.5);

        let r = classify(range(1, 2), 1.0).unwrap();
        assert_eq!(r.regime, Regime::MinDegreeRegular);
        assert!((r.lower_coefficient - 0.5).abs() < 1e-15);
        assert!((r.upper_coefficient - 4.0).abs() < 1e-12);
        assert_eq!(r.upper_extremal, "2-regular");
        assert_eq!(r.c, Ratio::new(1, 2));
    }

    #[test]
    fn boundaries_report_both_families() {
        let (t1, t2) = thresholds(range(1, 3)).unwrap();
        let r = classify(range(1, 3), t1).unwrap();
        assert_eq!(r.boundary, Boundary::T1);
        assert_eq!(r.predicted_min_pairs(), vec![(1, 3), (3, 3)]);
        assert_eq!(r.lower_extremal.len(), 2);
        let r = classify(range(1, 3), t2).unwrap();
        assert_eq!(r.boundary, Boundary::T2);
        assert_eq!(r.predicted_min_pairs(), vec![(1, 1), (1, 3)]);
        let bi = (3.0f64).powf(1.0 + t2) / 4.0;
        let reg = 1.0f64.powf(1.0 + 2.0 * t2) / 2.0;
        assert!((bi - reg).abs() <= 1e-9 * reg);
    }

    #[test]
    fn g_values() {
        for alpha in [-2.0, -0.5, 0.0, 3.0] {
            assert_eq!(g_eval(1.0, 1.0, alpha).unwrap(), 2.0);
        }
        assert!((g_eval(1.0, 2.0, -0.5).unwrap() - 3.0 / 2f64.sqrt()).abs() < 1e-12);
        assert!(g_eval(0.0, 1.0, 0.0).is_err());
        assert!(g_gradient(1.0, -1.0, 0.0).is_err());
        let (gx, gy) = g_gradient(1.5, 3.0, -0.7).unwrap();
        let (hx, hy) = g_gradient(3.0, 1.5, -0.7).unwrap();
        assert_eq!((gx, gy), (hy, hx));
    }

    #[test]
    fn box_max_examples() {
        let m = g_box_max(range(1, 2), -0.75);
        assert_eq!(m.corners, vec![(2.0, 2.0)]);
        let m = g_box_max(range(1, 2), -0.5);
        assert_eq!(m.corners, vec![(1.0, 2.0)]);
        let m = g_box_max(range(1, 2), 0.0);
        assert_eq!(m.corners, vec![(1.0, 1.0)]);
        assert_eq!(m.value, 2.0);
        let m = g_box_min(range(1, 2), -0.5);
        assert_eq!(m.corners.len(), 2);
    }

    #[test]
    fn diagram_rows() {
        let rows = diagram_data(&[0.5], -0.6, -0.4, 0.05).unwrap();
        assert_eq!(rows.len(), 5);
        assert!((rows[0].t1 + 0.585).abs() < 1e-3 && (rows[0].t2 + 0.415).abs() < 1e-3);
        let labels: Vec<_> = rows.iter().map(|r| r.region.to_string()).collect();
        assert_eq!(labels, ["DeltaRegular", "Biregular", "Biregular", "Biregular", "deltaRegular"]);

        let (t1, _) = thresholds_for_ratio(0.5).unwrap();
        let rows = diagram_data(&[0.5], t1, t1, 1.0).unwrap();
        assert_eq!(rows[0].region.to_string(), "DeltaRegular|Biregular");

        let mut buf = Vec::new();
        write_diagram_csv(&diagram_data(&[0.25], 0.0, 0.0, 1.0).unwrap(), &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("c,alpha,regime,t1,t2\n0.25,0,deltaRegular,"));

        assert!(diagram_data(&[1.0], 0.0, 1.0, 0.1).is_err());
        assert!(diagram_data(&[0.5], 0.0, 1.0, 0.0).is_err());
    }
}
