//! Anti-Rips complexes: points at distance at most r may not share a simplex,
//! so AR_r(P) is Ind of the graph joining such pairs.
//!
//! Coordinates are exact rationals and distances are compared squared, so the
//! boundary case d(p, q) = r is decided without rounding.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::homotopy::HomotopyType;
use crate::independence::ind;
use crate::label::Label;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Metric {
    Line,
    Euclidean,
    Grid,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::Line => "line",
            Metric::Euclidean => "euclidean",
            Metric::Grid => "grid",
        }
    }
}

impl FromStr for Metric {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "line" => Ok(Metric::Line),
            "euclidean" => Ok(Metric::Euclidean),
            "grid" => Ok(Metric::Grid),
            other => Err(Error::InvalidPoint(format!("unknown metric `{other}`"))),
        }
    }
}

/// Parses `-1.25`, `3`, `7/4` or `1e-3` into an exact rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let bad = || Error::InvalidPoint(format!("not a number: `{text}`"));
    let s = text.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if int.is_empty() && frac.is_empty()
        || !int.chars().all(|c| c.is_ascii_digit())
        || !frac.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let whole = BigInt::from_str(&format!("{int}{frac}0")).map_err(|_| bad())? / BigInt::from(10);
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(whole * ten.pow(scale as u32))
    } else {
        BigRational::new(whole, ten.pow((-scale) as u32))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

fn display_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// A finite set of distinct points under one of the built-in metrics.
#[derive(Clone, Debug)]
pub struct PointSet {
    metric: Metric,
    coords: Vec<Vec<BigRational>>,
    labels: Vec<Label>,
}

impl PointSet {
    /// Points given as coordinate strings. Line points are labelled by their
    /// text, others as `(x,y,…)`.
    pub fn new<P, S>(metric: Metric, points: P) -> Result<Self>
    where
        P: IntoIterator<Item = Vec<S>>,
        S: AsRef<str>,
    {
        let mut coords = Vec::new();
        let mut labels = Vec::new();
        let mut seen = BTreeSet::new();
        let mut dim = None;
        for raw in points {
            let raw: Vec<String> = raw.iter().map(|s| s.as_ref().trim().to_string()).collect();
            if raw.is_empty() {
                return Err(Error::InvalidPoint("point with no coordinates".into()));
            }
            if *dim.get_or_insert(raw.len()) != raw.len() {
                return Err(Error::InvalidPoint("points have different dimensions".into()));
            }
            let values: Vec<BigRational> = raw.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?;
            match metric {
                Metric::Line if raw.len() != 1 => {
                    return Err(Error::InvalidPoint("line points have one coordinate".into()))
                }
                Metric::Grid if values.iter().any(|v| !v.is_integer()) => {
                    return Err(Error::InvalidPoint(format!("grid point ({}) is not integral", raw.join(","))))
                }
                _ => {}
            }
            let label = if metric == Metric::Line { raw[0].clone() } else { format!("({})", raw.join(",")) };
            if !seen.insert(values.clone()) {
                return Err(Error::DuplicatePoint(label));
            }
            labels.push(Label::from(label));
            coords.push(values);
        }
        Ok(PointSet { metric, coords, labels })
    }

    pub fn line<S: AsRef<str>>(values: &[S]) -> Result<Self> {
        Self::new(Metric::Line, values.iter().map(|v| vec![v.as_ref().to_string()]))
    }

    pub fn grid(points: &[(i64, i64)]) -> Result<Self> {
        Self::new(Metric::Grid, points.iter().map(|(x, y)| vec![x.to_string(), y.to_string()]))
    }

    /// Reads `{"metric": "...", "points": [[...], ...]}`; coordinates may be
    /// strings or JSON numbers, and line points may be bare scalars.
    pub fn from_json(text: &str) -> Result<Self> {
        let v: Value = serde_json::from_str(text).map_err(|e| Error::InvalidPoint(e.to_string()))?;
        let metric: Metric = v
            .get("metric")
            .and_then(Value::as_str)
            .ok_or_else(|| Error::InvalidPoint("missing `metric`".into()))?
            .parse()?;
        let points = v
            .get("points")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::InvalidPoint("missing `points` array".into()))?;
        let coord = |c: &Value| -> Result<String> {
            match c {
                Value::String(s) => Ok(s.clone()),
                Value::Number(n) => Ok(n.to_string()),
                other => Err(Error::InvalidPoint(format!("bad coordinate {other}"))),
            }
        };
        let raw: Vec<Vec<String>> = points
            .iter()
            .map(|p| match p {
                Value::Array(cs) => cs.iter().map(coord).collect(),
                scalar => Ok(vec![coord(scalar)?]),
            })
            .collect::<Result<_>>()?;
        Self::new(metric, raw)
    }

    pub fn to_json(&self) -> Value {
        let points: Vec<Vec<String>> =
            self.coords.iter().map(|p| p.iter().map(display_rational).collect()).collect();
        json!({ "metric": self.metric.name(), "points": points })
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    fn dist2(&self, i: usize, j: usize) -> BigRational {
        self.coords[i]
            .iter()
            .zip(&self.coords[j])
            .map(|(a, b)| {
                let d = a - b;
                &d * &d
            })
            .fold(BigRational::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.labels.iter().map(Label::as_str).collect();
        write!(f, "{} points {{{}}}", self.metric.name(), names.join(", "))
    }
}

fn check_radius(r: &BigRational) -> Result<()> {
    if r.is_negative() {
        return Err(Error::InvalidParameter(format!("radius must be nonnegative, got {}", display_rational(r))));
    }
    Ok(())
}

/// Graph joining points at distance at most `r`.
pub fn ar_graph(p: &PointSet, r: &BigRational) -> Result<UndirectedGraph> {
    check_radius(r)?;
    graph_at_squared(p, &(r * r))
}

fn graph_at_squared(p: &PointSet, r2: &BigRational) -> Result<UndirectedGraph> {
    let n = p.len();
    let edges = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| p.dist2(i, j) <= *r2)
        .map(|(i, j)| (p.labels[i].clone(), p.labels[j].clone()));
    UndirectedGraph::new(p.labels.iter().cloned(), edges)
}

/// AR_r(P) = Ind of [`ar_graph`].
pub fn ar_complex(p: &PointSet, r: &BigRational) -> Result<SimplicialComplex> {
    ind(&ar_graph(p, r)?)
}

/// Homotopy type of AR_r(P) for P on the line, expanding at m = min P over the
/// points p with m < p ≤ m + r into susp AR_r({q > p + r}).
pub fn ar_line_homotopy(p: &PointSet, r: &BigRational) -> Result<HomotopyType> {
    if p.metric != Metric::Line {
        return Err(Error::WrongMetric { expected: "line" });
    }
    check_radius(r)?;
    let mut values: Vec<BigRational> = p.coords.iter().map(|c| c[0].clone()).collect();
    values.sort();
    // Every residual set is a suffix of the sorted values; memo[i] is the type of values[i..].
    let n = values.len();
    let mut memo: Vec<Option<HomotopyType>> = vec![None; n + 1];
    memo[n] = Some(HomotopyType::Empty);
    for start in (0..n).rev() {
        let m = &values[start];
        let reach = m + r;
        let mut terms = Vec::new();
        for q in &values[start + 1..] {
            if *q > reach {
                break;
            }
            let bound = q + r;
            let next = values.partition_point(|x| *x <= bound);
            terms.push(memo[next].as_ref().expect("suffix computed").susp());
        }
        memo[start] = Some(HomotopyType::wedge(&terms)?);
    }
    Ok(memo[0].take().expect("computed"))
}

/// ⌊(n − 9)/6⌋ for AR_1 of n points in the integer grid.
pub fn ar_grid_bound(p: &PointSet) -> Result<i64> {
    if p.metric != Metric::Grid || p.coords.first().is_some_and(|c| c.len() != 2) {
        return Err(Error::WrongMetric { expected: "grid" });
    }
    if p.is_empty() {
        return Err(Error::EmptyGraph);
    }
    Ok((p.len() as i64 - 9).div_euclid(6))
}

/// One constant piece of the sweep, valid on [r, next critical r).
#[derive(Clone, Debug)]
pub struct SweepEntry {
    pub r_squared: BigRational,
    pub complex: SimplicialComplex,
}

impl SweepEntry {
    /// r as an exact rational when r² is a rational square, else `sqrt(r²)`.
    pub fn r_display(&self) -> String {
        let (n, d) = (self.r_squared.numer(), self.r_squared.denom());
        let (sn, sd) = (n.sqrt(), d.sqrt());
        if &sn * &sn == *n && &sd * &sd == *d {
            display_rational(&BigRational::new(sn, sd))
        } else {
            format!("sqrt({})", display_rational(&self.r_squared))
        }
    }
}

/// The distinct complexes AR_r(P) for r from 0 upward, one per critical distance.
pub fn ar_sweep(p: &PointSet) -> Result<Vec<SweepEntry>> {
    let n = p.len();
    let mut critical: Vec<BigRational> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| p.dist2(i, j)).collect();
    critical.push(BigRational::zero());
    critical.sort();
    critical.dedup();
    critical
        .into_par_iter()
        .map(|r2| Ok(SweepEntry { complex: ind(&graph_at_squared(p, &r2)?)?, r_squared: r2 }))
        .collect()
}
