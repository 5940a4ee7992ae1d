use std::fmt;
use std::io::Write;
use std::str::FromStr;

use rayon::prelude::*;

use super::{gaussian_upper_tail, hoeffding_bound, s_to_t};
use crate::envelope::{quantile_finite, universal_envelope, EnvelopeResult, QuantileResult, TruncationPolicy};
use crate::error::{Error, Result};
use crate::exactnum::{parse_threshold, Dyadic, Ratio, Threshold};

/// Thresholds of the reference comparison grid.
pub const DEFAULT_GRID: [&str; 7] = ["1", "3/2", "sqrt(3)", "2", "sqrt(5)", "sqrt(6)", "3"];

pub fn default_grid() -> Vec<Threshold> {
    DEFAULT_GRID.iter().map(|s| parse_threshold(s).expect("grid literal")).collect()
}

/// Digits of the fixed-width decimal columns.
const TABLE_DIGITS: usize = 6;

#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub t: Threshold,
    pub envelope: EnvelopeResult,
    pub hoeffding: f64,
    /// Exact envelope over the Hoeffding bound.
    pub ratio: f64,
    pub gaussian_tail: f64,
}

impl ComparisonRow {
    pub fn k_star(&self) -> u32 {
        self.envelope.k_star()
    }

    pub fn exact(&self) -> &Dyadic {
        &self.envelope.value
    }

    pub fn exact_decimal(&self) -> String {
        self.exact().to_decimal(TABLE_DIGITS)
    }
}

/// Universal envelope against the classical bounds, one row per `t > 0`.
pub fn comparison_table(ts: &[Threshold], policy: &TruncationPolicy) -> Result<Vec<ComparisonRow>> {
    ts.par_iter()
        .map(|t| {
            let envelope = universal_envelope(t, policy)?;
            let x = t.to_f64();
            let hoeffding = hoeffding_bound(x);
            Ok(ComparisonRow {
                t: t.clone(),
                ratio: envelope.value.to_f64() / hoeffding,
                envelope,
                hoeffding,
                gaussian_tail: gaussian_upper_tail(x),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalRow {
    pub n: u32,
    pub alpha: Ratio,
    /// `None` when the envelope drops to `alpha` only strictly right of its
    /// last exceedance (the infimum is not attained).
    pub quantile: Option<QuantileResult>,
    /// `None` when `s_crit² ≥ n`, where `T` is undefined.
    pub t_crit: Option<f64>,
}

impl CriticalRow {
    pub fn s_crit(&self) -> Option<&Threshold> {
        self.quantile.as_ref().map(|q| &q.t_star)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CriticalTable {
    /// In input order, `n` outer and `alpha` inner.
    pub rows: Vec<CriticalRow>,
}

impl CriticalTable {
    pub fn get(&self, n: u32, alpha: &Ratio) -> Option<&CriticalRow> {
        self.rows.iter().find(|r| r.n == n && r.alpha == *alpha)
    }
}

/// Critical values `s_crit = min{s : M_n(s) ≤ α}` and their `T` images.
pub fn critical_table(ns: &[u32], alphas: &[Ratio]) -> Result<CriticalTable> {
    let cells: Vec<(u32, &Ratio)> = ns.iter().flat_map(|&n| alphas.iter().map(move |a| (n, a))).collect();
    let rows = cells
        .into_par_iter()
        .map(|(n, alpha)| {
            let quantile = match quantile_finite(n, alpha) {
                Ok(q) => Some(q),
                Err(Error::NotAttained(_)) => None,
                Err(e) => return Err(e),
            };
            let t_crit = match &quantile {
                Some(q) if n >= 2 && *q.t_star.square() < Ratio::from_integer(n) => Some(s_to_t(q.t_star.to_f64(), n)?),
                _ => None,
            };
            Ok(CriticalRow { n, alpha: alpha.clone(), quantile, t_crit })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CriticalTable { rows })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    /// The universal envelope.
    Envelope,
    /// Envelope over `exp(−t²/2)`.
    Ratio,
    /// Smallest maximising support size.
    Kstar,
}

impl Figure {
    pub fn as_str(&self) -> &'static str {
        match self {
            Figure::Envelope => "envelope",
            Figure::Ratio => "ratio",
            Figure::Kstar => "kstar",
        }
    }
}

impl fmt::Display for Figure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "envelope" => Ok(Figure::Envelope),
            "ratio" => Ok(Figure::Ratio),
            "kstar" => Ok(Figure::Kstar),
            _ => Err(Error::parse(format!("unknown figure {s:?}; expected envelope, ratio or kstar"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FigurePoint {
    pub t: Threshold,
    pub y: f64,
    /// Exact ordinate where one exists (envelope values).
    pub exact: Option<Dyadic>,
}

impl FigurePoint {
    /// Ordinate as printed: exact decimals, integers, or six digits.
    pub fn y_display(&self, which: Figure) -> String {
        match (which, &self.exact) {
            (Figure::Envelope, Some(d)) => d.to_exact_decimal(),
            (Figure::Kstar, _) => format!("{}", self.y as u64),
            _ => format!("{:.*}", TABLE_DIGITS, self.y),
        }
    }
}

/// Plot points over the reference grid.
pub fn figure_data(which: Figure, policy: &TruncationPolicy) -> Result<Vec<FigurePoint>> {
    let rows = comparison_table(&default_grid(), policy)?;
    Ok(rows
        .into_iter()
        .map(|r| {
            let (y, exact) = match which {
                Figure::Envelope => (r.exact().to_f64(), Some(r.exact().clone())),
                Figure::Ratio => (r.ratio, None),
                Figure::Kstar => (f64::from(r.k_star()), None),
            };
            FigurePoint { t: r.t, y, exact }
        })
        .collect())
}

fn io_error(e: csv::Error) -> std::io::Error {
    std::io::Error::other(e)
}

/// `t,k_star,exact,exact_decimal,hoeffding,ratio,gaussian`.
pub fn write_comparison_csv<W: Write>(out: W, rows: &[ComparisonRow]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "k_star", "exact", "exact_decimal", "hoeffding", "ratio", "gaussian"])
        .map_err(io_error)?;
    for r in rows {
        w.write_record([
            r.t.to_string(),
            r.k_star().to_string(),
            r.exact().to_string(),
            r.exact_decimal(),
            format!("{:.6}", r.hoeffding),
            format!("{:.6}", r.ratio),
            format!("{:.6}", r.gaussian_tail),
        ])
        .map_err(io_error)?;
    }
    w.flush()
}

/// `n,alpha,s_crit,t_crit,value_at,value_at_decimal,left_limit,left_limit_decimal`.
pub fn write_critical_csv<W: Write>(out: W, table: &CriticalTable) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record([
        "n",
        "alpha",
        "s_crit",
        "t_crit",
        "value_at",
        "value_at_decimal",
        "left_limit",
        "left_limit_decimal",
    ])
    .map_err(io_error)?;
    for r in &table.rows {
        let record = match &r.quantile {
            Some(q) => [
                r.n.to_string(),
                r.alpha.to_string(),
                q.t_star.to_string(),
                r.t_crit.map_or_else(|| "unattainable".to_string(), |t| format!("{t:.6}")),
                q.value_at.to_string(),
                q.value_at.to_decimal(TABLE_DIGITS),
                q.left_limit.to_string(),
                q.left_limit.to_decimal(TABLE_DIGITS),
            ],
            None => {
                let none = || String::new();
                [r.n.to_string(), r.alpha.to_string(), "not_attained".into(), "unattainable".into(), none(), none(), none(), none()]
            }
        };
        w.write_record(record).map_err(io_error)?;
    }
    w.flush()
}

/// `t,t_decimal,y`.
pub fn write_figure_csv<W: Write>(out: W, which: Figure, points: &[FigurePoint]) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["t", "t_decimal", which.as_str()]).map_err(io_error)?;
    for p in points {
        w.write_record([p.t.to_string(), format!("{:.3}", p.t.to_f64()), p.y_display(which)])
            .map_err(io_error)?;
    }
    w.flush()
}
