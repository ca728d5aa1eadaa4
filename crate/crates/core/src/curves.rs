//! Sampled curve tables for the discounting, growth and weight-profile
//! figures, with CSV and minimal SVG encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::knowledge::weight;
use crate::money::{discount_factor, discount_factor_exp_continuous, discount_factor_hyperbolic, fv_of_pv};
use crate::profiles::{
    exp_decay, exp_growth, gaussian_weight, mixture_weight, normal_density, ComponentProfile,
    GaussianProfile, ImpulseProfile, MixtureProfile, NormalDensity,
};
use crate::valuation::{Periods, Rate};

/// Evenly spaced sample points `start..=end`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub steps: usize,
}

impl Grid {
    pub fn new(start: f64, end: f64, steps: usize) -> Result<Self> {
        if !(start.is_finite() && end.is_finite()) || !(start < end) {
            return Err(Error::domain(format!("grid needs finite start < end, got {start}:{end}")));
        }
        if steps < 2 {
            return Err(Error::domain(format!("grid needs at least 2 steps, got {steps}")));
        }
        Ok(Grid { start, end, steps })
    }

    /// Parse `a:b:steps`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(Error::domain(format!("range must look like a:b:steps, got `{s}`")));
        }
        let num = |p: &str| {
            p.trim()
                .parse::<f64>()
                .map_err(|_| Error::domain(format!("bad number `{p}` in range `{s}`")))
        };
        let steps = parts[2]
            .trim()
            .parse::<usize>()
            .map_err(|_| Error::domain(format!("bad step count `{}` in range `{s}`", parts[2])))?;
        Grid::new(num(parts[0])?, num(parts[1])?, steps)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        let last = (self.steps - 1) as f64;
        (0..self.steps).map(move |j| {
            if j + 1 == self.steps {
                self.end
            } else {
                self.start + (self.end - self.start) * j as f64 / last
            }
        })
    }
}

/// Rows of `(t, series_1, ..., series_m)` under a header naming each column.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveTable {
    headers: Vec<String>,
    rows: Vec<Vec<f64>>,
}

impl CurveTable {
    /// Validates: first header is `t`, every row has one value per header,
    /// values are finite and `t` strictly increases.
    pub fn new(headers: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        if headers.first().map(String::as_str) != Some("t") || headers.len() < 2 {
            return Err(Error::domain("curve table needs a `t` column and at least one series"));
        }
        for (j, row) in rows.iter().enumerate() {
            if row.len() != headers.len() {
                return Err(Error::domain(format!(
                    "row {j} has {} values, expected {}",
                    row.len(),
                    headers.len()
                )));
            }
            if let Some(bad) = row.iter().position(|v| !v.is_finite()) {
                return Err(Error::domain(format!(
                    "non-finite value in column `{}` at t = {}",
                    headers[bad], row[0]
                )));
            }
            if j > 0 && !(rows[j - 1][0] < row[0]) {
                return Err(Error::domain(format!("t is not strictly increasing at row {j}")));
            }
        }
        Ok(CurveTable { headers, rows })
    }

    pub fn headers(&self) -> &[String] {
        &self.headers
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }

    /// CSV with the shortest decimal form that reads back to the same double.
    pub fn to_csv(&self) -> String {
        let mut out = self.headers.join(",");
        out.push('\n');
        for row in &self.rows {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                write!(out, "{v}").expect("writing to a String");
            }
            out.push('\n');
        }
        out
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut reader = csv::Reader::from_reader(text.as_bytes());
        let headers: Vec<String> = reader
            .headers()
            .map_err(|e| Error::domain(e.to_string()))?
            .iter()
            .map(str::to_owned)
            .collect();
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::domain(e.to_string()))?;
            let row = record
                .iter()
                .map(|f| f.parse::<f64>().map_err(|_| Error::domain(format!("bad value `{f}`"))))
                .collect::<Result<Vec<_>>>()?;
            rows.push(row);
        }
        CurveTable::new(headers, rows)
    }

    /// Polyline plot in a fixed 640x400 viewport.
    pub fn to_svg(&self, title: &str) -> String {
        const W: f64 = 640.0;
        const H: f64 = 400.0;
        const M: f64 = 40.0;
        const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

        let t0 = self.rows.first().map_or(0.0, |r| r[0]);
        let t1 = self.rows.last().map_or(1.0, |r| r[0]);
        let (mut lo, mut hi) = (0.0f64, f64::NEG_INFINITY);
        for row in &self.rows {
            for v in &row[1..] {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
        }
        if !(hi > lo) {
            hi = lo + 1.0;
        }
        let tx = |t: f64| M + (W - 2.0 * M) * (t - t0) / (t1 - t0).max(f64::MIN_POSITIVE);
        let ty = |y: f64| H - M - (H - 2.0 * M) * (y - lo) / (hi - lo);

        let mut svg = String::new();
        let _ = writeln!(
            svg,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
        );
        let _ = writeln!(svg, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="20" font-family="sans-serif" font-size="14" text-anchor="middle">{}</text>"#,
            W / 2.0,
            escape(title)
        );
        let _ = writeln!(
            svg,
            r##"<path d="M{M},{M} V{} H{}" fill="none" stroke="#444"/>"##,
            H - M,
            W - M
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10">{:.3}</text>"#,
            2.0,
            ty(hi) + 4.0,
            hi
        );
        let _ = writeln!(
            svg,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="10">{:.3}</text>"#,
            2.0,
            ty(lo),
            lo
        );
        for (s, name) in self.headers.iter().enumerate().skip(1) {
            let color = COLORS[(s - 1) % COLORS.len()];
            let points: Vec<String> = self
                .rows
                .iter()
                .map(|r| format!("{:.2},{:.2}", tx(r[0]), ty(r[s])))
                .collect();
            let _ = writeln!(
                svg,
                r#"<polyline fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
                points.join(" ")
            );
            let _ = writeln!(
                svg,
                r#"<text x="{}" y="{}" font-family="sans-serif" font-size="11" fill="{color}">{}</text>"#,
                W - M - 110.0,
                M + 14.0 * s as f64,
                escape(name)
            );
        }
        svg.push_str("</svg>\n");
        svg
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Descriptor of a time-to-weight function that can be sampled on a grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum WeightProfile {
    /// `(1 + i)^-t`
    Discount { rate: f64 },
    /// `(1 + i)^t`
    Compound { rate: f64 },
    /// `(1 + k)^t` with `k >= 0`
    Knowledge { rate: f64 },
    Hyperbolic { k: f64 },
    Exponential { k: f64 },
    ExpGrowth { x0: f64, k: f64 },
    ExpDecay { n0: f64, lambda: f64 },
    Gaussian(GaussianProfile),
    Normal(NormalDensity),
    Mixture(MixtureProfile),
    Impulse(ImpulseProfile),
}

impl WeightProfile {
    pub fn label(&self) -> &'static str {
        match self {
            WeightProfile::Discount { .. } => "discount",
            WeightProfile::Compound { .. } => "compound",
            WeightProfile::Knowledge { .. } => "knowledge",
            WeightProfile::Hyperbolic { .. } => "hyperbolic",
            WeightProfile::Exponential { .. } => "exponential",
            WeightProfile::ExpGrowth { .. } => "growth",
            WeightProfile::ExpDecay { .. } => "decay",
            WeightProfile::Gaussian(_) => "gaussian",
            WeightProfile::Normal(_) => "normal",
            WeightProfile::Mixture(_) => "mixture",
            WeightProfile::Impulse(ImpulseProfile::Nascent { .. }) => "impulse",
            WeightProfile::Impulse(ImpulseProfile::Response { .. }) => "response",
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        match self {
            WeightProfile::Discount { rate } => {
                Ok(discount_factor(Rate::interest(*rate)?, Periods::new(t)?).value())
            }
            WeightProfile::Compound { rate } => {
                Ok(fv_of_pv(1.0, Rate::interest(*rate)?, Periods::new(t)?))
            }
            WeightProfile::Knowledge { rate } => {
                Ok(weight(Rate::knowledge(*rate)?, Periods::new(t)?).value())
            }
            WeightProfile::Hyperbolic { k } => {
                Ok(discount_factor_hyperbolic(Rate::interest(*k)?, Periods::new(t)?)?.value())
            }
            WeightProfile::Exponential { k } => {
                Ok(discount_factor_exp_continuous(Rate::interest(*k)?, Periods::new(t)?)?.value())
            }
            WeightProfile::ExpGrowth { x0, k } => exp_growth(*x0, *k, t),
            WeightProfile::ExpDecay { n0, lambda } => exp_decay(*n0, *lambda, t),
            WeightProfile::Gaussian(g) => Ok(gaussian_weight(g, t)),
            WeightProfile::Normal(d) => Ok(normal_density(d, t)),
            WeightProfile::Mixture(m) => Ok(mixture_weight(m, t)),
            WeightProfile::Impulse(p) => p.eval(t),
        }
    }
}

/// A named series to sample.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Series {
    pub name: String,
    pub profile: WeightProfile,
}

/// Profile descriptors accepted on the command line: one profile or a list.
#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
pub enum ProfileSpec {
    One(WeightProfile),
    Many(Vec<WeightProfile>),
}

impl ProfileSpec {
    pub fn parse(json: &str) -> Result<Self> {
        serde_json::from_str(json).map_err(|e| Error::domain(format!("bad profile spec: {e}")))
    }

    /// Column names are the profile labels, numbered when a label repeats.
    pub fn into_series(self) -> Vec<Series> {
        let profiles = match self {
            ProfileSpec::One(p) => vec![p],
            ProfileSpec::Many(ps) => ps,
        };
        let mut seen: BTreeMap<&'static str, usize> = BTreeMap::new();
        for p in &profiles {
            *seen.entry(p.label()).or_default() += 1;
        }
        let mut counter: BTreeMap<&'static str, usize> = BTreeMap::new();
        profiles
            .into_iter()
            .map(|profile| {
                let label = profile.label();
                let name = if seen[label] > 1 {
                    let c = counter.entry(label).or_default();
                    *c += 1;
                    format!("{label}_{c}")
                } else {
                    label.to_owned()
                };
                Series { name, profile }
            })
            .collect()
    }
}

pub fn sample(series: &[Series], grid: &Grid) -> Result<CurveTable> {
    let mut headers = vec!["t".to_owned()];
    headers.extend(series.iter().map(|s| s.name.clone()));
    let rows = grid
        .points()
        .map(|t| {
            let mut row = Vec::with_capacity(series.len() + 1);
            row.push(t);
            for s in series {
                row.push(s.profile.eval(t)?);
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    CurveTable::new(headers, rows)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Figure {
    DiscountingCompounding = 1,
    DiscountFunctions = 2,
    GrowthDecay = 3,
    GaussianWeights = 4,
    MultiModalWeights = 5,
    Impulse = 6,
    ImpulseResponse = 7,
}

impl Figure {
    pub const ALL: [Figure; 7] = [
        Figure::DiscountingCompounding,
        Figure::DiscountFunctions,
        Figure::GrowthDecay,
        Figure::GaussianWeights,
        Figure::MultiModalWeights,
        Figure::Impulse,
        Figure::ImpulseResponse,
    ];

    pub fn from_id(id: u8) -> Result<Self> {
        Figure::ALL
            .get((id as usize).wrapping_sub(1))
            .copied()
            .ok_or_else(|| Error::domain(format!("figure must be 1..=7, got {id}")))
    }

    pub fn id(self) -> u8 {
        self as u8
    }

    pub fn title(self) -> &'static str {
        match self {
            Figure::DiscountingCompounding => "Time value of money: discounting and compounding",
            Figure::DiscountFunctions => "Discount functions: hyperbolic and exponential",
            Figure::GrowthDecay => "Exponential growth and decay",
            Figure::GaussianWeights => "Gaussian weight function",
            Figure::MultiModalWeights => "Multi-modal weight function",
            Figure::Impulse => "Impulse function",
            Figure::ImpulseResponse => "Impulse response with a jump at the shock",
        }
    }

    pub fn default_grid(self) -> Grid {
        match self {
            Figure::DiscountFunctions => Grid { start: 0.0, end: 50.0, steps: 501 },
            _ => Grid { start: 0.0, end: 30.0, steps: 301 },
        }
    }

    /// Named parameters and their default values.
    pub fn default_params(self) -> BTreeMap<&'static str, f64> {
        let pairs: &[(&'static str, f64)] = match self {
            Figure::DiscountingCompounding => &[("rate", 0.05)],
            Figure::DiscountFunctions => &[("k", 0.1)],
            Figure::GrowthDecay => &[("k", 0.1), ("lambda", 0.1), ("x0", 1.0), ("n0", 1.0)],
            Figure::GaussianWeights => &[("amplitude", 1.0), ("center", 15.0), ("width", 3.0)],
            Figure::MultiModalWeights => &[("center1", 10.0), ("center2", 20.0), ("width", 2.0)],
            Figure::Impulse => &[("center", 15.0), ("epsilon", 0.05)],
            Figure::ImpulseResponse => &[("shock_time", 10.0), ("lambda", 0.5)],
        };
        pairs.iter().copied().collect()
    }

    /// Defaults with `overrides` applied; unknown names are rejected.
    pub fn params(self, overrides: &[(String, f64)]) -> Result<BTreeMap<&'static str, f64>> {
        let mut params = self.default_params();
        for (name, value) in overrides {
            match params.get_mut(name.as_str()) {
                Some(slot) => *slot = *value,
                None => {
                    let known: Vec<&str> = params.keys().copied().collect();
                    return Err(Error::domain(format!(
                        "figure {} has no parameter `{name}` (known: {})",
                        self.id(),
                        known.join(", ")
                    )));
                }
            }
        }
        Ok(params)
    }

    pub fn series(self, overrides: &[(String, f64)]) -> Result<Vec<Series>> {
        let p = self.params(overrides)?;
        let named = |name: &str, profile| Series {
            name: name.to_owned(),
            profile,
        };
        Ok(match self {
            Figure::DiscountingCompounding => vec![
                named("discount", WeightProfile::Discount { rate: p["rate"] }),
                named("compound", WeightProfile::Compound { rate: p["rate"] }),
            ],
            Figure::DiscountFunctions => vec![
                named("hyperbolic", WeightProfile::Hyperbolic { k: p["k"] }),
                named("exponential", WeightProfile::Exponential { k: p["k"] }),
            ],
            Figure::GrowthDecay => vec![
                named("growth", WeightProfile::ExpGrowth { x0: p["x0"], k: p["k"] }),
                named("decay", WeightProfile::ExpDecay { n0: p["n0"], lambda: p["lambda"] }),
            ],
            Figure::GaussianWeights => vec![named(
                "gaussian",
                WeightProfile::Gaussian(GaussianProfile::new(p["amplitude"], p["center"], p["width"])?),
            )],
            Figure::MultiModalWeights => {
                let var = p["width"] * p["width"];
                let first = NormalDensity::new(p["center1"], var)?;
                let second = NormalDensity::new(p["center2"], var)?;
                let mixture = MixtureProfile::uniform(vec![
                    ComponentProfile::Normal(first),
                    ComponentProfile::Normal(second),
                ])?;
                vec![
                    named("component_1", WeightProfile::Normal(first)),
                    named("component_2", WeightProfile::Normal(second)),
                    named("mixture", WeightProfile::Mixture(mixture)),
                ]
            }
            Figure::Impulse => vec![named(
                "impulse",
                WeightProfile::Impulse(ImpulseProfile::Nascent {
                    center: p["center"],
                    width: p["epsilon"],
                }),
            )],
            Figure::ImpulseResponse => vec![named(
                "response",
                WeightProfile::Impulse(ImpulseProfile::Response {
                    shock_time: p["shock_time"],
                    decay: p["lambda"],
                }),
            )],
        })
    }

    pub fn table(self, grid: Option<Grid>, overrides: &[(String, f64)]) -> Result<CurveTable> {
        sample(&self.series(overrides)?, &grid.unwrap_or_else(|| self.default_grid()))
    }
}
