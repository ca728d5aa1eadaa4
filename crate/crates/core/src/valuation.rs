//! Shared domain types: rates, period counts, cash-flow streams and the
//! finite/divergent valuation outcome.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RateKind {
    Interest,
    Knowledge,
    Growth,
    Decay,
}

impl fmt::Display for RateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RateKind::Interest => "interest",
            RateKind::Knowledge => "knowledge",
            RateKind::Growth => "growth",
            RateKind::Decay => "decay",
        };
        f.write_str(name)
    }
}

/// A per-period rate, e.g. `0.05` for five percent per period.
///
/// Bounds depend on the kind: interest rates must exceed `-1` so that the
/// base `1 + i` stays positive, knowledge and decay rates must be
/// non-negative. Growth rates are unrestricted here; the functions that pair
/// them with an interest rate check `1 + g > 0` themselves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rate {
    value: f64,
    kind: RateKind,
}

impl Rate {
    pub fn new(value: f64, kind: RateKind) -> Result<Self> {
        if !value.is_finite() {
            return Err(Error::domain(format!("{kind} rate must be finite, got {value}")));
        }
        let ok = match kind {
            RateKind::Interest => value > -1.0,
            RateKind::Knowledge | RateKind::Decay => value >= 0.0,
            RateKind::Growth => true,
        };
        if !ok {
            let bound = match kind {
                RateKind::Interest => "> -1",
                _ => ">= 0",
            };
            return Err(Error::domain(format!("{kind} rate must be {bound}, got {value}")));
        }
        Ok(Rate { value, kind })
    }

    pub fn interest(value: f64) -> Result<Self> {
        Self::new(value, RateKind::Interest)
    }

    pub fn knowledge(value: f64) -> Result<Self> {
        Self::new(value, RateKind::Knowledge)
    }

    pub fn growth(value: f64) -> Result<Self> {
        Self::new(value, RateKind::Growth)
    }

    pub fn decay(value: f64) -> Result<Self> {
        Self::new(value, RateKind::Decay)
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.value
    }

    #[inline]
    pub fn kind(&self) -> RateKind {
        self.kind
    }

    /// `(1 + r)^n`, evaluated as `exp(n * ln(1 + r))` for integer and
    /// fractional `n` alike. Requires `1 + r > 0`.
    #[inline]
    pub(crate) fn growth_factor(&self, n: f64) -> f64 {
        compound(self.value, n)
    }
}

impl<'de> Deserialize<'de> for Rate {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            value: f64,
            kind: RateKind,
        }
        let raw = Raw::deserialize(de)?;
        Rate::new(raw.value, raw.kind).map_err(serde::de::Error::custom)
    }
}

/// Build a [`Rate`] of the given kind, enforcing the kind's bound.
pub fn make_rate(value: f64, kind: RateKind) -> Result<Rate> {
    Rate::new(value, kind)
}

#[inline]
pub(crate) fn compound(rate: f64, n: f64) -> f64 {
    if n == 0.0 {
        return 1.0;
    }
    (n * rate.ln_1p()).exp()
}

/// A non-negative, finite number of periods. Not necessarily an integer.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct Periods(f64);

impl Periods {
    pub const ZERO: Periods = Periods(0.0);

    pub fn new(value: f64) -> Result<Self> {
        if !value.is_finite() || value < 0.0 {
            return Err(Error::domain(format!(
                "period count must be finite and >= 0, got {value}"
            )));
        }
        Ok(Periods(value))
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

impl<'de> Deserialize<'de> for Periods {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        Periods::new(f64::deserialize(de)?).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CashFlow {
    pub time: Periods,
    pub amount: f64,
}

impl CashFlow {
    pub fn new(time: f64, amount: f64) -> Result<Self> {
        if !amount.is_finite() {
            return Err(Error::domain(format!("cash flow amount must be finite, got {amount}")));
        }
        Ok(CashFlow {
            time: Periods::new(time)?,
            amount,
        })
    }
}

/// Cash flows ordered by time. Flows sharing a time are kept as separate
/// entries and simply add up when the stream is valued.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct CashFlowStream {
    flows: Vec<CashFlow>,
}

impl CashFlowStream {
    pub fn new(mut flows: Vec<CashFlow>) -> Self {
        // stable: equal times keep their input order
        flows.sort_by(|a, b| a.time.value().total_cmp(&b.time.value()));
        CashFlowStream { flows }
    }

    pub fn from_pairs<I>(pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, f64)>,
    {
        let flows = pairs
            .into_iter()
            .map(|(t, a)| CashFlow::new(t, a))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(flows))
    }

    pub fn flows(&self) -> &[CashFlow] {
        &self.flows
    }

    pub fn len(&self) -> usize {
        self.flows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.flows.is_empty()
    }

    /// Sum of absolute amounts; the scale used for residual tolerances.
    pub fn gross(&self) -> f64 {
        self.flows.iter().map(|f| f.amount.abs()).sum()
    }

    /// Concatenate two streams, keeping the result sorted.
    pub fn concat(&self, other: &CashFlowStream) -> CashFlowStream {
        let mut flows = self.flows.clone();
        flows.extend_from_slice(&other.flows);
        CashFlowStream::new(flows)
    }
}

/// Sort `(time, amount)` pairs into a validated stream.
pub fn make_stream(pairs: &[(f64, f64)]) -> Result<CashFlowStream> {
    CashFlowStream::from_pairs(pairs.iter().copied())
}

/// Finite witness that a compounding sequence `base * (1 + k)^n` exceeds a
/// threshold, with `crossing_period` the first integer `n` where it does.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivergenceCertificate {
    threshold: f64,
    crossing_period: u64,
    base_value: f64,
    rate: Rate,
}

impl DivergenceCertificate {
    /// Checks the certificate conditions and returns the certificate only if
    /// they hold.
    pub fn new(threshold: f64, crossing_period: u64, base_value: f64, rate: Rate) -> Result<Self> {
        let cert = DivergenceCertificate {
            threshold,
            crossing_period,
            base_value,
            rate,
        };
        if cert.is_valid() {
            Ok(cert)
        } else {
            Err(Error::domain(format!(
                "invalid divergence certificate: base={base_value} k={} M={threshold} N={crossing_period}",
                rate.value()
            )))
        }
    }

    pub fn threshold(&self) -> f64 {
        self.threshold
    }

    pub fn crossing_period(&self) -> u64 {
        self.crossing_period
    }

    pub fn base_value(&self) -> f64 {
        self.base_value
    }

    pub fn rate(&self) -> Rate {
        self.rate
    }

    /// Value of the sequence at period `n`.
    pub fn value_at(&self, n: u64) -> f64 {
        self.base_value * self.rate.growth_factor(n as f64)
    }

    /// `value_at(N) > M`, and `value_at(N - 1) <= M` when `N >= 1`.
    pub fn is_valid(&self) -> bool {
        let k = self.rate.value();
        if self.rate.kind() != RateKind::Knowledge || !(k > 0.0) {
            return false;
        }
        if !(self.threshold > 0.0 && self.base_value > 0.0) {
            return false;
        }
        let n = self.crossing_period;
        let crossed = self.value_at(n) > self.threshold;
        let minimal = n == 0 || self.value_at(n - 1) <= self.threshold;
        crossed && minimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ValuationResult {
    Finite(f64),
    Divergent(DivergenceCertificate),
}

impl ValuationResult {
    pub fn is_divergent(&self) -> bool {
        matches!(self, ValuationResult::Divergent(_))
    }

    pub fn finite_value(&self) -> Option<f64> {
        match self {
            ValuationResult::Finite(v) => Some(*v),
            ValuationResult::Divergent(_) => None,
        }
    }
}
