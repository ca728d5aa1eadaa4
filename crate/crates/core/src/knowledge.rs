//! Knowledge-side valuation.
//!
//! Knowledge is weighted by `h(k, n) = (1 + k)^n` with `k >= 0`, so moving a
//! value between epochs never lowers it, in either direction of time. With a
//! strictly positive rate the weighted value grows without bound; that is
//! reported as a [`ValuationResult::Divergent`] carrying a finite, checkable
//! witness rather than as a floating-point infinity.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::valuation::{DivergenceCertificate, Periods, Rate, RateKind, ValuationResult};

/// Relative tolerance under which two finite values count as equal when
/// selecting among options.
pub const DEFAULT_INDIFFERENCE_TOL: f64 = 1e-9;

/// A compounding weight; always at least one.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct KnowledgeWeight(f64);

impl KnowledgeWeight {
    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Epoch {
    Past,
    Present,
    Future,
}

/// Value of a piece of knowledge as seen from one epoch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KnowledgeValue {
    magnitude: f64,
    epoch: Epoch,
}

impl KnowledgeValue {
    pub fn new(magnitude: f64, epoch: Epoch) -> Result<Self> {
        if !(magnitude > 0.0) || !magnitude.is_finite() {
            return Err(Error::domain(format!(
                "knowledge value must be finite and > 0, got {magnitude}"
            )));
        }
        Ok(KnowledgeValue { magnitude, epoch })
    }

    pub fn magnitude(&self) -> f64 {
        self.magnitude
    }

    pub fn epoch(&self) -> Epoch {
        self.epoch
    }
}

/// `h(k, n) = (1 + k)^n`
pub fn weight(k: Rate, n: Periods) -> KnowledgeWeight {
    debug_assert_eq!(k.kind(), RateKind::Knowledge, "expected a knowledge rate");
    // k >= 0 and n >= 0 make the exponent non-negative, so the weight is >= 1
    // even after rounding.
    KnowledgeWeight(k.growth_factor(n.value()))
}

/// Carry a value to another epoch. The magnitude is multiplied by the weight
/// whichever way the move goes: past to present, present to future, or back.
pub fn transport_value(v: KnowledgeValue, k: Rate, n: Periods, target: Epoch) -> KnowledgeValue {
    KnowledgeValue {
        magnitude: v.magnitude * weight(k, n).value(),
        epoch: target,
    }
}

/// Follow `base * (1 + k)^n` over integer `n` and report whether it exceeds
/// `threshold` within `n_max` periods.
///
/// * `k == 0`: the sequence is constant and the result is `Finite(base)`.
/// * `k > 0`: `Divergent` with the smallest `N` such that
///   `base * (1 + k)^N > threshold`.
/// * Crossing beyond `n_max`: [`Error::Inconclusive`] with the value reached
///   at `n_max`; the caller should widen the horizon.
pub fn limit_probe(base: f64, k: Rate, threshold: f64, n_max: u64) -> Result<ValuationResult> {
    if k.kind() != RateKind::Knowledge {
        return Err(Error::domain(format!("expected a knowledge rate, got {}", k.kind())));
    }
    if !(base > 0.0) || !base.is_finite() {
        return Err(Error::domain(format!("base value must be finite and > 0, got {base}")));
    }
    if !(threshold > 0.0) || !threshold.is_finite() {
        return Err(Error::domain(format!("threshold must be finite and > 0, got {threshold}")));
    }
    if n_max < 1 {
        return Err(Error::domain("n_max must be at least 1"));
    }
    if k.value() == 0.0 {
        return Ok(ValuationResult::Finite(base));
    }

    let at = |n: u64| base * k.growth_factor(n as f64);

    if at(n_max) <= threshold {
        return Err(Error::Inconclusive {
            value_at_n_max: at(n_max),
        });
    }

    // The closed form gives the crossing up to rounding; nudge it so the
    // certificate conditions hold for the same evaluation used to check them.
    let mut n = if base > threshold {
        0
    } else {
        let est = ((threshold / base).ln() / k.value().ln_1p()).ceil();
        (est.max(0.0) as u64).min(n_max)
    };
    while at(n) <= threshold {
        n += 1;
    }
    while n > 0 && at(n - 1) > threshold {
        n -= 1;
    }

    DivergenceCertificate::new(threshold, n, base, k).map(ValuationResult::Divergent)
}

/// Pick one option at random among those of (practically) equal value.
///
/// If any option diverges, the candidates are all divergent options;
/// otherwise they are the finite options within relative `tol` of the
/// largest. The draw is uniform over the candidates and reproducible for a
/// given `seed` (ChaCha8 seeded through `seed_from_u64`).
pub fn indifference_select(values: &[ValuationResult], tol: f64, seed: u64) -> Result<usize> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if !(tol >= 0.0) || !tol.is_finite() {
        return Err(Error::domain(format!("tolerance must be finite and >= 0, got {tol}")));
    }

    let mut candidates: Vec<usize> = values
        .iter()
        .enumerate()
        .filter(|(_, v)| v.is_divergent())
        .map(|(j, _)| j)
        .collect();

    if candidates.is_empty() {
        let best = values
            .iter()
            .filter_map(ValuationResult::finite_value)
            .fold(f64::NEG_INFINITY, f64::max);
        candidates = values
            .iter()
            .enumerate()
            .filter(|(_, v)| {
                v.finite_value()
                    .is_some_and(|x| (best - x).abs() <= tol * best.abs())
            })
            .map(|(j, _)| j)
            .collect();
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(candidates[rng.random_range(0..candidates.len())])
}
