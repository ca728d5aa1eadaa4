//! Implied rates: closed-form inversion for a single present/future pair and
//! a safeguarded root search for the internal rate of return of a stream.

use crate::error::{Error, Result};
use crate::money::npv_at;
use crate::valuation::{CashFlowStream, Periods, Rate};

pub const MAX_IRR_ITERATIONS: usize = 1000;

/// Search interval for a rate root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    lo: f64,
    hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo.is_finite() && hi.is_finite()) || !(lo < hi) {
            return Err(Error::domain(format!("bracket needs finite lo < hi, got ({lo}, {hi})")));
        }
        if !(lo > -1.0) {
            return Err(Error::domain(format!("bracket lower end must exceed -1, got {lo}")));
        }
        Ok(Bracket { lo, hi })
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn contains(&self, r: f64) -> bool {
        self.lo <= r && r <= self.hi
    }
}

impl Default for Bracket {
    fn default() -> Self {
        Bracket { lo: -0.99, hi: 10.0 }
    }
}

fn ratio_exponent(from: f64, to: f64, n: Periods) -> Result<f64> {
    if !(from > 0.0 && from.is_finite()) || !(to > 0.0 && to.is_finite()) {
        return Err(Error::domain(format!(
            "values must be finite and > 0, got {from} and {to}"
        )));
    }
    if !(n.value() > 0.0) {
        return Err(Error::domain("period count must be > 0"));
    }
    Ok((to / from).ln() / n.value())
}

/// Interest rate `i` with `fv = pv (1 + i)^n`.
pub fn implied_rate(pv: f64, fv: f64, n: Periods) -> Result<Rate> {
    Rate::interest(ratio_exponent(pv, fv, n)?.exp_m1())
}

/// Knowledge rate `k` with `v_to = v_from (1 + k)^n`. A value that shrinks
/// cannot come from a knowledge weight.
pub fn implied_knowledge_rate(v_from: f64, v_to: f64, n: Periods) -> Result<Rate> {
    let exponent = ratio_exponent(v_from, v_to, n)?;
    if v_to < v_from {
        return Err(Error::AxiomViolation {
            from: v_from,
            to: v_to,
        });
    }
    Rate::knowledge(exponent.exp_m1().max(0.0))
}

/// Internal rate of return: a rate in `bracket` where the stream's present
/// value is zero, to within `tol * Σ|amount|`.
///
/// Secant steps accelerate a bisection bracket. A step that would leave the
/// bracket, or two steps that fail to halve it, fall back to bisection, so
/// the search always makes progress. With several sign changes in the stream
/// there may be several roots; any one inside the bracket may be returned.
pub fn irr(stream: &CashFlowStream, bracket: Bracket, tol: f64) -> Result<Rate> {
    if stream.is_empty() {
        return Err(Error::EmptyStream);
    }
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::domain(format!("tolerance must be finite and > 0, got {tol}")));
    }
    let target = tol * stream.gross();
    let npv = |r: f64| npv_at(stream, r);

    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, fb) = (npv(a), npv(b));
    if fa.abs() <= target {
        return Rate::interest(a);
    }
    if fb.abs() <= target {
        return Rate::interest(b);
    }
    if fa.signum() == fb.signum() {
        return Err(Error::NoSignChange);
    }

    // secant runs on the two most recent iterates
    let (mut x0, mut f0, mut x1, mut f1) = (a, fa, b, fb);
    let mut width_before = b - a;
    let mut stalled = 0;

    for _ in 0..MAX_IRR_ITERATIONS {
        let mid = 0.5 * (a + b);
        if !(a < mid && mid < b) {
            break;
        }
        let secant = x1 - f1 * (x1 - x0) / (f1 - f0);
        let x = if stalled >= 2 || !(secant > a && secant < b) {
            stalled = 0;
            width_before = b - a;
            mid
        } else {
            secant
        };

        let fx = npv(x);
        if fx.abs() <= target {
            return Rate::interest(x);
        }
        if fx.signum() == fa.signum() {
            a = x;
            fa = fx;
        } else {
            b = x;
        }
        x0 = x1;
        f0 = f1;
        x1 = x;
        f1 = fx;

        if b - a > 0.5 * width_before {
            stalled += 1;
        } else {
            stalled = 0;
            width_before = b - a;
        }
    }

    Err(Error::NonConvergence {
        iterations: MAX_IRR_ITERATIONS,
    })
}
