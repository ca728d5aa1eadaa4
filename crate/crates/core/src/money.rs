//! Money-side time value: present/future value transforms, cumulative
//! present value of a stream and the discount-function family.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::valuation::{compound, CashFlowStream, Periods, Rate, RateKind};

/// Multiplier converting an amount at a later time into an amount today.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
pub struct DiscountFactor(f64);

impl DiscountFactor {
    #[inline]
    pub fn value(&self) -> f64 {
        self.0
    }
}

/// Growth-adjusted discount factor together with an advisory flag.
///
/// `sensible` is false when the growth rate exceeds the interest rate; the
/// factor is still well defined for finite horizons but then exceeds one.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthDiscount {
    pub factor: DiscountFactor,
    pub sensible: bool,
}

#[inline]
fn debug_check_interest(i: &Rate) {
    debug_assert_eq!(i.kind(), RateKind::Interest, "expected an interest rate");
}

/// `pv * (1 + i)^n`
pub fn fv_of_pv(pv: f64, i: Rate, n: Periods) -> f64 {
    debug_check_interest(&i);
    pv * i.growth_factor(n.value())
}

/// `fv / (1 + i)^n`, the inverse of [`fv_of_pv`].
pub fn pv_of_fv(fv: f64, i: Rate, n: Periods) -> f64 {
    debug_check_interest(&i);
    fv / i.growth_factor(n.value())
}

/// Cumulative present value `Σ amount / (1 + i)^time`. Zero for an empty stream.
pub fn pv_of_stream(stream: &CashFlowStream, i: Rate) -> f64 {
    debug_check_interest(&i);
    npv_at(stream, i.value())
}

/// Same sum for a raw rate value; the root finder evaluates this directly.
pub(crate) fn npv_at(stream: &CashFlowStream, rate: f64) -> f64 {
    stream
        .flows()
        .iter()
        .map(|f| f.amount / compound(rate, f.time.value()))
        .sum()
}

/// `f(i, n) = (1 + i)^-n`
pub fn discount_factor(i: Rate, n: Periods) -> DiscountFactor {
    debug_check_interest(&i);
    DiscountFactor(1.0 / i.growth_factor(n.value()))
}

/// `f(i, g, n) = (1 + g)^n / (1 + i)^n`
pub fn discount_factor_growth(i: Rate, g: Rate, n: Periods) -> Result<GrowthDiscount> {
    debug_check_interest(&i);
    if g.value() <= -1.0 {
        return Err(Error::domain(format!(
            "growth rate must be > -1, got {}",
            g.value()
        )));
    }
    let n = n.value();
    let value = (n * (g.value().ln_1p() - i.value().ln_1p())).exp();
    Ok(GrowthDiscount {
        factor: DiscountFactor(value),
        sensible: g.value() <= i.value(),
    })
}

fn check_non_negative(k: Rate) -> Result<f64> {
    if k.value() < 0.0 {
        return Err(Error::domain(format!(
            "discount parameter must be >= 0, got {}",
            k.value()
        )));
    }
    Ok(k.value())
}

/// Hyperbolic delay discounting `1 / (1 + k D)`.
pub fn discount_factor_hyperbolic(k: Rate, delay: Periods) -> Result<DiscountFactor> {
    let k = check_non_negative(k)?;
    Ok(DiscountFactor(1.0 / (1.0 + k * delay.value())))
}

/// Continuous exponential discounting `exp(-k D)`.
pub fn discount_factor_exp_continuous(k: Rate, delay: Periods) -> Result<DiscountFactor> {
    let k = check_non_negative(k)?;
    Ok(DiscountFactor((-k * delay.value()).exp()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn i(v: f64) -> Rate {
        Rate::interest(v).unwrap()
    }

    fn n(v: f64) -> Periods {
        Periods::new(v).unwrap()
    }

    #[test]
    fn transforms_match_hand_arithmetic() {
        assert_eq!(fv_of_pv(100.0, i(0.0), n(7.0)), 100.0);
        assert_relative_eq!(fv_of_pv(100.0, i(0.10), n(2.0)), 121.0, max_relative = 1e-12);
        // 100 * sqrt(1.1)
        assert_relative_eq!(
            fv_of_pv(100.0, i(0.10), n(0.5)),
            104.880_884_817_015_15,
            max_relative = 1e-12
        );
        assert_relative_eq!(pv_of_fv(110.0, i(0.10), n(1.0)), 100.0, max_relative = 1e-12);
        assert_eq!(pv_of_fv(-37.5, i(0.3), Periods::ZERO), -37.5);
        assert_relative_eq!(fv_of_pv(100.0, i(-0.5), n(1.0)), 50.0, max_relative = 1e-12);
    }

    #[test]
    fn stream_present_value() {
        let s = CashFlowStream::from_pairs([(1.0, 100.0), (2.0, 100.0)]).unwrap();
        assert_relative_eq!(pv_of_stream(&s, i(0.0)), 200.0, max_relative = 1e-12);
        assert_relative_eq!(
            pv_of_stream(&s, i(0.10)),
            100.0 / 1.1 + 100.0 / 1.21,
            max_relative = 1e-12
        );
        assert_eq!(pv_of_stream(&CashFlowStream::default(), i(0.07)), 0.0);

        let ties = CashFlowStream::from_pairs([(1.0, 100.0), (1.0, -40.0)]).unwrap();
        assert_relative_eq!(pv_of_stream(&ties, i(0.0)), 60.0, max_relative = 1e-12);
    }

    #[test]
    fn discount_function_examples() {
        assert_eq!(discount_factor(i(0.0), n(13.0)).value(), 1.0);
        assert_relative_eq!(discount_factor(i(0.05), n(1.0)).value(), 1.0 / 1.05, max_relative = 1e-12);
        assert_relative_eq!(discount_factor(i(1.0), n(2.0)).value(), 0.25, max_relative = 1e-12);
    }

    #[test]
    fn growth_adjusted_discount() {
        let same = discount_factor_growth(i(0.07), Rate::growth(0.07).unwrap(), n(9.0)).unwrap();
        assert_relative_eq!(same.factor.value(), 1.0, max_relative = 1e-12);
        assert!(same.sensible);

        let d = discount_factor_growth(i(0.10), Rate::growth(0.02).unwrap(), n(1.0)).unwrap();
        assert_relative_eq!(d.factor.value(), 1.02 / 1.10, max_relative = 1e-12);
        assert!(d.sensible);

        let d = discount_factor_growth(i(0.02), Rate::growth(0.10).unwrap(), n(1.0)).unwrap();
        assert_relative_eq!(d.factor.value(), 1.10 / 1.02, max_relative = 1e-12);
        assert!(!d.sensible);

        assert!(discount_factor_growth(i(0.1), Rate::growth(-1.0).unwrap(), n(1.0)).is_err());
    }

    #[test]
    fn hyperbolic_and_exponential_examples() {
        let k = |v| Rate::interest(v).unwrap();
        assert_eq!(discount_factor_hyperbolic(k(0.3), Periods::ZERO).unwrap().value(), 1.0);
        assert_relative_eq!(discount_factor_hyperbolic(k(1.0), n(1.0)).unwrap().value(), 0.5);
        assert_relative_eq!(
            discount_factor_hyperbolic(k(0.1), n(50.0)).unwrap().value(),
            1.0 / 6.0,
            max_relative = 1e-12
        );
        assert!(discount_factor_hyperbolic(k(-0.1), n(1.0)).is_err());

        assert_eq!(discount_factor_exp_continuous(k(0.3), Periods::ZERO).unwrap().value(), 1.0);
        assert_relative_eq!(
            discount_factor_exp_continuous(k(std::f64::consts::LN_2), n(1.0)).unwrap().value(),
            0.5,
            max_relative = 1e-12
        );
        assert_relative_eq!(
            discount_factor_exp_continuous(k(0.1), n(10.0)).unwrap().value(),
            0.367_879_441_171_442_3,
            max_relative = 1e-12
        );
        assert!(discount_factor_exp_continuous(k(-0.1), n(1.0)).is_err());
    }

    fn stream_strategy() -> impl Strategy<Value = CashFlowStream> {
        prop::collection::vec((0.0f64..40.0, -1e4f64..1e4), 0..12)
            .prop_map(|p| CashFlowStream::from_pairs(p).unwrap())
    }

    proptest! {
        #[test]
        fn roundtrip_recovers_amount(x in -1e6f64..1e6, r in -0.9f64..=2.0, t in 0.0f64..100.0) {
            let back = pv_of_fv(fv_of_pv(x, i(r), n(t)), i(r), n(t));
            prop_assert!((back - x).abs() <= 1e-12 * x.abs());
        }

        #[test]
        fn discount_factor_is_monotone(r in 0.0f64..1.0, dr in 0.0f64..1.0, t in 0.0f64..60.0, dt in 0.0f64..60.0) {
            let base = discount_factor(i(r), n(t)).value();
            prop_assert!(base <= 1.0);
            if r > 0.0 && t > 0.0 {
                prop_assert!(base < 1.0);
            }
            prop_assert!(discount_factor(i(r + dr), n(t)).value() <= base);
            prop_assert!(discount_factor(i(r), n(t + dt)).value() <= base);
        }

        #[test]
        fn hyperbolic_dominates_exponential(k in 0.0f64..2.0, d in 0.0f64..50.0) {
            let rate = Rate::interest(k).unwrap();
            let h = discount_factor_hyperbolic(rate, n(d)).unwrap().value();
            let e = discount_factor_exp_continuous(rate, n(d)).unwrap().value();
            prop_assert!(h >= e);
            if k * d > 0.0 {
                prop_assert!(h > e);
            }
        }

        #[test]
        fn stream_pv_is_linear(a in stream_strategy(), b in stream_strategy(), r in -0.5f64..1.0) {
            let whole = pv_of_stream(&a.concat(&b), i(r));
            let parts = pv_of_stream(&a, i(r)) + pv_of_stream(&b, i(r));
            let scale = a.gross() + b.gross();
            prop_assert!((whole - parts).abs() <= 1e-9 * scale.max(1.0) * compound(r, -40.0).max(1.0));
        }

        #[test]
        fn single_flow_matches_transform(t in 0.0f64..50.0, amt in -1e5f64..1e5, r in -0.5f64..1.0) {
            let s = CashFlowStream::from_pairs([(t, amt)]).unwrap();
            let a = pv_of_stream(&s, i(r));
            let b = pv_of_fv(amt, i(r), n(t));
            prop_assert!((a - b).abs() <= 1e-12 * b.abs());
        }
    }
}
