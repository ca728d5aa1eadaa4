//! Temporal valuation of money and knowledge.
//!
//! Money is discounted on the way back in time and compounded on the way
//! forward; knowledge is only ever compounded. The crate provides:
//!
//! * [`money`]: present/future value transforms, stream present value and
//!   discrete, growth-adjusted, hyperbolic and continuous discount factors;
//! * [`knowledge`]: the compounding weight `(1 + k)^n`, transport of a
//!   value between epochs, a divergence probe producing a checkable
//!   certificate, and a seeded selector among equally valued options;
//! * [`profiles`]: Gaussian, normal, beta, mixture, impulse and exponential
//!   weight shapes, with the beta function computed by [`quadrature`];
//! * [`solver`]: implied rates and internal rate of return;
//! * [`curves`] and [`stream_io`]: sampled figure tables and cash-flow files.

pub mod curves;
pub mod error;
pub mod knowledge;
pub mod money;
pub mod profiles;
pub mod quadrature;
pub mod solver;
pub mod stream_io;
pub mod valuation;

pub use error::{Error, Result};
pub use knowledge::{
    indifference_select, limit_probe, transport_value, weight, Epoch, KnowledgeValue,
    KnowledgeWeight, DEFAULT_INDIFFERENCE_TOL,
};
pub use money::{
    discount_factor, discount_factor_exp_continuous, discount_factor_growth,
    discount_factor_hyperbolic, fv_of_pv, pv_of_fv, pv_of_stream, DiscountFactor, GrowthDiscount,
};
pub use solver::{implied_knowledge_rate, implied_rate, irr, Bracket};
pub use valuation::{
    make_rate, make_stream, CashFlow, CashFlowStream, DivergenceCertificate, Periods, Rate,
    RateKind, ValuationResult,
};
