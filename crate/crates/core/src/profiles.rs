//! Time-shaped weight functions: Gaussian bells, normal and beta densities,
//! multi-modal mixtures, nascent delta impulses, impulse responses and
//! exponential growth/decay.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{self, QuadOptions};
use crate::valuation::Rate;

fn positive(name: &str, v: f64) -> Result<f64> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!("{name} must be finite and > 0, got {v}")))
    }
}

fn finite(name: &str, v: f64) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::domain(format!("{name} must be finite, got {v}")))
    }
}

/// `a * exp(-(t - b)^2 / (2 c^2))`: peak `a` at `t = b`, width `c`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawGaussian")]
pub struct GaussianProfile {
    amplitude: f64,
    center: f64,
    width: f64,
}

#[derive(Deserialize)]
struct RawGaussian {
    amplitude: f64,
    center: f64,
    width: f64,
}

impl TryFrom<RawGaussian> for GaussianProfile {
    type Error = Error;
    fn try_from(r: RawGaussian) -> Result<Self> {
        GaussianProfile::new(r.amplitude, r.center, r.width)
    }
}

impl GaussianProfile {
    pub fn new(amplitude: f64, center: f64, width: f64) -> Result<Self> {
        Ok(GaussianProfile {
            amplitude: positive("amplitude", amplitude)?,
            center: finite("center", center)?,
            width: positive("width", width)?,
        })
    }

    pub fn amplitude(&self) -> f64 {
        self.amplitude
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn width(&self) -> f64 {
        self.width
    }
}

pub fn gaussian_weight(p: &GaussianProfile, t: f64) -> f64 {
    let z = (t - p.center) / p.width;
    p.amplitude * (-0.5 * z * z).exp()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawNormal")]
pub struct NormalDensity {
    mean: f64,
    variance: f64,
}

#[derive(Deserialize)]
struct RawNormal {
    mean: f64,
    variance: f64,
}

impl TryFrom<RawNormal> for NormalDensity {
    type Error = Error;
    fn try_from(r: RawNormal) -> Result<Self> {
        NormalDensity::new(r.mean, r.variance)
    }
}

impl NormalDensity {
    pub fn new(mean: f64, variance: f64) -> Result<Self> {
        Ok(NormalDensity {
            mean: finite("mean", mean)?,
            variance: positive("variance", variance)?,
        })
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    pub fn variance(&self) -> f64 {
        self.variance
    }

    pub fn std_dev(&self) -> f64 {
        self.variance.sqrt()
    }
}

pub fn normal_density(d: &NormalDensity, x: f64) -> f64 {
    let dx = x - d.mean;
    (-dx * dx / (2.0 * d.variance)).exp() / (2.0 * PI * d.variance).sqrt()
}

/// `∫_0^{1/2} t^(a-1) (1-t)^(b-1) dt`.
///
/// For `a < 1` the substitution `t = u^(1/a)` turns the integrand into
/// `(1/a) (1 - u^(1/a))^(b-1)`, which is bounded on the new range.
fn half_beta_integral(a: f64, b: f64, opts: QuadOptions) -> Result<f64> {
    if a < 1.0 {
        let p = 1.0 / a;
        let upper = 0.5f64.powf(a);
        quadrature::integrate_with(|u: f64| p * (1.0 - u.powf(p)).powf(b - 1.0), 0.0, upper, opts)
    } else {
        quadrature::integrate_with(
            |t: f64| t.powf(a - 1.0) * (1.0 - t).powf(b - 1.0),
            0.0,
            0.5,
            opts,
        )
    }
}

/// Euler beta function `B(α, β) = ∫_0^1 t^(α-1) (1-t)^(β-1) dt` by quadrature.
///
/// The range is split at `1/2`; the upper half is integrated in the
/// distance-from-one variable so neither endpoint loses precision.
pub fn beta_function(alpha: f64, beta: f64) -> Result<f64> {
    beta_function_with(alpha, beta, QuadOptions::default())
}

pub fn beta_function_with(alpha: f64, beta: f64, opts: QuadOptions) -> Result<f64> {
    positive("alpha", alpha)?;
    positive("beta", beta)?;
    let lower = half_beta_integral(alpha, beta, opts)?;
    let upper = half_beta_integral(beta, alpha, opts)?;
    Ok(lower + upper)
}

/// Beta distribution density on `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBeta")]
pub struct BetaDensity {
    alpha: f64,
    beta: f64,
    #[serde(skip)]
    norm: f64,
}

#[derive(Deserialize)]
struct RawBeta {
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawBeta> for BetaDensity {
    type Error = Error;
    fn try_from(r: RawBeta) -> Result<Self> {
        BetaDensity::new(r.alpha, r.beta)
    }
}

impl BetaDensity {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        let norm = beta_function(alpha, beta)?;
        Ok(BetaDensity { alpha, beta, norm })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The normalizer `B(α, β)`.
    pub fn normalizer(&self) -> f64 {
        self.norm
    }

    /// Density at `x = 1 - u`, with the distance `u` to the right endpoint
    /// supplied exactly.
    pub fn eval_from_right(&self, u: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&u) {
            return Err(Error::domain(format!("distance must lie in [0, 1], got {u}")));
        }
        self.eval_parts(1.0 - u, u)
    }

    fn eval_parts(&self, x: f64, one_minus_x: f64) -> Result<f64> {
        let singular = (x == 0.0 && self.alpha < 1.0) || (one_minus_x == 0.0 && self.beta < 1.0);
        if singular {
            return Err(Error::EndpointSingularity { x });
        }
        Ok(x.powf(self.alpha - 1.0) * one_minus_x.powf(self.beta - 1.0) / self.norm)
    }
}

/// `x^(α-1) (1-x)^(β-1) / B(α, β)` for `x` in `[0, 1]`.
pub fn beta_density(d: &BetaDensity, x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::domain(format!("beta density needs x in [0, 1], got {x}")));
    }
    d.eval_parts(x, 1.0 - x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum ComponentProfile {
    Gaussian(GaussianProfile),
    Normal(NormalDensity),
    Beta(BetaDensity),
}

impl ComponentProfile {
    /// Beta components are zero outside `[0, 1]` and infinite at a singular
    /// endpoint.
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            ComponentProfile::Gaussian(g) => gaussian_weight(g, t),
            ComponentProfile::Normal(n) => normal_density(n, t),
            ComponentProfile::Beta(b) => {
                if !(0.0..=1.0).contains(&t) {
                    0.0
                } else {
                    beta_density(b, t).unwrap_or(f64::INFINITY)
                }
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MixtureComponent {
    pub weight: f64,
    pub profile: ComponentProfile,
}

/// Convex combination of component profiles.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawMixture")]
pub struct MixtureProfile {
    components: Vec<MixtureComponent>,
}

#[derive(Deserialize)]
struct RawMixture {
    components: Vec<MixtureComponent>,
}

impl TryFrom<RawMixture> for MixtureProfile {
    type Error = Error;
    fn try_from(r: RawMixture) -> Result<Self> {
        MixtureProfile::new(r.components)
    }
}

impl MixtureProfile {
    pub fn new(components: Vec<MixtureComponent>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::domain("mixture needs at least one component"));
        }
        for c in &components {
            positive("mixture weight", c.weight)?;
        }
        let total: f64 = components.iter().map(|c| c.weight).sum();
        if (total - 1.0).abs() > 1e-12 * components.len() as f64 {
            return Err(Error::domain(format!("mixture weights must sum to 1, got {total}")));
        }
        Ok(MixtureProfile { components })
    }

    /// Equal-weight mixture.
    pub fn uniform(profiles: Vec<ComponentProfile>) -> Result<Self> {
        let w = 1.0 / profiles.len().max(1) as f64;
        Self::new(
            profiles
                .into_iter()
                .map(|profile| MixtureComponent { weight: w, profile })
                .collect(),
        )
    }

    pub fn components(&self) -> &[MixtureComponent] {
        &self.components
    }
}

pub fn mixture_weight(m: &MixtureProfile, t: f64) -> f64 {
    m.components.iter().map(|c| c.weight * c.profile.eval(t)).sum()
}

/// Normalized Gaussian of standard deviation `width` centred on `center`;
/// tends to a unit point mass as `width -> 0`.
pub fn nascent_delta(width: f64, center: f64, t: f64) -> Result<f64> {
    if !(width > 0.0) || !width.is_finite() {
        return Err(Error::domain(format!("impulse width must be finite and > 0, got {width}")));
    }
    let z = (t - center) / width;
    Ok((-0.5 * z * z).exp() / (width * (2.0 * PI).sqrt()))
}

/// Zero before the shock, one at the shock, then `exp(-λ (t - shock_time))`.
pub fn impulse_response(shock_time: f64, decay: Rate, t: f64) -> f64 {
    if t < shock_time {
        0.0
    } else {
        (-decay.value() * (t - shock_time)).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum ImpulseProfile {
    Nascent { center: f64, width: f64 },
    Response { shock_time: f64, decay: f64 },
}

impl ImpulseProfile {
    pub fn eval(&self, t: f64) -> Result<f64> {
        match *self {
            ImpulseProfile::Nascent { center, width } => nascent_delta(width, center, t),
            ImpulseProfile::Response { shock_time, decay } => {
                Ok(impulse_response(shock_time, Rate::decay(decay)?, t))
            }
        }
    }
}

fn check_rate_and_time(rate: f64, t: f64) -> Result<()> {
    if !(rate >= 0.0) || !rate.is_finite() {
        return Err(Error::domain(format!("rate must be finite and >= 0, got {rate}")));
    }
    if !(t >= 0.0) || !t.is_finite() {
        return Err(Error::domain(format!("time must be finite and >= 0, got {t}")));
    }
    Ok(())
}

/// `x0 * exp(k t)`, the solution of `dx/dt = k x`.
pub fn exp_growth(x0: f64, k: f64, t: f64) -> Result<f64> {
    check_rate_and_time(k, t)?;
    Ok(x0 * (k * t).exp())
}

/// `n0 * exp(-λ t)`, the solution of `dN/dt = -λ N`.
pub fn exp_decay(n0: f64, lambda: f64, t: f64) -> Result<f64> {
    check_rate_and_time(lambda, t)?;
    Ok(n0 * (-lambda * t).exp())
}
