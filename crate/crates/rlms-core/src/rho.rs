//! Closed-form regularization step-size policies.
//!
//! The regularized update subtracts `rho_n * g(n)` from the coefficients.
//! Chosen well, this term can only help: with `rho_n` anywhere in
//! `[0, 2*rho_star]` the regularized filter's mean square deviation is no
//! worse than the conventional filter's on the same data. Three closed
//! forms for `rho_star` are provided:
//!
//! * [`rho_star_lms`] — white input, constant step size,
//!   `max{(1 - mu*sigma_x^2) * (f - eta) / ||g||^2, 0}`;
//! * [`rho_star_nlms`] — white input, normalized step size,
//!   `max{(1 - alpha/N) * (f - eta) / ||g||^2, 0}`;
//! * [`rho_star_correlated`] — wide-sense-stationary (possibly correlated)
//!   input, either step rule, `max{(f - eta - mu_n * r_n) / ||g||^2, 0}`
//!   with the data-dependent correction [`r_n`].
//!
//! Here `f` is the penalty value at the current estimate, `eta` an assumed
//! upper bound on the penalty value of the true system, and `g` the frozen
//! subgradient. All three vanish when the estimate already satisfies the
//! bound, in which case the filter falls back to its conventional update.

use crate::error::Error;
use crate::filter::StepSizePolicy;
use crate::penalty::{group_norm, GroupPartition, Weights};

#[inline]
fn fabs(x: f64) -> f64 {
    libm::fabs(x)
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

/// White-input, constant-step optimum.
pub fn rho_star_lms(mu: f64, sigma_x2: f64, f_val: f64, eta: f64, subgrad_norm2: f64) -> f64 {
    if subgrad_norm2 <= 0.0 {
        return 0.0;
    }
    let v = (1.0 - mu * sigma_x2) * (f_val - eta) / subgrad_norm2;
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// White-input, normalized-step optimum (`filter_len` is the tap count N).
pub fn rho_star_nlms(alpha: f64, filter_len: usize, f_val: f64, eta: f64, subgrad_norm2: f64) -> f64 {
    if subgrad_norm2 <= 0.0 {
        return 0.0;
    }
    let v = (1.0 - alpha / filter_len as f64) * (f_val - eta) / subgrad_norm2;
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// Correlated-input optimum with the realized step size `mu_eff` and the
/// correction term `r` from [`r_n`].
pub fn rho_star_correlated(mu_eff: f64, f_val: f64, eta: f64, r: f64, subgrad_norm2: f64) -> f64 {
    if subgrad_norm2 <= 0.0 {
        return 0.0;
    }
    let v = (f_val - eta - mu_eff * r) / subgrad_norm2;
    if v > 0.0 {
        v
    } else {
        0.0
    }
}

/// Data-dependent correction used by the correlated-input formula:
///
/// ```text
/// r_n = (w^T x)(x^T g) + eta * max_j { ||x_{I_j}|| / beta_j } * |x^T g|
/// ```
pub fn r_n(
    w_hat: &[f64],
    x: &[f64],
    subgrad: &[f64],
    eta: f64,
    weights: &Weights,
    partition: &GroupPartition,
) -> Result<f64, Error> {
    let n = partition.len();
    for len in [w_hat.len(), x.len(), subgrad.len()] {
        if len != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: len,
            });
        }
    }
    if weights.len() != partition.num_groups() {
        return Err(Error::DimensionMismatch {
            expected: partition.num_groups(),
            actual: weights.len(),
        });
    }
    let wx = dot(w_hat, x);
    let xg = dot(x, subgrad);
    let mut max_ratio: f64 = 0.0;
    for (group, &beta) in partition.groups().iter().zip(weights.as_slice()) {
        let ratio = group_norm(x, group) / beta;
        if ratio > max_ratio {
            max_ratio = ratio;
        }
    }
    Ok(wx * xg + eta * max_ratio * fabs(xg))
}

/// Assumed upper bound `eta` on the penalty value of the true system.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaBound(f64);

impl EtaBound {
    pub fn new(eta: f64) -> Result<Self, Error> {
        if !(eta >= 0.0) || !eta.is_finite() {
            return Err(Error::InvalidParameter("eta must be finite and nonnegative"));
        }
        Ok(EtaBound(eta))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// Which formula produces the per-iteration `rho_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RhoRule {
    /// Constant `rho`, no closed form.
    Fixed { rho: f64 },
    /// White-input constant-step formula; needs the input variance.
    WhiteLms { sigma_x2: f64 },
    /// White-input normalized-step formula.
    WhiteNlms,
    /// Correlated-input formula with the `r_n` correction.
    Correlated,
}

/// Everything the policies may need from the current iteration. Subgradient
/// and weights must be the ones frozen at the current estimate.
#[derive(Debug, Clone, Copy)]
pub struct RhoContext<'a> {
    pub step: &'a StepSizePolicy,
    /// Realized step size for this sample (equals `mu`, or `alpha/||x||^2`).
    pub mu_eff: f64,
    /// Penalty value at the current estimate.
    pub f_val: f64,
    pub subgrad: &'a [f64],
    pub w_hat: &'a [f64],
    pub x: &'a [f64],
    pub weights: &'a Weights,
    pub partition: &'a GroupPartition,
}

/// A rule plus its `eta` bound and a deployment scale.
///
/// The deployed value is `scale * rho_star`; any scale in `(0, 2]` stays
/// inside the interval for which the dominance guarantees hold.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RhoPolicy {
    rule: RhoRule,
    eta: EtaBound,
    scale: f64,
}

impl RhoPolicy {
    pub fn fixed(rho: f64) -> Result<Self, Error> {
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::InvalidParameter("rho must be finite and nonnegative"));
        }
        Ok(RhoPolicy {
            rule: RhoRule::Fixed { rho },
            eta: EtaBound(0.0),
            scale: 1.0,
        })
    }

    pub fn white_lms(sigma_x2: f64, eta: EtaBound) -> Result<Self, Error> {
        if !(sigma_x2 > 0.0) || !sigma_x2.is_finite() {
            return Err(Error::InvalidParameter(
                "sigma_x2 must be finite and positive",
            ));
        }
        Ok(RhoPolicy {
            rule: RhoRule::WhiteLms { sigma_x2 },
            eta,
            scale: 1.0,
        })
    }

    pub fn white_nlms(eta: EtaBound) -> Self {
        RhoPolicy {
            rule: RhoRule::WhiteNlms,
            eta,
            scale: 1.0,
        }
    }

    pub fn correlated(eta: EtaBound) -> Self {
        RhoPolicy {
            rule: RhoRule::Correlated,
            eta,
            scale: 1.0,
        }
    }

    /// Replace the deployment scale; must lie in `(0, 2]`.
    pub fn with_scale(mut self, scale: f64) -> Result<Self, Error> {
        if !(scale > 0.0 && scale <= 2.0) {
            return Err(Error::InvalidParameter("scale must lie in (0, 2]"));
        }
        self.scale = scale;
        Ok(self)
    }

    /// Replace the eta bound (used by sensitivity sweeps).
    pub fn with_eta(mut self, eta: EtaBound) -> Self {
        self.eta = eta;
        self
    }

    pub fn rule(&self) -> RhoRule {
        self.rule
    }

    pub fn eta(&self) -> f64 {
        self.eta.value()
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    /// Per-iteration `rho_n = scale * rho_star` for the given context.
    /// Always nonnegative.
    pub fn rho(&self, ctx: &RhoContext<'_>) -> Result<f64, Error> {
        let subgrad_norm2: f64 = ctx.subgrad.iter().map(|&g| g * g).sum();
        let eta = self.eta.value();
        let star = match self.rule {
            RhoRule::Fixed { rho } => rho,
            RhoRule::WhiteLms { sigma_x2 } => {
                let mu = match *ctx.step {
                    StepSizePolicy::ConstantMu { mu } => mu,
                    StepSizePolicy::Normalized { .. } => {
                        return Err(Error::InvalidParameter(
                            "the constant-step formula requires a constant step size",
                        ))
                    }
                };
                rho_star_lms(mu, sigma_x2, ctx.f_val, eta, subgrad_norm2)
            }
            RhoRule::WhiteNlms => {
                let alpha = match *ctx.step {
                    StepSizePolicy::Normalized { alpha } => alpha,
                    StepSizePolicy::ConstantMu { .. } => {
                        return Err(Error::InvalidParameter(
                            "the normalized-step formula requires a normalized step size",
                        ))
                    }
                };
                rho_star_nlms(alpha, ctx.w_hat.len(), ctx.f_val, eta, subgrad_norm2)
            }
            RhoRule::Correlated => {
                let r = r_n(ctx.w_hat, ctx.x, ctx.subgrad, eta, ctx.weights, ctx.partition)?;
                rho_star_correlated(ctx.mu_eff, ctx.f_val, eta, r, subgrad_norm2)
            }
        };
        Ok(self.scale * star)
    }
}
