//! Adaptive LMS/NLMS filters with convex sparsity regularization.
//!
//! The coefficient update implemented here is
//!
//! ```text
//! w(n+1) = w(n) + mu_n * e(n) * x(n) - rho_n * g(n)
//! ```
//!
//! where `g(n)` is a subgradient of a convex penalty evaluated at the current
//! estimate. Four penalties are built in — l1, reweighted l1, group l1,2 and
//! reweighted group l1,2 — which turn the plain update into the ZA, RZA, GZA
//! and GRZA filter families for sparse and group-sparse system identification.
//!
//! The [`rho`] module supplies closed-form choices of the regularization step
//! size `rho_n` that make the regularized filter provably no worse (in mean
//! square deviation) than the conventional filter run on the same data: one
//! pair of formulas for white inputs (constant and normalized step sizes) and
//! one formula that also covers correlated wide-sense-stationary inputs.
//!
//! The crate is `no_std` (with `alloc`) so the filter core can run on embedded
//! DSP targets; simulation, scenario configs and file output live in the
//! companion `rlms-sim` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod error;
pub mod filter;
pub mod penalty;
pub mod rho;

pub use error::Error;
pub use filter::{FilterState, RegressorWindow, StepSizePolicy};
pub use penalty::{GroupPartition, Penalty, PenaltyKind, Weights};
pub use rho::{EtaBound, RhoContext, RhoPolicy, RhoRule};
