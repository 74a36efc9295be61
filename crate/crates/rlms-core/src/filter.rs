//! Filter state and the conventional / regularized coefficient updates.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::penalty::Penalty;

/// Shift register holding the most recent input samples, newest first:
/// `[x_n, x_{n-1}, …, x_{n-N+1}]`. Pushing a new sample drops the oldest.
/// A freshly constructed window is zero-padded, matching a filter that
/// starts from all-zero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressorWindow {
    x: Vec<f64>,
}

impl RegressorWindow {
    /// Zero-filled window of the given length.
    pub fn new(len: usize) -> Self {
        RegressorWindow { x: vec![0.0; len] }
    }

    /// Window from explicit samples, newest first.
    pub fn from_samples(samples: &[f64]) -> Self {
        RegressorWindow {
            x: samples.to_vec(),
        }
    }

    /// Push the newest sample, dropping the oldest.
    pub fn push(&mut self, sample: f64) {
        let n = self.x.len();
        if n == 0 {
            return;
        }
        self.x.copy_within(0..n - 1, 1);
        self.x[0] = sample;
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Squared l2 norm of the window.
    pub fn energy(&self) -> f64 {
        self.x.iter().map(|&v| v * v).sum()
    }
}

/// Step-size rule: a constant `mu`, or the normalized `alpha / ||x||^2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum StepSizePolicy {
    ConstantMu { mu: f64 },
    Normalized { alpha: f64 },
}

impl StepSizePolicy {
    pub fn constant(mu: f64) -> Result<Self, Error> {
        if !(mu > 0.0) || !mu.is_finite() {
            return Err(Error::InvalidParameter("mu must be finite and positive"));
        }
        Ok(StepSizePolicy::ConstantMu { mu })
    }

    pub fn normalized(alpha: f64) -> Result<Self, Error> {
        if !(alpha > 0.0) || !alpha.is_finite() {
            return Err(Error::InvalidParameter("alpha must be finite and positive"));
        }
        Ok(StepSizePolicy::Normalized { alpha })
    }

    /// Realized step size for the given regressor.
    ///
    /// The normalized rule is undefined on an all-zero window; callers should
    /// skip adaptation for that sample.
    pub fn effective_mu(&self, x: &RegressorWindow) -> Result<f64, Error> {
        match *self {
            StepSizePolicy::ConstantMu { mu } => Ok(mu),
            StepSizePolicy::Normalized { alpha } => {
                let energy = x.energy();
                if energy > 0.0 {
                    Ok(alpha / energy)
                } else {
                    Err(Error::DegenerateRegressor)
                }
            }
        }
    }
}

/// Coefficient estimate plus an iteration counter.
#[derive(Debug, Clone, PartialEq)]
pub struct FilterState {
    w: Vec<f64>,
    n: u64,
}

impl FilterState {
    /// All-zero initial coefficients.
    pub fn zeros(len: usize) -> Self {
        FilterState {
            w: vec![0.0; len],
            n: 0,
        }
    }

    /// Start from explicit coefficients.
    pub fn from_coefficients(w: Vec<f64>) -> Self {
        FilterState { w, n: 0 }
    }

    pub fn len(&self) -> usize {
        self.w.len()
    }

    pub fn is_empty(&self) -> bool {
        self.w.is_empty()
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.w
    }

    /// Number of completed update steps.
    pub fn iteration(&self) -> u64 {
        self.n
    }

    fn check_len(&self, len: usize) -> Result<(), Error> {
        if len != self.w.len() {
            return Err(Error::DimensionMismatch {
                expected: self.w.len(),
                actual: len,
            });
        }
        Ok(())
    }

    /// Filter output `w^T x`.
    pub fn predict(&self, x: &RegressorWindow) -> Result<f64, Error> {
        self.check_len(x.len())?;
        Ok(dot(&self.w, x.as_slice()))
    }

    /// One conventional LMS step. Returns the a-priori error
    /// `e = y - w^T x`; the coefficients move by `mu_n * e * x`.
    pub fn lms_step(
        &mut self,
        x: &RegressorWindow,
        y: f64,
        policy: &StepSizePolicy,
    ) -> Result<f64, Error> {
        self.check_len(x.len())?;
        let mu = policy.effective_mu(x)?;
        let e = y - dot(&self.w, x.as_slice());
        self.apply_update(x.as_slice(), mu * e, None);
        Ok(e)
    }

    /// One regularized step: `w += mu_n * e * x - rho * g` with the
    /// subgradient `g` and reweighting coefficients taken at the current
    /// estimate. With `rho == 0` this is exactly [`FilterState::lms_step`],
    /// bit for bit.
    pub fn regularized_step(
        &mut self,
        x: &RegressorWindow,
        y: f64,
        policy: &StepSizePolicy,
        penalty: &Penalty,
        rho: f64,
    ) -> Result<f64, Error> {
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::InvalidParameter("rho must be finite and nonnegative"));
        }
        if rho == 0.0 {
            return self.lms_step(x, y, policy);
        }
        let weights = penalty.compute_weights(&self.w)?;
        let subgrad = penalty.subgradient(&weights, &self.w)?;
        self.step_with_subgradient(x, y, policy, &subgrad, rho)
    }

    /// Regularized step with a subgradient already computed at the current
    /// estimate. Both update terms are applied simultaneously.
    pub fn step_with_subgradient(
        &mut self,
        x: &RegressorWindow,
        y: f64,
        policy: &StepSizePolicy,
        subgrad: &[f64],
        rho: f64,
    ) -> Result<f64, Error> {
        self.check_len(x.len())?;
        self.check_len(subgrad.len())?;
        if !(rho >= 0.0) || !rho.is_finite() {
            return Err(Error::InvalidParameter("rho must be finite and nonnegative"));
        }
        let mu = policy.effective_mu(x)?;
        let e = y - dot(&self.w, x.as_slice());
        let shrink = if rho > 0.0 { Some((rho, subgrad)) } else { None };
        self.apply_update(x.as_slice(), mu * e, shrink);
        Ok(e)
    }

    fn apply_update(&mut self, x: &[f64], e_scale: f64, shrink: Option<(f64, &[f64])>) {
        match shrink {
            None => {
                for (w, &xi) in self.w.iter_mut().zip(x) {
                    *w += e_scale * xi;
                }
            }
            Some((rho, g)) => {
                for ((w, &xi), &gi) in self.w.iter_mut().zip(x).zip(g) {
                    *w += e_scale * xi - rho * gi;
                }
            }
        }
        self.n += 1;
    }
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::penalty::Penalty;

    #[test]
    fn predict_inner_product() {
        let s = FilterState::from_coefficients(vec![1.0, 2.0]);
        let x = RegressorWindow::from_samples(&[3.0, 4.0]);
        assert_eq!(s.predict(&x).unwrap(), 11.0);

        let z = FilterState::zeros(2);
        assert_eq!(z.predict(&x).unwrap(), 0.0);

        let s = FilterState::from_coefficients(vec![0.5, -1.0, 0.0]);
        let x = RegressorWindow::from_samples(&[2.0, 2.0, 9.0]);
        assert_eq!(s.predict(&x).unwrap(), -1.0);
    }

    #[test]
    fn effective_mu_constant_and_normalized() {
        let x = RegressorWindow::from_samples(&[3.0, 4.0]);
        let c = StepSizePolicy::constant(0.05).unwrap();
        assert_eq!(c.effective_mu(&x).unwrap(), 0.05);

        let n = StepSizePolicy::normalized(1.0).unwrap();
        assert_eq!(n.effective_mu(&x).unwrap(), 0.04);

        let zero = RegressorWindow::new(2);
        assert_eq!(n.effective_mu(&zero), Err(Error::DegenerateRegressor));
        assert_eq!(c.effective_mu(&zero).unwrap(), 0.05);
    }

    #[test]
    fn invalid_step_sizes_rejected() {
        assert!(StepSizePolicy::constant(0.0).is_err());
        assert!(StepSizePolicy::constant(-0.1).is_err());
        assert!(StepSizePolicy::normalized(f64::INFINITY).is_err());
    }

    #[test]
    fn lms_step_hand_example() {
        let mut s = FilterState::zeros(2);
        let x = RegressorWindow::from_samples(&[1.0, 0.0]);
        let policy = StepSizePolicy::constant(0.5).unwrap();
        let e = s.lms_step(&x, 1.0, &policy).unwrap();
        assert_eq!(e, 1.0);
        assert_eq!(s.coefficients(), &[0.5, 0.0]);
        assert_eq!(s.iteration(), 1);
    }

    #[test]
    fn perfect_prediction_leaves_coefficients() {
        let mut s = FilterState::from_coefficients(vec![2.0, -1.0]);
        let x = RegressorWindow::from_samples(&[1.0, 3.0]);
        let policy = StepSizePolicy::constant(0.1).unwrap();
        let e = s.lms_step(&x, -1.0, &policy).unwrap();
        assert_eq!(e, 0.0);
        assert_eq!(s.coefficients(), &[2.0, -1.0]);
    }

    #[test]
    fn nlms_unit_alpha_projects_onto_data() {
        let mut s = FilterState::zeros(2);
        let x = RegressorWindow::from_samples(&[1.0, 1.0]);
        let policy = StepSizePolicy::normalized(1.0).unwrap();
        let e = s.lms_step(&x, 2.0, &policy).unwrap();
        assert_eq!(e, 2.0);
        assert_eq!(s.coefficients(), &[1.0, 1.0]);
        // a-posteriori error vanishes
        let post = 2.0 - s.predict(&x).unwrap();
        assert!(post.abs() < 1e-15);
    }

    #[test]
    fn zero_rho_is_bitwise_lms() {
        let penalty = Penalty::weighted_l1(3);
        let policy = StepSizePolicy::normalized(0.7).unwrap();
        let mut a = FilterState::from_coefficients(vec![0.2, -0.4, 1.0]);
        let mut b = a.clone();
        let x = RegressorWindow::from_samples(&[0.3, -1.2, 0.05]);
        let ea = a.lms_step(&x, 0.9, &policy).unwrap();
        let eb = b.regularized_step(&x, 0.9, &policy, &penalty, 0.0).unwrap();
        assert_eq!(ea.to_bits(), eb.to_bits());
        for (wa, wb) in a.coefficients().iter().zip(b.coefficients()) {
            assert_eq!(wa.to_bits(), wb.to_bits());
        }
    }

    #[test]
    fn regularized_step_zero_regressor_pure_shrink() {
        let mut s = FilterState::from_coefficients(vec![1.0, -1.0]);
        let x = RegressorWindow::new(2);
        let policy = StepSizePolicy::constant(0.1).unwrap();
        let penalty = Penalty::l1(2);
        let e = s.regularized_step(&x, 0.0, &policy, &penalty, 0.2).unwrap();
        assert_eq!(e, 0.0);
        let w = s.coefficients();
        assert!((w[0] - 0.8).abs() < 1e-15);
        assert!((w[1] + 0.8).abs() < 1e-15);
    }

    #[test]
    fn raw_subgradient_step_can_cross_zero() {
        // unlike soft thresholding, the raw step may flip a coefficient's sign
        let mut s = FilterState::from_coefficients(vec![0.3, 0.0]);
        let x = RegressorWindow::new(2);
        let policy = StepSizePolicy::constant(0.1).unwrap();
        let penalty = Penalty::l1(2);
        s.regularized_step(&x, 0.0, &policy, &penalty, 0.5).unwrap();
        let w = s.coefficients();
        assert!((w[0] + 0.2).abs() < 1e-15);
        assert_eq!(w[1], 0.0);
    }

    #[test]
    fn negative_rho_rejected() {
        let mut s = FilterState::zeros(2);
        let x = RegressorWindow::from_samples(&[1.0, 0.0]);
        let policy = StepSizePolicy::constant(0.1).unwrap();
        let penalty = Penalty::l1(2);
        assert!(s.regularized_step(&x, 1.0, &policy, &penalty, -0.1).is_err());
    }

    #[test]
    fn degenerate_regressor_leaves_state_untouched() {
        let mut s = FilterState::from_coefficients(vec![0.5, 0.5]);
        let x = RegressorWindow::new(2);
        let policy = StepSizePolicy::normalized(1.0).unwrap();
        assert_eq!(
            s.lms_step(&x, 1.0, &policy),
            Err(Error::DegenerateRegressor)
        );
        assert_eq!(s.coefficients(), &[0.5, 0.5]);
        assert_eq!(s.iteration(), 0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let mut s = FilterState::zeros(3);
        let x = RegressorWindow::new(2);
        let policy = StepSizePolicy::constant(0.1).unwrap();
        assert!(s.predict(&x).is_err());
        assert!(s.lms_step(&x, 1.0, &policy).is_err());
    }

    #[test]
    fn window_shift_register_semantics() {
        let mut x = RegressorWindow::new(3);
        x.push(1.0);
        x.push(2.0);
        assert_eq!(x.as_slice(), &[2.0, 1.0, 0.0]);
        x.push(3.0);
        x.push(4.0);
        assert_eq!(x.as_slice(), &[4.0, 3.0, 2.0]);
        assert_eq!(x.energy(), 29.0);
    }

    #[test]
    fn update_term_matches_central_difference_gradient() {
        // oracle: the LMS term must equal -mu * dL/dw with L = e^2/2,
        // checked against central finite differences
        let w0 = [0.4, -1.1, 0.7, 0.05];
        let x = RegressorWindow::from_samples(&[1.3, -0.2, 0.8, -2.0]);
        let y = 0.65;
        let mu = 0.05;
        let policy = StepSizePolicy::constant(mu).unwrap();

        let loss = |w: &[f64]| {
            let e = y - dot(w, x.as_slice());
            0.5 * e * e
        };

        let mut s = FilterState::from_coefficients(w0.to_vec());
        s.lms_step(&x, y, &policy).unwrap();

        let h = 1e-6;
        for i in 0..w0.len() {
            let mut wp = w0;
            let mut wm = w0;
            wp[i] += h;
            wm[i] -= h;
            let grad = (loss(&wp) - loss(&wm)) / (2.0 * h);
            let applied = s.coefficients()[i] - w0[i];
            let expected = -mu * grad;
            let rel = (applied - expected).abs() / expected.abs().max(1e-12);
            assert!(rel < 1e-6, "tap {i}: applied {applied}, expected {expected}");
        }
    }
}
