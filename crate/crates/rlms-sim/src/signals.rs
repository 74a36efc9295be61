//! Input processes, observation noise, and (time-varying) true systems.

use rand::Rng;
use rand_distr::StandardNormal;
use rlms_core::RegressorWindow;

use crate::error::SimError;

/// Sudden change applied to the true system mid-run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TrackingEvent {
    /// Move every coefficient `taps` positions toward index 0; coefficients
    /// shifted past the boundary are dropped, vacated taps become zero.
    ShiftLeft { taps: usize },
    /// Move every coefficient `taps` positions toward the end, clipping at
    /// the boundary.
    ShiftRight { taps: usize },
    /// Redraw the values on the current support from a standard Gaussian;
    /// the support itself is unchanged.
    ResetActiveValues,
}

/// True impulse response plus a schedule of tracking events.
#[derive(Debug, Clone, PartialEq)]
pub struct SystemModel {
    w: Vec<f64>,
    events: Vec<(u64, TrackingEvent)>,
}

impl SystemModel {
    pub fn from_coefficients(w: Vec<f64>) -> Self {
        SystemModel {
            w,
            events: Vec::new(),
        }
    }

    /// Sparse system with exactly `k` nonzero taps at uniformly random
    /// distinct locations, values drawn from a standard Gaussian.
    pub fn general_sparse<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<Self, SimError> {
        if k > n {
            return Err(SimError::Config(format!(
                "cannot place {k} active taps in a length-{n} system"
            )));
        }
        let mut w = vec![0.0; n];
        let locations = rand::seq::index::sample(rng, n, k);
        for i in locations {
            w[i] = rng.sample(StandardNormal);
        }
        Ok(SystemModel::from_coefficients(w))
    }

    /// Group-sparse system: standard-Gaussian values exactly on the union of
    /// the `(start, length)` blocks, zero elsewhere.
    pub fn group_sparse<R: Rng>(
        n: usize,
        blocks: &[(usize, usize)],
        rng: &mut R,
    ) -> Result<Self, SimError> {
        let mut w = vec![0.0; n];
        let mut used = vec![false; n];
        for &(start, len) in blocks {
            let end = start.checked_add(len).filter(|&e| e <= n).ok_or_else(|| {
                SimError::Config(format!(
                    "block ({start}, {len}) exceeds the system length {n}"
                ))
            })?;
            for i in start..end {
                if used[i] {
                    return Err(SimError::Config(format!(
                        "blocks overlap at tap {i}"
                    )));
                }
                used[i] = true;
                w[i] = rng.sample(StandardNormal);
            }
        }
        Ok(SystemModel::from_coefficients(w))
    }

    /// Attach the event schedule (sorted by iteration).
    pub fn with_events(mut self, mut events: Vec<(u64, TrackingEvent)>) -> Self {
        events.sort_by_key(|&(iter, _)| iter);
        self.events = events;
        self
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

    pub fn events(&self) -> &[(u64, TrackingEvent)] {
        &self.events
    }

    /// Number of nonzero taps.
    pub fn support_size(&self) -> usize {
        self.w.iter().filter(|&&v| v != 0.0).count()
    }

    /// Apply one tracking event in place.
    pub fn apply_event<R: Rng>(&mut self, event: &TrackingEvent, rng: &mut R) {
        let n = self.w.len();
        match *event {
            TrackingEvent::ShiftLeft { taps } => {
                let mut shifted = vec![0.0; n];
                for i in 0..n.saturating_sub(taps) {
                    shifted[i] = self.w[i + taps];
                }
                self.w = shifted;
            }
            TrackingEvent::ShiftRight { taps } => {
                let mut shifted = vec![0.0; n];
                for i in 0..n.saturating_sub(taps) {
                    shifted[i + taps] = self.w[i];
                }
                self.w = shifted;
            }
            TrackingEvent::ResetActiveValues => {
                for v in self.w.iter_mut() {
                    if *v != 0.0 {
                        *v = rng.sample(StandardNormal);
                    }
                }
            }
        }
    }
}

/// Observation-noise model: zero-mean Gaussian with the given variance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoiseProcess {
    pub variance: f64,
}

impl NoiseProcess {
    pub fn sample<R: Rng>(&self, rng: &mut R) -> f64 {
        let z: f64 = rng.sample(StandardNormal);
        z * self.variance.sqrt()
    }
}

/// Desired output `y = w^T x + v`, with the noise drawn from its own stream.
pub fn desired_output<R: Rng>(
    system: &SystemModel,
    x: &RegressorWindow,
    noise: &NoiseProcess,
    rng: &mut R,
) -> Result<f64, SimError> {
    if x.len() != system.len() {
        return Err(SimError::Core(rlms_core::Error::DimensionMismatch {
            expected: system.len(),
            actual: x.len(),
        }));
    }
    let clean: f64 = system
        .coefficients()
        .iter()
        .zip(x.as_slice())
        .map(|(&w, &xi)| w * xi)
        .sum();
    Ok(clean + noise.sample(rng))
}

/// Input-signal model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InputProcess {
    /// i.i.d. zero-mean Gaussian samples.
    WhiteGaussian { variance: f64 },
    /// First-order autoregression `x_n = a x_{n-1} + u_n` with standard
    /// Gaussian innovations. With `normalize` set, emitted samples are scaled
    /// by `sqrt(1 - a^2)` so the stationary variance is exactly 1.
    Ar1 { a: f64, normalize: bool },
}

/// Stateful sample generator for an [`InputProcess`].
///
/// The autoregressive state is initialized from its stationary distribution,
/// so there is no warm-up transient.
#[derive(Debug, Clone)]
pub struct InputStream<R: Rng> {
    process: InputProcess,
    prev: f64,
    rng: R,
}

impl<R: Rng> InputStream<R> {
    pub fn new(process: InputProcess, mut rng: R) -> Self {
        let prev = match process {
            InputProcess::WhiteGaussian { .. } => 0.0,
            InputProcess::Ar1 { a, .. } => {
                let z: f64 = rng.sample(StandardNormal);
                z / (1.0 - a * a).sqrt()
            }
        };
        InputStream { process, prev, rng }
    }

    pub fn next_sample(&mut self) -> f64 {
        match self.process {
            InputProcess::WhiteGaussian { variance } => {
                let z: f64 = self.rng.sample(StandardNormal);
                z * variance.sqrt()
            }
            InputProcess::Ar1 { a, normalize } => {
                let u: f64 = self.rng.sample(StandardNormal);
                let raw = a * self.prev + u;
                self.prev = raw;
                if normalize {
                    raw * (1.0 - a * a).sqrt()
                } else {
                    raw
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{trial_rng, StreamRole};

    #[test]
    fn general_sparse_support() {
        let mut rng = trial_rng(11, 0, StreamRole::Events);
        let sys = SystemModel::general_sparse(100, 5, &mut rng).unwrap();
        assert_eq!(sys.len(), 100);
        assert_eq!(sys.support_size(), 5);

        let empty = SystemModel::general_sparse(10, 0, &mut rng).unwrap();
        assert_eq!(empty.support_size(), 0);

        let dense = SystemModel::general_sparse(10, 10, &mut rng).unwrap();
        assert_eq!(dense.support_size(), 10);

        assert!(SystemModel::general_sparse(4, 5, &mut rng).is_err());
    }

    #[test]
    fn group_sparse_blocks() {
        let mut rng = trial_rng(12, 0, StreamRole::Events);
        let sys = SystemModel::group_sparse(200, &[(35, 15), (106, 15)], &mut rng).unwrap();
        assert_eq!(sys.support_size(), 30);
        let w = sys.coefficients();
        assert!(w[35..50].iter().all(|&v| v != 0.0));
        assert!(w[106..121].iter().all(|&v| v != 0.0));
        assert!(w[..35].iter().all(|&v| v == 0.0));
        assert!(w[50..106].iter().all(|&v| v == 0.0));
        assert!(w[121..].iter().all(|&v| v == 0.0));

        let zero = SystemModel::group_sparse(16, &[], &mut rng).unwrap();
        assert_eq!(zero.support_size(), 0);

        let dense = SystemModel::group_sparse(16, &[(0, 16)], &mut rng).unwrap();
        assert_eq!(dense.support_size(), 16);

        assert!(SystemModel::group_sparse(16, &[(10, 7)], &mut rng).is_err());
        assert!(SystemModel::group_sparse(16, &[(0, 4), (3, 4)], &mut rng).is_err());
    }

    #[test]
    fn shift_events_move_support() {
        let mut rng = trial_rng(13, 0, StreamRole::Events);
        let mut w = vec![0.0; 50];
        w[40] = 2.5;
        let mut sys = SystemModel::from_coefficients(w);
        sys.apply_event(&TrackingEvent::ShiftLeft { taps: 10 }, &mut rng);
        assert_eq!(sys.coefficients()[30], 2.5);
        assert_eq!(sys.support_size(), 1);

        // shifting past the boundary drops the coefficient
        let mut w = vec![0.0; 50];
        w[5] = 1.0;
        let mut sys = SystemModel::from_coefficients(w);
        sys.apply_event(&TrackingEvent::ShiftLeft { taps: 10 }, &mut rng);
        assert_eq!(sys.support_size(), 0);

        let mut w = vec![0.0; 50];
        w[45] = 1.0;
        w[3] = -1.0;
        let mut sys = SystemModel::from_coefficients(w);
        sys.apply_event(&TrackingEvent::ShiftRight { taps: 10 }, &mut rng);
        assert_eq!(sys.support_size(), 1);
        assert_eq!(sys.coefficients()[13], -1.0);
    }

    #[test]
    fn reset_keeps_support_changes_values() {
        let mut rng = trial_rng(14, 0, StreamRole::Events);
        let mut sys = SystemModel::group_sparse(40, &[(5, 6)], &mut rng).unwrap();
        let before = sys.coefficients().to_vec();
        sys.apply_event(&TrackingEvent::ResetActiveValues, &mut rng);
        let after = sys.coefficients();
        assert_eq!(sys.support_size(), 6);
        for i in 0..40 {
            if before[i] == 0.0 {
                assert_eq!(after[i], 0.0);
            } else {
                assert_ne!(after[i], before[i]);
            }
        }
    }

    #[test]
    fn events_sorted_by_iteration() {
        let sys = SystemModel::from_coefficients(vec![0.0; 4]).with_events(vec![
            (400, TrackingEvent::ResetActiveValues),
            (20, TrackingEvent::ShiftLeft { taps: 1 }),
        ]);
        assert_eq!(sys.events()[0].0, 20);
        assert_eq!(sys.events()[1].0, 400);
    }

    #[test]
    fn noiseless_output_is_inner_product() {
        let sys = SystemModel::from_coefficients(vec![1.0, 1.0]);
        let x = RegressorWindow::from_samples(&[2.0, 3.0]);
        let noise = NoiseProcess { variance: 0.0 };
        let mut rng = trial_rng(15, 0, StreamRole::Noise);
        let y = desired_output(&sys, &x, &noise, &mut rng).unwrap();
        assert_eq!(y, 5.0);

        let short = RegressorWindow::from_samples(&[1.0]);
        assert!(desired_output(&sys, &short, &noise, &mut rng).is_err());
    }

    #[test]
    fn ar1_with_zero_coefficient_is_white() {
        let a = InputStream::new(
            InputProcess::Ar1 {
                a: 0.0,
                normalize: true,
            },
            trial_rng(16, 0, StreamRole::Input),
        );
        let mut b = InputStream::new(
            InputProcess::WhiteGaussian { variance: 1.0 },
            trial_rng(16, 0, StreamRole::Input),
        );
        // same seed: the AR stream spends one draw on its initial state,
        // so compare distributional statistics rather than exact values
        let mut a = a;
        let n = 200_000;
        let (mut sa, mut sa2) = (0.0, 0.0);
        let (mut sb, mut sb2) = (0.0, 0.0);
        for _ in 0..n {
            let xa = a.next_sample();
            let xb = b.next_sample();
            sa += xa;
            sa2 += xa * xa;
            sb += xb;
            sb2 += xb * xb;
        }
        let va = sa2 / n as f64 - (sa / n as f64).powi(2);
        let vb = sb2 / n as f64 - (sb / n as f64).powi(2);
        assert!((va - vb).abs() < 0.02, "va={va}, vb={vb}");
        assert!((va - 1.0).abs() < 0.02);
    }
}
