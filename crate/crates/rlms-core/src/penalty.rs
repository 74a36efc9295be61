//! Convex sparsity penalties, their subgradients, and reweighting coefficients.
//!
//! Every penalty has the form `f(w) = sum_j beta_j * ||w_{I_j}||_2` over a
//! partition `{I_j}` of the tap indices. The scalar kinds use the implied
//! all-singleton partition, so the sum collapses to a (weighted) l1 norm;
//! the group kinds sum weighted l2 norms of group subvectors (the mixed
//! l1,2 norm). For the reweighted kinds the coefficients
//! `beta_j = 1 / (||w_ref_{I_j}||_2 + delta)` are recomputed once per
//! iteration at the current estimate and then frozen, which keeps `f`
//! convex in `w` during that step.
//!
//! Evaluation uses exact group norms. The subgradient of the group kinds
//! uses the delta-smoothed direction `w_{I_j} / (||w_{I_j}||_2 + delta)`,
//! which is the zero vector on an all-zero group; the scalar kinds use the
//! component-wise sign with `sgn(0) = 0`.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;

/// Default smoothing constant for reweighting and group directions.
pub const DEFAULT_DELTA: f64 = 0.01;

#[inline]
fn fabs(x: f64) -> f64 {
    libm::fabs(x)
}

/// Component-wise sign with `sgn(0) = 0`.
#[inline]
pub fn sgn(x: f64) -> f64 {
    if x > 0.0 {
        1.0
    } else if x < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// l2 norm of the subvector of `w` indexed by `idx`.
///
/// A singleton group is computed as `|w_i|` directly so that singleton
/// partitions reproduce the scalar kinds bit for bit.
pub(crate) fn group_norm(w: &[f64], idx: &[usize]) -> f64 {
    if let [i] = idx {
        return fabs(w[*i]);
    }
    let sum_sq: f64 = idx.iter().map(|&i| w[i] * w[i]).sum();
    libm::sqrt(sum_sq)
}

/// Partition of the tap indices `{0, …, N−1}` into disjoint covering groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupPartition {
    groups: Vec<Vec<usize>>,
    len: usize,
}

impl GroupPartition {
    /// Partition into `len` singleton groups `{0}, {1}, …`.
    pub fn singletons(len: usize) -> Self {
        GroupPartition {
            groups: (0..len).map(|i| vec![i]).collect(),
            len,
        }
    }

    /// Partition into `count` equal contiguous blocks.
    pub fn equal_groups(len: usize, count: usize) -> Result<Self, Error> {
        if count == 0 || len == 0 || len % count != 0 {
            return Err(Error::InvalidPartition(
                "group count must be positive and divide the filter length",
            ));
        }
        let size = len / count;
        let groups = (0..count)
            .map(|j| (j * size..(j + 1) * size).collect())
            .collect();
        Ok(GroupPartition { groups, len })
    }

    /// Build a partition from explicit index sets.
    ///
    /// Groups may be arbitrary (non-contiguous) index sets, but they must be
    /// non-empty, pairwise disjoint, and cover `{0, …, len−1}` exactly.
    pub fn new(len: usize, groups: Vec<Vec<usize>>) -> Result<Self, Error> {
        if len == 0 {
            return Err(Error::InvalidPartition("filter length must be positive"));
        }
        let mut seen = vec![false; len];
        let mut covered = 0usize;
        for group in &groups {
            if group.is_empty() {
                return Err(Error::InvalidPartition("groups must be non-empty"));
            }
            for &i in group {
                if i >= len {
                    return Err(Error::InvalidPartition("group index out of range"));
                }
                if seen[i] {
                    return Err(Error::InvalidPartition("groups must be disjoint"));
                }
                seen[i] = true;
                covered += 1;
            }
        }
        if covered != len {
            return Err(Error::InvalidPartition(
                "groups must cover every tap index",
            ));
        }
        Ok(GroupPartition { groups, len })
    }

    /// Number of taps covered by the partition.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Number of groups `J`.
    pub fn num_groups(&self) -> usize {
        self.groups.len()
    }

    pub fn groups(&self) -> &[Vec<usize>] {
        &self.groups
    }

    pub fn is_all_singletons(&self) -> bool {
        self.groups.iter().all(|g| g.len() == 1)
    }
}

/// Which of the four penalty families to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PenaltyKind {
    /// Plain l1 norm (ZA family).
    L1,
    /// Reweighted l1 with `beta_i = 1/(|w_i| + delta)` (RZA family).
    WeightedL1,
    /// Mixed l1,2 norm over a group partition (GZA family).
    GroupL12,
    /// Reweighted l1,2 with `beta_j = 1/(||w_j|| + delta)` (GRZA family).
    WeightedGroupL12,
}

impl PenaltyKind {
    /// True for the reweighted kinds whose coefficients depend on the estimate.
    pub fn is_weighted(self) -> bool {
        matches!(self, PenaltyKind::WeightedL1 | PenaltyKind::WeightedGroupL12)
    }

    /// True for the kinds that operate on group subvectors.
    pub fn is_grouped(self) -> bool {
        matches!(self, PenaltyKind::GroupL12 | PenaltyKind::WeightedGroupL12)
    }
}

/// Per-group reweighting coefficients, frozen for the duration of one step.
///
/// Every entry is strictly positive; coefficients produced by
/// [`Penalty::compute_weights`] are additionally bounded by `1/delta`.
#[derive(Debug, Clone, PartialEq)]
pub struct Weights {
    beta: Vec<f64>,
}

impl Weights {
    /// All-ones weights for `count` groups.
    pub fn unit(count: usize) -> Self {
        Weights {
            beta: vec![1.0; count],
        }
    }

    /// Wrap explicit weight values, which must be finite and positive.
    pub fn from_values(beta: Vec<f64>) -> Result<Self, Error> {
        if beta.iter().any(|&b| !(b > 0.0) || !b.is_finite()) {
            return Err(Error::InvalidParameter(
                "weights must be finite and strictly positive",
            ));
        }
        Ok(Weights { beta })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.beta
    }

    pub fn len(&self) -> usize {
        self.beta.len()
    }

    pub fn is_empty(&self) -> bool {
        self.beta.is_empty()
    }
}

/// A tagged convex regularizer with its group partition and smoothing constant.
#[derive(Debug, Clone, PartialEq)]
pub struct Penalty {
    kind: PenaltyKind,
    partition: GroupPartition,
    delta: f64,
}

impl Penalty {
    /// Plain l1 penalty over `len` taps.
    pub fn l1(len: usize) -> Self {
        Penalty {
            kind: PenaltyKind::L1,
            partition: GroupPartition::singletons(len),
            delta: DEFAULT_DELTA,
        }
    }

    /// Reweighted l1 penalty over `len` taps.
    pub fn weighted_l1(len: usize) -> Self {
        Penalty {
            kind: PenaltyKind::WeightedL1,
            partition: GroupPartition::singletons(len),
            delta: DEFAULT_DELTA,
        }
    }

    /// Mixed l1,2 penalty over the given partition.
    pub fn group_l12(partition: GroupPartition) -> Self {
        Penalty {
            kind: PenaltyKind::GroupL12,
            partition,
            delta: DEFAULT_DELTA,
        }
    }

    /// Reweighted l1,2 penalty over the given partition.
    pub fn weighted_group_l12(partition: GroupPartition) -> Self {
        Penalty {
            kind: PenaltyKind::WeightedGroupL12,
            partition,
            delta: DEFAULT_DELTA,
        }
    }

    /// Replace the smoothing constant; `delta` must be finite and positive.
    pub fn with_delta(mut self, delta: f64) -> Result<Self, Error> {
        if !(delta > 0.0) || !delta.is_finite() {
            return Err(Error::InvalidParameter("delta must be finite and positive"));
        }
        self.delta = delta;
        Ok(self)
    }

    pub fn kind(&self) -> PenaltyKind {
        self.kind
    }

    pub fn partition(&self) -> &GroupPartition {
        &self.partition
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Filter length the penalty applies to.
    pub fn len(&self) -> usize {
        self.partition.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partition.is_empty()
    }

    pub fn num_groups(&self) -> usize {
        self.partition.num_groups()
    }

    fn check_len(&self, w: &[f64]) -> Result<(), Error> {
        if w.len() != self.partition.len() {
            return Err(Error::DimensionMismatch {
                expected: self.partition.len(),
                actual: w.len(),
            });
        }
        Ok(())
    }

    fn check_weights(&self, weights: &Weights) -> Result<(), Error> {
        if weights.len() != self.num_groups() {
            return Err(Error::DimensionMismatch {
                expected: self.num_groups(),
                actual: weights.len(),
            });
        }
        Ok(())
    }

    /// Reweighting coefficients at the reference estimate `w_ref`.
    ///
    /// Unweighted kinds return all-ones. The weighted kinds return
    /// `1/(|w_i| + delta)` per tap, respectively `1/(||w_j|| + delta)` per
    /// group, so every entry lies in `(0, 1/delta]`.
    pub fn compute_weights(&self, w_ref: &[f64]) -> Result<Weights, Error> {
        self.check_len(w_ref)?;
        let beta = match self.kind {
            PenaltyKind::L1 | PenaltyKind::GroupL12 => vec![1.0; self.num_groups()],
            PenaltyKind::WeightedL1 => w_ref
                .iter()
                .map(|&w| 1.0 / (fabs(w) + self.delta))
                .collect(),
            PenaltyKind::WeightedGroupL12 => self
                .partition
                .groups()
                .iter()
                .map(|g| 1.0 / (group_norm(w_ref, g) + self.delta))
                .collect(),
        };
        Ok(Weights { beta })
    }

    /// Penalty value `sum_j beta_j * ||w_{I_j}||_2` with exact group norms.
    pub fn evaluate(&self, weights: &Weights, w: &[f64]) -> Result<f64, Error> {
        self.check_len(w)?;
        self.check_weights(weights)?;
        let value = match self.kind {
            PenaltyKind::L1 | PenaltyKind::WeightedL1 => w
                .iter()
                .zip(&weights.beta)
                .map(|(&wi, &bi)| bi * fabs(wi))
                .sum(),
            PenaltyKind::GroupL12 | PenaltyKind::WeightedGroupL12 => self
                .partition
                .groups()
                .iter()
                .zip(&weights.beta)
                .map(|(g, &bj)| bj * group_norm(w, g))
                .sum(),
        };
        Ok(value)
    }

    /// Subgradient of the penalty at `w` under the frozen `weights`.
    ///
    /// Scalar kinds yield `beta_i * sgn(w_i)`; group kinds yield the
    /// delta-smoothed group direction `beta_j * w_{I_j}/(||w_{I_j}|| + delta)`,
    /// which is zero on an all-zero group.
    pub fn subgradient(&self, weights: &Weights, w: &[f64]) -> Result<Vec<f64>, Error> {
        self.check_len(w)?;
        self.check_weights(weights)?;
        let mut out = vec![0.0; w.len()];
        match self.kind {
            PenaltyKind::L1 | PenaltyKind::WeightedL1 => {
                for ((o, &wi), &bi) in out.iter_mut().zip(w).zip(&weights.beta) {
                    *o = bi * sgn(wi);
                }
            }
            PenaltyKind::GroupL12 | PenaltyKind::WeightedGroupL12 => {
                for (g, &bj) in self.partition.groups().iter().zip(&weights.beta) {
                    let scale = bj / (group_norm(w, g) + self.delta);
                    for &i in g {
                        out[i] = scale * w[i];
                    }
                }
            }
        }
        Ok(out)
    }
}
