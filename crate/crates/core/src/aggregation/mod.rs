//! Solvers over the set of surjective maps onto `m` symbols.
//!
//! Every map `f` is represented by the partition of input positions it
//! induces; the distribution of `f(X)` is the vector of block sums.

mod huffman;
mod partition;

pub use huffman::{huffman_max_aggregation, HuffmanTrace, MergeStep};
pub use partition::{for_each_rgs, stirling2, Partition};

use serde::Serialize;

use crate::dist::{entropy_of, Dist, Entropy};
use crate::error::{Error, Result};
use crate::reduction::{check_m, q_operator};

/// Default support-size cap for the exhaustive solver.
pub const DEFAULT_EXACT_CAP: usize = 12;

/// What a solver certifies about its answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Guarantee {
    Exact,
    AdditiveAlpha,
}

/// An aggregation of `p` together with the partition producing it.
///
/// `partition.blocks()[k]` sums to `dist.probs()[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AggregationResult {
    pub partition: Partition,
    pub dist: Dist,
    pub h: Entropy,
    pub guarantee: Guarantee,
}

impl AggregationResult {
    pub(crate) fn from_partition(
        p: &Dist,
        partition: Partition,
        guarantee: Guarantee,
    ) -> Result<Self> {
        let (partition, sums) = partition.sorted_by_mass(p)?;
        Self::from_aligned(partition, &sums, guarantee)
    }

    /// `sums` must already be non-increasing and aligned with the blocks.
    pub(crate) fn from_aligned(
        partition: Partition,
        sums: &[f64],
        guarantee: Guarantee,
    ) -> Result<Self> {
        let dist = Dist::new(sums)?;
        debug_assert!(dist.order().iter().enumerate().all(|(k, &i)| k == i));
        let h = dist.entropy();
        Ok(AggregationResult {
            partition,
            dist,
            h,
            guarantee,
        })
    }
}

/// Distribution of `f(X)`: block sums of `p`, re-sorted.
pub fn aggregate(p: &Dist, partition: &Partition) -> Result<Dist> {
    Dist::new(&partition.block_sums(p)?)
}

/// Exhaustive maximum-entropy aggregation with the default cap.
pub fn exact_max_aggregation(p: &Dist, m: usize) -> Result<AggregationResult> {
    exact_max_aggregation_capped(p, m, DEFAULT_EXACT_CAP)
}

/// Exhaustive maximum-entropy aggregation over all `S(n, m)` partitions.
///
/// Ties go to the lexicographically smallest restricted growth string over
/// input positions.
pub fn exact_max_aggregation_capped(p: &Dist, m: usize, cap: usize) -> Result<AggregationResult> {
    let n = p.len();
    check_m(m, n)?;
    if n > cap {
        return Err(Error::TooLarge { size: n, cap });
    }
    let masses = p.original_probs();
    let mut sums = vec![0.0; m];
    let mut best_h = f64::NEG_INFINITY;
    let mut best_labels = Vec::new();
    for_each_rgs(n, m, |labels| {
        sums.iter_mut().for_each(|s| *s = 0.0);
        for (&l, &x) in labels.iter().zip(&masses) {
            sums[l] += x;
        }
        let h = entropy_of(&sums);
        if h > best_h + 1e-12 {
            best_h = h;
            best_labels = labels.to_vec();
        }
    });
    let partition = Partition::from_labels(&best_labels)?;
    AggregationResult::from_partition(p, partition, Guarantee::Exact)
}

/// The minimum-entropy aggregation, which has a closed form.
pub fn exact_min_aggregation(p: &Dist, m: usize) -> Result<AggregationResult> {
    let (_, partition) = q_operator(p, m)?;
    AggregationResult::from_partition(p, partition, Guarantee::Exact)
}
