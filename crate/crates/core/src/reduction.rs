//! The two closed-form operators bracketing the entropy of any aggregation
//! of `p` into `m` symbols.
//!
//! `R_m(p)` keeps the `i*` largest entries and spreads the remaining mass
//! evenly over the other `m - i*` slots; it is majorized by every
//! `m`-aggregation of `p`, so its entropy is an upper bound. `Q_m(p)` lumps
//! the `n - m + 1` largest entries together; it majorizes every
//! `m`-aggregation and attains the minimum entropy.

use serde::Serialize;

use crate::aggregation::Partition;
use crate::dist::{alpha, Dist, Entropy, EPS_SUM};
use crate::error::{Error, Result};

/// Entropy bracket for aggregations of `p` into `m` symbols.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundReport {
    /// `H(R_m(p))`, an upper bound on every aggregation.
    pub h_upper: Entropy,
    /// `H(Q_m(p))`, the minimum over all aggregations.
    pub h_lower_achievable: Entropy,
    pub alpha: f64,
    pub m: usize,
}

pub(crate) fn check_m(m: usize, n: usize) -> Result<()> {
    if m < 2 || m >= n {
        return Err(Error::BadM { m, n });
    }
    Ok(())
}

/// `tail[i] = sum of probs[i..]`, computed from the small end.
fn suffix_sums(probs: &[f64]) -> Vec<f64> {
    let mut tail = vec![0.0; probs.len() + 1];
    for i in (0..probs.len()).rev() {
        tail[i] = tail[i + 1] + probs[i];
    }
    tail
}

/// Largest 1-based `i` in `1..m` with `p_i >= (sum_{j>i} p_j) / (m - i)`.
pub fn i_star(p: &Dist, m: usize) -> Result<usize> {
    check_m(m, p.len())?;
    let threshold = 1.0 / m as f64;
    if p.max() < threshold {
        return Err(Error::Unreachable {
            p1: p.max(),
            threshold,
        });
    }
    Ok(i_star_unchecked(p.probs(), m, &suffix_sums(p.probs())))
}

fn i_star_unchecked(probs: &[f64], m: usize, tail: &[f64]) -> usize {
    // The condition holds on a prefix of 1..m, so scanning stops at the
    // first failure. i = 1 always qualifies when p_1 >= 1/m.
    let mut best = 1;
    for i in 2..m {
        if probs[i - 1] * (m - i) as f64 >= tail[i] - EPS_SUM {
            best = i;
        } else {
            break;
        }
    }
    best
}

/// `R_m(p)`: uniform on `m` points when `p_1 < 1/m`, otherwise the first
/// `i*` entries of `p` followed by `m - i*` copies of the average tail mass.
pub fn r_operator(p: &Dist, m: usize) -> Result<Dist> {
    check_m(m, p.len())?;
    if p.max() < 1.0 / m as f64 {
        return Dist::uniform(m);
    }
    let probs = p.probs();
    let tail = suffix_sums(probs);
    let cut = i_star_unchecked(probs, m, &tail);
    let t = tail[cut] / (m - cut) as f64;
    let mut r = probs[..cut].to_vec();
    r.resize(m, t);
    Dist::new(&r)
}

/// `Q_m(p)` and the partition witnessing it: the `n - m + 1` largest entries
/// in one block, the rest as singletons.
pub fn q_operator(p: &Dist, m: usize) -> Result<(Dist, Partition)> {
    let n = p.len();
    check_m(m, n)?;
    let lump = n - m + 1;
    let mut first: Vec<usize> = p.order()[..lump].to_vec();
    first.sort_unstable();
    let mut blocks = vec![first];
    blocks.extend(p.order()[lump..].iter().map(|&i| vec![i]));
    let partition = Partition::new(blocks)?;
    let probs = p.probs();
    let mut q = vec![probs[..lump].iter().sum::<f64>()];
    q.extend_from_slice(&probs[lump..]);
    Ok((Dist::new(&q)?, partition))
}

pub fn bound_report(p: &Dist, m: usize) -> Result<BoundReport> {
    let r = r_operator(p, m)?;
    let (q, _) = q_operator(p, m)?;
    Ok(BoundReport {
        h_upper: r.entropy(),
        h_lower_achievable: q.entropy(),
        alpha: alpha(),
        m,
    })
}
