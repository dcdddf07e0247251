//! Validated finite distributions and Shannon entropy in bits.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for normalization and all probability comparisons.
pub const EPS_SUM: f64 = 1e-9;

/// The universal additive gap `1 - (1 + ln ln 2) / ln 2`.
pub fn alpha() -> f64 {
    let ln2 = std::f64::consts::LN_2;
    1.0 - (1.0 + ln2.ln()) / ln2
}

/// Entropy in bits.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Entropy(pub f64);

impl Entropy {
    pub fn bits(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Entropy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

/// `-sum x log2 x` over a slice, with `0 log 0 = 0`.
pub fn entropy_of(values: &[f64]) -> f64 {
    let h: f64 = values
        .iter()
        .filter(|&&x| x > 0.0)
        .map(|&x| -x * x.log2())
        .sum();
    // Clamp the -0.0 / tiny negative results that a point mass can produce.
    h.max(0.0)
}

/// A finite probability distribution, stored sorted non-increasing.
///
/// The sort is stable, so ties keep their input order. `order[k]` is the
/// input position of the `k`-th largest entry; partitions produced by the
/// solvers refer to those input positions.
#[derive(Debug, Clone, PartialEq)]
pub struct Dist {
    probs: Vec<f64>,
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl Dist {
    /// Validates and canonicalizes a raw probability vector.
    pub fn new(raw: &[f64]) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Empty);
        }
        let mut values = Vec::with_capacity(raw.len());
        for (index, &value) in raw.iter().enumerate() {
            if !value.is_finite() {
                return Err(Error::NonFinite { index });
            }
            if value < -EPS_SUM {
                return Err(Error::NegativeMass { index, value });
            }
            values.push(value.max(0.0));
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > EPS_SUM {
            return Err(Error::NotNormalized { sum });
        }

        let mut order: Vec<usize> = (0..values.len()).collect();
        order.sort_by(|&a, &b| values[b].total_cmp(&values[a]));
        let probs = order.iter().map(|&i| values[i]).collect();
        let mut rank = vec![0; order.len()];
        for (k, &i) in order.iter().enumerate() {
            rank[i] = k;
        }
        Ok(Dist { probs, order, rank })
    }

    /// Uniform distribution on `n` points.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Dist::new(&vec![1.0 / n as f64; n])
    }

    /// Support size, zero entries included.
    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Entries sorted non-increasing.
    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    /// Largest entry.
    pub fn max(&self) -> f64 {
        self.probs[0]
    }

    /// Smallest entry.
    pub fn min(&self) -> f64 {
        self.probs[self.probs.len() - 1]
    }

    /// Input position of the `k`-th largest entry.
    pub fn original_index(&self, k: usize) -> usize {
        self.order[k]
    }

    /// Input positions in sorted order.
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Mass of the entry that sat at input position `i`.
    pub fn mass_at(&self, i: usize) -> f64 {
        self.probs[self.rank[i]]
    }

    /// The entries in their original input order.
    pub fn original_probs(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.mass_at(i)).collect()
    }

    pub fn entropy(&self) -> Entropy {
        Entropy(entropy_of(&self.probs))
    }

    /// True when every entry is within `EPS_SUM` of `1/n`.
    pub fn is_uniform(&self) -> bool {
        let u = 1.0 / self.len() as f64;
        (self.max() - u).abs() <= EPS_SUM && (self.min() - u).abs() <= EPS_SUM
    }
}

/// Convenience wrapper for [`Dist::new`].
pub fn make_dist(raw: &[f64]) -> Result<Dist> {
    Dist::new(raw)
}

/// Entropy of a validated distribution.
pub fn entropy(d: &Dist) -> Entropy {
    d.entropy()
}
