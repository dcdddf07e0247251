//! Prefix-sum majorization between distributions of possibly different length.

use serde::Serialize;

use crate::dist::{Dist, EPS_SUM};

/// Outcome of a majorization check `a ⪯ b`.
///
/// `first_violating_prefix` is the 1-based length of the first prefix whose
/// sum in `a` exceeds the one in `b` by more than `EPS_SUM`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MajorizationVerdict {
    pub majorized: bool,
    pub first_violating_prefix: Option<usize>,
}

impl MajorizationVerdict {
    pub fn holds(self) -> bool {
        self.majorized
    }
}

/// Checks whether `a` is majorized by `b`; the shorter one is zero-padded.
pub fn majorizes(a: &Dist, b: &Dist) -> MajorizationVerdict {
    majorized_by(a.probs(), b.probs())
}

/// Slice form of [`majorizes`]; both inputs must already be sorted
/// non-increasing.
pub fn majorized_by(a: &[f64], b: &[f64]) -> MajorizationVerdict {
    let len = a.len().max(b.len());
    let (mut sa, mut sb) = (0.0, 0.0);
    for k in 0..len {
        sa += a.get(k).copied().unwrap_or(0.0);
        sb += b.get(k).copied().unwrap_or(0.0);
        if sa > sb + EPS_SUM {
            return MajorizationVerdict {
                majorized: false,
                first_violating_prefix: Some(k + 1),
            };
        }
    }
    MajorizationVerdict {
        majorized: true,
        first_violating_prefix: None,
    }
}
