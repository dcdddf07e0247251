//! Entropy lower bounds for distributions whose largest-to-smallest ratio is
//! bounded by `rho`, and the extremal majorant behind them.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::dist::{Dist, EPS_SUM};
use crate::error::{Error, Result};

/// `H(p) >= log2(n) - gap_bits` for every `p` on `n` points with
/// `p_1 / p_n <= rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RatioBound {
    pub n: usize,
    pub rho: f64,
    pub gap_bits: f64,
    pub lower_bound_bits: f64,
}

fn check_rho(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho < 1.0 {
        return Err(Error::BadRho(rho));
    }
    Ok(())
}

/// `(g - 1 - ln g) / ln 2` with `g = rho ln rho / (rho - 1)`; zero at `rho = 1`.
pub fn theorem2_gap(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    if rho == 1.0 {
        return Ok(0.0);
    }
    let delta = rho - 1.0;
    // g - 1 computed directly so the cancellation near rho = 1 stays benign.
    let u = (rho * delta.ln_1p() - delta) / delta;
    Ok(((u - u.ln_1p()) / LN_2).max(0.0))
}

pub fn ratio_bound(n: usize, rho: f64) -> Result<RatioBound> {
    if n == 0 {
        return Err(Error::Empty);
    }
    let gap_bits = theorem2_gap(rho)?;
    Ok(RatioBound {
        n,
        rho,
        gap_bits,
        lower_bound_bits: (n as f64).log2() - gap_bits,
    })
}

/// The majorant of `p` with `leading` entries equal to `rho * p_n`, one
/// `middle` entry, and the rest equal to `p_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ZRho {
    pub leading: usize,
    pub middle: f64,
    pub dist: Dist,
}

/// Builds `z_rho(p)`; see [`ZRho`].
pub fn z_rho(p: &Dist, rho: f64) -> Result<ZRho> {
    check_rho(rho)?;
    let n = p.len();
    let low = p.min();
    if low <= 0.0 {
        return Err(Error::ZeroMinimum);
    }
    let ratio = p.max() / low;
    if ratio > rho + EPS_SUM {
        return Err(Error::RatioViolated { ratio, rho });
    }
    if rho == 1.0 {
        return Ok(ZRho {
            leading: 0,
            middle: low,
            dist: p.clone(),
        });
    }

    let raw = (1.0 - n as f64 * low) / (low * (rho - 1.0));
    let leading = ((raw + 1e-9).floor().max(0.0) as usize).min(n - 1);
    let high = rho * low;
    let trailing = n - leading - 1;
    let middle = 1.0 - leading as f64 * high - trailing as f64 * low;

    let mut z = vec![high; leading];
    z.push(middle);
    z.resize(n, low);
    Ok(ZRho {
        leading,
        middle,
        dist: Dist::new(&z)?,
    })
}

/// Entropy gap of the earlier ratio bound: the `eps` solving
/// `1 + 2(e^eps - 1) + 2 sqrt(e^{2 eps} - e^eps) = rho`, by bisection.
pub fn prior_bound_epsilon(rho: f64) -> Result<f64> {
    check_rho(rho)?;
    let lhs = |eps: f64| {
        let e = eps.exp();
        1.0 + 2.0 * (e - 1.0) + 2.0 * (e * e - e).max(0.0).sqrt()
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    while lhs(hi) < rho {
        hi *= 2.0;
    }
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        if lhs(mid) < rho {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
