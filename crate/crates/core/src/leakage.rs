//! The inner ball squeezed between the `2^N` unit balls packed in the
//! cube `[−1, 1]^N`.
//!
//! Each primary ball is centred at a point `(±1, …, ±1)`. The central ball
//! touching all of them has radius `√N − 1`. That radius exceeds the cube's
//! half-width 1 from `N = 5` on, and its volume as a fraction of the cube's
//! grows without bound.

use crate::ball::ball_volume;
use crate::scaled::{Dd, LogScaled, LN_2, LN_PI};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LeakageReport {
    pub dimension: u64,
    pub inner_radius: f64,
    pub ratio: LogScaled,
    pub leaks: bool,
}

impl LeakageReport {
    pub fn new(dimension: u64) -> Result<Self> {
        let inner_radius = inner_radius(dimension)?;
        Ok(LeakageReport {
            dimension,
            inner_radius,
            ratio: leakage_ratio(dimension)?,
            leaks: inner_radius > 1.0,
        })
    }
}

fn check(n: u64, min: u64) -> Result<()> {
    if n < min {
        return Err(Error::domain(format!("dimension must be at least {min}, got {n}")));
    }
    Ok(())
}

/// Radius `√N − 1` of the central ball, the simplified form of `√(N + 1 − 2√N)`.
pub fn inner_radius(n: u64) -> Result<f64> {
    check(n, 2)?;
    Ok((n as f64).sqrt() - 1.0)
}

/// `R_N`: central-ball volume over the cube volume `2^N`.
pub fn leakage_ratio(n: u64) -> Result<LogScaled> {
    let r = LogScaled::from_f64(inner_radius(n)?)?;
    let ln = r
        .ln_dd()
        .scale(n as f64)
        .add(ball_volume(n)?.ln_dd())
        .sub(LN_2.scale(n as f64));
    Ok(LogScaled::positive(ln))
}

/// Smallest dimension whose central ball pokes out of the cube.
pub fn first_leak_dimension() -> u64 {
    (2..)
        .find(|&n| inner_radius(n).map(|r| r > 1.0).unwrap_or(false))
        .expect("radius is unbounded")
}

/// Smallest `N ≥ 2` with `R_N > threshold`.
pub fn first_ratio_exceeding(threshold: f64) -> Result<u64> {
    if !(threshold.is_finite() && threshold > 0.0) {
        return Err(Error::domain(format!("threshold must be positive and finite, got {threshold}")));
    }
    let t = LogScaled::from_f64(threshold)?;
    for n in 2.. {
        if leakage_ratio(n)? > t {
            return Ok(n);
        }
    }
    unreachable!()
}

/// `(πe/2)^{N/2} · N^{−1/2} · e^{1/2} / √π`, the closing growth form of the
/// divergence argument, evaluated as written.
///
/// `R_N` is smaller than this by a factor close to `e^{−√N − 1}` because
/// `(1 − 1/√N)^N` does not tend to a constant.
pub fn growth_envelope(n: u64) -> Result<LogScaled> {
    check(n, 3)?;
    let nf = n as f64;
    // ln(πe/2) = ln π + 1 − ln 2
    let base = LN_PI.add(Dd::from_f64(1.0)).sub(LN_2);
    let ln = base
        .scale(nf / 2.0)
        .sub(Dd::ln_of(nf).scale(0.5))
        .add(Dd::from_f64(0.5))
        .sub(LN_PI.scale(0.5));
    Ok(LogScaled::positive(ln))
}
