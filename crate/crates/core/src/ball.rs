//! Volumes and surface areas of Euclidean balls, in log domain.
//!
//! `ω_{N−1} = 2π^{N/2} / Γ(N/2)` is the area of the unit sphere in `R^N` and
//! `Ω_N = ω_{N−1} / N` the volume of the unit ball. Both decay
//! super-exponentially, so everything here returns [`LogScaled`]. Use
//! [`LogScaled::to_plain`] to tell a tiny value from a lost one.

use crate::scaled::{lgamma_half, Dd, LogScaled, LN_2, LN_PI};
use crate::{Error, Result};

/// Which quantity a [`BallQuantity`] carries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Measure {
    Volume,
    SurfaceArea,
}

/// A volume or area of the radius-`R` ball in `R^N`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BallQuantity {
    pub dimension: u64,
    pub radius: f64,
    pub measure: Measure,
    pub value: LogScaled,
}

impl BallQuantity {
    pub fn volume(dimension: u64, radius: f64) -> Result<Self> {
        let value = ball_volume_radius(dimension, radius)?;
        Ok(BallQuantity { dimension, radius, measure: Measure::Volume, value })
    }

    pub fn area(dimension: u64, radius: f64) -> Result<Self> {
        let value = sphere_area_radius(dimension, radius)?;
        Ok(BallQuantity { dimension, radius, measure: Measure::SurfaceArea, value })
    }
}

fn check_dimension(n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    Ok(())
}

fn check_radius(r: f64) -> Result<()> {
    if !(r.is_finite() && r > 0.0) {
        return Err(Error::domain(format!("radius must be positive and finite, got {r}")));
    }
    Ok(())
}

/// `ω_{N−1} = 2π^{N/2} / Γ(N/2)`.
pub fn sphere_area(n: u64) -> Result<LogScaled> {
    check_dimension(n)?;
    let gamma = lgamma_half(n)?;
    let ln = LN_2.add(LN_PI.scale(n as f64 / 2.0)).sub(gamma.ln_dd());
    Ok(LogScaled::positive(ln))
}

/// `Ω_N = ω_{N−1} / N`.
pub fn ball_volume(n: u64) -> Result<LogScaled> {
    sphere_area(n)?.div(LogScaled::from_f64(n as f64)?)
}

/// `R^N · Ω_N`.
pub fn ball_volume_radius(n: u64, r: f64) -> Result<LogScaled> {
    check_radius(r)?;
    Ok(ball_volume(n)?.mul(LogScaled::from_f64(r)?.pow(n as f64)?))
}

/// `R^{N−1} · ω_{N−1}`.
pub fn sphere_area_radius(n: u64, r: f64) -> Result<LogScaled> {
    check_radius(r)?;
    Ok(sphere_area(n)?.mul(LogScaled::from_f64(r)?.pow(n as f64 - 1.0)?))
}

/// Fraction of the unit ball's volume lying in the shell `1 − δ < |x| ≤ 1`,
/// which is exactly `1 − (1 − δ)^N`.
pub fn shell_fraction(n: u64, delta: f64) -> Result<f64> {
    check_dimension(n)?;
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("delta must lie in [0, 1], got {delta}")));
    }
    Ok(1.0 - (1.0 - delta).powf(n as f64))
}

/// Upper bound `2 · 20^{N/2} / N^{(N+1)/2}` on `Ω_N`.
pub fn prop5_bound(n: u64) -> Result<LogScaled> {
    check_dimension(n)?;
    let nf = n as f64;
    let ln = LN_2
        .add(Dd::ln_of(20.0).scale(nf / 2.0))
        .sub(Dd::ln_of(nf).scale((nf + 1.0) / 2.0));
    Ok(LogScaled::positive(ln))
}

/// The closing approximant `(2πe/N)^{N/2} · N^{−1/2} · 2/√π` of the decay
/// argument, evaluated as written. It overestimates `Ω_N` by a factor that
/// tends to 2.
pub fn asymptotic_volume(n: u64) -> Result<LogScaled> {
    check_dimension(n)?;
    let nf = n as f64;
    let ln_n = Dd::ln_of(nf);
    // ln(2πe/N) = ln 2π + 1 − ln N
    let base = crate::scaled::LN_2PI.add(Dd::from_f64(1.0)).sub(ln_n);
    let ln = base
        .scale(nf / 2.0)
        .sub(ln_n.scale(0.5))
        .add(LN_2)
        .sub(LN_PI.scale(0.5));
    Ok(LogScaled::positive(ln))
}
