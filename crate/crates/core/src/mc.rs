//! Seeded Monte Carlo and quadrature checks of the closed forms.
//!
//! Samples are generated in fixed blocks of [`BLOCK_SIZE`]. Block `b` draws
//! from a ChaCha8 stream keyed by `(seed, b)`, so every sample is a pure
//! function of the seed and its index. Per-block moments are merged in a
//! fixed binary tree over the block index. The resulting [`McEstimate`] is
//! bit-identical for any number of worker threads, and also with the
//! `parallel` feature turned off.

use std::f64::consts::PI;

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};

use crate::centroids::face_volume;
use crate::{par, Error, Result};

/// Samples per independent random stream.
pub const BLOCK_SIZE: u64 = 1 << 15;

/// One-sided 99% standard normal quantile.
pub const Z_99: f64 = 2.326_347_874_040_840_8;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `|mean − reference| ≤ k·σ`, with a rounding allowance for exact
    /// (zero-variance) estimates.
    pub fn within_sigma(&self, reference: f64, k: f64) -> bool {
        let slack = 1e-12 * reference.abs().max(1.0);
        (self.mean - reference).abs() <= k * self.std_error + slack
    }

    pub fn lower_bound(&self, z: f64) -> f64 {
        self.mean - z * self.std_error
    }
}

/// Running mean and sum of squared deviations (Welford / Chan).
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let delta = x - self.mean;
        self.mean += delta / self.n as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(a: &Moments, b: &Moments) -> Moments {
        if a.n == 0 {
            return *b;
        }
        if b.n == 0 {
            return *a;
        }
        let n = a.n + b.n;
        let delta = b.mean - a.mean;
        let (na, nb) = (a.n as f64, b.n as f64);
        Moments {
            n,
            mean: a.mean + delta * nb / n as f64,
            m2: a.m2 + b.m2 + delta * delta * na * nb / n as f64,
        }
    }

    fn estimate(&self, seed: u64) -> McEstimate {
        let std_error = if self.n > 1 {
            (self.m2.max(0.0) / (self.n - 1) as f64 / self.n as f64).sqrt()
        } else {
            0.0
        };
        McEstimate { mean: self.mean, std_error, samples: self.n, seed }
    }
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn blocks(samples: u64) -> Vec<(u64, u64)> {
    (0..samples.div_ceil(BLOCK_SIZE))
        .map(|b| (b, BLOCK_SIZE.min(samples - b * BLOCK_SIZE)))
        .collect()
}

fn check_samples(samples: u64) -> Result<()> {
    if samples == 0 {
        return Err(Error::domain("sample budget must be positive"));
    }
    Ok(())
}

fn run_scalar<F>(samples: u64, seed: u64, draw: F) -> Result<McEstimate>
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync + Send,
{
    check_samples(samples)?;
    let parts = par::map_slice(&blocks(samples), |&(b, count)| {
        let mut rng = block_rng(seed, b);
        let mut m = Moments::default();
        for _ in 0..count {
            m.push(draw(&mut rng));
        }
        m
    });
    let total = par::tree_reduce(&parts, &Moments::merge).unwrap_or_default();
    Ok(total.estimate(seed))
}

fn run_vector<F>(samples: u64, seed: u64, dim: usize, draw: F) -> Result<Vec<McEstimate>>
where
    F: Fn(&mut ChaCha8Rng, &mut [f64]) + Sync + Send,
{
    check_samples(samples)?;
    let parts = par::map_slice(&blocks(samples), |&(b, count)| {
        let mut rng = block_rng(seed, b);
        let mut m = vec![Moments::default(); dim];
        let mut point = vec![0.0; dim];
        for _ in 0..count {
            point.iter_mut().for_each(|x| *x = 0.0);
            draw(&mut rng, &mut point);
            for (mi, &x) in m.iter_mut().zip(&point) {
                mi.push(x);
            }
        }
        m
    });
    let merge = |a: &Vec<Moments>, b: &Vec<Moments>| {
        a.iter().zip(b).map(|(x, y)| Moments::merge(x, y)).collect::<Vec<_>>()
    };
    let total = par::tree_reduce(&parts, &merge).unwrap_or_default();
    Ok(total.iter().map(|m| m.estimate(seed)).collect())
}

/// Uniform in `(0, 1]`.
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    1.0 - rng.random::<f64>()
}

/// Radius of a uniform point in the unit `n`-ball: `U^{1/n}`, whose density
/// `n·r^{n−1}` is the polar-coordinate volume element.
pub fn sample_radius<R: Rng + ?Sized>(rng: &mut R, n: u64) -> f64 {
    open_unit(rng).powf(1.0 / n as f64)
}

/// Fill `out` with a uniform direction on the unit sphere and return the
/// norm of the Gaussian vector it was normalised from.
pub fn sample_direction<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    loop {
        let mut ss = 0.0;
        for x in out.iter_mut() {
            *x = StandardNormal.sample(rng);
            ss += *x * *x;
        }
        if ss > 0.0 {
            let norm = ss.sqrt();
            // divide each coordinate (not multiply by 1/norm) so |x_i| <= 1 holds exactly
            out.iter_mut().for_each(|x| *x /= norm);
            return;
        }
    }
}

/// How to evaluate `∫ e^{−π|x|²} dx` over `R^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GaussMethod {
    /// Tensor-product trapezoid rule on `[−4, 4]^N`, `N ≤ 3`.
    Quadrature,
    /// Uniform sampling on the cube `[−3, 3]^N`, `N ≤ 8`.
    MonteCarlo,
}

pub const GAUSS_QUADRATURE_MAX_DIM: u64 = 3;
pub const GAUSS_MC_MAX_DIM: u64 = 8;
const QUAD_HALF_WIDTH: f64 = 4.0;
const QUAD_STEP: f64 = 0.05;
const MC_HALF_WIDTH: f64 = 3.0;

/// Estimate of `∫_{R^N} e^{−π|x|²} dx`, whose exact value is 1.
///
/// Quadrature ignores `budget` and reports zero standard error. Its error is
/// dominated by the tail beyond 4, which is below `1e-20`.
pub fn gaussian_norm_check(n: u64, method: GaussMethod, budget: u64, seed: u64) -> Result<McEstimate> {
    match method {
        GaussMethod::Quadrature => {
            if !(1..=GAUSS_QUADRATURE_MAX_DIM).contains(&n) {
                return Err(Error::resource(format!(
                    "tensor quadrature supports 1 <= N <= {GAUSS_QUADRATURE_MAX_DIM}, got {n}"
                )));
            }
            Ok(gauss_quadrature(n as usize, seed))
        }
        GaussMethod::MonteCarlo => {
            if !(1..=GAUSS_MC_MAX_DIM).contains(&n) {
                return Err(Error::resource(format!(
                    "Monte Carlo supports 1 <= N <= {GAUSS_MC_MAX_DIM}, got {n}"
                )));
            }
            let volume = (2.0 * MC_HALF_WIDTH).powi(n as i32);
            run_scalar(budget, seed, |rng| {
                let r2: f64 = (0..n)
                    .map(|_| {
                        let x = rng.random_range(-MC_HALF_WIDTH..MC_HALF_WIDTH);
                        x * x
                    })
                    .sum();
                volume * (-PI * r2).exp()
            })
        }
    }
}

fn gauss_quadrature(dim: usize, seed: u64) -> McEstimate {
    let m = (2.0 * QUAD_HALF_WIDTH / QUAD_STEP).round() as usize + 1;
    let nodes: Vec<f64> = (0..m).map(|i| -QUAD_HALF_WIDTH + i as f64 * QUAD_STEP).collect();
    // Endpoint weights of the trapezoid rule multiply integrands ~e^{-50}; use
    // them anyway so the rule is exactly the textbook one.
    let weight = |i: usize| if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
    let inner = m.pow(dim as u32 - 1);
    let slabs = par::map_range(m, |i0| {
        let mut sum = 0.0;
        let mut comp = 0.0;
        for rest in 0..inner {
            let (mut idx, mut r2, mut w) = (rest, nodes[i0] * nodes[i0], weight(i0));
            for _ in 1..dim {
                let i = idx % m;
                idx /= m;
                r2 += nodes[i] * nodes[i];
                w *= weight(i);
            }
            // Neumaier summation
            let term = w * (-PI * r2).exp();
            let t = sum + term;
            comp += if sum.abs() >= term.abs() { (sum - t) + term } else { (term - t) + sum };
            sum = t;
        }
        sum + comp
    });
    let total = par::tree_reduce(&slabs, &|a: &f64, b: &f64| a + b).unwrap_or(0.0);
    McEstimate {
        mean: total * QUAD_STEP.powi(dim as i32),
        std_error: 0.0,
        samples: m.pow(dim as u32) as u64,
        seed,
    }
}

pub const BALL_MC_MIN_DIM: u64 = 2;
pub const BALL_MC_MAX_DIM: u64 = 12;

/// Hit-or-miss estimate of `Ω_N`: `2^N` times the fraction of uniform points
/// of `[−1, 1]^N` inside the unit ball.
pub fn mc_ball_volume(n: u64, budget: u64, seed: u64) -> Result<McEstimate> {
    if !(BALL_MC_MIN_DIM..=BALL_MC_MAX_DIM).contains(&n) {
        return Err(Error::resource(format!(
            "hit-or-miss volume supports {BALL_MC_MIN_DIM} <= N <= {BALL_MC_MAX_DIM}, got {n}"
        )));
    }
    let cube = 2f64.powi(n as i32);
    run_scalar(budget, seed, |rng| {
        let r2: f64 = (0..n)
            .map(|_| {
                let x = rng.random_range(-1.0..1.0);
                x * x
            })
            .sum();
        if r2 <= 1.0 {
            cube
        } else {
            0.0
        }
    })
}

/// Fraction of uniform points of the unit `N`-ball with radius above `1 − δ`.
pub fn mc_shell_fraction(n: u64, delta: f64, budget: u64, seed: u64) -> Result<McEstimate> {
    if n == 0 {
        return Err(Error::domain("dimension must be at least 1"));
    }
    if !(0.0..=1.0).contains(&delta) {
        return Err(Error::domain(format!("delta must lie in [0, 1], got {delta}")));
    }
    let inner = 1.0 - delta;
    run_scalar(budget, seed, |rng| f64::from(u8::from(sample_radius(rng, n) > inner)))
}

/// Fraction of uniform points of the central ball (radius `√N − 1`) lying
/// outside the cube `[−1, 1]^N`.
pub fn mc_leak_fraction(n: u64, budget: u64, seed: u64) -> Result<McEstimate> {
    let rho = crate::leakage::inner_radius(n)?;
    let dim = n as usize;
    run_scalar(budget, seed, |rng| {
        let mut dir = vec![0.0; dim];
        sample_direction(rng, &mut dir);
        let r = sample_radius(rng, n);
        let outside = dir.iter().any(|&u| rho * (r * u.abs()) > 1.0);
        f64::from(u8::from(outside))
    })
}

pub const SKELETON_MC_MAX_DIM: u64 = 10;

fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Per-coordinate mean of uniform samples from the k-skeleton.
///
/// A face is chosen with probability proportional to its k-volume, then a
/// point is drawn from it with Dirichlet(1, …, 1) barycentric weights built
/// from exponential spacings.
pub fn mc_skeleton_centroid(n: u64, k: u64, budget: u64, seed: u64) -> Result<Vec<McEstimate>> {
    if !(1..=SKELETON_MC_MAX_DIM).contains(&n) {
        return Err(Error::resource(format!(
            "skeleton sampling supports 1 <= N <= {SKELETON_MC_MAX_DIM}; use the exact path for N = {n}"
        )));
    }
    if k > n {
        return Err(Error::domain(format!("skeleton dimension {k} exceeds N = {n}")));
    }
    let corner_mass = binomial(n, k) * face_volume(k, true).to_f64();
    let far_mass = binomial(n, k + 1) * face_volume(k, false).to_f64();
    let p_corner = corner_mass / (corner_mass + far_mass);
    let dim = n as usize;
    let kk = k as usize;
    run_vector(budget, seed, dim, |rng, point| {
        let corner = rng.random::<f64>() < p_corner;
        let picked = if corner { index::sample(rng, dim, kk) } else { index::sample(rng, dim, kk + 1) };
        let spacings: Vec<f64> = (0..=kk).map(|_| Exp1.sample(rng)).collect();
        let total: f64 = spacings.iter().sum();
        // for corner faces spacings[0] belongs to the origin and adds nothing
        let offset = usize::from(corner);
        for (j, i) in picked.iter().enumerate() {
            point[i] = spacings[j + offset] / total;
        }
    })
}
