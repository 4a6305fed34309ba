//! Sampling of the limiting random Fourier series
//! K(t) = t·ST₀ + Σ_{h≠0} (e(ht)−1)/(2πih)·ST_h with independent Sato-Tate
//! coefficients, and Monte Carlo estimation of sup-norm ball probabilities.
//!
//! Randomness comes from ChaCha8 seeded through `seed_from_u64`; Monte Carlo
//! trials partition the seed space deterministically (trial seed = base ⊕
//! trial index), so results are independent of scheduling and thread count.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// CDF of the semicircle law (1/π)√(1 − x²/4) dx on [−2, 2].
pub fn semicircle_cdf(x: f64) -> f64 {
    if x <= -2.0 {
        0.0
    } else if x >= 2.0 {
        1.0
    } else {
        0.5 + x * (4.0 - x * x).sqrt() / (4.0 * PI) + (0.5 * x).asin() / PI
    }
}

/// Inverse-CDF sampler for the Sato-Tate (semicircle) law: a precomputed
/// monotone table over 65537 knots brackets the quantile, then bisection on
/// the closed-form CDF refines it below 1e−9.
pub struct SatoTateSampler {
    cdf: Vec<f64>,
}

const TABLE_KNOTS: usize = 65_537;

impl SatoTateSampler {
    pub fn new() -> Self {
        let cdf = (0..TABLE_KNOTS)
            .map(|i| semicircle_cdf(-2.0 + 4.0 * i as f64 / (TABLE_KNOTS - 1) as f64))
            .collect();
        SatoTateSampler { cdf }
    }

    /// The quantile x with F(x) = u.
    pub fn inverse_cdf(&self, u: f64) -> f64 {
        let u = u.clamp(0.0, 1.0);
        let idx = self.cdf.partition_point(|&v| v <= u);
        let knot = |i: usize| -2.0 + 4.0 * i as f64 / (TABLE_KNOTS - 1) as f64;
        if idx == 0 {
            return -2.0;
        }
        if idx >= TABLE_KNOTS {
            return 2.0;
        }
        let (mut lo, mut hi) = (knot(idx - 1), knot(idx));
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if semicircle_cdf(mid) <= u {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        self.inverse_cdf(rng.random::<f64>())
    }
}

impl Default for SatoTateSampler {
    fn default() -> Self {
        Self::new()
    }
}

fn global_sampler() -> &'static SatoTateSampler {
    static SAMPLER: OnceLock<SatoTateSampler> = OnceLock::new();
    SAMPLER.get_or_init(SatoTateSampler::new)
}

/// One draw from the semicircle density on [−2, 2].
pub fn sample_sato_tate<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    global_sampler().sample(rng)
}

/// One realization of the series truncated at |h| ≤ N, on a uniform grid.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SeriesSample {
    /// Cutoff N of the symmetric partial sum.
    pub cutoff: usize,
    /// Draws ST_h stored at index h + cutoff (so st[cutoff] is ST₀).
    pub st: Vec<f64>,
    /// K(t_i) on the uniform grid t_i = i/(grid−1).
    pub grid: Vec<Complex64>,
    pub seed: u64,
}

impl SeriesSample {
    pub fn st(&self, h: i64) -> f64 {
        self.st[(h + self.cutoff as i64) as usize]
    }

    /// Largest |K(t) + conj(K(1−t)) − K(1)| over the grid.
    pub fn symmetry_defect(&self) -> f64 {
        let g = &self.grid;
        let last = *g.last().unwrap();
        let mut defect = 0.0f64;
        for i in 0..g.len() {
            defect = defect.max((g[i] + g[g.len() - 1 - i].conj() - last).norm());
        }
        defect
    }
}

/// Draws ST_h for |h| ≤ N (order: h = 0, 1, −1, 2, −2, …) and evaluates the
/// symmetric partial sum on the grid.
pub fn sample_series(cutoff: usize, grid_size: usize, seed: u64) -> SeriesSample {
    assert!(cutoff >= 1 && grid_size >= 2);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sampler = global_sampler();
    let mut st = vec![0.0; 2 * cutoff + 1];
    st[cutoff] = sampler.sample(&mut rng);
    for h in 1..=cutoff {
        st[cutoff + h] = sampler.sample(&mut rng);
        st[cutoff - h] = sampler.sample(&mut rng);
    }
    let grid = (0..grid_size)
        .map(|i| {
            let t = i as f64 / (grid_size - 1) as f64;
            eval_series(&st, cutoff, t)
        })
        .collect();
    SeriesSample {
        cutoff,
        st,
        grid,
        seed,
    }
}

/// K(t) for one draw, by incremental rotation through the frequencies.
fn eval_series(st: &[f64], cutoff: usize, t: f64) -> Complex64 {
    let st0 = st[cutoff];
    let theta = 2.0 * PI * t;
    let w = Complex64::new(theta.cos(), theta.sin());
    let mut cur = Complex64::new(1.0, 0.0);
    let (mut re, mut im) = (st0 * t, 0.0);
    for h in 1..=cutoff {
        cur *= w;
        let sp = st[cutoff + h];
        let sn = st[cutoff - h];
        // (e(ht)−1)/(2πih)·sp + (e(−ht)−1)/(−2πih)·sn collapses to
        // (y(sp+sn) − i(x−1)(sp−sn)) / (2πh) with e(ht) = x + iy.
        let inv = 1.0 / (2.0 * PI * h as f64);
        re += cur.im * (sp + sn) * inv;
        im -= (cur.re - 1.0) * (sp - sn) * inv;
    }
    Complex64::new(re, im)
}

/// Monte Carlo estimate of P(sup_t |K(t) − f(t)| < ε), with the sup taken
/// over the evaluation grid.  Deterministic for a fixed seed regardless of
/// thread count.
pub fn mc_ball_probability<F>(
    center: F,
    eps: f64,
    cutoff: usize,
    trials: usize,
    seed: u64,
    grid_size: usize,
) -> f64
where
    F: Fn(f64) -> Complex64 + Sync,
{
    assert!(trials >= 1 && cutoff >= 1 && grid_size >= 2);
    let points: Vec<f64> = (0..grid_size)
        .map(|i| i as f64 / (grid_size - 1) as f64)
        .collect();
    let center_vals: Vec<Complex64> = points.iter().map(|&t| center(t)).collect();
    let sampler = global_sampler();
    let hits = (0..trials as u64)
        .into_par_iter()
        .map(|trial| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ trial);
            let mut st = vec![0.0; 2 * cutoff + 1];
            st[cutoff] = sampler.sample(&mut rng);
            for h in 1..=cutoff {
                st[cutoff + h] = sampler.sample(&mut rng);
                st[cutoff - h] = sampler.sample(&mut rng);
            }
            let inside = points
                .iter()
                .zip(center_vals.iter())
                .all(|(&t, &c)| (eval_series(&st, cutoff, t) - c).norm() < eps);
            inside as u64
        })
        .sum::<u64>();
    hits as f64 / trials as f64
}

/// Side-by-side comparison of the arithmetic and probabilistic sides: the
/// fraction of a ∈ (ℤ/pℤ)^× whose Kloosterman partial sums stay ε-close to
/// f at the sample points j/(p−1), against the Monte Carlo estimate of the
/// limit law's ball probability.
#[derive(Debug, Clone, Serialize)]
pub struct EmpiricalComparison {
    pub p: u64,
    /// The empirical side fixes b and varies a only — a one-dimensional
    /// slice of the full (a, b) average.
    pub b: u64,
    pub eps: f64,
    pub empirical_fraction: f64,
    pub mc_estimate: f64,
    pub cutoff: usize,
    pub trials: usize,
    pub seed: u64,
    pub note: &'static str,
}

pub fn empirical_vs_limit<F>(
    p: u64,
    b: u64,
    f: F,
    eps: f64,
    cutoff: usize,
    trials: usize,
    seed: u64,
) -> crate::Result<EmpiricalComparison>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let ctx = crate::modarith::PrimeContext::new(p)?;
    if b % p == 0 {
        return Err(crate::Error::InvalidSpec(format!("b = {b} not coprime to {p}")));
    }
    // z_j corresponds to t_j = j/(p−1) for j = 0..p−1.
    let targets: Vec<Complex64> = (0..p)
        .map(|j| f(j as f64 / (p - 1) as f64))
        .collect();
    let close = (1..p)
        .into_par_iter()
        .filter(|&a| {
            let spec = crate::modarith::SumSpec::kloosterman(a, b, p).expect("valid");
            let sums = crate::modarith::partial_sums_with(&ctx, &spec);
            sums.iter()
                .zip(targets.iter())
                .all(|(z, t)| (z - t).norm() < eps)
        })
        .count();
    let empirical_fraction = close as f64 / (p - 1) as f64;
    let grid_size = 1025.max(4 * (p as usize - 1) + 1);
    let mc_estimate = mc_ball_probability(&f, eps, cutoff, trials, seed, grid_size);
    Ok(EmpiricalComparison {
        p,
        b,
        eps,
        empirical_fraction,
        mc_estimate,
        cutoff,
        trials,
        seed,
        note: "empirical fraction varies a with b fixed",
    })
}

/// Two-sided Kolmogorov-Smirnov statistic against the semicircle CDF.
pub fn ks_statistic_semicircle(draws: &mut [f64]) -> f64 {
    draws.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let n = draws.len() as f64;
    let mut d = 0.0f64;
    for (i, &x) in draws.iter().enumerate() {
        let cdf = semicircle_cdf(x);
        d = d.max(cdf - i as f64 / n);
        d = d.max((i + 1) as f64 / n - cdf);
    }
    d
}
