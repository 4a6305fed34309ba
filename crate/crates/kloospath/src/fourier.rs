//! Fourier machinery for paths and functions: the exact polygonal
//! coefficient formula, the step-weighted sums f̃(h) of equal-spacing paths
//! (via an arbitrary-length DFT, with the naive sum kept as oracle),
//! adaptive quadrature for analytic curves, and Cesàro reconstruction.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::dft::Dft;
use crate::path::PolyPath;
use crate::{Error, Result};

const TWO_PI: f64 = 2.0 * PI;

/// sin(x)/x with a series fallback near 0 to avoid cancellation.
pub fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        let x2 = x * x;
        1.0 - x2 / 6.0 + x2 * x2 / 120.0
    } else {
        x.sin() / x
    }
}

#[inline]
fn e(x: f64) -> Complex64 {
    let theta = TWO_PI * x;
    Complex64::new(theta.cos(), theta.sin())
}

#[inline]
fn two_pi_i_h(h: i64) -> Complex64 {
    Complex64::new(0.0, TWO_PI * h as f64)
}

/// Fourier coefficient of a polygonal path by the telescoped closed form
///
/// ```text
/// f̂(h) = −(z_n − z_0)/(2πih)
///        + (1/(2πih)) Σ_j (z_{j+1} − z_j) e(−h(t_j + Δ_j/2)) sinc(πhΔ_j)
/// ```
pub fn polygonal_fourier(path: &PolyPath, h: i64) -> Result<Complex64> {
    if h == 0 {
        return Err(Error::ZeroFrequency);
    }
    let hf = h as f64;
    let mut acc = -(path.endpoint() - path.vertices()[0]);
    for j in 0..path.n_segments() {
        let d = path.step(j);
        if d.norm_sqr() == 0.0 {
            continue;
        }
        let delta = path.delta(j);
        let mid = path.knots()[j] + 0.5 * delta;
        acc += d * e(-hf * mid) * sinc(PI * hf * delta);
    }
    Ok(acc / two_pi_i_h(h))
}

/// The expansion coefficient α_h = f(1) + 2πih·f̂(h) of a polygonal path,
/// which telescopes to Σ_j d_j e(−h(t_j + Δ_j/2)) sinc(πhΔ_j).
pub fn polygonal_alpha(path: &PolyPath, h: i64) -> Result<Complex64> {
    let fhat = polygonal_fourier(path, h)?;
    Ok(path.endpoint() + two_pi_i_h(h) * fhat)
}

/// f̃(h) = Σ_j d_j e(−h(j+½)/n) by direct summation, valid for any nonzero
/// integer `h`.  The exponent is reduced modulo 2n in integers, so this is
/// the exact oracle for the DFT route and for the brute-force verdicts.
pub fn tilde_naive(path: &PolyPath, h: i64) -> Result<Complex64> {
    if h == 0 {
        return Err(Error::ZeroFrequency);
    }
    if path.equal_spacing().is_none() {
        return Err(Error::UnequalSpacing);
    }
    let n = path.n_segments() as i128;
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..path.n_segments() {
        // e(−h(j+½)/n) = exp(−iπ·h(2j+1)/n), reduced mod 2n.
        let m = (h as i128 * (2 * j as i128 + 1)).rem_euclid(2 * n);
        let theta = -PI * m as f64 / n as f64;
        acc += path.step(j) * Complex64::new(theta.cos(), theta.sin());
    }
    Ok(acc)
}

/// Table of the sums f̃(h) = Σ_j d_j e(−h(j+½)/n) of an equal-spacing
/// polygonal path, for h in [−n, n] \ {0}.
///
/// Positive h come from one length-n DFT of the step differences with the
/// half-sample phase applied afterward; negative h from a second DFT on the
/// conjugated steps, with no symmetry assumption.
pub struct TildeTable {
    n: usize,
    /// f̃(h) for h = 1..=n.
    pos: Vec<Complex64>,
    /// f̃(−h) for h = 1..=n.
    neg: Vec<Complex64>,
    steps: Vec<Complex64>,
}

impl TildeTable {
    pub fn from_path(path: &PolyPath) -> Result<Self> {
        let n = path.n_segments();
        let plan = Dft::new(n);
        Self::from_path_with(path, &plan)
    }

    /// Variant reusing a DFT plan of length `path.n_segments()`.
    pub fn from_path_with(path: &PolyPath, plan: &Dft) -> Result<Self> {
        if path.equal_spacing().is_none() {
            return Err(Error::UnequalSpacing);
        }
        let n = path.n_segments();
        assert_eq!(plan.len(), n, "plan length must match the segment count");
        let steps = path.steps();
        let conj_steps: Vec<Complex64> = steps.iter().map(|d| d.conj()).collect();
        let fwd = plan.transform(&steps);
        let fwd_conj = plan.transform(&conj_steps);
        let total: Complex64 = steps.iter().sum();
        let mut pos = Vec::with_capacity(n);
        let mut neg = Vec::with_capacity(n);
        for h in 1..n {
            let phase = {
                let theta = -PI * h as f64 / n as f64;
                Complex64::new(theta.cos(), theta.sin())
            };
            pos.push(phase * fwd[h]);
            neg.push((phase * fwd_conj[h]).conj());
        }
        // f̃(±n) = e(∓½)·Σ d_j = −Σ d_j.
        pos.push(-total);
        neg.push(-total);
        Ok(TildeTable { n, pos, neg, steps })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> &[Complex64] {
        &self.steps
    }

    /// f̃(h) for 1 ≤ |h| ≤ n.
    pub fn value(&self, h: i64) -> Complex64 {
        let a = h.unsigned_abs() as usize;
        assert!(a >= 1 && a <= self.n, "h = {h} outside [−n, n] \\ {{0}}");
        if h > 0 {
            self.pos[a - 1]
        } else {
            self.neg[a - 1]
        }
    }
}

/// Options for the adaptive Simpson quadrature.
#[derive(Debug, Clone, Copy)]
pub struct QuadOpts {
    /// Panel count of the first estimate (≥ 64).
    pub min_panels: usize,
    /// Stop once two successive estimates differ by less than this.
    pub tol: f64,
    /// Give up (with an error) beyond this many panels.
    pub max_panels: usize,
}

impl Default for QuadOpts {
    fn default() -> Self {
        QuadOpts {
            min_panels: 64,
            tol: 1e-9,
            max_panels: 1 << 22,
        }
    }
}

/// Fourier coefficient f̂(h) = ∫₀¹ f(t) e(−ht) dt by trapezoid doubling
/// with Simpson extrapolation, doubling the panel count until two successive
/// estimates agree.
pub fn quadrature_fourier<F: Fn(f64) -> Complex64>(f: F, h: i64, min_panels: usize) -> Result<Complex64> {
    quadrature_fourier_opts(
        f,
        h,
        &QuadOpts {
            min_panels,
            ..QuadOpts::default()
        },
    )
}

pub fn quadrature_fourier_opts<F: Fn(f64) -> Complex64>(
    f: F,
    h: i64,
    opts: &QuadOpts,
) -> Result<Complex64> {
    let g = |t: f64| f(t) * e(-(h as f64) * t);
    let mut panels = opts.min_panels.max(64);
    let mut trap = {
        let w = 1.0 / panels as f64;
        let mut acc = 0.5 * (g(0.0) + g(1.0));
        for i in 1..panels {
            acc += g(i as f64 * w);
        }
        acc * w
    };
    let mut simpson_prev: Option<Complex64> = None;
    loop {
        // Refine the trapezoid estimate with the new midpoints only.
        let w = 1.0 / panels as f64;
        let mut mids = Complex64::new(0.0, 0.0);
        for i in 0..panels {
            mids += g((i as f64 + 0.5) * w);
        }
        let trap_next = 0.5 * trap + 0.5 * w * mids;
        let simpson = (4.0 * trap_next - trap) / 3.0;
        if let Some(prev) = simpson_prev {
            if (simpson - prev).norm() < opts.tol {
                return Ok(simpson);
            }
            if 2 * panels >= opts.max_panels {
                return Err(Error::QuadratureDivergence {
                    last: simpson,
                    previous: prev,
                });
            }
        }
        simpson_prev = Some(simpson);
        trap = trap_next;
        panels *= 2;
    }
}

/// Fourier data of a path or function: f(1), the coefficients f̂(h) for
/// 0 < |h| ≤ H, and the derived quantities ĝ(h) of g = f − f(1)t and
/// α_h = f(1) + 2πih·f̂(h).
#[derive(Debug, Clone)]
pub struct CoeffTable {
    f1: Complex64,
    h_max: i64,
    /// f̂(h) for h = 1..=H.
    pos: Vec<Complex64>,
    /// f̂(−h) for h = 1..=H.
    neg: Vec<Complex64>,
}

impl CoeffTable {
    /// Exact coefficients of a polygonal path.
    pub fn from_path(path: &PolyPath, h_max: i64) -> Result<Self> {
        assert!(h_max >= 1);
        let mut pos = Vec::with_capacity(h_max as usize);
        let mut neg = Vec::with_capacity(h_max as usize);
        for h in 1..=h_max {
            pos.push(polygonal_fourier(path, h)?);
            neg.push(polygonal_fourier(path, -h)?);
        }
        Ok(CoeffTable {
            f1: path.endpoint(),
            h_max,
            pos,
            neg,
        })
    }

    /// Quadrature coefficients of an arbitrary continuous function.
    pub fn from_function<F: Fn(f64) -> Complex64>(
        f: F,
        h_max: i64,
        opts: &QuadOpts,
    ) -> Result<Self> {
        assert!(h_max >= 1);
        let mut pos = Vec::with_capacity(h_max as usize);
        let mut neg = Vec::with_capacity(h_max as usize);
        for h in 1..=h_max {
            pos.push(quadrature_fourier_opts(&f, h, opts)?);
            neg.push(quadrature_fourier_opts(&f, -h, opts)?);
        }
        Ok(CoeffTable {
            f1: f(1.0),
            h_max,
            pos,
            neg,
        })
    }

    /// Builds a table directly from f(1) and a coefficient rule.
    pub fn from_fhat(f1: Complex64, h_max: i64, fhat: impl Fn(i64) -> Complex64) -> Self {
        assert!(h_max >= 1);
        CoeffTable {
            f1,
            h_max,
            pos: (1..=h_max).map(&fhat).collect(),
            neg: (1..=h_max).map(|h| fhat(-h)).collect(),
        }
    }

    pub fn f1(&self) -> Complex64 {
        self.f1
    }

    pub fn h_max(&self) -> i64 {
        self.h_max
    }

    pub fn fhat(&self, h: i64) -> Complex64 {
        let a = h.unsigned_abs() as i64;
        assert!(a >= 1 && a <= self.h_max, "h = {h} outside table range");
        if h > 0 {
            self.pos[(a - 1) as usize]
        } else {
            self.neg[(a - 1) as usize]
        }
    }

    /// ĝ(h) = f̂(h) + f(1)/(2πih), the coefficient of g = f − f(1)t.
    pub fn ghat(&self, h: i64) -> Complex64 {
        self.fhat(h) + self.f1 / two_pi_i_h(h)
    }

    /// α_h = f(1) + 2πih·f̂(h); real with |α_h| ≤ 2 exactly on the support.
    pub fn alpha(&self, h: i64) -> Complex64 {
        self.f1 + two_pi_i_h(h) * self.fhat(h)
    }

    /// CSV export with columns h, re_fhat, im_fhat, re_alpha, im_alpha.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("h,re_fhat,im_fhat,re_alpha,im_alpha\n");
        for h in (-self.h_max..=self.h_max).filter(|&h| h != 0) {
            let fhat = self.fhat(h);
            let alpha = self.alpha(h);
            out.push_str(&format!(
                "{},{},{},{},{}\n",
                h, fhat.re, fhat.im, alpha.re, alpha.im
            ));
        }
        out
    }
}

/// Cesàro(Fejér)-weighted partial reconstruction
///
/// ```text
/// f_N(t) = f(1)·t + Σ_{1≤|h|≤N} α_h (e(ht)−1)/(2πih) (1 − |h|/N),
/// ```
///
/// which converges uniformly to f for any f in 𝓕₀.
pub fn cesaro_reconstruct(table: &CoeffTable, n_terms: i64, t: f64) -> Complex64 {
    assert!(n_terms >= 1 && n_terms <= table.h_max());
    let mut acc = table.f1() * t;
    for h in 1..=n_terms {
        let weight = 1.0 - h as f64 / n_terms as f64;
        if weight == 0.0 {
            continue;
        }
        for sign in [h, -h] {
            acc += table.alpha(sign) * (e(sign as f64 * t) - 1.0) / two_pi_i_h(sign) * weight;
        }
    }
    acc
}
