//! Faber–Schauder expansions over the dyadic tent system Λ_{m,j} and
//! symmetric reparameterization: composition with increasing homeomorphisms
//! φ of [0,1] satisfying φ(1−t) = 1−φ(t), which preserve 𝓕₀, and a
//! best-effort search for a φ that pulls a real-valued symmetric function
//! into the support.

use num_complex::Complex64;
use std::f64::consts::PI;

use crate::{Error, Result};

/// Coefficients of the expansion
///
/// ```text
/// f(t) = f(0) + (f(1) − f(0))·t + Σ_{m≥0} Σ_{j=1}^{2^m} β(m,j) Λ_{m,j}(t),
/// ```
///
/// where Λ_{m,j} is the tent of height 1 on [(j−1)/2^m, j/2^m] and
/// β(m,j) = f((2j−1)/2^{m+1}) − ½(f((j−1)/2^m) + f(j/2^m)).  The affine
/// part interpolates both endpoint samples, so the depth-M reconstruction
/// agrees with f at every dyadic point of level ≤ M.
#[derive(Debug, Clone)]
pub struct FaberExpansion {
    f0: Complex64,
    f1: Complex64,
    /// beta[m][j−1] for 0 ≤ m < depth, 1 ≤ j ≤ 2^m.
    beta: Vec<Vec<Complex64>>,
}

impl FaberExpansion {
    pub fn depth(&self) -> usize {
        self.beta.len()
    }

    /// f(0), the constant of the affine part.
    pub fn f0(&self) -> Complex64 {
        self.f0
    }

    /// f(1) − f(0), the slope of the affine part.
    pub fn affine_slope(&self) -> Complex64 {
        self.f1 - self.f0
    }

    pub fn f1(&self) -> Complex64 {
        self.f1
    }

    pub fn beta(&self, m: usize, j: usize) -> Complex64 {
        self.beta[m][j - 1]
    }

    /// Evaluates the truncated expansion; only one tent per level is active
    /// at any t.
    pub fn evaluate(&self, t: f64) -> Complex64 {
        let t = t.clamp(0.0, 1.0);
        let mut acc = self.f0 + (self.f1 - self.f0) * t;
        let mut pow2m = 1.0f64;
        for level in &self.beta {
            let j = ((t * pow2m).floor() as usize).min(level.len() - 1);
            let peak = (2 * j + 1) as f64 / (2.0 * pow2m);
            let tent = (1.0 - 2.0 * pow2m * (t - peak).abs()).max(0.0);
            acc += level[j] * tent;
            pow2m *= 2.0;
        }
        acc
    }
}

/// Midpoint second differences of `f` down to dyadic level `depth` (≤ 20).
pub fn faber_coefficients<F: Fn(f64) -> Complex64>(f: F, depth: usize) -> Result<FaberExpansion> {
    if depth > 20 {
        return Err(Error::OutOfRange(format!("depth {depth} exceeds 20")));
    }
    let mut beta = Vec::with_capacity(depth);
    for m in 0..depth {
        let pieces = 1usize << m;
        let mut level = Vec::with_capacity(pieces);
        for j in 1..=pieces {
            let left = (j - 1) as f64 / pieces as f64;
            let right = j as f64 / pieces as f64;
            let mid = (2 * j - 1) as f64 / (2.0 * pieces as f64);
            level.push(f(mid) - 0.5 * (f(left) + f(right)));
        }
        beta.push(level);
    }
    Ok(FaberExpansion {
        f0: f(0.0),
        f1: f(1.0),
        beta,
    })
}

/// An increasing piecewise-linear homeomorphism of [0,1] with
/// φ(1−t) = 1−φ(t): the knot set is symmetric and so are the images.
#[derive(Debug, Clone)]
pub struct SymmetricHomeo {
    ts: Vec<f64>,
    ys: Vec<f64>,
}

impl SymmetricHomeo {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return Err(Error::InvalidHomeomorphism("need at least two knots".into()));
        }
        let ts: Vec<f64> = knots.iter().map(|k| k.0).collect();
        let ys: Vec<f64> = knots.iter().map(|k| k.1).collect();
        let n = ts.len();
        if ts[0] != 0.0 || (ts[n - 1] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidHomeomorphism("knots must span [0, 1]".into()));
        }
        if ys[0].abs() > 1e-12 || (ys[n - 1] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidHomeomorphism("must fix 0 and 1".into()));
        }
        if ts.windows(2).any(|w| w[1] <= w[0]) || ys.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidHomeomorphism(
                "knots and images must be strictly increasing".into(),
            ));
        }
        for i in 0..n {
            let r = n - 1 - i;
            if (ts[i] + ts[r] - 1.0).abs() > 1e-12 || (ys[i] + ys[r] - 1.0).abs() > 1e-12 {
                return Err(Error::InvalidHomeomorphism(format!(
                    "knot {i} breaks φ(1−t) = 1−φ(t)"
                )));
            }
        }
        Ok(SymmetricHomeo { ts, ys })
    }

    pub fn identity() -> Self {
        SymmetricHomeo {
            ts: vec![0.0, 1.0],
            ys: vec![0.0, 1.0],
        }
    }

    /// Builds the symmetric completion from free images of the dyadic knots
    /// k/(2L) for k = 1..L (the left half; φ(½) = ½ is implied).
    pub fn from_half_images(half_images: &[f64]) -> Result<Self> {
        let l = half_images.len() + 1;
        let mut knots = vec![(0.0, 0.0)];
        for (k, &y) in half_images.iter().enumerate() {
            knots.push(((k + 1) as f64 / (2 * l) as f64, y));
        }
        knots.push((0.5, 0.5));
        for k in (0..half_images.len()).rev() {
            knots.push((
                1.0 - (k + 1) as f64 / (2 * l) as f64,
                1.0 - half_images[k],
            ));
        }
        knots.push((1.0, 1.0));
        SymmetricHomeo::new(knots)
    }

    pub fn eval(&self, t: f64) -> f64 {
        let t = t.clamp(0.0, 1.0);
        let idx = self.ts.partition_point(|&k| k <= t);
        if idx == self.ts.len() {
            return 1.0;
        }
        let seg = idx - 1;
        let w = (t - self.ts[seg]) / (self.ts[seg + 1] - self.ts[seg]);
        self.ys[seg] * (1.0 - w) + self.ys[seg + 1] * w
    }

    pub fn knots(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.ts.iter().copied().zip(self.ys.iter().copied())
    }

    /// The preimage φ^{-1}(y), by inverting the containing segment.
    fn preimage(&self, y: f64) -> f64 {
        let y = y.clamp(0.0, 1.0);
        let idx = self.ys.partition_point(|&v| v <= y);
        if idx == self.ys.len() {
            return 1.0;
        }
        let seg = idx - 1;
        let w = (y - self.ys[seg]) / (self.ys[seg + 1] - self.ys[seg]);
        self.ts[seg] * (1.0 - w) + self.ts[seg + 1] * w
    }

    /// self ∘ other; symmetric piecewise-linear maps are closed under
    /// composition, with breakpoints at other's knots united with the
    /// other-preimages of self's knots.
    pub fn compose_with(&self, other: &SymmetricHomeo) -> SymmetricHomeo {
        let mut ts: Vec<f64> = other.ts.clone();
        ts.extend(self.ts.iter().map(|&t| other.preimage(t)));
        ts.sort_by(|a, b| a.partial_cmp(b).unwrap());
        ts.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let ys: Vec<f64> = ts.iter().map(|&t| self.eval(other.eval(t))).collect();
        SymmetricHomeo { ts, ys }
    }

    /// CSV knot list with columns t, phi.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,phi\n");
        for (t, y) in self.knots() {
            out.push_str(&format!("{},{}\n", t, y));
        }
        out
    }
}

/// f∘φ as a new evaluable function; 𝓕₀ membership is preserved.
pub fn compose<'a, F>(f: F, phi: &'a SymmetricHomeo) -> impl Fn(f64) -> Complex64 + 'a
where
    F: Fn(f64) -> Complex64 + 'a,
{
    move |t| f(phi.eval(t))
}

/// Result of [`reparam_search`].
#[derive(Debug, Clone)]
pub struct ReparamResult {
    pub phi: SymmetricHomeo,
    /// Best sup_{1≤|h|≤H} |h·û(f∘φ)(h)| found.
    pub achieved: f64,
    /// Whether the target bound 1/π was reached.
    pub success: bool,
    pub objective_evals: usize,
}

const SEARCH_H_MAX: i64 = 16;
const SEARCH_PANELS: usize = 2048;

/// sup_{1≤|h|≤H} |h·û(g)(h)| for g = f∘φ − f(1)·t, with the coefficients
/// taken from one fixed-resolution Simpson pass over the composed samples.
fn reparam_objective<F: Fn(f64) -> f64>(f: &F, phi: &SymmetricHomeo) -> f64 {
    let m = SEARCH_PANELS;
    let f1 = f(1.0);
    // Simpson weights 1,4,2,…,4,1 over 2m+1 samples.
    let samples: Vec<f64> = (0..=2 * m)
        .map(|i| f(phi.eval(i as f64 / (2 * m) as f64)))
        .collect();
    let mut worst = 0.0f64;
    for h in 1..=SEARCH_H_MAX {
        for sign in [h, -h] {
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, &v) in samples.iter().enumerate() {
                let t = i as f64 / (2 * m) as f64;
                let weight = if i == 0 || i == 2 * m {
                    1.0
                } else if i % 2 == 1 {
                    4.0
                } else {
                    2.0
                };
                let g = v - f1 * t;
                let theta = -2.0 * PI * sign as f64 * t;
                acc += weight * g * Complex64::new(theta.cos(), theta.sin());
            }
            let coeff = acc / (6.0 * m as f64);
            worst = worst.max(sign.unsigned_abs() as f64 * coeff.norm());
        }
    }
    worst
}

/// Best-effort coordinate-descent search for a symmetric homeomorphism φ
/// with sup_h |h·û(f∘φ)(h)| ≤ 1/π, over symmetric piecewise-linear maps
/// with dyadic knots.  `f` must be real-valued with f(t) + f(1−t) = f(1)
/// and |f(1)| ≤ 2; the search stops once the bound is reached or `budget`
/// objective evaluations are spent.
pub fn reparam_search<F: Fn(f64) -> f64>(f: F, budget: usize) -> Result<ReparamResult> {
    let f1 = f(1.0);
    if f1.abs() > 2.0 + 1e-9 {
        return Err(Error::OutOfRange(format!("|f(1)| = {} exceeds 2", f1.abs())));
    }
    for i in 0..=64 {
        let t = i as f64 / 64.0;
        if (f(t) + f(1.0 - t) - f1).abs() > 1e-6 {
            return Err(Error::OutOfRange(
                "f(t) + f(1−t) = f(1) fails on the test grid".into(),
            ));
        }
    }
    let target = 1.0 / PI;
    let mut evals = 0usize;
    let mut best_phi = SymmetricHomeo::identity();
    let mut best = reparam_objective(&f, &best_phi);
    evals += 1;
    if best <= target || budget <= evals {
        return Ok(ReparamResult {
            success: best <= target,
            phi: best_phi,
            achieved: best,
            objective_evals: evals,
        });
    }

    // Coordinate descent on the images of the left-half dyadic knots k/16.
    let free = 7usize;
    let mut images: Vec<f64> = (1..=free).map(|k| k as f64 / 16.0).collect();
    'outer: loop {
        let mut improved = false;
        for k in 0..free {
            let lo = if k == 0 { 0.0 } else { images[k - 1] };
            let hi = if k == free - 1 { 0.5 } else { images[k + 1] };
            // Golden-section scan of the k-th image inside (lo, hi).
            let (mut a, mut b) = (lo + 1e-4 * (hi - lo), hi - 1e-4 * (hi - lo));
            let phi_at = |y: f64, images: &[f64]| {
                let mut candidate = images.to_vec();
                candidate[k] = y;
                SymmetricHomeo::from_half_images(&candidate)
            };
            let ratio = 0.5 * (3.0 - 5.0f64.sqrt());
            let mut x1 = a + ratio * (b - a);
            let mut x2 = b - ratio * (b - a);
            let mut f1v = phi_at(x1, &images).map(|p| reparam_objective(&f, &p))?;
            let mut f2v = phi_at(x2, &images).map(|p| reparam_objective(&f, &p))?;
            evals += 2;
            for _ in 0..8 {
                if evals >= budget {
                    break;
                }
                if f1v < f2v {
                    b = x2;
                    x2 = x1;
                    f2v = f1v;
                    x1 = a + ratio * (b - a);
                    f1v = phi_at(x1, &images).map(|p| reparam_objective(&f, &p))?;
                } else {
                    a = x1;
                    x1 = x2;
                    f1v = f2v;
                    x2 = b - ratio * (b - a);
                    f2v = phi_at(x2, &images).map(|p| reparam_objective(&f, &p))?;
                }
                evals += 1;
            }
            let (y, val) = if f1v < f2v { (x1, f1v) } else { (x2, f2v) };
            if val < best - 1e-12 {
                best = val;
                images[k] = y;
                best_phi = SymmetricHomeo::from_half_images(&images)?;
                improved = true;
            }
            if best <= target || evals >= budget {
                break 'outer;
            }
        }
        if !improved {
            break;
        }
    }
    Ok(ReparamResult {
        success: best <= target,
        phi: best_phi,
        achieved: best,
        objective_evals: evals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gallery::{riemann_rho, takagi};
    use crate::path::symmetry_report;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn affine_functions_have_zero_betas() {
        let exp = faber_coefficients(|t| c(t, 0.0), 6).unwrap();
        for m in 0..6 {
            for j in 1..=(1usize << m) {
                assert!(exp.beta(m, j).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn takagi_and_spike_betas() {
        let takagi_exp = faber_coefficients(|t| c(takagi(t, 48), 0.0), 3).unwrap();
        assert!((takagi_exp.beta(0, 1) - c(0.5, 0.0)).norm() < 1e-12);
        let spike = |t: f64| {
            if t <= 0.5 {
                c(0.0, 2.0 * t)
            } else {
                c(0.0, 2.0 * (1.0 - t))
            }
        };
        let spike_exp = faber_coefficients(spike, 3).unwrap();
        assert!((spike_exp.beta(0, 1) - c(0.0, 1.0)).norm() < 1e-15);
    }

    #[test]
    fn reconstruction_round_trip_at_dyadic_points() {
        let depth = 8;
        let f = |t: f64| c(takagi(t, 48), (PI * t).sin());
        let exp = faber_coefficients(f, depth).unwrap();
        let pieces = 1usize << depth;
        for k in 0..=pieces {
            let t = k as f64 / pieces as f64;
            assert!((exp.evaluate(t) - f(t)).norm() < 1e-12, "t = {t}");
        }
        // Re-extracting coefficients from the reconstruction reproduces them.
        let again = faber_coefficients(|t| exp.evaluate(t), depth).unwrap();
        for m in 0..depth {
            for j in 1..=(1usize << m) {
                assert!((exp.beta(m, j) - again.beta(m, j)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn depth_cap() {
        assert!(faber_coefficients(|t| c(t, 0.0), 21).is_err());
    }

    #[test]
    fn homeo_validation() {
        assert!(SymmetricHomeo::new(vec![(0.0, 0.0), (1.0, 1.0)]).is_ok());
        // Asymmetric images rejected.
        assert!(SymmetricHomeo::new(vec![
            (0.0, 0.0),
            (0.25, 0.4),
            (0.75, 0.7),
            (1.0, 1.0)
        ])
        .is_err());
        // Non-monotone rejected.
        assert!(SymmetricHomeo::new(vec![
            (0.0, 0.0),
            (0.25, 0.5),
            (0.75, 0.5),
            (1.0, 1.0)
        ])
        .is_err());
        let ok = SymmetricHomeo::new(vec![(0.0, 0.0), (0.25, 0.375), (0.75, 0.625), (1.0, 1.0)])
            .unwrap();
        assert!((ok.eval(0.5) - 0.5).abs() < 1e-15);
        assert!((ok.eval(0.25) - 0.375).abs() < 1e-15);
    }

    #[test]
    fn compose_identity_and_line() {
        let id = SymmetricHomeo::identity();
        let f = |t: f64| c(takagi(t, 32), 0.0);
        let composed = compose(f, &id);
        for i in 0..=32 {
            let t = i as f64 / 32.0;
            assert!((composed(t) - f(t)).norm() < 1e-15);
        }
        let phi = SymmetricHomeo::new(vec![(0.0, 0.0), (0.25, 0.375), (0.75, 0.625), (1.0, 1.0)])
            .unwrap();
        let line_composed = compose(|t| c(t, 0.0), &phi);
        assert!((line_composed(0.25) - c(0.375, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn compose_preserves_f0() {
        let phi = SymmetricHomeo::new(vec![(0.0, 0.0), (0.25, 0.375), (0.75, 0.625), (1.0, 1.0)])
            .unwrap();
        let takagi_graph = |t: f64| c(t, takagi(t, 48));
        let composed = compose(takagi_graph, &phi);
        let report = symmetry_report(composed, 2049);
        assert!(report.is_f0, "defect {}", report.max_defect);
        assert!(report.max_defect <= 1e-6);
    }

    #[test]
    fn beta01_invariant_under_symmetric_reparam() {
        // φ(½) = ½, so β(0,1) = f(½) − ½(f(0) + f(1)) never moves.
        let f = |t: f64| c(takagi(t, 48), (PI * t).sin());
        let base = faber_coefficients(f, 1).unwrap().beta(0, 1);
        for phi in [
            SymmetricHomeo::identity(),
            SymmetricHomeo::new(vec![(0.0, 0.0), (0.25, 0.375), (0.75, 0.625), (1.0, 1.0)])
                .unwrap(),
            SymmetricHomeo::from_half_images(&[0.1, 0.2, 0.26, 0.35, 0.4, 0.44, 0.48]).unwrap(),
        ] {
            let composed = compose(f, &phi);
            let b = faber_coefficients(composed, 1).unwrap().beta(0, 1);
            assert!((b - base).norm() < 1e-12);
        }
    }

    #[test]
    fn reparam_line_succeeds_immediately() {
        let res = reparam_search(|t| 1.5 * t, 50).unwrap();
        assert!(res.success);
        assert!(res.achieved < 1e-9, "u(f) = 0 for f = αt");
        assert_eq!(res.objective_evals, 1);
    }

    #[test]
    fn reparam_riemann_identity_suffices() {
        // |h·û(f)(h)| = 1/(2π) < 1/π already at the identity.
        let res = reparam_search(|t| riemann_rho(2.0 * t, 8), 50).unwrap();
        assert!(res.success);
        assert!(res.achieved <= 1.0 / PI + 1e-9);
    }

    #[test]
    fn reparam_reduces_triangular_pulse() {
        // Height-3 triangular zigzag, odd about ½ so that
        // f(t) + f(1−t) = f(1) = 0 holds; not in the support as
        // parameterized (|h·û(h)| > 1/π at h = 1).
        let pulse = |t: f64| {
            if t <= 0.25 {
                12.0 * t
            } else if t <= 0.75 {
                3.0 - 12.0 * (t - 0.25)
            } else {
                -3.0 + 12.0 * (t - 0.75)
            }
        };
        assert!((pulse(0.25) - 3.0).abs() < 1e-15 && (pulse(0.75) + 3.0).abs() < 1e-15);
        let id_obj = reparam_objective(&pulse, &SymmetricHomeo::identity());
        assert!(id_obj > 1.0 / PI, "identity objective {id_obj}");
        let res = reparam_search(pulse, 400).unwrap();
        assert!(res.achieved <= id_obj + 1e-12, "search never worsens");
        // Diagnostic only: record the achieved value, no success assertion.
        assert!(res.objective_evals <= 400);
    }

    #[test]
    fn reparam_rejects_asymmetric_input() {
        assert!(reparam_search(|t| t * t, 10).is_err());
        assert!(reparam_search(|t| 3.0 * t, 10).is_err());
        // Even tent about ½ violates f(t) + f(1−t) = f(1).
        assert!(reparam_search(|t| 1.0 - 2.0 * (t - 0.5).abs(), 10).is_err());
    }

    #[test]
    fn homeo_csv() {
        let phi = SymmetricHomeo::identity();
        assert_eq!(phi.to_csv(), "t,phi\n0,0\n1,1\n");
    }

    #[test]
    fn homeos_closed_under_composition() {
        let phi = SymmetricHomeo::new(vec![(0.0, 0.0), (0.25, 0.375), (0.75, 0.625), (1.0, 1.0)])
            .unwrap();
        let psi = SymmetricHomeo::from_half_images(&[0.1, 0.2, 0.26, 0.35, 0.4, 0.44, 0.48])
            .unwrap();
        let composed = phi.compose_with(&psi);
        // Still a valid symmetric homeomorphism …
        let knots: Vec<(f64, f64)> = composed.knots().collect();
        assert!(SymmetricHomeo::new(knots).is_ok());
        // … agreeing with pointwise composition everywhere.
        for i in 0..=256 {
            let t = i as f64 / 256.0;
            assert!((composed.eval(t) - phi.eval(psi.eval(t))).abs() < 1e-12);
        }
    }
}
