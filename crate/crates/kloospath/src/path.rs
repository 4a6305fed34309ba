//! The polygonal path model and the concrete path constructions: plain
//! Kloosterman paths, the Swiss-railway-clock variant with a mid-path pause,
//! the padded variants with pauses at both ends, Birch paths and Legendre
//! character paths.  Also the 𝓕₀ symmetry test
//! `f(t) + conj(f(1−t)) = f(1)` that every support member must satisfy.

use num_complex::Complex64;

use crate::modarith::{partial_sums_with, PrimeContext, SumSpec};
use crate::{Error, Result};

/// A polygonal curve: complex vertices z_0..z_n at strictly increasing knot
/// times t_0 = 0 < … < t_n = 1, evaluated by linear interpolation.
#[derive(Debug, Clone)]
pub struct PolyPath {
    vertices: Vec<Complex64>,
    knots: Vec<f64>,
}

impl PolyPath {
    pub fn new(vertices: Vec<Complex64>, knots: Vec<f64>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::InvalidPath("need at least one segment".into()));
        }
        if vertices.len() != knots.len() {
            return Err(Error::InvalidPath(format!(
                "{} vertices but {} knots",
                vertices.len(),
                knots.len()
            )));
        }
        if knots[0].abs() > 1e-12 || (knots[knots.len() - 1] - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidPath("knots must start at 0 and end at 1".into()));
        }
        if knots.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidPath("knots must be strictly increasing".into()));
        }
        Ok(PolyPath { vertices, knots })
    }

    /// Path through `vertices` at equally spaced knots j/n.
    pub fn equally_spaced(vertices: Vec<Complex64>) -> Result<Self> {
        let n = vertices.len().checked_sub(1).filter(|&n| n >= 1).ok_or_else(|| {
            Error::InvalidPath("need at least one segment".into())
        })?;
        let knots = (0..=n).map(|j| j as f64 / n as f64).collect();
        PolyPath::new(vertices, knots)
    }

    pub fn n_segments(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn vertices(&self) -> &[Complex64] {
        &self.vertices
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    /// Δ_j = t_{j+1} − t_j.
    pub fn delta(&self, j: usize) -> f64 {
        self.knots[j + 1] - self.knots[j]
    }

    /// Step difference d_j = z_{j+1} − z_j.
    pub fn step(&self, j: usize) -> Complex64 {
        self.vertices[j + 1] - self.vertices[j]
    }

    pub fn steps(&self) -> Vec<Complex64> {
        (0..self.n_segments()).map(|j| self.step(j)).collect()
    }

    /// f(1), the path endpoint.
    pub fn endpoint(&self) -> Complex64 {
        *self.vertices.last().unwrap()
    }

    /// V = Σ_j |z_{j+1} − z_j|.
    pub fn total_variation(&self) -> f64 {
        (0..self.n_segments()).map(|j| self.step(j).norm()).sum()
    }

    /// Returns the common spacing 1/n when all Δ_j agree to 1e−12.
    pub fn equal_spacing(&self) -> Option<f64> {
        let n = self.n_segments();
        let target = 1.0 / n as f64;
        for j in 0..n {
            if (self.delta(j) - target).abs() > 1e-12 {
                return None;
            }
        }
        Some(target)
    }

    /// Piecewise-linear evaluation; exact at knots.
    pub fn eval(&self, t: f64) -> Result<Complex64> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::OutOfDomain(t));
        }
        // partition_point returns the first knot strictly greater than t,
        // so seg is the segment whose half-open interval contains t.
        let idx = self.knots.partition_point(|&k| k <= t);
        if idx == self.knots.len() {
            return Ok(self.endpoint());
        }
        let seg = idx - 1;
        let w = (t - self.knots[seg]) / self.delta(seg);
        Ok(self.vertices[seg] * (1.0 - w) + self.vertices[seg + 1] * w)
    }

    /// CSV serialization with columns t, re, im (one row per vertex).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,re,im\n");
        for (t, z) in self.knots.iter().zip(self.vertices.iter()) {
            out.push_str(&format!("{},{},{}\n", t, z.re, z.im));
        }
        out
    }

    /// SVG 1.1 polyline, auto-fit into the viewport with a 5% margin.
    pub fn to_svg(&self, width: u32, height: u32) -> String {
        let (mut min_x, mut max_x) = (f64::INFINITY, f64::NEG_INFINITY);
        let (mut min_y, mut max_y) = (f64::INFINITY, f64::NEG_INFINITY);
        for z in &self.vertices {
            min_x = min_x.min(z.re);
            max_x = max_x.max(z.re);
            min_y = min_y.min(z.im);
            max_y = max_y.max(z.im);
        }
        let span_x = (max_x - min_x).max(1e-12);
        let span_y = (max_y - min_y).max(1e-12);
        let margin = 0.05;
        let scale = ((1.0 - 2.0 * margin) * width as f64 / span_x)
            .min((1.0 - 2.0 * margin) * height as f64 / span_y);
        let off_x = (width as f64 - scale * span_x) / 2.0;
        let off_y = (height as f64 - scale * span_y) / 2.0;
        let mut points = String::new();
        for z in &self.vertices {
            let x = off_x + (z.re - min_x) * scale;
            // SVG y grows downward.
            let y = height as f64 - (off_y + (z.im - min_y) * scale);
            points.push_str(&format!("{:.3},{:.3} ", x, y));
        }
        format!(
            "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n\
             <svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
             width=\"{width}\" height=\"{height}\" \
             viewBox=\"0 0 {width} {height}\">\n\
             <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
             <polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" \
             points=\"{}\"/>\n</svg>\n",
            points.trim_end()
        )
    }
}

/// Outcome of the 𝓕₀ symmetry test.
#[derive(Debug, Clone, Copy)]
pub struct SymmetryReport {
    pub is_f0: bool,
    /// f(1).
    pub f1: Complex64,
    /// Largest |f(t) + conj(f(1−t)) − f(1)| over the test points.
    pub max_defect: f64,
    /// |f(0)|.
    pub f0_defect: f64,
}

pub const SYMMETRY_TOL: f64 = 1e-9;

/// Default grid size for testing analytic (non-polygonal) functions.
pub const DEFAULT_SYMMETRY_GRID: usize = 4097;

fn report_from_points<F: Fn(f64) -> Complex64>(f: &F, points: &[f64]) -> SymmetryReport {
    let f1 = f(1.0);
    let f0_defect = f(0.0).norm();
    let mut max_defect = 0.0f64;
    for &t in points {
        let defect = (f(t) + f(1.0 - t).conj() - f1).norm();
        max_defect = max_defect.max(defect);
    }
    SymmetryReport {
        is_f0: f0_defect <= SYMMETRY_TOL
            && max_defect <= SYMMETRY_TOL
            && f1.im.abs() <= SYMMETRY_TOL,
        f1,
        max_defect,
        f0_defect,
    }
}

/// 𝓕₀ test for an arbitrary evaluable function on a uniform grid
/// (`grid_size` ≥ 2; [`DEFAULT_SYMMETRY_GRID`] is the usual choice).
pub fn symmetry_report<F: Fn(f64) -> Complex64>(f: F, grid_size: usize) -> SymmetryReport {
    assert!(grid_size >= 2);
    let points: Vec<f64> = (0..grid_size)
        .map(|i| i as f64 / (grid_size - 1) as f64)
        .collect();
    report_from_points(&f, &points)
}

/// 𝓕₀ test for a polygonal path, evaluated at the knots united with the
/// reflected knots (the symmetry defect of a piecewise-linear function
/// attains its maximum there).
pub fn symmetry_report_path(path: &PolyPath) -> SymmetryReport {
    let mut points: Vec<f64> = path.knots().to_vec();
    points.extend(path.knots().iter().map(|&t| 1.0 - t));
    points.retain(|t| (0.0..=1.0).contains(t));
    points.sort_by(|a, b| a.partial_cmp(b).unwrap());
    points.dedup();
    report_from_points(&|t| path.eval(t).expect("in-domain"), &points)
}

/// The plain Kloosterman path: n = p−1 equal segments joining the partial
/// sums, with endpoint Kl₂(a,b;p).
pub fn kloosterman_path(a: u64, b: u64, p: u64) -> Result<PolyPath> {
    let ctx = PrimeContext::new(p)?;
    kloosterman_path_with(&ctx, a, b)
}

/// [`kloosterman_path`] reusing a shared [`PrimeContext`].
pub fn kloosterman_path_with(ctx: &PrimeContext, a: u64, b: u64) -> Result<PolyPath> {
    let spec = SumSpec::kloosterman(a, b, ctx.p())?;
    PolyPath::equally_spaced(partial_sums_with(ctx, &spec))
}

/// The Swiss-railway-clock variant: n = p equal segments with one
/// zero-length step at the middle, z_{(p−1)/2} = z_{(p+1)/2}.
pub fn swiss_clock_path(a: u64, b: u64, p: u64) -> Result<PolyPath> {
    let ctx = PrimeContext::new(p)?;
    swiss_clock_path_with(&ctx, a, b)
}

pub fn swiss_clock_path_with(ctx: &PrimeContext, a: u64, b: u64) -> Result<PolyPath> {
    let spec = SumSpec::kloosterman(a, b, ctx.p())?;
    let sums = partial_sums_with(ctx, &spec);
    let p = ctx.p() as usize;
    let mut vertices = Vec::with_capacity(p + 1);
    for j in 0..=p {
        let idx = if j <= (p - 1) / 2 { j } else { j - 1 };
        vertices.push(sums[idx]);
    }
    PolyPath::equally_spaced(vertices)
}

/// Knots 0, (i−½)/p for 1 ≤ i ≤ p, 1 — pauses of duration 1/(2p) at both
/// ends of the path.
fn padded_knots(p: u64) -> Vec<f64> {
    let mut knots = Vec::with_capacity(p as usize + 2);
    knots.push(0.0);
    for i in 1..=p {
        knots.push((i as f64 - 0.5) / p as f64);
    }
    knots.push(1.0);
    knots
}

/// The padded Kloosterman path: pauses of duration 1/(2p) at both ends, so
/// z_0 = z_1 = 0 and z_p = z_{p+1} = Kl₂(a,b;p).
pub fn padded_kloosterman_path(a: u64, b: u64, p: u64) -> Result<PolyPath> {
    let ctx = PrimeContext::new(p)?;
    padded_kloosterman_path_with(&ctx, a, b)
}

pub fn padded_kloosterman_path_with(ctx: &PrimeContext, a: u64, b: u64) -> Result<PolyPath> {
    let spec = SumSpec::kloosterman(a, b, ctx.p())?;
    let sums = partial_sums_with(ctx, &spec);
    let p = ctx.p() as usize;
    let mut vertices = Vec::with_capacity(p + 2);
    vertices.push(Complex64::new(0.0, 0.0));
    for i in 1..=p {
        vertices.push(sums[i - 1]);
    }
    vertices.push(sums[p - 1]);
    PolyPath::new(vertices, padded_knots(ctx.p()))
}

/// The padded Birch path: the x = 0 summand 1/√p is split into two halves
/// carried by the boundary segments, so the path starts and ends with steps
/// of length 1/(2√p) instead of pauses.
pub fn padded_birch_path(a: u64, p: u64) -> Result<PolyPath> {
    let ctx = PrimeContext::new(p)?;
    padded_birch_path_with(&ctx, a)
}

pub fn padded_birch_path_with(ctx: &PrimeContext, a: u64) -> Result<PolyPath> {
    let spec = SumSpec::birch(a, ctx.p())?;
    let sums = partial_sums_with(ctx, &spec);
    let p = ctx.p() as usize;
    let half = 0.5 / (ctx.p() as f64).sqrt();
    let mut vertices = Vec::with_capacity(p + 2);
    vertices.push(Complex64::new(0.0, 0.0));
    for i in 1..=p {
        vertices.push(sums[i] - half);
    }
    vertices.push(sums[p]);
    PolyPath::new(vertices, padded_knots(ctx.p()))
}

/// The padded Legendre character path; f(1) = 0 by orthogonality, and the
/// path lies in 𝓕₀ exactly when p ≡ 1 (mod 4).
pub fn padded_character_path(p: u64) -> Result<PolyPath> {
    let ctx = PrimeContext::new(p)?;
    padded_character_path_with(&ctx)
}

pub fn padded_character_path_with(ctx: &PrimeContext) -> Result<PolyPath> {
    let spec = SumSpec::legendre(ctx.p())?;
    let sums = partial_sums_with(ctx, &spec);
    let p = ctx.p() as usize;
    let mut vertices = Vec::with_capacity(p + 2);
    vertices.push(Complex64::new(0.0, 0.0));
    for i in 1..=p {
        vertices.push(sums[i - 1]);
    }
    vertices.push(sums[p - 1]);
    PolyPath::new(vertices, padded_knots(ctx.p()))
}
