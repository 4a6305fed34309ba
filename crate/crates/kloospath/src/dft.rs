//! Arbitrary-length discrete Fourier transform.
//!
//! Path lengths here are `p − 1`, `p` or `4ⁿ`, which are rarely powers of
//! two, so the general case goes through Bluestein's chirp-z reduction to a
//! power-of-two convolution.  The naive O(n²) transform stays available as
//! the independent oracle.

use num_complex::Complex64;
use std::f64::consts::PI;

/// X_k = Σ_j x_j e(−jk/n), computed term by term.  O(n²); the oracle.
pub fn naive_dft(input: &[Complex64]) -> Vec<Complex64> {
    let n = input.len();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Complex64::new(0.0, 0.0);
        for (j, &x) in input.iter().enumerate() {
            // Exact reduction of j·k modulo n keeps the angle small.
            let theta = -2.0 * PI * ((j * k) % n) as f64 / n as f64;
            acc += x * Complex64::new(theta.cos(), theta.sin());
        }
        out.push(acc);
    }
    out
}

/// A reusable forward-DFT plan for one fixed length.
///
/// Power-of-two lengths run a plain radix-2 transform; all other lengths use
/// Bluestein's identity jk = (j² + k² − (k−j)²)/2, turning the transform
/// into one cyclic convolution of length `m = 2^⌈log₂(2n−1)⌉`.
pub struct Dft {
    n: usize,
    kind: PlanKind,
}

enum PlanKind {
    Radix2 {
        twiddles: Vec<Complex64>,
    },
    Bluestein {
        m: usize,
        twiddles: Vec<Complex64>,
        /// chirp[j] = e(−j²/(2n)) for j = 0..n.
        chirp: Vec<Complex64>,
        /// Forward FFT of the zero-padded conjugate chirp.
        kernel_fft: Vec<Complex64>,
    },
}

impl Dft {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1);
        if n.is_power_of_two() {
            return Dft {
                n,
                kind: PlanKind::Radix2 {
                    twiddles: make_twiddles(n),
                },
            };
        }
        let m = (2 * n - 1).next_power_of_two();
        let twiddles = make_twiddles(m);
        // j² mod 2n in integers, so the chirp phase stays exact for large n.
        let chirp: Vec<Complex64> = (0..n)
            .map(|j| {
                let sq = ((j as u128 * j as u128) % (2 * n as u128)) as f64;
                let theta = -PI * sq / n as f64;
                Complex64::new(theta.cos(), theta.sin())
            })
            .collect();
        let mut kernel = vec![Complex64::new(0.0, 0.0); m];
        kernel[0] = chirp[0].conj();
        for j in 1..n {
            let v = chirp[j].conj();
            kernel[j] = v;
            kernel[m - j] = v;
        }
        fft_pow2(&mut kernel, &twiddles, false);
        Dft {
            n,
            kind: PlanKind::Bluestein {
                m,
                twiddles,
                chirp,
                kernel_fft: kernel,
            },
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Forward transform X_k = Σ_j x_j e(−jk/n).
    pub fn transform(&self, input: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(input.len(), self.n);
        match &self.kind {
            PlanKind::Radix2 { twiddles } => {
                let mut buf = input.to_vec();
                fft_pow2(&mut buf, twiddles, false);
                buf
            }
            PlanKind::Bluestein {
                m,
                twiddles,
                chirp,
                kernel_fft,
            } => {
                let mut buf = vec![Complex64::new(0.0, 0.0); *m];
                for j in 0..self.n {
                    buf[j] = input[j] * chirp[j];
                }
                fft_pow2(&mut buf, twiddles, false);
                for (b, k) in buf.iter_mut().zip(kernel_fft.iter()) {
                    *b *= k;
                }
                fft_pow2(&mut buf, twiddles, true);
                let scale = 1.0 / *m as f64;
                (0..self.n).map(|k| buf[k] * chirp[k] * scale).collect()
            }
        }
    }
}

fn make_twiddles(n: usize) -> Vec<Complex64> {
    (0..n / 2)
        .map(|k| {
            let theta = -2.0 * PI * k as f64 / n as f64;
            Complex64::new(theta.cos(), theta.sin())
        })
        .collect()
}

/// In-place iterative radix-2 transform; `inverse` flips the twiddle sign
/// but applies no 1/n scaling.
fn fft_pow2(buf: &mut [Complex64], twiddles: &[Complex64], inverse: bool) {
    let n = buf.len();
    debug_assert!(n.is_power_of_two());
    debug_assert_eq!(twiddles.len(), n / 2);
    // Bit-reversal permutation.
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            buf.swap(i, j);
        }
    }
    let mut len = 2;
    while len <= n {
        let step = n / len;
        for start in (0..n).step_by(len) {
            for k in 0..len / 2 {
                let mut w = twiddles[k * step];
                if inverse {
                    w = w.conj();
                }
                let u = buf[start + k];
                let v = buf[start + k + len / 2] * w;
                buf[start + k] = u + v;
                buf[start + k + len / 2] = u - v;
            }
        }
        len <<= 1;
    }
}
