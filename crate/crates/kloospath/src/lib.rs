//! Partial-sum paths of complete exponential sums modulo a prime.
//!
//! The library computes Kloosterman, Birch and Legendre-character partial
//! sums, interpolates them into polygonal paths on `[0, 1]`, and decides
//! whether a given path (or classical curve) lies in the support 𝒮 of the
//! limiting random Fourier series
//!
//! ```text
//! K(t) = t·ST₀ + Σ_{h≠0} (e(ht) − 1)/(2πih) · ST_h
//! ```
//!
//! with independent Sato-Tate coefficients.  A continuous `f` with
//! `f(0) = 0` belongs to 𝒮 exactly when `f(1) ∈ [−2, 2]` and all expansion
//! coefficients `α_h = f(1) + 2πih·f̂(h)` are real with `|α_h| ≤ 2`.
//!
//! ```
//! use kloospath::{check_polygonal, kloosterman_path};
//!
//! // The first Kloosterman path outside the support.
//! let path = kloosterman_path(8, 1, 19)?;
//! let verdict = check_polygonal(&path)?;
//! assert!(!verdict.in_support());
//! assert!(verdict.witness_value.unwrap() > 2.0);
//! # Ok::<(), kloospath::Error>(())
//! ```
//!
//! Modules:
//! - [`modarith`]: exact modular arithmetic and the complete/partial sums,
//! - [`path`]: the polygonal path model and concrete path constructions,
//! - [`dft`]: arbitrary-length DFT (Bluestein) plus the naive oracle,
//! - [`fourier`]: polygonal Fourier coefficients, `f̃(h)` tables,
//!   quadrature and Cesàro reconstruction,
//! - [`membership`]: the support criterion, brute-force oracle and per-prime
//!   classification tables,
//! - [`gallery`]: classical curves (Takagi, Riemann, Cantor, …) with
//!   closed-form coefficients and verdicts,
//! - [`stochastic`]: Sato-Tate sampling and Monte Carlo ball probabilities,
//! - [`faber`]: Faber–Schauder expansions and symmetric reparameterization.

pub mod dft;
pub mod faber;
pub mod fourier;
pub mod gallery;
pub mod membership;
pub mod modarith;
pub mod path;
pub mod stochastic;

pub use fourier::{polygonal_fourier, quadrature_fourier, CoeffTable, TildeTable};
pub use membership::{
    brute_force_verdict, check_alpha_sequence, check_polygonal, check_polygonal_general,
    classify_prime, ClassifyRow, FrequencyScan, MembershipVerdict, PathKind, SupportStatus,
};
pub use modarith::{complete_sum, gauss_sum, mod_inverse, partial_sums, SumKind, SumSpec};
pub use path::{
    kloosterman_path, padded_birch_path, padded_character_path, padded_kloosterman_path,
    swiss_clock_path, symmetry_report, PolyPath, SymmetryReport,
};

/// Errors shared across the crate.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime")]
    InvalidModulus(u64),
    #[error("residue {x} is not invertible modulo {p}")]
    NotInvertible { x: u64, p: u64 },
    #[error("invalid sum specification: {0}")]
    InvalidSpec(String),
    #[error("invalid polygonal path: {0}")]
    InvalidPath(String),
    #[error("evaluation point {0} outside [0, 1]")]
    OutOfDomain(f64),
    #[error("frequency h = 0 is not a valid Fourier index here")]
    ZeroFrequency,
    #[error("path does not have equal knot spacing")]
    UnequalSpacing,
    #[error("quadrature did not converge: last two estimates {last} and {previous}")]
    QuadratureDivergence {
        last: num_complex::Complex64,
        previous: num_complex::Complex64,
    },
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("homeomorphism knots must be strictly increasing and symmetric: {0}")]
    InvalidHomeomorphism(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
