//! Exact modular arithmetic and the complete exponential sums underlying
//! all paths: normalized Kloosterman sums Kl₂(a,b;p), Birch sums B(a;p) and
//! Legendre character sums, together with their partial-sum sequences.
//!
//! All exponent arithmetic is done in integers modulo `p`; the unit circle
//! is only touched through a table of `p`-th roots of unity computed once
//! per prime.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Deterministic Miller-Rabin primality test, valid for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // This base set is known to be exact for the full u64 range.
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a % n, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Modular inverse by the extended Euclidean algorithm.
///
/// Requires `0 < x < p` with `gcd(x, p) = 1`; returns `y` with
/// `x·y ≡ 1 (mod p)` and `0 < y < p`.
pub fn mod_inverse(x: u64, p: u64) -> Result<u64> {
    if x == 0 || x % p == 0 {
        return Err(Error::NotInvertible { x, p });
    }
    let (mut r0, mut r1) = (p as i128, (x % p) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { x, p });
    }
    Ok(s0.rem_euclid(p as i128) as u64)
}

/// Kind of complete exponential sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SumKind {
    /// Kl₂(a,b;p) = p^{−1/2} Σ_{x∈𝔽_p^×} e((ax + b·x̄)/p), with a, b ≢ 0.
    Kloosterman { a: u64, b: u64 },
    /// B(a;p) = p^{−1/2} Σ_{0≤x<p} e((ax + x³)/p).
    Birch { a: u64 },
    /// Partial sums of the Legendre symbol, p^{−1/2} Σ χ(x).
    LegendreCharacter,
}

/// A validated specification of one complete exponential sum modulo an odd
/// prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumSpec {
    p: u64,
    kind: SumKind,
}

impl SumSpec {
    pub fn new(p: u64, kind: SumKind) -> Result<Self> {
        if p < 3 || p % 2 == 0 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let kind = match kind {
            SumKind::Kloosterman { a, b } => {
                let (a, b) = (a % p, b % p);
                if a == 0 || b == 0 {
                    return Err(Error::InvalidSpec(format!(
                        "Kloosterman residues must be invertible mod {p}: got a = {a}, b = {b}"
                    )));
                }
                SumKind::Kloosterman { a, b }
            }
            SumKind::Birch { a } => SumKind::Birch { a: a % p },
            SumKind::LegendreCharacter => SumKind::LegendreCharacter,
        };
        Ok(SumSpec { p, kind })
    }

    pub fn kloosterman(a: u64, b: u64, p: u64) -> Result<Self> {
        Self::new(p, SumKind::Kloosterman { a, b })
    }

    pub fn birch(a: u64, p: u64) -> Result<Self> {
        Self::new(p, SumKind::Birch { a })
    }

    pub fn legendre(p: u64) -> Result<Self> {
        Self::new(p, SumKind::LegendreCharacter)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn kind(&self) -> SumKind {
        self.kind
    }
}

/// Per-prime tables shared by every sum and path built modulo `p`: the
/// `p`-th roots of unity, the inverse table and the Legendre symbol table.
/// Immutable after construction, so it can be shared across worker threads.
pub struct PrimeContext {
    p: u64,
    roots: Vec<Complex64>,
    inv: Vec<u32>,
    legendre: Vec<i8>,
}

impl PrimeContext {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let n = p as usize;
        let mut roots = Vec::with_capacity(n);
        for k in 0..n {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / p as f64;
            roots.push(Complex64::new(theta.cos(), theta.sin()));
        }
        // Linear-time inverse table: inv[x] = -(p / x) * inv[p mod x] mod p.
        let mut inv = vec![0u32; n];
        if n > 1 {
            inv[1] = 1;
        }
        for x in 2..n {
            let q = p / x as u64;
            let r = (p % x as u64) as usize;
            inv[x] = (((p - q % p) * inv[r] as u64) % p) as u32;
        }
        let mut legendre = vec![-1i8; n];
        legendre[0] = 0;
        for x in 1..n {
            legendre[(x * x) % n] = 1;
        }
        Ok(PrimeContext {
            p,
            roots,
            inv,
            legendre,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    /// e(k/p) for any integer residue class `k`.
    #[inline]
    pub fn root(&self, k: u64) -> Complex64 {
        self.roots[(k % self.p) as usize]
    }

    #[inline]
    pub fn inverse(&self, x: u64) -> u64 {
        self.inv[(x % self.p) as usize] as u64
    }

    /// Legendre symbol (x|p) as −1, 0, 1.
    #[inline]
    pub fn legendre(&self, x: u64) -> i8 {
        self.legendre[(x % self.p) as usize]
    }
}

/// Normalized partial sums of `spec`, starting from the empty sum.
///
/// - Kloosterman: z_j = p^{−1/2} Σ_{1≤x≤j} e((ax + b·x̄)/p), j = 0..p−1.
/// - Birch: z_j = p^{−1/2} Σ_{0≤x≤j−1} e((ax + x³)/p), j = 0..p.
/// - Legendre: z_j = p^{−1/2} Σ_{1≤x≤j} χ(x), j = 0..p−1.
pub fn partial_sums(spec: &SumSpec) -> Vec<Complex64> {
    let ctx = PrimeContext::new(spec.p()).expect("validated spec");
    partial_sums_with(&ctx, spec)
}

/// Same as [`partial_sums`] but reusing a shared [`PrimeContext`].
pub fn partial_sums_with(ctx: &PrimeContext, spec: &SumSpec) -> Vec<Complex64> {
    assert_eq!(ctx.p(), spec.p(), "context and spec must share the modulus");
    let p = ctx.p();
    let scale = 1.0 / (p as f64).sqrt();
    match spec.kind() {
        SumKind::Kloosterman { a, b } => {
            let mut out = Vec::with_capacity(p as usize);
            let mut acc = Complex64::new(0.0, 0.0);
            out.push(acc);
            for x in 1..p {
                let e = (a * x + b * ctx.inverse(x)) % p;
                acc += scale * ctx.root(e);
                out.push(acc);
            }
            out
        }
        SumKind::Birch { a } => {
            let mut out = Vec::with_capacity(p as usize + 1);
            let mut acc = Complex64::new(0.0, 0.0);
            out.push(acc);
            for x in 0..p {
                let e = (mul_mod(a, x, p) + mul_mod(mul_mod(x, x, p), x, p)) % p;
                acc += scale * ctx.root(e);
                out.push(acc);
            }
            out
        }
        SumKind::LegendreCharacter => {
            let mut out = Vec::with_capacity(p as usize);
            let mut acc = Complex64::new(0.0, 0.0);
            out.push(acc);
            for x in 1..p {
                acc += scale * ctx.legendre(x) as f64;
                out.push(acc);
            }
            out
        }
    }
}

/// Value of Kl₂(a,b;p) for any residue `a` (including `a ≡ 0`, which is not
/// expressible as a [`SumSpec`] but appears in shifted sums Kl₂(a−h,b;p)).
pub fn kloosterman_value(ctx: &PrimeContext, a: u64, b: u64) -> Complex64 {
    let p = ctx.p();
    debug_assert!(b % p != 0);
    let scale = 1.0 / (p as f64).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 1..p {
        acc += ctx.root((a % p) * x + (b % p) * ctx.inverse(x));
    }
    scale * acc
}

/// Value of B(a;p) for any residue `a`.
pub fn birch_value(ctx: &PrimeContext, a: u64) -> Complex64 {
    let p = ctx.p();
    let scale = 1.0 / (p as f64).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 0..p {
        acc += ctx.root(mul_mod(a % p, x, p) + mul_mod(mul_mod(x, x, p), x, p));
    }
    scale * acc
}

/// A complete exponential sum together with its mid-path value.
#[derive(Debug, Clone, Copy)]
pub struct CompleteSum {
    pub spec: SumSpec,
    /// The full normalized sum (Kl₂, B, or the character sum).
    pub value: Complex64,
    /// Kloosterman only: the partial sum at j = (p−1)/2, so that
    /// 2·Re(half_value) = value.
    pub half_value: Option<Complex64>,
}

/// Evaluates the complete sum of `spec` along with the mid-path partial sum
/// for Kloosterman specifications.
pub fn complete_sum(spec: &SumSpec) -> CompleteSum {
    let sums = partial_sums(spec);
    let value = *sums.last().expect("non-empty partial sums");
    let half_value = match spec.kind() {
        SumKind::Kloosterman { .. } => Some(sums[(spec.p() as usize - 1) / 2]),
        _ => None,
    };
    CompleteSum {
        spec: *spec,
        value,
        half_value,
    }
}

/// Normalized Gauss sum τ(χ) = p^{−1/2} Σ_x χ(x) e(x/p) for the Legendre
/// symbol modulo `p`; |τ(χ)| = 1.
pub fn gauss_sum(p: u64) -> Result<Complex64> {
    let ctx = PrimeContext::new(p)?;
    let scale = 1.0 / (p as f64).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for x in 1..p {
        acc += ctx.legendre(x) as f64 * ctx.root(x);
    }
    Ok(scale * acc)
}
