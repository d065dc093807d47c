//! The quadratic Gauss sum
//!
//! ```text
//! S(m, n) = n^{-1/2} Σ_{l=0}^{n-1} ζ_{2n}^{(n-l) l m},   ζ_k = e^{2πi/k}.
//! ```
//!
//! [`gauss_direct`] evaluates the sum literally in double precision;
//! [`gauss_closed`] gives the exact value from the 2-adic case split
//! (Jacobi-symbol sign times `√(m, n)`, a power of `i` or an eighth root of
//! unity, or zero).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{self, gcd, jacobi_symbol};
use crate::error::{Error, Result};
use crate::radical::{ApproxComplex, ComplexRadical, RadicalValue};

/// `ζ_order^k` for `k = 0..order`.
pub fn roots_of_unity(order: u64) -> Vec<Complex64> {
    (0..order)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / order as f64))
        .collect()
}

/// `(n − l)·l·m mod 2n`, exactly.
fn quadratic_exponent(m: i64, n: u64, l: u64) -> usize {
    let modulus = 2 * n as i128;
    let e = (n - l) as i128 * l as i128 % modulus * (m as i128).rem_euclid(modulus);
    e.rem_euclid(modulus) as usize
}

/// Literal summation, exponents reduced mod `2n` before lookup.
pub fn gauss_direct(m: i64, n: u64) -> ApproxComplex {
    assert!(n >= 1, "gauss_direct: n must be positive");
    let roots = roots_of_unity(2 * n);
    let sum: Complex64 = (0..n).map(|l| roots[quadratic_exponent(m, n, l)]).sum();
    sum / (n as f64).sqrt()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GaussCaseTag {
    /// `v₂(n) = 0` or `v₂(m) > v₂(n) > 0`: ν odd, real or imaginary value.
    A,
    /// `v₂(n) > v₂(m)`: an eighth root of unity times `√(m, n)`.
    B,
    /// `v₂(n) = v₂(m) ≥ 1`: the sum vanishes.
    C,
}

/// Case label plus `d = (m, n)`, `ν = n/d`, `μ = m/d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct GaussCase {
    pub tag: GaussCaseTag,
    pub d: u64,
    pub nu: u64,
    pub mu: u64,
}

/// Classifies `S(m, n)` for `m, n ≥ 1`.
pub fn classify(m: u64, n: u64) -> Result<GaussCase> {
    if m == 0 || n == 0 {
        return Err(Error::invalid("classify: m and n must be positive"));
    }
    let d = gcd(m, n);
    let (vm, vn) = (arith::v(m, 2), arith::v(n, 2));
    let tag = if vn == 0 || vm > vn {
        GaussCaseTag::A
    } else if vn > vm {
        GaussCaseTag::B
    } else {
        GaussCaseTag::C
    };
    Ok(GaussCase {
        tag,
        d,
        nu: n / d,
        mu: m / d,
    })
}

/// Exact `S(m, n)` for any integer `m`.
///
/// The case formulas hold for every `m ≥ 1`; `S(0, n) = √n` and
/// `S(−m, n)` is the complex conjugate of `S(m, n)`.
pub fn gauss_closed(m: i64, n: u64) -> Result<ComplexRadical> {
    if n == 0 {
        return Err(Error::invalid("gauss_closed: n must be positive"));
    }
    if m == 0 {
        return Ok(RadicalValue::sqrt_int(n)?.into());
    }
    if m < 0 {
        return Ok(gauss_closed(-m, n)?.conj());
    }
    let case = classify(m as u64, n)?;
    let root = RadicalValue::sqrt_int(case.d)?;
    // (n − 1)μ, reduced where only its residue matters
    let t = u128::from(n - 1) * u128::from(case.mu);
    Ok(match case.tag {
        GaussCaseTag::A => {
            // t is even here; the sign is (t/2 | ν) and i^ν selects 1 or i
            let top = ((t / 2) % u128::from(case.nu)) as i64;
            let sign = jacobi_symbol(top, case.nu)?;
            let v = root.scale_int(sign.into());
            if case.nu % 4 == 1 {
                ComplexRadical::real(v)
            } else {
                ComplexRadical::new(RadicalValue::zero(), v)
            }
        }
        GaussCaseTag::B => {
            // t is odd; e^{±iπ/4} for i^t = ±i, times (2ν | t)
            let t_mod =
                u64::try_from(t).map_err(|_| Error::invalid("gauss_closed: (n-1)m overflows"))?;
            let top = (u128::from(2 * case.nu) % t) as i64;
            let sign = jacobi_symbol(top, t_mod)?;
            ComplexRadical::eighth_root(t % 4 == 1).scale(&root.scale_int(sign.into()))
        }
        GaussCaseTag::C => ComplexRadical::zero(),
    })
}

/// `|S(m, n)|` for `0 < m < n`: zero when `n` is even and both `n/(m,n)`
/// and `m/(m,n)` are odd, `√(m, n)` otherwise.
pub fn gauss_abs(m: u64, n: u64) -> Result<RadicalValue> {
    if m == 0 || m >= n {
        return Err(Error::invalid(format!(
            "gauss_abs: need 0 < m < n, got m = {m}, n = {n}"
        )));
    }
    let d = gcd(m, n);
    if vanishes(m, n, d) {
        Ok(RadicalValue::zero())
    } else {
        RadicalValue::sqrt_int(d)
    }
}

pub(crate) fn vanishes(m: u64, n: u64, d: u64) -> bool {
    n % 2 == 0 && (n / d) % 2 == 1 && (m / d) % 2 == 1
}

/// Both sides of
/// `|n⁻¹ Σ_l ζ_n^{kl} ζ_{2n}^{(n−l)lm}|² = n⁻¹ Σ_l ζ_n^{kl} ζ_{2n}^{(n−l)lm} δ^{(n)}_{ml,0}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CorollaryValues {
    pub lhs: f64,
    pub rhs: ApproxComplex,
}

impl CorollaryValues {
    pub fn deviation(&self) -> f64 {
        (Complex64::new(self.lhs, 0.0) - self.rhs).norm()
    }
}

pub fn corollary_identity(k: i64, m: i64, n: u64) -> CorollaryValues {
    assert!(n >= 1, "corollary_identity: n must be positive");
    let roots = roots_of_unity(2 * n);
    let modulus = 2 * n as i128;
    let phase = |l: u64| {
        // ζ_n^{kl} = ζ_{2n}^{2kl}
        let lin = (2 * k as i128 * l as i128).rem_euclid(modulus) as usize;
        roots[(lin + quadratic_exponent(m, n, l)) % (2 * n as usize)]
    };
    let full: Complex64 = (0..n).map(phase).sum::<Complex64>() / n as f64;
    let partial: Complex64 = (0..n)
        .filter(|&l| (m as i128 * l as i128).rem_euclid(n as i128) == 0)
        .map(phase)
        .sum::<Complex64>()
        / n as f64;
    CorollaryValues {
        lhs: full.norm_sqr(),
        rhs: partial,
    }
}
