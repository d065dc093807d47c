//! Multiplicative functions built on the Gauss sum.
//!
//! * `h(n)`: the sum of `|S(m, n)|` over `0 < m < n` plus `√n` (odd `n`) or
//!   `√n/2` (even `n`), equivalently `ξ_s` minus an even-`n` correction.
//! * `h⁽¹⁾_{f,p}`, `h⁽²⁾_{f,p}`: `ξ_f(n)` minus `κ_{v_p(n)}` times a partial
//!   gcd sum over `k` with `v_p(k) = v_p(n) − a` (resp. `≥`), parametrized by
//!   a privileged prime `p` and sequences `κ_α`, `a_α` ([`GenParams`]).
//! * `h♯(n)`: the sum of `Re S(m, n)` over `1 ≤ m ≤ n` plus `√n/2` for even
//!   `n`; it equals `√n·ν` for `n = λν²` odd and `√n·η` for `n/2 = κη²`,
//!   and is `ξ_{f♯}` for an explicit `f♯`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, gcd, squarefree_of};
use crate::error::{Error, Result};
use crate::functions::{
    self, checked_pow, eval_fn, gcd_counts, weighted_sum, xi_convolved, Builtin, FnSpec,
    DIRECT_BOUND,
};
use crate::gauss::{self, gauss_closed, gauss_direct};
use crate::radical::{ApproxComplex, ComplexRadical, RadicalValue};

/// Bound for the definitions that sum Gauss sums over `m`.
pub const GAUSS_SUM_BOUND: u64 = 10_000;

/// Bound for the brute-force square-root count.
pub const BRUTE_COUNT_BOUND: u64 = 100_000;

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

fn sqrt(n: u64) -> Result<RadicalValue> {
    RadicalValue::sqrt_int(n)
}

fn ensure_range(what: &'static str, n: u64, bound: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::invalid(format!("{what}: n must be positive")));
    }
    if n > bound {
        return Err(Error::bound(what, n, bound));
    }
    Ok(())
}

/// `h(n)` from its definition as a sum of Gauss-sum magnitudes.
pub fn h_definition(n: u64) -> Result<RadicalValue> {
    ensure_range("h_definition", n, GAUSS_SUM_BOUND)?;
    if n == 1 {
        return Ok(RadicalValue::one());
    }
    // tally |S(m, n)| = √(m, n) by gcd, skipping the vanishing sums
    let mut counts = std::collections::BTreeMap::<u64, i64>::new();
    for m in 1..n {
        let d = gcd(m, n);
        if !gauss::vanishes(m, n, d) {
            *counts.entry(d).or_insert(0) += 1;
        }
    }
    let mut acc = RadicalValue::zero();
    for (d, c) in counts {
        acc += &sqrt(d)?.scale_int(c);
    }
    let root = sqrt(n)?;
    if n % 2 == 0 {
        acc += &root.scale(&half());
    } else {
        acc += &root;
    }
    Ok(acc)
}

/// `h(n)` as `ξ_s(n)`, less `√n/2` and the `v₂(k) = v₂(n)` partial sum for
/// even `n`.
pub fn h_simplified(n: u64) -> Result<RadicalValue> {
    ensure_range("h_simplified", n, DIRECT_BOUND)?;
    let s = |d: u64| Ok(ComplexRadical::real(sqrt(d)?));
    let xi = weighted_sum(&s, &gcd_counts(n, |_| true))?.re;
    if n % 2 == 1 {
        return Ok(xi);
    }
    let vn = arith::v(n, 2);
    let partial = weighted_sum(&s, &gcd_counts(n, |k| k < n && arith::v(k, 2) == vn))?.re;
    Ok(&(&xi - &sqrt(n)?.scale(&half())) - &partial)
}

/// `h(2^α) = ξ_s(2^α) − 2^{α/2 − 1}`, `α ≥ 1`; `h(1) = 1`.
pub fn h_two_power(alpha: u32) -> Result<RadicalValue> {
    if alpha == 0 {
        return Ok(RadicalValue::one());
    }
    let xi = xi_convolved(&FnSpec::builtin(Builtin::Sqrt), checked_pow(2, alpha)?)?.re;
    Ok(&xi - &RadicalValue::half_power(2, i64::from(alpha) - 2)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// Correction over `v_p(k) = v_p(n) − a`; needs `1 ≤ a_α ≤ α`.
    H1,
    /// Correction over `v_p(k) ≥ v_p(n) − a`; needs `0 ≤ a_α ≤ α`.
    H2,
}

/// Privileged prime and the sequences `κ_α`, `a_α` for `α ≥ 1`
/// (`κ_0 = 0` is implicit). Index 0 of each vector holds `α = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenParams {
    pub p: u64,
    pub variant: Variant,
    pub kappa: Vec<ComplexRadical>,
    pub a: Vec<u32>,
}

impl GenParams {
    pub fn new(p: u64, variant: Variant, kappa: Vec<ComplexRadical>, a: Vec<u32>) -> Result<Self> {
        let params = Self {
            p,
            variant,
            kappa,
            a,
        };
        params.validate()?;
        Ok(params)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let params: Self = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        if !arith::is_prime(self.p) {
            return Err(Error::NotPrime(self.p));
        }
        if self.kappa.len() != self.a.len() {
            return Err(Error::InvalidParams(format!(
                "kappa has {} entries but a has {}",
                self.kappa.len(),
                self.a.len()
            )));
        }
        let min = match self.variant {
            Variant::H1 => 1,
            Variant::H2 => 0,
        };
        for (i, &a) in self.a.iter().enumerate() {
            let alpha = i as u32 + 1;
            if a < min || a > alpha {
                return Err(Error::InvalidParams(format!(
                    "a_{alpha} = {a} outside [{min}, {alpha}] for {:?}",
                    self.variant
                )));
            }
        }
        Ok(())
    }

    /// Longest `α` the sequences cover.
    pub fn len(&self) -> u32 {
        self.a.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    fn at(&self, alpha: u32) -> Result<(ComplexRadical, u32)> {
        if alpha == 0 {
            return Ok((ComplexRadical::zero(), 0));
        }
        let i = alpha as usize - 1;
        match (self.kappa.get(i), self.a.get(i)) {
            (Some(k), Some(&a)) => Ok((k.clone(), a)),
            _ => Err(Error::InvalidParams(format!(
                "sequences have length {} but alpha = {alpha} is needed",
                self.len()
            ))),
        }
    }

    pub fn kappa(&self, alpha: u32) -> Result<ComplexRadical> {
        Ok(self.at(alpha)?.0)
    }

    pub fn a(&self, alpha: u32) -> Result<u32> {
        Ok(self.at(alpha)?.1)
    }
}

/// `h⁽¹⁾_{f,p}(n)` or `h⁽²⁾_{f,p}(n)` by the literal sum over `k`.
pub fn h_general(params: &GenParams, f: &FnSpec, n: u64) -> Result<ComplexRadical> {
    h_general_with(params, &|d| eval_fn(f, d), n)
}

fn h_general_with(
    params: &GenParams,
    f: &dyn Fn(u64) -> Result<ComplexRadical>,
    n: u64,
) -> Result<ComplexRadical> {
    ensure_range("h_general", n, DIRECT_BOUND)?;
    params.validate()?;
    let p = params.p;
    let alpha = arith::v(n, p);
    let xi = weighted_sum(f, &gcd_counts(n, |_| true))?;
    if alpha == 0 {
        return Ok(xi);
    }
    let (kappa, a) = params.at(alpha)?;
    let target = alpha - a;
    let partial = match params.variant {
        Variant::H1 => gcd_counts(n, |k| arith::v(k, p) == target),
        Variant::H2 => gcd_counts(n, |k| arith::v(k, p) >= target),
    };
    Ok(&xi - &(&kappa * &weighted_sum(f, &partial)?))
}

/// `h_general` for every `1 ≤ n ≤ bound`, evaluating `f` once per argument.
pub fn h_general_values(params: &GenParams, f: &FnSpec, bound: u64) -> Result<Vec<ComplexRadical>> {
    let fv = f.values_upto(bound)?;
    let lookup = |d: u64| Ok(fv[d as usize].clone());
    let mut out = vec![ComplexRadical::zero()];
    for n in 1..=bound {
        out.push(h_general_with(params, &lookup, n)?);
    }
    Ok(out)
}

/// `Σ_{b=0}^{a} f(p^{α−b}) φ(p^b)`.
fn partial_convolution(f: &FnSpec, p: u64, alpha: u32, a: u32) -> Result<ComplexRadical> {
    let mut acc = ComplexRadical::zero();
    for b in 0..=a {
        let pb = checked_pow(p, b)?;
        let phi = if b == 0 { 1 } else { pb - pb / p };
        acc += &f
            .prime_power(p, alpha - b)?
            .scale(&RadicalValue::from_integer(phi as i64));
    }
    Ok(acc)
}

fn phi_prime_power(p: u64, e: u32) -> Result<i64> {
    let pe = checked_pow(p, e)?;
    Ok(if e == 0 { 1 } else { (pe - pe / p) as i64 })
}

/// Prime-power values:
/// `h⁽¹⁾(p^α) = ξ_f(p^α) − κ_α f(p^{α−a_α}) φ(p^{a_α})` and
/// `h⁽²⁾(p^α) = ξ_f(p^α) − κ_α Σ_{b=0}^{a_α} f(p^{α−b}) φ(p^b)`.
pub fn h_general_prime_power(params: &GenParams, f: &FnSpec, alpha: u32) -> Result<ComplexRadical> {
    params.validate()?;
    if alpha == 0 {
        return Ok(ComplexRadical::one());
    }
    let p = params.p;
    let (kappa, a) = params.at(alpha)?;
    let xi = xi_convolved(f, checked_pow(p, alpha)?)?;
    let correction = match params.variant {
        Variant::H1 => f
            .prime_power(p, alpha - a)?
            .scale(&RadicalValue::from_integer(phi_prime_power(p, a)?)),
        Variant::H2 => partial_convolution(f, p, alpha, a)?,
    };
    Ok(&xi - &(&kappa * &correction))
}

/// `h(p^{v_p(n)}) · ξ_f(n / p^{v_p(n)})`.
pub fn assemble_multiplicative(params: &GenParams, f: &FnSpec, n: u64) -> Result<ComplexRadical> {
    if n == 0 {
        return Err(Error::invalid(
            "assemble_multiplicative: n must be positive",
        ));
    }
    let alpha = arith::v(n, params.p);
    let rest = n / checked_pow(params.p, alpha)?;
    Ok(&h_general_prime_power(params, f, alpha)? * &xi_convolved(f, rest)?)
}

/// Re-expresses the parameters in the other family so that both give the
/// same prime-power values for every `α` the sequences cover.
pub fn convert_params(params: &GenParams, f: &FnSpec, target: Variant) -> Result<GenParams> {
    params.validate()?;
    if params.variant == target {
        return Ok(params.clone());
    }
    let p = params.p;
    let mut kappa = Vec::new();
    let mut a_out = Vec::new();
    for alpha in 1..=params.len() {
        let (k, a) = params.at(alpha)?;
        match target {
            Variant::H1 => {
                let sum = partial_convolution(f, p, alpha, a)?;
                let scale = RadicalValue::from_ratio(1, phi_prime_power(p, alpha)?);
                kappa.push((&k * &sum).scale(&scale));
                a_out.push(alpha);
            }
            Variant::H2 => {
                let c = &k * &f.prime_power(p, alpha - a)?;
                if c.is_zero() {
                    kappa.push(ComplexRadical::zero());
                    a_out.push(a);
                    continue;
                }
                let candidates = [Some(a), a.checked_sub(1)];
                let mut chosen = None;
                for a2 in candidates.into_iter().flatten() {
                    let sum = partial_convolution(f, p, alpha, a2)?;
                    if !sum.is_zero() {
                        chosen = Some((a2, sum));
                        break;
                    }
                }
                let (a2, sum) = chosen.ok_or(Error::Unconvertible { alpha })?;
                let numer = c.scale(&RadicalValue::from_integer(phi_prime_power(p, a)?));
                kappa.push(numer.checked_div(&sum)?);
                a_out.push(a2);
            }
        }
    }
    GenParams::new(p, target, kappa, a_out)
}

/// Parameters for `p = 2`, `f = √·` that reproduce `h` in the h1 family:
/// `κ_α = 2^{−a_α/2}`.
pub fn h1_matching_params(a: Vec<u32>) -> Result<GenParams> {
    let kappa = a
        .iter()
        .map(|&x| Ok(RadicalValue::half_power(2, -i64::from(x))?.into()))
        .collect::<Result<Vec<ComplexRadical>>>()?;
    GenParams::new(2, Variant::H1, kappa, a)
}

/// Parameters for `p = 2`, `f = √·` that reproduce `h` in the h2 family:
/// `κ_α = (2^{1 + a_α/2} + 2^{(1 + a_α)/2} − 2^{1/2})⁻¹`.
pub fn h2_matching_params(a: Vec<u32>) -> Result<GenParams> {
    let kappa = a
        .iter()
        .map(|&x| {
            let x = i64::from(x);
            let denom = &(&RadicalValue::half_power(2, 2 + x)?
                + &RadicalValue::half_power(2, 1 + x)?)
                - &RadicalValue::half_power(2, 1)?;
            Ok(denom.inv()?.into())
        })
        .collect::<Result<Vec<ComplexRadical>>>()?;
    GenParams::new(2, Variant::H2, kappa, a)
}

/// Seeded parameters: `κ_α = q₁ + q₂√2` with small rationals `q₁`, `q₂`, and
/// `a_α` uniform over the range the variant allows.
pub fn random_params(rng: &mut impl Rng, p: u64, variant: Variant, len: u32) -> Result<GenParams> {
    let mut kappa = Vec::new();
    let mut a = Vec::new();
    let sqrt2 = sqrt(2)?;
    for alpha in 1..=len {
        let q1 = RadicalValue::from_ratio(rng.random_range(-4..=4), rng.random_range(1..=4));
        let q2 = RadicalValue::from_ratio(rng.random_range(-3..=3), rng.random_range(1..=3));
        kappa.push((&q1 + &(&q2 * &sqrt2)).into());
        a.push(match variant {
            Variant::H1 => rng.random_range(1..=alpha),
            Variant::H2 => rng.random_range(0..=alpha),
        });
    }
    GenParams::new(p, variant, kappa, a)
}

/// `s(n) = Σ_{m=1}^{n} S(m, n)`, exactly and by direct summation.
#[derive(Debug, Clone, PartialEq)]
pub struct RowSum {
    pub exact: ComplexRadical,
    pub approx: ApproxComplex,
}

pub fn gauss_row_sum(n: u64) -> Result<RowSum> {
    ensure_range("gauss_row_sum", n, GAUSS_SUM_BOUND)?;
    Ok(RowSum {
        exact: gauss_row_sum_exact(n)?,
        approx: (1..=n).map(|m| gauss_direct(m as i64, n)).sum(),
    })
}

pub fn gauss_row_sum_exact(n: u64) -> Result<ComplexRadical> {
    ensure_range("gauss_row_sum", n, GAUSS_SUM_BOUND)?;
    let mut acc = ComplexRadical::zero();
    for m in 1..=n {
        acc += &gauss_closed(m as i64, n)?;
    }
    Ok(acc)
}

/// `h♯(n) = Σ_{m=1}^{n} Re S(m, n) + [n even] √n/2`.
pub fn h_sharp_definition(n: u64) -> Result<RadicalValue> {
    ensure_range("h_sharp_definition", n, GAUSS_SUM_BOUND)?;
    let mut acc = gauss_row_sum_exact(n)?.re;
    if n % 2 == 0 {
        acc += &sqrt(n)?.scale(&half());
    }
    Ok(acc)
}

/// `√n·ν` for odd `n = λν²`, `√n·η` for even `n` with `n/2 = κη²`.
pub fn h_sharp_closed(n: u64) -> Result<RadicalValue> {
    ensure_range("h_sharp_closed", n, arith::FACTOR_BOUND)?;
    let m = if n % 2 == 0 { n / 2 } else { n };
    let root = squarefree_of(&factorize(m)?).nu;
    Ok(sqrt(n)?.scale_int(root as i64))
}

/// `#{1 ≤ l ≤ n : (n − l) l ≡ 0 mod 2n}`, by enumeration.
pub fn quadratic_delta_count(n: u64) -> Result<u64> {
    ensure_range("quadratic_delta_count", n, DIRECT_BOUND)?;
    let modulus = 2 * n as u128;
    Ok((1..=n)
        .filter(|&l| (n - l) as u128 * l as u128 % modulus == 0)
        .count() as u64)
}

/// `√n · #{l : (n − l) l ≡ 0 mod 2n}`, the δ-sum form of `h♯`.
pub fn h_sharp_delta_sum(n: u64) -> Result<RadicalValue> {
    Ok(sqrt(n)?.scale_int(quadratic_delta_count(n)? as i64))
}

/// `ν` for `n = λν²`: the number of `1 ≤ l ≤ n` with `n | l²`.
pub fn count_square_roots_of_zero(n: u64) -> Result<u64> {
    Ok(arith::squarefree_decompose(n)?.nu)
}

/// [`count_square_roots_of_zero`] by enumeration.
pub fn count_square_roots_of_zero_brute(n: u64) -> Result<u64> {
    ensure_range("count_square_roots_of_zero", n, BRUTE_COUNT_BOUND)?;
    Ok((1..=n)
        .filter(|&l| (l as u128 * l as u128) % n as u128 == 0)
        .count() as u64)
}

/// `f♯(p^e)`, the function with `ξ_{f♯} = h♯`:
/// `f♯(2^e) = (√2 − 1)/3 · (1 − (−2)^e)` for `e ≥ 1` and
/// `f♯(p^e) = 1 + (p − √p)/(p + 1) · ((−p)^e − 1)` for odd `p`.
pub fn f_sharp(p: u64, e: u32) -> Result<RadicalValue> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Ok(RadicalValue::one());
    }
    let neg_p_pow = num_traits::pow(-BigInt::from(p), e as usize);
    let root = sqrt(p)?;
    if p == 2 {
        let factor = (&root - &RadicalValue::one()).scale(&BigRational::new(1.into(), 3.into()));
        Ok(factor.scale(&BigRational::from_integer(1 - neg_p_pow)))
    } else {
        let factor = (&RadicalValue::from_integer(p as i64) - &root)
            .scale(&BigRational::new(1.into(), (p + 1).into()));
        Ok(&RadicalValue::one() + &factor.scale(&BigRational::from_integer(neg_p_pow - 1)))
    }
}

/// Prime-power values of `h♯`: `2^{e/2 + ⌊(e−1)/2⌋}` for `p = 2`, `e ≥ 1`,
/// and `p^{e/2 + ⌊e/2⌋}` for odd `p`.
pub fn h_sharp_prime_power(p: u64, e: u32) -> Result<RadicalValue> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e == 0 {
        return Ok(RadicalValue::one());
    }
    let e = i64::from(e);
    let half_exp = if p == 2 {
        e + 2 * ((e - 1) / 2)
    } else {
        e + 2 * (e / 2)
    };
    RadicalValue::half_power(p, half_exp)
}

/// Squarefree part `λ` of `n = λν²` read off from `h♯(n)`:
/// `(n / 2h♯(n))²` when `n` and `v₂(n)` are both even, `(n / h♯(n))²` otherwise.
///
/// `h♯` is taken in its δ-sum form, which needs no factorization.
pub fn squarefree_part_via_hsharp(n: u64) -> Result<u64> {
    let h = h_sharp_delta_sum(n)?;
    let both_even = n % 2 == 0 && arith::v(n, 2) % 2 == 0;
    let denom = if both_even { h.scale_int(2) } else { h };
    let ratio = RadicalValue::from_integer(n as i64).checked_div(&denom)?;
    let square = &ratio * &ratio;
    let lambda = square.as_integer().ok_or_else(|| {
        Error::invalid(format!(
            "squarefree_part_via_hsharp: non-integer ratio at {n}"
        ))
    })?;
    u64::try_from(lambda).map_err(|_| Error::invalid("squarefree part out of range"))
}

/// `f♯` as a multiplicative [`FnSpec`].
pub fn f_sharp_spec() -> FnSpec {
    FnSpec::builtin(Builtin::FSharp)
}

/// `h` in the `ξ_s` form, usable wherever an evaluation rule is expected.
pub fn h_spec() -> FnSpec {
    FnSpec::composite("h", |n| Ok(h_simplified(n)?.into()))
}

/// `h♯` (closed form) as an evaluation rule.
pub fn h_sharp_spec() -> FnSpec {
    FnSpec::composite("hsharp", |n| Ok(h_sharp_closed(n)?.into()))
}

/// `f` recovered from the prime-power values of `h♯` by inverting `ξ`.
pub fn f_sharp_from_h_sharp(primes: &[u64], max_alpha: u32) -> Result<FnSpec> {
    functions::xi_preimage("f_sharp_inverted", primes, max_alpha, |p, a| {
        Ok(h_sharp_prime_power(p, a)?.into())
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn r(s: &[(u64, i64, i64)]) -> RadicalValue {
        let mut v = RadicalValue::zero();
        for &(d, n, q) in s {
            v += &sqrt(d)
                .unwrap()
                .scale(&BigRational::new(n.into(), q.into()));
        }
        v
    }

    fn c(v: RadicalValue) -> ComplexRadical {
        v.into()
    }

    #[test]
    fn h_definition_examples() {
        assert_eq!(h_definition(1).unwrap(), RadicalValue::one());
        assert_eq!(h_definition(2).unwrap(), r(&[(1, 1, 1), (2, 1, 2)]));
        assert_eq!(h_definition(3).unwrap(), r(&[(1, 2, 1), (3, 1, 1)]));
        assert_eq!(h_definition(4).unwrap(), r(&[(1, 3, 1), (2, 1, 1)]));
        assert!(h_definition(GAUSS_SUM_BOUND + 1)
            .unwrap_err()
            .is_bound_exceeded());
    }

    #[test]
    fn h_simplified_examples() {
        assert_eq!(h_simplified(1).unwrap(), RadicalValue::one());
        assert_eq!(h_simplified(4).unwrap(), r(&[(1, 3, 1), (2, 1, 1)]));
        let h12 = &r(&[(1, 3, 1), (2, 1, 1)]) * &r(&[(1, 2, 1), (3, 1, 1)]);
        assert_eq!(h_simplified(12).unwrap(), h12);
        for n in 2..=128 {
            assert_eq!(
                h_definition(n).unwrap(),
                h_simplified(n).unwrap(),
                "n = {n}"
            );
        }
        for a in 0..=8 {
            assert_eq!(h_two_power(a).unwrap(), h_simplified(1 << a).unwrap());
        }
    }

    #[test]
    fn params_validation() {
        let k = vec![ComplexRadical::one(); 2];
        assert!(GenParams::new(2, Variant::H1, k.clone(), vec![1, 2]).is_ok());
        assert!(GenParams::new(2, Variant::H1, k.clone(), vec![0, 2]).is_err());
        assert!(GenParams::new(2, Variant::H2, k.clone(), vec![0, 2]).is_ok());
        assert!(GenParams::new(2, Variant::H2, k.clone(), vec![0, 3]).is_err());
        assert!(GenParams::new(4, Variant::H2, k.clone(), vec![0, 1]).is_err());
        assert!(GenParams::new(2, Variant::H2, k, vec![0]).is_err());
        let p = GenParams::new(2, Variant::H1, vec![ComplexRadical::one()], vec![1]).unwrap();
        let s = FnSpec::builtin(Builtin::Sqrt);
        assert!(matches!(h_general(&p, &s, 4), Err(Error::InvalidParams(_))));
        assert!(h_general(&p, &s, 6).is_ok());
    }

    #[test]
    fn params_json() {
        let p = h2_matching_params(vec![0, 1, 3]).unwrap();
        let s = serde_json::to_string(&p).unwrap();
        assert!(s.contains(r#""variant":"h2""#));
        assert_eq!(GenParams::from_json(&s).unwrap(), p);
        assert!(GenParams::from_json(r#"{"p":2,"variant":"h1","kappa":[],"a":[]}"#).is_ok());
        assert!(GenParams::from_json(
            r#"{"p":2,"variant":"h1","kappa":[{"re":[],"im":[]}],"a":[0]}"#
        )
        .is_err());
    }

    #[test]
    fn h_general_examples() {
        let s = FnSpec::builtin(Builtin::Sqrt);
        let one = FnSpec::builtin(Builtin::One);
        let p = h1_matching_params(vec![1, 2, 1]).unwrap();
        // coprime to p: κ₀ = 0
        assert_eq!(
            h_general(&p, &s, 15).unwrap(),
            xi_convolved(&s, 15).unwrap()
        );
        assert_eq!(h_general(&p, &s, 4).unwrap(), c(r(&[(1, 3, 1), (2, 1, 1)])));
        let q = h2_matching_params(vec![1, 0, 2]).unwrap();
        assert_eq!(h_general(&q, &s, 8).unwrap(), c(h_simplified(8).unwrap()));

        assert_eq!(
            h_general_prime_power(&p, &s, 0).unwrap(),
            ComplexRadical::one()
        );
        assert_eq!(
            h_general_prime_power(&p, &s, 1).unwrap(),
            c(r(&[(1, 1, 1), (2, 1, 2)]))
        );
        let h2 = GenParams::new(3, Variant::H2, vec![ComplexRadical::one()], vec![1]).unwrap();
        assert_eq!(
            h_general_prime_power(&h2, &one, 1).unwrap(),
            ComplexRadical::zero()
        );
        assert_eq!(h_general(&h2, &one, 3).unwrap(), ComplexRadical::zero());
    }

    #[test]
    fn assemble_examples() {
        let s = FnSpec::builtin(Builtin::Sqrt);
        let p = h1_matching_params(vec![1, 1]).unwrap();
        assert_eq!(
            assemble_multiplicative(&p, &s, 9).unwrap(),
            xi_convolved(&s, 9).unwrap()
        );
        assert_eq!(
            assemble_multiplicative(&p, &s, 12).unwrap(),
            &c(h_simplified(4).unwrap()) * &xi_convolved(&s, 3).unwrap()
        );
        assert_eq!(
            assemble_multiplicative(&p, &s, 12).unwrap(),
            h_general(&p, &s, 12).unwrap()
        );
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let q = random_params(&mut rng, 3, Variant::H2, 3).unwrap();
        let phi = FnSpec::builtin(Builtin::Phi);
        assert_eq!(
            assemble_multiplicative(&q, &phi, 18).unwrap(),
            h_general(&q, &phi, 18).unwrap()
        );
    }

    #[test]
    fn conversion_examples() {
        let s = FnSpec::builtin(Builtin::Sqrt);
        let h1 = h1_matching_params(vec![1, 2, 3, 1]).unwrap();
        let h2 = convert_params(&h1, &s, Variant::H2).unwrap();
        assert_eq!(h2.variant, Variant::H2);
        for a in 0..=4 {
            assert_eq!(
                h_general_prime_power(&h1, &s, a).unwrap(),
                h_general_prime_power(&h2, &s, a).unwrap()
            );
        }
        // κ = 0 everywhere stays zero
        let zero = GenParams::new(
            5,
            Variant::H1,
            vec![ComplexRadical::zero(); 3],
            vec![1, 1, 2],
        )
        .unwrap();
        let conv = convert_params(&zero, &s, Variant::H2).unwrap();
        assert!(conv.kappa.iter().all(ComplexRadical::is_zero));
        // h2 -> h1 puts a = α
        let back = convert_params(&h2, &s, Variant::H1).unwrap();
        assert_eq!(back.a, vec![1, 2, 3, 4]);
    }

    #[test]
    fn conversion_falls_back_to_a_minus_one() {
        // f(2) = -1: F(a=1) = f(2) + φ(2) = 0, so a⁽²⁾ = 0 with F = f(2).
        let mut t = std::collections::BTreeMap::new();
        t.insert((2, 1), ComplexRadical::from_integer(-1));
        let f = FnSpec::table("t", t);
        let h1 = GenParams::new(2, Variant::H1, vec![ComplexRadical::one()], vec![1]).unwrap();
        let h2 = convert_params(&h1, &f, Variant::H2).unwrap();
        assert_eq!(h2.a, vec![0]);
        assert_eq!(
            h_general_prime_power(&h1, &f, 1).unwrap(),
            h_general_prime_power(&h2, &f, 1).unwrap()
        );
    }

    #[test]
    fn conversion_zero_branch() {
        // κ f(p^{α−a}) = 0 at α = 2, a = 1 because f(2) = 0
        let mut t = std::collections::BTreeMap::new();
        t.insert((2, 1), ComplexRadical::zero());
        t.insert((2, 2), ComplexRadical::from_integer(7));
        let g = FnSpec::table("g", t);
        let h1 =
            GenParams::new(2, Variant::H1, vec![ComplexRadical::one(); 2], vec![1, 1]).unwrap();
        let h2 = convert_params(&h1, &g, Variant::H2).unwrap();
        assert!(h2.kappa[1].is_zero());
        assert_eq!(
            h_general_prime_power(&h1, &g, 2).unwrap(),
            h_general_prime_power(&h2, &g, 2).unwrap()
        );
    }

    #[test]
    fn row_sum_examples() {
        let s2 = gauss_row_sum(2).unwrap();
        assert_eq!(s2.exact, ComplexRadical::eighth_root(true));
        assert!((s2.exact.approx() - s2.approx).norm() < 1e-9);
        assert_eq!(gauss_row_sum(3).unwrap().exact, c(sqrt(3).unwrap()));
        let s6 = gauss_row_sum_exact(6).unwrap();
        let prod = &gauss_row_sum_exact(2).unwrap() * &gauss_row_sum_exact(3).unwrap();
        assert_ne!(s6, prod);
    }

    #[test]
    fn h_sharp_examples() {
        assert_eq!(h_sharp_definition(1).unwrap(), RadicalValue::one());
        assert_eq!(h_sharp_definition(2).unwrap(), sqrt(2).unwrap());
        assert_eq!(
            h_sharp_definition(9).unwrap(),
            RadicalValue::from_integer(9)
        );
        assert_eq!(h_sharp_closed(9).unwrap(), RadicalValue::from_integer(9));
        assert_eq!(h_sharp_closed(12).unwrap(), r(&[(3, 2, 1)]));
        assert_eq!(h_sharp_closed(18).unwrap(), r(&[(2, 9, 1)]));
        for n in 1..=96 {
            let closed = h_sharp_closed(n).unwrap();
            assert_eq!(h_sharp_definition(n).unwrap(), closed, "n = {n}");
            assert_eq!(h_sharp_delta_sum(n).unwrap(), closed, "n = {n}");
        }
    }

    #[test]
    fn square_root_counts() {
        assert_eq!(count_square_roots_of_zero(1).unwrap(), 1);
        assert_eq!(count_square_roots_of_zero(12).unwrap(), 2);
        assert_eq!(count_square_roots_of_zero_brute(12).unwrap(), 2);
        for p in [2u64, 3, 5, 97, 7919] {
            assert_eq!(count_square_roots_of_zero(p).unwrap(), 1);
        }
        for n in 1..=3000 {
            assert_eq!(
                count_square_roots_of_zero(n).unwrap(),
                count_square_roots_of_zero_brute(n).unwrap()
            );
        }
    }

    #[test]
    fn f_sharp_examples() {
        assert_eq!(f_sharp(2, 0).unwrap(), RadicalValue::one());
        assert_eq!(f_sharp(3, 0).unwrap(), RadicalValue::one());
        assert_eq!(f_sharp(2, 1).unwrap(), r(&[(2, 1, 1), (1, -1, 1)]));
        assert_eq!(f_sharp(3, 1).unwrap(), r(&[(3, 1, 1), (1, -2, 1)]));
        assert!(f_sharp(4, 1).is_err());
    }

    #[test]
    fn f_sharp_is_the_xi_preimage() {
        let inverted = f_sharp_from_h_sharp(&[2, 3, 5, 7], 8).unwrap();
        for p in [2u64, 3, 5, 7] {
            for e in 0..=8 {
                assert_eq!(
                    c(f_sharp(p, e).unwrap()),
                    inverted.prime_power(p, e).unwrap()
                );
            }
        }
    }

    #[test]
    fn h_sharp_prime_powers() {
        for p in [2u64, 3, 5, 7] {
            for e in 0..=8u32 {
                let n = p.pow(e);
                assert_eq!(
                    h_sharp_prime_power(p, e).unwrap(),
                    h_sharp_closed(n).unwrap(),
                    "{p}^{e}"
                );
            }
        }
    }

    #[test]
    fn squarefree_extraction_examples() {
        assert_eq!(squarefree_part_via_hsharp(12).unwrap(), 3);
        assert_eq!(squarefree_part_via_hsharp(9).unwrap(), 1);
        assert_eq!(squarefree_part_via_hsharp(7).unwrap(), 7);
        assert_eq!(squarefree_part_via_hsharp(8).unwrap(), 2);
        for n in 1..=2000 {
            assert_eq!(
                squarefree_part_via_hsharp(n).unwrap(),
                arith::squarefree_decompose(n).unwrap().lambda
            );
        }
    }
}
