//! Elementary number theory on machine integers: gcd, trial-division
//! factorization, valuations, Euler's totient, the Möbius function, Jacobi
//! symbols and squarefree decomposition.
//!
//! Everything multiplicative is evaluated from a [`Factorization`].

use num_integer::Integer;

use crate::error::{Error, Result};

/// Largest integer [`factorize`] accepts.
pub const FACTOR_BOUND: u64 = 1_000_000_000;

/// Greatest common divisor `(m, n)`.
pub fn gcd(m: u64, n: u64) -> u64 {
    m.gcd(&n)
}

/// Prime-power decomposition `n = Π p_j^{α_j}` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p`, zero when `p` does not divide `n`.
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    /// All positive divisors in increasing order.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

/// Trial division by 2, 3 and then the 6k ± 1 wheel.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::invalid("factorize: n must be positive"));
    }
    if n > FACTOR_BOUND {
        return Err(Error::bound("factorize", n, FACTOR_BOUND));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut take = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    take(2, &mut rest);
    take(3, &mut rest);
    let mut p = 5u64;
    while p * p <= rest {
        take(p, &mut rest);
        take(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization { n, factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n % 2 == 0 || n % 3 == 0 {
        return false;
    }
    let mut p = 5u64;
    while p * p <= n {
        if n % p == 0 || n % (p + 2) == 0 {
            return false;
        }
        p += 6;
    }
    true
}

/// p-adic valuation `v_p(n)`.
pub fn valuation(n: u64, p: u64) -> Result<u32> {
    if n == 0 {
        return Err(Error::invalid("valuation: n must be positive"));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(v(n, p))
}

/// Valuation without the primality check; `p >= 2`.
pub(crate) fn v(mut n: u64, p: u64) -> u32 {
    debug_assert!(n > 0 && p >= 2);
    let mut e = 0;
    while n % p == 0 {
        n /= p;
        e += 1;
    }
    e
}

pub fn euler_phi(n: u64) -> Result<u64> {
    let f = factorize(n)?;
    Ok(phi_of(&f))
}

pub(crate) fn phi_of(f: &Factorization) -> u64 {
    f.factors
        .iter()
        .map(|&(p, e)| p.pow(e) - p.pow(e - 1))
        .product()
}

pub fn moebius(n: u64) -> Result<i8> {
    let f = factorize(n)?;
    Ok(moebius_of(&f))
}

pub(crate) fn moebius_of(f: &Factorization) -> i8 {
    if f.factors.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.factors.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `⌊1/n⌋`, cross-checked against `Σ_{d|n} μ(d)`.
pub fn unit_indicator(n: u64) -> Result<u8> {
    let f = factorize(n)?;
    let floor = u8::from(n == 1);
    let mu_sum: i64 = f
        .divisors()
        .into_iter()
        .map(|d| i64::from(moebius_of(&factorize(d).expect("divisor within bound"))))
        .sum();
    assert_eq!(
        i64::from(floor),
        mu_sum,
        "Möbius divisor sum disagrees at n = {n}"
    );
    Ok(floor)
}

/// Jacobi symbol `(j|k)` for odd positive `k`; `j` is reduced mod `k` first.
pub fn jacobi_symbol(j: i64, k: u64) -> Result<i8> {
    if k == 0 || k % 2 == 0 {
        return Err(Error::invalid(format!(
            "jacobi_symbol: modulus {k} must be odd and positive"
        )));
    }
    let mut a = i128::from(j).rem_euclid(i128::from(k)) as u64;
    let mut n = k;
    let mut sign = 1i8;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            if matches!(n % 8, 3 | 5) {
                sign = -sign;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            sign = -sign;
        }
        a %= n;
    }
    Ok(if n == 1 { sign } else { 0 })
}

/// `n = λ·ν²` with `λ` squarefree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquarefreeDecomposition {
    pub lambda: u64,
    pub nu: u64,
}

pub fn squarefree_decompose(n: u64) -> Result<SquarefreeDecomposition> {
    Ok(squarefree_of(&factorize(n)?))
}

pub(crate) fn squarefree_of(f: &Factorization) -> SquarefreeDecomposition {
    let mut lambda = 1;
    let mut nu = 1;
    for &(p, e) in &f.factors {
        if e % 2 == 1 {
            lambda *= p;
        }
        nu *= p.pow(e / 2);
    }
    SquarefreeDecomposition { lambda, nu }
}

pub fn is_squarefree(n: u64) -> Result<bool> {
    Ok(moebius(n)? != 0)
}
