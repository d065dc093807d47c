//! Exact arithmetic in `Q(√2, √3, √5, …)`.
//!
//! A [`RadicalValue`] is a finite sum `Σ q_d √d` over squarefree radicands
//! `d ≥ 1` with nonzero rational coefficients. The representation is
//! canonical, so equality is structural. [`ComplexRadical`] pairs two of
//! them as real and imaginary parts, which is enough to hold every closed
//! form Gauss sum, including the eighth-root phases `(√2/2)(1 ± i)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, gcd};
use crate::error::{Error, Result};

/// Floating approximation of an exact value.
pub type ApproxComplex = Complex64;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct RadicalValue {
    // squarefree radicand -> nonzero coefficient
    terms: BTreeMap<u64, BigRational>,
}

impl RadicalValue {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    pub fn from_integer(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_bigint(n: BigInt) -> Self {
        Self::from_rational(BigRational::from_integer(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    pub fn from_rational(q: BigRational) -> Self {
        let mut v = Self::zero();
        v.add_term(1, q);
        v
    }

    /// `√n` in canonical form `ν√λ`.
    pub fn sqrt_int(n: u64) -> Result<Self> {
        if n == 0 {
            return Ok(Self::zero());
        }
        let sd = arith::squarefree_decompose(n)?;
        Ok(Self::term(
            sd.lambda,
            BigRational::from_integer(sd.nu.into()),
        ))
    }

    /// `√(num/den)`, rationalized as `√(num·den)/den`.
    pub fn sqrt_ratio(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let g = gcd(num, den);
        let (num, den) = (num / g, den / g);
        let prod = num
            .checked_mul(den)
            .ok_or_else(|| Error::invalid("sqrt_ratio: radicand overflow"))?;
        let root = Self::sqrt_int(prod)?;
        Ok(root.scale(&BigRational::new(1.into(), den.into())))
    }

    /// `p^{e/2}` for any integer `e`, negative allowed.
    pub fn half_power(p: u64, e: i64) -> Result<Self> {
        let whole = e.div_euclid(2);
        let odd = e.rem_euclid(2) == 1;
        let base = BigRational::from_integer(p.into());
        let q = if whole >= 0 {
            num_traits::pow(base, whole as usize)
        } else {
            num_traits::pow(base.recip(), (-whole) as usize)
        };
        if odd {
            Ok(Self::sqrt_int(p)?.scale(&q))
        } else {
            Ok(Self::from_rational(q))
        }
    }

    /// Single term `q·√d`, with `d` already squarefree.
    fn term(d: u64, q: BigRational) -> Self {
        let mut v = Self::zero();
        v.add_term(d, q);
        v
    }

    fn add_term(&mut self, d: u64, q: BigRational) {
        if q.is_zero() {
            return;
        }
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(q);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += q;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// Iterates `(radicand, coefficient)` in increasing radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&d, q)| (d, q))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// The value as a rational, when it has no irrational part.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => self.terms.get(&1).cloned(),
            _ => None,
        }
    }

    /// The value as an integer, when it is one.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational()
            .filter(|q| q.is_integer())
            .map(|q| q.to_integer())
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(&d, c)| (d, c * q)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Galois conjugate flipping the sign of `√p` for a prime `p`.
    fn conjugate_at(&self, p: u64) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&d, c)| (d, if d % p == 0 { -c } else { c.clone() }))
                .collect(),
        }
    }

    /// Multiplicative inverse, by clearing one prime radicand at a time with
    /// its Galois conjugate until the denominator is rational.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut primes: Vec<u64> = Vec::new();
        for &d in self.terms.keys() {
            for &(p, _) in arith::factorize(d)?.factors() {
                if !primes.contains(&p) {
                    primes.push(p);
                }
            }
        }
        let mut num = Self::one();
        let mut den = self.clone();
        for p in primes {
            let c = den.conjugate_at(p);
            num = &num * &c;
            den = &den * &c;
        }
        let q = den.as_rational().expect("conjugate product is rational");
        Ok(num.scale(&q.recip()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Real approximation; each `√d` is evaluated in double precision.
    pub fn approx_re(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&d, c)| ratio_to_f64(c) * (d as f64).sqrt())
            .sum()
    }

    pub fn approx(&self) -> ApproxComplex {
        Complex64::new(self.approx_re(), 0.0)
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // ratio of huge integers: scale down to keep the quotient finite
        let shift = q.numer().bits().max(q.denom().bits()).saturating_sub(1000);
        let n = (q.numer() >> shift).to_f64().unwrap_or(f64::NAN);
        let d = (q.denom() >> shift).to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

impl From<i64> for RadicalValue {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

impl From<BigRational> for RadicalValue {
    fn from(q: BigRational) -> Self {
        Self::from_rational(q)
    }
}

impl Add<&RadicalValue> for &RadicalValue {
    type Output = RadicalValue;
    fn add(self, rhs: &RadicalValue) -> RadicalValue {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&RadicalValue> for RadicalValue {
    fn add_assign(&mut self, rhs: &RadicalValue) {
        for (&d, c) in &rhs.terms {
            self.add_term(d, c.clone());
        }
    }
}

impl SubAssign<&RadicalValue> for RadicalValue {
    fn sub_assign(&mut self, rhs: &RadicalValue) {
        for (&d, c) in &rhs.terms {
            self.add_term(d, -c);
        }
    }
}

impl Sub<&RadicalValue> for &RadicalValue {
    type Output = RadicalValue;
    fn sub(self, rhs: &RadicalValue) -> RadicalValue {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &RadicalValue {
    type Output = RadicalValue;
    fn neg(self) -> RadicalValue {
        RadicalValue {
            terms: self.terms.iter().map(|(&d, c)| (d, -c)).collect(),
        }
    }
}

impl Mul<&RadicalValue> for &RadicalValue {
    type Output = RadicalValue;
    fn mul(self, rhs: &RadicalValue) -> RadicalValue {
        let mut out = RadicalValue::zero();
        for (&d1, c1) in &self.terms {
            for (&d2, c2) in &rhs.terms {
                // √d1·√d2 = g·√(d1 d2 / g²) with g = (d1, d2); the quotient
                // is squarefree because d1 and d2 are.
                let g = gcd(d1, d2);
                let d = (d1 / g) * (d2 / g);
                out.add_term(d, c1 * c2 * BigInt::from(g));
            }
        }
        out
    }
}

impl MulAssign<&RadicalValue> for RadicalValue {
    fn mul_assign(&mut self, rhs: &RadicalValue) {
        *self = &*self * rhs;
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident :: $m:ident),*) => {$(
        impl $tr<$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
        impl $tr<$ty> for &$ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(RadicalValue, Add::add, Sub::sub, Mul::mul);

impl Neg for RadicalValue {
    type Output = RadicalValue;
    fn neg(self) -> RadicalValue {
        -&self
    }
}

impl std::iter::Sum for RadicalValue {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

fn fmt_ratio(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Renders as `a/b + c/d√e + …`; radical terms always show their
/// coefficient, so `√2` prints as `1√2`.
impl fmt::Display for RadicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (&d, c)) in self.terms.iter().enumerate() {
            let mag = fmt_ratio(&c.abs());
            let body = if d == 1 { mag } else { format!("{mag}√{d}") };
            match (i, c.is_negative()) {
                (0, false) => write!(f, "{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for RadicalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RadicalValue({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    d: u64,
    num: String,
    den: String,
}

impl Serialize for RadicalValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let terms: Vec<TermRepr> = self
            .terms
            .iter()
            .map(|(&d, c)| TermRepr {
                d,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect();
        terms.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RadicalValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let terms = Vec::<TermRepr>::deserialize(de)?;
        let mut out = RadicalValue::zero();
        for t in terms {
            let num: BigInt = t.num.parse().map_err(D::Error::custom)?;
            let den: BigInt = t.den.parse().map_err(D::Error::custom)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            if t.d == 0 {
                continue;
            }
            // radicands need not arrive squarefree: √8 is read as 2√2
            let root = RadicalValue::sqrt_int(t.d).map_err(D::Error::custom)?;
            out += &root.scale(&BigRational::new(num, den));
        }
        Ok(out)
    }
}

/// `re + i·im` with exact radical parts.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ComplexRadical {
    pub re: RadicalValue,
    pub im: RadicalValue,
}

impl ComplexRadical {
    pub fn new(re: RadicalValue, im: RadicalValue) -> Self {
        Self { re, im }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::real(RadicalValue::one())
    }

    pub fn i() -> Self {
        Self::new(RadicalValue::zero(), RadicalValue::one())
    }

    pub fn real(re: RadicalValue) -> Self {
        Self::new(re, RadicalValue::zero())
    }

    pub fn from_integer(n: i64) -> Self {
        Self::real(RadicalValue::from_integer(n))
    }

    /// `e^{±iπ/4} = (√2/2)(1 ± i)`.
    pub fn eighth_root(positive: bool) -> Self {
        let half_sqrt2 = RadicalValue::sqrt_int(2)
            .expect("2 in range")
            .scale(&BigRational::new(1.into(), 2.into()));
        let im = if positive {
            half_sqrt2.clone()
        } else {
            -&half_sqrt2
        };
        Self::new(half_sqrt2, im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self::new(self.re.clone(), -&self.im)
    }

    /// `|z|² = re² + im²`.
    pub fn abs_square(&self) -> RadicalValue {
        &(&self.re * &self.re) + &(&self.im * &self.im)
    }

    pub fn scale(&self, k: &RadicalValue) -> Self {
        Self::new(&self.re * k, &self.im * k)
    }

    pub fn inv(&self) -> Result<Self> {
        let r = self.abs_square().inv()?;
        Ok(self.conj().scale(&r))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    pub fn approx(&self) -> ApproxComplex {
        Complex64::new(self.re.approx_re(), self.im.approx_re())
    }
}

impl From<RadicalValue> for ComplexRadical {
    fn from(re: RadicalValue) -> Self {
        Self::real(re)
    }
}

impl Add<&ComplexRadical> for &ComplexRadical {
    type Output = ComplexRadical;
    fn add(self, rhs: &ComplexRadical) -> ComplexRadical {
        ComplexRadical::new(&self.re + &rhs.re, &self.im + &rhs.im)
    }
}

impl Sub<&ComplexRadical> for &ComplexRadical {
    type Output = ComplexRadical;
    fn sub(self, rhs: &ComplexRadical) -> ComplexRadical {
        ComplexRadical::new(&self.re - &rhs.re, &self.im - &rhs.im)
    }
}

impl Mul<&ComplexRadical> for &ComplexRadical {
    type Output = ComplexRadical;
    fn mul(self, rhs: &ComplexRadical) -> ComplexRadical {
        if self.is_real() && rhs.is_real() {
            return ComplexRadical::real(&self.re * &rhs.re);
        }
        ComplexRadical::new(
            &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        )
    }
}

impl Neg for &ComplexRadical {
    type Output = ComplexRadical;
    fn neg(self) -> ComplexRadical {
        ComplexRadical::new(-&self.re, -&self.im)
    }
}

impl Neg for ComplexRadical {
    type Output = ComplexRadical;
    fn neg(self) -> ComplexRadical {
        -&self
    }
}

impl AddAssign<&ComplexRadical> for ComplexRadical {
    fn add_assign(&mut self, rhs: &ComplexRadical) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&ComplexRadical> for ComplexRadical {
    fn sub_assign(&mut self, rhs: &ComplexRadical) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&ComplexRadical> for ComplexRadical {
    fn mul_assign(&mut self, rhs: &ComplexRadical) {
        *self = &*self * rhs;
    }
}

forward_owned!(ComplexRadical, Add::add, Sub::sub, Mul::mul);

impl std::iter::Sum for ComplexRadical {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

/// Real values render as their [`RadicalValue`]; otherwise
/// `re + (im)i`, with the real part omitted when zero.
impl fmt::Display for ComplexRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", self.re);
        }
        let im = if self.im.is_one() {
            "i".to_string()
        } else if (-&self.im).is_one() {
            "-i".to_string()
        } else {
            format!("({})i", self.im)
        };
        if self.re.is_zero() {
            f.write_str(&im)
        } else {
            write!(f, "{} + {im}", self.re)
        }
    }
}

impl fmt::Debug for ComplexRadical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ComplexRadical({self})")
    }
}
