//! Multiplicative functions given by their prime-power values, Dirichlet
//! convolution and the gcd-sum operator
//!
//! ```text
//! ξ_f(n) = Σ_{k=1}^{n} f((k, n)) = (f * φ)(n).
//! ```
//!
//! `ξ_f` is computed along two independent routes, the literal gcd sum
//! ([`xi_direct`]) and the convolution with φ ([`xi_convolved`]), which
//! serve as oracles for each other.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::arith::{self, factorize, gcd};
use crate::error::{Error, Result};
use crate::families;
use crate::radical::{ComplexRadical, RadicalValue};

/// Largest `n` for the sums that enumerate `1..=n`.
pub const DIRECT_BOUND: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Builtin {
    One,
    Identity,
    Sqrt,
    Phi,
    Moebius,
    FSharp,
}

impl Builtin {
    pub const ALL: [Builtin; 6] = [
        Builtin::One,
        Builtin::Identity,
        Builtin::Sqrt,
        Builtin::Phi,
        Builtin::Moebius,
        Builtin::FSharp,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Builtin::One => "one",
            Builtin::Identity => "identity",
            Builtin::Sqrt => "sqrt",
            Builtin::Phi => "phi",
            Builtin::Moebius => "moebius",
            Builtin::FSharp => "f_sharp",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Some(match s {
            "one" | "1" => Builtin::One,
            "identity" | "id" => Builtin::Identity,
            "sqrt" | "s" => Builtin::Sqrt,
            "phi" => Builtin::Phi,
            "moebius" | "mu" => Builtin::Moebius,
            "f_sharp" | "fsharp" => Builtin::FSharp,
            _ => return None,
        })
    }

    fn prime_power(self, p: u64, e: u32) -> Result<ComplexRadical> {
        let pe = checked_pow(p, e)?;
        let v = match self {
            Builtin::One => RadicalValue::one(),
            Builtin::Identity => RadicalValue::from_integer(pe as i64),
            Builtin::Sqrt => RadicalValue::half_power(p, i64::from(e))?,
            Builtin::Phi => RadicalValue::from_integer((pe - pe / p) as i64),
            Builtin::Moebius => RadicalValue::from_integer(if e == 1 { -1 } else { 0 }),
            Builtin::FSharp => families::f_sharp(p, e)?,
        };
        Ok(v.into())
    }
}

pub(crate) fn checked_pow(p: u64, e: u32) -> Result<u64> {
    p.checked_pow(e)
        .filter(|&v| v <= arith::FACTOR_BOUND)
        .ok_or(Error::bound("prime power", p, arith::FACTOR_BOUND))
}

type Rule = Arc<dyn Fn(u64) -> Result<ComplexRadical> + Send + Sync>;

#[derive(Clone)]
pub enum FnKind {
    Builtin(Builtin),
    /// Prime-power values `(p, α) -> f(p^α)`, `α ≥ 1`.
    Table(BTreeMap<(u64, u32), ComplexRadical>),
    /// Arbitrary evaluation rule; not assumed multiplicative.
    Composite(Rule),
}

/// An arithmetic function with a display name.
///
/// Builtin and table functions are multiplicative by construction and are
/// evaluated from the factorization of `n`.
#[derive(Clone)]
pub struct FnSpec {
    name: String,
    kind: FnKind,
}

impl fmt::Debug for FnSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            FnKind::Builtin(b) => b.name(),
            FnKind::Table(_) => "table",
            FnKind::Composite(_) => "composite",
        };
        write!(f, "FnSpec({}: {kind})", self.name)
    }
}

impl FnSpec {
    pub fn builtin(b: Builtin) -> Self {
        Self {
            name: b.name().to_string(),
            kind: FnKind::Builtin(b),
        }
    }

    pub fn table(name: impl Into<String>, table: BTreeMap<(u64, u32), ComplexRadical>) -> Self {
        Self {
            name: name.into(),
            kind: FnKind::Table(table),
        }
    }

    pub fn composite(
        name: impl Into<String>,
        rule: impl Fn(u64) -> Result<ComplexRadical> + Send + Sync + 'static,
    ) -> Self {
        Self {
            name: name.into(),
            kind: FnKind::Composite(Arc::new(rule)),
        }
    }

    /// `ξ_f` as a function in its own right (evaluated by convolution).
    pub fn xi_of(f: &FnSpec) -> Self {
        let inner = f.clone();
        Self::composite(format!("xi_{}", f.name), move |n| xi_convolved(&inner, n))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn kind(&self) -> &FnKind {
        &self.kind
    }

    /// `f(p^e)`; the ring unit at `e = 0`.
    pub fn prime_power(&self, p: u64, e: u32) -> Result<ComplexRadical> {
        if e == 0 {
            return Ok(ComplexRadical::one());
        }
        match &self.kind {
            FnKind::Builtin(b) => b.prime_power(p, e),
            FnKind::Table(t) => t
                .get(&(p, e))
                .cloned()
                .ok_or_else(|| Error::MissingTableEntry {
                    name: self.name.clone(),
                    p,
                    alpha: e,
                }),
            FnKind::Composite(rule) => rule(checked_pow(p, e)?),
        }
    }

    /// `f(1), …, f(bound)`, with index 0 holding zero.
    pub fn values_upto(&self, bound: u64) -> Result<Vec<ComplexRadical>> {
        let mut out = Vec::with_capacity(bound as usize + 1);
        out.push(ComplexRadical::zero());
        for n in 1..=bound {
            out.push(eval_fn(self, n)?);
        }
        Ok(out)
    }
}

/// JSON form of an [`FnSpec`]: `{name, kind, table?}` where `kind` is a
/// builtin name or `"table"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FnSpecDoc {
    pub name: String,
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<TableEntry>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TableEntry {
    pub p: u64,
    pub alpha: u32,
    pub value: ComplexRadical,
}

impl TryFrom<FnSpecDoc> for FnSpec {
    type Error = Error;

    fn try_from(doc: FnSpecDoc) -> Result<Self> {
        if doc.kind == "table" {
            let entries = doc
                .table
                .ok_or_else(|| Error::Parse("table function without `table`".into()))?;
            let mut table = BTreeMap::new();
            for e in entries {
                if !arith::is_prime(e.p) {
                    return Err(Error::NotPrime(e.p));
                }
                if e.alpha == 0 {
                    return Err(Error::Parse("table exponents start at 1".into()));
                }
                table.insert((e.p, e.alpha), e.value);
            }
            return Ok(FnSpec::table(doc.name, table));
        }
        let b = Builtin::from_name(&doc.kind)
            .ok_or_else(|| Error::Parse(format!("unknown function kind `{}`", doc.kind)))?;
        let mut f = FnSpec::builtin(b);
        f.name = doc.name;
        Ok(f)
    }
}

impl FnSpec {
    pub fn from_json(s: &str) -> Result<Self> {
        let doc: FnSpecDoc = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        doc.try_into()
    }

    /// The JSON document for builtin and table functions.
    pub fn to_doc(&self) -> Option<FnSpecDoc> {
        match &self.kind {
            FnKind::Builtin(b) => Some(FnSpecDoc {
                name: self.name.clone(),
                kind: b.name().to_string(),
                table: None,
            }),
            FnKind::Table(t) => Some(FnSpecDoc {
                name: self.name.clone(),
                kind: "table".into(),
                table: Some(
                    t.iter()
                        .map(|(&(p, alpha), v)| TableEntry {
                            p,
                            alpha,
                            value: v.clone(),
                        })
                        .collect(),
                ),
            }),
            FnKind::Composite(_) => None,
        }
    }
}

pub fn eval_fn(f: &FnSpec, n: u64) -> Result<ComplexRadical> {
    if n == 0 {
        return Err(Error::invalid(
            "arithmetic functions are defined for n >= 1",
        ));
    }
    if let FnKind::Composite(rule) = &f.kind {
        return rule(n);
    }
    let mut acc = ComplexRadical::one();
    for &(p, e) in factorize(n)?.factors() {
        acc *= &f.prime_power(p, e)?;
    }
    Ok(acc)
}

/// `(f * g)(n) = Σ_{d|n} f(d) g(n/d)`.
pub fn dirichlet_convolve(f: &FnSpec, g: &FnSpec, n: u64) -> Result<ComplexRadical> {
    let divs = factorize(n)?.divisors();
    let mut acc = ComplexRadical::zero();
    for d in divs {
        acc += &(&eval_fn(f, d)? * &eval_fn(g, n / d)?);
    }
    Ok(acc)
}

/// Literal gcd sum `Σ_{k=1}^{n} f((k, n))`.
pub fn xi_direct(f: &FnSpec, n: u64) -> Result<ComplexRadical> {
    xi_direct_with(&|d| eval_fn(f, d), n)
}

pub(crate) fn xi_direct_with(
    f: &dyn Fn(u64) -> Result<ComplexRadical>,
    n: u64,
) -> Result<ComplexRadical> {
    if n == 0 {
        return Err(Error::invalid("xi: n must be positive"));
    }
    if n > DIRECT_BOUND {
        return Err(Error::bound("xi_direct", n, DIRECT_BOUND));
    }
    weighted_sum(f, &gcd_counts(n, |_| true))
}

/// How often each gcd `(k, n)` occurs for `1 ≤ k ≤ n` with `keep(k)`.
pub(crate) fn gcd_counts(n: u64, mut keep: impl FnMut(u64) -> bool) -> BTreeMap<u64, u64> {
    let mut counts = BTreeMap::new();
    for k in 1..=n {
        if keep(k) {
            *counts.entry(gcd(k, n)).or_insert(0) += 1;
        }
    }
    counts
}

pub(crate) fn weighted_sum(
    f: &dyn Fn(u64) -> Result<ComplexRadical>,
    counts: &BTreeMap<u64, u64>,
) -> Result<ComplexRadical> {
    let mut acc = ComplexRadical::zero();
    for (&d, &c) in counts {
        acc += &f(d)?.scale(&RadicalValue::from_integer(c as i64));
    }
    Ok(acc)
}

/// `ξ_f(n)` as the Dirichlet product `(f * φ)(n)`.
pub fn xi_convolved(f: &FnSpec, n: u64) -> Result<ComplexRadical> {
    dirichlet_convolve(f, &FnSpec::builtin(Builtin::Phi), n)
}

/// Every coprime pair `2 ≤ m ≤ n`, `mn ≤ bound`, with `f(mn) ≠ f(m) f(n)`.
pub fn check_multiplicative(
    f: impl Fn(u64) -> Result<ComplexRadical>,
    bound: u64,
) -> Result<Vec<(u64, u64)>> {
    let mut values = Vec::with_capacity(bound as usize + 1);
    values.push(ComplexRadical::zero());
    for n in 1..=bound {
        values.push(f(n)?);
    }
    Ok(multiplicativity_violations(&values))
}

/// As [`check_multiplicative`] over precomputed values `values[n] = f(n)`.
pub fn multiplicativity_violations(values: &[ComplexRadical]) -> Vec<(u64, u64)> {
    let bound = values.len().saturating_sub(1) as u64;
    let mut bad = Vec::new();
    let mut m = 2u64;
    while m * m <= bound {
        for n in m..=bound / m {
            if gcd(m, n) == 1
                && values[(m * n) as usize] != &values[m as usize] * &values[n as usize]
            {
                bad.push((m, n));
            }
        }
        m += 1;
    }
    bad
}

/// Recovers `f` from `ξ_f` at the given prime powers by solving
/// `ξ_f(p^α) = Σ_{b=0}^{α} f(p^b) φ(p^{α−b})` for `f(p^α)`, `α = 1, 2, …`.
pub fn xi_preimage(
    name: impl Into<String>,
    primes: &[u64],
    max_alpha: u32,
    xi_at: impl Fn(u64, u32) -> Result<ComplexRadical>,
) -> Result<FnSpec> {
    let mut table = BTreeMap::new();
    for &p in primes {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut f = vec![ComplexRadical::one()];
        for alpha in 1..=max_alpha {
            let mut v = xi_at(p, alpha)?;
            for (b, fb) in f.iter().enumerate() {
                let rest = checked_pow(p, alpha - b as u32)?;
                let phi = (rest - rest / p) as i64;
                v -= &fb.scale(&RadicalValue::from_integer(phi));
            }
            table.insert((p, alpha), v.clone());
            f.push(v);
        }
    }
    Ok(FnSpec::table(name, table))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: Builtin) -> FnSpec {
        FnSpec::builtin(x)
    }

    fn sqrt(n: u64) -> ComplexRadical {
        RadicalValue::sqrt_int(n).unwrap().into()
    }

    fn int(n: i64) -> ComplexRadical {
        ComplexRadical::from_integer(n)
    }

    #[test]
    fn eval_examples() {
        assert_eq!(eval_fn(&b(Builtin::Sqrt), 8).unwrap(), sqrt(8));
        assert_eq!(eval_fn(&b(Builtin::Phi), 12).unwrap(), int(4));
        assert_eq!(eval_fn(&b(Builtin::One), 1_000_000).unwrap(), int(1));
        assert_eq!(eval_fn(&b(Builtin::Moebius), 30).unwrap(), int(-1));
        assert_eq!(eval_fn(&b(Builtin::Identity), 360).unwrap(), int(360));
    }

    #[test]
    fn builtins_match_arith() {
        for n in 1..500 {
            assert_eq!(
                eval_fn(&b(Builtin::Phi), n).unwrap(),
                int(arith::euler_phi(n).unwrap() as i64)
            );
            assert_eq!(
                eval_fn(&b(Builtin::Moebius), n).unwrap(),
                int(arith::moebius(n).unwrap().into())
            );
            assert_eq!(eval_fn(&b(Builtin::Sqrt), n).unwrap(), sqrt(n));
        }
    }

    #[test]
    fn table_missing_entry_is_an_error() {
        let mut t = BTreeMap::new();
        t.insert((2, 1), int(5));
        let f = FnSpec::table("t", t);
        assert_eq!(
            eval_fn(&f, 6).unwrap_err(),
            Error::MissingTableEntry {
                name: "t".into(),
                p: 3,
                alpha: 1
            }
        );
        assert_eq!(eval_fn(&f, 2).unwrap(), int(5));
        assert_eq!(eval_fn(&f, 1).unwrap(), int(1));
    }

    #[test]
    fn convolution_examples() {
        let mu = b(Builtin::Moebius);
        let one = b(Builtin::One);
        assert_eq!(dirichlet_convolve(&mu, &one, 1).unwrap(), int(1));
        assert_eq!(dirichlet_convolve(&mu, &one, 6).unwrap(), int(0));
        assert_eq!(
            dirichlet_convolve(&b(Builtin::Sqrt), &b(Builtin::Phi), 4).unwrap(),
            &int(4) + &sqrt(2)
        );
    }

    #[test]
    fn moebius_inversion_is_unit_indicator() {
        let mu = b(Builtin::Moebius);
        let one = b(Builtin::One);
        for n in 1..=10_000 {
            let v = dirichlet_convolve(&mu, &one, n).unwrap();
            assert_eq!(v, int(arith::unit_indicator(n).unwrap().into()));
        }
    }

    #[test]
    fn xi_examples() {
        let s = b(Builtin::Sqrt);
        assert_eq!(xi_direct(&s, 1).unwrap(), int(1));
        assert_eq!(xi_direct(&s, 4).unwrap(), &int(4) + &sqrt(2));
        assert_eq!(xi_direct(&s, 3).unwrap(), &int(2) + &sqrt(3));
        assert_eq!(xi_convolved(&s, 4).unwrap(), &int(4) + &sqrt(2));
        assert_eq!(
            xi_convolved(&s, 9).unwrap(),
            &int(9) + &sqrt(3).scale(&RadicalValue::from_integer(2))
        );
        for n in 1..50 {
            assert_eq!(xi_convolved(&b(Builtin::One), n).unwrap(), int(n as i64));
        }
        assert!(xi_direct(&s, DIRECT_BOUND + 1)
            .unwrap_err()
            .is_bound_exceeded());
    }

    #[test]
    fn xi_routes_agree() {
        for bf in [
            Builtin::One,
            Builtin::Identity,
            Builtin::Sqrt,
            Builtin::Phi,
            Builtin::Moebius,
        ] {
            let f = b(bf);
            for n in 1..=300 {
                assert_eq!(
                    xi_direct(&f, n).unwrap(),
                    xi_convolved(&f, n).unwrap(),
                    "{bf:?} {n}"
                );
            }
        }
    }

    #[test]
    fn multiplicativity_checker() {
        let phi = b(Builtin::Phi);
        assert!(check_multiplicative(|n| eval_fn(&phi, n), 200)
            .unwrap()
            .is_empty());
        let succ = |n: u64| Ok(int(n as i64 + 1));
        assert!(check_multiplicative(succ, 20).unwrap().contains(&(2, 3)));
        let xs = FnSpec::xi_of(&b(Builtin::Sqrt));
        assert!(check_multiplicative(|n| eval_fn(&xs, n), 200)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn preimage_inverts_xi() {
        let s = b(Builtin::Sqrt);
        let back = xi_preimage("s", &[2, 3, 5], 5, |p, a| xi_convolved(&s, p.pow(a))).unwrap();
        for &p in &[2u64, 3, 5] {
            for a in 0..=5 {
                assert_eq!(
                    back.prime_power(p, a).unwrap(),
                    s.prime_power(p, a).unwrap()
                );
            }
        }
    }

    #[test]
    fn json_document() {
        let f = FnSpec::from_json(r#"{"name": "root", "kind": "sqrt"}"#).unwrap();
        assert_eq!(eval_fn(&f, 2).unwrap(), sqrt(2));
        let t = FnSpec::from_json(
            r#"{"name": "t", "kind": "table",
                "table": [{"p": 2, "alpha": 1, "value": {"re": [{"d": 1, "num": "3", "den": "1"}], "im": []}}]}"#,
        )
        .unwrap();
        assert_eq!(eval_fn(&t, 2).unwrap(), int(3));
        let doc = serde_json::to_string(&t.to_doc().unwrap()).unwrap();
        assert_eq!(
            eval_fn(&FnSpec::from_json(&doc).unwrap(), 2).unwrap(),
            int(3)
        );
        assert!(FnSpec::from_json(r#"{"name": "x", "kind": "nope"}"#).is_err());
        assert!(FnSpec::from_json(r#"{"name": "x", "kind": "table"}"#).is_err());
    }
}
