//! Property suites run by `mubfunc verify`. Each check compares a routine
//! against an independent route (brute force, direct summation, literal
//! sums, matrices) and records the first witness on failure.

use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::families::{self, Variant};
use crate::functions::{self, check_multiplicative, Builtin, FnSpec};
use crate::gauss;
use crate::radical::{ComplexRadical, RadicalValue};
use crate::weyl;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Core,
    Xi,
    Gauss,
    Families,
    HSharp,
    Mub,
    All,
}

impl Suite {
    pub const EACH: [Suite; 6] = [
        Suite::Core,
        Suite::Xi,
        Suite::Gauss,
        Suite::Families,
        Suite::HSharp,
        Suite::Mub,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Xi => "xi",
            Suite::Gauss => "gauss",
            Suite::Families => "families",
            Suite::HSharp => "hsharp",
            Suite::Mub => "mub",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::invalid(format!("unknown suite '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyOptions {
    pub max_n: u64,
    pub seed: u64,
    /// Used only where floating point enters.
    pub tolerance: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_n: 256,
            seed: 0,
            tolerance: 1e-9,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub passed: bool,
    /// Cases examined.
    pub cases: u64,
    pub witness: Option<String>,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteReport {
    pub checks: Vec<Check>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// Collects cases for one check; keeps the first failing witness.
struct Probe {
    cases: u64,
    witness: Option<String>,
}

impl Probe {
    fn new() -> Self {
        Self {
            cases: 0,
            witness: None,
        }
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
    }

    fn finish(self, suite: Suite, name: &str) -> Check {
        Check {
            suite,
            name: name.to_string(),
            passed: self.witness.is_none(),
            cases: self.cases,
            witness: self.witness,
        }
    }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> Result<SuiteReport> {
    if opts.max_n < 2 {
        return Err(Error::invalid("max-n must be at least 2"));
    }
    if opts.tolerance.is_nan() || opts.tolerance <= 0.0 {
        return Err(Error::invalid("tolerance must be positive"));
    }
    let mut report = SuiteReport::default();
    let suites: Vec<Suite> = match suite {
        Suite::All => Suite::EACH.to_vec(),
        s => vec![s],
    };
    for s in suites {
        let checks = match s {
            Suite::Core => core_suite(opts)?,
            Suite::Xi => xi_suite(opts)?,
            Suite::Gauss => gauss_suite(opts)?,
            Suite::Families => families_suite(opts)?,
            Suite::HSharp => hsharp_suite(opts)?,
            Suite::Mub => mub_suite(opts)?,
            Suite::All => unreachable!(),
        };
        report.checks.extend(checks);
    }
    Ok(report)
}

fn core_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Core;
    let top = opts.max_n.max(2);
    let mut out = Vec::new();

    let mut p = Probe::new();
    for n in 1..=top {
        let f = arith::factorize(n)?;
        let prod: u64 = f.factors().iter().map(|&(q, e)| q.pow(e)).product();
        let primes_ok = f.factors().iter().all(|&(q, _)| arith::is_prime(q));
        p.case(prod == n && primes_ok, || format!("n = {n}"));
    }
    out.push(p.finish(s, "factorization reconstructs n"));

    let mut p = Probe::new();
    for n in 1..=top {
        let brute = (1..=n).filter(|&k| gcd(k, n) == 1).count() as u64;
        p.case(arith::euler_phi(n)? == brute, || format!("n = {n}"));
    }
    out.push(p.finish(s, "phi equals the coprime count"));

    let mut p = Probe::new();
    for n in 1..=top {
        let f = arith::factorize(n)?;
        let sum: i64 = f
            .divisors()
            .into_iter()
            .map(|d| arith::moebius(d).map(i64::from))
            .sum::<Result<i64>>()?;
        p.case(sum == i64::from(arith::unit_indicator(n)?), || {
            format!("n = {n}")
        });
    }
    out.push(p.finish(s, "moebius sums to the unit indicator"));

    let mut p = Probe::new();
    for q in (3..=top.min(400)).filter(|&q| arith::is_prime(q)) {
        for j in 0..q {
            let euler = if j == 0 {
                0
            } else if mod_pow(j, (q - 1) / 2, q) == 1 {
                1
            } else {
                -1
            };
            p.case(arith::jacobi_symbol(j as i64, q)? == euler, || {
                format!("(j, p) = ({j}, {q})")
            });
        }
    }
    out.push(p.finish(s, "Legendre symbol matches Euler's criterion"));

    let mut p = Probe::new();
    for n in 1..=top {
        let sq = arith::squarefree_decompose(n)?;
        let ok = sq.lambda * sq.nu * sq.nu == n && arith::is_squarefree(sq.lambda)?;
        p.case(ok, || format!("n = {n}"));
    }
    out.push(p.finish(s, "squarefree decomposition n = λν²"));
    Ok(out)
}

fn mod_pow(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn xi_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Xi;
    let mut out = Vec::new();
    let top = opts.max_n;
    let mut p = Probe::new();
    for b in [
        Builtin::One,
        Builtin::Identity,
        Builtin::Sqrt,
        Builtin::Phi,
        Builtin::Moebius,
    ] {
        let f = FnSpec::builtin(b);
        for n in 1..=top {
            let ok = functions::xi_direct(&f, n)? == functions::xi_convolved(&f, n)?;
            p.case(ok, || format!("f = {}, n = {n}", b.name()));
        }
    }
    out.push(p.finish(s, "gcd sum equals convolution with phi"));

    let mut p = Probe::new();
    for b in [Builtin::Sqrt, Builtin::Moebius, Builtin::FSharp] {
        let f = FnSpec::builtin(b);
        let bad = check_multiplicative(|n| functions::xi_convolved(&f, n), top)?;
        p.case(bad.is_empty(), || {
            format!("f = {}, (m, n) = {:?}", b.name(), bad[0])
        });
    }
    out.push(p.finish(s, "xi_f is multiplicative"));
    Ok(out)
}

fn gauss_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Gauss;
    let mut out = Vec::new();
    let top = opts.max_n.min(families::GAUSS_SUM_BOUND);

    let mut p = Probe::new();
    for n in 1..=top {
        for m in 1..=n {
            let dev = (gauss::gauss_closed(m as i64, n)?.approx()
                - gauss::gauss_direct(m as i64, n))
            .norm();
            p.case(dev <= opts.tolerance, || {
                format!("m = {m}, n = {n}, deviation {dev:e}")
            });
        }
    }
    out.push(p.finish(s, "closed form matches direct summation"));

    let mut p = Probe::new();
    for n in 2..=top {
        for m in 1..n {
            let d = gcd(m, n);
            let abs2 = gauss::gauss_closed(m as i64, n)?.abs_square();
            let zero_case = n % 2 == 0 && (n / d) % 2 == 1 && (m / d) % 2 == 1;
            let expect = if zero_case {
                RadicalValue::zero()
            } else {
                RadicalValue::from_integer(d as i64)
            };
            p.case(abs2 == expect, || format!("m = {m}, n = {n}"));
        }
    }
    out.push(p.finish(s, "|S(m, n)|² is (m, n) or 0"));

    let mut p = Probe::new();
    for n in 1..=top.min(64) {
        let ni = n as i64;
        for k in -ni..=ni {
            for m in -2 * ni..=2 * ni {
                let c = gauss::corollary_identity(k, m, n);
                let ok = c.deviation() <= opts.tolerance && c.rhs.im.abs() <= opts.tolerance;
                p.case(ok, || format!("k = {k}, m = {m}, n = {n}"));
            }
        }
    }
    out.push(p.finish(s, "squared-modulus identity"));
    Ok(out)
}

fn families_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Families;
    let mut out = Vec::new();
    let top = opts.max_n.min(512);

    let mut p = Probe::new();
    for n in 1..=top {
        p.case(
            families::h_definition(n)? == families::h_simplified(n)?,
            || format!("n = {n}"),
        );
    }
    out.push(p.finish(s, "h definition equals simplified form"));

    let bad = check_multiplicative(|n| Ok(families::h_simplified(n)?.into()), opts.max_n)?;
    let mut p = Probe::new();
    p.case(bad.is_empty(), || format!("(m, n) = {:?}", bad[0]));
    out.push(p.finish(s, "h is multiplicative"));

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let fs = [Builtin::One, Builtin::Identity, Builtin::Sqrt, Builtin::Phi];
    let mut mult = Probe::new();
    let mut assemble = Probe::new();
    let mut r1 = Probe::new();
    let mut conv = Probe::new();
    for q in [2u64, 3, 5] {
        let len = max_exponent(q, top).max(6);
        for variant in [Variant::H1, Variant::H2] {
            for b in fs {
                let f = FnSpec::builtin(b);
                let params = families::random_params(&mut rng, q, variant, len)?;
                let label = || {
                    format!(
                        "p = {q}, f = {}, params = {}",
                        b.name(),
                        params_json(&params)
                    )
                };
                let values = families::h_general_values(&params, &f, top)?;
                let bad = functions::multiplicativity_violations(&values);
                mult.case(bad.is_empty(), || {
                    format!("{}, (m, n) = {:?}", label(), bad[0])
                });
                for n in 1..=top {
                    let ok =
                        families::assemble_multiplicative(&params, &f, n)? == values[n as usize];
                    assemble.case(ok, || format!("{}, n = {n}", label()));
                }
                for alpha in 1..=6u32 {
                    let n = q.pow(alpha);
                    let ok = families::h_general_prime_power(&params, &f, alpha)?
                        == families::h_general(&params, &f, n)?;
                    r1.case(ok, || format!("{}, alpha = {alpha}", label()));
                }
                let other = match variant {
                    Variant::H1 => Variant::H2,
                    Variant::H2 => Variant::H1,
                };
                let converted = families::convert_params(&params, &f, other)?;
                for alpha in 1..=6u32 {
                    let ok = families::h_general_prime_power(&params, &f, alpha)?
                        == families::h_general_prime_power(&converted, &f, alpha)?;
                    conv.case(ok, || format!("{}, alpha = {alpha}", label()));
                }
            }
        }
    }
    out.push(mult.finish(s, "random h1/h2 parameters give multiplicative functions"));
    out.push(assemble.finish(s, "prime-power assembly equals the literal sum"));
    out.push(r1.finish(s, "prime-power formulas equal the literal sum"));
    out.push(conv.finish(s, "parameter conversion preserves prime-power values"));

    let mut p = Probe::new();
    let len = max_exponent(2, top);
    let h1_sets = [(1..=len).collect::<Vec<_>>(), vec![1; len as usize]];
    let h2_sets = [(1..=len).collect::<Vec<_>>(), vec![0; len as usize]];
    let sqrt = FnSpec::builtin(Builtin::Sqrt);
    let mut matched = Vec::new();
    for a in h1_sets {
        matched.push(families::h1_matching_params(a)?);
    }
    for a in h2_sets {
        matched.push(families::h2_matching_params(a)?);
    }
    for params in &matched {
        let values = families::h_general_values(params, &sqrt, top)?;
        for n in 1..=top {
            let ok = values[n as usize] == ComplexRadical::from(families::h_simplified(n)?);
            p.case(ok, || format!("n = {n}, params = {}", params_json(params)));
        }
    }
    out.push(p.finish(s, "matching parameters reproduce h"));
    Ok(out)
}

fn max_exponent(p: u64, n: u64) -> u32 {
    let mut e = 0;
    let mut q = p;
    while q <= n {
        e += 1;
        q *= p;
    }
    e.max(1)
}

fn params_json(params: &families::GenParams) -> String {
    serde_json::to_string(params).unwrap_or_else(|_| format!("{params:?}"))
}

fn hsharp_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::HSharp;
    let mut out = Vec::new();
    let top = opts.max_n;

    let mut p = Probe::new();
    for n in 1..=top.min(families::GAUSS_SUM_BOUND) {
        let closed = families::h_sharp_closed(n)?;
        let ok =
            families::h_sharp_definition(n)? == closed && families::h_sharp_delta_sum(n)? == closed;
        p.case(ok, || format!("n = {n}"));
    }
    out.push(p.finish(s, "h♯ definition, closed form and δ-count agree"));

    let bad = check_multiplicative(|n| Ok(families::h_sharp_closed(n)?.into()), top)?;
    let mut p = Probe::new();
    p.case(bad.is_empty(), || format!("(m, n) = {:?}", bad[0]));
    out.push(p.finish(s, "h♯ is multiplicative"));

    let mut p = Probe::new();
    let fsharp = families::f_sharp_spec();
    for n in 1..=top {
        let ok = ComplexRadical::from(families::h_sharp_closed(n)?)
            == functions::xi_convolved(&fsharp, n)?;
        p.case(ok, || format!("n = {n}"));
    }
    out.push(p.finish(s, "h♯ = ξ of f♯"));

    let mut p = Probe::new();
    for n in 1..=top {
        let ok = families::squarefree_part_via_hsharp(n)? == arith::squarefree_decompose(n)?.lambda;
        p.case(ok, || format!("n = {n}"));
    }
    out.push(p.finish(s, "squarefree part recovered from h♯"));

    let mut p = Probe::new();
    let row = |n| families::gauss_row_sum_exact(n);
    p.case(row(6)? != &row(2)? * &row(3)?, || "s(6) = s(2)s(3)".into());
    out.push(p.finish(s, "row sum s is not multiplicative at 6"));
    Ok(out)
}

fn mub_suite(opts: &VerifyOptions) -> Result<Vec<Check>> {
    let s = Suite::Mub;
    let mut out = Vec::new();
    let top = opts.max_n.min(16) as usize;
    let mut ident = Probe::new();
    let mut inner = Probe::new();
    let mut classes = Probe::new();
    for n in 2..=top {
        let t = weyl::build_triple(n)?;
        let report = weyl::check_identities(&t)?;
        for c in &report.checks {
            ident.case(c.passed, || {
                format!("n = {n}, {} off by {:e}", c.name, c.max_deviation)
            });
        }
        for m in 1..n {
            let cb = weyl::build_c_basis(&t, m)?;
            for j in 0..n {
                for k in 0..n {
                    let ip = weyl::inner_product_gauss(&t, &cb, j, k)?;
                    let law = weyl::magnitude_law(n, m, j, k)?.approx_re();
                    let dev = ((n as f64).sqrt() * ip.matrix.norm() - law)
                        .abs()
                        .max(ip.deviation());
                    inner.case(dev <= opts.tolerance, || {
                        format!("n = {n}, m = {m}, j = {j}, k = {k}")
                    });
                }
            }
        }
        let cls = weyl::unbiasedness_classification(&t)?;
        classes.case(cls.matches_rules(), || format!("n = {n}"));
    }
    out.push(ident.finish(s, "Weyl-Schwinger identities"));
    out.push(inner.finish(s, "|a_j† c_{m,k}| follows the magnitude law"));
    out.push(classes.finish(s, "unbiasedness follows the gcd rules"));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::EACH.into_iter().chain([Suite::All]) {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn small_suites_pass() {
        let opts = VerifyOptions {
            max_n: 24,
            ..Default::default()
        };
        for s in Suite::EACH {
            let r = run_suite(s, &opts).unwrap();
            assert!(r.passed(), "{s}: {:?}", r.failures().collect::<Vec<_>>());
        }
    }

    #[test]
    fn rejects_bad_options() {
        let opts = VerifyOptions {
            max_n: 1,
            ..Default::default()
        };
        assert!(run_suite(Suite::Core, &opts).is_err());
    }
}
