//! Weyl-Schwinger pair `A`, `B` of period `n`, the derived unitaries
//! `C_m = ζ_{2n}^{−(n−1)m} A B^m`, and checks that their eigenbases
//! reproduce the Gauss-sum magnitudes.
//!
//! Gauge: `A = diag(ζ_n^j)`, so `a_j = e_j`, and `B = Σ_j e_j e_{j+1}†`, the
//! cyclic shift with `a_j† B = a_{j+1}†`. Then `b_k = n^{-1/2} Σ_j ζ_n^{jk} e_j`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::arith::{self, gcd};
use crate::error::{Error, Result};
use crate::gauss::roots_of_unity;
use crate::radical::{ApproxComplex, RadicalValue};

pub const MAX_DIM: usize = 64;

/// Tolerance for the matrix identities.
pub const IDENTITY_TOL: f64 = 1e-10;

/// Tolerance for quantities accumulated over `O(n²)` terms.
pub const DERIVED_TOL: f64 = 1e-9;

type CMat = DMatrix<Complex64>;
type CVec = DVector<Complex64>;

/// Phase table for `ζ_{2n}`; `ζ_n^k = half(2k)`.
#[derive(Debug, Clone)]
struct Phases {
    n: usize,
    roots: Vec<Complex64>,
}

impl Phases {
    fn new(n: usize) -> Self {
        Self {
            n,
            roots: roots_of_unity(2 * n as u64),
        }
    }

    /// `ζ_{2n}^e` for any integer `e`.
    fn half(&self, e: i64) -> Complex64 {
        self.roots[e.rem_euclid(2 * self.n as i64) as usize]
    }

    /// `ζ_n^e`.
    fn full(&self, e: i64) -> Complex64 {
        self.half(2 * e.rem_euclid(self.n as i64))
    }
}

#[derive(Debug, Clone)]
pub struct UnitaryTriple {
    pub n: usize,
    pub a: CMat,
    pub b: CMat,
    pub eigen_a: Vec<CVec>,
    pub eigen_b: Vec<CVec>,
    phases: Phases,
}

#[derive(Debug, Clone)]
pub struct CBasis {
    pub m: usize,
    pub c: CMat,
    pub eigen_c: Vec<CVec>,
}

fn max_dev(x: &CMat, y: &CMat) -> f64 {
    (x - y).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

fn inner(x: &CVec, y: &CVec) -> Complex64 {
    x.dotc(y)
}

impl UnitaryTriple {
    /// `A^j` for any integer `j`.
    pub fn a_pow(&self, j: i64) -> CMat {
        let n = self.n;
        CMat::from_fn(n, n, |r, c| {
            if r == c {
                self.phases.full(j * r as i64)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    /// `B^k` for any integer `k`: `(B^k)_{r, r+k} = 1`.
    pub fn b_pow(&self, k: i64) -> CMat {
        let n = self.n as i64;
        CMat::from_fn(self.n, self.n, |r, c| {
            if (r as i64 + k).rem_euclid(n) == c as i64 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    fn identity(&self) -> CMat {
        CMat::identity(self.n, self.n)
    }

    fn check_m(&self, m: usize) -> Result<()> {
        if m == 0 || m >= self.n {
            return Err(Error::invalid(format!("m = {m} outside 1..{}", self.n)));
        }
        Ok(())
    }
}

pub fn build_triple(n: usize) -> Result<UnitaryTriple> {
    if !(2..=MAX_DIM).contains(&n) {
        return Err(Error::invalid(format!(
            "dimension {n} outside 2..={MAX_DIM}"
        )));
    }
    let phases = Phases::new(n);
    let eigen_a: Vec<CVec> = (0..n)
        .map(|j| {
            let mut v = CVec::zeros(n);
            v[j] = Complex64::new(1.0, 0.0);
            v
        })
        .collect();
    let scale = 1.0 / (n as f64).sqrt();
    let eigen_b: Vec<CVec> = (0..n)
        .map(|k| CVec::from_fn(n, |j, _| phases.full((j * k) as i64) * scale))
        .collect();
    let mut t = UnitaryTriple {
        n,
        a: CMat::zeros(n, n),
        b: CMat::zeros(n, n),
        eigen_a,
        eigen_b,
        phases,
    };
    t.a = t.a_pow(1);
    t.b = t.b_pow(1);
    Ok(t)
}

/// `C_m` and its eigenbasis from `c_{m,j}† b_k = n^{-1/2} ζ_n^{jk} ζ_{2n}^{(n−k)km}`.
pub fn build_c_basis(t: &UnitaryTriple, m: usize) -> Result<CBasis> {
    t.check_m(m)?;
    let n = t.n;
    let ph = &t.phases;
    let c = (&t.a * t.b_pow(m as i64)) * ph.half(-((n as i64 - 1) * m as i64));
    let scale = 1.0 / (n as f64).sqrt();
    let eigen_c = (0..n)
        .map(|j| {
            // c = Σ_k b_k (b_k† c) with b_k† c = conj(c† b_k)
            let mut v = CVec::zeros(n);
            for (k, bk) in t.eigen_b.iter().enumerate() {
                let (j, k) = (j as i64, k as i64);
                let overlap = ph.full(j * k) * ph.half((n as i64 - k) * k * m as i64) * scale;
                v += bk * overlap.conj();
            }
            v
        })
        .collect::<Vec<_>>();
    let basis = CBasis { m, c, eigen_c };
    for (j, v) in basis.eigen_c.iter().enumerate() {
        let dev = (&basis.c * v - v * ph.full(j as i64)).camax();
        if dev > IDENTITY_TOL {
            return Err(Error::invalid(format!(
                "c_{{{m},{j}}} fails the eigenrelation by {dev:e}"
            )));
        }
    }
    Ok(basis)
}

/// Largest deviation observed for one identity.
#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheck {
    pub name: String,
    pub max_deviation: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityReport {
    pub n: usize,
    pub tolerance: f64,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn max_deviation(&self) -> f64 {
        self.checks
            .iter()
            .map(|c| c.max_deviation)
            .fold(0.0, f64::max)
    }

    fn record(&mut self, name: impl Into<String>, dev: f64) {
        self.checks.push(IdentityCheck {
            name: name.into(),
            max_deviation: dev,
            passed: dev <= self.tolerance,
        });
    }
}

/// Pairs `(j, k)` used for the `n³`-cost checks: all of them up to
/// dimension 16, a fixed sample beyond.
fn index_pairs(n: usize) -> Vec<(usize, usize)> {
    if n <= 16 {
        (0..n).flat_map(|j| (0..n).map(move |k| (j, k))).collect()
    } else {
        let picks = [0, 1, 2, n / 2, n - 2, n - 1];
        picks
            .iter()
            .flat_map(|&j| picks.iter().map(move |&k| (j, k)))
            .collect()
    }
}

/// Verifies the eigenrelations, orthonormality, completeness, projection
/// sums, the Fourier relation, the shift relations, the trace rule, Weyl
/// commutation and the power law for `A`, `B`, and the period, power,
/// eigen-, orthonormality, completeness and projection identities for every
/// `C_m`, plus `c_{m,j}† c_{m',k} = a_j† c_{m'−m,k}`.
pub fn check_identities(t: &UnitaryTriple) -> Result<IdentityReport> {
    let n = t.n;
    let ni = n as i64;
    let ph = &t.phases;
    let id = t.identity();
    let mut report = IdentityReport {
        n,
        tolerance: IDENTITY_TOL,
        checks: Vec::new(),
    };

    // eigenrelations and orthonormality
    let mut dev: f64 = 0.0;
    for j in 0..n {
        let z = ph.full(j as i64);
        dev = dev.max((&t.a * &t.eigen_a[j] - &t.eigen_a[j] * z).camax());
        dev = dev.max((&t.b * &t.eigen_b[j] - &t.eigen_b[j] * z).camax());
    }
    report.record("eigenrelations A a_j = ζ^j a_j, B b_k = ζ^k b_k", dev);

    let mut dev: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            let delta = if j == k { 1.0 } else { 0.0 };
            let target = Complex64::new(delta, 0.0);
            dev = dev.max((inner(&t.eigen_a[j], &t.eigen_a[k]) - target).norm());
            dev = dev.max((inner(&t.eigen_b[j], &t.eigen_b[k]) - target).norm());
        }
    }
    report.record("orthonormality of a_j and b_k", dev);

    let sum_a: CMat = t.eigen_a.iter().map(|v| v * v.adjoint()).sum();
    let sum_b: CMat = t.eigen_b.iter().map(|v| v * v.adjoint()).sum();
    report.record(
        "completeness Σ a_j a_j† = Σ b_k b_k† = 1",
        max_dev(&sum_a, &id).max(max_dev(&sum_b, &id)),
    );

    // projection sums
    let mut dev: f64 = 0.0;
    for j in 0..n {
        let mut pa = CMat::zeros(n, n);
        let mut pb = CMat::zeros(n, n);
        for k in 0..n {
            let ki = k as i64;
            pa += t.a_pow(ki) * ph.full(-(j as i64) * ki);
            pb += t.b_pow(ki) * ph.full(-(j as i64) * ki);
        }
        pa /= Complex64::new(n as f64, 0.0);
        pb /= Complex64::new(n as f64, 0.0);
        let a = &t.eigen_a[j];
        let b = &t.eigen_b[j];
        dev = dev.max(max_dev(&(a * a.adjoint()), &pa));
        dev = dev.max(max_dev(&(b * b.adjoint()), &pb));
    }
    report.record("projections a_j a_j† = n⁻¹ Σ (ζ^-j A)^k, same for B", dev);

    let scale = 1.0 / (n as f64).sqrt();
    let mut dev: f64 = 0.0;
    for j in 0..n {
        for k in 0..n {
            let expect = ph.full((j * k) as i64) * scale;
            dev = dev.max((inner(&t.eigen_a[j], &t.eigen_b[k]) - expect).norm());
        }
    }
    report.record("Fourier relation a_j† b_k = n^-1/2 ζ^jk", dev);

    let mut dev: f64 = 0.0;
    for j in 0..n {
        let row = t.eigen_a[j].adjoint() * &t.b;
        dev = dev.max((row - t.eigen_a[(j + 1) % n].adjoint()).camax());
        let col = &t.a * &t.eigen_b[j];
        dev = dev.max((col - &t.eigen_b[(j + 1) % n]).camax());
    }
    report.record("shifts a_j† B = a_{j+1}†, A b_k = b_{k+1}", dev);

    let mut dev_trace: f64 = 0.0;
    let mut dev_comm: f64 = 0.0;
    for j in 0..ni {
        for k in 0..ni {
            let (aj, bk) = (t.a_pow(j), t.b_pow(k));
            let ab = &aj * &bk;
            let expect = if j == 0 && k == 0 { n as f64 } else { 0.0 };
            dev_trace = dev_trace.max((ab.trace() - Complex64::new(expect, 0.0)).norm());
            dev_comm = dev_comm.max(max_dev(&(&ab * ph.full(j * k)), &(&bk * &aj)));
        }
    }
    report.record("trace rule tr(A^j B^k) = n δ_j0 δ_k0", dev_trace);
    report.record("Weyl commutation ζ^jk A^j B^k = B^k A^j", dev_comm);

    let mut dev: f64 = 0.0;
    for (j, k) in index_pairs(n) {
        let (j, k) = (j as i64, k as i64);
        let base = t.a_pow(j) * t.b_pow(k);
        let mut power = t.identity();
        for l in 0..=ni {
            let expect = t.a_pow(j * l) * t.b_pow(k * l) * ph.half(j * k * (l - 1) * l);
            dev = dev.max(max_dev(&power, &expect));
            power = &power * &base;
        }
    }
    report.record("power law (A^j B^k)^l = ζ_2n^{jk(l-1)l} A^jl B^kl", dev);

    // period: A^n = B^n = 1, and A^k, B^k stay a distance >= 1 from 1 before
    let mut dev: f64 = max_dev(&t.a_pow(ni), &id).max(max_dev(&t.b_pow(ni), &id));
    for k in 1..ni {
        let gap = max_dev(&t.a_pow(k), &id).min(max_dev(&t.b_pow(k), &id));
        if gap < 0.5 {
            dev = dev.max(1.0 - gap);
        }
    }
    report.record("period A^n = B^n = 1 and not before", dev);

    let bases = (1..n)
        .map(|m| build_c_basis(t, m))
        .collect::<Result<Vec<_>>>()?;
    let (mut d_pow, mut d_eig, mut d_ortho, mut d_comp, mut d_proj, mut d_conv) =
        (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for cb in &bases {
        let m = cb.m as i64;
        let mut power = t.identity();
        for k in 0..=ni {
            let expect = t.a_pow(k) * t.b_pow(m * k) * ph.half(-(ni - k) * m * k);
            d_pow = d_pow.max(max_dev(&power, &expect));
            if k == ni {
                d_pow = d_pow.max(max_dev(&power, &id));
            }
            power = &power * &cb.c;
        }
        for (j, v) in cb.eigen_c.iter().enumerate() {
            d_eig = d_eig.max((&cb.c * v - v * ph.full(j as i64)).camax());
            d_conv = d_conv.max((inner(v, &t.eigen_b[0]) - Complex64::new(scale, 0.0)).norm());
        }
        for j in 0..n {
            for k in 0..n {
                let delta = if j == k { 1.0 } else { 0.0 };
                d_ortho = d_ortho.max(
                    (inner(&cb.eigen_c[j], &cb.eigen_c[k]) - Complex64::new(delta, 0.0)).norm(),
                );
            }
        }
        let sum: CMat = cb.eigen_c.iter().map(|v| v * v.adjoint()).sum();
        d_comp = d_comp.max(max_dev(&sum, &id));
        for j in 0..n {
            let mut proj = CMat::zeros(n, n);
            let mut power = t.identity();
            for k in 0..ni {
                proj += &power * ph.full(-(j as i64) * k);
                power = &power * &cb.c;
            }
            proj /= Complex64::new(n as f64, 0.0);
            let v = &cb.eigen_c[j];
            d_proj = d_proj.max(max_dev(&(v * v.adjoint()), &proj));
        }
    }
    report.record("C_m^k = ζ_2n^{-(n-k)mk} A^k B^mk, C_m^n = 1", d_pow);
    report.record("eigenrelation C_m c_{m,j} = ζ^j c_{m,j}", d_eig);
    report.record("phase convention c_{m,j}† b_0 = n^-1/2", d_conv);
    report.record("orthonormality of c_{m,j}", d_ortho);
    report.record("completeness Σ c_{m,j} c_{m,j}† = 1", d_comp);
    report.record("projections c_{m,j} c_{m,j}† = n⁻¹ Σ (ζ^-j C_m)^k", d_proj);

    let mut dev: f64 = 0.0;
    for m in 1..n {
        for m2 in m + 1..n {
            let (cm, cm2, cd) = (&bases[m - 1], &bases[m2 - 1], &bases[m2 - m - 1]);
            for (j, k) in index_pairs(n) {
                let lhs = inner(&cm.eigen_c[j], &cm2.eigen_c[k]);
                let rhs = inner(&t.eigen_a[j], &cd.eigen_c[k]);
                dev = dev.max((lhs - rhs).norm());
            }
        }
    }
    report.record("c_{m,j}† c_{m',k} = a_j† c_{m'-m,k}", dev);

    Ok(report)
}

/// `a_j† c_{m,k}` from the matrices and from the sum
/// `n⁻¹ Σ_l ζ_n^{(j−k)l} ζ_{2n}^{−(n−l)lm}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InnerProduct {
    pub matrix: ApproxComplex,
    pub sum: ApproxComplex,
}

impl InnerProduct {
    pub fn deviation(&self) -> f64 {
        (self.matrix - self.sum).norm()
    }
}

pub fn inner_product_gauss(
    t: &UnitaryTriple,
    cb: &CBasis,
    j: usize,
    k: usize,
) -> Result<InnerProduct> {
    let n = t.n;
    if j >= n || k >= n {
        return Err(Error::invalid(format!("indices ({j}, {k}) outside 0..{n}")));
    }
    let ph = &t.phases;
    let (ni, m) = (n as i64, cb.m as i64);
    let (j, k) = (j as i64, k as i64);
    let sum: Complex64 = (0..ni)
        .map(|l| ph.full((j - k) * l) * ph.half(-(ni - l) * l * m))
        .sum::<Complex64>()
        / n as f64;
    Ok(InnerProduct {
        matrix: inner(&t.eigen_a[j as usize], &cb.eigen_c[k as usize]),
        sum,
    })
}

/// Predicted `√n·|a_j† c_{m,k}|`: `√d·δ^{(d)}_{j,k+d/2}` when
/// `v₂(n) = v₂(m) ≥ 1`, else `√d·δ^{(d)}_{j,k}`, with `d = (m, n)`.
pub fn magnitude_law(n: usize, m: usize, j: usize, k: usize) -> Result<RadicalValue> {
    if m == 0 || m >= n {
        return Err(Error::invalid(format!("m = {m} outside 1..{n}")));
    }
    let (n, m) = (n as u64, m as u64);
    let d = gcd(m, n);
    let v2n = arith::v(n, 2);
    let offset = if v2n >= 1 && v2n == arith::v(m, 2) {
        d / 2
    } else {
        0
    };
    let hit = (j as u64 % d) == ((k as u64 + offset) % d);
    if hit {
        RadicalValue::sqrt_int(d)
    } else {
        Ok(RadicalValue::zero())
    }
}

/// Unbiasedness of every pair among `A`, `B`, `C_1 … C_{n−1}`.
#[derive(Debug, Clone, Serialize)]
pub struct Classification {
    pub n: usize,
    pub labels: Vec<String>,
    /// Observed from the eigenvectors.
    pub unbiased: Vec<Vec<bool>>,
    /// Predicted by the gcd rules.
    pub predicted: Vec<Vec<bool>>,
}

impl Classification {
    pub fn matches_rules(&self) -> bool {
        self.unbiased == self.predicted
    }

    pub fn index(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn is_unbiased(&self, x: &str, y: &str) -> Option<bool> {
        Some(self.unbiased[self.index(x)?][self.index(y)?])
    }
}

/// Bases are unbiased when every `|x† y| = n^{-1/2}` to within `1e-9`.
pub fn unbiasedness_classification(t: &UnitaryTriple) -> Result<Classification> {
    let n = t.n;
    if n > 32 {
        return Err(Error::invalid(format!(
            "classification needs n <= 32, got {n}"
        )));
    }
    let mut bases: Vec<(String, Vec<CVec>)> = vec![
        ("A".into(), t.eigen_a.clone()),
        ("B".into(), t.eigen_b.clone()),
    ];
    for m in 1..n {
        bases.push((format!("C{m}"), build_c_basis(t, m)?.eigen_c));
    }
    let target = 1.0 / (n as f64).sqrt();
    let count = bases.len();
    let mut unbiased = vec![vec![false; count]; count];
    let mut predicted = vec![vec![false; count]; count];
    let rule = |x: usize, y: usize| -> bool {
        // index 0 = A, 1 = B, 1 + m = C_m
        match (x.min(y), x.max(y)) {
            (a, b) if a == b => false,
            (0, 1) => true,
            (0, c) => gcd((c - 1) as u64, n as u64) == 1,
            (1, _) => true,
            (c1, c2) => gcd((c2 - c1) as u64, n as u64) == 1,
        }
    };
    for x in 0..count {
        for y in 0..count {
            predicted[x][y] = rule(x, y);
            if x == y {
                continue;
            }
            unbiased[x][y] = bases[x].1.iter().all(|u| {
                bases[y]
                    .1
                    .iter()
                    .all(|w| (inner(u, w).norm() - target).abs() <= DERIVED_TOL)
            });
        }
    }
    Ok(Classification {
        n,
        labels: bases.into_iter().map(|(l, _)| l).collect(),
        unbiased,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_triple() {
        let t = build_triple(2).unwrap();
        let c = |re: f64| Complex64::new(re, 0.0);
        assert!(
            max_dev(
                &t.a,
                &CMat::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), c(-1.0)])
            ) < 1e-15
        );
        assert_eq!(
            t.b,
            CMat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])
        );
        assert!(max_dev(&(&t.b * &t.b), &CMat::identity(2, 2)) < 1e-15);
        assert!(build_triple(1).is_err());
        assert!(build_triple(65).is_err());
    }

    #[test]
    fn trace_rule_n3() {
        let t = build_triple(3).unwrap();
        for j in 0..3 {
            for k in 0..3 {
                let tr = (t.a_pow(j) * t.b_pow(k)).trace();
                let expect = if j == 0 && k == 0 { 3.0 } else { 0.0 };
                assert!((tr - Complex64::new(expect, 0.0)).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn c_bases() {
        let t = build_triple(2).unwrap();
        let cb = build_c_basis(&t, 1).unwrap();
        for v in &cb.eigen_c {
            for b in &t.eigen_b {
                assert!((inner(v, b).norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-12);
            }
        }
        let t3 = build_triple(3).unwrap();
        let c1 = build_c_basis(&t3, 1).unwrap();
        let mut p = CMat::identity(3, 3);
        for _ in 0..3 {
            p = &p * &c1.c;
        }
        assert!(max_dev(&p, &CMat::identity(3, 3)) < 1e-10);
        let t4 = build_triple(4).unwrap();
        let c2 = build_c_basis(&t4, 2).unwrap();
        let mut p = CMat::identity(4, 4);
        for step in 1..=4 {
            p = &p * &c2.c;
            let at_identity = max_dev(&p, &CMat::identity(4, 4)) < 1e-10;
            assert_eq!(at_identity, step == 4);
        }
        assert!(build_c_basis(&t4, 0).is_err());
        assert!(build_c_basis(&t4, 4).is_err());
    }

    #[test]
    fn identities_small() {
        for n in [2, 5, 6] {
            let report = check_identities(&build_triple(n).unwrap()).unwrap();
            assert!(report.passed(), "{report:#?}");
        }
    }

    #[test]
    fn power_law_sample() {
        let t = build_triple(5).unwrap();
        let (j, k, l) = (2i64, 3i64, 4i64);
        let base = t.a_pow(j) * t.b_pow(k);
        let mut p = CMat::identity(5, 5);
        for _ in 0..l {
            p = &p * &base;
        }
        let expect = t.a_pow(j * l) * t.b_pow(k * l) * t.phases.half(j * k * (l - 1) * l);
        assert!(max_dev(&p, &expect) < 1e-10);
    }

    #[test]
    fn inner_product_examples() {
        let t3 = build_triple(3).unwrap();
        let c = build_c_basis(&t3, 1).unwrap();
        let ip = inner_product_gauss(&t3, &c, 1, 1).unwrap();
        assert!(ip.deviation() < 1e-10);
        assert!((ip.matrix.norm() - 1.0 / 3f64.sqrt()).abs() < 1e-10);

        let t4 = build_triple(4).unwrap();
        let c = build_c_basis(&t4, 2).unwrap();
        let ip = inner_product_gauss(&t4, &c, 2, 2).unwrap();
        assert!((ip.matrix.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);

        let t6 = build_triple(6).unwrap();
        let c = build_c_basis(&t6, 2).unwrap();
        for j in 0..6 {
            assert!(inner_product_gauss(&t6, &c, j, j).unwrap().matrix.norm() < 1e-10);
        }

        let t2 = build_triple(2).unwrap();
        let c = build_c_basis(&t2, 1).unwrap();
        let ip = inner_product_gauss(&t2, &c, 0, 0).unwrap();
        assert!((ip.matrix.norm() - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-10);
    }

    #[test]
    fn magnitude_law_examples() {
        assert!(magnitude_law(6, 2, 3, 3).unwrap().is_zero());
        assert_eq!(
            magnitude_law(6, 2, 4, 3).unwrap(),
            RadicalValue::sqrt_int(2).unwrap()
        );
        assert_eq!(
            magnitude_law(6, 3, 1, 1).unwrap(),
            RadicalValue::sqrt_int(3).unwrap()
        );
    }

    #[test]
    fn classification_examples() {
        let c5 = unbiasedness_classification(&build_triple(5).unwrap()).unwrap();
        assert!(c5.matches_rules());
        for x in 0..c5.labels.len() {
            for y in 0..c5.labels.len() {
                assert_eq!(c5.unbiased[x][y], x != y);
            }
        }
        let c6 = unbiasedness_classification(&build_triple(6).unwrap()).unwrap();
        assert!(c6.matches_rules());
        assert_eq!(c6.is_unbiased("A", "C2"), Some(false));
        assert_eq!(c6.is_unbiased("C1", "C2"), Some(true));
        assert_eq!(c6.is_unbiased("C1", "C4"), Some(false));
        assert_eq!(c6.is_unbiased("C1", "C6"), None);
        assert_eq!(c6.is_unbiased("B", "C3"), Some(true));
    }
}
