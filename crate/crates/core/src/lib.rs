//! Exact multiplicative functions built from quadratic Gauss sums.
//!
//! The crate evaluates the gcd-sum operator `ξ_f = f * φ`, the quadratic
//! Gauss sum `S(m, n)` in closed form and by direct summation, the
//! multiplicative function `h` together with its two parametrized families
//! `h⁽¹⁾`, `h⁽²⁾`, the real-part function `h♯`, and a small matrix harness
//! that re-derives the Gauss-sum magnitudes from the eigenbases of a
//! Weyl-Schwinger pair.
//!
//! All number-theoretic results are exact elements of
//! `Q(√2, √3, √5, …)[i]` ([`ComplexRadical`]); floating point is used only
//! for the direct-summation oracles and the matrix harness.

pub mod arith;
pub mod error;
pub mod families;
pub mod functions;
pub mod gauss;
pub mod radical;
pub mod verify;
pub mod weyl;

pub use arith::{
    euler_phi, factorize, gcd, jacobi_symbol, moebius, squarefree_decompose, unit_indicator,
    valuation, Factorization, SquarefreeDecomposition,
};
pub use error::{Error, Result};
pub use families::{GenParams, Variant};
pub use functions::{Builtin, FnSpec};
pub use gauss::{GaussCase, GaussCaseTag};
pub use radical::{ApproxComplex, ComplexRadical, RadicalValue};
