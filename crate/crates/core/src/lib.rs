//! Arithmetic dynamics on the Markoff surface x² + y² + z² = xyz.
//!
//! The crate is organized around the pipeline used to study residual
//! periodicity of the surface's automorphisms:
//!
//! - [`ff`] — exact arithmetic in F_p and F_{p²}, modular square roots,
//!   multiplicative orders, desk-scale factorization, cyclotomic polynomials.
//! - [`surface`] — surface points over ℚ or F_p, the three Vieta reflections,
//!   reduced automorphism words, coordinate-permutation conjugacy, and
//!   fiber-by-fiber point enumeration.
//! - [`fiber`] — the linear action A_λ on the conic fiber z = λ, its
//!   characteristic polynomial, matrix and point orders, and the
//!   classification of fibers whose eigenvalues are roots of unity.
//! - [`scan`] — per-prime analysis: exact periods, minimal periods outside a
//!   forbidden set, strong-residual-periodicity verdicts over prime ranges,
//!   and the verification suites behind the headline theorems.
//! - [`primesearch`] — the ω(p) invariant and the constructive CRT search for
//!   primes p ≡ 19 (mod 24) with ω(p) > k.
//! - [`companions`] — two companion strongly-residually-periodic systems:
//!   a sextic line map with a fixed point modulo every prime, and the
//!   Hénon-form plane automorphism built from it.
//!
//! Every structural fast path has a brute-force oracle twin, and the test
//! suite pins the two against each other on small primes.

pub mod companions;
pub mod ff;
pub mod fiber;
pub mod primesearch;
pub mod scan;
pub mod surface;

pub use ff::{ExtElement, FieldElement, IntPolynomial, ModPolynomial};
pub use surface::{Axis, AutWord, CoordPermutation, ModPoint, RatPoint, SurfacePoint};
