//! Exact arithmetic in F_p and its quadratic extension, plus the integer
//! plumbing (primality, factorization, cyclotomics) the dynamics modules
//! lean on.

mod cyclotomic;
mod ext;
mod field;
mod poly;
pub mod primes;

pub use cyclotomic::{cyclotomic, cyclotomic_factor_shape, shares_quadratic_factor};
pub use ext::{mult_order_mod_p, ExtElement};
pub use field::FieldElement;
pub use poly::{IntPolynomial, ModPolynomial};

use thiserror::Error;

/// Errors from finite-field construction and order computations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("modulus {0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("multiplicative order of zero is undefined")]
    ZeroOrder,
    #[error("no primitive {n}-th roots of unity in characteristic {p}")]
    NoPrimitiveRoots { n: u64, p: u64 },
}
