//! The quadratic extension F_{p²} = F_p(√s), where s is the smallest
//! non-residue mod p, and multiplicative orders in F_p and F_{p²}.
//!
//! Orders are computed exactly: start from a known multiple of the order
//! (p − 1 in F_p, p² − 1 in F_{p²}) and divide out prime factors while the
//! power stays 1.

use super::field::{smallest_nonresidue, FieldElement};
use super::primes::{distinct_prime_factors, factorize, is_odd_prime, mul_mod};
use super::FfError;

/// An element a + b·√s of F_{p²}, with s the smallest non-residue mod p.
/// When b = 0 this is just an element of the base field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExtElement {
    a: u64,
    b: u64,
    s: u64,
    p: u64,
}

impl ExtElement {
    /// Builds a + b·√s over F_p, choosing s = smallest non-residue.
    pub fn new(a: i64, b: i64, p: u64) -> Result<Self, FfError> {
        if !is_odd_prime(p) {
            return Err(FfError::NotOddPrime(p));
        }
        let s = smallest_nonresidue(p);
        let a = a.rem_euclid(p as i64) as u64;
        let b = b.rem_euclid(p as i64) as u64;
        Ok(Self { a, b, s, p })
    }

    pub(crate) fn from_parts(a: u64, b: u64, s: u64, p: u64) -> Self {
        Self { a: a % p, b: b % p, s, p }
    }

    pub fn base_part(&self) -> u64 {
        self.a
    }

    pub fn radical_part(&self) -> u64 {
        self.b
    }

    /// The non-residue s with F_{p²} = F_p(√s).
    pub fn radicand(&self) -> u64 {
        self.s
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_one(&self) -> bool {
        self.a == 1 && self.b == 0
    }

    /// True when the element already lies in the base field F_p.
    pub fn is_rational(&self) -> bool {
        self.b == 0
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!((self.p, self.s), (rhs.p, rhs.s), "mixed extension fields");
        let p = self.p;
        // (a + b√s)(c + d√s) = (ac + bd·s) + (ad + bc)√s
        let ac = mul_mod(self.a, rhs.a, p);
        let bds = mul_mod(mul_mod(self.b, rhs.b, p), self.s, p);
        let ad = mul_mod(self.a, rhs.b, p);
        let bc = mul_mod(self.b, rhs.a, p);
        Self { a: (ac + bds) % p, b: (ad + bc) % p, s: self.s, p }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self { a: 1, b: 0, s: self.s, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Exact multiplicative order in F_{p²}*; errors on zero.
    pub fn mult_order(&self) -> Result<u64, FfError> {
        let group = (self.p as u128 * self.p as u128 - 1) as u64;
        self.mult_order_with_factors(&factorize(group))
    }

    /// Same, but with the factorization of p² − 1 supplied by the caller —
    /// the scan layer factors once per prime and reuses it across fibers.
    pub fn mult_order_with_factors(&self, group_factors: &[u64]) -> Result<u64, FfError> {
        if self.is_zero() {
            return Err(FfError::ZeroOrder);
        }
        let mut order = (self.p as u128 * self.p as u128 - 1) as u64;
        for &q in &dedup(group_factors) {
            while order.is_multiple_of(q) && self.pow(order / q).is_one() {
                order /= q;
            }
        }
        Ok(order)
    }
}

/// Exact order of a in F_p*; errors on a ≡ 0.
pub fn mult_order_mod_p(a: FieldElement) -> Result<u64, FfError> {
    if a.is_zero() {
        return Err(FfError::ZeroOrder);
    }
    let mut order = a.modulus() - 1;
    for q in distinct_prime_factors(order) {
        while order.is_multiple_of(q) && a.pow(order / q).value() == 1 {
            order /= q;
        }
    }
    Ok(order)
}

fn dedup(factors: &[u64]) -> Vec<u64> {
    let mut fs = factors.to_vec();
    fs.sort_unstable();
    fs.dedup();
    fs
}
