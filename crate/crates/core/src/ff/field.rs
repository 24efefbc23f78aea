//! Residues in F_p for an odd prime p, with exact modular arithmetic and
//! square roots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::primes::{is_odd_prime, mul_mod, pow_mod};
use super::FfError;

/// A residue in F_p. Carries its modulus so mixed-modulus arithmetic is a
/// loud programming error rather than a silent wrong answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    value: u64,
    modulus: u64,
}

impl FieldElement {
    /// Constructs value mod p, verifying that p is an odd prime.
    pub fn new(value: i64, p: u64) -> Result<Self, FfError> {
        if !is_odd_prime(p) {
            return Err(FfError::NotOddPrime(p));
        }
        Ok(Self::reduced(value, p))
    }

    /// Construction for callers that have already validated the modulus.
    /// Accepts any signed value and reduces to the canonical residue.
    pub(crate) fn reduced(value: i64, p: u64) -> Self {
        debug_assert!(is_odd_prime(p));
        let value = value.rem_euclid(p as i64) as u64;
        Self { value, modulus: p }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn zero_like(&self) -> Self {
        Self { value: 0, modulus: self.modulus }
    }

    pub fn one_like(&self) -> Self {
        Self { value: 1, modulus: self.modulus }
    }

    pub fn pow(&self, e: u64) -> Self {
        Self { value: pow_mod(self.value, e, self.modulus), modulus: self.modulus }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            return None;
        }
        // Fermat: a^(p-2) = a⁻¹ in F_p.
        Some(self.pow(self.modulus - 2))
    }

    /// Legendre symbol as +1 / 0 / −1.
    pub fn legendre(&self) -> i32 {
        if self.value == 0 {
            return 0;
        }
        let e = pow_mod(self.value, (self.modulus - 1) / 2, self.modulus);
        if e == 1 {
            1
        } else {
            -1
        }
    }

    pub fn is_quadratic_residue(&self) -> bool {
        self.legendre() == 1
    }

    /// Modular square root: the smaller of the two roots when a is a nonzero
    /// QR, 0 for a = 0, `None` for a non-residue. Tonelli–Shanks, with the
    /// exponent-(p+1)/4 shortcut for p ≡ 3 (mod 4).
    pub fn sqrt(&self) -> Option<Self> {
        let (a, p) = (self.value, self.modulus);
        if a == 0 {
            return Some(*self);
        }
        if self.legendre() != 1 {
            return None;
        }
        let root = if p % 4 == 3 {
            pow_mod(a, (p + 1) / 4, p)
        } else {
            tonelli_shanks(a, p)
        };
        let root = root.min(p - root);
        Some(Self { value: root, modulus: p })
    }
}

/// Tonelli–Shanks for p ≡ 1 (mod 4) and a a known QR.
fn tonelli_shanks(a: u64, p: u64) -> u64 {
    // p - 1 = q · 2^s with q odd
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = smallest_nonresidue(p);
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        // Least i with t^(2^i) = 1; always 0 < i < m.
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    r
}

/// Smallest positive quadratic non-residue mod p; the fixed √s generator of
/// the quadratic extension.
pub(crate) fn smallest_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&s| pow_mod(s, (p - 1) / 2, p) == p - 1)
        .expect("odd prime has a non-residue")
}

macro_rules! checked_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for FieldElement {
            type Output = FieldElement;
            fn $method(self, rhs: FieldElement) -> FieldElement {
                assert_eq!(
                    self.modulus, rhs.modulus,
                    "mixed moduli {} and {}", self.modulus, rhs.modulus
                );
                let p = self.modulus as u128;
                let lhs = self.value as u128;
                let rhs_v = rhs.value as u128;
                let value = checked_binop!(@eval lhs, rhs_v, p, $op);
                FieldElement { value: value as u64, modulus: self.modulus }
            }
        }
    };
    (@eval $a:ident, $b:ident, $p:ident, +) => { ($a + $b) % $p };
    (@eval $a:ident, $b:ident, $p:ident, -) => { ($a + $p - $b) % $p };
    (@eval $a:ident, $b:ident, $p:ident, *) => { ($a * $b) % $p };
}

checked_binop!(Add, add, +);
checked_binop!(Sub, sub, -);
checked_binop!(Mul, mul, *);

impl Neg for FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        FieldElement { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
