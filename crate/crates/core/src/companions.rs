//! Two companion systems that exhibit residual periodicity over every
//! prime, built from the sextic g(x) = (x² − 2)(x² − 3)(x² − 6):
//!
//! - the line map f(x) = g(x) + x, whose fixed points are the roots of g —
//!   since 2·3·6 = 6² is a square, at least one of 2, 3, 6 is a quadratic
//!   residue mod every odd prime, so f has a fixed point mod every p;
//! - the plane automorphism H(x, y) = (y, g(y) + x) in Hénon form, fixing
//!   the diagonal points (c, c) with g(c) = 0.
//!
//! Arithmetic is over plain residues so that p = 2 and p = 3 (where the
//! fixed point is found by inspection) are handled uniformly.

use thiserror::Error;

use crate::ff::primes::{is_prime, mul_mod};
use crate::ff::FieldElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompanionError {
    #[error("{0} is not prime")]
    NotPrime(u64),
}

/// g(x) = (x² − 2)(x² − 3)(x² − 6) mod p.
fn sextic(x: u64, p: u64) -> u64 {
    let sq = mul_mod(x, x, p);
    let shift = |a: u64| (sq + p - a % p) % p;
    mul_mod(mul_mod(shift(2), shift(3), p), shift(6), p)
}

/// The line map f(x) = g(x) + x mod p.
pub fn line_map_eval(x: u64, p: u64) -> u64 {
    (sextic(x, p) + x % p) % p
}

/// The canonical fixed point of the line map mod p: the smaller square root
/// of the first quadratic residue among 2, 3, 6. For p < 5 (where 36 ≡ 0)
/// the fixed point is found by direct scan.
pub fn line_fixed_point(p: u64) -> Result<u64, CompanionError> {
    if !is_prime(p) {
        return Err(CompanionError::NotPrime(p));
    }
    if p < 5 {
        // Scan the whole line; g(0) = −36 ≡ 0 mod 2 and mod 3.
        return Ok((0..p)
            .find(|&x| line_map_eval(x, p) == x)
            .expect("g(0) = -36 vanishes mod 2 and mod 3"));
    }
    for a in [2i64, 3, 6] {
        let candidate = FieldElement::new(a, p).expect("p ≥ 5 is an odd prime");
        if let Some(root) = candidate.sqrt() {
            return Ok(root.value());
        }
    }
    unreachable!("2·3·6 is a square, so some factor is a quadratic residue")
}

/// The Hénon-form automorphism H(x, y) = (y, g(y) + x).
pub fn henon_apply(v: (u64, u64), p: u64) -> (u64, u64) {
    let (x, y) = (v.0 % p, v.1 % p);
    (y, (sextic(y, p) + x) % p)
}

/// H⁻¹(x, y) = (y − g(x), x).
pub fn henon_inverse(v: (u64, u64), p: u64) -> (u64, u64) {
    let (x, y) = (v.0 % p, v.1 % p);
    ((y + p - sextic(x, p)) % p, x)
}

/// The canonical diagonal fixed point (c, c) of H, with g(c) = 0.
pub fn henon_fixed_point(p: u64) -> Result<(u64, u64), CompanionError> {
    let c = line_fixed_point(p)?;
    Ok((c, c))
}

/// What iterating H from a start point produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitOutcome {
    /// The orbit returned to its start after exactly this many steps.
    Period(u64),
    /// No return within the step budget.
    ExceededBound { cap: u64 },
}

/// The exact period of a point under H, by iteration: H permutes the finite
/// plane, so every orbit is a pure cycle and the first return gives the
/// period.
pub fn henon_orbit_period(
    start: (u64, u64),
    p: u64,
    cap: u64,
) -> Result<OrbitOutcome, CompanionError> {
    if !is_prime(p) {
        return Err(CompanionError::NotPrime(p));
    }
    let start = (start.0 % p, start.1 % p);
    let mut v = henon_apply(start, p);
    for k in 1..=cap {
        if v == start {
            return Ok(OrbitOutcome::Period(k));
        }
        v = henon_apply(v, p);
    }
    Ok(OrbitOutcome::ExceededBound { cap })
}
