//! Cyclotomic polynomials Φ_n over ℤ and their factorization shape mod p.
//!
//! Φ_n is computed exactly as (t^n − 1) / ∏_{d|n, d<n} Φ_d by repeated
//! integer polynomial division. Mod a prime p with p ∤ n, Φ_n is squarefree
//! and splits into φ(n)/k irreducible factors, each of degree k = ord_n(p);
//! in particular it has a root in F_p exactly when p ≡ 1 (mod n), and a
//! quadratic irreducible factor exactly when p ≡ −1 (mod n) (for n > 2).

use super::poly::{IntPolynomial, ModPolynomial};
use super::primes::{divisors, euler_phi, order_mod};
use super::FfError;

/// The n-th cyclotomic polynomial; n ≥ 1.
pub fn cyclotomic(n: u64) -> IntPolynomial {
    assert!(n >= 1, "cyclotomic index must be positive");
    let mut phi = IntPolynomial::t_pow_minus_one(n as usize);
    for d in divisors(n) {
        if d < n {
            phi = phi
                .div_exact(&cyclotomic(d))
                .expect("cyclotomic polynomials divide t^n - 1 exactly");
        }
    }
    phi
}

/// Factorization shape of Φ_n mod p for p ∤ n: returns
/// (irreducible factor degree k, factor count φ(n)/k) with k = ord_n(p).
/// Errors when p divides n (Φ_n is then not squarefree mod p).
pub fn cyclotomic_factor_shape(n: u64, p: u64) -> Result<(u64, u64), FfError> {
    if n == 1 {
        // Φ₁ = t − 1 is always a single linear factor.
        return Ok((1, 1));
    }
    if n.is_multiple_of(p) {
        // p prime, so gcd(p, n) > 1 exactly when p | n.
        return Err(FfError::NoPrimitiveRoots { n, p });
    }
    let k = order_mod(p % n, n);
    Ok((k, euler_phi(n) / k))
}

/// Whether t² + d·t + 1 shares an irreducible factor with Φ_n mod p,
/// decided by an actual polynomial gcd over F_p. A shared factor means the
/// quadratic's roots are primitive n-th roots of unity.
pub fn shares_quadratic_factor(d: u64, n: u64, p: u64) -> bool {
    let quad = ModPolynomial::new(vec![1, d % p, 1], p);
    let phi_n = cyclotomic(n).reduce_mod(p);
    phi_n.gcd(&quad).degree() > 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(coeffs: &[i64]) -> IntPolynomial {
        IntPolynomial::new(coeffs.to_vec())
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic(1), poly(&[-1, 1]));
        assert_eq!(cyclotomic(2), poly(&[1, 1]));
        assert_eq!(cyclotomic(3), poly(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), poly(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), poly(&[1, -1, 1]));
        assert_eq!(cyclotomic(8), poly(&[1, 0, 0, 0, 1]));
        assert_eq!(cyclotomic(12), poly(&[1, 0, -1, 0, 1]));
        assert_eq!(cyclotomic(24), poly(&[1, 0, 0, 0, -1, 0, 0, 0, 1]));
        // A non-trivial coefficient pattern: Φ₁₀₅ is famous for ±2 entries,
        // but here a modest composite suffices as a cross-check.
        assert_eq!(cyclotomic(15), poly(&[1, -1, 0, 1, -1, 1, 0, -1, 1]));
    }

    #[test]
    fn degree_is_euler_phi() {
        for n in 1..=200u64 {
            assert_eq!(cyclotomic(n).degree() as u64, euler_phi(n), "n = {n}");
        }
    }

    #[test]
    fn product_over_divisors_is_t_n_minus_one() {
        for n in [12u64, 24, 30] {
            let mut rem = IntPolynomial::t_pow_minus_one(n as usize);
            for d in divisors(n) {
                rem = rem.div_exact(&cyclotomic(d)).unwrap();
            }
            assert_eq!(rem, IntPolynomial::one());
        }
    }

    #[test]
    fn factor_shapes_match_direct_factorization() {
        assert_eq!(cyclotomic_factor_shape(8, 7).unwrap(), (2, 2));
        assert_eq!(cyclotomic_factor_shape(12, 13).unwrap(), (1, 4));
        assert_eq!(cyclotomic_factor_shape(1, 5).unwrap(), (1, 1));
        assert_eq!(cyclotomic_factor_shape(24, 5).unwrap(), (2, 4));
        // p | n is rejected.
        assert!(cyclotomic_factor_shape(24, 3).is_err());
        // Cross-check every claimed shape against distinct-degree splitting.
        for n in [1u64, 2, 3, 4, 6, 8, 12, 24] {
            for p in [5u64, 7, 11, 13, 19, 23, 29, 31, 37, 41, 43, 47, 53] {
                if n % p == 0 {
                    continue;
                }
                let (k, count) = cyclotomic_factor_shape(n, p).unwrap();
                let shape = cyclotomic(n).reduce_mod(p).distinct_degree_shape();
                assert_eq!(
                    shape,
                    vec![(k as usize, count as usize)],
                    "n = {n}, p = {p}"
                );
            }
        }
    }

    #[test]
    fn quadratic_sharing_detects_root_of_unity_traces() {
        // d = 1 gives t² + t + 1 = Φ₃, shared for every p ≠ 3.
        assert!(shares_quadratic_factor(1, 3, 7));
        assert!(shares_quadratic_factor(1, 3, 5));
        // Φ₈ mod 7: μ + μ⁻¹ = ±√2 for primitive 8th roots μ, and √2 = ±3
        // mod 7, so exactly d ∈ {3, 4} share a factor.
        for d in 0..7 {
            assert_eq!(shares_quadratic_factor(d, 8, 7), d == 3 || d == 4, "d = {d}");
        }
        // Φ₂₄ mod 5 is a product of quadratics, but their constant terms
        // are primitive 4th roots of unity, never 1: sharing with t²+dt+1
        // needs p ≡ ±1 (mod 24), and 5 is neither.
        assert!((0..5).all(|d| !shares_quadratic_factor(d, 24, 5)));
        // 23 ≡ −1 (mod 24): the inverse-paired factors t² + dt + 1 appear.
        assert!((0..23).any(|d| shares_quadratic_factor(d, 24, 23)));
        // Φ₄ = t² + 1 itself appears at d = 0.
        assert!(shares_quadratic_factor(0, 4, 7));
        assert!(!shares_quadratic_factor(1, 4, 7));
    }
}
