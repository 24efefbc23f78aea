//! Integer-level number theory: deterministic primality, desk-scale
//! factorization, sieves, divisors, and CRT.

/// (a * b) mod m without overflow.
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// a^e mod m by binary exponentiation.
pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Deterministic Miller–Rabin; the base set decides correctly for all n < 3.3·10¹⁸.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for q in BASES {
        if n.is_multiple_of(q) {
            return n == q;
        }
    }
    // n - 1 = 2^s * d with d odd
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

const TRIAL_LIMIT: u64 = 1_000_000;

/// Prime factors of n with multiplicity, ascending. Trial division up to 10⁶,
/// then Pollard's rho on any remaining composite cofactor.
pub fn factorize(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut factors = Vec::new();
    for d in std::iter::once(2).chain((3..).step_by(2)) {
        if d > TRIAL_LIMIT || d * d > n {
            break;
        }
        while n.is_multiple_of(d) {
            factors.push(d);
            n /= d;
        }
    }
    if n > 1 {
        split_cofactor(n, &mut factors);
        factors.sort_unstable();
    }
    factors
}

/// Splits a cofactor with no prime factor below the trial-division limit.
fn split_cofactor(n: u64, out: &mut Vec<u64>) {
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = pollard_rho(n);
    split_cofactor(d, out);
    split_cofactor(n / d, out);
}

/// Brent-cycle Pollard rho. Deterministic: walks offsets c = 1, 2, … until a
/// nontrivial divisor appears (n must be composite, odd, and nonsquarefree-safe).
fn pollard_rho(n: u64) -> u64 {
    debug_assert!(!is_prime(n) && n > 1);
    if n.is_multiple_of(2) {
        return 2;
    }
    for c in 1.. {
        let f = |x: u64| (mul_mod(x, x, n) + c) % n;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
    }
    unreachable!("pollard rho exhausted offsets")
}

/// Distinct primes of n, ascending.
pub fn distinct_prime_factors(n: u64) -> Vec<u64> {
    let mut fs = factorize(n);
    fs.dedup();
    fs
}

/// All divisors of n, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut ds = vec![1u64];
    for q in distinct_prime_factors(n) {
        let mut count = 0;
        let mut m = n;
        while m.is_multiple_of(q) {
            m /= q;
            count += 1;
        }
        let prev = ds.clone();
        let mut power = 1u64;
        for _ in 0..count {
            power *= q;
            ds.extend(prev.iter().map(|d| d * power));
        }
    }
    ds.sort_unstable();
    ds
}

/// Euler's totient via factorization.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for q in distinct_prime_factors(n) {
        phi = phi / q * (q - 1);
    }
    phi
}

/// Multiplicative order of a modulo n (gcd(a,n)=1): descend from φ(n) through
/// its prime factors.
pub fn order_mod(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 1;
    }
    debug_assert_eq!(gcd(a % n, n), 1, "order_mod needs gcd(a,n)=1");
    let mut k = euler_phi(n);
    for q in distinct_prime_factors(k) {
        while k.is_multiple_of(q) && pow_mod(a, k / q, n) == 1 {
            k /= q;
        }
    }
    k
}

/// Primes in [lo, hi], ascending, by Eratosthenes over the closed interval.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    if hi < lo || hi < 2 {
        return Vec::new();
    }
    let hi_us = hi as usize;
    let mut composite = vec![false; hi_us + 1];
    let mut out = Vec::new();
    for n in 2..=hi_us {
        if !composite[n] {
            if n as u64 >= lo {
                out.push(n as u64);
            }
            let mut m = n * n;
            while m <= hi_us {
                composite[m] = true;
                m += n;
            }
        }
    }
    out
}

/// Solves x ≡ a (mod m), x ≡ b (mod n) for coprime m, n; returns x mod m·n.
pub fn crt_pair(a: u64, m: u64, b: u64, n: u64) -> u64 {
    debug_assert_eq!(gcd(m, n), 1);
    if n == 1 {
        return a % m;
    }
    // x = a + m * t where t ≡ (b - a) * m⁻¹ (mod n)
    let m_inv = inverse_mod(m % n, n);
    let diff = ((b as i128 - a as i128).rem_euclid(n as i128)) as u64;
    let t = mul_mod(diff, m_inv, n);
    a + m * t
}

/// a⁻¹ mod n for gcd(a,n)=1, by extended Euclid.
pub fn inverse_mod(a: u64, n: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "inverse_mod needs gcd(a,n)=1");
    old_s.rem_euclid(n as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_miller_rabin() {
        assert!(is_prime(2) && is_prime(3) && is_prime(547) && is_prime(745_747));
        // 187 = 11 · 17 is the composite the progression walk steps over at k=5.
        assert!(!is_prime(1) && !is_prime(187) && !is_prime(299_208));
        // Carmichael number.
        assert!(!is_prime(561));
        assert!(is_prime(2_147_483_647)); // 2^31 - 1
    }

    #[test]
    fn factorize_matches_hand_values() {
        assert_eq!(factorize(1), Vec::<u64>::new());
        assert_eq!(factorize(360), vec![2, 2, 2, 3, 3, 5]);
        // 299208 = 547² − 1 = 2³ · 3 · 7 · 13 · 137
        assert_eq!(factorize(299_208), vec![2, 2, 2, 3, 7, 13, 137]);
        // Cofactor beyond trial range exercises rho: two 9-digit primes.
        let n = 1_000_000_007u64 * 998_244_353;
        assert_eq!(factorize(n), vec![998_244_353, 1_000_000_007]);
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(24), vec![1, 2, 3, 4, 6, 8, 12, 24]);
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(24), 8);
    }

    #[test]
    fn order_mod_small() {
        // 7² = 49 ≡ 1 (mod 8)
        assert_eq!(order_mod(7, 8), 2);
        // 13 ≡ 1 (mod 12)
        assert_eq!(order_mod(13, 12), 1);
        assert_eq!(order_mod(2, 7), 3);
    }

    #[test]
    fn primes_in_range() {
        assert_eq!(primes_in(5, 20), vec![5, 7, 11, 13, 17, 19]);
        assert_eq!(primes_in(90, 96), Vec::<u64>::new());
        assert_eq!(primes_in(2, 2), vec![2]);
    }

    #[test]
    fn crt_reconstructs_lemma3_class() {
        // x ≡ 43 (mod 72), x ≡ 2 (mod 5) → 187 (mod 360)
        assert_eq!(crt_pair(43, 72, 2, 5), 187);
        assert_eq!(crt_pair(43, 72, 0, 1), 43);
    }
}
