//! The invariant ω(p) = smallest prime factor of (p² − 1)/24, and a
//! constructive search for primes p ≡ 19 (mod 24) with ω(p) > k.
//!
//! For any prime p ≥ 5, p² − 1 is divisible by 24, and on fibers of the
//! surface the available point periods divide p² − 1; ω(p) is therefore a
//! lower bound on every period not forced into the exceptional fibers. The
//! search walks an arithmetic progression chosen by CRT so that the first
//! prime it meets provably has ω(p) > k:
//!
//! - p ≡ 43 (mod 72) pins p ≡ 19 (mod 24), 2²∥p + 1, and 3∥p² − 1, so
//!   the quotient (p² − 1)/24 is coprime to 6;
//! - p ≡ 2 (mod ℓ) for each prime 3 < ℓ ≤ k keeps ℓ out of p² − 1.

use thiserror::Error;

use crate::ff::primes::{crt_pair, factorize, gcd, is_prime, primes_in};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("p must be a prime ≥ 5, got {0}")]
    BadPrime(u64),
    #[error("k must lie in 2..=40, got {0}")]
    BadThreshold(u64),
    #[error("residue {0} mod 72 must be coprime to 72")]
    BadResidue(u64),
    #[error("no prime with the target invariant within {0} progression steps")]
    StepLimit(u64),
}

/// ω(p): the smallest prime factor of (p² − 1)/24, or `Unbounded` when the
/// quotient is 1 and every period bound derived from it is vacuous.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Omega {
    Finite(u64),
    Unbounded,
}

impl Omega {
    pub fn exceeds(&self, k: u64) -> bool {
        match self {
            Omega::Finite(v) => *v > k,
            Omega::Unbounded => true,
        }
    }
}

/// `Unbounded` sorts above every finite value.
impl Ord for Omega {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (self, other) {
            (Omega::Finite(a), Omega::Finite(b)) => a.cmp(b),
            (Omega::Finite(_), Omega::Unbounded) => std::cmp::Ordering::Less,
            (Omega::Unbounded, Omega::Finite(_)) => std::cmp::Ordering::Greater,
            (Omega::Unbounded, Omega::Unbounded) => std::cmp::Ordering::Equal,
        }
    }
}

impl PartialOrd for Omega {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl std::fmt::Display for Omega {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Omega::Finite(v) => write!(f, "{v}"),
            Omega::Unbounded => write!(f, "UNBOUNDED"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OmegaRecord {
    pub p: u64,
    /// (p² − 1)/24, exact — p² − 1 itself can overflow u64.
    pub quotient: u128,
    pub omega: Omega,
}

/// Computes ω(p) for a prime p ≥ 5. The factors of p² − 1 are found by
/// factoring p − 1 and p + 1 separately, which stay within u64.
pub fn omega(p: u64) -> Result<OmegaRecord, SearchError> {
    if p < 5 || !is_prime(p) {
        return Err(SearchError::BadPrime(p));
    }
    let quotient = (p as u128 + 1) * (p as u128 - 1) / 24;
    let mut factors = factorize(p - 1);
    factors.extend(factorize(p + 1));
    factors.sort_unstable();
    // Strip the 2³·3 = 24 that every p ≥ 5 contributes.
    strip(&mut factors, 2, 3);
    strip(&mut factors, 3, 1);
    let omega = match factors.first() {
        Some(&q) => Omega::Finite(q),
        None => Omega::Unbounded,
    };
    Ok(OmegaRecord { p, quotient, omega })
}

fn strip(sorted: &mut Vec<u64>, value: u64, count: usize) {
    for _ in 0..count {
        let pos = sorted
            .iter()
            .position(|&f| f == value)
            .expect("24 divides p² − 1 for every prime p ≥ 5");
        sorted.remove(pos);
    }
}

/// Primes ≡ 19 (mod 24) in [lo, hi], ascending.
pub fn primes_19_mod_24(lo: u64, hi: u64) -> Vec<u64> {
    primes_in(lo, hi).into_iter().filter(|p| p % 24 == 19).collect()
}

/// One exhibited prime with ω(p) > k, plus the data needed to re-check the
/// claim without redoing the search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeSearchResult {
    pub record: OmegaRecord,
    /// The progression p ≡ residue (mod modulus) that was walked.
    pub residue: u64,
    pub modulus: u64,
    /// Candidates tested, the found prime included.
    pub steps: u64,
    /// ∏ primes ≤ k: coprimality of the quotient to this product is the
    /// checkable certificate that ω(p) > k.
    pub small_prime_product: u64,
    pub quotient_gcd: u64,
}

impl PrimeSearchResult {
    pub fn p(&self) -> u64 {
        self.record.p
    }

    /// The certified claim: p ≡ 19 (mod 24) and no prime ≤ k divides the
    /// quotient.
    pub fn certifies(&self, k: u64) -> bool {
        self.p() % 24 == 19 && self.quotient_gcd == 1 && self.record.omega.exceeds(k)
    }
}

const STEP_LIMIT: u64 = 1_000_000;

/// Finds the first prime in the CRT progression whose invariant exceeds k,
/// for k in 2..=40. `residue_mod_72` selects the class mod 72 (43 is the
/// one that lands in 19 mod 24; other coprime residues are accepted for
/// comparison runs and their results are reported honestly).
pub fn find_prime_omega_gt(k: u64, residue_mod_72: u64) -> Result<PrimeSearchResult, SearchError> {
    if !(2..=40).contains(&k) {
        return Err(SearchError::BadThreshold(k));
    }
    if gcd(residue_mod_72 % 72, 72) != 1 {
        return Err(SearchError::BadResidue(residue_mod_72));
    }
    // q = ∏ primes in (3, k]; the walk runs through p ≡ 2 (mod q).
    let q: u64 = primes_in(5, k).iter().product();
    let modulus = 72 * q;
    let residue = crt_pair(residue_mod_72 % 72, 72, 2 % q, q);
    let product_small: u64 = primes_in(2, k).iter().product();
    let mut candidate = residue;
    for step in 1..=STEP_LIMIT {
        if is_prime(candidate) {
            let record = omega(candidate)?;
            let quotient_gcd = gcd_u128(record.quotient, product_small);
            return Ok(PrimeSearchResult {
                record,
                residue,
                modulus,
                steps: step,
                small_prime_product: product_small,
                quotient_gcd,
            });
        }
        candidate += modulus;
    }
    Err(SearchError::StepLimit(STEP_LIMIT))
}

fn gcd_u128(mut a: u128, b: u64) -> u64 {
    let mut b = b as u128;
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as u64
}
