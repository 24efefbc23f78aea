//! Polynomials in one variable t: exact integer polynomials (for cyclotomic
//! computation and characteristic polynomials) and polynomials over F_p (for
//! factor-shape checks).

use std::fmt;

use super::primes::{inverse_mod, mul_mod};

/// A polynomial with integer coefficients, stored ascending: coeffs[i] is
/// the coefficient of t^i. The zero polynomial is an empty list; otherwise
/// the leading coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![1] }
    }

    /// t^n − 1.
    pub fn t_pow_minus_one(n: usize) -> Self {
        let mut coeffs = vec![0i64; n + 1];
        coeffs[0] = -1;
        coeffs[n] = 1;
        Self::new(coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> i64 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Exact division: returns the quotient when rhs divides self with zero
    /// remainder over ℤ, `None` otherwise. Requires rhs monic (which every
    /// cyclotomic polynomial is), so no rational coefficients can appear.
    pub fn div_exact(&self, rhs: &Self) -> Option<Self> {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        assert_eq!(*rhs.coeffs.last().unwrap(), 1, "divisor must be monic");
        if self.is_zero() {
            return Some(Self::zero());
        }
        if self.degree() < rhs.degree() {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let qdeg = self.degree() - rhs.degree();
        let mut quot = vec![0i64; qdeg + 1];
        for k in (0..=qdeg).rev() {
            let c = rem[k + rhs.degree()];
            quot[k] = c;
            for (i, &rc) in rhs.coeffs.iter().enumerate() {
                rem[k + i] -= c * rc;
            }
        }
        if rem.iter().all(|&c| c == 0) {
            Some(Self::new(quot))
        } else {
            None
        }
    }

    /// Evaluation at an integer point, for spot checks.
    pub fn eval(&self, x: i64) -> i64 {
        self.coeffs.iter().rev().fold(0i64, |acc, &c| acc * x + c)
    }

    /// The reduction mod p, for factor-shape work over F_p.
    pub fn reduce_mod(&self, p: u64) -> ModPolynomial {
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| c.rem_euclid(p as i64) as u64)
            .collect();
        ModPolynomial::new(coeffs, p)
    }
}

impl fmt::Display for IntPolynomial {
    /// Renders like "t^2 - 2t + 1", descending powers, omitting zero terms
    /// and unit coefficients.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for i in (0..self.coeffs.len()).rev() {
            let c = self.coeffs[i];
            if c == 0 {
                continue;
            }
            let mag = c.unsigned_abs();
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (i, mag) {
                (0, m) => write!(f, "{m}")?,
                (1, 1) => write!(f, "t")?,
                (1, m) => write!(f, "{m}t")?,
                (_, 1) => write!(f, "t^{i}")?,
                (_, m) => write!(f, "{m}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// A monic-or-zero polynomial over F_p, ascending coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModPolynomial {
    coeffs: Vec<u64>,
    p: u64,
}

impl ModPolynomial {
    pub fn new(mut coeffs: Vec<u64>, p: u64) -> Self {
        for c in &mut coeffs {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Self { coeffs, p }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn monic(&self) -> Self {
        match self.coeffs.last() {
            None | Some(1) => self.clone(),
            Some(&lead) => {
                let inv = inverse_mod(lead, self.p);
                let coeffs = self.coeffs.iter().map(|&c| mul_mod(c, inv, self.p)).collect();
                Self { coeffs, p: self.p }
            }
        }
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.p;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = rhs.coeffs.get(i).copied().unwrap_or(0);
                (a + p - b) % p
            })
            .collect();
        Self::new(coeffs, p)
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self { coeffs: vec![], p: self.p };
        }
        let p = self.p;
        let mut coeffs = vec![0u64; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = (coeffs[i + j] + mul_mod(a, b, p)) % p;
            }
        }
        Self::new(coeffs, p)
    }

    /// Remainder of self divided by rhs.
    pub fn rem(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by the zero polynomial");
        let p = self.p;
        let lead_inv = inverse_mod(*rhs.coeffs.last().unwrap(), p);
        let mut rem = self.coeffs.clone();
        while rem.len() >= rhs.coeffs.len() && !rem.is_empty() {
            let k = rem.len() - rhs.coeffs.len();
            let c = mul_mod(*rem.last().unwrap(), lead_inv, p);
            for (i, &rc) in rhs.coeffs.iter().enumerate() {
                rem[k + i] = (rem[k + i] + p - mul_mod(c, rc, p)) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Self { coeffs: rem, p }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, rhs: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), rhs.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// t^e mod self, by square-and-multiply on polynomials. Used to compute
    /// t^(p^k) mod f for distinct-degree splitting without huge powers.
    pub fn t_powmod(&self, mut e: u64) -> Self {
        assert!(self.degree() >= 1, "modulus polynomial must be nonconstant");
        let p = self.p;
        let mut base = Self::new(vec![0, 1], p).rem(self);
        let mut acc = Self::new(vec![1], p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(self);
            }
            base = base.mul(&base).rem(self);
            e >>= 1;
        }
        acc
    }

    /// Distinct-degree splitting of a squarefree polynomial: returns
    /// (degree d, number of irreducible factors of degree d) pairs, ascending
    /// in d. The degree-d factors of f are gcd(f, t^(p^d) − t) after smaller
    /// degrees are divided out; repeated powering keeps t^(p^d) reduced mod
    /// the shrinking remainder.
    pub fn distinct_degree_shape(&self) -> Vec<(usize, usize)> {
        let p = self.p;
        let mut f = self.monic();
        let mut shape = vec![];
        // h = t^(p^d) mod f, maintained incrementally; starts at d = 0.
        let mut h = ModPolynomial::new(vec![0, 1], p).rem(&f);
        let mut d = 0;
        while f.degree() >= 1 {
            d += 1;
            if 2 * d > f.degree() {
                // What's left is irreducible of full degree.
                shape.push((f.degree(), 1));
                break;
            }
            // h ← h^p mod f
            h = pow_poly(&h, p, &f);
            let t = ModPolynomial::new(vec![0, 1], p);
            let g = f.gcd(&h.sub(&t));
            if g.degree() > 0 {
                shape.push((d, g.degree() / d));
                f = divide_out(&f, &g);
                h = h.rem(&f);
            }
        }
        shape
    }
}

fn pow_poly(base: &ModPolynomial, mut e: u64, modulus: &ModPolynomial) -> ModPolynomial {
    let mut base = base.rem(modulus);
    let mut acc = ModPolynomial::new(vec![1], base.p);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base).rem(modulus);
        }
        base = base.mul(&base).rem(modulus);
        e >>= 1;
    }
    acc
}

/// Exact quotient f / g for monic g dividing f.
fn divide_out(f: &ModPolynomial, g: &ModPolynomial) -> ModPolynomial {
    let p = f.p;
    let mut rem = f.coeffs.clone();
    let qdeg = f.degree() - g.degree();
    let mut quot = vec![0u64; qdeg + 1];
    for k in (0..=qdeg).rev() {
        let c = rem[k + g.degree()];
        quot[k] = c;
        for (i, &gc) in g.coeffs.iter().enumerate() {
            rem[k + i] = (rem[k + i] + p - mul_mod(c, gc, p)) % p;
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "divisor must divide exactly");
    ModPolynomial::new(quot, p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_matches_handwriting() {
        assert_eq!(IntPolynomial::new(vec![1, -2, 1]).to_string(), "t^2 - 2t + 1");
        assert_eq!(IntPolynomial::new(vec![1, 0, 0, 0, 1]).to_string(), "t^4 + 1");
        assert_eq!(IntPolynomial::new(vec![-1, 1]).to_string(), "t - 1");
        assert_eq!(IntPolynomial::new(vec![1, 1]).to_string(), "t + 1");
        assert_eq!(IntPolynomial::new(vec![1, 1, 1]).to_string(), "t^2 + t + 1");
        assert_eq!(IntPolynomial::new(vec![1, 0, -1, 0, 1]).to_string(), "t^4 - t^2 + 1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(IntPolynomial::new(vec![-3]).to_string(), "-3");
    }

    #[test]
    fn exact_division() {
        // t^2 − 1 = (t − 1)(t + 1)
        let f = IntPolynomial::t_pow_minus_one(2);
        let q = f.div_exact(&IntPolynomial::new(vec![-1, 1])).unwrap();
        assert_eq!(q, IntPolynomial::new(vec![1, 1]));
        // t + 1 does not divide t^2 + 1
        assert!(IntPolynomial::new(vec![1, 0, 1])
            .div_exact(&IntPolynomial::new(vec![1, 1]))
            .is_none());
    }

    #[test]
    fn mod_gcd_finds_common_roots() {
        // Over F_7: t² − 2 and t − 3 share the root 3 (3² = 2).
        let f = ModPolynomial::new(vec![5, 0, 1], 7); // t² − 2 ≡ t² + 5
        let g = ModPolynomial::new(vec![4, 1], 7); // t − 3 ≡ t + 4
        let d = f.gcd(&g);
        assert_eq!(d.degree(), 1);
        // t² − 3 shares nothing with t − 3 over F_7 (3² = 2 ≠ 3).
        let h = ModPolynomial::new(vec![4, 0, 1], 7);
        assert_eq!(h.gcd(&g).degree(), 0);
    }

    #[test]
    fn distinct_degree_shapes() {
        // t² + 1 over F_5: −1 is a square (2² = 4), splits into two linears.
        let f = ModPolynomial::new(vec![1, 0, 1], 5);
        assert_eq!(f.distinct_degree_shape(), vec![(1, 2)]);
        // t² + 1 over F_7: −1 is not a square, irreducible.
        let f = ModPolynomial::new(vec![1, 0, 1], 7);
        assert_eq!(f.distinct_degree_shape(), vec![(2, 1)]);
        // t⁴ + 1 over F_7 splits into two irreducible quadratics.
        let f = ModPolynomial::new(vec![1, 0, 0, 0, 1], 7);
        assert_eq!(f.distinct_degree_shape(), vec![(2, 2)]);
        // t⁴ − t² + 1 over F_5: 5 has order 2 mod 12, so two quadratics.
        let f = ModPolynomial::new(vec![1, 0, 4, 0, 1], 5);
        assert_eq!(f.distinct_degree_shape(), vec![(2, 2)]);
    }

    #[test]
    fn reduce_mod_wraps_negatives() {
        let f = IntPolynomial::new(vec![-1, -2, 1]).reduce_mod(5);
        assert_eq!(f, ModPolynomial::new(vec![4, 3, 1], 5));
    }
}
