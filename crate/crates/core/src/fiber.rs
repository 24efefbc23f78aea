//! The conic fibration of the surface by z = λ and the linear action on
//! fibers.
//!
//! On the fiber z = λ the composite of the two reflections that fix z acts
//! linearly on (x, y): reflecting y then x is the matrix
//!
//!   A_λ = [[λ² − 1, −λ], [λ, −1]],
//!
//! of determinant 1 and characteristic polynomial t² + d·t + 1 with
//! d = 2 − λ². Point periods on the fiber reduce to the multiplicative
//! order of an eigenvalue in F_p or F_{p²}, except in the degenerate cases
//! λ = 0 (A = −I) and λ = ±2 (A unipotent, order p).

use crate::ff::primes::{distinct_prime_factors, divisors};
use crate::ff::{ExtElement, FieldElement, IntPolynomial, ModPolynomial};
use crate::surface::{Axis, AutWord, ModPoint, SurfacePoint};

/// A vector (x, y) on the fiber z = λ, or any 2-vector over F_p.
pub type FiberVector = (FieldElement, FieldElement);

/// The fiber action A_λ on z = λ.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FiberMatrix {
    lambda: FieldElement,
    entries: [[FieldElement; 2]; 2],
}

/// How A_λ sits in SL₂(F_p), which determines every point period on the
/// fiber at once.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PeriodClass {
    /// λ = 0: A = −I; every nonzero vector has period 2.
    MinusIdentity,
    /// λ = ±2: A is unipotent and nontrivial; vectors off the fixed line
    /// x = λy/2 have period exactly p.
    Unipotent,
    /// Eigenvalues μ, μ⁻¹ of multiplicative order n in F_p or F_{p²};
    /// every nonzero vector has period exactly n.
    Semisimple { eigen_order: u64 },
}

impl PeriodClass {
    /// The order of A_λ in GL₂(F_p).
    pub fn matrix_order(&self, p: u64) -> u64 {
        match self {
            PeriodClass::MinusIdentity => 2,
            PeriodClass::Unipotent => p,
            PeriodClass::Semisimple { eigen_order } => *eigen_order,
        }
    }
}

impl FiberMatrix {
    pub fn for_lambda(lambda: FieldElement) -> Self {
        let one = lambda.one_like();
        let entries = [
            [lambda * lambda - one, -lambda],
            [lambda, -one],
        ];
        Self { lambda, entries }
    }

    pub fn lambda(&self) -> FieldElement {
        self.lambda
    }

    pub fn modulus(&self) -> u64 {
        self.lambda.modulus()
    }

    pub fn entries(&self) -> [[FieldElement; 2]; 2] {
        self.entries
    }

    pub fn det(&self) -> FieldElement {
        let e = &self.entries;
        e[0][0] * e[1][1] - e[0][1] * e[1][0]
    }

    pub fn trace(&self) -> FieldElement {
        self.entries[0][0] + self.entries[1][1]
    }

    /// The middle coefficient d of the characteristic polynomial
    /// t² + d·t + 1, i.e. d = −trace = 2 − λ².
    pub fn char_poly_d(&self) -> FieldElement {
        -self.trace()
    }

    /// The characteristic polynomial over F_p.
    pub fn char_poly(&self) -> ModPolynomial {
        let p = self.modulus();
        ModPolynomial::new(vec![1, self.char_poly_d().value(), 1], p)
    }

    pub fn apply(&self, v: FiberVector) -> FiberVector {
        let e = &self.entries;
        (e[0][0] * v.0 + e[0][1] * v.1, e[1][0] * v.0 + e[1][1] * v.1)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let (a, b) = (&self.entries, &rhs.entries);
        let mut entries = [[self.lambda.zero_like(); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                entries[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self { lambda: self.lambda, entries }
    }

    fn identity_like(&self) -> Self {
        let zero = self.lambda.zero_like();
        let one = self.lambda.one_like();
        Self { lambda: self.lambda, entries: [[one, zero], [zero, one]] }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = self.identity_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Classifies A_λ, computing eigenvalue orders from scratch.
    pub fn classify(&self) -> PeriodClass {
        let p = self.modulus() as u128;
        let group = (p * p - 1) as u64;
        self.classify_with_factors(&distinct_prime_factors(group))
    }

    /// Classification with the distinct prime factors of p² − 1 supplied,
    /// so sweeps over many λ factor only once.
    pub fn classify_with_factors(&self, group_primes: &[u64]) -> PeriodClass {
        let p = self.modulus();
        let lam = self.lambda.value();
        if lam == 0 {
            return PeriodClass::MinusIdentity;
        }
        if lam == 2 || lam == p - 2 {
            return PeriodClass::Unipotent;
        }
        let d = self.char_poly_d();
        let four = FieldElement::reduced(4, p);
        let disc = d * d - four;
        let half = FieldElement::reduced(p.div_ceil(2) as i64, p);
        let eigen_order = match disc.sqrt() {
            Some(r) => {
                // μ = (−d + √disc)/2 lies in F_p.
                let mu = (-d + r) * half;
                let mut order = p - 1;
                for &q in group_primes {
                    while order.is_multiple_of(q) && mu.pow(order / q).value() == 1 {
                        order /= q;
                    }
                }
                order
            }
            None => {
                // √disc = u·√s with u = √(disc/s), s the fixed non-residue.
                let probe = ExtElement::new(0, 1, p).expect("modulus already validated");
                let s = FieldElement::reduced(probe.radicand() as i64, p);
                let u = (disc * s.inverse().expect("s is nonzero"))
                    .sqrt()
                    .expect("quotient of two non-residues is a residue");
                let mu = ExtElement::from_parts(
                    ((-d) * half).value(),
                    (u * half).value(),
                    s.value(),
                    p,
                );
                mu.mult_order_with_factors(group_primes)
                    .expect("eigenvalue is a unit")
            }
        };
        PeriodClass::Semisimple { eigen_order }
    }

    /// Order of A_λ in GL₂(F_p), via the classification.
    pub fn matrix_order(&self) -> u64 {
        self.classify().matrix_order(self.modulus())
    }

    /// Order by brute-force powering, for cross-checks on small p. Panics
    /// if no order is found within p(p² − 1) steps (which cannot happen:
    /// the order divides p(p² − 1)).
    pub fn matrix_order_naive(&self) -> u64 {
        let p = self.modulus() as u128;
        let bound = (p * (p * p - 1)) as u64;
        let mut m = *self;
        for k in 1..=bound {
            if m.is_identity() {
                return k;
            }
            m = m.mul(self);
        }
        panic!("order of A_λ must divide p(p² − 1)");
    }

    /// Exact period of a vector under A_λ: the least k ≥ 1 with A^k v = v.
    /// The period divides the matrix order, so only its divisors are tried.
    pub fn point_period(&self, v: FiberVector) -> u64 {
        self.point_period_with_class(v, &self.classify())
    }

    pub fn point_period_with_class(&self, v: FiberVector, class: &PeriodClass) -> u64 {
        let order = class.matrix_order(self.modulus());
        for k in divisors(order) {
            if self.pow(k).apply(v) == v {
                return k;
            }
        }
        unreachable!("A^order is the identity, so the period divides order")
    }

    /// Period by direct iteration, for cross-checks on small p.
    pub fn point_period_naive(&self, v: FiberVector) -> u64 {
        let p = self.modulus() as u128;
        let bound = (p * (p * p - 1)) as u64;
        let mut w = self.apply(v);
        for k in 1..=bound {
            if w == v {
                return k;
            }
            w = self.apply(w);
        }
        panic!("point period must divide p(p² − 1)")
    }
}

/// The two-letter word whose fiber action is A_λ: reflect y, then x.
pub fn fiber_word() -> AutWord {
    AutWord::new([Axis::X, Axis::Y])
}

/// Lazily yields the (x, y) with x² + y² + λ² = λxy — the fiber z = λ —
/// in ascending x order, solving the quadratic in y for each x. The lazy
/// form lets large-p sweeps stop at the first usable point.
pub fn fiber_points_iter(lambda: FieldElement) -> impl Iterator<Item = FiberVector> {
    let p = lambda.modulus();
    let half = FieldElement::reduced(p.div_ceil(2) as i64, p);
    (0..p).flat_map(move |xv| {
        let x = FieldElement::reduced(xv as i64, p);
        fiber_column(lambda, x, half).into_iter().map(move |y| (x, y))
    })
}

/// All (x, y) on the fiber z = λ, sorted by coordinates.
pub fn fiber_points(lambda: FieldElement) -> Vec<FiberVector> {
    let mut points: Vec<FiberVector> = fiber_points_iter(lambda).collect();
    points.sort_by_key(|(x, y)| (x.value(), y.value()));
    points
}

/// The y-solutions over a fixed x: roots of y² − λx·y + (x² + λ²) = 0.
fn fiber_column(lambda: FieldElement, x: FieldElement, half: FieldElement) -> Vec<FieldElement> {
    let b = lambda * x;
    let c = x * x + lambda * lambda;
    let disc = b * b - (c + c + c + c);
    match disc.sqrt() {
        None => vec![],
        Some(r) if r.is_zero() => vec![b * half],
        Some(r) => vec![(b + r) * half, (b - r) * half],
    }
}

/// The fiber by brute force over all (x, y) pairs.
pub fn fiber_points_naive(lambda: FieldElement) -> Vec<FiberVector> {
    let p = lambda.modulus();
    let mut points = vec![];
    for xv in 0..p {
        for yv in 0..p {
            let x = FieldElement::reduced(xv as i64, p);
            let y = FieldElement::reduced(yv as i64, p);
            if x * x + y * y + lambda * lambda == lambda * x * y {
                points.push((x, y));
            }
        }
    }
    points
}

/// The first fiber point other than the origin, scanning x upward — an O(1)
/// expected-time witness, or `None` when the fiber has no nonzero point.
pub fn first_nonzero_fiber_point(lambda: FieldElement) -> Option<FiberVector> {
    fiber_points_iter(lambda).find(|(x, y)| !(x.is_zero() && y.is_zero()))
}

/// Lifts a fiber vector to a surface point (x, y, λ).
pub fn lift(v: FiberVector, lambda: FieldElement) -> ModPoint {
    SurfacePoint::new(v.0, v.1, lambda).expect("fiber points satisfy the surface equation")
}

/// One row of the classification of fiber actions of finite order with an
/// integral characteristic polynomial: μ ranges over roots of unity whose
/// trace μ + μ⁻¹ is rational, i.e. orders n with φ(n) ≤ 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteOrderRow {
    /// The multiplicative order of the eigenvalue μ.
    pub mu_order: u64,
    /// (t − μ)(t − μ⁻¹) ∈ ℤ[t].
    pub char_poly: IntPolynomial,
    /// Its middle coefficient, d = −(μ + μ⁻¹).
    pub d: i64,
    /// The fiber parameters with 2 − λ² = d, as a token: "0", "+-1",
    /// "+-2", or "+-sqrt(m)".
    pub lambda: String,
}

/// The finite-order classification, derived from cyclotomic polynomials:
/// for φ(n) = 1 the characteristic polynomial is Φ_n², for φ(n) = 2 it is
/// Φ_n itself, and no other order has rational trace.
pub fn finite_order_table() -> Vec<FiniteOrderRow> {
    use crate::ff::cyclotomic;
    use crate::ff::primes::euler_phi;
    let mut rows = vec![];
    for n in 1.. {
        if euler_phi(n) > 2 {
            // φ is eventually > 2; the last qualifying order is 6.
            if n > 6 {
                break;
            }
            continue;
        }
        let phi_n = cyclotomic(n);
        let char_poly = if phi_n.degree() == 1 {
            // μ = μ⁻¹, so the characteristic polynomial is Φ_n squared.
            let c = phi_n.coeff(0);
            IntPolynomial::new(vec![c * c, 2 * c, 1])
        } else {
            phi_n
        };
        assert_eq!(char_poly.coeff(0), 1, "det A_λ = 1 forces constant term 1");
        let d = char_poly.coeff(1);
        rows.push(FiniteOrderRow {
            mu_order: n,
            char_poly,
            d,
            lambda: lambda_token(2 - d),
        });
    }
    rows
}

/// Renders the solutions of λ² = m as "0", "+-k" for square m = k², or
/// "+-sqrt(m)".
fn lambda_token(m: i64) -> String {
    assert!(m >= 0, "λ² is non-negative for every row of the table");
    if m == 0 {
        return "0".to_string();
    }
    let root = (m as f64).sqrt().round() as i64;
    if root * root == m {
        format!("+-{root}")
    } else {
        format!("+-sqrt({m})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: i64, p: u64) -> FieldElement {
        FieldElement::new(v, p).unwrap()
    }

    #[test]
    fn matrix_matches_word_action() {
        // A_λ is the fiber action of the word "12" on z = λ.
        let w = fiber_word();
        assert_eq!(w.to_string(), "12");
        for p in [5u64, 13] {
            for lam in 0..p {
                let lambda = fe(lam as i64, p);
                let a = FiberMatrix::for_lambda(lambda);
                assert_eq!(a.det().value(), 1);
                for v in fiber_points(lambda) {
                    let moved = w.apply(&lift(v, lambda));
                    let (mx, my) = a.apply(v);
                    assert_eq!(moved, lift((mx, my), lambda));
                }
            }
        }
    }

    #[test]
    fn char_poly_coefficient() {
        // d = 2 − λ²: λ = 3 mod 7 gives d = 2 − 9 = −7 ≡ 0.
        let a = FiberMatrix::for_lambda(fe(3, 7));
        assert_eq!(a.char_poly_d().value(), 0);
        assert_eq!(a.char_poly(), ModPolynomial::new(vec![1, 0, 1], 7));
        let a = FiberMatrix::for_lambda(fe(1, 7));
        assert_eq!(a.char_poly_d().value(), 1);
    }

    #[test]
    fn classification_degenerate_cases() {
        assert_eq!(FiberMatrix::for_lambda(fe(0, 13)).classify(), PeriodClass::MinusIdentity);
        assert_eq!(FiberMatrix::for_lambda(fe(2, 13)).classify(), PeriodClass::Unipotent);
        assert_eq!(FiberMatrix::for_lambda(fe(-2, 13)).classify(), PeriodClass::Unipotent);
        // λ = 0 really is −I.
        let a = FiberMatrix::for_lambda(fe(0, 13));
        assert_eq!(a.pow(2), a.identity_like());
        assert_eq!(a.matrix_order(), 2);
        // λ = ±2 has order exactly p.
        assert_eq!(FiberMatrix::for_lambda(fe(2, 13)).matrix_order(), 13);
    }

    #[test]
    fn matrix_order_fast_equals_naive() {
        for p in [5u64, 7, 13] {
            for lam in 0..p {
                let a = FiberMatrix::for_lambda(fe(lam as i64, p));
                assert_eq!(a.matrix_order(), a.matrix_order_naive(), "λ = {lam}, p = {p}");
            }
        }
    }

    #[test]
    fn point_periods_fast_equal_naive() {
        for p in [5u64, 7, 13] {
            for lam in 0..p {
                let lambda = fe(lam as i64, p);
                let a = FiberMatrix::for_lambda(lambda);
                for v in fiber_points(lambda) {
                    if v.0.is_zero() && v.1.is_zero() {
                        continue;
                    }
                    assert_eq!(a.point_period(v), a.point_period_naive(v));
                }
            }
        }
    }

    #[test]
    fn semisimple_fibers_have_uniform_period() {
        // On a semisimple fiber every nonzero point has period equal to the
        // eigenvalue order.
        for p in [13u64, 19] {
            for lam in 1..p {
                if lam == 2 || lam == p - 2 {
                    continue;
                }
                let lambda = fe(lam as i64, p);
                let a = FiberMatrix::for_lambda(lambda);
                let PeriodClass::Semisimple { eigen_order } = a.classify() else {
                    panic!("λ ∉ {{0, ±2}} is semisimple")
                };
                for v in fiber_points(lambda) {
                    assert_eq!(a.point_period(v), eigen_order);
                }
            }
        }
    }

    #[test]
    fn unipotent_fiber_periods_mod_5() {
        // p = 5 ≡ 1 (mod 4): the fibers λ = ±2 are nonempty away from the
        // fixed line, so they carry points of period exactly p = 5.
        let lambda = fe(2, 5);
        let a = FiberMatrix::for_lambda(lambda);
        let pts = fiber_points(lambda);
        assert!(!pts.is_empty());
        for v in pts {
            assert_eq!(a.point_period(v), 5);
        }
        // p = 7 ≡ 3 (mod 4): those fibers are empty.
        assert!(fiber_points(fe(2, 7)).is_empty());
        assert!(first_nonzero_fiber_point(fe(2, 7)).is_none());
    }

    #[test]
    fn fiber_enumeration_fast_equals_naive() {
        for p in [5u64, 7, 11, 13] {
            for lam in 0..p {
                let lambda = fe(lam as i64, p);
                let fast = fiber_points(lambda);
                let mut naive = fiber_points_naive(lambda);
                naive.sort_by_key(|(x, y)| (x.value(), y.value()));
                assert_eq!(fast, naive, "λ = {lam}, p = {p}");
            }
        }
    }

    #[test]
    fn witness_search_agrees_with_enumeration() {
        for p in [5u64, 7, 13] {
            for lam in 0..p {
                let lambda = fe(lam as i64, p);
                let nonzero: Vec<_> = fiber_points(lambda)
                    .into_iter()
                    .filter(|(x, y)| !(x.is_zero() && y.is_zero()))
                    .collect();
                match first_nonzero_fiber_point(lambda) {
                    Some(v) => assert!(nonzero.contains(&v)),
                    None => assert!(nonzero.is_empty()),
                }
            }
        }
    }

    #[test]
    fn finite_order_classification() {
        let rows = finite_order_table();
        let orders: Vec<u64> = rows.iter().map(|r| r.mu_order).collect();
        assert_eq!(orders, vec![1, 2, 3, 4, 6]);
        let ds: Vec<i64> = rows.iter().map(|r| r.d).collect();
        assert_eq!(ds, vec![-2, 2, 1, 0, -1]);
        let lambdas: Vec<&str> = rows.iter().map(|r| r.lambda.as_str()).collect();
        assert_eq!(lambdas, vec!["+-2", "0", "+-1", "+-sqrt(2)", "+-sqrt(3)"]);
        assert_eq!(rows[0].char_poly.to_string(), "t^2 - 2t + 1");
        assert_eq!(rows[3].char_poly.to_string(), "t^2 + 1");
        // Each row is realized: over p = 23, 2 is a QR (23 ≡ ±1 mod 8), so
        // λ = √2 exists and A_λ has order 4.
        let root2 = fe(2, 23).sqrt().unwrap();
        let a = FiberMatrix::for_lambda(root2);
        assert_eq!(a.matrix_order(), 4);
    }
}
