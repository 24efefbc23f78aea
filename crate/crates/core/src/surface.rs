//! The affine surface x² + y² + z² = xyz: its points over F_p and over ℚ,
//! the three coordinate reflections, words in them, and the coordinate
//! permutations that conjugate one word into another.

use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ff::{FfError, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("point ({x}, {y}, {z}) does not satisfy x^2 + y^2 + z^2 = xyz")]
    NotOnSurface { x: String, y: String, z: String },
    #[error("cannot parse point from {0:?}: expected \"x,y,z\"")]
    PointSyntax(String),
    #[error("cannot parse word from {0:?}: expected a string of digits 1, 2, 3")]
    WordSyntax(String),
    #[error("{0:?} is not a permutation of {{0, 1, 2}}")]
    NotAPermutation([usize; 3]),
    #[error(transparent)]
    Field(#[from] FfError),
}

/// Coordinate rings the surface is considered over. The `*_like` witnesses
/// exist because a zero of F_p must carry p, which is runtime data.
pub trait Coord:
    Clone + PartialEq + fmt::Display + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
}

impl Coord for FieldElement {
    fn zero_like(&self) -> Self {
        FieldElement::zero_like(self)
    }
    fn one_like(&self) -> Self {
        FieldElement::one_like(self)
    }
}

impl Coord for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
}

/// A point on x² + y² + z² = xyz; construction validates membership.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurfacePoint<K> {
    x: K,
    y: K,
    z: K,
}

pub type ModPoint = SurfacePoint<FieldElement>;
pub type RatPoint = SurfacePoint<BigRational>;

impl<K: Coord> SurfacePoint<K> {
    pub fn new(x: K, y: K, z: K) -> Result<Self, SurfaceError> {
        let lhs = x.clone() * x.clone() + y.clone() * y.clone() + z.clone() * z.clone();
        let rhs = x.clone() * y.clone() * z.clone();
        if lhs == rhs {
            Ok(Self { x, y, z })
        } else {
            Err(SurfaceError::NotOnSurface {
                x: x.to_string(),
                y: y.to_string(),
                z: z.to_string(),
            })
        }
    }

    /// (0, 0, 0) in the same ring as the witness element.
    pub fn origin_like(witness: &K) -> Self {
        let zero = witness.zero_like();
        Self { x: zero.clone(), y: zero.clone(), z: zero }
    }

    pub fn x(&self) -> &K {
        &self.x
    }

    pub fn y(&self) -> &K {
        &self.y
    }

    pub fn z(&self) -> &K {
        &self.z
    }

    pub fn coords(&self) -> [&K; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn is_origin(&self) -> bool {
        let zero = self.x.zero_like();
        self.x == zero && self.y == zero && self.z == zero
    }

    /// The reflection along one coordinate: the surface equation is a monic
    /// quadratic in each variable, and the reflection swaps its two roots.
    /// Along x it sends (x, y, z) to (yz − x, y, z); the other two likewise.
    pub fn reflect(&self, axis: Axis) -> Self {
        let Self { x, y, z } = self;
        match axis {
            Axis::X => Self {
                x: y.clone() * z.clone() - x.clone(),
                y: y.clone(),
                z: z.clone(),
            },
            Axis::Y => Self {
                x: x.clone(),
                y: x.clone() * z.clone() - y.clone(),
                z: z.clone(),
            },
            Axis::Z => Self {
                x: x.clone(),
                y: y.clone(),
                z: x.clone() * y.clone() - z.clone(),
            },
        }
    }
}

impl<K: Coord> fmt::Display for SurfacePoint<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl ModPoint {
    /// Parses "x,y,z" (optionally parenthesized, whitespace tolerated) as a
    /// point mod p, validating both the modulus and surface membership.
    pub fn parse(input: &str, p: u64) -> Result<Self, SurfaceError> {
        let trimmed = input.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<i64> = trimmed
            .split(',')
            .map(|s| s.trim().parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| SurfaceError::PointSyntax(input.to_string()))?;
        let [x, y, z]: [i64; 3] = parts
            .try_into()
            .map_err(|_| SurfaceError::PointSyntax(input.to_string()))?;
        let x = FieldElement::new(x, p)?;
        let y = FieldElement::new(y, p)?;
        let z = FieldElement::new(z, p)?;
        Self::new(x, y, z)
    }

    pub fn modulus(&self) -> u64 {
        self.x.modulus()
    }
}

impl RatPoint {
    /// Lifts a solution of the classical equation a² + b² + c² = 3abc onto
    /// this surface via (a, b, c) ↦ (3a, 3b, 3c).
    pub fn from_classical(a: BigRational, b: BigRational, c: BigRational) -> Result<Self, SurfaceError> {
        let three = BigRational::from_integer(BigInt::from(3));
        Self::new(three.clone() * a, three.clone() * b, three * c)
    }

    /// The inverse scaling back to the classical equation.
    pub fn to_classical(&self) -> (BigRational, BigRational, BigRational) {
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        (
            third.clone() * self.x.clone(),
            third.clone() * self.y.clone(),
            third * self.z.clone(),
        )
    }
}

/// Which coordinate a reflection moves. The digit names 1, 2, 3 match the
/// letters used in word notation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    pub const ALL: [Axis; 3] = [Axis::X, Axis::Y, Axis::Z];

    pub fn index(self) -> usize {
        match self {
            Axis::X => 0,
            Axis::Y => 1,
            Axis::Z => 2,
        }
    }

    pub fn from_index(i: usize) -> Self {
        Self::ALL[i]
    }

    pub fn digit(self) -> char {
        match self {
            Axis::X => '1',
            Axis::Y => '2',
            Axis::Z => '3',
        }
    }

    pub fn from_digit(c: char) -> Option<Self> {
        match c {
            '1' => Some(Axis::X),
            '2' => Some(Axis::Y),
            '3' => Some(Axis::Z),
            _ => None,
        }
    }
}

/// A word in the three reflections, written as a digit string like "12".
/// Since each reflection is an involution, adjacent repeated letters cancel;
/// construction keeps words freely reduced. Application order follows
/// function composition: the rightmost letter acts first, so "12" sends P
/// to φ₁(φ₂(P)).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AutWord {
    letters: Vec<Axis>,
}

impl AutWord {
    pub fn new(letters: impl IntoIterator<Item = Axis>) -> Self {
        let mut reduced: Vec<Axis> = vec![];
        for a in letters {
            if reduced.last() == Some(&a) {
                reduced.pop();
            } else {
                reduced.push(a);
            }
        }
        Self { letters: reduced }
    }

    pub fn identity() -> Self {
        Self { letters: vec![] }
    }

    pub fn letters(&self) -> &[Axis] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// The empty word — synonym for [`is_empty`](Self::is_empty) in the
    /// group-theoretic reading.
    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    /// Composition self ∘ rhs (rhs acts first).
    pub fn compose(&self, rhs: &Self) -> Self {
        Self::new(self.letters.iter().chain(&rhs.letters).copied())
    }

    /// The inverse word: letters reversed, each being its own inverse.
    pub fn inverse(&self) -> Self {
        Self {
            letters: self.letters.iter().rev().copied().collect(),
        }
    }

    /// Applies the word to a point, rightmost letter first.
    pub fn apply<K: Coord>(&self, point: &SurfacePoint<K>) -> SurfacePoint<K> {
        self.letters
            .iter()
            .rev()
            .fold(point.clone(), |q, &a| q.reflect(a))
    }

    /// The word conjugated by a coordinate permutation σ: each letter i is
    /// relabeled to σ(i). As maps, relabel(w, σ) = σ⁻¹ ∘ w ∘ σ.
    pub fn relabel(&self, sigma: &CoordPermutation) -> Self {
        Self {
            letters: self
                .letters
                .iter()
                .map(|&a| sigma.image_of_axis(a))
                .collect(),
        }
    }
}

impl FromStr for AutWord {
    type Err = SurfaceError;

    /// Accepts a digit string like "121"; "e" or the empty string is the
    /// identity.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Self::identity());
        }
        let letters: Option<Vec<Axis>> = s.chars().map(Axis::from_digit).collect();
        letters
            .map(Self::new)
            .ok_or_else(|| SurfaceError::WordSyntax(s.to_string()))
    }
}

impl fmt::Display for AutWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "e");
        }
        for a in &self.letters {
            write!(f, "{}", a.digit())?;
        }
        Ok(())
    }
}

/// A permutation σ of the three coordinates, acting on points by
/// (σP)_j = P_{σ(j)}. Conjugating a reflection by σ gives another
/// reflection: σ⁻¹ ∘ φᵢ ∘ σ = φ_{σ(i)}.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CoordPermutation {
    /// image[j] = σ(j), 0-based.
    image: [usize; 3],
}

impl CoordPermutation {
    pub fn new(image: [usize; 3]) -> Result<Self, SurfaceError> {
        let mut seen = [false; 3];
        for &j in &image {
            if j > 2 || seen[j] {
                return Err(SurfaceError::NotAPermutation(image));
            }
            seen[j] = true;
        }
        Ok(Self { image })
    }

    pub fn identity() -> Self {
        Self { image: [0, 1, 2] }
    }

    /// All six elements of S₃.
    pub fn all() -> [Self; 6] {
        [
            Self { image: [0, 1, 2] },
            Self { image: [0, 2, 1] },
            Self { image: [1, 0, 2] },
            Self { image: [1, 2, 0] },
            Self { image: [2, 0, 1] },
            Self { image: [2, 1, 0] },
        ]
    }

    pub fn inverse(&self) -> Self {
        let mut image = [0; 3];
        for (j, &sj) in self.image.iter().enumerate() {
            image[sj] = j;
        }
        Self { image }
    }

    pub fn image_of_axis(&self, a: Axis) -> Axis {
        Axis::from_index(self.image[a.index()])
    }

    /// (σP)_j = P_{σ(j)}.
    pub fn apply<K: Coord>(&self, p: &SurfacePoint<K>) -> SurfacePoint<K> {
        let c = p.coords();
        SurfacePoint {
            x: c[self.image[0]].clone(),
            y: c[self.image[1]].clone(),
            z: c[self.image[2]].clone(),
        }
    }
}

/// Searches S₃ for a σ with relabel(word, σ) = target, i.e. a coordinate
/// change conjugating one word into the other.
pub fn conjugating_permutation(word: &AutWord, target: &AutWord) -> Option<CoordPermutation> {
    CoordPermutation::all()
        .into_iter()
        .find(|sigma| word.relabel(sigma) == *target)
}

/// All F_p-points of the surface, sorted by coordinates. Works fiber by
/// fiber: on z = λ the equation is y² − λx·y + (x² + λ²) = 0, a quadratic
/// in y solved by discriminant and square root — O(p²) field operations.
pub fn enumerate_points(p: u64) -> Result<Vec<ModPoint>, FfError> {
    // Validate the modulus once up front.
    let _ = FieldElement::new(0, p)?;
    let mut points = vec![];
    let half = p.div_ceil(2); // inverse of 2 mod p
    for z in 0..p {
        for x in 0..p {
            let fx = FieldElement::reduced(x as i64, p);
            let fz = FieldElement::reduced(z as i64, p);
            let b = fx * fz; // y² − b·y + c = 0
            let c = fx * fx + fz * fz;
            let disc = b * b - (c + c + c + c);
            match disc.sqrt() {
                None => {}
                Some(r) if r.is_zero() => {
                    let y = b * FieldElement::reduced(half as i64, p);
                    points.push(SurfacePoint { x: fx, y, z: fz });
                }
                Some(r) => {
                    let h = FieldElement::reduced(half as i64, p);
                    points.push(SurfacePoint { x: fx, y: (b + r) * h, z: fz });
                    points.push(SurfacePoint { x: fx, y: (b - r) * h, z: fz });
                }
            }
        }
    }
    points.sort_by_key(|pt| (pt.x.value(), pt.y.value(), pt.z.value()));
    Ok(points)
}

/// The same set by brute force: every (x, y, z) triple tested against the
/// equation. Cubic in p — a reference implementation for cross-checking.
pub fn enumerate_points_naive(p: u64) -> Result<Vec<ModPoint>, FfError> {
    let _ = FieldElement::new(0, p)?;
    let mut points = vec![];
    for x in 0..p {
        for y in 0..p {
            for z in 0..p {
                let (xu, yu, zu) = (x as u128, y as u128, z as u128);
                let lhs = (xu * xu + yu * yu + zu * zu) % p as u128;
                let rhs = xu * yu % p as u128 * zu % p as u128;
                if lhs == rhs {
                    points.push(SurfacePoint {
                        x: FieldElement::reduced(x as i64, p),
                        y: FieldElement::reduced(y as i64, p),
                        z: FieldElement::reduced(z as i64, p),
                    });
                }
            }
        }
    }
    points.sort_by_key(|pt| (pt.x.value(), pt.y.value(), pt.z.value()));
    Ok(points)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(v: i64, p: u64) -> FieldElement {
        FieldElement::new(v, p).unwrap()
    }

    fn point(x: i64, y: i64, z: i64, p: u64) -> ModPoint {
        ModPoint::new(fe(x, p), fe(y, p), fe(z, p)).unwrap()
    }

    #[test]
    fn membership_is_enforced() {
        assert!(point(0, 0, 0, 5).is_origin());
        // 1 + 4 + 0 = 5 ≡ 0 = 1·2·0 mod 5.
        let _ = point(1, 2, 0, 5);
        // 1 + 16 + 1 = 18 ≡ 4 = 1·4·1 mod 7.
        let _ = point(1, 4, 1, 7);
        assert!(matches!(
            ModPoint::new(fe(1, 5), fe(1, 5), fe(1, 5)),
            Err(SurfaceError::NotOnSurface { .. })
        ));
    }

    #[test]
    fn reflections_are_involutions() {
        for pt in enumerate_points(11).unwrap() {
            for a in Axis::ALL {
                let image = pt.reflect(a);
                // Images stay on the surface…
                let c = image.coords();
                let _ = ModPoint::new(*c[0], *c[1], *c[2]).unwrap();
                // …and reflecting twice returns.
                assert_eq!(image.reflect(a), pt);
            }
        }
    }

    #[test]
    fn word_application_order_is_rightmost_first() {
        let w: AutWord = "12".parse().unwrap();
        let p = point(1, 2, 0, 5);
        assert_eq!(w.apply(&p), p.reflect(Axis::Y).reflect(Axis::X));
    }

    #[test]
    fn words_reduce_freely() {
        let parse = |s: &str| s.parse::<AutWord>().unwrap();
        assert!(parse("11").is_identity());
        assert!(parse("1221").is_identity());
        assert_eq!(parse("12221"), parse("121"));
        assert_eq!(parse("e"), AutWord::identity());
        assert_eq!(parse("121").to_string(), "121");
        assert_eq!(AutWord::identity().to_string(), "e");
        assert!("124".parse::<AutWord>().is_err());
        // Composition with the inverse cancels completely.
        let w = parse("12132");
        assert!(w.compose(&w.inverse()).is_identity());
        assert_eq!(w.inverse().to_string(), "23121");
    }

    #[test]
    fn composition_matches_application() {
        let u: AutWord = "12".parse().unwrap();
        let v: AutWord = "31".parse().unwrap();
        let p = point(1, 4, 1, 7);
        assert_eq!(u.compose(&v).apply(&p), u.apply(&v.apply(&p)));
    }

    #[test]
    fn conjugation_by_coordinate_permutations() {
        let w: AutWord = "12".parse().unwrap();
        for sigma in CoordPermutation::all() {
            let relabeled = w.relabel(&sigma);
            // relabel(w, σ) = σ⁻¹ ∘ w ∘ σ pointwise, on every surface point.
            for p in enumerate_points(13).unwrap() {
                assert_eq!(
                    relabeled.apply(&p),
                    sigma.inverse().apply(&w.apply(&sigma.apply(&p)))
                );
            }
        }
        // The swap (x ↔ y) turns "12" into "21".
        let swap = CoordPermutation::new([1, 0, 2]).unwrap();
        assert_eq!(w.relabel(&swap).to_string(), "21");
        assert_eq!(
            conjugating_permutation(&w, &"21".parse().unwrap()),
            Some(swap)
        );
        // No coordinate change turns "12" into "121".
        assert!(conjugating_permutation(&w, &"121".parse().unwrap()).is_none());
    }

    #[test]
    fn permutations_validate_and_invert() {
        assert!(CoordPermutation::new([0, 0, 1]).is_err());
        for sigma in CoordPermutation::all() {
            let p = point(1, 2, 0, 5);
            assert_eq!(sigma.inverse().apply(&sigma.apply(&p)), p);
        }
        // Concrete action: σ = (0→1, 1→2, 2→0) reads coordinates cyclically.
        let rot = CoordPermutation::new([1, 2, 0]).unwrap();
        let p = point(1, 2, 0, 5);
        assert_eq!(rot.apply(&p), point(2, 0, 1, 5));
    }

    #[test]
    fn enumeration_fast_equals_naive() {
        for p in [5u64, 7, 11, 13] {
            let fast = enumerate_points(p).unwrap();
            let naive = enumerate_points_naive(p).unwrap();
            assert_eq!(fast, naive, "p = {p}");
            // No duplicates, origin included.
            let mut dedup = fast.clone();
            dedup.dedup();
            assert_eq!(dedup.len(), fast.len());
            assert!(fast.iter().any(|pt| pt.is_origin()));
        }
    }

    #[test]
    fn classical_triples_scale_onto_surface() {
        let rat = |n: i64| BigRational::from_integer(BigInt::from(n));
        // (1, 2, 5) solves a² + b² + c² = 3abc; its scaling (3, 6, 15)
        // lands on this surface.
        let p = RatPoint::from_classical(rat(1), rat(2), rat(5)).unwrap();
        assert_eq!(p.to_string(), "(3, 6, 15)");
        assert_eq!(p.to_classical(), (rat(1), rat(2), rat(5)));
        // Reflections generate new classical solutions: reflecting (3,3,3)
        // along x gives (6, 3, 3), i.e. the classical (2, 1, 1).
        let base = RatPoint::from_classical(rat(1), rat(1), rat(1)).unwrap();
        let next = base.reflect(Axis::X);
        assert_eq!(next.to_classical(), (rat(2), rat(1), rat(1)));
        // Non-solutions are rejected: 1 + 1 + 9 ≠ 9.
        assert!(RatPoint::from_classical(rat(1), rat(1), rat(3)).is_err());
    }

    #[test]
    fn point_parsing_round_trips() {
        let p = ModPoint::parse("(1, 2, 0)", 5).unwrap();
        assert_eq!(p, point(1, 2, 0, 5));
        assert_eq!(ModPoint::parse("1,2,0", 5).unwrap(), p);
        assert_eq!(p.to_string(), "(1, 2, 0)");
        assert_eq!(p.modulus(), 5);
        // Negative inputs reduce mod p before the membership check.
        assert_eq!(ModPoint::parse("-4,2,0", 5).unwrap(), p);
        assert!(ModPoint::parse("1,2", 5).is_err());
        assert!(ModPoint::parse("1,1,1", 5).is_err());
        assert!(ModPoint::parse("1,2,0", 6).is_err());
    }
}
