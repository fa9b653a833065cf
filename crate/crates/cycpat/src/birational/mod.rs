//! The birational map `K = I∘J` on the color space of a stable pattern:
//! exact evaluation, degree growth along a random line, recurrence fitting,
//! and the collineation data of the even-`q` families.

mod degree;
mod exact;
mod families;
pub mod poly;
mod recurrence;

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::closed_forms::ClosedFormError;
use crate::patterns::{PatternError, Subject};

pub use degree::{degree_sequence, degree_sequence_with, DegreeOptions, MapKind, MAX_PRIME_BITS, MIN_PRIME_BITS};
pub use exact::{apply_i, apply_j, apply_k, apply_k_inverse, circulant_inverse_row, delta_invariant, random_point};
pub use families::{family_map_data, FamilyMapData, QuadraticForm};
pub use recurrence::{fit_recurrence, known_complexity, largest_root, poly_divides, DegreeSequence};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BirationalError {
    #[error("expected {expected} color values, got {got}")]
    WrongArity { expected: usize, got: usize },
    #[error("all color values are zero")]
    ZeroPoint,
    #[error("color {index} is zero, the entrywise inverse is undefined")]
    ZeroColor { index: usize },
    #[error("the cyclic matrix is singular")]
    Singular,
    #[error("the inverse's first row breaks the pattern at position {position}")]
    PatternViolation { position: usize },
    #[error("pole of the invariant")]
    Pole,
    #[error("{0} is not stable")]
    Unstable(String),
    #[error("{0} is not self-dual, the half step is undefined")]
    NotSelfDual(String),
    #[error("invalid option: {0}")]
    InvalidOption(String),
    #[error("the random line is degenerate for seed {seed}")]
    SingularLine { seed: u64 },
    #[error("degree sequences disagree between primes {p1} and {p2}")]
    UnluckyPrime { p1: u64, p2: u64 },
    #[error("need at least {need} degrees, got {got}")]
    TooFewTerms { need: usize, got: usize },
    #[error("no linear recurrence fits the degrees")]
    NoRecurrence,
    #[error("{0} has no collineation data")]
    NoFamilyData(String),
    #[error("no candidate composition reproduces K for {family} at q={q}")]
    NoCompositionMatches { family: String, q: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Family(#[from] ClosedFormError),
}

/// A point of the projective color space of a (signed-)pattern: one value per class.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColorPoint {
    pub subject: Subject,
    #[serde(serialize_with = "rational_strings")]
    pub values: Vec<BigRational>,
}

impl ColorPoint {
    pub fn new(subject: Subject, values: Vec<BigRational>) -> Result<Self, BirationalError> {
        if values.len() != subject.rank() {
            return Err(BirationalError::WrongArity { expected: subject.rank(), got: values.len() });
        }
        if values.iter().all(Zero::is_zero) {
            return Err(BirationalError::ZeroPoint);
        }
        Ok(ColorPoint { subject, values })
    }

    pub fn from_ints(subject: Subject, values: &[i64]) -> Result<Self, BirationalError> {
        Self::new(subject, values.iter().map(|&v| BigRational::from_integer(v.into())).collect())
    }

    /// Equality up to a common nonzero factor.
    pub fn projectively_eq(&self, other: &ColorPoint) -> bool {
        self.subject == other.subject && projectively_eq(&self.values, &other.values)
    }

    /// The full first row `v` of the cyclic matrix.
    pub fn first_row(&self) -> Vec<BigRational> {
        let q = self.subject.modulus();
        let mut row = vec![BigRational::zero(); q];
        for (c, x) in self.subject.classes().iter().zip(&self.values) {
            for &i in &c.plus {
                row[i] = x.clone();
            }
            for &i in &c.minus {
                row[i] = -x.clone();
            }
        }
        row
    }
}

pub(crate) fn rational_strings<S: serde::Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub(crate) fn rational_matrix<S: serde::Serializer>(m: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(m.iter().map(|row| row.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

/// `a ∝ b` with a nonzero factor; both nonzero vectors of equal length.
pub fn projectively_eq(a: &[BigRational], b: &[BigRational]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let Some(i) = b.iter().position(|x| !x.is_zero()) else { return false };
    if a[i].is_zero() {
        return false;
    }
    let c = &a[i] / &b[i];
    a.iter().zip(b).all(|(x, y)| *x == &c * y)
}
