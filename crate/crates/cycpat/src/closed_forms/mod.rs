//! Explicit constructions of stable patterns: subgroup classes, prime and
//! prime-square moduli, the quadratic-residue pattern, the six even-`q`
//! families, and the search for single-color signed-patterns.

mod families;
mod monocolor;
mod residues;
mod subgroups;

use serde::Serialize;

use crate::enumeration::EnumError;
use crate::patterns::PatternError;

pub use crate::arith::{moebius, tau};
pub use families::{family_subject, six_families};
pub use monocolor::{monocolor_search, MonocolorSolution, MONOCOLOR_MAX_Q};
pub use residues::{quadratic_residue_pattern, QuadraticResidue};
pub use subgroups::{
    prime_pattern_census, prime_square_patterns, subgroup_class_pattern, two_prime_pattern, PrimeCensus,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error("{0:?} is not a subgroup of the units modulo {1}")]
    NotASubgroup(Vec<usize>, usize),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} and {1} are not distinct primes")]
    NotDistinctPrimes(u64, u64),
    #[error("the family requires an even modulus of at least 4, got {0}")]
    OddModulus(usize),
    #[error("modulus {q} exceeds the search limit {max}")]
    TooLarge { q: usize, max: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
    #[error(transparent)]
    Enumeration(#[from] EnumError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum FamilyId {
    SubgroupClasses,
    PrimeSquare,
    TwoPrimes,
    QuadraticResidue,
    P1,
    P2,
    P3,
    Q1,
    Q2,
    Q3,
    Monocolor,
}

impl FamilyId {
    /// The six even-`q` families; each `P_i` is Fourier-paired with `Q_i`.
    pub const EVEN: [FamilyId; 6] =
        [FamilyId::P1, FamilyId::P2, FamilyId::P3, FamilyId::Q1, FamilyId::Q2, FamilyId::Q3];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::SubgroupClasses => "subgroup-classes",
            FamilyId::PrimeSquare => "prime-square",
            FamilyId::TwoPrimes => "two-primes",
            FamilyId::QuadraticResidue => "quadratic-residue",
            FamilyId::P1 => "P1",
            FamilyId::P2 => "P2",
            FamilyId::P3 => "P3",
            FamilyId::Q1 => "Q1",
            FamilyId::Q2 => "Q2",
            FamilyId::Q3 => "Q3",
            FamilyId::Monocolor => "monocolor",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        [
            FamilyId::SubgroupClasses,
            FamilyId::PrimeSquare,
            FamilyId::TwoPrimes,
            FamilyId::QuadraticResidue,
            FamilyId::P1,
            FamilyId::P2,
            FamilyId::P3,
            FamilyId::Q1,
            FamilyId::Q2,
            FamilyId::Q3,
            FamilyId::Monocolor,
        ]
        .into_iter()
        .find(|f| f.name().eq_ignore_ascii_case(s))
    }

    /// The Fourier partner among the even families.
    pub fn partner(self) -> Option<Self> {
        match self {
            FamilyId::P1 => Some(FamilyId::Q1),
            FamilyId::P2 => Some(FamilyId::Q2),
            FamilyId::P3 => Some(FamilyId::Q3),
            FamilyId::Q1 => Some(FamilyId::P1),
            FamilyId::Q2 => Some(FamilyId::P2),
            FamilyId::Q3 => Some(FamilyId::P3),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum FamilyParams {
    None,
    Subgroup(Vec<usize>),
    Primes(u64, u64),
    Prime(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub family: FamilyId,
    pub q: usize,
    pub params: FamilyParams,
}
