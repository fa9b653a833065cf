use std::fmt;

use serde::{Serialize, Serializer};

use super::bracket;
use super::PatternError;
use crate::arith::gcd;

/// One color class: the positions carrying `+x` and those carrying `-x`.
/// Both lists are sorted; in canonical form the smallest position lies in `plus`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedClass {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
}

impl SignedClass {
    pub fn unsigned(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        SignedClass { plus: members, minus: Vec::new() }
    }

    pub fn new(mut plus: Vec<usize>, mut minus: Vec<usize>) -> Self {
        plus.sort_unstable();
        minus.sort_unstable();
        let swap = match (plus.first(), minus.first()) {
            (None, _) => true,
            (Some(p), Some(m)) => m < p,
            _ => false,
        };
        if swap {
            std::mem::swap(&mut plus, &mut minus);
        }
        SignedClass { plus, minus }
    }

    pub fn min(&self) -> usize {
        self.plus[0]
    }

    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn is_signed(&self) -> bool {
        !self.minus.is_empty()
    }

    /// All positions, sorted.
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        s.sort_unstable();
        s
    }

    /// The signed indicator `χ(E⁺) - χ(E⁻)` as a length-`q` vector.
    pub fn indicator(&self, q: usize) -> Vec<i64> {
        let mut v = vec![0i64; q];
        for &i in &self.plus {
            v[i] = 1;
        }
        for &i in &self.minus {
            v[i] = -1;
        }
        v
    }

    /// Sign of position `i` inside this class, if it belongs to it.
    pub fn sign_of(&self, i: usize) -> Option<i64> {
        if self.plus.binary_search(&i).is_ok() {
            Some(1)
        } else if self.minus.binary_search(&i).is_ok() {
            Some(-1)
        } else {
            None
        }
    }
}

/// A (signed-)pattern of `Z_q` in canonical form: classes are ordered by
/// their smallest position, and within a class that position carries `+`.
/// A subject without any `-` part is an ordinary pattern.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subject {
    q: usize,
    classes: Vec<SignedClass>,
}

impl Subject {
    /// Validates that the classes partition `Z_q` and canonicalises them.
    pub fn new(q: usize, classes: Vec<SignedClass>) -> Result<Self, PatternError> {
        if q == 0 {
            return Err(PatternError::NotAPartition("modulus must be positive".into()));
        }
        let mut seen = vec![false; q];
        for c in &classes {
            if c.is_empty() {
                return Err(PatternError::NotAPartition("empty class".into()));
            }
            for &i in c.plus.iter().chain(&c.minus) {
                if i >= q {
                    return Err(PatternError::NotAPartition(format!("position {i} out of range for q={q}")));
                }
                if std::mem::replace(&mut seen[i], true) {
                    return Err(PatternError::NotAPartition(format!("position {i} appears twice")));
                }
            }
        }
        if let Some(i) = seen.iter().position(|s| !s) {
            return Err(PatternError::NotAPartition(format!("position {i} is not covered")));
        }
        let mut classes: Vec<SignedClass> = classes.into_iter().map(|c| SignedClass::new(c.plus, c.minus)).collect();
        classes.sort_by_key(SignedClass::min);
        Ok(Subject { q, classes })
    }

    /// Unsigned pattern from plain classes.
    pub fn from_sets(q: usize, sets: Vec<Vec<usize>>) -> Result<Self, PatternError> {
        Self::new(q, sets.into_iter().map(SignedClass::unsigned).collect())
    }

    /// Pattern whose color at position `i` is `labels[i]`.
    pub fn from_labels<T: PartialEq>(labels: &[T]) -> Result<Self, PatternError> {
        let mut keys: Vec<&T> = Vec::new();
        let mut sets: Vec<Vec<usize>> = Vec::new();
        for (i, l) in labels.iter().enumerate() {
            match keys.iter().position(|k| *k == l) {
                Some(j) => sets[j].push(i),
                None => {
                    keys.push(l);
                    sets.push(vec![i]);
                }
            }
        }
        Self::from_sets(labels.len(), sets)
    }

    pub fn parse(s: &str) -> Result<Self, PatternError> {
        bracket::parse(s)
    }

    pub fn modulus(&self) -> usize {
        self.q
    }

    pub fn classes(&self) -> &[SignedClass] {
        &self.classes
    }

    /// Number of colors.
    pub fn rank(&self) -> usize {
        self.classes.len()
    }

    pub fn is_signed(&self) -> bool {
        self.classes.iter().any(SignedClass::is_signed)
    }

    /// Bracket notation, e.g. `[a,b,-b,b]`.
    pub fn bracket(&self) -> String {
        bracket::format(self)
    }

    /// Class index and sign at each position.
    pub fn position_map(&self) -> Vec<(usize, i64)> {
        let mut out = vec![(0, 0); self.q];
        for (c, class) in self.classes.iter().enumerate() {
            for &i in &class.plus {
                out[i] = (c, 1);
            }
            for &i in &class.minus {
                out[i] = (c, -1);
            }
        }
        out
    }

    /// Image under `i ↦ a·i mod q` for a unit `a`.
    pub fn multiply(&self, a: usize) -> Result<Self, PatternError> {
        let q = self.q;
        if gcd(a as u64, q as u64) != 1 {
            return Err(PatternError::NotAUnit { a, q });
        }
        let map = |v: &[usize]| v.iter().map(|&i| (i * a) % q).collect::<Vec<_>>();
        Self::new(q, self.classes.iter().map(|c| SignedClass { plus: map(&c.plus), minus: map(&c.minus) }).collect())
    }
}

impl fmt::Display for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.bracket())
    }
}

impl fmt::Debug for Subject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subject({})", self.bracket())
    }
}

impl Serialize for Subject {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.bracket())
    }
}

/// An unsigned pattern.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Pattern(Subject);

impl Pattern {
    pub fn new(q: usize, sets: Vec<Vec<usize>>) -> Result<Self, PatternError> {
        Subject::from_sets(q, sets).map(Pattern)
    }

    pub fn parse(s: &str) -> Result<Self, PatternError> {
        Subject::parse(s)?.try_into()
    }

    pub fn subject(&self) -> &Subject {
        &self.0
    }

    pub fn into_subject(self) -> Subject {
        self.0
    }

    pub fn multiply(&self, a: usize) -> Result<Self, PatternError> {
        self.0.multiply(a).map(Pattern)
    }
}

impl TryFrom<Subject> for Pattern {
    type Error = PatternError;
    fn try_from(s: Subject) -> Result<Self, PatternError> {
        if s.is_signed() {
            Err(PatternError::UnexpectedSigns(s.bracket()))
        } else {
            Ok(Pattern(s))
        }
    }
}

/// A signed-pattern (signs may or may not actually occur).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SignedPattern(Subject);

impl SignedPattern {
    pub fn new(q: usize, classes: Vec<SignedClass>) -> Result<Self, PatternError> {
        Subject::new(q, classes).map(SignedPattern)
    }

    pub fn parse(s: &str) -> Result<Self, PatternError> {
        Subject::parse(s).map(SignedPattern)
    }

    pub fn subject(&self) -> &Subject {
        &self.0
    }

    pub fn into_subject(self) -> Subject {
        self.0
    }

    pub fn multiply(&self, a: usize) -> Result<Self, PatternError> {
        self.0.multiply(a).map(SignedPattern)
    }
}

impl From<Subject> for SignedPattern {
    fn from(s: Subject) -> Self {
        SignedPattern(s)
    }
}

impl From<Pattern> for SignedPattern {
    fn from(p: Pattern) -> Self {
        SignedPattern(p.0)
    }
}

/// Applies `i ↦ a·i` to a subject; same kind in, same kind out.
pub fn multiply_pattern(a: usize, subject: &Subject) -> Result<Subject, PatternError> {
    subject.multiply(a)
}
