use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::ClosedFormError;
use crate::patterns::{SignedClass, SignedPattern};

/// Largest modulus the exhaustive sign search accepts.
pub const MONOCOLOR_MAX_Q: usize = 30;

/// A sign vector `v` with `Cy(v)² = t·Id`, `t ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MonocolorSolution {
    /// Entries `±1`, first entry `+1`.
    pub signs: Vec<i8>,
    pub pattern: SignedPattern,
    /// The factor `t` in `Cy(v)² = t·Id`.
    pub square_factor: i64,
    /// Index of the orbit under cyclic shifts combined with a global sign.
    pub orbit: usize,
}

fn signs_of(q: usize, bits: u64) -> Vec<i8> {
    (0..q).map(|i| if i > 0 && bits >> (i - 1) & 1 == 1 { -1 } else { 1 }).collect()
}

/// `(v⋆v)_0` when `v⋆v` vanishes off zero, `None` otherwise.
fn square_factor(v: &[i8]) -> Option<i64> {
    let q = v.len();
    let auto = |k: usize| -> i64 { (0..q).map(|i| i64::from(v[i] * v[(q + k - i) % q])).sum() };
    if (1..q).all(|k| auto(k) == 0) {
        Some(auto(0)).filter(|&t| t != 0)
    } else {
        None
    }
}

/// Smallest shift of `v`, each shift normalised to start with `+1`.
fn orbit_key(v: &[i8]) -> Vec<i8> {
    let q = v.len();
    (0..q)
        .map(|k| {
            let s = v[k];
            (0..q).map(|i| v[(i + k) % q] * s).collect::<Vec<i8>>()
        })
        .min()
        .unwrap_or_default()
}

/// Every single-color signed-pattern of `Z_q` (one class with `+` and `-`
/// parts covering `Z_q`) whose cyclic matrix squares to a nonzero multiple of
/// the identity, up to global sign. Exhaustive over `2^(q-1)` sign vectors.
pub fn monocolor_search(q: usize) -> Result<Vec<MonocolorSolution>, ClosedFormError> {
    if q == 0 || q > MONOCOLOR_MAX_Q {
        return Err(ClosedFormError::TooLarge { q, max: MONOCOLOR_MAX_Q });
    }
    let found: Vec<(Vec<i8>, i64)> = (0..1u64 << (q - 1))
        .into_par_iter()
        .filter_map(|bits| {
            let v = signs_of(q, bits);
            square_factor(&v).map(|t| (v, t))
        })
        .collect();
    let orbits: BTreeMap<Vec<i8>, usize> = {
        let keys: std::collections::BTreeSet<Vec<i8>> = found.iter().map(|(v, _)| orbit_key(v)).collect();
        keys.into_iter().enumerate().map(|(i, k)| (k, i)).collect()
    };
    found
        .into_iter()
        .map(|(signs, t)| {
            let plus = (0..q).filter(|&i| signs[i] > 0).collect();
            let minus = (0..q).filter(|&i| signs[i] < 0).collect();
            let pattern = SignedPattern::new(q, vec![SignedClass::new(plus, minus)])?;
            let orbit = orbits[&orbit_key(&signs)];
            Ok(MonocolorSolution { signs, pattern, square_factor: t, orbit })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q4_solutions() {
        let sols = monocolor_search(4).unwrap();
        assert!(sols.iter().any(|s| s.pattern.subject().bracket() == "[a,-a,-a,-a]"));
        assert!(sols.iter().all(|s| s.square_factor == 4));
        // the half-turn shift of [a,-a,-a,-a], up to sign
        assert_eq!(sols.len(), 2);
        assert!(sols.iter().all(|s| s.orbit == 0));
    }

    #[test]
    fn trivial_and_empty_cases() {
        let one = monocolor_search(1).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one[0].pattern.subject().bracket(), "[a]");
        for q in [2, 3, 5, 6, 7, 8, 9, 12] {
            assert!(monocolor_search(q).unwrap().is_empty(), "q={q}");
        }
        assert!(monocolor_search(0).is_err());
        assert!(monocolor_search(31).is_err());
    }
}
