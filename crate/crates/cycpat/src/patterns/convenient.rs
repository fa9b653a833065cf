use std::collections::HashMap;

use super::subject::SignedClass;
use super::PatternError;
use crate::cyclotomic::{convolution_i64, CycInt, CycloRing};

fn check_disjoint(q: usize, classes: &[SignedClass]) -> Result<(), PatternError> {
    let mut seen = vec![false; q];
    for c in classes {
        for &i in c.plus.iter().chain(&c.minus) {
            if i >= q {
                return Err(PatternError::NotAPartition(format!("position {i} out of range for q={q}")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(PatternError::OverlappingSets { position: i });
            }
        }
    }
    Ok(())
}

/// Decides convenience of disjoint sets: the algebra generated by the cyclic
/// matrices `Cy(χ(E_l))` (identity included) must consist of first rows that
/// are constant on every `E_l`.
///
/// The algebra is diagonal in Fourier space, spanned by the indicators of the
/// classes `A` of the joint level-set partition of the `χ̂(E_l)`. Its first rows
/// are therefore spanned by `s_A(i) = Σ_{m∈A} ω^{-im}`, and the test reduces to
/// `s_A(i) = s_A(j)` for `i, j` in a common set.
pub fn is_convenient(q: usize, sets: &[Vec<usize>]) -> Result<bool, PatternError> {
    let classes: Vec<SignedClass> = sets.iter().map(|s| SignedClass::unsigned(s.clone())).collect();
    is_convenient_signed(q, &classes)
}

/// Signed variant: within a class, `+` and `-` positions must carry opposite values.
pub fn is_convenient_signed(q: usize, classes: &[SignedClass]) -> Result<bool, PatternError> {
    check_disjoint(q, classes)?;
    let ring = CycloRing::new(q);
    let spectra: Vec<Vec<CycInt>> = classes.iter().map(|c| ring.fourier(&c.indicator(q))).collect();
    let mut blocks: HashMap<Vec<&CycInt>, Vec<usize>> = HashMap::new();
    for k in 0..q {
        blocks.entry(spectra.iter().map(|v| &v[k]).collect()).or_default().push(k);
    }
    for block in blocks.values() {
        let s: Vec<CycInt> = (0..q).map(|i| ring.sum(block.iter().map(|&m| (-((i * m) as i64), 1)))).collect();
        for c in classes {
            let r = c.min();
            for &i in &c.plus[1..] {
                if s[i] != s[r] {
                    return Ok(false);
                }
            }
            for &i in &c.minus {
                if s[i] != s[r].neg() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Reference check by explicit convolution: every product
/// `χ(E_1)^{⋆n_1} ⋆ … ⋆ χ(E_r)^{⋆n_r}` with total degree below `q` must be
/// constant on each set. Degrees beyond `q-1` add nothing by Cayley–Hamilton.
pub fn is_convenient_by_powers(q: usize, sets: &[Vec<usize>]) -> Result<bool, PatternError> {
    let classes: Vec<SignedClass> = sets.iter().map(|s| SignedClass::unsigned(s.clone())).collect();
    check_disjoint(q, &classes)?;
    let vecs: Vec<Vec<i64>> = classes.iter().map(|c| c.indicator(q)).collect();
    let mut delta = vec![0i64; q];
    delta[0] = 1;
    let constant_on_sets = |w: &[i64]| sets.iter().all(|s| s.iter().all(|&i| w[i] == w[s[0]]));
    // Breadth-first over monomials in nondecreasing generator order, so each
    // multiset of factors is visited once.
    let mut frontier: Vec<(Vec<i64>, usize)> = vec![(delta, 0)];
    for _ in 0..q {
        let mut next = Vec::new();
        for (w, start) in &frontier {
            if !constant_on_sets(w) {
                return Ok(false);
            }
            for (g, v) in vecs.iter().enumerate().skip(*start) {
                next.push((convolution_i64(w, v), g));
            }
        }
        frontier = next;
        if frontier.is_empty() {
            break;
        }
    }
    Ok(frontier.iter().all(|(w, _)| constant_on_sets(w)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_cases() {
        assert!(is_convenient(8, &[vec![0]]).unwrap());
        assert!(is_convenient(8, &[vec![1]]).unwrap());
        assert!(is_convenient_by_powers(8, &[vec![1]]).unwrap());
        assert!(!is_convenient(8, &[vec![0, 1]]).unwrap());
        assert!(is_convenient(8, &[vec![1, 3, 5, 7]]).unwrap());
        assert!(matches!(
            is_convenient(8, &[vec![0, 1], vec![1, 2]]),
            Err(PatternError::OverlappingSets { position: 1 })
        ));
    }

    #[test]
    fn lemma_matches_power_oracle_on_single_sets() {
        for q in 2..=9usize {
            for mask in 1u32..1 << q {
                let set: Vec<usize> = (0..q).filter(|i| mask >> i & 1 == 1).collect();
                let sets = [set];
                assert_eq!(
                    is_convenient(q, &sets).unwrap(),
                    is_convenient_by_powers(q, &sets).unwrap(),
                    "q={q} set={:?}",
                    sets[0]
                );
            }
        }
    }

    #[test]
    fn lemma_matches_power_oracle_on_pairs() {
        let q = 6usize;
        for m1 in 1u32..1 << q {
            for m2 in 1u32..1 << q {
                if m1 & m2 != 0 || m1 > m2 {
                    continue;
                }
                let a: Vec<usize> = (0..q).filter(|i| m1 >> i & 1 == 1).collect();
                let b: Vec<usize> = (0..q).filter(|i| m2 >> i & 1 == 1).collect();
                let sets = [a, b];
                assert_eq!(is_convenient(q, &sets).unwrap(), is_convenient_by_powers(q, &sets).unwrap(), "{sets:?}");
            }
        }
    }
}
