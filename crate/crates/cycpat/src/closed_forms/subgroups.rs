use std::collections::BTreeSet;

use serde::Serialize;

use super::ClosedFormError;
use crate::arith::{gcd, is_prime, tau, units};
use crate::enumeration::{enumerate, SearchConfig, SearchMode};
use crate::patterns::{subgroups_of_units, Pattern};

/// Checks that `h` is a subgroup of `Z_q^*` and returns it sorted.
fn checked_subgroup(q: usize, h: &[usize]) -> Result<Vec<usize>, ClosedFormError> {
    let bad = || ClosedFormError::NotASubgroup(h.to_vec(), q);
    let set: BTreeSet<usize> = h.iter().map(|&x| x % q).collect();
    if !set.contains(&(1 % q)) || set.iter().any(|&x| gcd(x as u64, q as u64) != 1) {
        return Err(bad());
    }
    if set.iter().any(|&a| set.iter().any(|&b| !set.contains(&((a * b) % q)))) {
        return Err(bad());
    }
    Ok(set.into_iter().collect())
}

/// The partition of `Z_q` into the orbits `i·H`.
pub fn subgroup_class_pattern(q: usize, h: &[usize]) -> Result<Pattern, ClosedFormError> {
    let h = checked_subgroup(q, h)?;
    let mut seen = vec![false; q];
    let mut sets = Vec::new();
    for i in 0..q {
        if seen[i] {
            continue;
        }
        let orbit: BTreeSet<usize> = h.iter().map(|&a| (i * a) % q).collect();
        for &x in &orbit {
            seen[x] = true;
        }
        sets.push(orbit.into_iter().collect());
    }
    Ok(Pattern::new(q, sets)?)
}

/// The `1 + τ(p-1) + τ(p-1)²` product-stable patterns of `Z_{p²}`: the
/// two-color pattern, the subgroup-class patterns of `Z_{p²}^*`, and the
/// patterns whose units split along preimages `P⁻¹(H)` of subgroups of
/// `Z_p^*` while the nonzero multiples of `p` split along `p·K`.
pub fn prime_square_patterns(p: u64) -> Result<Vec<Pattern>, ClosedFormError> {
    if !is_prime(p) {
        return Err(ClosedFormError::NotPrime(p));
    }
    let (p, q) = (p as usize, (p * p) as usize);
    let mut out: BTreeSet<Pattern> = BTreeSet::new();
    out.insert(Pattern::new(q, vec![vec![0], (1..q).collect()])?);
    for h in subgroups_of_units(q) {
        out.insert(subgroup_class_pattern(q, &h)?);
    }
    let unit_list: Vec<usize> = units(q as u64).into_iter().map(|u| u as usize).collect();
    let small = subgroups_of_units(p);
    for h in &small {
        let lifted: Vec<usize> = unit_list.iter().copied().filter(|u| h.contains(&(u % p))).collect();
        for k in &small {
            let mut sets = vec![vec![0]];
            let mut seen = vec![false; q];
            seen[0] = true;
            for i in 1..q {
                if seen[i] {
                    continue;
                }
                let class: BTreeSet<usize> = if i % p == 0 {
                    k.iter().map(|&b| (i * b) % q).collect()
                } else {
                    lifted.iter().map(|&a| (i * a) % q).collect()
                };
                for &x in &class {
                    seen[x] = true;
                }
                sets.push(class.into_iter().collect());
            }
            out.insert(Pattern::new(q, sets)?);
        }
    }
    Ok(out.into_iter().collect())
}

/// The three-class pattern `{0}`, `{p1, 2p1, …, (p2-1)p1}`, rest, on `Z_{p1·p2}`.
pub fn two_prime_pattern(p1: u64, p2: u64) -> Result<Pattern, ClosedFormError> {
    if p1 == p2 || !is_prime(p1) || !is_prime(p2) {
        return Err(ClosedFormError::NotDistinctPrimes(p1, p2));
    }
    let (p1, p2) = (p1 as usize, p2 as usize);
    let q = p1 * p2;
    let multiples: Vec<usize> = (1..p2).map(|j| j * p1).collect();
    let rest: Vec<usize> = (1..q).filter(|i| i % p1 != 0).collect();
    Ok(Pattern::new(q, vec![vec![0], multiples, rest])?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCensus {
    pub q: u64,
    /// One pattern per subgroup of `Z_q^*`, deduplicated.
    pub constructed: Vec<Pattern>,
    /// The closed-form count `1 + τ(q-1)`.
    pub formula: u64,
    /// Stable patterns found by the search.
    pub enumerated: usize,
}

impl PrimeCensus {
    pub fn constructed_matches_search(&self) -> bool {
        self.constructed.len() == self.enumerated
    }
}

/// Constructed, closed-form and enumerated counts of stable patterns for prime `q`.
/// Nothing forces the three to agree.
pub fn prime_pattern_census(q: u64) -> Result<PrimeCensus, ClosedFormError> {
    if !is_prime(q) {
        return Err(ClosedFormError::NotPrime(q));
    }
    let n = q as usize;
    let constructed: BTreeSet<Pattern> =
        subgroups_of_units(n).iter().map(|h| subgroup_class_pattern(n, h)).collect::<Result<_, _>>()?;
    let result = enumerate(&SearchConfig::new(n, true, SearchMode::Inverse))?.require_complete(u64::MAX)?;
    Ok(PrimeCensus {
        q,
        constructed: constructed.into_iter().collect(),
        formula: 1 + tau(q - 1),
        enumerated: result.counts.total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{classify, StabilityClass};

    #[test]
    fn subgroup_patterns() {
        let p = subgroup_class_pattern(7, &[1, 2, 4]).unwrap();
        assert_eq!(p.subject().bracket(), "[a,b,b,c,b,c,c]");
        let potts = subgroup_class_pattern(11, &(1..11).collect::<Vec<_>>()).unwrap();
        assert_eq!(potts.subject().rank(), 2);
        assert!(subgroup_class_pattern(7, &[1, 2]).is_err());
        assert!(subgroup_class_pattern(8, &[1, 2]).is_err());
        let l3 = subgroup_class_pattern(25, &[1, 6, 11, 16, 21]).unwrap();
        assert_eq!(l3.subject().bracket(), "[a,b,c,d,e,f,b,c,d,e,g,b,c,d,e,h,b,c,d,e,i,b,c,d,e]");
    }

    #[test]
    fn two_primes() {
        let p = two_prime_pattern(2, 3).unwrap();
        assert_eq!(p.subject().bracket(), "[a,b,c,b,c,b]");
        for (a, b) in [(2, 3), (3, 2), (3, 5), (5, 3), (2, 7)] {
            let r = classify(two_prime_pattern(a, b).unwrap().subject()).unwrap();
            assert_eq!(r.klass, StabilityClass::ProductStable, "{a},{b}");
        }
        assert!(two_prime_pattern(3, 3).is_err());
        assert!(two_prime_pattern(4, 3).is_err());
    }

    #[test]
    fn prime_square_counts() {
        for (p, n) in [(2, 3), (3, 7), (5, 13), (7, 21)] {
            let pats = prime_square_patterns(p).unwrap();
            assert_eq!(pats.len(), n, "p={p}");
            for pat in &pats {
                assert_eq!(classify(pat.subject()).unwrap().klass, StabilityClass::ProductStable);
            }
        }
        assert!(prime_square_patterns(4).is_err());
    }

    #[test]
    fn census_reports_all_three_numbers() {
        let c = prime_pattern_census(7).unwrap();
        assert_eq!((c.constructed.len(), c.formula, c.enumerated), (4, 5, 4));
        assert!(prime_pattern_census(9).is_err());
    }
}
