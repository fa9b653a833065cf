use super::{ClassCounts, EnumError, EnumerationResult, SearchConfig, SearchMode};
use crate::patterns::{stability_class, SignedClass, StabilityClass, StabilityReport, Subject};

/// Number of signed set partitions of a `q`-set: `Σ_r S(q,r)·2^(q-r)`, i.e.
/// every partition with a sign on each non-minimal member of each class.
pub fn signed_partition_count(q: usize) -> u128 {
    // stirling[r] = S(n, r), updated row by row
    let mut stirling = vec![0u128; q + 1];
    stirling[0] = 1;
    for n in 1..=q {
        for r in (1..=n).rev() {
            stirling[r] = r as u128 * stirling[r] + stirling[r - 1];
        }
        stirling[0] = 0;
    }
    (1..=q).map(|r| stirling[r] << (q - r)).sum()
}

/// Restricted growth strings of length `q`: `labels[0] = 0` and each label is
/// at most one more than the maximum before it.
fn growth_strings(q: usize, mut visit: impl FnMut(&[usize])) {
    fn rec(labels: &mut Vec<usize>, q: usize, max: usize, visit: &mut dyn FnMut(&[usize])) {
        if labels.len() == q {
            visit(labels);
            return;
        }
        for l in 0..=max + 1 {
            labels.push(l);
            rec(labels, q, max.max(l), visit);
            labels.pop();
        }
    }
    let mut labels = vec![0];
    rec(&mut labels, q, 0, &mut visit);
}

/// Classifies every (signed-)partition of `Z_q` without any pruning.
/// Reference implementation for the pruned search; feasible up to `q ≈ 8`.
pub fn enumerate_exhaustive(cfg: &SearchConfig) -> Result<EnumerationResult, EnumError> {
    cfg.validate()?;
    let q = cfg.q;
    let mut found: Vec<StabilityReport> = Vec::new();
    let mut tested = 0u64;
    growth_strings(q, |labels| {
        let r = labels.iter().max().map_or(0, |m| m + 1);
        // Positions that are not the first of their class may carry a sign.
        let firsts: Vec<usize> = (0..r).map(|c| labels.iter().position(|&l| l == c).unwrap_or(0)).collect();
        let free: Vec<usize> = (0..q).filter(|i| !firsts.contains(i)).collect();
        let sign_patterns = if cfg.signed { 1u64 << free.len() } else { 1 };
        for signs in 0..sign_patterns {
            tested += 1;
            let mut classes = vec![SignedClass { plus: Vec::new(), minus: Vec::new() }; r];
            for (i, &l) in labels.iter().enumerate() {
                let neg = free.iter().position(|&f| f == i).is_some_and(|b| signs >> b & 1 == 1);
                if neg {
                    classes[l].minus.push(i);
                } else {
                    classes[l].plus.push(i);
                }
            }
            let Ok(subject) = Subject::new(q, classes) else { continue };
            if let Ok((klass, dual)) = stability_class(&subject) {
                let keep = match klass {
                    StabilityClass::ProductStable => true,
                    StabilityClass::InverseStableOnly => cfg.mode == SearchMode::Inverse,
                    StabilityClass::Unstable => false,
                };
                if keep {
                    found.push(StabilityReport { subject, klass, dual, witness: None });
                }
            }
        }
    });
    found.sort_by(|a, b| a.subject.cmp(&b.subject));
    Ok(EnumerationResult {
        q,
        counts: ClassCounts::tally(&found),
        stable: found,
        nodes_visited: tested,
        atoms_tested: 0,
        complete: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn signed_partitions_match_brute_force() {
        for q in 1..=7usize {
            let mut n = 0u128;
            growth_strings(q, |labels| {
                let r = labels.iter().max().unwrap() + 1;
                n += 1 << (q - r);
            });
            assert_eq!(signed_partition_count(q), n);
        }
        let row: Vec<u128> = (2..=8).map(signed_partition_count).collect();
        assert_eq!(row, [3, 11, 49, 257, 1539, 10299, 75905]);
    }
}
