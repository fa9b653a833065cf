use super::{ClosedFormError, FamilyId, FamilyParams, FamilySpec};
use crate::patterns::{SignedClass, Subject};

/// Subject whose position `i` carries color `cells[i].0` with sign `cells[i].1`.
fn from_cells(cells: &[(usize, bool)]) -> Result<Subject, ClosedFormError> {
    let r = cells.iter().map(|c| c.0).max().map_or(0, |m| m + 1);
    let mut classes = vec![SignedClass { plus: Vec::new(), minus: Vec::new() }; r];
    for (i, &(color, negative)) in cells.iter().enumerate() {
        if negative {
            classes[color].minus.push(i);
        } else {
            classes[color].plus.push(i);
        }
    }
    Ok(Subject::new(cells.len(), classes)?)
}

/// One member of the even-`q` families, built from its row template.
pub fn family_subject(family: FamilyId, q: usize) -> Result<Subject, ClosedFormError> {
    if q < 4 || q % 2 == 1 {
        return Err(ClosedFormError::OddModulus(q));
    }
    let h = q / 2;
    // x1 with alternating sign: + at odd positions, - at even ones
    let alternating = |k: usize| if k == 0 { (0, false) } else { (1, k % 2 == 0) };
    let cells: Vec<(usize, bool)> = match family {
        FamilyId::P1 => (0..q).map(alternating).collect(),
        FamilyId::Q1 => (0..q).map(|k| (usize::from(k == h), false)).collect(),
        FamilyId::P2 => (0..q).map(|k| if k == h { (2, false) } else { alternating(k) }).collect(),
        FamilyId::Q2 => (0..q).map(|k| (if k == h { 2 } else { k % 2 }, false)).collect(),
        FamilyId::P3 => (0..q).map(|k| if k <= h { (k, false) } else { (k - h, true) }).collect(),
        FamilyId::Q3 => (0..q).map(|k| (if k % 2 == 0 { 0 } else { k.div_ceil(2) }, false)).collect(),
        other => {
            return Err(ClosedFormError::Pattern(crate::patterns::PatternError::NotAPartition(format!(
                "{} is not an even-q family",
                other.name()
            ))))
        }
    };
    from_cells(&cells)
}

/// `P1, P2, P3` (product-stable signed-patterns) and `Q1, Q2, Q3`
/// (inverse-stable patterns) for even `q ≥ 4`.
pub fn six_families(q: usize) -> Result<Vec<(FamilySpec, Subject)>, ClosedFormError> {
    FamilyId::EVEN
        .iter()
        .map(|&family| {
            let s = family_subject(family, q)?;
            Ok((FamilySpec { family, q, params: FamilyParams::None }, s))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::{classify, StabilityClass};

    fn bracket(f: FamilyId, q: usize) -> String {
        family_subject(f, q).unwrap().bracket()
    }

    #[test]
    fn templates_at_q8_match_the_published_listing() {
        assert_eq!(bracket(FamilyId::P1, 8), "[a,b,-b,b,-b,b,-b,b]");
        assert_eq!(bracket(FamilyId::Q1, 8), "[a,a,a,a,b,a,a,a]");
        assert_eq!(bracket(FamilyId::P2, 8), "[a,b,-b,b,c,b,-b,b]");
        assert_eq!(bracket(FamilyId::Q2, 8), "[a,b,a,b,c,b,a,b]");
        assert_eq!(bracket(FamilyId::P3, 8), "[a,b,c,d,e,-b,-c,-d]");
        assert_eq!(bracket(FamilyId::Q3, 8), "[a,b,a,c,a,d,a,e]");
        assert_eq!(bracket(FamilyId::Q1, 6), "[a,a,a,b,a,a]");
        assert_eq!(bracket(FamilyId::P2, 6), "[a,b,-b,c,-b,b]");
    }

    #[test]
    fn families_are_stable_and_fourier_paired() {
        for q in (4..=30).step_by(2) {
            for (spec, s) in six_families(q).unwrap() {
                let r = classify(&s).unwrap();
                // product stability implies inverse stability
                let ok = match spec.family {
                    FamilyId::P1 | FamilyId::P2 | FamilyId::P3 => r.klass == StabilityClass::ProductStable,
                    _ => r.is_stable(),
                };
                assert!(ok, "{} q={q}: {:?}", spec.family.name(), r.klass);
                if q <= 12 {
                    let partner = family_subject(spec.family.partner().unwrap(), q).unwrap();
                    assert_eq!(r.dual.as_ref(), Some(&partner), "{} q={q}", spec.family.name());
                }
            }
        }
        assert!(six_families(7).is_err());
        assert!(six_families(2).is_err());
    }
}
