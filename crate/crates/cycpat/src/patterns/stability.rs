use serde::Serialize;

use super::spectrum::{fourier_class_partition, FourierClass, FourierClasses};
use super::subject::{Pattern, SignedClass, SignedPattern, Subject};
use super::PatternError;
use crate::cyclotomic::{CycEl, CycloRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum StabilityClass {
    /// The span is closed under matrix products (hence also under inversion).
    ProductStable,
    /// Closed under inversion but not under products.
    InverseStableOnly,
    Unstable,
}

impl StabilityClass {
    pub fn name(self) -> &'static str {
        match self {
            StabilityClass::ProductStable => "ProductStable",
            StabilityClass::InverseStableOnly => "InverseStableOnly",
            StabilityClass::Unstable => "Unstable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub subject: Subject,
    pub klass: StabilityClass,
    /// Fourier-side partition, present iff the subject is stable.
    pub dual: Option<Subject>,
    /// For unstable subjects, two Fourier indices `(k, l)`: the column at `l`
    /// is already spanned by the columns of the classes up to the one of `k`,
    /// so no partition into as many classes as colors can exist.
    pub witness: Option<(usize, usize)>,
}

impl StabilityReport {
    pub fn is_stable(&self) -> bool {
        self.klass != StabilityClass::Unstable
    }
}

fn to_subject(q: usize, classes: &[FourierClass]) -> Subject {
    let classes = classes.iter().map(|c| SignedClass::new(c.plus.clone(), c.minus.clone())).collect();
    Subject::new(q, classes).expect("Fourier classes partition Z_q")
}

/// Rank of a list of vectors over `Q(ω)`, by Gaussian elimination.
fn rank(rows: &[Vec<CycEl>]) -> usize {
    let mut m: Vec<Vec<CycEl>> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in r + 1..m.len() {
            if m[i][c].is_zero() {
                continue;
            }
            let f = &m[i][c] * &inv;
            for j in c..ncols {
                let t = &f * &m[r][j];
                m[i][j] = &m[i][j] - &t;
            }
        }
        r += 1;
    }
    r
}

fn witness(q: usize, fc: &FourierClasses) -> (usize, usize) {
    let ring = CycloRing::new(q);
    let column = |class: &FourierClass| -> Vec<CycEl> {
        fc.spectrum.iter().map(|v| ring.to_el(&v[class.representative()])).collect()
    };
    let cols: Vec<Vec<CycEl>> = fc.signed.iter().map(column).collect();
    for l in 1..cols.len() {
        if rank(&cols[..=l]) <= l {
            let k = (0..l).find(|&t| {
                let mut sub: Vec<Vec<CycEl>> = cols[..=t].to_vec();
                sub.push(cols[l].clone());
                rank(&sub) == t + 1
            });
            return (fc.signed[k.unwrap_or(0)].representative(), fc.signed[l].representative());
        }
    }
    unreachable!("more signed classes than colors forces a dependent column")
}

fn class_and_dual(subject: &Subject) -> Result<(StabilityClass, Option<Subject>, FourierClasses), PatternError> {
    let q = subject.modulus();
    let r = subject.rank();
    if r == 1 && !subject.is_signed() {
        return Err(PatternError::AllEqualPattern);
    }
    let fc = fourier_class_partition(subject);
    if let Some(index) = fc.vanishing_index() {
        return Err(PatternError::GenericallySingular { index });
    }
    let (klass, dual) = if fc.unsigned.len() == r {
        (StabilityClass::ProductStable, Some(to_subject(q, &fc.unsigned)))
    } else if fc.signed.len() == r {
        (StabilityClass::InverseStableOnly, Some(to_subject(q, &fc.signed)))
    } else {
        (StabilityClass::Unstable, None)
    };
    Ok((klass, dual, fc))
}

/// Stability class and dual without computing an instability witness.
pub fn stability_class(subject: &Subject) -> Result<(StabilityClass, Option<Subject>), PatternError> {
    class_and_dual(subject).map(|(k, d, _)| (k, d))
}

/// Classifies a subject by its Fourier class partitions: product-stable when
/// the unsigned partition has exactly as many classes as colors, inverse-stable
/// when the signed one does, unstable otherwise.
pub fn classify(subject: &Subject) -> Result<StabilityReport, PatternError> {
    let (klass, dual, fc) = class_and_dual(subject)?;
    let witness = (klass == StabilityClass::Unstable).then(|| witness(subject.modulus(), &fc));
    Ok(StabilityReport { subject: subject.clone(), klass, dual, witness })
}

/// Product-stability test for a pattern (the report carries the full class).
pub fn is_product_stable(p: &Pattern) -> Result<StabilityReport, PatternError> {
    classify(p.subject())
}

/// Inverse-stability test for a pattern; the dual of an inverse-only stable
/// pattern is a signed-pattern.
pub fn is_inverse_stable(p: &Pattern) -> Result<StabilityReport, PatternError> {
    classify(p.subject())
}

pub fn is_product_stable_signed(s: &SignedPattern) -> Result<StabilityReport, PatternError> {
    classify(s.subject())
}

pub fn is_inverse_stable_signed(s: &SignedPattern) -> Result<StabilityReport, PatternError> {
    classify(s.subject())
}

/// Coefficients expressing each spectrum vector in the signed indicators of
/// the dual classes: `v̂_i = Σ_j c[i][j]·(χ(F_j⁺) - χ(F_j⁻))`.
pub fn dual_coordinates(subject: &Subject) -> Result<Vec<Vec<CycEl>>, PatternError> {
    let report = classify(subject)?;
    let dual = report.dual.ok_or_else(|| PatternError::Unstable(subject.bracket()))?;
    let ring = CycloRing::new(subject.modulus());
    let fc = fourier_class_partition(subject);
    Ok(fc.spectrum.iter().map(|v| dual.classes().iter().map(|c| ring.to_el(&v[c.min()])).collect()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn report(b: &str) -> StabilityReport {
        classify(&Subject::parse(b).unwrap()).unwrap()
    }

    #[test]
    fn listed_q8_examples() {
        let r = report("[a,b,c,b,d,b,e,b]");
        assert_eq!(r.klass, StabilityClass::ProductStable);
        assert_eq!(r.dual.unwrap().bracket(), "[a,b,c,d,e,b,c,d]");
        let r = report("[a,a,a,a,b,a,a,a]");
        assert_eq!(r.klass, StabilityClass::InverseStableOnly);
        assert_eq!(r.dual.unwrap().bracket(), "[a,b,-b,b,-b,b,-b,b]");
        let r = report("[a,b,-b,b,-b,b,-b,b]");
        assert_eq!(r.klass, StabilityClass::ProductStable);
        assert_eq!(r.dual.unwrap().bracket(), "[a,a,a,a,b,a,a,a]");
        let r = report("[a,b,c,-b,a,-b,c,b]");
        assert_eq!(r.klass, StabilityClass::InverseStableOnly);
        assert_eq!(r.dual.unwrap().bracket(), "[a,b,c,-b,a,-b,c,b]");
    }

    #[test]
    fn small_cases() {
        assert_eq!(report("[a,a,a,b,a,a]").klass, StabilityClass::InverseStableOnly);
        assert_eq!(report("[a,-a,-a,-a]").klass, StabilityClass::InverseStableOnly);
        assert_eq!(report("[a,b,b,b,b,b,b,b]").klass, StabilityClass::ProductStable);
    }

    #[test]
    fn unstable_with_witness() {
        let r = report("[a,b,c,a,a]");
        assert_eq!(r.klass, StabilityClass::Unstable);
        let (k, l) = r.witness.unwrap();
        assert!(k < l && l < 5);
    }

    #[test]
    fn errors() {
        assert!(matches!(classify(&Subject::parse("[a,a,a]").unwrap()), Err(PatternError::AllEqualPattern)));
        // Both alternating pairs sum to zero at index 0.
        assert!(matches!(
            classify(&Subject::parse("[a,-a,b,-b]").unwrap()),
            Err(PatternError::GenericallySingular { index: 0 })
        ));
    }

    #[test]
    fn worked_example_coordinates() {
        let coords = dual_coordinates(&Subject::parse("[a,b,c,d,a,-d,c,-b]").unwrap()).unwrap();
        let q = 8;
        let two = CycEl::from_int(q, 2);
        let zero = CycEl::zero(q);
        let i = crate::cyclotomic::root_power(q, 2);
        let sqrt2_i = &crate::cyclotomic::root_power(q, 1) + &crate::cyclotomic::root_power(q, 3);
        assert_eq!(coords[0], vec![two.clone(), zero.clone(), two.clone(), two.clone()]);
        let two_i = &two * &i;
        assert_eq!(coords[1], vec![zero.clone(), sqrt2_i.clone(), two_i.clone(), -&two_i]);
        assert_eq!(coords[2], vec![two.clone(), zero.clone(), -&two, -&two]);
        assert_eq!(coords[3], vec![zero, sqrt2_i, -&two_i, two_i]);
    }
}
