use std::collections::HashMap;

use serde::Serialize;

use super::subject::Subject;
use crate::cyclotomic::{CycInt, CycloRing};

/// One class of Fourier indices. In a signed partition, `minus` holds the
/// indices where every spectrum vector takes the opposite value of `plus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FourierClass {
    pub plus: Vec<usize>,
    pub minus: Vec<usize>,
    /// All spectrum vectors vanish on this class.
    pub vanishing: bool,
}

impl FourierClass {
    pub fn representative(&self) -> usize {
        self.plus[0]
    }
}

#[derive(Clone, Debug)]
pub struct FourierClasses {
    /// Coarsest partition on which every `v̂_i` is constant.
    pub unsigned: Vec<FourierClass>,
    /// Coarsest partition on which every `v̂_i` is constant up to one common sign.
    pub signed: Vec<FourierClass>,
    /// `spectrum[i][k] = v̂_i(k)` with `v_i = χ(E_i⁺) - χ(E_i⁻)`.
    pub spectrum: Vec<Vec<CycInt>>,
}

impl FourierClasses {
    pub fn has_vanishing(&self) -> bool {
        self.unsigned.iter().any(|c| c.vanishing)
    }

    /// First Fourier index where every spectrum vector vanishes.
    pub fn vanishing_index(&self) -> Option<usize> {
        self.unsigned.iter().find(|c| c.vanishing).map(FourierClass::representative)
    }
}

/// Spectrum vectors of a subject's classes.
pub fn spectrum(ring: &CycloRing, subject: &Subject) -> Vec<Vec<CycInt>> {
    let q = subject.modulus();
    subject.classes().iter().map(|c| ring.fourier(&c.indicator(q))).collect()
}

fn group<K: std::hash::Hash + Eq>(
    keys: impl Iterator<Item = (K, i64)>,
    vanishing: impl Fn(usize) -> bool,
) -> Vec<FourierClass> {
    let mut index: HashMap<K, usize> = HashMap::new();
    let mut out: Vec<(FourierClass, i64)> = Vec::new();
    for (k, (key, sign)) in keys.enumerate() {
        match index.get(&key) {
            Some(&j) => {
                let (class, ref_sign) = &mut out[j];
                if sign == *ref_sign || class.vanishing {
                    class.plus.push(k);
                } else {
                    class.minus.push(k);
                }
            }
            None => {
                index.insert(key, out.len());
                out.push((FourierClass { plus: vec![k], minus: Vec::new(), vanishing: vanishing(k) }, sign));
            }
        }
    }
    out.into_iter().map(|(c, _)| c).collect()
}

/// The unsigned and signed Fourier class partitions of a subject.
pub fn fourier_class_partition(subject: &Subject) -> FourierClasses {
    let q = subject.modulus();
    let ring = CycloRing::new(q);
    let spectrum = spectrum(&ring, subject);
    let column = |k: usize| -> Vec<CycInt> { spectrum.iter().map(|v| v[k].clone()).collect() };
    let vanishing = |k: usize| spectrum.iter().all(|v| v[k].is_zero());
    let unsigned = group((0..q).map(|k| (column(k), 1)), vanishing);
    let signed = group(
        (0..q).map(|k| {
            let col = column(k);
            let neg: Vec<CycInt> = col.iter().map(CycInt::neg).collect();
            if neg < col {
                (neg, -1)
            } else {
                (col, 1)
            }
        }),
        vanishing,
    );
    FourierClasses { unsigned, signed, spectrum }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_potts_at_q8() {
        let s = Subject::parse("[a,b,b,b,b,b,b,b]").unwrap();
        let fc = fourier_class_partition(&s);
        assert_eq!(fc.unsigned.len(), 2);
        assert_eq!(fc.unsigned[0].plus, vec![0]);
        assert_eq!(fc.unsigned[1].plus, (1..8).collect::<Vec<_>>());
    }

    #[test]
    fn full_pattern_separates_everything() {
        for q in 2..=10 {
            let s = Subject::from_labels(&(0..q).collect::<Vec<_>>()).unwrap();
            let fc = fourier_class_partition(&s);
            assert_eq!(fc.unsigned.len(), q);
            assert_eq!(fc.signed.len(), q);
        }
    }

    #[test]
    fn signed_partition_of_pattern_seven() {
        let s = Subject::parse("[a,b,c,d,a,-d,c,-b]").unwrap();
        let fc = fourier_class_partition(&s);
        let classes: Vec<(Vec<usize>, Vec<usize>)> =
            fc.signed.iter().map(|c| (c.plus.clone(), c.minus.clone())).collect();
        assert_eq!(classes, vec![(vec![0, 4], vec![]), (vec![1, 3], vec![5, 7]), (vec![2], vec![]), (vec![6], vec![])]);
    }
}
