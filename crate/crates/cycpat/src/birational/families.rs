use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::exact::{apply_k, random_point};
use super::{projectively_eq, rational_matrix, BirationalError, ColorPoint};
use crate::closed_forms::{family_subject, FamilyId};
use crate::patterns::Subject;

/// Random points on which a candidate composition must agree with `K`.
const VALIDATION_POINTS: usize = 20;

/// A homogeneous polynomial of degree at most two, as `(coefficient, variables)` terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadraticForm {
    pub terms: Vec<(BigRational, Vec<usize>)>,
}

impl QuadraticForm {
    fn new(terms: &[(BigRational, &[usize])]) -> Self {
        QuadraticForm { terms: terms.iter().map(|(c, v)| (c.clone(), v.to_vec())).collect() }
    }

    pub fn eval(&self, x: &[BigRational]) -> BigRational {
        self.terms.iter().map(|(c, vars)| vars.iter().fold(c.clone(), |acc, &v| acc * &x[v])).sum()
    }
}

impl fmt::Display for QuadraticForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (c, vars)) in self.terms.iter().enumerate() {
            let monomial: Vec<String> = vars.iter().map(|v| format!("x{v}")).collect();
            let sign = if c.is_negative() {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            let sep = if i > 0 { " " } else { "" };
            write!(f, "{sep}{sign}{sep}")?;
            if !c.abs().is_one() {
                write!(f, "{}*", c.abs())?;
            }
            f.write_str(&monomial.join("*"))?;
        }
        Ok(())
    }
}

impl Serialize for QuadraticForm {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyMapData {
    pub family: FamilyId,
    pub q: usize,
    pub subject: Subject,
    /// `(-1)^{q/2}`.
    pub epsilon: i64,
    #[serde(serialize_with = "rational_matrix")]
    pub collineation: Vec<Vec<BigRational>>,
    pub inverse_map: Vec<QuadraticForm>,
    /// The first candidate composition that reproduced `K`.
    pub composition_rule: String,
}

type Vector = Vec<BigRational>;
type Matrix = Vec<Vec<BigRational>>;

fn int(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn linear(m: &Matrix, x: &[BigRational]) -> Vector {
    m.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn invert(m: &Matrix) -> Option<Matrix> {
    let n = m.len();
    let mut a: Matrix = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        let p = a[col][col].clone();
        for x in a[col].iter_mut() {
            *x /= &p;
        }
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = a[row][col].clone();
                for k in 0..2 * n {
                    let t = &f * &a[col][k];
                    a[row][k] -= t;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Collineation and inverse of the family as tabulated, in the class order of
/// [`family_subject`].
fn tabulated(family: FamilyId, q: usize) -> Result<(Matrix, Vec<QuadraticForm>), BirationalError> {
    let qi = q as i64;
    let e = if (q / 2) % 2 == 0 { 1 } else { -1 };
    let h = BigRational::new(qi.into(), 2.into());
    let one = BigRational::one;
    let form = QuadraticForm::new;
    let data = match family {
        FamilyId::P1 => (
            vec![vec![int(1), int(1)], vec![int(1), int(1 - qi)]],
            // the second component is printed with an out-of-range index; read as x1
            vec![form(&[(int(1), &[0]), (int(2 - qi), &[1])]), form(&[(int(-1), &[1])])],
        ),
        FamilyId::Q1 => (
            vec![vec![int(1), int(1)], vec![int(1), int(e)]],
            // likewise read as (x1, -x0)
            vec![form(&[(int(1), &[1])]), form(&[(int(-1), &[0])])],
        ),
        FamilyId::P2 => (
            vec![
                vec![int(1), int(2), int(1)],
                vec![BigRational::new((1 + e).into(), 2.into()), BigRational::new((1 - e).into(), 2.into()), int(-1)],
                vec![int(1), int(2 - qi), int(1)],
            ],
            vec![
                form(&[(int(1), &[0, 0]), (int(2 - qi), &[1, 1]), (int(4 - qi), &[0, 1]), (int(e), &[0, 2])]),
                form(&[(int(-1), &[0, 1]), (int(e), &[2, 1])]),
                form(&[(int(-e), &[2, 2]), (int(e * (qi - 2)), &[1, 1]), (int(qi - 4), &[2, 1]), (int(-1), &[0, 2])]),
            ],
        ),
        FamilyId::Q2 if (q / 2) % 2 == 0 => (
            vec![vec![&h - one(), h.clone(), one()], vec![one(), int(0), int(-1)], vec![&h - one(), -h.clone(), one()]],
            vec![
                form(&[(int(2 * qi - 4), &[0, 0]), (int(-2 * qi), &[1, 1]), (int(4), &[0, 2])]),
                form(&[(int(-4), &[0, 1]), (int(4), &[2, 1])]),
                form(&[
                    (int(-(qi - 2) * (qi - 4)), &[0, 0]),
                    (int(qi * (qi - 2)), &[1, 1]),
                    (int(-4), &[2, 2]),
                    (int(-4 * (qi - 3)), &[0, 2]),
                ]),
            ],
        ),
        FamilyId::Q2 => (
            vec![
                vec![h.clone(), &h - one(), one()],
                vec![int(0), one(), int(-1)],
                vec![h.clone(), one() - &h, int(-1)],
            ],
            vec![
                form(&[(int(4), &[1, 0]), (int(-4), &[2, 0])]),
                form(&[(int(2 * qi), &[0, 0]), (int(4 - 2 * qi), &[1, 1]), (int(-4), &[1, 2])]),
                form(&[
                    (int(-qi * (qi - 2)), &[0, 0]),
                    (int((qi - 2) * (qi - 4)), &[1, 1]),
                    (int(4), &[2, 2]),
                    (int(4 * (qi - 3)), &[1, 2]),
                ]),
            ],
        ),
        other => return Err(BirationalError::NoFamilyData(other.name().to_string())),
    };
    Ok(data)
}

#[derive(Clone, Copy)]
enum Op {
    C,
    CInv,
    I,
    J,
}

/// Candidate rules, applied right to left as written.
const CANDIDATES: &[(&str, &[Op])] = &[
    ("I∘J", &[Op::J, Op::I]),
    ("I∘C", &[Op::C, Op::I]),
    ("C∘I", &[Op::I, Op::C]),
    ("C⁻¹∘I∘C", &[Op::C, Op::I, Op::CInv]),
    ("C∘I∘C⁻¹", &[Op::CInv, Op::I, Op::C]),
    ("I∘C∘J", &[Op::J, Op::C, Op::I]),
    ("C∘I∘J", &[Op::J, Op::I, Op::C]),
    ("C⁻¹∘I∘C∘J", &[Op::J, Op::C, Op::I, Op::CInv]),
    ("C∘I∘C⁻¹∘J", &[Op::J, Op::CInv, Op::I, Op::C]),
    ("C⁻¹∘J∘C∘J", &[Op::J, Op::C, Op::J, Op::CInv]),
    ("J∘C∘J", &[Op::J, Op::C, Op::J]),
];

fn run_ops(ops: &[Op], c: &Matrix, c_inv: Option<&Matrix>, inv: &[QuadraticForm], x: &[BigRational]) -> Option<Vector> {
    let mut v = x.to_vec();
    for op in ops {
        v = match op {
            Op::C => linear(c, &v),
            Op::CInv => linear(c_inv?, &v),
            Op::I => inv.iter().map(|f| f.eval(&v)).collect(),
            Op::J => v.iter().map(|x| (!x.is_zero()).then(|| x.recip())).collect::<Option<_>>()?,
        };
    }
    (!v.iter().all(Zero::is_zero)).then_some(v)
}

impl FamilyMapData {
    fn ops(&self) -> &'static [Op] {
        CANDIDATES
            .iter()
            .find(|c| c.0 == self.composition_rule)
            .map(|c| c.1)
            .expect("rule comes from the candidate list")
    }

    /// The recorded composition at `x`, or `None` where it is undefined.
    pub fn apply_rule(&self, x: &[BigRational]) -> Option<Vec<BigRational>> {
        run_ops(self.ops(), &self.collineation, invert(&self.collineation).as_ref(), &self.inverse_map, x)
    }

    /// Checks the rule against direct evaluation of `K` on `n` fresh random
    /// points where both sides are defined.
    pub fn verify_rule(&self, n: usize, seed: u64) -> bool {
        agrees(self.ops(), &self.subject, &self.collineation, &self.inverse_map, n, seed)
    }
}

fn agrees(ops: &[Op], subject: &Subject, c: &Matrix, inv: &[QuadraticForm], n: usize, seed: u64) -> bool {
    let c_inv = invert(c);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    for _ in 0..20 * n {
        if checked == n {
            break;
        }
        let p: ColorPoint = random_point(subject, &mut rng);
        let Ok(k) = apply_k(&p) else { continue };
        match run_ops(ops, c, c_inv.as_ref(), inv, &p.values) {
            Some(v) if projectively_eq(&v, &k.values) => checked += 1,
            _ => return false,
        }
    }
    checked == n
}

/// The tabulated collineation `C` and inverse `I` of an even family, and the
/// composition of `C`, `C⁻¹`, `I` and `J` that reproduces `K` on random points.
pub fn family_map_data(family: FamilyId, q: usize) -> Result<FamilyMapData, BirationalError> {
    let subject = family_subject(family, q)?;
    let (collineation, inverse_map) = tabulated(family, q)?;
    let seed = ChaCha8Rng::seed_from_u64(q as u64 ^ (family as u64) << 32).gen();
    let rule = CANDIDATES
        .iter()
        .find(|(_, ops)| agrees(ops, &subject, &collineation, &inverse_map, VALIDATION_POINTS, seed))
        .ok_or_else(|| BirationalError::NoCompositionMatches { family: family.name().to_string(), q })?;
    Ok(FamilyMapData {
        family,
        q,
        subject,
        epsilon: if (q / 2) % 2 == 0 { 1 } else { -1 },
        collineation,
        inverse_map,
        composition_rule: rule.0.to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tabulated_rules_reproduce_k() {
        for q in [4, 6, 8, 10, 12] {
            for family in [FamilyId::P1, FamilyId::P2, FamilyId::Q2] {
                let data = family_map_data(family, q).unwrap();
                assert_eq!(data.composition_rule, "I∘J", "{family:?} q={q}");
                assert!(data.verify_rule(30, 99));
            }
        }
    }

    #[test]
    fn q1_data_matches_no_candidate() {
        for q in [6, 8] {
            let err = family_map_data(FamilyId::Q1, q).unwrap_err();
            assert!(matches!(err, BirationalError::NoCompositionMatches { .. }));
        }
    }

    #[test]
    fn tabulated_entries() {
        let p1 = family_map_data(FamilyId::P1, 6).unwrap();
        assert_eq!(p1.collineation, [[int(1), int(1)], [int(1), int(-5)]]);
        let q2 = tabulated(FamilyId::Q2, 8).unwrap().0;
        assert_eq!(q2[0], [int(3), int(4), int(1)]);
        assert!(matches!(tabulated(FamilyId::P3, 8), Err(BirationalError::NoFamilyData(_))));
    }
}
