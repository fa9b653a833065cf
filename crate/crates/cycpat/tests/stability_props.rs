use std::sync::OnceLock;

use cycpat::arith::units;
use cycpat::birational::{apply_i, random_point, BirationalError, ColorPoint};
use cycpat::cyclotomic::convolution;
use cycpat::enumeration::{enumerate, SearchConfig, SearchMode};
use cycpat::patterns::{
    admissible_sets, classify, is_admissible, multiply_pattern, PatternError, StabilityClass, StabilityReport, Subject,
};
use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const MAX_Q: usize = 12;

/// Every stable pattern and signed-pattern for `q = 2..=12`, computed once.
fn stable(q: usize) -> &'static [StabilityReport] {
    static ALL: OnceLock<Vec<Vec<StabilityReport>>> = OnceLock::new();
    let all = ALL.get_or_init(|| {
        (0..=MAX_Q)
            .map(|q| {
                if q < 2 {
                    return Vec::new();
                }
                enumerate(&SearchConfig::new(q, true, SearchMode::Inverse)).unwrap().stable
            })
            .collect()
    });
    &all[q]
}

fn respects(subject: &Subject, row: &[BigRational]) -> bool {
    subject.classes().iter().all(|c| {
        let v = &row[c.plus[0]];
        c.plus.iter().all(|&i| &row[i] == v) && c.minus.iter().all(|&i| row[i] == -v.clone())
    })
}

#[test]
fn duality_is_an_involution_and_exchanges_classes_at_q8() {
    let reports = stable(8);
    assert_eq!(reports.len(), 57);
    for r in reports {
        let dual = r.dual.as_ref().expect("stable subjects have a dual");
        let back = classify(dual).unwrap();
        assert_eq!(back.dual.as_ref(), Some(&r.subject), "dual of {} does not return", dual);
        let expected = match (r.klass, r.subject.is_signed()) {
            (StabilityClass::ProductStable, false) => (StabilityClass::ProductStable, false),
            (StabilityClass::InverseStableOnly, false) => (StabilityClass::ProductStable, true),
            (StabilityClass::ProductStable, true) => (StabilityClass::InverseStableOnly, false),
            (StabilityClass::InverseStableOnly, true) => (StabilityClass::InverseStableOnly, true),
            (StabilityClass::Unstable, _) => unreachable!(),
        };
        assert_eq!((back.klass, dual.is_signed()), expected, "{} -> {}", r.subject, dual);
    }
}

#[test]
fn classes_of_stable_subjects_are_admissible() {
    for q in 2..=MAX_Q {
        let sets = admissible_sets(q);
        for r in stable(q) {
            for c in r.subject.classes() {
                let support = c.support();
                assert!(is_admissible(q, &support), "{}: class {support:?}", r.subject);
                assert!(sets.contains(&support), "{}: class {support:?} not generated", r.subject);
            }
        }
    }
}

#[test]
fn stable_subjects_are_unit_invariant() {
    for q in 2..=MAX_Q {
        for r in stable(q) {
            for a in units(q as u64) {
                assert_eq!(multiply_pattern(a as usize, &r.subject).unwrap(), r.subject, "a={a} on {}", r.subject);
            }
        }
    }
}

#[test]
fn zero_is_a_singleton_class_of_product_stable_patterns() {
    for q in 2..=MAX_Q {
        let product = |r: &&StabilityReport| r.klass == StabilityClass::ProductStable && !r.subject.is_signed();
        for r in stable(q).iter().filter(product) {
            assert!(r.subject.classes().iter().any(|c| c.plus == [0] && c.minus.is_empty()), "{}", r.subject);
        }
    }
}

#[test]
fn stable_subjects_are_closed_under_inversion() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for q in 2..=8 {
        for r in stable(q) {
            let mut ok = 0;
            while ok < 3 {
                match apply_i(&random_point(&r.subject, &mut rng)) {
                    Ok(_) => ok += 1,
                    Err(BirationalError::Singular) => continue,
                    Err(e) => panic!("{}: {e}", r.subject),
                }
            }
        }
    }
}

#[test]
fn product_stable_subjects_are_closed_under_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for q in 2..=MAX_Q {
        for r in stable(q).iter().filter(|r| r.klass == StabilityClass::ProductStable) {
            let a = random_point(&r.subject, &mut rng).first_row();
            let b = random_point(&r.subject, &mut rng).first_row();
            assert!(respects(&r.subject, &convolution(&a, &b)), "{}", r.subject);
        }
    }
}

fn labeling() -> impl Strategy<Value = Vec<u8>> {
    (3usize..=10).prop_flat_map(|q| prop::collection::vec(0u8..3, q))
}

fn point(subject: &Subject, seed: u64) -> ColorPoint {
    random_point(subject, &mut ChaCha8Rng::seed_from_u64(seed))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    /// Unstable subjects show a pattern violation under inversion, stable ones never do.
    #[test]
    fn inversion_agrees_with_classification(labels in labeling(), seed in any::<u64>()) {
        let Ok(subject) = Subject::from_labels(&labels) else { return Ok(()) };
        let report = match classify(&subject) {
            Ok(r) => r,
            Err(PatternError::AllEqualPattern | PatternError::GenericallySingular { .. }) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let mut outcome = None;
        for k in 0..8 {
            match apply_i(&point(&subject, seed.wrapping_add(k))) {
                Err(BirationalError::Singular) => continue,
                other => { outcome = Some(other); break; }
            }
        }
        let Some(outcome) = outcome else { return Ok(()) };
        if report.is_stable() {
            prop_assert!(outcome.is_ok(), "{}: {:?}", subject, outcome.err());
        } else {
            prop_assert!(report.witness.is_some());
            let violation = matches!(outcome, Err(BirationalError::PatternViolation { .. }));
            prop_assert!(violation, "{} is unstable yet inversion kept the pattern", subject);
        }
    }

    #[test]
    fn units_permute_classification(labels in labeling(), pick in any::<prop::sample::Index>()) {
        let Ok(subject) = Subject::from_labels(&labels) else { return Ok(()) };
        let q = subject.modulus();
        let us = units(q as u64);
        let a = us[pick.index(us.len())] as usize;
        let image = multiply_pattern(a, &subject).unwrap();
        match (classify(&subject), classify(&image)) {
            (Ok(x), Ok(y)) => prop_assert_eq!(x.klass, y.klass),
            (Err(_), Err(_)) => {}
            (x, y) => prop_assert!(false, "{:?} vs {:?}", x.map(|r| r.klass), y.map(|r| r.klass)),
        }
    }
}
