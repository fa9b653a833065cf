use cycpat::arith::units;
use cycpat::cyclotomic::{convolution, fourier, CycEl};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn element(q: usize) -> impl Strategy<Value = CycEl> {
    prop::collection::vec((-6i64..=6, 1i64..=4), q).prop_map(move |cs| {
        CycEl::from_poly(q, &cs.iter().map(|&(n, d)| BigRational::new(n.into(), d.into())).collect::<Vec<_>>())
    })
}

fn modulus_and_elements(k: usize) -> impl Strategy<Value = (usize, Vec<CycEl>)> {
    (2usize..=12).prop_flat_map(move |q| (Just(q), prop::collection::vec(element(q), k)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((_q, xs) in modulus_and_elements(3)) {
        let (a, b, c) = (&xs[0], &xs[1], &xs[2]);
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(&(a * b) * c, a * &(b * c));
        prop_assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        prop_assert!((&(a - a)).is_zero());
    }

    #[test]
    fn inverse_is_two_sided((_q, xs) in modulus_and_elements(1)) {
        let a = &xs[0];
        match a.inv() {
            Some(inv) => prop_assert!((a * &inv).is_one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn galois_is_a_ring_map((q, xs) in modulus_and_elements(2), pick in any::<prop::sample::Index>()) {
        let us = units(q as u64);
        let g = us[pick.index(us.len())] as usize;
        let (a, b) = (&xs[0], &xs[1]);
        prop_assert_eq!((a * b).galois(g), &a.galois(g) * &b.galois(g));
        prop_assert_eq!((a + b).galois(g), &a.galois(g) + &b.galois(g));
    }

    #[test]
    fn fourier_turns_convolution_into_product(
        (u, v) in (2usize..=10).prop_flat_map(|q| (prop::collection::vec(-5i64..=5, q), prop::collection::vec(-5i64..=5, q)))
    ) {
        let u: Vec<BigRational> = u.into_iter().map(rat).collect();
        let v: Vec<BigRational> = v.into_iter().map(rat).collect();
        let lhs = fourier(&convolution(&u, &v));
        let rhs: Vec<CycEl> = fourier(&u).iter().zip(fourier(&v)).map(|(a, b)| a * &b).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn numeric_value_is_consistent((_q, xs) in modulus_and_elements(2)) {
        let (a, b) = (&xs[0], &xs[1]);
        let (ar, ai) = a.to_complex();
        let (br, bi) = b.to_complex();
        let (pr, pi) = (a * b).to_complex();
        prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-8);
        prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-8);
    }
}
