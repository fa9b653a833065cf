use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use super::field::{root_power, CycEl};

/// Fourier transform of a rational vector: `v̂_j = Σ_i v_i ω^{ij}` (unnormalised).
pub fn fourier(v: &[BigRational]) -> Vec<CycEl> {
    let q = v.len();
    (0..q)
        .map(|j| {
            CycEl::from_exponents(
                q,
                v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| ((i * j) as i64, c.clone())),
            )
        })
        .collect()
}

/// Fourier transform of a vector of field elements, same convention as [`fourier`].
pub fn fourier_el(v: &[CycEl]) -> Vec<CycEl> {
    let q = v.len();
    let powers: Vec<CycEl> = (0..q as i64).map(|e| root_power(q, e)).collect();
    (0..q)
        .map(|j| {
            v.iter().enumerate().fold(CycEl::zero(q), |acc, (i, x)| {
                if x.is_zero() {
                    acc
                } else {
                    &acc + &(x * &powers[(i * j) % q])
                }
            })
        })
        .collect()
}

/// Cyclic convolution `(u⋆v)_i = Σ_j u_j v_{i-j}`.
pub fn convolution(u: &[BigRational], v: &[BigRational]) -> Vec<BigRational> {
    assert_eq!(u.len(), v.len(), "convolution operands must have equal length");
    let q = u.len();
    let mut out = vec![BigRational::zero(); q];
    for (j, a) in u.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        for (k, b) in v.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
            out[(j + k) % q] += a * b;
        }
    }
    out
}

/// Integer variant of [`convolution`].
pub fn convolution_i64(u: &[i64], v: &[i64]) -> Vec<i64> {
    assert_eq!(u.len(), v.len(), "convolution operands must have equal length");
    let q = u.len();
    let mut out = vec![0i64; q];
    for (j, &a) in u.iter().enumerate().filter(|(_, &a)| a != 0) {
        for (k, &b) in v.iter().enumerate().filter(|(_, &b)| b != 0) {
            out[(j + k) % q] += a * b;
        }
    }
    out
}

/// Quadratic Gauss sum `G = Σ_{j<q} ω^{j²}`.
pub fn gauss_sum(q: usize) -> CycEl {
    assert!(q >= 1, "modulus must be positive");
    CycEl::from_exponents(q, (0..q).map(|j| (((j * j) % q) as i64, BigRational::from_integer(BigInt::from(1)))))
}

/// The classical closed form of the Gauss sum, selected by `q mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GaussCase {
    /// `(1+ı)√q`
    ZeroMod4,
    /// `√q`
    OneMod4,
    /// `0`
    TwoMod4,
    /// `ı√q`
    ThreeMod4,
}

impl GaussCase {
    pub fn of(q: usize) -> Self {
        match q % 4 {
            0 => GaussCase::ZeroMod4,
            1 => GaussCase::OneMod4,
            2 => GaussCase::TwoMod4,
            _ => GaussCase::ThreeMod4,
        }
    }

    /// Exact value of `G²` in `Q(ω_q)`.
    pub fn square(self, q: usize) -> CycEl {
        let qi = q as i64;
        match self {
            // ((1+ı)√q)² = 2ıq, with ı = ω^{q/4}
            GaussCase::ZeroMod4 => &root_power(q, qi / 4) * &CycEl::from_int(q, 2 * qi),
            GaussCase::OneMod4 => CycEl::from_int(q, qi),
            GaussCase::TwoMod4 => CycEl::zero(q),
            GaussCase::ThreeMod4 => CycEl::from_int(q, -qi),
        }
    }

    /// Numeric value `(re, im)` of the closed form.
    pub fn numeric(self, q: usize) -> (f64, f64) {
        let s = (q as f64).sqrt();
        match self {
            GaussCase::ZeroMod4 => (s, s),
            GaussCase::OneMod4 => (s, 0.0),
            GaussCase::TwoMod4 => (0.0, 0.0),
            GaussCase::ThreeMod4 => (0.0, s),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct GaussCheck {
    pub q: usize,
    pub case: GaussCase,
    /// `G²` equals the closed form squared, exactly.
    pub square_exact: bool,
    /// The double-precision value of `G` matches the closed form (sign included).
    pub numeric_match: bool,
    pub numeric: (f64, f64),
}

impl GaussCheck {
    pub fn passed(&self) -> bool {
        self.square_exact && self.numeric_match
    }
}

/// Checks the Gauss sum exactly on its square and numerically on its sign.
pub fn verify_gauss_sum(q: usize, tol: f64) -> GaussCheck {
    let g = gauss_sum(q);
    let case = GaussCase::of(q);
    let square_exact = &g * &g == case.square(q);
    let numeric = g.to_complex();
    let (re, im) = case.numeric(q);
    let numeric_match = (numeric.0 - re).abs() <= tol && (numeric.1 - im).abs() <= tol;
    GaussCheck { q, case, square_exact, numeric_match, numeric }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&c| BigRational::from_integer(c.into())).collect()
    }

    #[test]
    fn delta_transforms_to_constant() {
        let mut v = vec![0; 7];
        v[0] = 1;
        assert!(fourier(&rv(&v)).iter().all(CycEl::is_one));
    }

    #[test]
    fn indicator_of_zero_and_four_at_q8() {
        let f = fourier(&rv(&[1, 0, 0, 0, 1, 0, 0, 0]));
        let expected: Vec<CycEl> = [2, 0, 2, 0, 2, 0, 2, 0].iter().map(|&c| CycEl::from_int(8, c)).collect();
        assert_eq!(f, expected);
    }

    #[test]
    fn convolution_examples() {
        let e0 = rv(&[1, 0, 0, 0, 0, 0]);
        let u = rv(&[3, -1, 4, 1, -5, 9]);
        assert_eq!(convolution(&u, &e0), u);
        assert_eq!(convolution_i64(&[0, 1, 0, 0], &[0, 1, 0, 0]), vec![0, 0, 1, 0]);
        // (δ_1 + δ_7)^{⋆2} expanded by hand: 2δ_0 + δ_2 + δ_6
        let s = [0, 1, 0, 0, 0, 0, 0, 1];
        assert_eq!(convolution_i64(&s, &s), vec![2, 0, 1, 0, 0, 0, 1, 0]);
    }

    #[test]
    fn gauss_small_cases() {
        assert!(gauss_sum(2).is_zero());
        for q in [3, 4, 5, 7, 8, 9, 12, 13, 16] {
            assert!(verify_gauss_sum(q, 1e-9).passed(), "q={q}");
        }
        let g5 = gauss_sum(5).to_complex();
        assert!((g5.0 - 5f64.sqrt()).abs() < 1e-9);
        let g3 = gauss_sum(3).to_complex();
        assert!((g3.1 - 3f64.sqrt()).abs() < 1e-9);
    }
}
