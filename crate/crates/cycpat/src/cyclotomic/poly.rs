use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::arith::divisors;

/// Dense polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    /// `X^n - 1`.
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = BigInt::from(-1);
        c[n] = BigInt::one();
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(One::is_one)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.coeffs.len() - 1;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = std::mem::take(&mut rem[k]);
            if c.is_zero() {
                continue;
            }
            for (j, dj) in d.coeffs[..dd].iter().enumerate() {
                rem[k - dd + j] -= &c * dj;
            }
            quot[k - dd] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem_monic(&self, d: &Self) -> Self {
        self.div_rem_monic(d).1
    }

    /// Largest absolute coefficient, as an `i64` when it fits.
    pub fn max_abs_i64(&self) -> Option<i64> {
        self.coeffs.iter().map(|c| i64::try_from(c.abs()).ok()).try_fold(0, |m, c| c.map(|c| m.max(c)))
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "X".to_string(),
                (1, false) => format!("{mag}X"),
                (_, true) => format!("X^{k}"),
                (_, false) => format!("{mag}X^{k}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        Ok(())
    }
}

fn memo() -> &'static Mutex<HashMap<usize, Arc<IntPoly>>> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    MEMO.get_or_init(Default::default)
}

/// The `n`-th cyclotomic polynomial, by exact division of `X^n - 1` by the
/// cyclotomic polynomials of the proper divisors of `n`. Results are memoised.
pub fn cyclotomic_poly(n: usize) -> Arc<IntPoly> {
    assert!(n >= 1, "cyclotomic_poly needs n >= 1");
    if let Some(p) = memo().lock().unwrap().get(&n) {
        return p.clone();
    }
    let mut p = IntPoly::x_pow_minus_one(n);
    for d in divisors(n as u64) {
        let d = d as usize;
        if d < n {
            let (quot, rem) = p.div_rem_monic(&cyclotomic_poly(d));
            debug_assert!(rem.is_zero());
            p = quot;
        }
    }
    memo().lock().unwrap().entry(n).or_insert_with(|| Arc::new(p)).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::totient;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_poly(1), IntPoly::from_i64(&[-1, 1]));
        assert_eq!(*cyclotomic_poly(5), IntPoly::from_i64(&[1, 1, 1, 1, 1]));
        assert_eq!(*cyclotomic_poly(4), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(*cyclotomic_poly(8), IntPoly::from_i64(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic_poly(6), IntPoly::from_i64(&[1, -1, 1]));
        let mut c25 = vec![0i64; 21];
        for k in (0..=20).step_by(5) {
            c25[k] = 1;
        }
        assert_eq!(*cyclotomic_poly(25), IntPoly::from_i64(&c25));
    }

    #[test]
    fn degree_is_totient_and_product_is_x_n_minus_one() {
        for n in 1..=60usize {
            let p = cyclotomic_poly(n);
            assert!(p.is_monic());
            assert_eq!(p.degree(), Some(totient(n as u64) as usize));
            let prod = divisors(n as u64)
                .into_iter()
                .fold(IntPoly::from_i64(&[1]), |acc, d| acc.mul(&cyclotomic_poly(d as usize)));
            assert_eq!(prod, IntPoly::x_pow_minus_one(n));
        }
    }

    #[test]
    fn first_non_binary_coefficient_at_105() {
        assert_eq!(cyclotomic_poly(105).max_abs_i64(), Some(2));
    }

    #[test]
    fn display() {
        assert_eq!(cyclotomic_poly(6).to_string(), "1-X+X^2");
    }
}
