use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::table::{power_table, PowerTable};
use super::CycError;
use crate::arith::{gcd, units};

/// Exact element of the cyclotomic field `Q(ω)`, `ω = exp(2πi/q)`, stored as
/// its canonical residue modulo `Φ_q` (coordinates in the power basis
/// `1, ω, …, ω^{φ(q)-1}`). Equal elements have equal coordinates.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycEl {
    q: usize,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl CycEl {
    pub fn zero(q: usize) -> Self {
        assert!(q >= 1, "modulus must be positive");
        let phi = power_table(q).phi;
        CycEl { q, coeffs: vec![BigRational::zero(); phi] }
    }

    pub fn one(q: usize) -> Self {
        Self::from_rational(q, BigRational::one())
    }

    pub fn from_int(q: usize, n: i64) -> Self {
        Self::from_rational(q, rat(n))
    }

    pub fn from_rational(q: usize, c: BigRational) -> Self {
        let mut z = Self::zero(q);
        z.coeffs[0] = c;
        z
    }

    /// Element `Σ_e c_e ω^e` for arbitrary (not yet reduced) exponents.
    pub fn from_exponents<I>(q: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let table = power_table(q);
        let mut z = Self::zero(q);
        for (e, c) in terms {
            z.add_power(&table, e, &c);
        }
        z
    }

    /// The value of a polynomial in `ω` (coefficients lowest degree first).
    pub fn from_poly(q: usize, coeffs: &[BigRational]) -> Self {
        Self::from_exponents(q, coeffs.iter().enumerate().map(|(e, c)| (e as i64, c.clone())))
    }

    /// Rebuild from canonical coordinates; the length must be `φ(q)`.
    pub fn from_coords(q: usize, coeffs: Vec<BigRational>) -> Self {
        assert_eq!(coeffs.len(), power_table(q).phi, "coordinate vector has wrong length");
        CycEl { q, coeffs }
    }

    fn add_power(&mut self, table: &PowerTable, e: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let row = &table.rows[e.rem_euclid(self.q as i64) as usize];
        for (slot, &r) in self.coeffs.iter_mut().zip(row) {
            if r != 0 {
                *slot += c * rat(r);
            }
        }
    }

    pub fn modulus(&self) -> usize {
        self.q
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.q)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        self.coeffs[1..].iter().all(Zero::is_zero).then(|| self.coeffs[0].clone())
    }

    fn check(&self, other: &Self) -> Result<(), CycError> {
        if self.q == other.q {
            Ok(())
        } else {
            Err(CycError::ModulusMismatch { left: self.q, right: other.q })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(CycEl { q: self.q, coeffs })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect();
        Ok(CycEl { q: self.q, coeffs })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, CycError> {
        self.check(other)?;
        let table = power_table(self.q);
        let mut raw = vec![BigRational::zero(); self.q];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                raw[(i + j) % self.q] += a * b;
            }
        }
        let mut z = Self::zero(self.q);
        for (e, c) in raw.iter().enumerate() {
            z.add_power(&table, e as i64, c);
        }
        Ok(z)
    }

    /// Equality that reports a modulus mismatch instead of returning `false`.
    pub fn checked_eq(&self, other: &Self) -> Result<bool, CycError> {
        self.check(other)?;
        Ok(self.coeffs == other.coeffs)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        CycEl { q: self.q, coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// Image under the field automorphism `ω ↦ ω^a`, `a` a unit mod `q`.
    pub fn galois(&self, a: usize) -> Self {
        assert_eq!(gcd(a as u64, self.q as u64), 1, "galois exponent must be a unit");
        Self::from_exponents(self.q, self.coeffs.iter().enumerate().map(|(e, c)| ((e * a) as i64, c.clone())))
    }

    /// Multiplicative inverse via the norm: `x⁻¹ = Π_{σ≠1} σ(x) / N(x)`.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let mut cofactor = Self::one(self.q);
        for a in units(self.q as u64).into_iter().skip(1) {
            cofactor = &cofactor * &self.galois(a as usize);
        }
        let norm = (&cofactor * self).as_rational().expect("norm must be rational");
        Some(cofactor.scale(&norm.recip()))
    }

    /// Complex value `(re, im)` in double precision.
    pub fn to_complex(&self) -> (f64, f64) {
        let step = std::f64::consts::TAU / self.q as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (e, c)| {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let ang = step * e as f64;
            (re + c * ang.cos(), im + c * ang.sin())
        })
    }
}

impl fmt::Debug for CycEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycEl[q={}](", self.q)?;
        fmt::Display::fmt(self, f)?;
        write!(f, ")")
    }
}

impl fmt::Display for CycEl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
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
            let body = match (e, mag.is_one()) {
                (0, _) => mag.to_string(),
                (1, true) => "w".to_string(),
                (1, false) => format!("{mag}*w"),
                (_, true) => format!("w^{e}"),
                (_, false) => format!("{mag}*w^{e}"),
            };
            write!(f, "{sign}{body}")?;
            first = false;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialised as its display string.
impl serde::Serialize for CycEl {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

macro_rules! binop {
    ($tr:ident, $m:ident, $checked:ident) => {
        impl $tr<&CycEl> for &CycEl {
            type Output = CycEl;
            /// Panics on a modulus mismatch; use the `checked_*` form to get an error.
            fn $m(self, rhs: &CycEl) -> CycEl {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $tr for CycEl {
            type Output = CycEl;
            fn $m(self, rhs: CycEl) -> CycEl {
                (&self).$m(&rhs)
            }
        }
    };
}
binop!(Add, add, checked_add);
binop!(Sub, sub, checked_sub);
binop!(Mul, mul, checked_mul);

impl Neg for &CycEl {
    type Output = CycEl;
    fn neg(self) -> CycEl {
        CycEl { q: self.q, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Neg for CycEl {
    type Output = CycEl;
    fn neg(self) -> CycEl {
        -&self
    }
}

/// Canonical representative of `ω^k`.
pub fn root_power(q: usize, k: i64) -> CycEl {
    CycEl::from_exponents(q, [(k, BigRational::one())])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(q: usize, c: &[i64]) -> CycEl {
        CycEl::from_coords(q, c.iter().map(|&v| rat(v)).collect())
    }

    #[test]
    fn root_powers() {
        assert_eq!(root_power(4, 1), el(4, &[0, 1]));
        assert!(root_power(9, 0).is_one());
        assert_eq!(root_power(5, 4), el(5, &[-1, -1, -1, -1]));
        assert_eq!(root_power(8, 2), el(8, &[0, 0, 1, 0]));
        assert_eq!(root_power(7, -1), root_power(7, 6));
    }

    #[test]
    fn i_in_modulus_eight() {
        // ω_8^2 = ı, and ı² = -1 independently of the basis.
        let i8 = root_power(8, 2);
        assert_eq!(&i8 * &i8, CycEl::from_int(8, -1));
        let (re, im) = i8.to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    #[test]
    fn geometric_sum_vanishes() {
        for q in 2..=30 {
            let s = (0..q as i64).fold(CycEl::zero(q), |acc, k| acc + root_power(q, k));
            assert!(s.is_zero(), "q={q}");
            assert!((&root_power(q, 1) * &root_power(q, q as i64 - 1)).is_one());
        }
    }

    #[test]
    fn modulus_mismatch_is_reported() {
        assert!(matches!(
            CycEl::one(5).checked_add(&CycEl::one(7)),
            Err(CycError::ModulusMismatch { left: 5, right: 7 })
        ));
    }

    #[test]
    fn inverse() {
        for q in [3usize, 5, 8, 12, 15] {
            let x = &root_power(q, 1) + &CycEl::from_int(q, 2);
            let y = x.inv().unwrap();
            assert!((&x * &y).is_one(), "q={q}");
        }
        assert!(CycEl::zero(7).inv().is_none());
    }
}
