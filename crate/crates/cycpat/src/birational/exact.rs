use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;

use super::{BirationalError, ColorPoint};
use crate::patterns::Subject;

/// Entrywise inverse `x_i ↦ 1/x_i`.
pub fn apply_j(p: &ColorPoint) -> Result<ColorPoint, BirationalError> {
    let values = p
        .values
        .iter()
        .enumerate()
        .map(|(index, x)| if x.is_zero() { Err(BirationalError::ZeroColor { index }) } else { Ok(x.recip()) })
        .collect::<Result<Vec<_>, _>>()?;
    ColorPoint::new(p.subject.clone(), values)
}

/// Fraction-free (Bareiss) solution of `A x = b` over the integers.
fn bareiss_solve(mut a: Vec<Vec<BigInt>>, b: Vec<BigInt>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for (row, rhs) in a.iter_mut().zip(b) {
        row.push(rhs);
    }
    let mut prev = BigInt::one();
    for k in 0..n {
        let pivot = (k..n).find(|&r| !a[r][k].is_zero())?;
        a.swap(k, pivot);
        for i in k + 1..n {
            for j in k + 1..=n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    let mut x = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        let mut s = BigRational::from_integer(a[i][n].clone());
        for j in i + 1..n {
            s -= BigRational::from_integer(a[i][j].clone()) * &x[j];
        }
        x[i] = s / BigRational::from_integer(a[i][i].clone());
    }
    Some(x)
}

/// First row `w` of `Cy(v)^{-1}`, i.e. the solution of `w ⋆ v = δ_0`.
pub fn circulant_inverse_row(v: &[BigRational]) -> Result<Vec<BigRational>, BirationalError> {
    let q = v.len();
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    // (w ⋆ v)_j = Σ_k w_k v_{j-k}
    let a: Vec<Vec<BigInt>> = (0..q).map(|j| (0..q).map(|k| ints[(q + j - k) % q].clone()).collect()).collect();
    let mut rhs = vec![BigInt::zero(); q];
    rhs[0] = BigInt::one();
    let w = bareiss_solve(a, rhs).ok_or(BirationalError::Singular)?;
    let scale = BigRational::from_integer(lcm);
    Ok(w.into_iter().map(|x| x * &scale).collect())
}

/// Matrix inverse, read back on the pattern. Fails with `PatternViolation`
/// when the inverse's first row does not respect the (signed) classes.
pub fn apply_i(p: &ColorPoint) -> Result<ColorPoint, BirationalError> {
    let w = circulant_inverse_row(&p.first_row())?;
    let values = p
        .subject
        .classes()
        .iter()
        .map(|c| {
            let value = w[c.plus[0]].clone();
            for &i in &c.plus {
                if w[i] != value {
                    return Err(BirationalError::PatternViolation { position: i });
                }
            }
            for &i in &c.minus {
                if w[i] != -value.clone() {
                    return Err(BirationalError::PatternViolation { position: i });
                }
            }
            Ok(value)
        })
        .collect::<Result<Vec<_>, _>>()?;
    ColorPoint::new(p.subject.clone(), values)
}

/// `K = I∘J`.
pub fn apply_k(p: &ColorPoint) -> Result<ColorPoint, BirationalError> {
    apply_i(&apply_j(p)?)
}

/// `K⁻¹ = J∘I`.
pub fn apply_k_inverse(p: &ColorPoint) -> Result<ColorPoint, BirationalError> {
    apply_j(&apply_i(p)?)
}

/// `Δ(u, v) = (u-v)² / ((2uv-u-v)(u+v-2)) · (q + 2(uv-u-v+1)/(u+v))`, a
/// `K`-invariant of the quadratic-residue pattern for `q ≡ 1 (mod 4)` with
/// `(u, v) = (y/x, z/x)`.
pub fn delta_invariant(u: &BigRational, v: &BigRational, q: u64) -> Result<BigRational, BirationalError> {
    let one = BigRational::one();
    let two = BigRational::from_integer(2.into());
    let d1 = &two * u * v - u - v;
    let d2 = u + v - &two;
    let d3 = u + v;
    if d1.is_zero() || d2.is_zero() || d3.is_zero() {
        return Err(BirationalError::Pole);
    }
    let diff = u - v;
    let tail = BigRational::from_integer(q.into()) + &two * (u * v - u - v + one) / d3;
    Ok(&diff * &diff / (d1 * d2) * tail)
}

/// A point with nonzero random rational colors `n/d`, `0 < |n| ≤ 30`, `1 ≤ d ≤ 9`.
pub fn random_point<R: Rng>(subject: &Subject, rng: &mut R) -> ColorPoint {
    let values = (0..subject.rank())
        .map(|_| {
            let n: i64 = rng.gen_range(1..=30) * if rng.gen_bool(0.5) { 1 } else { -1 };
            BigRational::new(n.into(), rng.gen_range(1i64..=9).into())
        })
        .collect();
    ColorPoint::new(subject.clone(), values).expect("nonzero colors")
}
