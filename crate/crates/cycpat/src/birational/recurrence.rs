use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::{BirationalError, MapKind};

/// Equations beyond the unknowns that a fitted recurrence must also satisfy.
const MIN_CHECKS: usize = 2;

/// Fewer terms than this are never fitted.
const MIN_TERMS: usize = 6;

/// Tolerance under which a growth rate counts as polynomial.
const INTEGRABLE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeSequence {
    pub subject_bracket: String,
    pub q: usize,
    pub seed: u64,
    pub primes: Vec<u64>,
    pub kind: MapKind,
    /// `d_0, ..., d_n`.
    pub degrees: Vec<u64>,
    /// `c_1..c_k` with `d_n = Σ c_j d_{n-j}` for every `n ≥ transient + k`.
    pub recurrence: Option<Vec<i64>>,
    pub transient: Option<usize>,
    /// `(numerator, denominator)` of `Σ d_n x^n`, ascending powers.
    pub genfun: Option<(Vec<i64>, Vec<i64>)>,
    /// Largest root modulus of the characteristic polynomial.
    pub delta: Option<f64>,
    pub log_delta: Option<f64>,
    /// `d_{n+1} / d_n`.
    pub ratios: Vec<f64>,
    pub integrable: Option<bool>,
}

impl DegreeSequence {
    pub fn new(
        subject_bracket: String,
        q: usize,
        seed: u64,
        primes: Vec<u64>,
        kind: MapKind,
        degrees: Vec<u64>,
    ) -> Self {
        let ratios = degrees.windows(2).filter(|w| w[0] > 0).map(|w| w[1] as f64 / w[0] as f64).collect();
        DegreeSequence {
            subject_bracket,
            q,
            seed,
            primes,
            kind,
            degrees,
            recurrence: None,
            transient: None,
            genfun: None,
            delta: None,
            log_delta: None,
            ratios,
            integrable: None,
        }
    }

    /// Denominator `1 - Σ c_j x^j` of the generating function, ascending.
    pub fn denominator(&self) -> Option<&[i64]> {
        self.genfun.as_ref().map(|g| g.1.as_slice())
    }

    /// `true` when the fitted denominator is divisible by `factor` (ascending).
    pub fn denominator_divisible_by(&self, factor: &[i64]) -> bool {
        self.denominator().is_some_and(|d| poly_divides(factor, d))
    }
}

/// Exact divisibility of integer polynomials (ascending coefficients) over `Q`.
pub fn poly_divides(divisor: &[i64], dividend: &[i64]) -> bool {
    let lift = |p: &[i64]| rat_trim(p.iter().map(|&c| BigRational::from_integer(c.into())).collect());
    let d = lift(divisor);
    !d.is_empty() && rat_div_rem(&lift(dividend), &d).1.is_empty()
}

/// Gaussian elimination over `Q`; `None` when singular.
fn solve(mut a: Vec<Vec<BigRational>>, mut b: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = a.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row != col && !a[row][col].is_zero() {
                let f = &a[row][col] / &a[col][col];
                for k in col..n {
                    let t = &f * &a[col][k];
                    a[row][k] -= t;
                }
                let t = &f * &b[col];
                b[row] -= t;
            }
        }
    }
    Some((0..n).map(|i| &b[i] / &a[i][i]).collect())
}

/// Integer `c` with `d_n = Σ c_j d_{n-j}` for all `n ≥ start + k`, or `None`.
fn recurrence_on_suffix(d: &[i64], k: usize, start: usize) -> Option<Vec<i64>> {
    let rat = |x: i64| BigRational::from_integer(x.into());
    let rows: Vec<usize> = (start + k..d.len()).collect();
    let a: Vec<Vec<BigRational>> = rows[..k].iter().map(|&n| (1..=k).map(|j| rat(d[n - j])).collect()).collect();
    let b: Vec<BigRational> = rows[..k].iter().map(|&n| rat(d[n])).collect();
    let c = solve(a, b)?;
    if !c.iter().all(|x| x.is_integer()) {
        return None;
    }
    let c: Vec<i64> = c.iter().map(|x| x.to_integer().to_i64()).collect::<Option<_>>()?;
    let holds =
        rows.iter().all(|&n| (1..=k).map(|j| c[j - 1] as i128 * d[n - j] as i128).sum::<i128>() == d[n] as i128);
    holds.then_some(c)
}

/// Finds the lowest-order integer linear recurrence holding on the longest
/// suffix of the degrees, with at least two surplus equations, and derives the
/// generating function and growth rate from it.
pub fn fit_recurrence(seq: &DegreeSequence) -> Result<DegreeSequence, BirationalError> {
    let n = seq.degrees.len();
    if n < MIN_TERMS {
        return Err(BirationalError::TooFewTerms { need: MIN_TERMS, got: n });
    }
    let d: Vec<i64> = seq.degrees.iter().map(|&x| x as i64).collect();
    for k in 1.. {
        if 2 * k + MIN_CHECKS > n {
            break;
        }
        for start in 0..=n - 2 * k - MIN_CHECKS {
            let Some(c) = recurrence_on_suffix(&d, k, start) else { continue };
            let mut denominator = vec![1i64];
            denominator.extend(c.iter().map(|&x| -x));
            let numerator: Vec<i64> =
                (0..start + k).map(|i| d[i] - (1..=k.min(i)).map(|j| c[j - 1] * d[i - j]).sum::<i64>()).collect();
            let mut numerator = numerator;
            while numerator.len() > 1 && numerator.last() == Some(&0) {
                numerator.pop();
            }
            // read descending, the denominator is the characteristic polynomial
            let delta = largest_root(&denominator);
            let mut out = seq.clone();
            out.recurrence = Some(c);
            out.transient = Some(start);
            out.genfun = Some((numerator, denominator));
            out.delta = Some(delta);
            out.log_delta = Some(delta.ln());
            out.integrable = Some(delta <= 1.0 + INTEGRABLE_TOL);
            return Ok(out);
        }
    }
    Err(BirationalError::NoRecurrence)
}

type RatPoly = Vec<BigRational>;

fn rat_trim(mut p: RatPoly) -> RatPoly {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Quotient and remainder over `Q`, ascending coefficients.
fn rat_div_rem(a: &[BigRational], b: &[BigRational]) -> (RatPoly, RatPoly) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor");
    let mut q = vec![BigRational::zero(); r.len() - b.len() + 1];
    for shift in (0..q.len()).rev() {
        let c = &r[shift + b.len() - 1] / lead;
        for (i, bi) in b.iter().enumerate() {
            r[shift + i] -= &c * bi;
        }
        q[shift] = c;
    }
    r.truncate(b.len() - 1);
    (rat_trim(q), rat_trim(r))
}

/// `p / gcd(p, p')`: same roots, all simple.
fn square_free(p: &[BigRational]) -> RatPoly {
    let deriv: RatPoly =
        rat_trim(p.iter().enumerate().skip(1).map(|(i, c)| c * BigRational::from_integer(i.into())).collect());
    let (mut a, mut b) = (p.to_vec(), deriv);
    while !b.is_empty() {
        let (_, r) = rat_div_rem(&a, &b);
        a = b;
        b = r;
    }
    rat_div_rem(p, &a).0
}

/// Largest root modulus of the polynomial whose coefficients, read in
/// descending order, are `coeffs`. Repeated factors are removed exactly
/// before the Durand–Kerner iteration.
pub fn largest_root(coeffs: &[i64]) -> f64 {
    let ascending: RatPoly = rat_trim(coeffs.iter().rev().map(|&x| BigRational::from_integer(x.into())).collect());
    if ascending.len() <= 1 {
        return 0.0;
    }
    let c: Vec<f64> = square_free(&ascending).iter().rev().map(|x| x.to_f64().unwrap_or(f64::NAN)).collect();
    let deg = c.len().saturating_sub(1);
    if deg == 0 {
        return 0.0;
    }
    let lead = c[0];
    let c: Vec<f64> = c.iter().map(|x| x / lead).collect();
    let eval = |z: Complex64| c.iter().fold(Complex64::zero(), |acc, &a| acc * z + a);
    let bound = 1.0 + c[1..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32) * bound).collect();
    for _ in 0..2000 {
        let mut moved = 0.0f64;
        for i in 0..deg {
            let z = roots[i];
            let den = (0..deg).filter(|&j| j != i).fold(Complex64::one(), |acc, j| acc * (z - roots[j]));
            if den.norm() == 0.0 {
                continue;
            }
            let step = eval(z) / den;
            roots[i] = z - step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-15 {
            break;
        }
    }
    let delta = roots.iter().map(|z| z.norm()).fold(0.0, f64::max);
    // an integer largest root is reported exactly
    let r = delta.round();
    let is_root =
        |x: i128| coeffs.iter().try_fold(0i128, |acc, &a| acc.checked_mul(x)?.checked_add(a as i128)) == Some(0);
    if (delta - r).abs() < 1e-6 && r.abs() < 1e6 && (is_root(r as i128) || is_root(-(r as i128))) {
        r
    } else {
        delta
    }
}

/// Growth rate of `K` on the full cyclic pattern: the largest root of
/// `x² + (2 - m²)x + 1` with `m = q - 2`, or `m = p - 1` with
/// `p = ⌊q/2⌋ + 1` for symmetric matrices.
pub fn known_complexity(q: usize, symmetric: bool) -> f64 {
    let m = if symmetric { q / 2 } else { q.saturating_sub(2) } as f64;
    let b = 2.0 - m * m;
    let disc = (b * b - 4.0).max(0.0);
    (-b + disc.sqrt()) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(d: &[u64]) -> DegreeSequence {
        DegreeSequence::new("[a]".into(), 1, 0, vec![], MapKind::K, d.to_vec())
    }

    #[test]
    fn constant_sequence_is_linear() {
        let s = fit_recurrence(&seq(&[1; 8])).unwrap();
        assert_eq!(s.recurrence, Some(vec![1]));
        assert_eq!(s.genfun, Some((vec![1], vec![1, -1])));
        assert_eq!(s.integrable, Some(true));
    }

    #[test]
    fn fibonacci_type_growth() {
        // 1/((1-x)(1-x-x²))
        let s = fit_recurrence(&seq(&[1, 2, 4, 7, 12, 20, 33, 54, 88])).unwrap();
        assert_eq!(s.recurrence, Some(vec![2, 0, -1]));
        assert_eq!(s.genfun, Some((vec![1], vec![1, -2, 0, 1])));
        assert!((s.delta.unwrap() - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-9);
        assert!(s.denominator_divisible_by(&[1, -1, -1]));
        assert_eq!(s.integrable, Some(false));
    }

    #[test]
    fn transient_and_numerator() {
        // (1+x)/((1-x)(1-2x)) preceded by a junk term
        let s = fit_recurrence(&seq(&[5, 1, 4, 10, 22, 46, 94, 190])).unwrap();
        assert_eq!(s.recurrence, Some(vec![3, -2]));
        assert_eq!(s.transient, Some(1));
        assert_eq!(s.delta, Some(2.0));
    }

    #[test]
    fn polynomial_growth_and_failure() {
        let s = fit_recurrence(&seq(&[1, 4, 12, 25, 44, 68, 97, 132, 172, 217, 268, 324, 385])).unwrap();
        assert_eq!(s.recurrence, Some(vec![2, -1, 1, -2, 1]));
        assert_eq!(s.delta, Some(1.0));
        assert_eq!(s.integrable, Some(true));
        assert!(matches!(fit_recurrence(&seq(&[1, 2, 3])), Err(BirationalError::TooFewTerms { .. })));
        assert!(matches!(fit_recurrence(&seq(&[1, 16, 136, 961, 6616, 45376])), Err(BirationalError::NoRecurrence)));
    }

    #[test]
    fn divisibility() {
        assert!(poly_divides(&[1, -1], &[1, -2, 0, 1]));
        assert!(!poly_divides(&[1, 1], &[1, -2, 0, 1]));
        assert!(poly_divides(&[1, -3, 1], &[1, -4, 4, -1]));
    }

    #[test]
    fn complexity_roots() {
        assert!((known_complexity(5, false) - (7.0 + 45f64.sqrt()) / 2.0).abs() < 1e-12);
        assert!((known_complexity(4, false) - 1.0).abs() < 1e-12);
        assert!((known_complexity(7, true) - known_complexity(5, false)).abs() < 1e-12);
        assert!((largest_root(&[1, -7, 1]) - known_complexity(5, false)).abs() < 1e-9);
        assert!((largest_root(&[1, -3, 3, -1]) - 1.0).abs() < 1e-12);
        assert!((largest_root(&[1, -4, 4]) - 2.0).abs() < 1e-12);
    }
}
