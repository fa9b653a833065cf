use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::ClosedFormError;
use crate::arith::is_prime;
use crate::cyclotomic::{gauss_sum, CycEl, GaussCase};
use crate::patterns::Pattern;

/// The pattern `{0}`, squares, non-squares of `Z_q` for an odd prime `q`,
/// together with its 3×3 Fourier matrix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuadraticResidue {
    pub q: u64,
    pub pattern: Pattern,
    pub residues: Vec<usize>,
    pub non_residues: Vec<usize>,
    /// `ε_q² = ±1`: `+1` for `q ≡ 1 (mod 4)`, `-1` for `q ≡ 3 (mod 4)`.
    pub epsilon_squared: i64,
    /// `A = Σ_{r square} ω^r` and `A' = Σ_{n non-square} ω^n`.
    pub a: CycEl,
    pub a_prime: CycEl,
    /// Rows: Fourier index 0, a square, a non-square. Columns: the three classes.
    pub matrix: [[CycEl; 3]; 3],
}

impl QuadraticResidue {
    /// `A + A' + 1 = 0` and `(2A + 1)² = ε_q² q`.
    pub fn identities_hold(&self) -> bool {
        let q = self.q as usize;
        let one = CycEl::one(q);
        let two = CycEl::from_int(q, 2);
        let s = &(&two * &self.a) + &one;
        (&(&self.a + &self.a_prime) + &one).is_zero() && &s * &s == CycEl::from_int(q, self.epsilon_squared * q as i64)
    }

    /// The matrix written through the Gauss sum `G = ε_q √q`, with
    /// `A = (G-1)/2`: rows `(1, m, m)`, `(1, A, -1-A)`, `(1, -1-A, A)`, `m = (q-1)/2`.
    pub fn closed_form_matrix(&self) -> [[CycEl; 3]; 3] {
        let q = self.q as usize;
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let one = CycEl::one(q);
        let a = (&gauss_sum(q) - &one).scale(&half);
        let b = &(-&a) - &one;
        let m = CycEl::from_int(q, (q as i64 - 1) / 2);
        [[one.clone(), m.clone(), m], [one.clone(), a.clone(), b.clone()], [one, b, a]]
    }
}

pub fn quadratic_residue_pattern(q: u64) -> Result<QuadraticResidue, ClosedFormError> {
    if q % 2 == 0 || !is_prime(q) {
        return Err(ClosedFormError::NotOddPrime(q));
    }
    let n = q as usize;
    let mut is_square = vec![false; n];
    for i in 1..n {
        is_square[(i * i) % n] = true;
    }
    let residues: Vec<usize> = (1..n).filter(|&i| is_square[i]).collect();
    let non_residues: Vec<usize> = (1..n).filter(|&i| !is_square[i]).collect();
    let pattern = Pattern::new(n, vec![vec![0], residues.clone(), non_residues.clone()])?;
    let sum = |set: &[usize], k: usize| {
        CycEl::from_exponents(n, set.iter().map(|&i| (((i * k) % n) as i64, BigRational::from_integer(1.into()))))
    };
    let classes: [Vec<usize>; 3] = [vec![0], residues.clone(), non_residues.clone()];
    let rows = [0, residues[0], non_residues[0]];
    let matrix = rows.map(|k| [sum(&classes[0], k), sum(&classes[1], k), sum(&classes[2], k)]);
    let epsilon_squared = match GaussCase::of(n) {
        GaussCase::OneMod4 => 1,
        _ => -1,
    };
    Ok(QuadraticResidue {
        q,
        pattern,
        a: matrix[1][1].clone(),
        a_prime: matrix[1][2].clone(),
        residues,
        non_residues,
        epsilon_squared,
        matrix,
    })
}
