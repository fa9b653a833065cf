use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::field::CycEl;
use super::table::{power_table, PowerTable};

/// Element of `Z[ω]` in canonical coordinates, for hashing and fast comparison.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt(pub Box<[i64]>);

impl CycInt {
    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> CycInt {
        CycInt(self.0.iter().map(|c| -c).collect())
    }
}

/// Integer arithmetic in `Z[ω]` backed by a precomputed power table.
#[derive(Clone, Debug)]
pub struct CycloRing {
    table: Arc<PowerTable>,
}

impl CycloRing {
    pub fn new(q: usize) -> Self {
        CycloRing { table: power_table(q) }
    }

    pub fn modulus(&self) -> usize {
        self.table.q
    }

    pub fn phi(&self) -> usize {
        self.table.phi
    }

    pub fn zero(&self) -> Vec<i64> {
        vec![0; self.table.phi]
    }

    /// `acc += c·ω^e`.
    pub fn add_power(&self, acc: &mut [i64], e: i64, c: i64) {
        let row = &self.table.rows[e.rem_euclid(self.table.q as i64) as usize];
        for (a, &r) in acc.iter_mut().zip(row) {
            *a += c * r;
        }
    }

    /// `Σ c·ω^e` over the given terms.
    pub fn sum<I: IntoIterator<Item = (i64, i64)>>(&self, terms: I) -> CycInt {
        let mut acc = self.zero();
        for (e, c) in terms {
            self.add_power(&mut acc, e, c);
        }
        CycInt(acc.into_boxed_slice())
    }

    pub fn to_el(&self, x: &CycInt) -> CycEl {
        CycEl::from_coords(self.table.q, x.0.iter().map(|&c| BigRational::from_integer(BigInt::from(c))).collect())
    }

    /// Fourier transform `v̂_k = Σ_i v_i ω^{ik}` of an integer vector.
    pub fn fourier(&self, v: &[i64]) -> Vec<CycInt> {
        let q = self.table.q as i64;
        assert_eq!(v.len() as i64, q, "vector length must equal the modulus");
        (0..q)
            .map(|k| self.sum(v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i as i64 * k, c))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{fourier, root_power};

    #[test]
    fn integer_and_rational_fourier_agree() {
        let ring = CycloRing::new(12);
        let v = [3i64, -1, 0, 4, 0, 0, 2, 0, -5, 1, 0, 7];
        let fast: Vec<CycEl> = ring.fourier(&v).iter().map(|x| ring.to_el(x)).collect();
        let rv: Vec<BigRational> = v.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        assert_eq!(fast, fourier(&rv));
    }

    #[test]
    fn sum_matches_field() {
        let ring = CycloRing::new(9);
        let x = ring.sum([(1, 2), (10, 1), (-3, 4)]);
        let expected = &(&root_power(9, 1) * &CycEl::from_int(9, 3)) + &(&root_power(9, 6) * &CycEl::from_int(9, 4));
        assert_eq!(ring.to_el(&x), expected);
    }
}
