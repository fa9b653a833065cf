//! Dense univariate polynomials over a word-size prime field, in Montgomery
//! form, with NTT multiplication and Newton-iteration division.

use crate::modp::{root_of_unity, Montgomery};

/// Transform sizes up to `2^MAX_LOG` are supported.
pub const MAX_LOG: u32 = 24;

/// Below this length schoolbook multiplication wins.
const NTT_CUTOFF: usize = 48;

/// Below this length the gcd runs plain Euclidean steps.
const HGCD_CUTOFF: usize = 256;

/// 2×2 polynomial matrix acting on column pairs.
type Matrix = [[Vec<u64>; 2]; 2];

/// A prime field with a primitive `2^MAX_LOG`-th root of unity.
#[derive(Clone, Debug)]
pub struct PolyField {
    pub m: Montgomery,
    /// `root[k]`: primitive `2^k`-th root, Montgomery form.
    root: Vec<u64>,
    root_inv: Vec<u64>,
}

impl PolyField {
    /// Requires `2^MAX_LOG | p - 1`.
    pub fn new(p: u64) -> Self {
        let m = Montgomery::new(p);
        let g = m.to_mont(root_of_unity(p, 1 << MAX_LOG));
        let mut root = vec![0; MAX_LOG as usize + 1];
        root[MAX_LOG as usize] = g;
        for k in (0..MAX_LOG as usize).rev() {
            root[k] = m.mul(root[k + 1], root[k + 1]);
        }
        let root_inv = root.iter().map(|&r| m.inv(r)).collect();
        PolyField { m, root, root_inv }
    }

    fn ntt(&self, a: &mut [u64], invert: bool) {
        let n = a.len();
        let m = &self.m;
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        let mut level = 1;
        let mut tw: Vec<u64> = Vec::with_capacity(n / 2);
        while len <= n {
            let w = if invert { self.root_inv[level] } else { self.root[level] };
            tw.clear();
            let mut acc = m.one();
            for _ in 0..len / 2 {
                tw.push(acc);
                acc = m.mul(acc, w);
            }
            for chunk in a.chunks_exact_mut(len) {
                let (lo, hi) = chunk.split_at_mut(len / 2);
                for ((x, y), &t) in lo.iter_mut().zip(hi.iter_mut()).zip(&tw) {
                    let v = m.mul(*y, t);
                    *y = m.sub(*x, v);
                    *x = m.add(*x, v);
                }
            }
            len <<= 1;
            level += 1;
        }
        if invert {
            let n_inv = m.inv(m.to_mont(n as u64));
            for x in a.iter_mut() {
                *x = m.mul(*x, n_inv);
            }
        }
    }

    fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let m = &self.m;
        if a.len().min(b.len()) < NTT_CUTOFF {
            let mut out = vec![0u64; a.len() + b.len() - 1];
            for (i, &x) in a.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (o, &y) in out[i..].iter_mut().zip(b) {
                    *o = m.add(*o, m.mul(x, y));
                }
            }
            return Self::trim(out);
        }
        let len = a.len() + b.len() - 1;
        let n = len.next_power_of_two();
        assert!(n <= 1 << MAX_LOG, "product too long for the transform");
        let mut fa = a.to_vec();
        fa.resize(n, 0);
        let mut fb = b.to_vec();
        fb.resize(n, 0);
        self.ntt(&mut fa, false);
        self.ntt(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = m.mul(*x, *y);
        }
        self.ntt(&mut fa, true);
        fa.truncate(len);
        Self::trim(fa)
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
        let mut out = long.to_vec();
        for (o, &y) in out.iter_mut().zip(short) {
            *o = self.m.add(*o, y);
        }
        Self::trim(out)
    }

    pub fn scale(&self, a: &[u64], c: u64) -> Vec<u64> {
        Self::trim(a.iter().map(|&x| self.m.mul(x, c)).collect())
    }

    /// `Σ c_i·a_i`.
    pub fn combine(&self, terms: &[(u64, &[u64])]) -> Vec<u64> {
        let len = terms.iter().map(|t| t.1.len()).max().unwrap_or(0);
        let mut out = vec![0u64; len];
        for &(c, a) in terms {
            if c == 0 {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(a) {
                *o = self.m.add(*o, self.m.mul(c, x));
            }
        }
        Self::trim(out)
    }

    /// Power series inverse of `a` modulo `x^k`; `a[0] ≠ 0`.
    fn series_inverse(&self, a: &[u64], k: usize) -> Vec<u64> {
        let m = &self.m;
        let mut inv = vec![m.inv(a[0])];
        let mut have = 1;
        while have < k {
            have = (2 * have).min(k);
            let a_cut = &a[..a.len().min(have)];
            // inv ← inv·(2 − a·inv)
            let mut t = self.mul(a_cut, &inv);
            t.resize(have, 0);
            for x in t.iter_mut() {
                *x = m.neg(*x);
            }
            t[0] = m.add(t[0], m.to_mont(2));
            let mut next = self.mul(&inv, &t);
            next.resize(have, 0);
            inv = next;
        }
        inv.truncate(k);
        inv
    }

    /// Quotient and remainder; `b` nonzero.
    pub fn div_rem(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let qlen = a.len() - b.len() + 1;
        let quotient = if qlen.min(b.len()) < NTT_CUTOFF {
            self.div_schoolbook(a, b)
        } else {
            let ra: Vec<u64> = a.iter().rev().take(qlen).copied().collect();
            let rb: Vec<u64> = b.iter().rev().copied().collect();
            let inv = self.series_inverse(&rb, qlen);
            let mut rq = self.mul(&ra, &inv);
            rq.resize(qlen, 0);
            rq.reverse();
            Self::trim(rq)
        };
        let prod = self.mul(&quotient, b);
        let mut rem: Vec<u64> = a.to_vec();
        for (r, &p) in rem.iter_mut().zip(&prod) {
            *r = self.m.sub(*r, p);
        }
        rem.truncate(b.len() - 1);
        (quotient, Self::trim(rem))
    }

    fn div_schoolbook(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let m = &self.m;
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let lead_inv = m.inv(b[db]);
        let mut q = vec![0u64; a.len() - db];
        for i in (db..a.len()).rev() {
            let c = m.mul(r[i], lead_inv);
            q[i - db] = c;
            if c != 0 {
                for (x, &y) in r[i - db..i].iter_mut().zip(&b[..db]) {
                    *x = m.sub(*x, m.mul(c, y));
                }
            }
        }
        Self::trim(q)
    }

    /// `a mod b`, in place, by successive leading-term elimination.
    fn rem_in_place(&self, a: &mut Vec<u64>, b: &[u64]) {
        let m = &self.m;
        let db = b.len() - 1;
        let lead_inv = m.inv(b[db]);
        while a.len() > db {
            let top = a.len() - 1;
            let c = m.mul(a[top], lead_inv);
            if c != 0 {
                for (x, &y) in a[top - db..top].iter_mut().zip(&b[..db]) {
                    *x = m.sub(*x, m.mul(c, y));
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = a.to_vec();
        if out.len() < b.len() {
            out.resize(b.len(), 0);
        }
        for (o, &y) in out.iter_mut().zip(b) {
            *o = self.m.sub(*o, y);
        }
        Self::trim(out)
    }

    fn apply(&self, mat: &Matrix, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        let row = |r: &[Vec<u64>; 2]| self.add(&self.mul(&r[0], a), &self.mul(&r[1], b));
        (row(&mat[0]), row(&mat[1]))
    }

    fn compose(&self, x: &Matrix, y: &Matrix) -> Matrix {
        let e = |i: usize, j: usize| self.add(&self.mul(&x[i][0], &y[0][j]), &self.mul(&x[i][1], &y[1][j]));
        [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
    }

    fn identity(&self) -> Matrix {
        [[vec![self.m.one()], Vec::new()], [Vec::new(), vec![self.m.one()]]]
    }

    /// The step `(a, b) ↦ (b, a - d·b)`.
    fn quotient_step(&self, d: &[u64]) -> Matrix {
        [[Vec::new(), vec![self.m.one()]], [vec![self.m.one()], self.sub(&[], d)]]
    }

    /// A product of Euclidean steps taking `(a, b)`, `len a > len b`, to a
    /// pair whose second entry has at most half the length of `a`.
    fn half_gcd(&self, a: &[u64], b: &[u64]) -> Matrix {
        let half = a.len() / 2;
        if b.len() <= half {
            return self.identity();
        }
        if a.len() < HGCD_CUTOFF {
            let mut mat = self.identity();
            let (mut x, mut y) = (a.to_vec(), b.to_vec());
            while y.len() > half {
                let (d, r) = self.div_rem(&x, &y);
                mat = self.compose(&self.quotient_step(&d), &mat);
                x = std::mem::replace(&mut y, r);
            }
            return mat;
        }
        let mat = self.half_gcd(&a[half..], &b[half..]);
        let (x, y) = self.apply(&mat, a, b);
        if y.len() <= half {
            return mat;
        }
        let (d, r) = self.div_rem(&x, &y);
        let mat = self.compose(&self.quotient_step(&d), &mat);
        if r.len() <= half {
            return mat;
        }
        let k = (2 * half).saturating_sub(y.len());
        let inner = self.half_gcd(&y[k..], &r[k.min(r.len())..]);
        self.compose(&inner, &mat)
    }

    /// Monic greatest common divisor (half-gcd); `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = Self::trim(a.to_vec());
        let mut y = Self::trim(b.to_vec());
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            if x.len() < HGCD_CUTOFF {
                self.rem_in_place(&mut x, &y);
                std::mem::swap(&mut x, &mut y);
                continue;
            }
            let (_, r) = self.div_rem(&x, &y);
            x = std::mem::replace(&mut y, r);
            if y.is_empty() {
                break;
            }
            let mat = self.half_gcd(&x, &y);
            (x, y) = self.apply(&mat, &x, &y);
            if x.len() < y.len() {
                std::mem::swap(&mut x, &mut y);
            }
        }
        if let Some(&lead) = x.last() {
            let inv = self.m.inv(lead);
            x = self.scale(&x, inv);
        }
        x
    }

    /// Plain Euclid, kept as a reference for the half-gcd.
    #[cfg(test)]
    fn gcd_euclid(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = Self::trim(a.to_vec());
        let mut y = Self::trim(b.to_vec());
        while !y.is_empty() {
            self.rem_in_place(&mut x, &y);
            std::mem::swap(&mut x, &mut y);
        }
        match x.last() {
            Some(&lead) => self.scale(&x, self.m.inv(lead)),
            None => x,
        }
    }

    pub fn degree(a: &[u64]) -> Option<usize> {
        a.len().checked_sub(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modp::{mul_mod, prime_congruent_one};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn field() -> PolyField {
        PolyField::new(prime_congruent_one(5 << MAX_LOG, 1 << 61))
    }

    fn random_poly(f: &PolyField, rng: &mut ChaCha8Rng, len: usize) -> Vec<u64> {
        let p = f.m.modulus();
        let mut v: Vec<u64> = (0..len).map(|_| f.m.to_mont(rng.gen_range(0..p))).collect();
        if let Some(last) = v.last_mut() {
            *last = f.m.to_mont(1 + rng.gen_range(0..p - 1));
        }
        v
    }

    fn naive_mul(f: &PolyField, a: &[u64], b: &[u64]) -> Vec<u64> {
        let p = f.m.modulus();
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                let t = mul_mod(f.m.from_mont(x), f.m.from_mont(y), p);
                out[i + j] = (out[i + j] + t) % p;
            }
        }
        out.into_iter().map(|x| f.m.to_mont(x)).collect()
    }

    #[test]
    fn ntt_product_matches_schoolbook() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for (la, lb) in [(1, 1), (3, 70), (100, 100), (257, 64), (500, 1000)] {
            let a = random_poly(&f, &mut rng, la);
            let b = random_poly(&f, &mut rng, lb);
            assert_eq!(f.mul(&a, &b), naive_mul(&f, &a, &b), "{la}x{lb}");
        }
    }

    #[test]
    fn division_and_gcd() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for (lg, la, lb) in [(1, 5, 7), (4, 60, 90), (30, 300, 200), (200, 400, 401)] {
            let g = f.gcd(&random_poly(&f, &mut rng, lg), &[]);
            let a = f.mul(&g, &random_poly(&f, &mut rng, la));
            let b = f.mul(&g, &random_poly(&f, &mut rng, lb));
            // random cofactors are coprime with overwhelming probability
            assert_eq!(f.gcd(&a, &b), g);
            let (q, r) = f.div_rem(&a, &g);
            assert!(r.is_empty());
            assert_eq!(f.mul(&q, &g), a);
            let (q, r) = f.div_rem(&b, &a);
            assert_eq!(f.add(&f.mul(&q, &a), &r), b);
            assert!(r.len() < a.len());
        }
    }

    #[test]
    fn half_gcd_matches_euclid() {
        let f = field();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for (lg, la, lb) in
            [(1, 300, 299), (50, 700, 650), (400, 900, 1200), (1, 2000, 1), (2001, 3, 3), (30, 3000, 2900)]
        {
            let g = random_poly(&f, &mut rng, lg);
            let a = f.mul(&g, &random_poly(&f, &mut rng, la));
            let b = f.mul(&g, &random_poly(&f, &mut rng, lb));
            assert_eq!(f.gcd(&a, &b), f.gcd_euclid(&a, &b));
            assert_eq!(f.gcd(&b, &a), f.gcd_euclid(&a, &b));
        }
        // structured inputs: x^n - 1 and x^m - 1 share x^gcd(n,m) - 1
        let one = f.m.one();
        let xn = |n: usize| {
            let mut v = vec![0; n + 1];
            v[0] = f.m.neg(one);
            v[n] = one;
            v
        };
        assert_eq!(f.gcd(&xn(1200), &xn(900)), xn(300));
        assert_eq!(f.gcd(&xn(1024), &[]), xn(1024));
        assert!(f.gcd(&[], &[]).is_empty());
    }
}
