//! Word-size prime fields: prime search and roots of unity.

use crate::arith::{factorize, is_prime_u64, mod_pow};

/// Smallest prime `p > lo` with `p ≡ 1 (mod step)`.
pub fn prime_congruent_one(step: u64, lo: u64) -> u64 {
    let mut c = lo / step + 1;
    loop {
        let p = c * step + 1;
        if is_prime_u64(p) {
            return p;
        }
        c += 1;
    }
}

/// An element of exact multiplicative order `n` in `F_p`; requires `n | p-1`.
pub fn root_of_unity(p: u64, n: u64) -> u64 {
    assert_eq!((p - 1) % n, 0, "n must divide p-1");
    let n_primes: Vec<u64> = factorize(n).into_iter().map(|(l, _)| l).collect();
    (2..p)
        .map(|h| mod_pow(h, (p - 1) / n, p))
        .find(|&g| n_primes.iter().all(|&l| mod_pow(g, n / l, p) != 1))
        .expect("F_p^* is cyclic")
}

#[inline]
pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

#[inline]
pub fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub fn sub_mod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// Montgomery arithmetic modulo an odd `p < 2^63`. Elements are kept in
/// Montgomery form `a·2^64 mod p`; convert with [`Montgomery::to_mont`] and
/// [`Montgomery::from_mont`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Montgomery {
    p: u64,
    /// `p^{-1} mod 2^64`
    p_inv: u64,
    /// `2^128 mod p`
    r2: u64,
}

impl Montgomery {
    pub fn new(p: u64) -> Self {
        assert!(p % 2 == 1 && p < 1 << 63, "modulus must be odd and below 2^63");
        let mut p_inv = p;
        for _ in 0..6 {
            p_inv = p_inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(p_inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        Montgomery { p, p_inv, r2: mul_mod(r, r, p) }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// `t·2^{-64} mod p` for `t < p·2^64`.
    #[inline]
    pub fn reduce(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.p_inv);
        let mp = m as u128 * self.p as u128;
        let (th, mh) = ((t >> 64) as u64, (mp >> 64) as u64);
        if th >= mh {
            th - mh
        } else {
            th + self.p - mh
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        self.reduce(a as u128 * b as u128)
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        add_mod(a, b, self.p)
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        sub_mod(a, b, self.p)
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn to_mont(&self, a: u64) -> u64 {
        self.mul(a % self.p, self.r2)
    }

    pub fn from_mont(&self, a: u64) -> u64 {
        self.reduce(a as u128)
    }

    pub fn one(&self) -> u64 {
        self.to_mont(1)
    }

    pub fn pow(&self, mut b: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero element (Montgomery form in and out).
    pub fn inv(&self, a: u64) -> u64 {
        assert_ne!(a, 0, "zero has no inverse");
        self.pow(a, self.p - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_and_roots() {
        for q in [2u64, 5, 8, 12, 25, 49] {
            let p = prime_congruent_one(q, 1 << 61);
            assert!(p > 1 << 61 && p < 1 << 62 && (p - 1) % q == 0);
            let g = root_of_unity(p, q);
            assert_eq!(mod_pow(g, q, p), 1);
            for d in 1..q {
                if q % d == 0 {
                    assert_ne!(mod_pow(g, d, p), 1);
                }
            }
        }
    }

    #[test]
    fn montgomery_agrees_with_plain_arithmetic() {
        let p = prime_congruent_one(5 << 23, 1 << 61);
        let m = Montgomery::new(p);
        let xs = [0u64, 1, 2, 12345, p - 1, p / 3, 1 << 40];
        for &a in &xs {
            assert_eq!(m.from_mont(m.to_mont(a)), a);
            for &b in &xs {
                let (ma, mb) = (m.to_mont(a), m.to_mont(b));
                assert_eq!(m.from_mont(m.mul(ma, mb)), mul_mod(a, b, p));
                assert_eq!(m.from_mont(m.add(ma, mb)), add_mod(a, b, p));
                assert_eq!(m.from_mont(m.sub(ma, mb)), sub_mod(a, b, p));
            }
            if a != 0 {
                assert_eq!(m.from_mont(m.mul(m.inv(m.to_mont(a)), m.to_mont(a))), 1);
            }
        }
    }
}
