use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::poly::{cyclotomic_poly, IntPoly};

/// Canonical coordinates of `ω^e` for `e` in `0..q`, i.e. the residues of
/// `X^e` modulo `Φ_q`, each of length `φ(q)`.
#[derive(Debug)]
pub struct PowerTable {
    pub q: usize,
    pub phi: usize,
    pub rows: Vec<Vec<i64>>,
}

fn build(q: usize) -> PowerTable {
    let phi_poly = cyclotomic_poly(q);
    let phi = phi_poly.degree().unwrap_or(0);
    let rows = (0..q)
        .map(|e| {
            let mut c = vec![BigInt::zero(); e + 1];
            c[e] = BigInt::one();
            let r = IntPoly::new(c).rem_monic(&phi_poly);
            let mut row = vec![0i64; phi];
            for (k, v) in r.coeffs().iter().enumerate() {
                row[k] = v.to_i64().expect("cyclotomic residue exceeds i64");
            }
            row
        })
        .collect();
    PowerTable { q, phi, rows }
}

/// Shared power table for modulus `q` (memoised, write-once per key).
pub fn power_table(q: usize) -> Arc<PowerTable> {
    static MEMO: OnceLock<Mutex<HashMap<usize, Arc<PowerTable>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(t) = memo.lock().unwrap().get(&q) {
        return t.clone();
    }
    let t = build(q);
    memo.lock().unwrap().entry(q).or_insert_with(|| Arc::new(t)).clone()
}
