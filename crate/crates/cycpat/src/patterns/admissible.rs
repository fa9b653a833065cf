use std::collections::BTreeSet;

use crate::arith::{divisors, gcd, mod_inv, units};

/// All subgroups of the unit group `Z_n^*`, each as a sorted list, found by
/// closing `{1}` under adjoining one more unit at a time.
pub fn subgroups_of_units(n: usize) -> Vec<Vec<usize>> {
    let n64 = n as u64;
    let all: Vec<usize> = units(n64).into_iter().map(|u| u as usize).collect();
    let close = |gens: &BTreeSet<usize>| -> BTreeSet<usize> {
        let mut h = gens.clone();
        loop {
            let prods: Vec<usize> = h.iter().flat_map(|&a| h.iter().map(move |&b| (a * b) % n.max(1))).collect();
            let before = h.len();
            h.extend(prods);
            if h.len() == before {
                return h;
            }
        }
    };
    let trivial: BTreeSet<usize> = [1 % n.max(1)].into();
    let mut found: BTreeSet<BTreeSet<usize>> = [trivial.clone()].into();
    let mut queue = vec![trivial];
    while let Some(h) = queue.pop() {
        for &g in &all {
            if !h.contains(&g) {
                let mut gens = h.clone();
                gens.insert(g);
                let k = close(&gens);
                if found.insert(k.clone()) {
                    queue.push(k);
                }
            }
        }
    }
    let mut out: Vec<Vec<usize>> = found.into_iter().map(|h| h.into_iter().collect()).collect();
    out.sort_by_key(|h| (h.len(), h.clone()));
    out
}

/// Elements of `Z_q` whose gcd with `q` is exactly `d` (for `d = q`: `{0}`).
pub fn level(q: usize, d: usize) -> Vec<usize> {
    (0..q).filter(|&x| gcd(x as u64, q as u64) as usize == d).collect()
}

/// The admissible building blocks `d·i·H` at one level `d | q`, deduplicated,
/// each sorted.
pub fn level_pieces(q: usize, d: usize) -> Vec<Vec<usize>> {
    let m = q / d;
    let mut pieces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for h in subgroups_of_units(m) {
        for i in units(m as u64) {
            let mut piece: Vec<usize> = h.iter().map(|&x| (d * ((i as usize * x) % m)) % q).collect();
            piece.sort_unstable();
            piece.dedup();
            pieces.insert(piece);
        }
    }
    pieces.into_iter().collect()
}

/// Pieces for every divisor of `q`, in increasing divisor order.
pub fn all_level_pieces(q: usize) -> Vec<(usize, Vec<Vec<usize>>)> {
    divisors(q as u64).into_iter().map(|d| (d as usize, level_pieces(q, d as usize))).collect()
}

/// Canonical atom order: smallest element, then size, then lexicographic.
pub fn atom_order_key(s: &[usize]) -> (usize, usize, Vec<usize>) {
    (s.first().copied().unwrap_or(usize::MAX), s.len(), s.to_vec())
}

/// Every nonempty admissible subset of `Z_q`: a union over divisors `d` of at
/// most one block `d·i·H_d` each. Sorted by [`atom_order_key`].
pub fn admissible_sets(q: usize) -> Vec<Vec<usize>> {
    let mut acc: Vec<Vec<usize>> = vec![Vec::new()];
    for (_, pieces) in all_level_pieces(q) {
        let mut next = Vec::with_capacity(acc.len() * (pieces.len() + 1));
        for base in &acc {
            next.push(base.clone());
            for p in &pieces {
                let mut s = base.clone();
                s.extend_from_slice(p);
                next.push(s);
            }
        }
        acc = next;
    }
    let mut out: Vec<Vec<usize>> = acc
        .into_iter()
        .filter(|s| !s.is_empty())
        .map(|mut s| {
            s.sort_unstable();
            s
        })
        .collect();
    out.sort_by_key(|s| atom_order_key(s));
    out
}

/// Direct admissibility test: every level slice is a coset of a unit subgroup.
pub fn is_admissible(q: usize, set: &[usize]) -> bool {
    if set.is_empty() || set.iter().any(|&x| x >= q) {
        return false;
    }
    let mut by_level: std::collections::BTreeMap<usize, Vec<usize>> = Default::default();
    for &x in set {
        by_level.entry(gcd(x as u64, q as u64) as usize).or_default().push(x);
    }
    by_level.iter().all(|(&d, xs)| {
        let m = q / d;
        if m == 1 {
            return true;
        }
        let inv = mod_inv((xs[0] / d) as u64, m as u64).expect("level element is a unit") as usize;
        let h: BTreeSet<usize> = xs.iter().map(|&x| ((x / d) * inv) % m).collect();
        h.len() == xs.len() && h.iter().all(|&a| h.iter().all(|&b| h.contains(&((a * b) % m))))
    })
}
