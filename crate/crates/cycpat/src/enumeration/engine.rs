use std::cmp::Reverse;
use std::collections::HashMap;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use super::{AtomSource, ClassCounts, EnumError, EnumerationResult, SearchConfig, SearchMode};
use crate::arith::{gcd, is_prime, units};
use crate::modp::{add_mod, prime_congruent_one, root_of_unity, sub_mod};
use crate::patterns::{all_level_pieces, classify, SignedClass, StabilityClass, StabilityReport, Subject};

type Mask = u64;

fn bits(mut m: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

fn mask_of(xs: &[usize]) -> Mask {
    xs.iter().fold(0, |m, &x| m | 1 << x)
}

/// Submasks of `m`, the empty one included.
fn submasks(m: Mask) -> impl Iterator<Item = Mask> {
    let mut s = m;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = s;
        if s == 0 {
            done = true;
        } else {
            s = (s - 1) & m;
        }
        Some(out)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
struct Atom {
    plus: Mask,
    minus: Mask,
}

impl Atom {
    fn support(self) -> Mask {
        self.plus | self.minus
    }

    /// Puts the smallest position into `plus`.
    fn canonical(self) -> Atom {
        if self.minus != 0 && (self.plus == 0 || self.minus.trailing_zeros() < self.plus.trailing_zeros()) {
            Atom { plus: self.minus, minus: self.plus }
        } else {
            self
        }
    }

    fn to_class(self) -> SignedClass {
        SignedClass::new(bits(self.plus).collect(), bits(self.minus).collect())
    }

    /// Size first, then lexicographic on the sorted position lists.
    fn order_key(self) -> (u32, Reverse<u64>, Reverse<u64>) {
        (self.support().count_ones(), Reverse(self.support().reverse_bits()), Reverse(self.minus.reverse_bits()))
    }
}

/// Read-only data shared by every search thread.
struct Context {
    q: usize,
    full: Mask,
    mode: SearchMode,
    atom_source: AtomSource,
    signing: bool,
    max_nodes: u64,
    /// Prime `p ≡ 1 (mod q)` and `g^e` for a primitive `q`-th root `g` in `F_p`.
    p: u64,
    pow: Vec<u64>,
    /// `unit_bytes[u][b][v]`: image under the `u`-th nontrivial unit of byte `b` having value `v`.
    unit_bytes: Vec<Vec<[Mask; 256]>>,
    /// Per divisor level: the level mask and its admissible pieces.
    levels: Vec<(Mask, Vec<Mask>)>,
    nodes: AtomicU64,
    exhausted: AtomicBool,
}

impl Context {
    fn new(cfg: &SearchConfig) -> Self {
        let q = cfg.q;
        let full = if q == 64 { u64::MAX } else { (1u64 << q) - 1 };
        let p = prime_congruent_one(q as u64, 1 << 61);
        let g = root_of_unity(p, q as u64);
        let mut pow = Vec::with_capacity(q);
        let mut acc = 1u64;
        for _ in 0..q {
            pow.push(acc);
            acc = crate::modp::mul_mod(acc, g, p);
        }
        let nbytes = q.div_ceil(8);
        let unit_bytes = units(q as u64)
            .into_iter()
            .filter(|&a| a != 1)
            .map(|a| {
                (0..nbytes)
                    .map(|b| {
                        let mut table = [0u64; 256];
                        for (v, slot) in table.iter_mut().enumerate() {
                            *slot = bits(v as u64)
                                .map(|j| 8 * b + j)
                                .filter(|&i| i < q)
                                .fold(0, |m, i| m | 1 << ((i * a as usize) % q));
                        }
                        table
                    })
                    .collect()
            })
            .collect();
        let levels = all_level_pieces(q)
            .into_iter()
            .map(|(d, pieces)| {
                let level: Vec<usize> = (0..q).filter(|&x| gcd(x as u64, q as u64) as usize == d).collect();
                (mask_of(&level), pieces.iter().map(|s| mask_of(s)).collect())
            })
            .collect();
        Context {
            q,
            full,
            mode: cfg.mode,
            atom_source: cfg.atom_source,
            signing: cfg.signed && !(cfg.prime_sign_gate && is_prime(q as u64)),
            max_nodes: cfg.max_nodes,
            p,
            pow,
            unit_bytes,
            levels,
            nodes: AtomicU64::new(0),
            exhausted: AtomicBool::new(false),
        }
    }

    fn mul_unit(&self, u: usize, m: Mask) -> Mask {
        self.unit_bytes[u].iter().enumerate().fold(0, |acc, (b, t)| acc | t[((m >> (8 * b)) & 0xff) as usize])
    }

    fn neg(&self, x: u64) -> u64 {
        if x == 0 {
            0
        } else {
            self.p - x
        }
    }

    /// Image of the signed indicator's Fourier transform in `F_p`.
    fn spectrum(&self, a: Atom) -> Vec<u64> {
        let q = self.q;
        (0..q)
            .map(|k| {
                let s = bits(a.plus).fold(0, |s, m| add_mod(s, self.pow[(m * k) % q], self.p));
                bits(a.minus).fold(s, |s, m| sub_mod(s, self.pow[(m * k) % q], self.p))
            })
            .collect()
    }

    /// Fourier indices grouped by their column of spectrum values. With
    /// `signed`, columns equal up to sign share a block and each index carries
    /// its sign; the all-zero column is then dropped.
    fn column_blocks(&self, spectra: &[Vec<u64>], signed: bool) -> Vec<Vec<(usize, bool)>> {
        let mut ids: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut blocks: Vec<Vec<(usize, bool)>> = Vec::new();
        for k in 0..self.q {
            let col: Vec<u64> = spectra.iter().map(|s| s[k]).collect();
            let (key, flip) = if signed {
                if col.iter().all(|&x| x == 0) {
                    continue;
                }
                let neg: Vec<u64> = col.iter().map(|&x| self.neg(x)).collect();
                if neg < col {
                    (neg, true)
                } else {
                    (col, false)
                }
            } else {
                (col, false)
            };
            let next = blocks.len();
            let id = *ids.entry(key).or_insert(next);
            if id == next {
                blocks.push(Vec::new());
            }
            blocks[id].push((k, flip));
        }
        blocks
    }

    /// Convenience of a partial collection, evaluated in `F_p`. Product mode
    /// uses the even algebra generated by the classes (identity included),
    /// inverse mode its odd part. A collision in `F_p` can only merge blocks,
    /// so a collection that is convenient over the integers is never rejected.
    fn convenient(&self, classes: &[Atom], spectra: &[Vec<u64>], covered: Mask) -> bool {
        let q = self.q;
        let signed = self.mode == SearchMode::Inverse;
        let mut w = vec![0u64; q];
        for block in self.column_blocks(spectra, signed) {
            for i in bits(covered) {
                w[i] = block.iter().fold(0, |acc, &(m, flip)| {
                    let t = self.pow[(q - (i * m) % q) % q];
                    if flip {
                        sub_mod(acc, t, self.p)
                    } else {
                        add_mod(acc, t, self.p)
                    }
                });
            }
            for a in classes {
                let r = w[a.plus.trailing_zeros() as usize];
                let nr = self.neg(r);
                if bits(a.plus).any(|i| w[i] != r) || bits(a.minus).any(|i| w[i] != nr) {
                    return false;
                }
            }
        }
        true
    }
}

/// Mutable search state of one thread.
#[derive(Clone)]
struct Walker<'a> {
    ctx: &'a Context,
    classes: Vec<Atom>,
    spectra: Vec<Vec<u64>>,
    covered: Mask,
    memo: HashMap<Atom, bool>,
    found: Vec<StabilityReport>,
    atoms_tested: u64,
}

impl<'a> Walker<'a> {
    fn new(ctx: &'a Context) -> Self {
        Walker {
            ctx,
            classes: Vec::new(),
            spectra: Vec::new(),
            covered: 0,
            memo: HashMap::new(),
            found: Vec::new(),
            atoms_tested: 0,
        }
    }

    fn push(&mut self, a: Atom) {
        self.spectra.push(self.ctx.spectrum(a));
        self.classes.push(a);
        self.covered |= a.support();
    }

    fn truncate(&mut self, len: usize) {
        for a in self.classes.drain(len..) {
            self.covered &= !a.support();
        }
        self.spectra.truncate(len);
    }

    /// Adds `a` together with its images under all units. Fails when an image
    /// partially overlaps an existing class or hits one with other signs.
    fn add_closed(&mut self, a: Atom) -> bool {
        let start = self.classes.len();
        self.push(a);
        let mut idx = start;
        while idx < self.classes.len() {
            let c = self.classes[idx];
            for u in 0..self.ctx.unit_bytes.len() {
                let img = Atom { plus: self.ctx.mul_unit(u, c.plus), minus: self.ctx.mul_unit(u, c.minus) };
                let sup = img.support();
                if sup & self.covered == 0 {
                    self.push(img.canonical());
                    continue;
                }
                let ok = self.classes.iter().any(|d| {
                    d.support() == sup
                        && ((d.plus == img.plus && d.minus == img.minus)
                            || (d.plus == img.minus && d.minus == img.plus))
                });
                if !ok {
                    return false;
                }
            }
            idx += 1;
        }
        true
    }

    fn single_ok(&mut self, a: Atom) -> bool {
        if let Some(&v) = self.memo.get(&a) {
            return v;
        }
        let v = self.ctx.convenient(&[a], &[self.ctx.spectrum(a)], a.support());
        self.memo.insert(a, v);
        v
    }

    fn candidates(&mut self, x: usize) -> Vec<Atom> {
        let ctx = self.ctx;
        let free = ctx.full & !self.covered;
        let xbit = 1u64 << x;
        let mut out: Vec<Atom> = match ctx.atom_source {
            AtomSource::AllSubsets => {
                let rest = free & !xbit;
                if ctx.signing {
                    submasks(rest)
                        .flat_map(|s| submasks(s).map(move |t| Atom { plus: xbit | (s & !t), minus: t }))
                        .collect()
                } else {
                    submasks(rest).map(|s| Atom { plus: xbit | s, minus: 0 }).collect()
                }
            }
            AtomSource::AdmissibleOnly => {
                let lx = ctx.levels.iter().position(|(l, _)| l & xbit != 0).expect("levels cover Z_q");
                let mut acc: Vec<Atom> = Vec::new();
                for &p in &ctx.levels[lx].1 {
                    if p & xbit != 0 && p & !free == 0 {
                        acc.push(Atom { plus: p, minus: 0 });
                        if ctx.signing {
                            for &m in &ctx.levels[lx].1 {
                                if m & p == 0 && m & !free == 0 {
                                    acc.push(Atom { plus: p, minus: m });
                                }
                            }
                        }
                    }
                }
                for (li, (level, pieces)) in ctx.levels.iter().enumerate() {
                    if li == lx || level & free == 0 {
                        continue;
                    }
                    let avail: Vec<Mask> = pieces.iter().copied().filter(|&p| p & !free == 0).collect();
                    if avail.is_empty() {
                        continue;
                    }
                    let mut next = Vec::with_capacity(acc.len() * (1 + avail.len()));
                    for base in &acc {
                        next.push(*base);
                        for &p in &avail {
                            next.push(Atom { plus: base.plus | p, minus: base.minus });
                            if ctx.signing {
                                next.push(Atom { plus: base.plus, minus: base.minus | p });
                                for &m in &avail {
                                    if m & p == 0 {
                                        next.push(Atom { plus: base.plus | p, minus: base.minus | m });
                                    }
                                }
                            }
                        }
                    }
                    acc = next;
                }
                acc
            }
        };
        out.retain(|&a| {
            self.atoms_tested += 1;
            self.single_ok(a)
        });
        out.sort_unstable_by_key(|a| a.order_key());
        out.dedup();
        out
    }

    fn over_budget(&self) -> bool {
        let n = self.ctx.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if n > self.ctx.max_nodes {
            self.ctx.exhausted.store(true, Ordering::Relaxed);
            true
        } else {
            false
        }
    }

    /// Tries one candidate class; recurses on success and restores the state.
    fn try_atom(&mut self, a: Atom) {
        let mark = self.classes.len();
        if self.add_closed(a) && self.ctx.convenient(&self.classes, &self.spectra, self.covered) {
            self.dfs();
        }
        self.truncate(mark);
    }

    fn dfs(&mut self) {
        if self.ctx.exhausted.load(Ordering::Relaxed) || self.over_budget() {
            return;
        }
        if self.covered == self.ctx.full {
            self.leaf();
            return;
        }
        let x = (!self.covered & self.ctx.full).trailing_zeros() as usize;
        for a in self.candidates(x) {
            self.try_atom(a);
        }
    }

    fn leaf(&mut self) {
        let ctx = self.ctx;
        let r = self.classes.len();
        let product = ctx.mode == SearchMode::Product;
        // Fewer distinct columns in F_p than over the integers is possible, more is not.
        if ctx.column_blocks(&self.spectra, !product).len() > r {
            return;
        }
        let Ok(subject) = Subject::new(ctx.q, self.classes.iter().map(|a| a.to_class()).collect()) else {
            return;
        };
        if let Ok(report) = classify(&subject) {
            let keep = match report.klass {
                StabilityClass::ProductStable => true,
                StabilityClass::InverseStableOnly => !product,
                StabilityClass::Unstable => false,
            };
            if keep {
                self.found.push(report);
            }
        }
    }
}

/// Depth-first search for every stable subject of the requested kind.
///
/// Each partition is reached along exactly one path because the next class is
/// always the one containing the smallest uncovered position.
pub fn enumerate(cfg: &SearchConfig) -> Result<EnumerationResult, EnumError> {
    cfg.validate()?;
    let ctx = Context::new(cfg);
    let mut root = Walker::new(&ctx);
    if cfg.mode == SearchMode::Product {
        // The identity matrix lies in every product-closed span.
        root.push(Atom { plus: 1, minus: 0 });
    }
    let (mut found, atoms) = if root.over_budget() {
        (Vec::new(), 0)
    } else if root.covered == ctx.full {
        root.leaf();
        (root.found, root.atoms_tested)
    } else {
        let x = (!root.covered & ctx.full).trailing_zeros() as usize;
        let cands = root.candidates(x);
        let run = |a: &Atom| {
            let mut w = root.clone();
            w.try_atom(*a);
            (w.found, w.atoms_tested)
        };
        let parts: Vec<(Vec<StabilityReport>, u64)> =
            if cfg.parallel { cands.par_iter().map(run).collect() } else { cands.iter().map(run).collect() };
        let base = root.atoms_tested;
        parts.into_iter().fold((Vec::new(), base), |(mut f, n), (pf, pn)| {
            f.extend(pf);
            (f, n + pn - base)
        })
    };
    found.sort_by(|a, b| a.subject.cmp(&b.subject));
    debug_assert!(found.windows(2).all(|w| w[0].subject != w[1].subject));
    let counts = ClassCounts::tally(&found);
    let exhausted = ctx.exhausted.load(Ordering::Relaxed);
    Ok(EnumerationResult {
        q: cfg.q,
        stable: found,
        counts,
        nodes_visited: ctx.nodes.load(Ordering::Relaxed).min(ctx.max_nodes),
        atoms_tested: atoms,
        complete: !exhausted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumeration::enumerate_exhaustive;

    #[test]
    fn q2_product_is_the_two_color_pattern() {
        let r = enumerate(&SearchConfig::new(2, false, SearchMode::Product)).unwrap();
        let brackets: Vec<String> = r.stable.iter().map(|s| s.subject.bracket()).collect();
        assert_eq!(brackets, ["[a,b]"]);
    }

    #[test]
    fn pruned_search_matches_unpruned_oracle() {
        for q in 2..=6 {
            for signed in [false, true] {
                for mode in [SearchMode::Product, SearchMode::Inverse] {
                    for atoms in [AtomSource::AllSubsets, AtomSource::AdmissibleOnly] {
                        let mut cfg = SearchConfig::new(q, signed, mode).with_atoms(atoms);
                        cfg.prime_sign_gate = false;
                        let fast = enumerate(&cfg).unwrap();
                        let slow = enumerate_exhaustive(&cfg).unwrap();
                        assert_eq!(fast.stable, slow.stable, "q={q} signed={signed} {mode:?} {atoms:?}");
                    }
                }
            }
        }
    }

    #[test]
    fn prime_sign_gate_loses_nothing() {
        for q in [3, 5, 7, 11] {
            let mut cfg = SearchConfig::new(q, true, SearchMode::Inverse);
            let gated = enumerate(&cfg).unwrap();
            cfg.prime_sign_gate = false;
            assert_eq!(gated.stable, enumerate(&cfg).unwrap().stable, "q={q}");
        }
    }

    #[test]
    fn serial_and_parallel_agree() {
        let mut cfg = SearchConfig::new(8, true, SearchMode::Inverse);
        let par = enumerate(&cfg).unwrap();
        cfg.parallel = false;
        let ser = enumerate(&cfg).unwrap();
        assert_eq!(par, ser);
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let cfg = SearchConfig::new(12, false, SearchMode::Product).with_budget(10);
        let r = enumerate(&cfg).unwrap();
        assert!(!r.complete);
        assert!(r.nodes_visited <= 10);
        assert!(matches!(r.require_complete(10), Err(EnumError::BudgetExhausted { .. })));
        assert!(enumerate(&SearchConfig::new(1, false, SearchMode::Product)).is_err());
    }

    #[test]
    fn unit_images_are_permutations() {
        let ctx = Context::new(&SearchConfig::new(12, false, SearchMode::Product));
        for u in 0..ctx.unit_bytes.len() {
            assert_eq!(ctx.mul_unit(u, ctx.full), ctx.full);
            assert_eq!(ctx.mul_unit(u, 1), 1);
        }
    }
}
