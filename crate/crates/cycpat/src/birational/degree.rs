use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::{PolyField, MAX_LOG};
use super::recurrence::{fit_recurrence, DegreeSequence};
use super::BirationalError;
use crate::arith::{gcd, mod_pow};
use crate::modp::{prime_congruent_one, root_of_unity};
use crate::patterns::{classify, fourier_class_partition, Subject};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum MapKind {
    /// `K = I∘J`.
    K,
    /// `J` followed by the Fourier transform, for self-dual subjects; two
    /// half steps give `K` up to the relabelling `i ↦ -i`.
    HalfStep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeOptions {
    pub n_max: usize,
    pub seed: u64,
    pub kind: MapKind,
    /// Repeat the run modulo a second prime and require equal degrees.
    pub cross_check: bool,
    /// Bit length of the primes, in `MIN_PRIME_BITS..=MAX_PRIME_BITS`.
    pub prime_bits: u32,
}

pub const MIN_PRIME_BITS: u32 = 32;
pub const MAX_PRIME_BITS: u32 = 62;

impl DegreeOptions {
    pub fn new(n_max: usize, seed: u64) -> Self {
        DegreeOptions { n_max, seed, kind: MapKind::K, cross_check: true, prime_bits: MAX_PRIME_BITS }
    }
}

/// The linear maps of one iteration, reduced modulo `p`.
struct Step {
    field: PolyField,
    /// `forward[j][i]`: spectrum of class `i` at the representative of dual class `j`.
    forward: Vec<Vec<u64>>,
    /// `backward[l][j]`: `Σ_{k in dual class j} ±ω^{-e_l k}` with `e_l` the
    /// first position of class `l`.
    backward: Vec<Vec<u64>>,
}

struct DualClass {
    members: Vec<(usize, bool)>,
}

fn dual_classes(subject: &Subject) -> Vec<DualClass> {
    let mut classes: Vec<DualClass> = fourier_class_partition(subject)
        .signed
        .into_iter()
        .map(|c| {
            let mut members: Vec<(usize, bool)> =
                c.plus.iter().map(|&k| (k, false)).chain(c.minus.iter().map(|&k| (k, true))).collect();
            members.sort_unstable();
            DualClass { members }
        })
        .collect();
    classes.sort_by_key(|c| c.members[0].0);
    classes
}

impl Step {
    fn new(subject: &Subject, dual: &[DualClass], p: u64) -> Self {
        let q = subject.modulus();
        let field = PolyField::new(p);
        let m = field.m;
        let g = root_of_unity(p, q as u64);
        let w: Vec<u64> = (0..q).map(|e| m.to_mont(mod_pow(g, e as u64, p))).collect();
        let signed = |neg: bool, x: u64| if neg { m.neg(x) } else { x };
        let spectrum = |i: usize, k: usize| {
            let c = &subject.classes()[i];
            let s = c.plus.iter().fold(0, |s, &e| m.add(s, w[(e * k) % q]));
            c.minus.iter().fold(s, |s, &e| m.sub(s, w[(e * k) % q]))
        };
        let r = subject.rank();
        let forward = dual.iter().map(|d| (0..r).map(|i| spectrum(i, d.members[0].0)).collect()).collect();
        let backward = subject
            .classes()
            .iter()
            .map(|c| {
                let e = c.plus[0];
                dual.iter()
                    .map(|d| {
                        d.members.iter().fold(0, |acc, &(k, neg)| m.add(acc, signed(neg, w[(q - (e * k) % q) % q])))
                    })
                    .collect()
            })
            .collect();
        Step { field, forward, backward }
    }

    /// `out_i = Π_{j≠i} x_j`, the entrywise inverse up to a common factor.
    fn hadamard_inverse(&self, x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let f = &self.field;
        let r = x.len();
        let one = vec![f.m.one()];
        let mut prefix = vec![one.clone()];
        for xi in &x[..r - 1] {
            prefix.push(f.mul(prefix.last().expect("nonempty"), xi));
        }
        let mut out = vec![Vec::new(); r];
        let mut suffix = one;
        for i in (0..r).rev() {
            out[i] = f.mul(&prefix[i], &suffix);
            if i > 0 {
                suffix = f.mul(&suffix, &x[i]);
            }
        }
        out
    }

    fn linear(&self, mat: &[Vec<u64>], x: &[Vec<u64>]) -> Vec<Vec<u64>> {
        mat.iter()
            .map(|row| {
                let terms: Vec<(u64, &[u64])> = row.iter().zip(x).map(|(&c, xi)| (c, xi.as_slice())).collect();
                self.field.combine(&terms)
            })
            .collect()
    }

    /// Divides out the common factor of all coordinates, found as the gcd of
    /// two random combinations and confirmed by exact division.
    fn reduce(&self, x: Vec<Vec<u64>>, rng: &mut ChaCha8Rng) -> Vec<Vec<u64>> {
        let f = &self.field;
        let p = f.m.modulus();
        if x.len() == 1 {
            return if x[0].is_empty() { x } else { vec![vec![f.m.one()]] };
        }
        let mut combo = || {
            let terms: Vec<(u64, &[u64])> =
                x.iter().map(|xi| (f.m.to_mont(rng.gen_range(1..p)), xi.as_slice())).collect();
            f.combine(&terms)
        };
        let (a, b) = (combo(), combo());
        let mut g = f.gcd(&a, &b);
        loop {
            if g.len() <= 1 {
                return x;
            }
            let divided: Option<Vec<Vec<u64>>> = x
                .iter()
                .map(|xi| {
                    let (quo, rem) = f.div_rem(xi, &g);
                    rem.is_empty().then_some(quo)
                })
                .collect();
            match divided {
                Some(d) => return d,
                // unlucky combination: fall back to the full gcd
                None => g = x.iter().fold(Vec::new(), |acc, xi| f.gcd(&acc, xi)),
            }
        }
    }

    fn degree(x: &[Vec<u64>]) -> u64 {
        x.iter().map(|xi| xi.len().saturating_sub(1) as u64).max().unwrap_or(0)
    }

    fn run(&self, line: &[(u64, u64)], opts: &DegreeOptions) -> Result<Vec<u64>, BirationalError> {
        let m = self.field.m;
        let singular = || BirationalError::SingularLine { seed: opts.seed };
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ 0x9e37_79b9_7f4a_7c15);
        let mut x: Vec<Vec<u64>> =
            line.iter().map(|&(a, b)| PolyField::add(&self.field, &[m.to_mont(a)], &[0, m.to_mont(b)])).collect();
        let mut degrees = vec![Self::degree(&x)];
        for _ in 0..opts.n_max {
            if x.iter().any(Vec::is_empty) {
                return Err(singular());
            }
            let a = self.reduce(self.hadamard_inverse(&x), &mut rng);
            let y = self.linear(&self.forward, &a);
            if y.iter().any(Vec::is_empty) {
                return Err(singular());
            }
            // both linear maps are invertible, so they leave the content at 1
            x = match opts.kind {
                MapKind::HalfStep => y,
                MapKind::K => {
                    let z = self.reduce(self.hadamard_inverse(&y), &mut rng);
                    self.linear(&self.backward, &z)
                }
            };
            if x.iter().all(Vec::is_empty) {
                return Err(singular());
            }
            degrees.push(Self::degree(&x));
        }
        Ok(degrees)
    }
}

/// Degrees of the iterates of `K` (or of the half step) restricted to a
/// random line `A + t·B` in the color space, computed modulo a word-size prime.
/// Common factors are removed after every entrywise inverse.
pub fn degree_sequence_with(subject: &Subject, opts: &DegreeOptions) -> Result<DegreeSequence, BirationalError> {
    let report = classify(subject)?;
    if !report.is_stable() {
        return Err(BirationalError::Unstable(subject.bracket()));
    }
    if opts.kind == MapKind::HalfStep && report.dual.as_ref() != Some(subject) {
        return Err(BirationalError::NotSelfDual(subject.bracket()));
    }
    if !(MIN_PRIME_BITS..=MAX_PRIME_BITS).contains(&opts.prime_bits) {
        return Err(BirationalError::InvalidOption(format!(
            "prime bits must lie in {MIN_PRIME_BITS}..={MAX_PRIME_BITS}, got {}",
            opts.prime_bits
        )));
    }
    let q = subject.modulus() as u64;
    let dual = dual_classes(subject);
    let step_size = q / gcd(q, 1 << MAX_LOG) << MAX_LOG;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let line: Vec<(u64, u64)> =
        (0..subject.rank()).map(|_| (rng.gen_range(1..1u64 << 31), rng.gen_range(1..1u64 << 31))).collect();
    let p1 = prime_congruent_one(step_size, 1 << (opts.prime_bits - 1));
    let degrees = Step::new(subject, &dual, p1).run(&line, opts)?;
    let mut primes = vec![p1];
    if opts.cross_check {
        let p2 = prime_congruent_one(step_size, p1);
        if Step::new(subject, &dual, p2).run(&line, opts)? != degrees {
            return Err(BirationalError::UnluckyPrime { p1, p2 });
        }
        primes.push(p2);
    }
    let seq = DegreeSequence::new(subject.bracket(), subject.modulus(), opts.seed, primes, opts.kind, degrees);
    Ok(fit_recurrence(&seq).unwrap_or(seq))
}

/// [`degree_sequence_with`] for `K`, cross-checked with a second prime.
pub fn degree_sequence(subject: &Subject, n_max: usize, seed: u64) -> Result<DegreeSequence, BirationalError> {
    degree_sequence_with(subject, &DegreeOptions::new(n_max, seed))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn degrees(s: &str, n: usize, kind: MapKind) -> Vec<u64> {
        let opts = DegreeOptions { kind, ..DegreeOptions::new(n, 7) };
        degree_sequence_with(&Subject::parse(s).unwrap(), &opts).unwrap().degrees
    }

    #[test]
    fn known_small_sequences() {
        // full cyclic pattern, q=5
        assert_eq!(degrees("[a,b,c,d,e]", 3, MapKind::K), [1, 16, 136, 961]);
        // quadratic residues, q=7, half step and full map
        assert_eq!(degrees("[a,b,b,c,b,c,c]", 8, MapKind::HalfStep), [1, 2, 4, 7, 12, 20, 33, 54, 88]);
        // P1 is linear
        assert_eq!(degrees("[a,b,-b,b,-b,b]", 5, MapKind::K), [1; 6]);
        assert_eq!(degrees("[a,b,-b,b,c,b,-b,b]", 6, MapKind::K), [1, 4, 10, 22, 46, 94, 190]);
        // smaller primes give the same degrees
        let s = Subject::parse("[a,b,b,c,b,c,c]").unwrap();
        let opts = DegreeOptions { prime_bits: 40, ..DegreeOptions::new(5, 7) };
        assert_eq!(degree_sequence_with(&s, &opts).unwrap().degrees, [1, 4, 12, 33, 88, 232]);
    }

    #[test]
    fn rejects_unstable_and_non_self_dual() {
        let s = Subject::parse("[a,b,a,a]").unwrap();
        assert!(matches!(degree_sequence(&s, 3, 1), Err(BirationalError::Unstable(_))));
        let s = Subject::parse("[a,b,-b,b,c,b,-b,b]").unwrap();
        let opts = DegreeOptions { kind: MapKind::HalfStep, ..DegreeOptions::new(3, 1) };
        assert!(matches!(degree_sequence_with(&s, &opts), Err(BirationalError::NotSelfDual(_))));
        let opts = DegreeOptions { prime_bits: 63, ..DegreeOptions::new(3, 1) };
        assert!(matches!(degree_sequence_with(&s, &opts), Err(BirationalError::InvalidOption(_))));
    }
}
