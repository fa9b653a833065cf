use std::collections::BTreeSet;

use clap::ValueEnum;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cycpat::birational::{
    apply_k, degree_sequence_with, delta_invariant, family_map_data, random_point, BirationalError, ColorPoint,
    DegreeOptions, MapKind,
};
use cycpat::closed_forms::{
    family_subject, monocolor_search, prime_square_patterns, quadratic_residue_pattern, FamilyId,
};
use cycpat::cyclotomic::verify_gauss_sum;
use cycpat::enumeration::{
    count_product_stable, enumerate, golden_diff, golden_entries, published_class_counts, published_product_counts,
    signed_partition_count, GoldenDiff, GoldenKind, SearchConfig, SearchMode,
};
use cycpat::patterns::{classify, StabilityClass, Subject};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Tables,
    Q8,
    Q25,
    Monocolor,
    Families,
    Gauss,
    Invariant,
    All,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    pub name: String,
    pub passed: bool,
    pub detail: String,
    pub diff: Vec<String>,
}

fn check(suite: &'static str, name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
    Check { suite, name: name.into(), passed, detail: detail.into(), diff: Vec::new() }
}

fn error_check(suite: &'static str, name: impl Into<String>, e: impl std::fmt::Display) -> Check {
    check(suite, name, false, format!("error: {e}"))
}

/// Largest `q` of the second table checked by `verify`.
const TABLE_TWO_MAX_Q: usize = 16;

pub fn run_suite(suite: Suite) -> Vec<Check> {
    match suite {
        Suite::Tables => tables(),
        Suite::Q8 => q8(),
        Suite::Q25 => q25(),
        Suite::Monocolor => monocolor(),
        Suite::Families => families(),
        Suite::Gauss => gauss(),
        Suite::Invariant => invariant(),
        Suite::All => {
            [Suite::Tables, Suite::Q8, Suite::Q25, Suite::Monocolor, Suite::Families, Suite::Gauss, Suite::Invariant]
                .into_iter()
                .flat_map(run_suite)
                .collect()
        }
    }
}

fn tables() -> Vec<Check> {
    let mut out = Vec::new();
    for row in published_class_counts() {
        let name = format!("class counts q={}", row.q);
        match enumerate(&SearchConfig::new(row.q, true, SearchMode::Inverse)) {
            Ok(r) => {
                let found = r.counts.as_tuple();
                let published = row.counts.as_tuple();
                let tested = signed_partition_count(row.q);
                let passed = found == published && tested == u128::from(row.tested);
                out.push(check(
                    "tables",
                    name,
                    passed,
                    format!("found {found:?} tested {tested}, published {published:?} tested {}", row.tested),
                ));
            }
            Err(e) => out.push(error_check("tables", name, e)),
        }
    }
    for (q, published) in published_product_counts().into_iter().filter(|&(q, _)| q <= TABLE_TWO_MAX_Q) {
        let name = format!("product-stable count q={q}");
        match count_product_stable(q, u64::MAX) {
            Ok(found) => {
                out.push(check("tables", name, found == published, format!("found {found}, published {published}")))
            }
            Err(e) => out.push(error_check("tables", name, e)),
        }
    }
    out
}

fn diff_check(suite: &'static str, name: &str, diff: Result<GoldenDiff, impl std::fmt::Display>) -> Check {
    match diff {
        Ok(d) => {
            let mut c = check(
                suite,
                name,
                d.is_empty(),
                format!(
                    "{}/{} entries and dual arrows matched, {} found",
                    d.expected - d.missing.len(),
                    d.expected,
                    d.found
                ),
            );
            c.diff.extend(d.missing.iter().map(|s| format!("missing {s}")));
            c.diff.extend(d.unexpected.iter().map(|s| format!("unexpected {s}")));
            c.diff.extend(d.class_mismatches.iter().map(|s| format!("class {s}")));
            c.diff.extend(d.dual_mismatches.iter().map(|s| format!("dual {s}")));
            c
        }
        Err(e) => error_check(suite, name, e),
    }
}

fn q8() -> Vec<Check> {
    let mut out = vec![diff_check("q8", "q=8 reference list", golden_diff(8, GoldenKind::All))];
    let pairs = [("[a,a,a,a,b,a,a,a]", "[a,b,-b,b,-b,b,-b,b]")];
    for (s, d) in pairs {
        let found = Subject::parse(s).map_err(|e| e.to_string()).and_then(|s| classify(&s).map_err(|e| e.to_string()));
        out.push(match found {
            Ok(r) => {
                let dual = r.dual.map_or("-".into(), |d| d.bracket());
                check("q8", format!("dual of {s}"), dual == d, format!("{} {dual}", r.klass.name()))
            }
            Err(e) => error_check("q8", format!("dual of {s}"), e),
        });
    }
    out
}

fn q25() -> Vec<Check> {
    let mut out = vec![diff_check("q25", "q=25 reference list", golden_diff(25, GoldenKind::Product))];
    let constructed = prime_square_patterns(5).map_err(|e| e.to_string());
    let golden = golden_entries(25, GoldenKind::Product).map_err(|e| e.to_string());
    out.push(match (constructed, golden) {
        (Ok(c), Ok(g)) => {
            let c: BTreeSet<Subject> = c.into_iter().map(|p| p.into_subject()).collect();
            let g: BTreeSet<Subject> = g.into_iter().map(|e| e.subject).collect();
            let mut k = check(
                "q25",
                "closed-form construction p=5",
                c == g,
                format!("{} constructed, {} listed", c.len(), g.len()),
            );
            k.diff.extend(c.symmetric_difference(&g).map(Subject::bracket));
            k
        }
        (Err(e), _) | (_, Err(e)) => error_check("q25", "closed-form construction p=5", e),
    });
    out
}

fn monocolor() -> Vec<Check> {
    let mut with_solutions = Vec::new();
    let mut q4_ok = false;
    for q in 1..=20 {
        match monocolor_search(q) {
            Ok(sols) if !sols.is_empty() => {
                if q == 4 {
                    q4_ok =
                        sols.iter().any(|s| s.pattern.subject().bracket() == "[a,-a,-a,-a]" && s.square_factor == 4);
                }
                with_solutions.push(q);
            }
            Ok(_) => {}
            Err(e) => return vec![error_check("monocolor", format!("search q={q}"), e)],
        }
    }
    vec![
        check(
            "monocolor",
            "solutions for q in 1..=20",
            with_solutions == [1, 4],
            format!("found at {with_solutions:?}"),
        ),
        check("monocolor", "q=4 contains [a,-a,-a,-a] with square 4·Id", q4_ok, if q4_ok { "yes" } else { "no" }),
    ]
}

fn families() -> Vec<Check> {
    let mut out = Vec::new();
    for q in (4..=12).step_by(2) {
        for (p, qq) in [(FamilyId::P1, FamilyId::Q1), (FamilyId::P2, FamilyId::Q2), (FamilyId::P3, FamilyId::Q3)] {
            let name = format!("{}/{} q={q}", p.name(), qq.name());
            let result = (|| -> Result<(bool, String), String> {
                let ps = family_subject(p, q).map_err(|e| e.to_string())?;
                let qs = family_subject(qq, q).map_err(|e| e.to_string())?;
                let pr = classify(&ps).map_err(|e| e.to_string())?;
                let qr = classify(&qs).map_err(|e| e.to_string())?;
                let ok = pr.klass == StabilityClass::ProductStable && qr.is_stable() && pr.dual.as_ref() == Some(&qs);
                Ok((
                    ok,
                    format!("{} {} -> {}", ps.bracket(), pr.klass.name(), pr.dual.map_or("-".into(), |d| d.bracket())),
                ))
            })();
            out.push(match result {
                Ok((ok, detail)) => check("families", name, ok, detail),
                Err(e) => error_check("families", name, e),
            });
        }
    }
    for q in [6, 8] {
        for f in [FamilyId::P1, FamilyId::Q1, FamilyId::P2, FamilyId::Q2] {
            let name = format!("composition rule {} q={q}", f.name());
            out.push(match family_map_data(f, q) {
                Ok(d) => check("families", name, d.verify_rule(100, 7), format!("K = {}", d.composition_rule)),
                Err(e @ BirationalError::NoCompositionMatches { .. }) => check("families", name, false, e.to_string()),
                Err(e) => error_check("families", name, e),
            });
        }
        for f in [FamilyId::P2, FamilyId::Q2] {
            let name = format!("degree growth {} q={q}", f.name());
            let seq = family_subject(f, q)
                .map_err(BirationalError::from)
                .and_then(|s| degree_sequence_with(&s, &DegreeOptions::new(8, 1)));
            out.push(match seq {
                Ok(s) => check(
                    "families",
                    name,
                    s.denominator() == Some(&[1, -3, 2][..]) && s.delta == Some(2.0),
                    format!("degrees {:?}, genfun {:?}", s.degrees, s.genfun),
                ),
                Err(e) => error_check("families", name, e),
            });
        }
    }
    out
}

fn gauss() -> Vec<Check> {
    [3, 4, 5, 7, 8, 13]
        .into_iter()
        .map(|q| {
            let g = verify_gauss_sum(q, 1e-9);
            check(
                "gauss",
                format!("Gauss sum q={q}"),
                g.passed(),
                format!(
                    "{:?}: square exact {}, numeric ({:.9}, {:.9})",
                    g.case, g.square_exact, g.numeric.0, g.numeric.1
                ),
            )
        })
        .collect()
}

fn delta_of(p: &ColorPoint, q: u64) -> Result<num_rational::BigRational, BirationalError> {
    delta_invariant(&(&p.values[1] / &p.values[0]), &(&p.values[2] / &p.values[0]), q)
}

fn invariant() -> Vec<Check> {
    let mut out = Vec::new();
    for q in [5u64, 13] {
        let name = format!("invariant under K, q={q}");
        let result = (|| -> Result<usize, BirationalError> {
            let subject = quadratic_residue_pattern(q)?.pattern.into_subject();
            let mut rng = ChaCha8Rng::seed_from_u64(q);
            let mut held = 0;
            let mut tried = 0;
            while tried < 10 {
                let p = random_point(&subject, &mut rng);
                let (Ok(k), Ok(before)) = (apply_k(&p), delta_of(&p, q)) else { continue };
                let Ok(after) = delta_of(&k, q) else { continue };
                tried += 1;
                held += usize::from(before == after);
            }
            Ok(held)
        })();
        out.push(match result {
            Ok(held) => check("invariant", name, held == 10, format!("{held}/10 random points")),
            Err(e) => error_check("invariant", name, e),
        });
    }
    let runs = [
        ("[a,b,c,c,b]", MapKind::K, 14, "polynomial growth, q=5 residues"),
        ("[a,b,b,c,b,c,c]", MapKind::HalfStep, 12, "half step, q=7 residues"),
    ];
    for (s, kind, n, name) in runs {
        let seq = Subject::parse(s)
            .map_err(BirationalError::from)
            .and_then(|subject| degree_sequence_with(&subject, &DegreeOptions { kind, ..DegreeOptions::new(n, 1) }));
        out.push(match seq {
            Ok(d) => {
                let ok = match kind {
                    MapKind::K => d.integrable == Some(true),
                    MapKind::HalfStep => {
                        d.denominator_divisible_by(&[1, -1, -1])
                            && d.delta.is_some_and(|x| (x - (1.0 + 5f64.sqrt()) / 2.0).abs() < 1e-3)
                    }
                };
                check(
                    "invariant",
                    name,
                    ok,
                    format!("degrees {:?}, genfun {:?}, delta {:?}", d.degrees, d.genfun, d.delta),
                )
            }
            Err(e) => error_check("invariant", name, e),
        });
    }
    out
}
