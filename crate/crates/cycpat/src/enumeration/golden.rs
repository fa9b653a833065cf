use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{enumerate, ClassCounts, EnumError, SearchConfig, SearchMode};
use crate::patterns::{StabilityClass, StabilityReport, Subject};

const Q8_ALL: &str = include_str!("../../data/golden/q8_all.txt");
const Q25_PRODUCT: &str = include_str!("../../data/golden/q25_product.txt");
const TABLES: &str = include_str!("../../data/golden/tables.txt");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum GoldenKind {
    /// Every stable pattern and signed-pattern.
    All,
    /// Product-stable patterns only.
    Product,
}

impl fmt::Display for GoldenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GoldenKind::All => "all",
            GoldenKind::Product => "product",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenEntry {
    pub label: usize,
    pub subject: Subject,
    pub klass: StabilityClass,
    pub dual: Option<Subject>,
}

fn parse_file(text: &str) -> Result<Vec<GoldenEntry>, EnumError> {
    let mut out = Vec::new();
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = || EnumError::InvalidConfig(format!("malformed golden line {line:?}"));
        let [label, bracket, klass, dual] = fields[..] else { return Err(bad()) };
        let klass = match klass {
            "ProductStable" => StabilityClass::ProductStable,
            "InverseStableOnly" => StabilityClass::InverseStableOnly,
            _ => return Err(bad()),
        };
        out.push(GoldenEntry {
            label: label.parse().map_err(|_| bad())?,
            subject: Subject::parse(bracket)?,
            klass,
            dual: if dual == "-" { None } else { Some(Subject::parse(dual)?) },
        });
    }
    Ok(out)
}

/// The shipped reference list for `(q, kind)`.
pub fn golden_entries(q: usize, kind: GoldenKind) -> Result<Vec<GoldenEntry>, EnumError> {
    match (q, kind) {
        (8, GoldenKind::All) => parse_file(Q8_ALL),
        (25, GoldenKind::Product) => parse_file(Q25_PRODUCT),
        _ => Err(EnumError::MissingGolden { q, kind: kind.to_string() }),
    }
}

/// One column of the published small-`q` table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PublishedCounts {
    pub q: usize,
    pub tested: u64,
    pub counts: ClassCounts,
}

fn table_lines(kind: &str) -> impl Iterator<Item = Vec<u64>> + '_ {
    TABLES
        .lines()
        .filter(move |l| l.split('\t').next() == Some(kind))
        .map(|l| l.split('\t').skip(1).map(|x| x.parse().expect("numeric table field")).collect())
}

/// Per-class counts for `q = 2..=8`, as printed.
pub fn published_class_counts() -> Vec<PublishedCounts> {
    table_lines("first")
        .map(|v| PublishedCounts {
            q: v[0] as usize,
            tested: v[1],
            counts: ClassCounts {
                product_pattern: v[2] as usize,
                product_signed: v[3] as usize,
                inverse_pattern: v[4] as usize,
                inverse_signed: v[5] as usize,
                total: v[6] as usize,
            },
        })
        .collect()
}

/// `(q, product-stable pattern count)` for `q ≥ 9`, as printed.
pub fn published_product_counts() -> Vec<(usize, usize)> {
    table_lines("second").map(|v| (v[0] as usize, v[1] as usize)).collect()
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct GoldenDiff {
    pub expected: usize,
    pub found: usize,
    /// Golden brackets the search did not produce.
    pub missing: Vec<String>,
    /// Produced brackets absent from the golden list.
    pub unexpected: Vec<String>,
    /// `bracket: golden class vs found class`.
    pub class_mismatches: Vec<String>,
    /// `bracket: golden dual vs found dual`.
    pub dual_mismatches: Vec<String>,
}

impl GoldenDiff {
    pub fn len(&self) -> usize {
        self.missing.len() + self.unexpected.len() + self.class_mismatches.len() + self.dual_mismatches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Compares a golden list with search output, by canonical form.
pub fn diff_against(golden: &[GoldenEntry], found: &[StabilityReport]) -> GoldenDiff {
    let found_map: BTreeMap<&Subject, &StabilityReport> = found.iter().map(|r| (&r.subject, r)).collect();
    let golden_map: BTreeMap<&Subject, &GoldenEntry> = golden.iter().map(|g| (&g.subject, g)).collect();
    let mut diff = GoldenDiff { expected: golden.len(), found: found.len(), ..Default::default() };
    for (s, g) in &golden_map {
        let Some(r) = found_map.get(s) else {
            diff.missing.push(s.bracket());
            continue;
        };
        if r.klass != g.klass {
            diff.class_mismatches.push(format!("{}: {} vs {}", s.bracket(), g.klass.name(), r.klass.name()));
        }
        if let Some(gd) = &g.dual {
            if r.dual.as_ref() != Some(gd) {
                let fd = r.dual.as_ref().map_or("-".to_string(), Subject::bracket);
                diff.dual_mismatches.push(format!("{}: {} vs {}", s.bracket(), gd.bracket(), fd));
            }
        }
    }
    diff.unexpected = found_map.keys().filter(|s| !golden_map.contains_key(*s)).map(|s| s.bracket()).collect();
    diff
}

/// Runs the search matching `(q, kind)` and diffs it against the golden list.
pub fn golden_diff(q: usize, kind: GoldenKind) -> Result<GoldenDiff, EnumError> {
    let golden = golden_entries(q, kind)?;
    let cfg = match kind {
        GoldenKind::All => SearchConfig::new(q, true, SearchMode::Inverse),
        GoldenKind::Product => SearchConfig::new(q, false, SearchMode::Product),
    };
    let result = enumerate(&cfg)?;
    Ok(diff_against(&golden, &result.stable))
}
