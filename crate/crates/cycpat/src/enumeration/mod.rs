//! Exhaustive search for stable (signed-)patterns of `Z_q`.
//!
//! The search grows a partition class by class. Classes are always closed
//! under multiplication by units, partial collections are pruned with a
//! convenience test evaluated in a word-size prime field, and completed
//! partitions are classified exactly.

mod engine;
mod exhaustive;
mod golden;

use serde::Serialize;

use crate::patterns::{PatternError, StabilityClass, StabilityReport};

pub use engine::enumerate;
pub use exhaustive::{enumerate_exhaustive, signed_partition_count};
pub use golden::{
    diff_against, golden_diff, golden_entries, published_class_counts, published_product_counts, GoldenDiff,
    GoldenEntry, GoldenKind, PublishedCounts,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EnumError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("node budget of {max_nodes} exhausted after {found} stable subjects")]
    BudgetExhausted { max_nodes: u64, found: usize },
    #[error("no golden list for q={q} ({kind})")]
    MissingGolden { q: usize, kind: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Which stability property the search targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum SearchMode {
    /// Product-stable subjects only.
    Product,
    /// Every inverse-stable subject, product-stable ones included.
    Inverse,
}

/// Where candidate classes come from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AtomSource {
    /// Every subset, filtered by single-class convenience.
    AllSubsets,
    /// Unions of level pieces `d·i·H`, one per level at most.
    AdmissibleOnly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchConfig {
    pub q: usize,
    /// Also search signed-patterns.
    pub signed: bool,
    pub mode: SearchMode,
    pub atom_source: AtomSource,
    /// Search nodes allowed before giving up with a partial result.
    pub max_nodes: u64,
    /// Skip sign branching when `q` is prime (no signed-pattern is stable then).
    pub prime_sign_gate: bool,
    /// Explore top-level subtrees on the rayon pool.
    pub parallel: bool,
}

impl SearchConfig {
    pub fn new(q: usize, signed: bool, mode: SearchMode) -> Self {
        SearchConfig {
            q,
            signed,
            mode,
            atom_source: AtomSource::AdmissibleOnly,
            max_nodes: u64::MAX,
            prime_sign_gate: true,
            parallel: true,
        }
    }

    pub fn with_atoms(mut self, atom_source: AtomSource) -> Self {
        self.atom_source = atom_source;
        self
    }

    pub fn with_budget(mut self, max_nodes: u64) -> Self {
        self.max_nodes = max_nodes;
        self
    }

    pub fn validate(&self) -> Result<(), EnumError> {
        if self.q < 2 || self.q > 64 {
            return Err(EnumError::InvalidConfig(format!("q={} outside 2..=64", self.q)));
        }
        if self.max_nodes == 0 {
            return Err(EnumError::InvalidConfig("max_nodes must be positive".into()));
        }
        Ok(())
    }
}

/// Tally in the layout of the published census tables.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ClassCounts {
    pub product_pattern: usize,
    pub product_signed: usize,
    pub inverse_pattern: usize,
    pub inverse_signed: usize,
    pub total: usize,
}

impl ClassCounts {
    pub fn tally<'a>(reports: impl IntoIterator<Item = &'a StabilityReport>) -> Self {
        let mut c = ClassCounts::default();
        for r in reports {
            let signed = r.subject.is_signed();
            match (r.klass, signed) {
                (StabilityClass::ProductStable, false) => c.product_pattern += 1,
                (StabilityClass::ProductStable, true) => c.product_signed += 1,
                (StabilityClass::InverseStableOnly, false) => c.inverse_pattern += 1,
                (StabilityClass::InverseStableOnly, true) => c.inverse_signed += 1,
                (StabilityClass::Unstable, _) => continue,
            }
            c.total += 1;
        }
        c
    }

    pub fn as_tuple(&self) -> (usize, usize, usize, usize, usize) {
        (self.product_pattern, self.product_signed, self.inverse_pattern, self.inverse_signed, self.total)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnumerationResult {
    pub q: usize,
    /// Sorted by canonical form.
    pub stable: Vec<StabilityReport>,
    pub counts: ClassCounts,
    pub nodes_visited: u64,
    pub atoms_tested: u64,
    /// False when the node budget ran out.
    pub complete: bool,
}

impl EnumerationResult {
    /// The result itself, or an error if the budget ran out.
    pub fn require_complete(self, max_nodes: u64) -> Result<Self, EnumError> {
        if self.complete {
            Ok(self)
        } else {
            Err(EnumError::BudgetExhausted { max_nodes, found: self.stable.len() })
        }
    }
}

/// Number of product-stable unsigned patterns of `Z_q`.
pub fn count_product_stable(q: usize, max_nodes: u64) -> Result<usize, EnumError> {
    let cfg = SearchConfig::new(q, false, SearchMode::Product).with_budget(max_nodes);
    Ok(enumerate(&cfg)?.require_complete(max_nodes)?.counts.product_pattern)
}
