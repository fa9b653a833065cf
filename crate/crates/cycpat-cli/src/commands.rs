use std::fs::File;
use std::io::{BufWriter, Write};

use serde::Serialize;
use serde_json::{json, Value};

use cycpat::birational::{degree_sequence_with, BirationalError, DegreeOptions, MapKind};
use cycpat::closed_forms::{
    family_subject, monocolor_search, prime_pattern_census, prime_square_patterns, quadratic_residue_pattern,
    subgroup_class_pattern, two_prime_pattern, ClosedFormError, FamilyId, MONOCOLOR_MAX_Q,
};
use cycpat::enumeration::{enumerate, AtomSource, ClassCounts, EnumError, SearchConfig, SearchMode};
use cycpat::patterns::{classify, subgroups_of_units, PatternError, StabilityClass, StabilityReport, Subject};

use crate::verify::{run_suite, Check};
use crate::{exit, AtomsArg, CliError, Command, FamilyArg, Format, ModeArg};

impl From<PatternError> for CliError {
    fn from(e: PatternError) -> Self {
        match e {
            PatternError::Parse { .. }
            | PatternError::NotAPartition(_)
            | PatternError::OverlappingSets { .. }
            | PatternError::NotAUnit { .. }
            | PatternError::UnexpectedSigns(_)
            | PatternError::AllEqualPattern => CliError::Usage(e.to_string()),
            PatternError::GenericallySingular { .. } | PatternError::Unstable(_) => CliError::Failed(e.to_string()),
        }
    }
}

impl From<EnumError> for CliError {
    fn from(e: EnumError) -> Self {
        match e {
            EnumError::InvalidConfig(_) => CliError::Usage(e.to_string()),
            EnumError::BudgetExhausted { max_nodes, found } => CliError::Budget { max_nodes, found },
            EnumError::Pattern(p) => p.into(),
            EnumError::MissingGolden { .. } => CliError::Failed(e.to_string()),
        }
    }
}

impl From<ClosedFormError> for CliError {
    fn from(e: ClosedFormError) -> Self {
        match e {
            ClosedFormError::Pattern(p) => p.into(),
            ClosedFormError::Enumeration(en) => en.into(),
            other => CliError::Usage(other.to_string()),
        }
    }
}

impl From<BirationalError> for CliError {
    fn from(e: BirationalError) -> Self {
        match e {
            BirationalError::Pattern(p) => p.into(),
            BirationalError::Family(f) => f.into(),
            BirationalError::Unstable(_) | BirationalError::NotSelfDual(_) | BirationalError::InvalidOption(_) => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Failed(other.to_string()),
        }
    }
}

fn parse_subject(q: usize, text: &str) -> Result<Subject, CliError> {
    let s = Subject::parse(text)?;
    if s.modulus() != q {
        return Err(CliError::Usage(format!("{text} has {} positions, expected q={q}", s.modulus())));
    }
    Ok(s)
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), CliError> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

pub(crate) fn dispatch(command: Command, out: &mut dyn Write) -> Result<u8, CliError> {
    match command {
        Command::Enumerate { q, signed, mode, atoms, format, out: path, max_nodes } => {
            let args = EnumerateArgs { q, signed, mode, atoms, format, max_nodes };
            match path {
                Some(p) => {
                    let mut file = BufWriter::new(File::create(&p)?);
                    let code = run_enumerate(&args, &mut file);
                    file.flush()?;
                    code
                }
                None => run_enumerate(&args, out),
            }
        }
        Command::Classify { q, pattern } => {
            let report = classify(&parse_subject(q, &pattern)?)?;
            write_json(out, &report)?;
            Ok(exit::SUCCESS)
        }
        Command::Dual { q, pattern } => {
            let subject = parse_subject(q, &pattern)?;
            match classify(&subject)?.dual {
                Some(d) => {
                    writeln!(out, "{}", d.bracket())?;
                    Ok(exit::SUCCESS)
                }
                None => Err(CliError::Failed(format!("{pattern} is not stable and has no dual"))),
            }
        }
        Command::Families { family, q, p, p1, p2 } => {
            write_json(out, &family_members(family, q, p, p1, p2)?)?;
            Ok(exit::SUCCESS)
        }
        Command::Complexity { q, pattern, iters, seed, prime_bits, half_step } => {
            let subject = parse_subject(q, &pattern)?;
            let kind = if half_step { MapKind::HalfStep } else { MapKind::K };
            let opts = DegreeOptions { kind, prime_bits, ..DegreeOptions::new(iters, seed) };
            write_json(out, &degree_sequence_with(&subject, &opts)?)?;
            Ok(exit::SUCCESS)
        }
        Command::Verify { suite, format } => {
            let checks = run_suite(suite);
            print_checks(&checks, format, out)?;
            Ok(if checks.iter().all(|c| c.passed) { exit::SUCCESS } else { exit::VERIFICATION_FAILED })
        }
        Command::Census { q } => {
            let c = prime_pattern_census(q)?;
            write_json(
                out,
                &json!({
                    "q": c.q,
                    "constructed": c.constructed.iter().map(|p| p.subject().bracket()).collect::<Vec<_>>(),
                    "constructed_count": c.constructed.len(),
                    "formula": c.formula,
                    "enumerated": c.enumerated,
                    "formula_minus_enumerated": c.formula as i64 - c.enumerated as i64,
                }),
            )?;
            Ok(exit::SUCCESS)
        }
    }
}

struct EnumerateArgs {
    q: usize,
    signed: bool,
    mode: ModeArg,
    atoms: AtomsArg,
    format: Format,
    max_nodes: Option<u64>,
}

#[derive(Serialize)]
struct EnumerateOutput<'a> {
    q: usize,
    signed: bool,
    mode: &'static str,
    atoms: &'static str,
    complete: bool,
    nodes_visited: u64,
    counts: ClassCounts,
    stable: Vec<&'a StabilityReport>,
}

fn run_enumerate(args: &EnumerateArgs, out: &mut dyn Write) -> Result<u8, CliError> {
    let search_mode = if args.mode == ModeArg::Product { SearchMode::Product } else { SearchMode::Inverse };
    let mut cfg = SearchConfig::new(args.q, args.signed, search_mode).with_atoms(match args.atoms {
        AtomsArg::All => AtomSource::AllSubsets,
        AtomsArg::Admissible => AtomSource::AdmissibleOnly,
    });
    if let Some(k) = args.max_nodes {
        // a budget cut is only reproducible on a single thread
        cfg = cfg.with_budget(k);
        cfg.parallel = false;
    }
    let result = enumerate(&cfg)?;
    let stable: Vec<&StabilityReport> = result
        .stable
        .iter()
        .filter(|r| args.mode != ModeArg::Inverse || r.klass == StabilityClass::InverseStableOnly)
        .collect();
    let counts = ClassCounts::tally(stable.iter().copied());
    let mode = match args.mode {
        ModeArg::Product => "product",
        ModeArg::Inverse => "inverse",
        ModeArg::All => "all",
    };
    let atoms = if args.atoms == AtomsArg::All { "all" } else { "admissible" };
    match args.format {
        Format::Json => write_json(
            out,
            &EnumerateOutput {
                q: args.q,
                signed: args.signed,
                mode,
                atoms,
                complete: result.complete,
                nodes_visited: result.nodes_visited,
                counts,
                stable: stable.clone(),
            },
        )?,
        Format::Table => {
            writeln!(out, "# q={} signed={} mode={mode} atoms={atoms}", args.q, args.signed)?;
            for (i, r) in stable.iter().enumerate() {
                let dual = r.dual.as_ref().map_or("-".to_string(), Subject::bracket);
                writeln!(out, "{}\t{}\t{}\t{}", i + 1, r.subject.bracket(), r.klass.name(), dual)?;
            }
            writeln!(
                out,
                "# product patterns {}, product signed {}, inverse-only patterns {}, inverse-only signed {}, total {}",
                counts.product_pattern,
                counts.product_signed,
                counts.inverse_pattern,
                counts.inverse_signed,
                counts.total
            )?;
            let status = if result.complete { "complete" } else { "incomplete" };
            writeln!(out, "# nodes visited {}, {status}", result.nodes_visited)?;
        }
    }
    if !result.complete {
        return Err(CliError::Budget { max_nodes: cfg.max_nodes, found: stable.len() });
    }
    Ok(exit::SUCCESS)
}

#[derive(Serialize)]
struct FamilyMember {
    family: &'static str,
    q: usize,
    subject: Subject,
    class: StabilityClass,
    dual: Option<Subject>,
    #[serde(skip_serializing_if = "Value::is_null")]
    detail: Value,
}

fn member(family: &'static str, subject: Subject, detail: Value) -> Result<FamilyMember, CliError> {
    let report = classify(&subject)?;
    Ok(FamilyMember { family, q: subject.modulus(), subject, class: report.klass, dual: report.dual, detail })
}

fn require<T>(value: Option<T>, flag: &str, family: &str) -> Result<T, CliError> {
    value.ok_or_else(|| CliError::Usage(format!("--{flag} is required for --family {family}")))
}

fn family_members(
    family: FamilyArg,
    q: Option<usize>,
    p: Option<u64>,
    p1: Option<u64>,
    p2: Option<u64>,
) -> Result<Vec<FamilyMember>, CliError> {
    let even = |id: FamilyId| -> Result<Vec<FamilyMember>, CliError> {
        let q = require(q, "q", id.name())?;
        Ok(vec![member(id.name(), family_subject(id, q)?, Value::Null)?])
    };
    match family {
        FamilyArg::P1 => even(FamilyId::P1),
        FamilyArg::P2 => even(FamilyId::P2),
        FamilyArg::P3 => even(FamilyId::P3),
        FamilyArg::Q1 => even(FamilyId::Q1),
        FamilyArg::Q2 => even(FamilyId::Q2),
        FamilyArg::Q3 => even(FamilyId::Q3),
        FamilyArg::Qr => {
            let q = require(q, "q", "qr")?;
            let qr = quadratic_residue_pattern(q as u64)?;
            let detail = json!({
                "residues": qr.residues,
                "non_residues": qr.non_residues,
                "epsilon_squared": qr.epsilon_squared,
                "identities_hold": qr.identities_hold(),
            });
            Ok(vec![member("qr", qr.pattern.into_subject(), detail)?])
        }
        FamilyArg::Prime => {
            let q = require(q, "q", "prime")?;
            if !cycpat::arith::is_prime(q as u64) {
                return Err(CliError::Usage(format!("{q} is not prime")));
            }
            let mut seen = std::collections::BTreeSet::new();
            let mut members = Vec::new();
            for h in subgroups_of_units(q) {
                let pattern = subgroup_class_pattern(q, &h)?;
                if seen.insert(pattern.clone()) {
                    members.push(member("prime", pattern.into_subject(), json!({ "subgroup": h }))?);
                }
            }
            Ok(members)
        }
        FamilyArg::PrimeSquare => {
            let p = match (p, q) {
                (Some(p), _) => p,
                (None, Some(q)) => (1..=q as u64)
                    .find(|p| p * p == q as u64)
                    .ok_or_else(|| CliError::Usage(format!("q={q} is not a square; pass --p")))?,
                (None, None) => return Err(CliError::Usage("--p or --q is required for --family prime-square".into())),
            };
            prime_square_patterns(p)?
                .into_iter()
                .map(|pat| member("prime-square", pat.into_subject(), Value::Null))
                .collect()
        }
        FamilyArg::TwoPrimes => {
            let a = require(p1, "p1", "two-primes")?;
            let b = require(p2, "p2", "two-primes")?;
            Ok(vec![member("two-primes", two_prime_pattern(a, b)?.into_subject(), Value::Null)?])
        }
        FamilyArg::Monocolor => {
            let q = require(q, "q", "monocolor")?;
            if q > MONOCOLOR_MAX_Q {
                return Err(CliError::Usage(format!("q={q} exceeds the monocolor search limit {MONOCOLOR_MAX_Q}")));
            }
            monocolor_search(q)?
                .into_iter()
                .map(|s| {
                    let detail = json!({ "signs": s.signs, "square_factor": s.square_factor, "orbit": s.orbit });
                    member("monocolor", s.pattern.into_subject(), detail)
                })
                .collect()
        }
    }
}

fn print_checks(checks: &[Check], format: Format, out: &mut dyn Write) -> Result<(), CliError> {
    match format {
        Format::Json => write_json(out, &checks)?,
        Format::Table => {
            for c in checks {
                writeln!(out, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
                for line in &c.diff {
                    writeln!(out, "    {line}")?;
                }
            }
            let failed = checks.iter().filter(|c| !c.passed).count();
            writeln!(out, "{} checks, {} failed", checks.len(), failed)?;
        }
    }
    Ok(())
}
