//! Command-line surface and dispatch.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use trusskit_core::commutator::{
    build_huq_smith_example, near_truss_commutators, smith_commutator_heap,
    smith_commutator_oracle_heap, smith_commutator_oracle_near_truss,
};
use trusskit_core::derivation::{enumerate_derivations, inner_derivation};
use trusskit_core::group::GroupView;
use trusskit_core::heap::{validate_ternary, Level};
use trusskit_core::ideal::validate_jring_tables;
use trusskit_core::semidirect::{
    check_semidirect_conditions, direct_product_conditions, enumerate_idempotents,
    outer_semidirect, Algebra,
};
use trusskit_core::subobject::{enumerate_congruences, enumerate_subheaps, Partition, Subset};
use trusskit_core::truss::{
    embed_in_mx, validate_near_truss, validate_truss, MapAlgebra, NearTruss, Side, SkewBrace,
};
use trusskit_core::{Endomap, Limits, ValidationReport, Violation};

use crate::action::parse_action;
use crate::format::{parse_algebra, serialize_algebra, AlgebraFile, Kind};
use crate::report::{CommandReport, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Parser, Debug)]
#[command(
    name = "trusskit",
    about = "Finite heaps and trusses as operation tables: validation and derived objects",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Report format.
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Cap for exhaustive scans and enumerations.
    #[arg(long, global = true, value_name = "INT")]
    pub max_n: Option<usize>,
    /// Seed for sampled (non-exhaustive) self-map checks.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Validate the axioms of an algebra file, optionally viewed as another
    /// kind.
    Validate {
        file: PathBuf,
        #[arg(long = "as", value_name = "KIND")]
        as_kind: Option<String>,
    },
    /// The retract group of a heap at a base element.
    Retract {
        file: PathBuf,
        #[arg(short = 'e', value_name = "INT")]
        base: usize,
    },
    /// All subheaps, or only the normal ones.
    Subheaps {
        file: PathBuf,
        #[arg(long)]
        normal: bool,
    },
    /// All congruences.
    Congruences { file: PathBuf },
    /// Smith commutator of two congruences.
    Commutator {
        file: PathBuf,
        #[arg(short = 'R', value_name = "PARTITION")]
        r: String,
        #[arg(short = 'S', value_name = "PARTITION")]
        s: String,
        /// Cross-check against the smallest-congruence lattice search.
        #[arg(long)]
        oracle: bool,
        #[arg(short = 'e', value_name = "INT", default_value_t = 0)]
        base: usize,
    },
    /// Smith and Huq commutator ideals of two ideals of a near-truss, or the
    /// M^3 example built from a group file.
    HuqSmith {
        file: Option<PathBuf>,
        #[arg(long)]
        example: bool,
        #[arg(short = 'M', value_name = "GROUP_FILE")]
        m_file: Option<PathBuf>,
        #[arg(short = 'K', value_name = "SUBSET")]
        k: Option<String>,
        #[arg(short = 'A', value_name = "SUBSET")]
        a: Option<String>,
        #[arg(short = 'B', value_name = "SUBSET")]
        b: Option<String>,
        #[arg(short = 'e', value_name = "INT")]
        base: Option<usize>,
    },
    /// All idempotent endomorphisms.
    Idempotents { file: PathBuf },
    /// Semidirect decompositions.
    Semidirect {
        #[command(subcommand)]
        sub: SemidirectCommand,
    },
    /// Direct-product criteria for a semidirect decomposition.
    DirectCheck {
        file: PathBuf,
        #[arg(short = 'Y', value_name = "SUBSET")]
        section: String,
        #[arg(short = 'w', value_name = "PARTITION")]
        omega: String,
        #[arg(short = 'e', value_name = "INT")]
        base: usize,
    },
    /// All derivations of a truss; optionally one inner derivation.
    Derivations {
        file: PathBuf,
        #[arg(long, value_name = "INT")]
        inner: Option<usize>,
    },
    /// Embed a right near-truss into the self-map near-truss of Y x Z_m.
    Embed {
        file: PathBuf,
        #[arg(short = 'm', value_name = "INT")]
        modulus: usize,
    },
    /// Parse, validate and summarize an algebra file.
    Report { file: PathBuf },
}

#[derive(Subcommand, Debug)]
pub enum SemidirectCommand {
    /// Evaluate the equivalent decomposition conditions for a section and a
    /// congruence.
    Check {
        file: PathBuf,
        #[arg(short = 'Y', value_name = "SUBSET")]
        section: String,
        #[arg(short = 'w', value_name = "PARTITION")]
        omega: String,
    },
    /// Outer semidirect product of two heaps along an action file.
    Outer {
        #[arg(short = 'K', value_name = "FILE")]
        kernel: PathBuf,
        #[arg(short = 'Y', value_name = "FILE")]
        section: PathBuf,
        #[arg(long, value_name = "ACTION_FILE")]
        action: PathBuf,
    },
}

struct Failure {
    verdict: Verdict,
    message: String,
}

type Handled = Result<CommandReport, Failure>;

fn fail(verdict: Verdict, message: impl ToString) -> Failure {
    Failure {
        verdict,
        message: message.to_string(),
    }
}

fn from_core(error: trusskit_core::Error) -> Failure {
    let verdict = match error {
        trusskit_core::Error::ResourceLimit { .. } => Verdict::ResourceLimit,
        _ => Verdict::InputError,
    };
    fail(verdict, error)
}

fn load(path: &Path) -> Result<AlgebraFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(Verdict::InputError, format!("{}: {e}", path.display())))?;
    parse_algebra(&text).map_err(|e| fail(Verdict::InputError, format!("{}: {e}", path.display())))
}

fn parse_subset(text: &str, n: usize) -> Result<Subset, Failure> {
    let subset = Subset::parse(text).map_err(from_core)?;
    subset.check_range(n).map_err(from_core)?;
    Ok(subset)
}

fn parse_partition(text: &str, n: usize) -> Result<Partition, Failure> {
    Partition::parse(text, n).map_err(from_core)
}

fn describe(report: &mut CommandReport, path: &Path, file: &AlgebraFile) {
    report.input("file", path.display());
    report.input("name", &file.name);
    report.input("kind", file.kind);
    report.input("size", file.size);
}

fn is_near_truss_kind(kind: Kind) -> bool {
    matches!(
        kind,
        Kind::NearTrussLeft | Kind::NearTrussRight | Kind::Truss | Kind::Ring | Kind::SkewBrace
    )
}

/// Near-truss view when the file has one, otherwise the heap view.
enum AlgebraView {
    Heap(trusskit_core::Heap),
    NearTruss(NearTruss),
}

fn algebra_view(file: &AlgebraFile, limits: &Limits) -> Result<AlgebraView, Failure> {
    if is_near_truss_kind(file.kind) {
        Ok(AlgebraView::NearTruss(
            file.near_truss(limits).map_err(from_core)?,
        ))
    } else {
        Ok(AlgebraView::Heap(file.heap(limits).map_err(from_core)?))
    }
}

pub fn dispatch(cli: &Cli) -> (i32, String) {
    let limits = cli
        .max_n
        .map(Limits::with_max_n)
        .unwrap_or_default();
    let outcome = match &cli.command {
        Command::Validate { file, as_kind } => cmd_validate(file, as_kind.as_deref(), &limits),
        Command::Retract { file, base } => cmd_retract(file, *base, &limits),
        Command::Subheaps { file, normal } => cmd_subheaps(file, *normal, &limits),
        Command::Congruences { file } => cmd_congruences(file, &limits),
        Command::Commutator {
            file,
            r,
            s,
            oracle,
            base,
        } => cmd_commutator(file, r, s, *oracle, *base, &limits),
        Command::HuqSmith {
            file,
            example,
            m_file,
            k,
            a,
            b,
            base,
        } => cmd_huq_smith(
            file.as_deref(),
            *example,
            m_file.as_deref(),
            k.as_deref(),
            a.as_deref(),
            b.as_deref(),
            *base,
            &limits,
        ),
        Command::Idempotents { file } => cmd_idempotents(file, &limits),
        Command::Semidirect { sub } => match sub {
            SemidirectCommand::Check {
                file,
                section,
                omega,
            } => cmd_semidirect_check(file, section, omega, &limits),
            SemidirectCommand::Outer {
                kernel,
                section,
                action,
            } => cmd_semidirect_outer(kernel, section, action, &limits),
        },
        Command::DirectCheck {
            file,
            section,
            omega,
            base,
        } => cmd_direct_check(file, section, omega, *base, &limits),
        Command::Derivations { file, inner } => cmd_derivations(file, *inner, &limits),
        Command::Embed { file, modulus } => cmd_embed(file, *modulus, &limits),
        Command::Report { file } => cmd_report(file, cli.seed, &limits),
    };
    match outcome {
        Ok(report) => {
            let text = match cli.format {
                OutputFormat::Text => report.render_text(),
                OutputFormat::Json => report.render_json(),
            };
            (report.verdict.exit_code(), text)
        }
        Err(failure) => {
            let mut report = CommandReport::new("error");
            report.verdict = failure.verdict;
            report.fact("error", &failure.message);
            let text = match cli.format {
                OutputFormat::Text => report.render_text(),
                OutputFormat::Json => report.render_json(),
            };
            (failure.verdict.exit_code(), text)
        }
    }
}

fn cmd_validate(path: &Path, as_kind: Option<&str>, limits: &Limits) -> Handled {
    let file = load(path)?;
    let target = match as_kind {
        Some(token) => Kind::parse(token)
            .ok_or_else(|| fail(Verdict::InputError, format!("unknown kind {token:?}")))?,
        None => file.kind,
    };
    let mut report = CommandReport::new("validate");
    describe(&mut report, path, &file);
    report.input("as", target);
    match target {
        Kind::Semiheap => {
            let table = file.ternary_table().map_err(from_core)?;
            let checked = validate_ternary(&table, Level::Semiheap, limits).map_err(from_core)?;
            report.validation(&checked);
        }
        Kind::Heap => {
            let table = file.ternary_table().map_err(from_core)?;
            let checked = validate_ternary(&table, Level::Heap, limits).map_err(from_core)?;
            let abelian = checked.passed && {
                let commutative =
                    validate_ternary(&table, Level::AbelianHeap, limits).map_err(from_core)?;
                commutative.passed
            };
            report.validation(&checked);
            if checked.passed {
                report.fact("abelian", if abelian { "✓" } else { "✗" });
            }
        }
        Kind::NearTrussLeft | Kind::NearTrussRight => {
            let table = file.ternary_table().map_err(from_core)?;
            let mul = binary_section(&file, "mul")?;
            let side = if target == Kind::NearTrussLeft {
                Side::Left
            } else {
                Side::Right
            };
            let checked = validate_near_truss(&table, &mul, side, limits).map_err(from_core)?;
            report.validation(&checked);
        }
        Kind::Truss => {
            let table = file.ternary_table().map_err(from_core)?;
            let mul = binary_section(&file, "mul")?;
            let checked = validate_truss(&table, &mul, limits).map_err(from_core)?;
            report.validation(&checked);
        }
        Kind::JRing => {
            let add = binary_section(&file, "add")?;
            let mul = binary_section(&file, "mul")?;
            let checked = validate_jring_tables(&add, &mul).map_err(from_core)?;
            report.validation(&checked.report);
            if checked.report.passed {
                report.fact(
                    "x*0=0",
                    if checked.zero_absorbs_right { "✓" } else { "✗" },
                );
                report.fact(
                    "0*x=x",
                    if checked.zero_left_identity { "✓" } else { "✗" },
                );
            }
        }
        Kind::Group => {
            let mul = binary_section(&file, "mul")?;
            match GroupView::from_table(mul) {
                Ok(group) => {
                    report.fact("group", "✓");
                    report.fact("abelian", if group.is_abelian() { "✓" } else { "✗" });
                }
                Err(error) => {
                    report.fact("group", "✗");
                    record_structure_error(&mut report, error);
                }
            }
        }
        Kind::Ring => {
            let add = binary_section(&file, "add")?;
            let mul = binary_section(&file, "mul")?;
            report.validation(&validate_ring_tables(&add, &mul));
        }
        Kind::SkewBrace => {
            let star = binary_section(&file, "star")?;
            let circ = binary_section(&file, "circ")?;
            let mut checked = ValidationReport::new("skew brace");
            match (GroupView::from_table(star), GroupView::from_table(circ)) {
                (Ok(star), Ok(circ)) => {
                    if let Err(error) = SkewBrace::new(star, circ) {
                        absorb_structure_error(&mut checked, error);
                    }
                }
                (Err(error), _) | (_, Err(error)) => {
                    absorb_structure_error(&mut checked, error);
                }
            }
            report.validation(&checked);
        }
    }
    Ok(report)
}

fn binary_section(file: &AlgebraFile, name: &str) -> Result<trusskit_core::BinaryTable, Failure> {
    let entries = file
        .section(name)
        .ok_or_else(|| fail(Verdict::InputError, format!("missing section [{name}]")))?;
    trusskit_core::BinaryTable::new(file.size, entries.to_vec()).map_err(from_core)
}

fn record_structure_error(report: &mut CommandReport, error: trusskit_core::Error) {
    if let trusskit_core::Error::InvalidStructure { law, witness, .. } = error {
        report.witnesses.push(format!(
            "law={law} witness=({})",
            witness
                .iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ));
    }
    report.verdict = Verdict::Violated;
}

fn absorb_structure_error(checked: &mut ValidationReport, error: trusskit_core::Error) {
    match error {
        trusskit_core::Error::InvalidStructure { law, witness, .. } => {
            checked.passed = false;
            checked.violations.push(Violation {
                law: Box::leak(law.into_boxed_str()),
                witness,
            });
        }
        _ => {
            checked.passed = false;
            checked.violations.push(Violation {
                law: "structure",
                witness: vec![],
            });
        }
    }
}

fn validate_ring_tables(
    add: &trusskit_core::BinaryTable,
    mul: &trusskit_core::BinaryTable,
) -> ValidationReport {
    use trusskit_core::scan;
    let n = add.size();
    let mut report = ValidationReport::new("ring");
    match GroupView::from_table(add.clone()) {
        Ok(group) => {
            if !group.is_abelian() {
                report.record("abelian_addition", Some(vec![]));
            }
            report.record(
                "mul_associativity",
                scan::first_failure::<3, _>(n, |&[x, y, z]| {
                    mul.get(mul.get(x, y), z) == mul.get(x, mul.get(y, z))
                })
                .map(|w| w.to_vec()),
            );
            report.record(
                "left_distributivity",
                scan::first_failure::<3, _>(n, |&[x, y, z]| {
                    mul.get(x, group.mul(y, z)) == group.mul(mul.get(x, y), mul.get(x, z))
                })
                .map(|w| w.to_vec()),
            );
            report.record(
                "right_distributivity",
                scan::first_failure::<3, _>(n, |&[x, y, z]| {
                    mul.get(group.mul(y, z), x) == group.mul(mul.get(y, x), mul.get(z, x))
                })
                .map(|w| w.to_vec()),
            );
        }
        Err(error) => absorb_structure_error(&mut report, error),
    }
    report
}

fn cmd_retract(path: &Path, base: usize, limits: &Limits) -> Handled {
    let file = load(path)?;
    let heap = file.heap(limits).map_err(from_core)?;
    let group = heap.retract_group(base).map_err(from_core)?;
    let mut report = CommandReport::new("retract");
    describe(&mut report, path, &file);
    report.input("e", base);
    report.fact("identity", group.identity());
    report.fact(
        "inverse",
        group
            .inverses()
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    let n = group.size();
    let rows: Vec<String> = (0..n)
        .map(|x| {
            (0..n)
                .map(|y| group.mul(x, y).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect();
    report.table("table", rows);
    Ok(report)
}

fn subset_line(subset: &Subset) -> String {
    if subset.is_empty() {
        "∅".to_string()
    } else {
        subset.to_string()
    }
}

fn cmd_subheaps(path: &Path, normal: bool, limits: &Limits) -> Handled {
    let file = load(path)?;
    let heap = file.heap(limits).map_err(from_core)?;
    let subheaps = enumerate_subheaps(&heap, normal, limits).map_err(from_core)?;
    let mut report = CommandReport::new("subheaps");
    describe(&mut report, path, &file);
    report.input("normal", normal);
    report.fact("count", subheaps.len());
    report.table(
        if normal { "normal_subheaps" } else { "subheaps" },
        subheaps.iter().map(subset_line).collect(),
    );
    Ok(report)
}

fn cmd_congruences(path: &Path, limits: &Limits) -> Handled {
    let file = load(path)?;
    let mut report = CommandReport::new("congruences");
    describe(&mut report, path, &file);
    let rows: Vec<String> = if is_near_truss_kind(file.kind) {
        let truss = file.near_truss(limits).map_err(from_core)?;
        trusskit_core::ideal::enumerate_near_truss_congruences(&truss, limits)
            .map_err(from_core)?
            .iter()
            .map(|p| p.to_string())
            .collect()
    } else {
        let heap = file.heap(limits).map_err(from_core)?;
        enumerate_congruences(&heap, limits)
            .map_err(from_core)?
            .iter()
            .map(|p| p.to_string())
            .collect()
    };
    report.fact("count", rows.len());
    report.table("congruences", rows);
    Ok(report)
}

fn cmd_commutator(
    path: &Path,
    r_text: &str,
    s_text: &str,
    oracle: bool,
    base: usize,
    limits: &Limits,
) -> Handled {
    let file = load(path)?;
    let mut report = CommandReport::new("commutator");
    describe(&mut report, path, &file);
    report.input("R", r_text);
    report.input("S", s_text);
    if is_near_truss_kind(file.kind) {
        let truss = file.near_truss(limits).map_err(from_core)?;
        let r = parse_partition(r_text, truss.size())?;
        let s = parse_partition(s_text, truss.size())?;
        let result =
            smith_commutator_oracle_near_truss(&truss, &r, &s, limits).map_err(from_core)?;
        report.fact("route", "near-truss smallest-congruence search");
        report.fact("commutator", result);
    } else {
        let heap = file.heap(limits).map_err(from_core)?;
        let r = parse_partition(r_text, heap.size())?;
        let s = parse_partition(s_text, heap.size())?;
        report.input("e", base);
        let fast = smith_commutator_heap(&heap, &r, &s, base).map_err(from_core)?;
        report.fact("commutator", &fast);
        if oracle {
            let slow = smith_commutator_oracle_heap(&heap, &r, &s, limits).map_err(from_core)?;
            report.fact("oracle", &slow);
            let agrees = slow == fast;
            report.fact("oracle_agrees", agrees);
            if !agrees {
                report.verdict = Verdict::Violated;
            }
        }
    }
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn cmd_huq_smith(
    file: Option<&Path>,
    example: bool,
    m_file: Option<&Path>,
    k_text: Option<&str>,
    a_text: Option<&str>,
    b_text: Option<&str>,
    base: Option<usize>,
    limits: &Limits,
) -> Handled {
    let mut report = CommandReport::new("huq-smith");
    let (truss, e, a, b) = if example {
        let m_path = m_file.ok_or_else(|| {
            fail(Verdict::InputError, "--example requires -M <group-file>")
        })?;
        let k_text =
            k_text.ok_or_else(|| fail(Verdict::InputError, "--example requires -K <subset>"))?;
        let m = load(m_path)?;
        report.input("M", m_path.display());
        report.input("K", k_text);
        let group = m.group_view().map_err(from_core)?;
        let k = parse_subset(k_text, group.size())?;
        let built = build_huq_smith_example(&group, &k).map_err(from_core)?;
        report.fact("example_size", built.truss.size());
        report.fact("A", subset_line(&built.a));
        report.fact("B", subset_line(&built.b));
        (built.truss, built.base, built.a, built.b)
    } else {
        let path = file.ok_or_else(|| {
            fail(
                Verdict::InputError,
                "huq-smith needs a near-truss file (or --example)",
            )
        })?;
        let parsed = load(path)?;
        describe(&mut report, path, &parsed);
        let wide = Limits::with_max_n(limits.max_n.max(parsed.size));
        let truss = parsed.near_truss(&wide).map_err(from_core)?;
        let a = parse_subset(
            a_text.ok_or_else(|| fail(Verdict::InputError, "missing -A <subset>"))?,
            truss.size(),
        )?;
        let b = parse_subset(
            b_text.ok_or_else(|| fail(Verdict::InputError, "missing -B <subset>"))?,
            truss.size(),
        )?;
        let e = base.ok_or_else(|| fail(Verdict::InputError, "missing -e <int>"))?;
        report.input("A", &a);
        report.input("B", &b);
        report.input("e", e);
        (truss, e, a, b)
    };
    let result = near_truss_commutators(&truss, e, &a, &b).map_err(from_core)?;
    report.fact("smith_ideal", subset_line(&result.smith_ideal));
    report.fact("huq_ideal", subset_line(&result.huq_ideal));
    report.fact("smith_congruence", &result.smith_congruence);
    report.fact("huq_congruence", &result.huq_congruence);
    report.fact(
        "relation",
        if result.smith_ideal == result.huq_ideal {
            "Smith = Huq"
        } else {
            "Smith ⊋ Huq"
        },
    );
    Ok(report)
}

fn cmd_idempotents(path: &Path, limits: &Limits) -> Handled {
    let file = load(path)?;
    let mut report = CommandReport::new("idempotents");
    describe(&mut report, path, &file);
    let view = algebra_view(&file, limits)?;
    let idempotents = match &view {
        AlgebraView::Heap(heap) => enumerate_idempotents(&Algebra::Heap(heap), limits),
        AlgebraView::NearTruss(truss) => {
            enumerate_idempotents(&Algebra::NearTruss(truss), limits)
        }
    }
    .map_err(from_core)?;
    report.fact("count", idempotents.len());
    report.table(
        "idempotents",
        idempotents.iter().map(endomap_line).collect(),
    );
    Ok(report)
}

fn endomap_line(map: &Endomap) -> String {
    map.images()
        .iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn cmd_semidirect_check(
    path: &Path,
    section_text: &str,
    omega_text: &str,
    limits: &Limits,
) -> Handled {
    let file = load(path)?;
    let mut report = CommandReport::new("semidirect check");
    describe(&mut report, path, &file);
    report.input("Y", section_text);
    report.input("w", omega_text);
    let view = algebra_view(&file, limits)?;
    let (n, conditions) = match &view {
        AlgebraView::Heap(heap) => {
            let section = parse_subset(section_text, heap.size())?;
            let omega = parse_partition(omega_text, heap.size())?;
            (
                heap.size(),
                check_semidirect_conditions(&Algebra::Heap(heap), &section, &omega, limits)
                    .map_err(from_core)?,
            )
        }
        AlgebraView::NearTruss(truss) => {
            let section = parse_subset(section_text, truss.size())?;
            let omega = parse_partition(omega_text, truss.size())?;
            (
                truss.size(),
                check_semidirect_conditions(&Algebra::NearTruss(truss), &section, &omega, limits)
                    .map_err(from_core)?,
            )
        }
    };
    let _ = n;
    for (label, value) in conditions.as_array() {
        report.fact(&format!("({label})"), value);
    }
    report.fact("all_agree", conditions.all_agree());
    if !conditions.holds() {
        report.verdict = Verdict::Violated;
    }
    Ok(report)
}

fn cmd_semidirect_outer(
    kernel_path: &Path,
    section_path: &Path,
    action_path: &Path,
    limits: &Limits,
) -> Handled {
    let kernel_file = load(kernel_path)?;
    let section_file = load(section_path)?;
    let action_text = std::fs::read_to_string(action_path)
        .map_err(|e| fail(Verdict::InputError, format!("{}: {e}", action_path.display())))?;
    let action = parse_action(&action_text)
        .map_err(|e| fail(Verdict::InputError, format!("{}: {e}", action_path.display())))?;
    let kernel = kernel_file.heap(limits).map_err(from_core)?;
    let section = section_file.heap(limits).map_err(from_core)?;
    let mut report = CommandReport::new("semidirect outer");
    report.input("K", kernel_path.display());
    report.input("Y", section_path.display());
    report.input("action", action_path.display());
    let product = outer_semidirect(&kernel, &section, &action).map_err(from_core)?;
    report.fact("size", product.heap.size());
    report.fact("kernel_copy_normal", product.kernel_copy_normal);
    report.fact("section_copies_ok", product.section_copies_ok);
    report.fact("action_recovered", product.action_recovered);
    if let Some(conditions) = &product.conditions {
        report.fact("decomposition_conditions_hold", conditions.holds());
    }
    let out = AlgebraFile::from_tables(
        "outer_product",
        Kind::Heap,
        product.heap.size(),
        vec![("ternary", product.heap.table().entries().to_vec())],
    );
    report.table(
        "product",
        serialize_algebra(&out).lines().map(str::to_string).collect(),
    );
    if !(product.kernel_copy_normal && product.section_copies_ok && product.action_recovered) {
        report.verdict = Verdict::Violated;
    }
    Ok(report)
}

fn cmd_direct_check(
    path: &Path,
    section_text: &str,
    omega_text: &str,
    base: usize,
    limits: &Limits,
) -> Handled {
    let file = load(path)?;
    let heap = file.heap(limits).map_err(from_core)?;
    let section = parse_subset(section_text, heap.size())?;
    let omega = parse_partition(omega_text, heap.size())?;
    let mut report = CommandReport::new("direct-check");
    describe(&mut report, path, &file);
    report.input("Y", section_text);
    report.input("w", omega_text);
    report.input("e", base);
    let conditions =
        direct_product_conditions(&heap, &section, &omega, base, limits).map_err(from_core)?;
    for (label, value) in conditions.as_array() {
        report.fact(&format!("({label})"), value);
    }
    report.fact("all_agree", conditions.all_agree());
    if let Some(trivial) = conditions.commutator_trivial {
        report.fact("commutator_trivial", trivial);
    }
    if !conditions.holds() {
        report.verdict = Verdict::Violated;
    }
    Ok(report)
}

fn cmd_derivations(path: &Path, inner: Option<usize>, limits: &Limits) -> Handled {
    let file = load(path)?;
    let truss = file.near_truss(limits).map_err(from_core)?;
    let mut report = CommandReport::new("derivations");
    describe(&mut report, path, &file);
    let set = enumerate_derivations(&truss).map_err(from_core)?;
    report.fact("count", set.members.len());
    report.table("derivations", set.members.iter().map(endomap_line).collect());
    if let Some(a) = inner {
        let d = inner_derivation(&truss, a).map_err(from_core)?;
        report.fact(&format!("inner_derivation({a})"), endomap_line(&d));
        report.fact(
            &format!("inner_derivation({a})_is_identity"),
            d == Endomap::identity(truss.size()),
        );
    }
    Ok(report)
}

fn cmd_embed(path: &Path, modulus: usize, limits: &Limits) -> Handled {
    let file = load(path)?;
    let truss = file.near_truss(limits).map_err(from_core)?;
    let mut report = CommandReport::new("embed");
    describe(&mut report, path, &file);
    report.input("m", modulus);
    let embedding = embed_in_mx(&truss, modulus).map_err(from_core)?;
    report.fact("ambient_size", embedding.ambient_size);
    report.fact("injective", embedding.injective);
    report.fact("preserves_bracket", embedding.preserves_bracket);
    report.fact("multiplicative", embedding.multiplicative);
    report.table(
        "images",
        embedding.images.iter().map(endomap_line).collect(),
    );
    if !embedding.passed() {
        report.verdict = Verdict::Violated;
    }
    Ok(report)
}

fn cmd_report(path: &Path, seed: u64, limits: &Limits) -> Handled {
    let file = load(path)?;
    let mut report = CommandReport::new("report");
    describe(&mut report, path, &file);
    match file.kind {
        Kind::Semiheap => {
            let table = file.ternary_table().map_err(from_core)?;
            let checked = validate_ternary(&table, Level::Semiheap, limits).map_err(from_core)?;
            report.validation(&checked);
        }
        Kind::Heap | Kind::Group => {
            let table = file.ternary_table().map_err(from_core)?;
            let checked = validate_ternary(&table, Level::Heap, limits).map_err(from_core)?;
            report.validation(&checked);
            if checked.passed {
                let heap = file.heap(limits).map_err(from_core)?;
                report.fact("abelian", if heap.is_abelian() { "✓" } else { "✗" });
                if heap.size() <= 12 {
                    let subheaps = enumerate_subheaps(&heap, false, limits).map_err(from_core)?;
                    let normal = enumerate_subheaps(&heap, true, limits).map_err(from_core)?;
                    let congruences = enumerate_congruences(&heap, limits).map_err(from_core)?;
                    report.fact("subheaps", subheaps.len());
                    report.fact("normal_subheaps", normal.len());
                    report.fact("congruences", congruences.len());
                }
                if heap.size() <= 6 {
                    let idempotents = enumerate_idempotents(&Algebra::Heap(&heap), limits)
                        .map_err(from_core)?;
                    report.fact("idempotents", idempotents.len());
                }
                // self-map algebra sanity: exhaustive for tiny carriers,
                // seeded sampling above
                let algebra = MapAlgebra::new(&heap);
                if heap.size() <= 3 {
                    let mx = algebra.as_near_truss().map_err(from_core)?;
                    report.fact("mx_right_near_truss", format!("✓ (|M(X)| = {})", mx.size()));
                } else {
                    let samples = 512;
                    let witness = algebra.sampled_right_distributivity(seed, samples);
                    report.fact(
                        "mx_right_distributivity",
                        format!(
                            "{} (sampled, seed={seed}, samples={samples})",
                            if witness.is_none() { "✓" } else { "✗" }
                        ),
                    );
                }
            }
        }
        Kind::Truss | Kind::NearTrussLeft | Kind::NearTrussRight | Kind::Ring | Kind::SkewBrace => {
            match file.near_truss(limits) {
                Ok(truss) => {
                    report.fact("near_truss", "✓");
                    report.fact("abelian", if truss.is_abelian() { "✓" } else { "✗" });
                    report.fact("truss", if truss.is_truss() { "✓" } else { "✗" });
                    if truss.size() <= 12 {
                        let ideals =
                            trusskit_core::ideal::enumerate_ideals_through(&truss, 0, limits)
                                .map_err(from_core)?;
                        report.fact("ideals_through_0", ideals.len());
                        let congruences = trusskit_core::ideal::enumerate_near_truss_congruences(
                            &truss, limits,
                        )
                        .map_err(from_core)?;
                        report.fact("congruences", congruences.len());
                    }
                }
                Err(trusskit_core::Error::InvalidStructure { law, witness, .. }) => {
                    report.fact("near_truss", "✗");
                    report.witnesses.push(format!(
                        "law={law} witness=({})",
                        witness
                            .iter()
                            .map(|v| v.to_string())
                            .collect::<Vec<_>>()
                            .join(",")
                    ));
                    report.verdict = Verdict::Violated;
                }
                Err(other) => return Err(from_core(other)),
            }
        }
        Kind::JRing => {
            let add = binary_section(&file, "add")?;
            let mul = binary_section(&file, "mul")?;
            let checked = validate_jring_tables(&add, &mul).map_err(from_core)?;
            report.validation(&checked.report);
            report.fact(
                "x*0=0",
                if checked.zero_absorbs_right { "✓" } else { "✗" },
            );
            report.fact(
                "0*x=x",
                if checked.zero_left_identity { "✓" } else { "✗" },
            );
        }
    }
    Ok(report)
}
