//! Command-line front end: argument parsing, file loading and report output.
//!
//! Exit codes: 0 success, 1 an axiom or round trip failed, 2 usage error,
//! 3 the input file could not be read or parsed.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use orthokit::coupled::{
    check_coupled_right_orthosemiring, check_coupled_semiring, construct_l, construct_n,
    verify_roundtrip_l, verify_roundtrip_n,
};
use orthokit::enumeration::{
    count_by_size, enumerate, search_independence, AxiomRef, EnumerationTask, SearchOutcome,
    SearchTask, StructureClass,
};
use orthokit::format::{parse, serialize_algebra, serialize_document};
use orthokit::lattice::{is_bounded_lattice, Lattice};
use orthokit::mv::{check_basic_algebra, check_mv_algebra, lukasiewicz_chain};
use orthokit::near_semiring::{
    check_join_ordered, check_lattice_ordered_semiring, check_meet_ordered,
    check_right_near_semiring, check_semiring,
};
use orthokit::ortho::{
    check_commutation_lemma, check_foulis_holland, check_ortholattice, check_orthomodular,
};
use orthokit::{corpus, iso, Algebra, CheckReport, Error, Structure};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "orthokit",
    version,
    about = "Check, construct and enumerate orthomodular lattices and coupled orthosemirings"
)]
struct Cli {
    /// Cap on worker threads for enumeration and search.
    #[arg(long, global = true, value_parser = clap::value_parser!(u16).range(1..))]
    threads: Option<u16>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check axiom sets on every structure in a file.
    Check {
        file: PathBuf,
        /// Comma separated axiom sets, e.g. `oml,commutation`.
        #[arg(long, value_delimiter = ',', required = true, value_enum)]
        axioms: Vec<AxiomSet>,
        #[arg(long, value_enum, default_value_t = ReportFormat::Text)]
        format: ReportFormat,
    },
    /// Build the triple of an orthomodular lattice (`n`) or the lattice of a triple (`l`).
    Construct {
        #[arg(value_enum)]
        direction: Direction,
        file: PathBuf,
    },
    /// Check that constructing there and back returns the input tables.
    Roundtrip { file: PathBuf },
    /// List one structure per isomorphism class, by size.
    Enumerate {
        #[arg(long, value_enum)]
        class: ClassArg,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
        /// Print counts per size instead of structures.
        #[arg(long)]
        count_only: bool,
        /// Relabel elements by height instead of canonical order.
        #[arg(long)]
        display_order: bool,
    },
    /// Search for a smallest triple meeting some axioms and violating others.
    Independence {
        /// Axioms or clauses to enforce, e.g. `R1,R2,R3.plus-neutral`.
        #[arg(long, default_value = "")]
        enforce: String,
        /// Axioms or clauses that must each fail somewhere.
        #[arg(long, default_value = "")]
        violate: String,
        #[arg(long, default_value_t = 6)]
        max_size: usize,
    },
    /// Write a built-in structure.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Find an isomorphism between the first structures of two files.
    Iso { left: PathBuf, right: PathBuf },
    /// Hasse diagram of a lattice in DOT.
    Hasse { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum GenCommand {
    /// Łukasiewicz chain with `k` elements.
    Lukasiewicz { k: usize },
    /// One of c1, c2, b4, b8, mo2, mo3, o6, chain4.
    Corpus { name: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum AxiomSet {
    Lattice,
    Ol,
    Oml,
    Commutation,
    FoulisHolland,
    Rns,
    Semiring,
    JoinOrdered,
    MeetOrdered,
    LatticeOrdered,
    DualLatticeOrdered,
    Coupled,
    CoupledSemiring,
    Mv,
    Ba,
}

impl AxiomSet {
    fn label(self) -> String {
        self.to_possible_value()
            .expect("no skipped variants")
            .get_name()
            .to_owned()
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ReportFormat {
    Text,
    Terse,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Direction {
    N,
    L,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum ClassArg {
    Oml,
    Ol,
    Lattice,
}

impl From<ClassArg> for StructureClass {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Oml => StructureClass::Orthomodular,
            ClassArg::Ol => StructureClass::Ortholattice,
            ClassArg::Lattice => StructureClass::Lattice,
        }
    }
}

/// A failed command: exit code plus message for stderr.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn failed(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_FAIL,
            message: message.into(),
        }
    }
}

/// Output collected by a command, plus its exit code.
struct Outcome {
    stdout: String,
    code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            code: EXIT_OK,
        }
    }

    fn status(stdout: String, passed: bool) -> Self {
        Outcome {
            stdout,
            code: if passed { EXIT_OK } else { EXIT_FAIL },
        }
    }
}

/// Runs the tool on `args` (including the program name) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(rendered.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(rendered.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };

    let result = match cli.threads {
        None => dispatch(cli.command),
        Some(t) => match rayon::ThreadPoolBuilder::new()
            .num_threads(t as usize)
            .build()
        {
            Ok(pool) => pool.install(|| dispatch(cli.command)),
            Err(e) => Err(Failure::usage(format!("cannot start thread pool: {e}"))),
        },
    };

    match result {
        Ok(outcome) => {
            let _ = out.write_all(outcome.stdout.as_bytes());
            outcome.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command) -> Result<Outcome, Failure> {
    match command {
        Command::Check {
            file,
            axioms,
            format,
        } => check(&file, &axioms, format),
        Command::Construct { direction, file } => construct(direction, &file),
        Command::Roundtrip { file } => roundtrip(&file),
        Command::Enumerate {
            class,
            max_size,
            count_only,
            display_order,
        } => enumerate_cmd(class.into(), max_size, count_only, display_order),
        Command::Independence {
            enforce,
            violate,
            max_size,
        } => independence(&enforce, &violate, max_size),
        Command::Gen { what } => gen(what),
        Command::Iso { left, right } => iso_cmd(&left, &right),
        Command::Hasse { file } => hasse(&file),
    }
}

fn load(path: &Path) -> Result<Vec<Algebra>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let doc = parse(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let algebras = doc.into_algebras();
    if algebras.is_empty() {
        return Err(Failure::input(format!(
            "{}: no algebra blocks",
            path.display()
        )));
    }
    Ok(algebras)
}

fn load_structures(path: &Path) -> Result<Vec<(Algebra, Structure)>, Failure> {
    load(path)?
        .into_iter()
        .map(|a| {
            let s = Structure::from_algebra(&a).map_err(|e| {
                Failure::input(format!("{}: algebra `{}`: {e}", path.display(), a.name()))
            })?;
            Ok((a, s))
        })
        .collect()
}

fn not_applicable(set: AxiomSet, s: &Structure) -> Failure {
    Failure::usage(format!(
        "axiom set `{}` does not apply to a {}",
        set.label(),
        s.kind()
    ))
}

/// The `join`/`meet` tables a near semiring file carries alongside its own ops.
fn side_lattice(a: &Algebra) -> Result<Lattice, Failure> {
    let join = a.binary("join").map_err(|e| Failure::input(e.to_string()))?;
    let meet = a.binary("meet").map_err(|e| Failure::input(e.to_string()))?;
    Lattice::new(join.clone(), meet.clone()).map_err(|e| Failure::input(e.to_string()))
}

/// Prerequisite failures still produce a report: the failed prerequisites.
fn gated(r: orthokit::Result<CheckReport>) -> Result<CheckReport, Failure> {
    match r {
        Ok(r) => Ok(r),
        Err(Error::PrerequisiteFailed(sub)) | Err(Error::NotOrthomodular(sub)) => {
            Ok(sub.with_prefix("prerequisite."))
        }
        Err(e) => Err(Failure::input(e.to_string())),
    }
}

fn run_set(set: AxiomSet, a: &Algebra, s: &Structure) -> Result<CheckReport, Failure> {
    use AxiomSet::*;
    let report = match (set, s) {
        (Lattice, Structure::Lattice(l)) => is_bounded_lattice(l),
        (Lattice, Structure::Ortho(o)) => is_bounded_lattice(o.bounded()),
        (Ol, Structure::Ortho(o)) => check_ortholattice(o),
        (Oml, Structure::Ortho(o)) => gated(check_orthomodular(o))?,
        (Commutation, Structure::Ortho(o)) => gated(check_commutation_lemma(o))?,
        (FoulisHolland, Structure::Ortho(o)) => gated(check_foulis_holland(o))?,
        (Rns, Structure::NearSemiring(ns)) => check_right_near_semiring(ns),
        (Semiring, Structure::NearSemiring(ns)) => check_semiring(ns),
        (Rns | Semiring, Structure::Coupled(t)) => {
            let check = if set == Rns {
                check_right_near_semiring
            } else {
                check_semiring
            };
            let mut r = CheckReport::new(t.carrier());
            r.extend_prefixed("first.", check(t.first()));
            r.extend_prefixed("second.", check(t.second()));
            r
        }
        (JoinOrdered | MeetOrdered | LatticeOrdered | DualLatticeOrdered, _) => {
            let (ns, lattice) = match s {
                Structure::NearSemiring(ns) => (ns, side_lattice(a)?),
                Structure::Coupled(t) => {
                    let ns = if matches!(set, JoinOrdered | LatticeOrdered) {
                        t.first()
                    } else {
                        t.second()
                    };
                    (ns, t.lattice())
                }
                _ => return Err(not_applicable(set, s)),
            };
            let r = match set {
                JoinOrdered => check_join_ordered(ns, &lattice),
                MeetOrdered => check_meet_ordered(ns, &lattice),
                LatticeOrdered => check_lattice_ordered_semiring(ns, &lattice, false),
                _ => check_lattice_ordered_semiring(ns, &lattice, true),
            };
            gated(r)?
        }
        (Coupled, Structure::Coupled(t)) => gated(check_coupled_right_orthosemiring(t))?,
        (CoupledSemiring, Structure::Coupled(t)) => gated(check_coupled_semiring(t))?,
        (Mv, Structure::Oplus(m)) => check_mv_algebra(m),
        (Ba, Structure::Oplus(m)) => check_basic_algebra(m),
        _ => return Err(not_applicable(set, s)),
    };
    Ok(report)
}

fn check(path: &Path, sets: &[AxiomSet], format: ReportFormat) -> Result<Outcome, Failure> {
    let structures = load_structures(path)?;
    let mut out = String::new();
    let mut passed = true;
    for (a, s) in &structures {
        for &set in sets {
            let report = run_set(set, a, s)?;
            passed &= report.passed();
            match format {
                ReportFormat::Text => {
                    let verdict = if report.passed() { "PASS" } else { "FAIL" };
                    let _ = writeln!(out, "== {} [{}] {verdict}", a.name(), set.label());
                    out.push_str(&report.to_string());
                }
                ReportFormat::Terse => {
                    let prefixed = report.with_prefix(&format!("{}.", set.label()));
                    if structures.len() > 1 {
                        for line in prefixed.render_terse().lines() {
                            let _ = writeln!(out, "{}\t{line}", a.name());
                        }
                    } else {
                        out.push_str(&prefixed.render_terse());
                    }
                }
            }
        }
    }
    Ok(Outcome::status(out, passed))
}

fn construct(direction: Direction, path: &Path) -> Result<Outcome, Failure> {
    let structures = load_structures(path)?;
    let mut built = Vec::new();
    for (a, s) in &structures {
        let result = match (direction, s) {
            (Direction::N, Structure::Ortho(o)) => {
                construct_n(o).map(|t| t.to_algebra(&format!("{}-n", a.name())))
            }
            (Direction::L, Structure::Coupled(t)) => {
                construct_l(t).map(|o| o.to_algebra(&format!("{}-l", a.name())))
            }
            (Direction::N, _) => {
                return Err(Failure::usage(format!(
                    "construct n needs an ortholattice, `{}` is a {}",
                    a.name(),
                    s.kind()
                )))
            }
            (Direction::L, _) => {
                return Err(Failure::usage(format!(
                    "construct l needs a coupled triple, `{}` is a {}",
                    a.name(),
                    s.kind()
                )))
            }
        };
        match result {
            Ok(alg) => built.push(alg),
            Err(e) => return Err(Failure::failed(format!("{}: {}", a.name(), describe(&e)))),
        }
    }
    Ok(Outcome::ok(serialize_document(&built)))
}

/// Error text; report-carrying errors already include their report.
fn describe(e: &Error) -> String {
    e.to_string().trim_end().to_owned()
}

fn roundtrip(path: &Path) -> Result<Outcome, Failure> {
    let structures = load_structures(path)?;
    let mut out = String::new();
    let mut passed = true;
    for (a, s) in &structures {
        let (label, report) = match s {
            Structure::Ortho(o) => ("L(N(L))=L", verify_roundtrip_l(o)),
            Structure::Coupled(t) => ("N(L(N))=N", verify_roundtrip_n(t)),
            _ => {
                return Err(Failure::usage(format!(
                    "roundtrip needs an ortholattice or a coupled triple, `{}` is a {}",
                    a.name(),
                    s.kind()
                )))
            }
        };
        if structures.len() > 1 {
            let _ = writeln!(out, "== {}", a.name());
        }
        match report {
            Ok(r) if r.passed() => {
                let _ = writeln!(out, "{label}: EQUAL");
            }
            Ok(r) => {
                passed = false;
                let _ = writeln!(out, "{label}: DIFFERENT");
                out.push_str(&r.to_string());
            }
            Err(e) => {
                passed = false;
                let _ = writeln!(out, "{label}: UNDEFINED");
                let _ = writeln!(out, "{}", describe(&e));
            }
        }
    }
    Ok(Outcome::status(out, passed))
}

fn enumerate_cmd(
    class: StructureClass,
    max_size: usize,
    count_only: bool,
    display_order: bool,
) -> Result<Outcome, Failure> {
    let task = EnumerationTask::new(class, max_size)
        .map_err(|e| Failure::usage(e.to_string()))?
        .canonical_only(!display_order);
    let mut out = String::new();
    if count_only {
        let counts = count_by_size(&task);
        for (n, c) in &counts {
            let _ = writeln!(out, "size {n}: {c}");
        }
        let total: usize = counts.iter().map(|(_, c)| c).sum();
        let _ = writeln!(out, "total: {total}");
        return Ok(Outcome::ok(out));
    }
    let mut per_size = vec![0usize; max_size + 1];
    let mut blocks = Vec::new();
    for e in enumerate(&task) {
        let n = e.size();
        per_size[n] += 1;
        let name = format!("{}-{n}-{}", class.short_name(), per_size[n]);
        blocks.push(serialize_algebra(&e.to_algebra(&name)));
    }
    out.push_str(&blocks.join("\n"));
    Ok(Outcome::ok(out))
}

fn independence(enforce: &str, violate: &str, max_size: usize) -> Result<Outcome, Failure> {
    let enforce = AxiomRef::parse_list(enforce).map_err(|e| Failure::usage(e.to_string()))?;
    let violate = AxiomRef::parse_list(violate).map_err(|e| Failure::usage(e.to_string()))?;
    let task = SearchTask::new(enforce, violate, max_size)
        .map_err(|e| Failure::usage(e.to_string()))?;
    let list = |refs: &[AxiomRef]| {
        if refs.is_empty() {
            "-".to_owned()
        } else {
            refs.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        }
    };
    let mut out = format!(
        "# enforce {}\n# violate {}\n",
        list(task.enforce()),
        list(task.violate())
    );
    match search_independence(&task) {
        SearchOutcome::Found(t) => {
            let _ = writeln!(out, "# smallest witness has size {}", t.size());
            out.push_str(&serialize_algebra(&t.to_algebra("witness")));
            Ok(Outcome::ok(out))
        }
        SearchOutcome::Exhausted { max_size } => {
            let _ = writeln!(out, "# exhausted: no witness up to size {max_size}");
            Ok(Outcome::status(out, false))
        }
    }
}

fn gen(what: GenCommand) -> Result<Outcome, Failure> {
    let algebra = match what {
        GenCommand::Lukasiewicz { k } => lukasiewicz_chain(k)
            .map_err(|e| Failure::usage(e.to_string()))?
            .to_algebra(&format!("lukasiewicz-{k}")),
        GenCommand::Corpus { name } => {
            let l = corpus::by_name(&name).ok_or_else(|| {
                let known: Vec<&str> = corpus::all().into_iter().map(|(n, _)| n).collect();
                Failure::usage(format!(
                    "unknown corpus structure `{name}`; known: {}",
                    known.join(", ")
                ))
            })?;
            l.to_algebra(&name.to_ascii_lowercase())
        }
    };
    Ok(Outcome::ok(serialize_algebra(&algebra)))
}

fn iso_cmd(left: &Path, right: &Path) -> Result<Outcome, Failure> {
    let a = load(left)?.swap_remove(0);
    let b = load(right)?.swap_remove(0);
    match iso::are_isomorphic(&a, &b) {
        Ok(Some(perm)) => {
            let mut out = String::new();
            for (x, &y) in perm.iter().enumerate() {
                let _ = writeln!(out, "{} -> {}", a.carrier().name(x), b.carrier().name(y));
            }
            Ok(Outcome::ok(out))
        }
        Ok(None) => Ok(Outcome::status("not isomorphic\n".into(), false)),
        Err(e) => Err(Failure::failed(e.to_string())),
    }
}

fn hasse(path: &Path) -> Result<Outcome, Failure> {
    let (a, s) = load_structures(path)?.swap_remove(0);
    let (bounded, complement) = match &s {
        Structure::Lattice(l) => (l.clone(), None),
        Structure::Ortho(o) => (o.bounded().clone(), Some(o.complement().clone())),
        _ => {
            return Err(Failure::usage(format!(
                "hasse needs a lattice, `{}` is a {}",
                a.name(),
                s.kind()
            )))
        }
    };
    let order = bounded.order().map_err(|e| Failure::input(e.to_string()))?;
    let c = bounded.carrier();
    let quote = |x: usize| format!("\"{}\"", c.name(x).replace('"', "\\\""));
    let mut out = format!("digraph \"{}\" {{\n  rankdir=BT;\n", a.name());
    for x in c.elements() {
        let _ = writeln!(out, "  {};", quote(x));
    }
    for (x, y) in order.covers() {
        let _ = writeln!(out, "  {} -> {};", quote(x), quote(y));
    }
    if let Some(comp) = complement {
        for x in c.elements() {
            let y = comp.get(x);
            if x < y {
                let _ = writeln!(
                    out,
                    "  {} -> {} [style=dashed, dir=none, constraint=false];",
                    quote(x),
                    quote(y)
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(Outcome::ok(out))
}
