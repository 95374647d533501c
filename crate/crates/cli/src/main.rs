use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use treebetween::format::{emit_relation, emit_segments, emit_tree};
use treebetween::harness::{audit_fixtures, roundtrip_exhaustive, roundtrip_random};
use treebetween::{
    check_burigana_axioms, check_nonstrict_axioms, check_segment_axioms, check_segment_corollaries,
    check_strict_axioms, check_strict_derived, interval_function, parse_document,
    strict_betweenness, tree_betweenness, tree_from_nonstrict, tree_from_segments,
    tree_from_strict, AxiomReport, CheckOptions, Document, Method, ReconstructError, ScanMode,
    Semantics, VertexTable,
};

const VIOLATION: u8 = 1;
const INPUT: u8 = 2;
const MISMATCH: u8 = 3;

#[derive(Parser)]
#[command(
    name = "treebetween",
    version,
    about = "Check and reconstruct tree interval functions and betweenness relations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a document against an axiom system.
    Check(CheckArgs),
    /// Print the segment map or a betweenness relation of a tree.
    Derive(DeriveArgs),
    /// Rebuild a tree from a segment map or betweenness relation.
    Reconstruct(ReconstructArgs),
    /// Derive-reconstruct-compare over many trees.
    Roundtrip(RoundtripArgs),
    /// Check the four-point fixtures B1-B5 against (S1)-(S4) and (T1)-(T5).
    AuditFixtures(AuditArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckKind {
    Segments,
    Strict,
    Nonstrict,
    Burigana,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectKind {
    Segments,
    Strict,
    Nonstrict,
}

#[derive(Clone, Copy, ValueEnum)]
enum SemanticsArg {
    Rotation,
    Unordered,
}

impl From<SemanticsArg> for Semantics {
    fn from(s: SemanticsArg) -> Self {
        match s {
            SemanticsArg::Rotation => Semantics::Rotation,
            SemanticsArg::Unordered => Semantics::Unordered,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Constructive,
    Naive,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Constructive => Method::Constructive,
            MethodArg::Naive => Method::Naive,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    kind: CheckKind,
    /// Also check the consequences: corollaries for segments, (S5)-(S10) for strict.
    #[arg(long)]
    derived: bool,
    #[arg(long, value_enum, default_value = "rotation")]
    semantics: SemanticsArg,
    /// Report only the first witness per axiom.
    #[arg(long)]
    first_only: bool,
    /// Input document, or `-` for standard input.
    file: PathBuf,
}

#[derive(Args)]
struct DeriveArgs {
    #[arg(long, value_enum)]
    what: ObjectKind,
    /// Tree document, or `-` for standard input.
    file: PathBuf,
}

#[derive(Args)]
struct ReconstructArgs {
    #[arg(long, value_enum)]
    kind: ObjectKind,
    #[arg(long, value_enum, default_value = "constructive")]
    method: MethodArg,
    /// Root label for the constructive method; defaults to the first vertex.
    #[arg(long)]
    root: Option<String>,
    /// Input document, or `-` for standard input.
    file: PathBuf,
}

#[derive(Args)]
#[command(group(ArgGroup::new("mode").required(true).args(["exhaustive", "random"])))]
struct RoundtripArgs {
    /// Every labeled tree with at most N vertices.
    #[arg(long, value_name = "N")]
    exhaustive: Option<usize>,
    /// COUNT random trees; needs --size and --seed.
    #[arg(long, value_name = "COUNT", requires_all = ["size", "seed"])]
    random: Option<usize>,
    #[arg(long, value_name = "S", requires = "random")]
    size: Option<usize>,
    #[arg(long, value_name = "X", requires = "random")]
    seed: Option<u64>,
}

#[derive(Args)]
struct AuditArgs {
    #[arg(long, value_enum, default_value = "rotation")]
    semantics: SemanticsArg,
    /// Evaluate T columns on the fixture as listed rather than with degenerate triples added.
    #[arg(long)]
    raw_t_columns: bool,
}

struct Failure {
    code: u8,
    message: String,
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: INPUT,
        message: message.into(),
    }
}

/// Text to print and exit code.
type Outcome = Result<(String, u8), Failure>;

fn read_input(path: &PathBuf) -> Result<String, Failure> {
    let mut text = String::new();
    if path.as_os_str() == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| input_error(format!("standard input: {e}")))?;
    } else {
        text = std::fs::read_to_string(path)
            .map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    }
    Ok(text)
}

fn read_document(path: &PathBuf) -> Result<Document, Failure> {
    let text = read_input(path)?;
    parse_document(&text).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn wrong_kind(expected: &str, doc: &Document) -> Failure {
    input_error(format!(
        "expected a {expected} document, found {}",
        doc.kind().keyword()
    ))
}

fn report_outcome(report: AxiomReport, vertices: &VertexTable) -> Outcome {
    let code = if report.passed() { 0 } else { VIOLATION };
    Ok((report.render(vertices), code))
}

fn check(args: &CheckArgs) -> Outcome {
    let doc = read_document(&args.file)?;
    let mode = if args.first_only {
        ScanMode::FirstOnly
    } else {
        ScanMode::All
    };
    let options = CheckOptions::new(args.semantics.into(), mode);
    let not_strict = |e: treebetween::NotStrict| input_error(e.to_string());
    let report = match (args.kind, &doc) {
        (CheckKind::Segments, Document::Segments(m)) => {
            let mut r = check_segment_axioms(m, &options);
            if args.derived {
                r = r.merge(check_segment_corollaries(m, &options));
            }
            r
        }
        (CheckKind::Strict, Document::Relation(b)) => {
            let mut r = check_strict_axioms(b, &options).map_err(not_strict)?;
            if args.derived {
                r = r.merge(check_strict_derived(b, &options).map_err(not_strict)?);
            }
            r
        }
        (CheckKind::Nonstrict, Document::Relation(c)) => check_nonstrict_axioms(c, &options),
        (CheckKind::Burigana, Document::Relation(b)) => {
            check_burigana_axioms(b, &options).map_err(not_strict)?
        }
        (CheckKind::Segments, other) => return Err(wrong_kind("segments", other)),
        (_, other) => return Err(wrong_kind("relation", other)),
    };
    report_outcome(report, doc.vertices())
}

fn derive(args: &DeriveArgs) -> Outcome {
    let tree = match read_document(&args.file)? {
        Document::Tree(t) => t,
        other => return Err(wrong_kind("tree", &other)),
    };
    let text = match args.what {
        ObjectKind::Segments => emit_segments(&interval_function(&tree)),
        ObjectKind::Strict => emit_relation(&strict_betweenness(&tree)),
        ObjectKind::Nonstrict => emit_relation(&tree_betweenness(&tree)),
    };
    Ok((text, 0))
}

fn reconstruct(args: &ReconstructArgs) -> Outcome {
    let doc = read_document(&args.file)?;
    let root = match &args.root {
        Some(label) => Some(
            doc.vertices()
                .id(label)
                .ok_or_else(|| input_error(format!("unknown root label {label:?}")))?,
        ),
        None => None,
    };
    let method = args.method.into();
    let result = match (args.kind, &doc) {
        (ObjectKind::Segments, Document::Segments(m)) => tree_from_segments(m, method, root),
        (ObjectKind::Strict, Document::Relation(b)) => tree_from_strict(b, method, root),
        (ObjectKind::Nonstrict, Document::Relation(c)) => tree_from_nonstrict(c, method, root),
        (ObjectKind::Segments, other) => return Err(wrong_kind("segments", other)),
        (_, other) => return Err(wrong_kind("relation", other)),
    };
    match result {
        Ok(r) => Ok((emit_tree(&r.tree), 0)),
        Err(e) => {
            let code = match e {
                ReconstructError::Mismatch { .. } => MISMATCH,
                ReconstructError::NotStrict(_) | ReconstructError::RootOutOfRange { .. } => INPUT,
                _ => VIOLATION,
            };
            Err(Failure {
                code,
                message: e.to_string(),
            })
        }
    }
}

fn roundtrip(args: &RoundtripArgs) -> Outcome {
    let summary = match (args.exhaustive, args.random, args.size, args.seed) {
        (Some(n), _, _, _) => roundtrip_exhaustive(n),
        (None, Some(count), Some(size), Some(seed)) => roundtrip_random(count, size, seed),
        _ => {
            return Err(input_error(
                "roundtrip needs --exhaustive N or --random COUNT --size S --seed X",
            ))
        }
    }
    .map_err(|e| input_error(e.to_string()))?;
    let code = if summary.passed() { 0 } else { VIOLATION };
    Ok((summary.to_string(), code))
}

fn audit(args: &AuditArgs) -> Outcome {
    Ok((
        audit_fixtures(args.semantics.into(), args.raw_t_columns).to_string(),
        0,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(a) => check(a),
        Command::Derive(a) => derive(a),
        Command::Reconstruct(a) => reconstruct(a),
        Command::Roundtrip(a) => roundtrip(a),
        Command::AuditFixtures(a) => audit(a),
    };
    match outcome {
        Ok((text, code)) => {
            let mut out = io::stdout().lock();
            if out
                .write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .is_err()
            {
                return ExitCode::from(INPUT);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
