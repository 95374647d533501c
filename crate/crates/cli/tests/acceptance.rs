//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero on any failure.

use std::collections::BTreeSet;
use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Stdio};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use treebetween::axioms::{
    check_burigana_axioms, check_nonstrict_axioms, check_segment_axioms, check_segment_corollaries,
};
use treebetween::format::{
    emit_document, emit_relation, emit_segments, emit_tree, parse_document, Document,
};
use treebetween::harness::{
    audit_fixtures, fixtures, mutation_witness_test, roundtrip_exhaustive, AuditCell,
};
use treebetween::{
    check_strict_axioms, check_strict_derived, enumerate_labeled_trees, interval_function,
    random_tree, revalidate, strict_betweenness, tree_betweenness, tree_from_nonstrict,
    tree_from_segments, tree_from_strict, Axiom, AxiomReport, CheckOptions, Method, ScanMode,
    SegmentMap, Semantics, Subject, TernaryRelation, Tree, VertexTable,
};

const EXHAUSTIVE_N: usize = 7;
const EXHAUSTIVE_TREES: usize = 18_249;
const EXHAUSTIVE_BUDGET: Duration = Duration::from_secs(120);
const SWEEP_N: usize = 6;
const SWEEP_TREES: usize = 1_442;
const MUTATION_COUNT: usize = 1_000;
const MUTATION_SEED: u64 = 7;
const ROOT_TREES: usize = 100;
const ROOT_SIZE: usize = 50;
const ROOTS_PER_TREE: usize = 5;
const ROOT_SEED: u64 = 1;
const BATTERY_SIZE: usize = 60;
const BATTERY_BUDGET: Duration = Duration::from_secs(60);
const RECONSTRUCT_SIZE: usize = 500;
const RECONSTRUCT_BUDGET: Duration = Duration::from_secs(60);
const SCALE_SEED: u64 = 2;
const RANDOM_DOCUMENTS: usize = 1_000;
const DOCUMENT_SEED: u64 = 3;

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Cayley count by repeated multiplication.
fn cayley(n: usize) -> usize {
    if n <= 2 {
        1
    } else {
        (0..n - 2).fold(1, |acc, _| acc * n)
    }
}

fn exhaustive_round_trip() -> Verdict {
    for n in 1..=EXHAUSTIVE_N {
        let count = enumerate_labeled_trees(n).unwrap().count();
        ensure(count == cayley(n), || {
            format!("n={n}: {count} trees, expected {}", cayley(n))
        })?;
    }
    let start = Instant::now();
    let summary = roundtrip_exhaustive(EXHAUSTIVE_N).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let header = summary
        .to_string()
        .lines()
        .next()
        .unwrap_or_default()
        .to_string();
    ensure(
        header == format!("trees: {EXHAUSTIVE_TREES}, failures: 0"),
        || header.clone(),
    )?;
    // 3 pipelines x 2 methods x 2 roots, except n = 1 with one root.
    let runs = 12 * (EXHAUSTIVE_TREES - 1) + 6;
    ensure(summary.runs == runs, || {
        format!("{} runs, expected {runs}", summary.runs)
    })?;
    ensure(elapsed <= EXHAUSTIVE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!(
        "{header}; {} runs in {:.2}s",
        summary.runs,
        elapsed.as_secs_f64()
    ))
}

fn battery(tree: &Tree, s: Semantics, include_s10: bool) -> Vec<AxiomReport> {
    let o = CheckOptions::new(s, ScanMode::All);
    let map = interval_function(tree);
    let b = strict_betweenness(tree);
    let c = tree_betweenness(tree);
    let mut reports = vec![
        check_segment_axioms(&map, &o),
        check_segment_corollaries(&map, &o),
        check_strict_axioms(&b, &o).unwrap(),
        check_burigana_axioms(&b, &o).unwrap(),
        check_nonstrict_axioms(&c, &o),
    ];
    if include_s10 {
        reports.push(check_strict_derived(&b, &o).unwrap());
    }
    reports
}

fn soundness_sweep() -> Verdict {
    let mut trees = 0;
    let mut checked = BTreeSet::new();
    for n in 1..=SWEEP_N {
        for tree in enumerate_labeled_trees(n).unwrap() {
            trees += 1;
            for s in Semantics::BOTH {
                for report in battery(&tree, s, true) {
                    checked.extend(report.checked.iter().copied());
                    if let Some(v) = report.violations.first() {
                        return Err(format!(
                            "{} on {:?}",
                            v.render(tree.vertices()),
                            tree.edges()
                        ));
                    }
                }
            }
        }
    }
    ensure(trees == SWEEP_TREES, || format!("{trees} trees"))?;
    ensure(checked.len() == Axiom::ALL.len(), || {
        format!("{} of {} axioms checked", checked.len(), Axiom::ALL.len())
    })?;
    Ok(format!(
        "{trees} trees, {} axioms, both semantics, 0 violations",
        checked.len()
    ))
}

fn failed_names(matrix: &treebetween::harness::AuditMatrix, row: &str) -> Vec<&'static str> {
    matrix
        .row(row)
        .unwrap()
        .failed()
        .iter()
        .map(|a| a.name())
        .collect()
}

fn cells_revalidate(matrix: &treebetween::harness::AuditMatrix) -> Result<(), String> {
    for row in &matrix.rows {
        for (axiom, cell) in &row.cells {
            if let AuditCell::Fail(v) = cell {
                let subject = if axiom.name().starts_with('T') {
                    &row.t_subject
                } else {
                    &row.relation
                };
                ensure(
                    revalidate(v, Subject::Relation(subject), matrix.semantics),
                    || format!("{} {v}", row.name),
                )?;
            }
        }
    }
    Ok(())
}

fn fixture_audit() -> Verdict {
    let matrix = audit_fixtures(Semantics::Unordered, false);
    let expected: [(&str, &[&str]); 4] = [
        ("B1", &["S1", "T1"]),
        ("B2", &["S2", "T2"]),
        ("B3", &["S3", "T3"]),
        ("B5", &["T5"]),
    ];
    for (row, want) in expected {
        let got = failed_names(&matrix, row);
        ensure(got == want, || {
            format!("{row} fails {got:?}, expected {want:?}")
        })?;
    }
    cells_revalidate(&matrix)?;
    // B4 is the star's strict betweenness; a tree relation fails nothing.
    let star = Tree::from_ids(fixtures::vertices(), [(0, 3), (1, 3), (2, 3)]).unwrap();
    ensure(strict_betweenness(&star) == fixtures::b4(), || {
        "B4 differs from the star".into()
    })?;
    let b4 = failed_names(&matrix, "B4");
    ensure(b4.is_empty(), || format!("B4 fails {b4:?}"))?;
    let text = matrix.to_string();
    ensure(
        text == audit_fixtures(Semantics::Unordered, false).to_string(),
        || "nondeterministic".into(),
    )?;
    ensure(text.contains("B4 fails: none"), || {
        "B4 result not stated".into()
    })?;
    Ok("B1 {S1,T1}, B2 {S2,T2}, B3 {S3,T3}, B5 {T5}; computed B4 row: fails none".into())
}

fn semantics_divergence() -> Verdict {
    let rot = audit_fixtures(Semantics::Rotation, false);
    let un = audit_fixtures(Semantics::Unordered, false);
    let rot_b1 = rot.row("B1").unwrap();
    let Some(AuditCell::Fail(v)) = rot_b1.cell(Axiom::S4) else {
        return Err("B1 S4 passes under rotation".into());
    };
    ensure(
        revalidate(v, Subject::Relation(&rot_b1.relation), Semantics::Rotation),
        || format!("{v} invalid"),
    )?;
    ensure(
        un.row("B1").unwrap().cell(Axiom::S4) == Some(&AuditCell::Pass),
        || "B1 S4 fails unordered".into(),
    )?;
    for name in ["B2", "B3"] {
        ensure(
            rot.row(name).unwrap().cells == un.row(name).unwrap().cells,
            || format!("{name} differs"),
        )?;
    }
    cells_revalidate(&rot)?;
    Ok(format!(
        "B1 S4 fails at {} under rotation; B2, B3 unchanged",
        v.render(&fixtures::vertices())
    ))
}

fn witness_validity() -> Verdict {
    let s = mutation_witness_test(MUTATION_COUNT, MUTATION_SEED);
    ensure(s.iterations == MUTATION_COUNT, || {
        format!("{} iterations", s.iterations)
    })?;
    ensure(s.revalidated == MUTATION_COUNT, || {
        format!("{}/{} re-validated", s.revalidated, s.iterations)
    })?;
    ensure(s.survivors.is_empty(), || {
        format!("{} survivors", s.survivors.len())
    })?;
    Ok(format!(
        "{}/{} re-validated ({} witnesses), {} survivors",
        s.revalidated,
        s.iterations,
        s.witnesses,
        s.survivors.len()
    ))
}

fn root_invariance() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(ROOT_SEED);
    let mut runs = 0;
    for _ in 0..ROOT_TREES {
        let tree = random_tree(ROOT_SIZE, &mut rng);
        let expected = emit_tree(&tree);
        let (map, b, c) = (
            interval_function(&tree),
            strict_betweenness(&tree),
            tree_betweenness(&tree),
        );
        let roots: Vec<usize> = (0..ROOTS_PER_TREE)
            .map(|_| rng.gen_range(0..ROOT_SIZE))
            .collect();
        for &root in &roots {
            for m in Method::BOTH {
                let rebuilt = [
                    tree_from_segments(&map, m, Some(root)),
                    tree_from_strict(&b, m, Some(root)),
                    tree_from_nonstrict(&c, m, Some(root)),
                ];
                for r in rebuilt {
                    let r = r.map_err(|e| e.to_string())?;
                    runs += 1;
                    ensure(emit_tree(&r.tree) == expected, || {
                        format!("root {root} method {m} differs")
                    })?;
                }
            }
        }
    }
    Ok(format!(
        "{ROOT_TREES} trees at n={ROOT_SIZE}, {runs} reconstructions byte-identical"
    ))
}

fn scale() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(SCALE_SEED);
    let tree = random_tree(BATTERY_SIZE, &mut rng);
    let start = Instant::now();
    for s in Semantics::BOTH {
        for report in battery(&tree, s, false) {
            ensure(report.passed(), || {
                "battery reported a violation on a tree".into()
            })?;
        }
        let b = strict_betweenness(&tree);
        // (S5)-(S10) together, so the derived scans are included too.
        ensure(
            check_strict_derived(&b, &CheckOptions::new(s, ScanMode::All))
                .unwrap()
                .passed(),
            || "derived".into(),
        )?;
    }
    let battery_time = start.elapsed();
    ensure(battery_time <= BATTERY_BUDGET, || {
        format!("battery took {battery_time:?}")
    })?;

    let big = random_tree(RECONSTRUCT_SIZE, &mut rng);
    let (map, b, c) = (
        interval_function(&big),
        strict_betweenness(&big),
        tree_betweenness(&big),
    );
    let start = Instant::now();
    let rebuilt = [
        tree_from_segments(&map, Method::Constructive, None),
        tree_from_strict(&b, Method::Constructive, None),
        tree_from_nonstrict(&c, Method::Constructive, None),
    ];
    let reconstruct_time = start.elapsed();
    for r in rebuilt {
        let r = r.map_err(|e| e.to_string())?;
        ensure(r.verified && r.tree == big, || "wrong tree at scale".into())?;
    }
    ensure(reconstruct_time <= RECONSTRUCT_BUDGET, || {
        format!("reconstruction took {reconstruct_time:?}")
    })?;
    Ok(format!(
        "battery at n={BATTERY_SIZE} in {:.2}s (both semantics, S10 included); 3 reconstructions at n={RECONSTRUCT_SIZE} in {:.2}s",
        battery_time.as_secs_f64(),
        reconstruct_time.as_secs_f64()
    ))
}

fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Arc<VertexTable> {
    const ALPHABET: &[u8] = b"abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_.-";
    let mut labels = BTreeSet::new();
    while labels.len() < n {
        let len = rng.gen_range(1..=4);
        let label: String = (0..len)
            .map(|_| ALPHABET[rng.gen_range(0..ALPHABET.len())] as char)
            .collect();
        labels.insert(label);
    }
    let mut labels: Vec<String> = labels.into_iter().collect();
    for i in (1..labels.len()).rev() {
        labels.swap(i, rng.gen_range(0..=i));
    }
    Arc::new(VertexTable::new(labels).unwrap())
}

fn random_document(rng: &mut ChaCha8Rng) -> Document {
    let n = rng.gen_range(1..=6);
    let vertices = random_labels(rng, n);
    match rng.gen_range(0..3) {
        0 => {
            let shape = random_tree(n, rng);
            Document::Tree(Tree::from_ids(vertices, shape.edges().iter().copied()).unwrap())
        }
        1 => {
            let density = rng.gen_range(0.0..1.0);
            let strict_only = rng.gen_bool(0.5);
            let mut b = TernaryRelation::builder(vertices);
            for u in 0..n {
                for v in 0..n {
                    for w in 0..n {
                        let repeated = u == v || v == w || u == w;
                        if !(strict_only && repeated) && rng.gen_bool(density) {
                            b.insert(u, v, w);
                        }
                    }
                }
            }
            Document::Relation(b.build())
        }
        _ => {
            let density = rng.gen_range(0.0..1.0);
            let mut b = SegmentMap::builder(vertices);
            for u in 0..n {
                for v in 0..n {
                    for x in 0..n {
                        if rng.gen_bool(density) {
                            b.insert(u, v, x);
                        }
                    }
                }
            }
            Document::Segments(b.build())
        }
    }
}

fn identity(doc: &Document) -> Result<(), String> {
    let text = emit_document(doc);
    let parsed = parse_document(&text).map_err(|e| format!("{e} in\n{text}"))?;
    ensure(&parsed == doc, || {
        format!("parse(emit(x)) != x for\n{text}")
    })?;
    ensure(emit_document(&parsed) == text, || {
        format!("emit not idempotent for\n{text}")
    })
}

struct Scratch {
    dir: PathBuf,
}

impl Scratch {
    fn new() -> Self {
        let dir =
            std::env::temp_dir().join(format!("treebetween-acceptance-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        Scratch { dir }
    }

    fn file(&self, name: &str, text: &str) -> String {
        let path = self.dir.join(name);
        std::fs::write(&path, text).unwrap();
        path.to_string_lossy().into_owned()
    }
}

impl Drop for Scratch {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.dir);
    }
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str], stdin: Option<&str>) -> Run {
    let mut child = Command::new(env!("CARGO_BIN_EXE_treebetween"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    let input = stdin.unwrap_or("").to_string();
    let mut pipe = child.stdin.take().unwrap();
    let writer = std::thread::spawn(move || {
        let _ = pipe.write_all(input.as_bytes());
    });
    let out = child.wait_with_output().unwrap();
    writer.join().unwrap();
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

fn exit_codes() -> Result<usize, String> {
    let scratch = Scratch::new();
    let p3 = Tree::from_ids(
        Arc::new(VertexTable::new(["a", "b", "c"]).unwrap()),
        [(0, 1), (1, 2)],
    )
    .unwrap();
    let p3_text = emit_tree(&p3);
    let p3_file = scratch.file("p3.tree", &p3_text);
    let b1 = scratch.file("b1.rel", &emit_relation(&fixtures::b1()));
    let b2 = scratch.file("b2.rel", &emit_relation(&fixtures::b2()));
    let b5 = scratch.file("b5.rel", &emit_relation(&fixtures::b5()));
    let strict_p3 = scratch.file("p3.rel", &emit_relation(&strict_betweenness(&p3)));
    let mut broken = interval_function(&p3).to_builder();
    broken.set_segment(0, 2, &[0, 2]).set_segment(2, 0, &[0, 2]);
    let broken = scratch.file("broken.seg", &emit_segments(&broken.build()));
    let bad = scratch.file("bad.tree", "tree\nvertices a b\nedge a q\n");
    let missing = scratch
        .dir
        .join("missing.tree")
        .to_string_lossy()
        .into_owned();

    let mut checked = 0;
    let mut expect = |args: &[&str], stdin: Option<&str>, code: i32| -> Result<Run, String> {
        let run = cli(args, stdin);
        checked += 1;
        ensure(run.code == code, || {
            format!(
                "{args:?}: exit {} (expected {code}); stderr {}",
                run.code, run.stderr
            )
        })?;
        Ok(run)
    };

    let run = expect(&["check", "--kind", "strict", &b1], None, 1)?;
    ensure(run.stdout.lines().next() == Some("S1 u v w"), || {
        run.stdout.clone()
    })?;
    expect(&["check", "--kind", "strict", &strict_p3], None, 0)?;
    expect(
        &[
            "check",
            "--kind",
            "burigana",
            "--semantics",
            "unordered",
            &b1,
        ],
        None,
        1,
    )?;
    expect(&["check", "--kind", "nonstrict", &b5], None, 1)?;
    expect(&["check", "--kind", "strict", &b5], None, 2)?;
    expect(&["check", "--kind", "segments", &b1], None, 2)?;
    expect(
        &["check", "--kind", "segments", "--derived", &broken],
        None,
        1,
    )?;
    let run = expect(&["check", "--kind", "strict", &bad], None, 2)?;
    ensure(run.stderr.contains("line 3"), || run.stderr.clone())?;
    expect(&["check", "--kind", "strict", &missing], None, 2)?;
    let derived = expect(&["derive", "--what", "segments", &p3_file], None, 0)?;
    let rebuilt = expect(
        &["reconstruct", "--kind", "segments", "-"],
        Some(&derived.stdout),
        0,
    )?;
    ensure(rebuilt.stdout == p3_text, || rebuilt.stdout.clone())?;
    expect(&["reconstruct", "--kind", "segments", &broken], None, 3)?;
    expect(&["reconstruct", "--kind", "strict", &b2], None, 1)?;
    expect(
        &["reconstruct", "--kind", "strict", "--root", "q", &b1],
        None,
        2,
    )?;
    expect(&["reconstruct", "--kind", "nonstrict", &b5], None, 1)?;
    expect(&["reconstruct", "--kind", "strict", &b5], None, 2)?;
    let run = expect(&["roundtrip", "--exhaustive", "3"], None, 0)?;
    ensure(run.stdout.starts_with("trees: 5, failures: 0\n"), || {
        run.stdout.clone()
    })?;
    expect(
        &["roundtrip", "--random", "3", "--size", "5", "--seed", "1"],
        None,
        0,
    )?;
    expect(&["roundtrip", "--exhaustive", "0"], None, 2)?;
    expect(&["roundtrip", "--random", "3"], None, 2)?;
    let run = expect(&["audit-fixtures", "--semantics", "unordered"], None, 0)?;
    ensure(run.stdout.starts_with("semantics: unordered"), || {
        run.stdout.clone()
    })?;
    let run = expect(&["frobnicate"], None, 2)?;
    ensure(run.stderr.contains("Usage"), || run.stderr.clone())?;
    let run = expect(&["check", "--kind", "strict", "--bogus", &b1], None, 2)?;
    ensure(run.stderr.contains("Usage"), || run.stderr.clone())?;
    expect(&["check", "--kind", "weird", &b1], None, 2)?;
    expect(&[], None, 2)?;
    expect(&["--help"], None, 0)?;
    Ok(checked)
}

fn format_stability() -> Verdict {
    let p4 = Tree::from_ids(fixtures::vertices(), [(0, 1), (1, 2), (2, 3)]).unwrap();
    let mut fixed: Vec<Document> = fixtures::all()
        .into_iter()
        .map(|(_, r)| Document::Relation(r))
        .collect();
    fixed.extend([
        Document::Tree(p4.clone()),
        Document::Segments(interval_function(&p4)),
        Document::Relation(strict_betweenness(&p4)),
        Document::Relation(tree_betweenness(&p4)),
    ]);
    for doc in &fixed {
        identity(doc)?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(DOCUMENT_SEED);
    for _ in 0..RANDOM_DOCUMENTS {
        identity(&random_document(&mut rng))?;
    }
    let invocations = exit_codes()?;
    Ok(format!(
        "{} fixture and {RANDOM_DOCUMENTS} random documents round-trip; {invocations} CLI exit codes match the table",
        fixed.len()
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exhaustive round trip", exhaustive_round_trip),
        ("axiom soundness sweep", soundness_sweep),
        ("fixture audit", fixture_audit),
        ("semantics divergence", semantics_divergence),
        ("witness validity", witness_validity),
        ("root invariance and method agreement", root_invariance),
        ("scale", scale),
        ("format stability", format_stability),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
