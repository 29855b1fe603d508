//! End-to-end behaviour of the `purity` binary and the document format.

use std::path::{Path, PathBuf};
use std::process::Command;

use purity_cli::commands::{run_command, EXIT_FAIL, EXIT_INPUT, EXIT_PASS};
use purity_cli::corpus::BUILTIN;
use purity_cli::document::{parse_document, to_toml, DiagnosticKind, Document};
use purity_core::invariants::FinMonoid;
use purity_core::models;
use purity_core::mutation::{apply, structure_mutations};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_purity"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

fn scratch(name: &str, text: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join("cli-tests");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn exit_codes_of_the_binary() {
    let (code, stdout, _) = bin(&["counterexample-c2"]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.contains("2 distinct"), "{stdout}");
    assert!(stdout.contains("not an epimorphism"), "{stdout}");

    let (code, _, stderr) = bin(&["frobnicate"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(stderr.contains("Usage"), "{stderr}");

    let (code, _, stderr) = bin(&["validate", "no/such.toml"]);
    assert_eq!(code, EXIT_INPUT);
    assert!(stderr.contains("no such file"), "{stderr}");

    let (code, stdout, _) = bin(&["--help"]);
    assert_eq!(code, EXIT_PASS);
    assert!(stdout.contains("counterexample-c2"));
}

#[test]
fn mutated_pentagon_fails_validation() {
    let text = BUILTIN.iter().find(|(n, _)| *n == "i1_C2").unwrap().1;
    let bad = text.replace(
        "associator = \"strict\"",
        "associator = [\n  [\"*\", \"*\", \"*\", \"-1\"],\n]",
    );
    assert_ne!(bad, text);
    let path = scratch("i1_C2_pentagon.toml", &bad);
    let (code, stdout, _) = bin(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_FAIL, "{stdout}");
    assert!(stdout.contains("pentagon"), "{stdout}");
}

#[test]
fn parse_errors_exit_with_input_code_and_location() {
    let text = BUILTIN.iter().find(|(n, _)| *n == "i0_C2").unwrap().1;
    let bad = text.replacen(
        "[\"id_1\", \"id_1\", \"id_1\"]",
        "[\"id_1\", \"id_7\", \"id_1\"]",
        1,
    );
    let path = scratch("i0_C2_dangling.toml", &bad);
    let (code, _, stderr) = bin(&["validate", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_INPUT);
    assert!(
        stderr.contains("dangling reference in `compose`"),
        "{stderr}"
    );
    assert!(stderr.contains("line "), "{stderr}");
}

#[test]
fn local_corpus_members_resolve_next_to_the_manifest() {
    let text = BUILTIN.iter().find(|(n, _)| *n == "i0_C2").unwrap().1;
    scratch(
        "local_member.toml",
        &text.replace("name = \"i0(C2)\"", "name = \"local copy\""),
    );
    let manifest = scratch(
        "local_corpus.toml",
        "kind = \"corpus\"\nname = \"local\"\nmembers = [\"local_member\", \"i1_C2\"]\n",
    );
    let o = run_command("validate", &[manifest.to_str().unwrap()]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert!(o.report.contains("local copy"), "{}", o.report);
    assert!(o.report.contains("i1(C2)"), "{}", o.report);
}

/// The full command suite over the built-in corpus.
#[test]
fn command_suite_over_builtin_corpus() {
    let suite: &[&[&str]] = &[
        &["validate", "probes"],
        &["validate", "monoids"],
        &["pic", "probes"],
        &["purify", "probes"],
        &["sequence", "probes"],
        &["invariants", "probes"],
        &["invariants", "monoids"],
        &["torsion2"],
        &["trivial", "probes"],
        &["counterexample-c2"],
        &["enumerate", "R_i0_C2", "i1_C2", "--nullhomotopies"],
    ];
    for args in suite {
        let o = run_command(args[0], &args[1..]);
        assert_eq!(o.code, EXIT_PASS, "{args:?}\n{}", o.report);
    }
}

fn golden(name: &str, args: &[&str]) {
    let path = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"));
    let o = run_command(args[0], &args[1..]);
    assert_eq!(o.code, EXIT_PASS, "{}", o.report);
    assert_eq!(
        o.report,
        run_command(args[0], &args[1..]).report,
        "nondeterministic"
    );
    if std::env::var_os("PURITY_BLESS").is_some() {
        std::fs::write(&path, &o.report).unwrap();
    }
    let expected = std::fs::read_to_string(&path).unwrap();
    assert_eq!(o.report, expected, "golden report {name} changed");
}

#[test]
fn golden_reports() {
    golden("counterexample-c2", &["counterexample-c2"]);
    golden("invariants-i0_ML", &["invariants", "i0_ML"]);
    golden("torsion2-i0_Z3", &["torsion2", "i0_Z3"]);
}

#[test]
fn invariants_rows_of_ml() {
    let o = run_command("invariants", &["i0_ML"]);
    let top = o.report.lines().find(|l| l.contains("top:")).unwrap();
    // U(ML) ≅ C2 → ML → Pure(ML) ≅ L
    assert!(
        top.starts_with("  top:    K(Pic(i0(ML))) {[(1,1)], [(-1,1)]}"),
        "{top}"
    );
    assert!(top.ends_with("K(P(i0(ML))) {[(1,1)], [(1,z)]}"), "{top}");
    assert!(o
        .report
        .contains("all three vertical maps are isomorphisms"));
}

fn random_monoid(rng: &mut ChaCha8Rng) -> FinMonoid {
    let n = rng.random_range(1..5);
    let elements = (0..n).map(|i| format!("e{i} \"q\"")).collect();
    let table = (0..n * n).map(|_| rng.random_range(0..n)).collect();
    FinMonoid::new("random", elements, table, rng.random_range(0..n)).unwrap()
}

#[test]
fn serialisation_roundtrips_on_random_and_mutated_inputs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let doc = Document::Monoid(random_monoid(&mut rng));
        assert_eq!(parse_document(&to_toml(&doc)).unwrap(), doc);
    }
    for m in models::corpus() {
        let muts = structure_mutations(&m);
        for _ in 0..20.min(muts.len()) {
            let mu = muts[rng.random_range(0..muts.len())];
            let doc = Document::Monoidal(apply(&m, &mu));
            let text = to_toml(&doc);
            assert_eq!(parse_document(&text).unwrap(), doc, "{mu}\n{text}");
        }
    }
}

#[test]
fn parsing_is_total_on_corrupted_text() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let alphabet: Vec<char> = "[]\",=\n abc_1-*".chars().collect();
    for (_, text) in BUILTIN {
        let chars: Vec<char> = text.chars().collect();
        for _ in 0..40 {
            let mut c = chars.clone();
            for _ in 0..rng.random_range(1..4) {
                let i = rng.random_range(0..c.len());
                match rng.random_range(0..3) {
                    0 => {
                        c.remove(i);
                    }
                    1 => c.insert(i, alphabet[rng.random_range(0..alphabet.len())]),
                    _ => c[i] = alphabet[rng.random_range(0..alphabet.len())],
                }
            }
            let corrupted: String = c.into_iter().collect();
            let first = parse_document(&corrupted);
            assert_eq!(first, parse_document(&corrupted));
            if let Err(d) = first {
                assert!(d.line >= 1 && d.column >= 1);
                assert!(d.line <= corrupted.lines().count().max(1) + 1, "{d}");
            }
        }
    }
}

#[test]
fn diagnostics_name_their_field() {
    let text = BUILTIN.iter().find(|(n, _)| *n == "C2").unwrap().1;
    let d = parse_document(&text.replace("unit = \"1\"\n", "")).unwrap_err();
    assert_eq!(
        (d.kind, d.field.as_str()),
        (DiagnosticKind::Missing, "unit")
    );
    let d = parse_document(&text.replace("[\"-1\", \"-1\", \"1\"]", "[\"-1\", \"-1\", \"2\"]"))
        .unwrap_err();
    assert_eq!(
        (d.kind, d.field.as_str()),
        (DiagnosticKind::Dangling, "product")
    );
    let d = parse_document(&text.replace("[\"-1\", \"-1\", \"1\"]", "[\"-1\", \"1\", \"1\"]"))
        .unwrap_err();
    assert_eq!(d.kind, DiagnosticKind::Duplicate);
}
