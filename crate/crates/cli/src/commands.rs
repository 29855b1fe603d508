//! The command surface. Every command writes a deterministic plain-text
//! report and maps its verdict to an exit code.

use std::fmt::Write as _;
use std::sync::Arc;

use clap::{Parser, Subcommand};
use purity_core::fincat::{enumerate_functors, validate_category, FinCategory, FinFunctor};
use purity_core::invariants::{
    compare_k_sequences, compare_pi_sequences, iff_checks, k, pi0, pi1, validate_monoid, FinMonoid,
};
use purity_core::moncat::{
    distinct_underlying, enumerate_monoidal_functors, validate_monoidal, validate_monoidal_functor,
    MonoidalFunctor, MonoidalStructure,
};
use purity_core::mutation::sensitivity;
use purity_core::nullhomotopy::nullhomotopies;
use purity_core::search::DEFAULT_BUDGET;
use purity_core::tor2group::torsion_sequence_report;
use purity_core::torsion::{
    c2_counterexample, cokernel_of_identity, identity_cokernel_sequence, identity_kernel_sequence,
    is_trivial_category, kernel_of_identity, lemma35_check, lemma36_check, purify,
    verify_canonical, verify_cokernel, verify_kernel, ProbeSet,
};
use purity_core::twogroup::{is_pure, is_two_group, pic, weakly_invertible_objects};
use purity_core::{Budget, Error};

use crate::corpus::{load_all, LoadError};
use crate::document::Document;

/// Minimum number of single-entry mutations `validate --sensitivity`
/// requires per structure.
pub const MIN_MUTATIONS: usize = 20;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "purity",
    version,
    about = "Checks finite symmetric monoidal categories, purification and homotopy torsion theories"
)]
pub struct Cli {
    /// Search budget for exhaustive enumeration, in candidate extensions.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,

    #[command(subcommand)]
    pub command: Command,
}

/// Document arguments are file paths or built-in names; a corpus document
/// stands for all of its members.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check category, monoidal and monoid axioms.
    Validate {
        doc: String,
        /// Also require every single-entry structure mutation to be rejected.
        #[arg(long)]
        sensitivity: bool,
    },
    /// Weakly invertible objects, the Picard 2-group and purity.
    Pic { doc: String },
    /// Build the purification quotient and check its laws.
    Purify { doc: String },
    /// Verify the canonical sequence Pic(M) → M → P(M) against probes.
    Sequence {
        doc: String,
        #[arg(long, default_value = "probes")]
        probes: String,
    },
    /// Homotopy invariants K, π0, π1 and the row comparisons.
    Invariants { doc: String },
    /// The torsion sequence T(G) → G → Φ(G) of symmetric 2-groups.
    Torsion2 {
        #[arg(default_value = "two_groups")]
        doc: String,
        #[arg(long, default_value = "two_groups")]
        probes: String,
    },
    /// S(M) and R(M) as kernel and cokernel of the identity, with strongness.
    Trivial {
        doc: String,
        #[arg(long, default_value = "probes")]
        probes: String,
    },
    /// Reproduce the example where the projection onto P is not an epimorphism.
    #[command(name = "counterexample-c2")]
    CounterexampleC2,
    /// List functors between two documents.
    Enumerate {
        from: String,
        to: String,
        /// Count nullhomotopies of every monoidal functor.
        #[arg(long, conflicts_with = "underlying")]
        nullhomotopies: bool,
        /// Enumerate plain functors between the underlying categories.
        #[arg(long)]
        underlying: bool,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

#[derive(Debug, thiserror::Error)]
enum Failure {
    #[error(transparent)]
    Load(#[from] LoadError),
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] Error),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Core(Error::Internal(_)) => EXIT_FAIL,
            _ => EXIT_INPUT,
        }
    }
}

type Step = Result<bool, Failure>;

/// Parses `argv` (including the program name) and runs the command.
pub fn run_args<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => run(&cli),
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INPUT
            } else {
                EXIT_PASS
            };
            Outcome {
                code,
                report: e.render().to_string(),
            }
        }
    }
}

/// Runs command `name` with `args`, as the binary would.
pub fn run_command(name: &str, args: &[&str]) -> Outcome {
    run_args(["purity", name].into_iter().chain(args.iter().copied()))
}

pub fn run(cli: &Cli) -> Outcome {
    let budget = Budget::new(cli.budget);
    let mut out = String::new();
    let verdict = match &cli.command {
        Command::Validate { doc, sensitivity } => each(doc, &mut out, |label, d, out| {
            validate(label, d, *sensitivity, out)
        }),
        Command::Pic { doc } => each_monoidal(doc, &mut out, pic_report),
        Command::Purify { doc } => each_monoidal(doc, &mut out, purify_report),
        Command::Sequence { doc, probes } => load_probes(probes).and_then(|probes| {
            each_monoidal(doc, &mut out, |m, out| sequence(m, &probes, &budget, out))
        }),
        Command::Invariants { doc } => {
            each(doc, &mut out, |label, d, out| invariants(label, d, out))
        }
        Command::Torsion2 { doc, probes } => load_probes(probes).and_then(|probes| {
            each_monoidal(doc, &mut out, |g, out| {
                let r = torsion_sequence_report(g, &probes, &budget)?;
                writeln!(out, "{r}").unwrap();
                Ok(r.passed())
            })
        }),
        Command::Trivial { doc, probes } => load_probes(probes).and_then(|probes| {
            each_monoidal(doc, &mut out, |m, out| trivial(m, &probes, &budget, out))
        }),
        Command::CounterexampleC2 => c2_counterexample(&budget).map_err(Failure::from).map(|r| {
            writeln!(out, "{r}").unwrap();
            r.passed()
        }),
        Command::Enumerate {
            from,
            to,
            nullhomotopies,
            underlying,
        } => enumerate(from, to, *nullhomotopies, *underlying, &budget, &mut out),
    };
    match verdict {
        Ok(true) => Outcome {
            code: EXIT_PASS,
            report: out,
        },
        Ok(false) => {
            out.push_str("result: FAILED\n");
            Outcome {
                code: EXIT_FAIL,
                report: out,
            }
        }
        Err(e) => {
            writeln!(out, "error: {e}").unwrap();
            Outcome {
                code: e.code(),
                report: out,
            }
        }
    }
}

/// Runs `step` on every document `reference` expands to; passes if all do.
fn each(
    reference: &str,
    out: &mut String,
    mut step: impl FnMut(&str, Document, &mut String) -> Step,
) -> Step {
    let mut all = true;
    for (label, doc) in load_all(reference)? {
        all &= step(&label, doc, out)?;
    }
    Ok(all)
}

fn each_monoidal(
    reference: &str,
    out: &mut String,
    mut step: impl FnMut(&Arc<MonoidalStructure>, &mut String) -> Step,
) -> Step {
    each(reference, out, |label, doc, out| {
        let m = Arc::new(expect_monoidal(label, doc)?);
        step(&m, out)
    })
}

fn expect_monoidal(label: &str, doc: Document) -> Result<MonoidalStructure, Failure> {
    match doc {
        Document::Monoidal(m) => Ok(m),
        other => Err(Failure::Input(format!(
            "{label}: expected a monoidal document, found a {} document",
            other.kind()
        ))),
    }
}

fn load_probes(reference: &str) -> Result<Vec<Arc<MonoidalStructure>>, Failure> {
    load_all(reference)?
        .into_iter()
        .map(|(label, doc)| expect_monoidal(&label, doc).map(Arc::new))
        .collect()
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn validate(label: &str, doc: Document, with_sensitivity: bool, out: &mut String) -> Step {
    match doc {
        Document::Category(c) => {
            let r = validate_category(&c);
            write!(out, "{}: {r}", c.name()).unwrap();
            Ok(r.is_valid())
        }
        Document::Monoidal(m) => {
            let base = validate_category(m.cat());
            write!(out, "{} category: {base}", m.name()).unwrap();
            if !base.is_valid() {
                return Ok(false);
            }
            let r = validate_monoidal(&m)?;
            write!(out, "{} monoidal structure: {r}", m.name()).unwrap();
            let mut ok = r.is_valid();
            if with_sensitivity && ok {
                let s = sensitivity(&m)?;
                let passed = s.passed(MIN_MUTATIONS);
                writeln!(
                    out,
                    "{s} (at least {MIN_MUTATIONS} required: {})",
                    mark(passed)
                )
                .unwrap();
                ok &= passed;
            }
            Ok(ok)
        }
        Document::Monoid(m) => {
            let r = validate_monoid(&m);
            write!(out, "{}: {r}", m.name).unwrap();
            Ok(r.is_valid())
        }
        Document::Corpus { .. } => Err(Failure::Input(format!("{label}: nested corpus"))),
    }
}

fn names(m: &MonoidalStructure, objects: &[purity_core::fincat::Obj]) -> String {
    let v: Vec<&str> = objects.iter().map(|&x| m.cat().object_name(x)).collect();
    format!("{{{}}}", v.join(", "))
}

fn pic_report(m: &Arc<MonoidalStructure>, out: &mut String) -> Step {
    let w = weakly_invertible_objects(m);
    let (p, inclusion) = pic(m)?;
    let group = is_two_group(&p);
    let inclusion_ok = validate_monoidal_functor(&inclusion)?.is_valid();
    let purity = is_pure(m)?;
    writeln!(out, "{}", m.name()).unwrap();
    writeln!(out, "  weakly invertible objects: {}", names(m, &w)).unwrap();
    writeln!(
        out,
        "  {}: {} objects, {} morphisms, 2-group: {}",
        p.name(),
        p.cat().object_count(),
        p.cat().morphism_count(),
        group.is_two_group
    )
    .unwrap();
    writeln!(out, "  inclusion is a monoidal functor: {inclusion_ok}").unwrap();
    writeln!(out, "  {purity}").unwrap();
    Ok(group.is_two_group && inclusion_ok)
}

fn purify_report(m: &Arc<MonoidalStructure>, out: &mut String) -> Step {
    let q = purify(m)?;
    let p = q.purified.cat();
    let purity = is_pure(&q.purified)?;
    let checks = [
        (
            "P(M) is a valid monoidal category",
            validate_monoidal(&q.purified)?.is_valid(),
        ),
        (
            "projection is a monoidal functor",
            validate_monoidal_functor(&q.projection)?.is_valid(),
        ),
        ("class congruence", q.congruence_report().is_valid()),
        ("pure-iso lemma", lemma35_check(&q).is_valid()),
        ("commuting square", lemma36_check(&q).is_valid()),
        ("P(M) is pure", purity.pure),
        ("μ is a nullhomotopy", q.mu().is_ok()),
    ];
    writeln!(out, "{} -> {}", m.name(), q.purified.name()).unwrap();
    writeln!(
        out,
        "  {} objects, {} arrow classes, labels {}",
        p.object_count(),
        q.classes.len(),
        names(&q.sub, &q.sub.cat().objects().collect::<Vec<_>>())
    )
    .unwrap();
    writeln!(out, "  {purity}").unwrap();
    for (what, ok) in checks {
        writeln!(out, "  {what}: {}", mark(ok)).unwrap();
    }
    Ok(checks.iter().all(|(_, ok)| *ok))
}

fn sequence(
    m: &Arc<MonoidalStructure>,
    probes: &[Arc<MonoidalStructure>],
    budget: &Budget,
    out: &mut String,
) -> Step {
    let q = purify(m)?;
    let r = verify_canonical(&q, probes, budget)?;
    writeln!(
        out,
        "canonical sequence {} -> {} -> {}",
        q.sub.name(),
        m.name(),
        q.purified.name()
    )
    .unwrap();
    writeln!(out, "{r}").unwrap();
    Ok(r.passed())
}

fn monoid_invariants(m: &FinMonoid, out: &mut String) -> Step {
    let rows = [compare_pi_sequences(m, 0)?, compare_pi_sequences(m, 1)?];
    let iff = iff_checks(m)?;
    for r in &rows {
        write!(out, "{r}").unwrap();
    }
    writeln!(out, "{iff}").unwrap();
    Ok(rows.iter().all(|r| r.passed()) && iff.passed())
}

fn invariants(label: &str, doc: Document, out: &mut String) -> Step {
    match doc {
        Document::Monoidal(m) => {
            let m = Arc::new(m);
            writeln!(out, "{}", m.name()).unwrap();
            writeln!(out, "  K  = {}", k(&m)?).unwrap();
            writeln!(out, "  π0 = {}", pi0(&m)?).unwrap();
            writeln!(out, "  π1 = {}", pi1(&m)?).unwrap();
            let r = compare_k_sequences(&m)?;
            write!(out, "{r}").unwrap();
            Ok(r.passed())
        }
        Document::Monoid(m) => monoid_invariants(&m, out),
        other => Err(Failure::Input(format!(
            "{label}: invariants need a monoidal or monoid document, found a {} document",
            other.kind()
        ))),
    }
}

fn trivial(
    m: &Arc<MonoidalStructure>,
    probes: &[Arc<MonoidalStructure>],
    budget: &Budget,
    out: &mut String,
) -> Step {
    let (s, _) = kernel_of_identity(m)?;
    let (r, eta) = cokernel_of_identity(m)?;
    let s_trivial = is_trivial_category(&s, budget)?;
    let r_trivial = is_trivial_category(&r, budget)?;
    let m_trivial = is_trivial_category(m, budget)?;
    let eta_ok = validate_monoidal_functor(&eta)?.is_valid();
    let kseq = identity_kernel_sequence(m, budget)?;
    let kernel = verify_kernel(
        &kseq,
        &ProbeSet::generate(&kseq, probes, budget)?,
        true,
        budget,
    )?;
    let cseq = identity_cokernel_sequence(m, budget)?;
    let cokernel = verify_cokernel(
        &cseq,
        &ProbeSet::generate(&cseq, probes, budget)?,
        true,
        budget,
    )?;
    writeln!(out, "{} (trivial: {m_trivial})", m.name()).unwrap();
    writeln!(
        out,
        "  {}: {} objects, trivial: {s_trivial}",
        s.name(),
        s.cat().object_count()
    )
    .unwrap();
    writeln!(
        out,
        "  {}: {} objects, trivial: {r_trivial}, η monoidal: {eta_ok}",
        r.name(),
        r.cat().object_count()
    )
    .unwrap();
    writeln!(out, "  {kernel}").unwrap();
    writeln!(out, "  {cokernel}").unwrap();
    Ok(s_trivial && r_trivial && eta_ok && kernel.passed() && cokernel.passed())
}

fn describe_plain(f: &FinFunctor) -> String {
    let (a, b) = (&f.domain, &f.codomain);
    let objs: Vec<String> = a
        .objects()
        .map(|x| format!("{} ↦ {}", a.object_name(x), b.object_name(f.obj(x))))
        .collect();
    let mors: Vec<String> = a
        .morphisms()
        .map(|g| format!("{} ↦ {}", a.morphism_name(g), b.morphism_name(f.mor(g))))
        .collect();
    format!(
        "objects [{}]; morphisms [{}]",
        objs.join(", "),
        mors.join(", ")
    )
}

fn describe_monoidal(f: &MonoidalFunctor) -> String {
    let b = f.codomain.cat();
    let a = f.domain.cat();
    let tensor: Vec<String> = a
        .objects()
        .flat_map(|x| a.objects().map(move |y| (x, y)))
        .map(|(x, y)| b.morphism_name(f.m(x, y)).to_string())
        .collect();
    format!(
        "{}; e = {}; m = [{}]",
        describe_plain(&f.underlying()),
        b.morphism_name(f.e()),
        tensor.join(", ")
    )
}

fn category_of(label: &str, doc: Document) -> Result<FinCategory, Failure> {
    match doc {
        Document::Category(c) => Ok(c),
        Document::Monoidal(m) => Ok(m.cat().clone()),
        other => Err(Failure::Input(format!(
            "{label}: expected a category, found a {} document",
            other.kind()
        ))),
    }
}

fn single(reference: &str) -> Result<(String, Document), Failure> {
    let mut docs = load_all(reference)?;
    if docs.len() != 1 {
        return Err(Failure::Input(format!(
            "{reference}: expected a single document, found a corpus"
        )));
    }
    Ok(docs.remove(0))
}

fn enumerate(
    from: &str,
    to: &str,
    with_theta: bool,
    underlying: bool,
    budget: &Budget,
    out: &mut String,
) -> Step {
    let (la, a) = single(from)?;
    let (lb, b) = single(to)?;
    if let (false, Document::Monoidal(a), Document::Monoidal(b)) = (underlying, &a, &b) {
        let (a, b) = (Arc::new(a.clone()), Arc::new(b.clone()));
        let functors = enumerate_monoidal_functors(&a, &b, budget)?;
        writeln!(
            out,
            "{} monoidal functors {} -> {} ({} distinct underlying functors)",
            functors.len(),
            a.name(),
            b.name(),
            distinct_underlying(&functors).len()
        )
        .unwrap();
        for (i, f) in functors.iter().enumerate() {
            write!(out, "  F{i}: {}", describe_monoidal(f)).unwrap();
            if with_theta {
                write!(out, "; |Θ| = {}", nullhomotopies(f, budget)?.len()).unwrap();
            }
            writeln!(out).unwrap();
        }
        return Ok(true);
    }
    if with_theta {
        return Err(Failure::Input(
            "nullhomotopies need monoidal documents on both sides".into(),
        ));
    }
    let (a, b) = (
        Arc::new(category_of(&la, a)?),
        Arc::new(category_of(&lb, b)?),
    );
    let functors = enumerate_functors(&a, &b, budget)?;
    writeln!(
        out,
        "{} functors {} -> {}",
        functors.len(),
        a.name(),
        b.name()
    )
    .unwrap();
    for (i, f) in functors.iter().enumerate() {
        writeln!(out, "  F{i}: {}", describe_plain(f)).unwrap();
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_command_is_an_input_error() {
        let o = run_command("frobnicate", &[]);
        assert_eq!(o.code, EXIT_INPUT);
        assert!(o.report.contains("Usage"), "{}", o.report);
    }

    #[test]
    fn missing_document_is_an_input_error() {
        let o = run_command("validate", &["no/such/document"]);
        assert_eq!(o.code, EXIT_INPUT);
        assert!(o.report.contains("no such file"), "{}", o.report);
    }

    #[test]
    fn kind_mismatch_is_an_input_error() {
        assert_eq!(run_command("purify", &["C2"]).code, EXIT_INPUT);
        assert_eq!(run_command("torsion2", &["i0_ML"]).code, EXIT_INPUT);
    }

    #[test]
    fn validate_builtins() {
        let o = run_command("validate", &["i0_C2"]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.report);
        assert_eq!(run_command("validate", &["monoids"]).code, EXIT_PASS);
    }

    #[test]
    fn enumerate_plain_and_monoidal() {
        let o = run_command("enumerate", &["i0_C2", "i0_C2"]);
        assert!(o.report.starts_with("2 monoidal functors"), "{}", o.report);
        let o = run_command("enumerate", &["i0_C2", "i0_C2", "--underlying"]);
        assert!(o.report.starts_with("4 functors"), "{}", o.report);
        let o = run_command("enumerate", &["terminal", "i1_C2", "--nullhomotopies"]);
        assert_eq!(o.code, EXIT_PASS, "{}", o.report);
        assert!(o.report.contains("|Θ| = 1"), "{}", o.report);
    }
}
