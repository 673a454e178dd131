use std::fmt::Write as _;
use std::process::ExitCode;

use anyhow::{bail, Context};
use cobordkit::chern::{
    chern_number, chern_number_closed, verify_identity, Identity, IdentityReport, StructureKind,
};
use cobordkit::clutch::{verify_gluing_bordism, GluingReport};
use cobordkit::hexprism::{certificate, Certificate, Verdict};
use cobordkit::lattice::{
    check_lemma_equivalence, gl_equivalent, is_characteristic, validate_isotropy, IsotropyMode,
    VertexFailure,
};
use cobordkit::polytope::{check_exceptional, ExceptionalMarking};
use cobordkit::{intser, partitions, Partition};
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::input::{read_json, CharfunInput, GlequivInput};
use crate::range::IntRange;
use crate::{
    CharfunCommand, ChernArgs, Cli, Command, Format, HexArgs, InputArgs, ParamArgs, VerifyCommand,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }

    pub fn exit_code(self) -> ExitCode {
        match self {
            Outcome::Pass => ExitCode::SUCCESS,
            Outcome::Fail => ExitCode::from(1),
        }
    }

    fn tag(ok: bool) -> &'static str {
        if ok {
            "PASS"
        } else {
            "FAIL"
        }
    }
}

pub fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Chern(args) => cmd_chern(cli, args),
        Command::Verify { which } => cmd_verify(cli, which),
        Command::Hexprism(args) => cmd_hexprism(cli, args),
        Command::Charfun {
            which: CharfunCommand::Validate(args),
        } => cmd_charfun(cli, args),
        Command::Glequiv(args) => cmd_glequiv(cli, args),
    }
}

/// Prints `table` or the JSON form of `doc`, and writes the JSON to `--out`.
fn emit<T: Serialize>(cli: &Cli, doc: &T, table: &str) -> anyhow::Result<()> {
    let json = serde_json::to_string_pretty(doc).context("serializing output")?;
    if let Some(path) = &cli.out {
        std::fs::write(path, format!("{json}\n"))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    match cli.format {
        Format::Json => println!("{json}"),
        Format::Table => print!("{table}"),
    }
    Ok(())
}

fn dimension(n: i64, min: i64) -> anyhow::Result<usize> {
    if n < min {
        bail!("--n must be at least {min}, got {n}");
    }
    Ok(usize::try_from(n)?)
}

/// Left-aligned columns separated by two spaces.
fn render_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}

#[derive(Serialize)]
struct ChernRow {
    partition: Partition,
    #[serde(with = "intser")]
    ring: BigInt,
    #[serde(with = "intser")]
    closed: BigInt,
    agree: bool,
}

#[derive(Serialize)]
struct ChernOutput {
    n: usize,
    #[serde(with = "intser")]
    a: BigInt,
    structure: StructureKind,
    rows: Vec<ChernRow>,
    passed: bool,
}

fn cmd_chern(cli: &Cli, args: &ChernArgs) -> anyhow::Result<Outcome> {
    let n = dimension(args.n, 1)?;
    let kind: StructureKind = args.structure.into();
    let list = match &args.partition {
        Some(p) => vec![p.clone()],
        None => partitions(n)?,
    };
    let rows = list
        .into_iter()
        .map(|p| {
            let ring = chern_number(n, &args.a, kind, &p)?;
            let closed = match kind {
                StructureKind::Standard => chern_number_closed(n, &p)?,
                StructureKind::Twisted => BigInt::zero(),
            };
            Ok(ChernRow {
                agree: ring == closed,
                partition: p,
                ring,
                closed,
            })
        })
        .collect::<cobordkit::Result<Vec<_>>>()?;
    let passed = rows.iter().all(|r| r.agree);
    let out = ChernOutput {
        n,
        a: args.a.clone(),
        structure: kind,
        rows,
        passed,
    };
    let mut table = format!("Chern numbers of P^{n}({}), {kind} structure\n", args.a);
    let cells: Vec<Vec<String>> = out
        .rows
        .iter()
        .map(|r| {
            vec![
                r.partition.to_string(),
                r.ring.to_string(),
                r.closed.to_string(),
                if r.agree { "yes" } else { "NO" }.to_string(),
            ]
        })
        .collect();
    table.push_str(&render_table(
        &["partition", "ring", "closed", "agree"],
        &cells,
    ));
    emit(cli, &out, &table)?;
    Ok(Outcome::from_bool(passed))
}

fn values(
    single: &Option<BigInt>,
    range: &Option<IntRange>,
    flag: &str,
) -> anyhow::Result<Vec<BigInt>> {
    match (single, range) {
        (Some(v), None) => Ok(vec![v.clone()]),
        (None, Some(r)) => Ok(r.values().map(BigInt::from).collect()),
        (None, None) => bail!("give --{flag} or --{flag}-range"),
        (Some(_), Some(_)) => bail!("--{flag} and --{flag}-range are mutually exclusive"),
    }
}

#[derive(Serialize)]
#[serde(untagged)]
enum CaseReport {
    Identity(IdentityReport),
    Gluing(Box<GluingReport>),
}

#[derive(Serialize)]
struct VerifyOutput {
    check: &'static str,
    n: usize,
    passed: bool,
    cases: Vec<CaseReport>,
}

fn gluing_line(r: &GluingReport) -> String {
    let labels: Vec<String> = r.triple.labels.iter().map(ToString::to_string).collect();
    let mut line = format!(
        "{}  gluing n={} a={} b={}: {}",
        Outcome::tag(r.passed),
        r.n,
        r.a,
        r.b,
        labels.join(", ")
    );
    if !r.labels_match {
        line.push_str("  (labels differ from Standard(a), Twisted(b-a), ConjStandard(b))");
    }
    if let Some(p) = &r.counterexample {
        let _ = write!(line, "  first nonzero sum at {p}");
    }
    line.push('\n');
    line
}

fn identity_line(r: &IdentityReport) -> String {
    let mut line = format!(
        "{}  {} (n={}, {} cases)",
        Outcome::tag(r.passed),
        r.identity,
        r.n,
        r.cases
    );
    if let Some(c) = &r.counterexample {
        let _ = write!(line, "\n      counterexample {}: {}", c.partition, c.detail);
    }
    line.push('\n');
    line
}

fn cmd_verify(cli: &Cli, which: &VerifyCommand) -> anyhow::Result<Outcome> {
    let (check, p) = match which {
        VerifyCommand::Independence(p) => ("independence", p),
        VerifyCommand::TwistedNull(p) => ("twisted-null", p),
        VerifyCommand::Triple(p) => ("triple", p),
        VerifyCommand::Gluing(p) => ("gluing", p),
    };
    let n = dimension(p.n, 1)?;
    let ParamArgs {
        a,
        b,
        a_range,
        b_range,
        ..
    } = p;
    let mut cases = Vec::new();
    match which {
        VerifyCommand::Independence(_) => {
            let list = values(a, a_range, "a")?;
            cases.push(CaseReport::Identity(verify_identity(
                n,
                &Identity::AIndependence(list),
            )?));
        }
        VerifyCommand::TwistedNull(_) => {
            for a in values(a, a_range, "a")? {
                cases.push(CaseReport::Identity(verify_identity(
                    n,
                    &Identity::TwistedNull(a),
                )?));
            }
        }
        VerifyCommand::Triple(_) => {
            let bs = values(b, b_range, "b")?;
            for a in values(a, a_range, "a")? {
                for b in &bs {
                    let id = Identity::Triple(a.clone(), b.clone());
                    cases.push(CaseReport::Identity(verify_identity(n, &id)?));
                }
            }
        }
        VerifyCommand::Gluing(_) => {
            let bs = values(b, b_range, "b")?;
            for a in values(a, a_range, "a")? {
                for b in &bs {
                    cases.push(CaseReport::Gluing(Box::new(verify_gluing_bordism(
                        n, &a, b,
                    )?)));
                }
            }
        }
    }
    let passed = cases.iter().all(|c| match c {
        CaseReport::Identity(r) => r.passed,
        CaseReport::Gluing(r) => r.passed,
    });
    let mut table = String::new();
    for c in &cases {
        match c {
            CaseReport::Identity(r) => table.push_str(&identity_line(r)),
            CaseReport::Gluing(r) => table.push_str(&gluing_line(r)),
        }
    }
    if let [CaseReport::Gluing(r)] = &cases[..] {
        let cells: Vec<Vec<String>> = r
            .rows
            .iter()
            .map(|row| {
                let mut cells = vec![row.partition.to_string()];
                cells.extend(row.terms.iter().map(ToString::to_string));
                cells.push(row.sum.to_string());
                cells
            })
            .collect();
        table.push_str(&render_table(
            &["partition", "A,B", "B,C", "C,A", "sum"],
            &cells,
        ));
    }
    let _ = writeln!(
        table,
        "{} cases, {}",
        cases.len(),
        if passed { "all pass" } else { "FAILURES" }
    );
    emit(
        cli,
        &VerifyOutput {
            check,
            n,
            passed,
            cases,
        },
        &table,
    )?;
    Ok(Outcome::from_bool(passed))
}

fn certificate_table(c: &Certificate) -> String {
    let mut t = String::new();
    let p = &c.params;
    let _ = writeln!(t, "hexagon prism n={} a={} b={}", p.n, p.a, p.b);
    let v = &c.validation;
    let _ = writeln!(
        t,
        "  exceptional marking     {}",
        if v.exceptional.valid {
            "valid"
        } else {
            "INVALID"
        }
    );
    let _ = writeln!(
        t,
        "  isotropy (basis parts)  {}",
        Outcome::tag(v.isotropy.passed)
    );
    let _ = writeln!(
        t,
        "  restriction criterion   restrictions {} / vertex condition {}",
        Outcome::tag(v.lemma.restrictions_characteristic),
        Outcome::tag(v.lemma.sarkar_condition)
    );
    for b in &c.boundaries {
        let _ = writeln!(
            t,
            "  {} -> {}  b-parameter {}  orientation {:+}  U = {}",
            b.facet, b.label, b.b_parameter, b.orientation_sign, b.witness.u
        );
    }
    if let Some(tables) = &c.chern_tables {
        let _ = writeln!(
            t,
            "  boundary Chern sums     {}",
            if tables.sums_vanish {
                "all zero"
            } else {
                "NONZERO"
            }
        );
    }
    let _ = writeln!(
        t,
        "  triple relation         {}",
        Outcome::tag(c.triple.passed)
    );
    let _ = writeln!(
        t,
        "  gluing relation         {}",
        Outcome::tag(c.gluing.passed)
    );
    if let Some(w) = &c.witness {
        let _ = writeln!(t, "  witness: {w}");
    }
    let _ = writeln!(t, "verdict: {}", Outcome::tag(c.verdict == Verdict::Pass));
    t
}

fn cmd_hexprism(cli: &Cli, args: &HexArgs) -> anyhow::Result<Outcome> {
    let n = dimension(args.n, 2)?;
    let cert = certificate(n, &args.a, &args.b)?;
    emit(cli, &cert, &certificate_table(&cert))?;
    Ok(Outcome::from_bool(cert.verdict == Verdict::Pass))
}

fn failure_line(f: &Option<VertexFailure>) -> String {
    match f {
        Some(f) => format!(
            "  first failing vertex {:?}: {} (value {})\n",
            f.vertex, f.reason, f.value
        ),
        None => String::new(),
    }
}

fn cmd_charfun(cli: &Cli, args: &InputArgs) -> anyhow::Result<Outcome> {
    let input: CharfunInput = read_json(&args.input)?;
    let polytope = input.polytope()?;
    let Some(marked) = &input.marked else {
        if input.mode.is_some() {
            bail!("`mode` applies only when `marked` is given");
        }
        let report = is_characteristic(&polytope, &input.assignment)?;
        let table = format!(
            "characteristic function on {} vertices: {}\n{}",
            report.vertices_checked,
            Outcome::tag(report.passed),
            failure_line(&report.failure)
        );
        #[derive(Serialize)]
        struct Out<'a> {
            check: &'static str,
            passed: bool,
            report: &'a cobordkit::lattice::CharacteristicReport,
        }
        emit(
            cli,
            &Out {
                check: "characteristic",
                passed: report.passed,
                report: &report,
            },
            &table,
        )?;
        return Ok(Outcome::from_bool(report.passed));
    };

    let names: Vec<&str> = marked.iter().map(String::as_str).collect();
    let exceptional = check_exceptional(&polytope, &names)?;
    #[derive(Serialize)]
    struct Out {
        check: &'static str,
        passed: bool,
        exceptional: cobordkit::polytope::ExceptionalReport,
        isotropy: Option<cobordkit::lattice::IsotropyReport>,
        lemma: Option<cobordkit::lattice::LemmaReport>,
    }
    if !exceptional.valid {
        let table = format!("exceptional marking: INVALID {:?}\n", exceptional.violation);
        emit(
            cli,
            &Out {
                check: "isotropy",
                passed: false,
                exceptional,
                isotropy: None,
                lemma: None,
            },
            &table,
        )?;
        return Ok(Outcome::Fail);
    }
    let marking = ExceptionalMarking::new(&polytope, &names)?;
    let mode = input.mode.unwrap_or(IsotropyMode::SarkarCondition);
    let isotropy = validate_isotropy(&polytope, &marking, &input.assignment, mode)?;
    let lemma = match mode {
        IsotropyMode::SarkarCondition => Some(check_lemma_equivalence(
            &polytope,
            &marking,
            &input.assignment,
        )?),
        IsotropyMode::IndependenceOnly => None,
    };
    let passed = isotropy.passed && lemma.as_ref().is_none_or(|l| l.agree);
    let mut table = format!(
        "exceptional marking: valid\nisotropy function ({:?}) on {} vertices: {}\n{}",
        mode,
        isotropy.vertices_checked,
        Outcome::tag(isotropy.passed),
        failure_line(&isotropy.failure)
    );
    if let Some(l) = &lemma {
        for r in &l.restrictions {
            let _ = writeln!(
                table,
                "restriction to {}: {}",
                r.facet,
                Outcome::tag(r.report.passed)
            );
            table.push_str(&failure_line(&r.report.failure));
        }
    }
    emit(
        cli,
        &Out {
            check: "isotropy",
            passed,
            exceptional,
            isotropy: Some(isotropy),
            lemma,
        },
        &table,
    )?;
    Ok(Outcome::from_bool(passed))
}

fn cmd_glequiv(cli: &Cli, args: &InputArgs) -> anyhow::Result<Outcome> {
    let input: GlequivInput = read_json(&args.input)?;
    let witness = gl_equivalent(&input.a, &input.b, &input.perm_blocks, input.allow_sign)?;
    let table = match &witness {
        Some(w) => {
            let mut t = format!("equivalent: U = {}\n", w.u);
            for (f, g) in &w.sigma {
                let s = w.signs[f];
                let sign = if s < 0 { "-" } else { "" };
                let _ = writeln!(t, "  {f} -> {sign}{g}");
            }
            t
        }
        None => "no equivalence found\n".to_string(),
    };
    #[derive(Serialize)]
    struct Out<'a> {
        found: bool,
        witness: &'a Option<cobordkit::lattice::GlWitness>,
    }
    emit(
        cli,
        &Out {
            found: witness.is_some(),
            witness: &witness,
        },
        &table,
    )?;
    Ok(Outcome::from_bool(witness.is_some()))
}
