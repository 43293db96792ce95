//! Argument grammar and command dispatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use leibniz_core::autos::{
    endomorphism_violation, enumerate_endomorphisms, is_automorphism, MapKind,
};
use leibniz_core::cyclic::{from_operator_action, CyclicAlgebra, QuotientBlock, TypeTag};
use leibniz_core::leibniz::{CentralSeries, LeibnizAlgebra};
use leibniz_core::polyring::{Poly, QuotientRing};
use leibniz_core::{Guard, Subspace};
use serde_json::{json, Value};

use crate::error::{CliError, EXIT_OK, EXIT_VERIFY_FAILED};
use crate::files::{parse_coeffs, parse_field, Loaded, MapFile, SpecFile};
use crate::render::{compact, lincomb, matrix_texts, span, span_texts, table, texts};
use crate::suites::{parse_suite_list, Status, Verifier};

#[derive(Debug, Parser)]
#[command(
    name = "leibniz",
    version,
    about = "Exact computations with cyclic Leibniz algebras"
)]
pub struct Cli {
    /// Machine-readable JSON instead of text tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SpecArg {
    /// Algebra spec file (JSON).
    #[arg(short = 's', long = "spec", value_name = "FILE")]
    pub spec: PathBuf,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type of a cyclic algebra.
    Classify(SpecArg),
    /// Nonzero products of basis vectors.
    BracketTable(SpecArg),
    /// Left, right and two-sided centers.
    Centers(SpecArg),
    /// Lower and upper central series.
    Series {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, conflicts_with = "upper")]
        lower: bool,
        #[arg(long)]
        upper: bool,
    },
    /// The ideal spanned by squares, next to the derived algebra.
    Leib(SpecArg),
    /// Whether a linear map is an endomorphism or automorphism.
    EndoCheck {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(short = 'm', long = "map", value_name = "MAPFILE")]
        map: PathBuf,
    },
    /// Exhaustive automorphism (or endomorphism) search over a finite field.
    AutEnumerate {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long)]
        endos: bool,
        /// Raise the search limit from 2^24 to 2^28 candidates.
        #[arg(long)]
        force_guard: bool,
    },
    /// Structure of the automorphism group by type.
    AutDescribe(SpecArg),
    /// Unit group of F[X]/(m), coefficients ascending.
    Units {
        #[arg(short = 'f', long = "field", value_name = "FIELD")]
        field: String,
        #[arg(
            short = 'm',
            long = "modulus",
            value_name = "COEFFS",
            allow_hyphen_values = true
        )]
        modulus: String,
    },
    /// The d-basis and quotients of a type III algebra.
    Rebase(SpecArg),
    /// Algebra on F·c ⊕ F^m from an invertible operator.
    FromOperator {
        #[arg(short = 'f', long = "field", value_name = "FIELD")]
        field: String,
        #[arg(long = "matrix", value_name = "MAPFILE")]
        matrix: PathBuf,
    },
    /// Run verification suites.
    Verify {
        #[command(flatten)]
        spec: SpecArg,
        #[arg(long, value_name = "ID[,ID...]|all")]
        suite: String,
        #[arg(long)]
        force_guard: bool,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }
}

impl From<CliError> for Outcome {
    fn from(e: CliError) -> Outcome {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {}\n", e.message),
            code: e.code,
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Ok(cli) => execute(&cli).unwrap_or_else(Outcome::from),
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code: crate::error::EXIT_INVALID_INPUT,
                }
            } else {
                Outcome::ok(text)
            }
        }
    }
}

fn load(arg: &SpecArg) -> Result<Loaded, CliError> {
    SpecFile::load(&arg.spec)?.to_loaded()
}

fn cyclic<'a>(loaded: &'a Loaded, command: &str) -> Result<&'a CyclicAlgebra, CliError> {
    loaded
        .cyclic()
        .ok_or_else(|| CliError::input(format!("{command} needs a cyclic spec")))
}

fn guard(force: bool) -> Guard {
    if force {
        Guard::Raised
    } else {
        Guard::Default
    }
}

fn json_out(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values always serialize");
    s.push('\n');
    s
}

pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let json = cli.json;
    let text = match &cli.command {
        Command::Classify(arg) => classify(&load(arg)?, json)?,
        Command::BracketTable(arg) => bracket_table(&load(arg)?, json),
        Command::Centers(arg) => centers(&load(arg)?, json),
        Command::Series { spec, lower, upper } => series(&load(spec)?, !*upper, !*lower, json),
        Command::Leib(arg) => leib(&load(arg)?, json),
        Command::EndoCheck { spec, map } => endo_check(&load(spec)?, &MapFile::load(map)?, json)?,
        Command::AutEnumerate {
            spec,
            endos,
            force_guard,
        } => aut_enumerate(&load(spec)?, *endos, guard(*force_guard), json)?,
        Command::AutDescribe(arg) => aut_describe(&load(arg)?, json)?,
        Command::Units { field, modulus } => units(field, modulus, json)?,
        Command::Rebase(arg) => rebase(&load(arg)?, json)?,
        Command::FromOperator { field, matrix } => {
            from_operator(field, &MapFile::load(matrix)?, json)?
        }
        Command::Verify {
            spec,
            suite,
            force_guard,
        } => {
            return verify(&load(spec)?, suite, guard(*force_guard), json);
        }
    };
    Ok(Outcome::ok(text))
}

fn header(loaded: &Loaded) -> Vec<(String, String)> {
    let alg = loaded.algebra();
    vec![
        ("field".into(), alg.field().to_string()),
        ("dimension".into(), alg.dim().to_string()),
    ]
}

fn classify(loaded: &Loaded, json: bool) -> Result<String, CliError> {
    let l = cyclic(loaded, "classify")?;
    let tag = l.tag();
    let class = l.algebra().nilpotency_class();
    let a_text = match tag {
        TypeTag::II => Some(l.annihilator_poly_text()?),
        _ => None,
    };
    if json {
        let t = match tag {
            TypeTag::III { t } => Some(t),
            _ => None,
        };
        return Ok(json_out(&json!({
            "field": l.field().to_string(),
            "dimension": l.n(),
            "type": match tag { TypeTag::I => "I", TypeTag::II => "II", TypeTag::III { .. } => "III" },
            "t": t,
            "a_x": a_text,
            "nilpotency_class": class,
        })));
    }
    let mut rows = header(loaded);
    rows.push((
        "nilpotent".into(),
        class.map_or_else(|| "no".to_string(), |c| format!("yes, class {c}")),
    ));
    let mut out = format!("type {tag}\n");
    if let Some(a) = a_text {
        rows.push(("a(X)".into(), a.clone()));
        out.push_str(&format!("a(X) = {a}\n"));
    }
    out.push_str(&table(&rows));
    Ok(out)
}

fn bracket_table(loaded: &Loaded, json: bool) -> String {
    let alg = loaded.algebra();
    if json {
        let mut s = SpecFile::from_table(alg).to_json();
        s.push('\n');
        return s;
    }
    let letter = loaded.letter();
    let rows: Vec<(String, String)> = alg
        .products()
        .map(|((i, j), v)| {
            (
                format!("[{letter}{}, {letter}{}]", i + 1, j + 1),
                format!("= {}", lincomb(letter, v)),
            )
        })
        .collect();
    let mut out = table(&header(loaded));
    if rows.is_empty() {
        out.push_str("all products are zero\n");
    } else {
        out.push_str(&table(&rows));
    }
    out
}

fn subspace_row(loaded: &Loaded, label: &str, s: &Subspace) -> (String, String) {
    (
        label.into(),
        format!("{}  (dim {})", span(loaded.letter(), s), s.dim()),
    )
}

fn subspace_json(s: &Subspace) -> Value {
    json!({ "dim": s.dim(), "basis": span_texts(s) })
}

fn centers(loaded: &Loaded, json: bool) -> String {
    let c = loaded.algebra().centers();
    if json {
        return json_out(&json!({
            "left": subspace_json(&c.left),
            "right": subspace_json(&c.right),
            "center": subspace_json(&c.two_sided),
        }));
    }
    table(&[
        subspace_row(loaded, "left center", &c.left),
        subspace_row(loaded, "right center", &c.right),
        subspace_row(loaded, "center", &c.two_sided),
    ])
}

fn series_rows(
    loaded: &Loaded,
    s: &CentralSeries,
    symbol: &str,
    first: usize,
    out: &mut Vec<(String, String)>,
) {
    for (k, term) in s.distinct_terms().iter().enumerate() {
        out.push(subspace_row(
            loaded,
            &format!("{symbol}{}", k + first),
            term,
        ));
    }
}

fn series(loaded: &Loaded, lower: bool, upper: bool, json: bool) -> String {
    let alg = loaded.algebra();
    let low = alg.lower_central_series();
    let up = alg.upper_central_series();
    if json {
        let terms = |s: &CentralSeries| {
            s.distinct_terms()
                .iter()
                .map(subspace_json)
                .collect::<Vec<_>>()
        };
        let mut v = json!({ "nilpotency_class": alg.nilpotency_class() });
        if lower {
            v["lower"] = json!(terms(&low));
        }
        if upper {
            v["upper"] = json!(terms(&up));
        }
        return json_out(&v);
    }
    let mut rows = Vec::new();
    if lower {
        series_rows(loaded, &low, "γ", 1, &mut rows);
    }
    if upper {
        series_rows(loaded, &up, "ζ", 0, &mut rows);
    }
    rows.push((
        "nilpotent".into(),
        alg.nilpotency_class()
            .map_or_else(|| "no".to_string(), |c| format!("yes, class {c}")),
    ));
    table(&rows)
}

fn leib(loaded: &Loaded, json: bool) -> String {
    let alg = loaded.algebra();
    let (k, d) = (alg.leib_kernel(), alg.derived());
    if json {
        return json_out(&json!({ "leib": subspace_json(&k), "derived": subspace_json(&d) }));
    }
    table(&[
        subspace_row(loaded, "Leib(L)", &k),
        subspace_row(loaded, "[L,L]", &d),
    ])
}

fn endo_check(loaded: &Loaded, map: &MapFile, json: bool) -> Result<String, CliError> {
    let alg = loaded.algebra();
    let f = map.to_matrix(alg.field())?;
    let violation = endomorphism_violation(alg, &f)?;
    let auto = violation.is_none() && is_automorphism(alg, &f);
    let pair = violation.map(|(i, j)| [i + 1, j + 1]);
    if json {
        return Ok(json_out(&json!({
            "endomorphism": violation.is_none(),
            "automorphism": auto,
            "violation": pair,
        })));
    }
    let letter = loaded.letter();
    let endo = match pair {
        None => "yes".to_string(),
        Some([i, j]) => format!("no, fails on [{letter}{i}, {letter}{j}]"),
    };
    Ok(table(&[
        ("endomorphism".into(), endo),
        (
            "automorphism".into(),
            if auto { "yes" } else { "no" }.into(),
        ),
    ]))
}

fn aut_enumerate(
    loaded: &Loaded,
    endos: bool,
    guard: Guard,
    json: bool,
) -> Result<String, CliError> {
    let kind = if endos {
        MapKind::Endomorphisms
    } else {
        MapKind::Automorphisms
    };
    let e = enumerate_endomorphisms(loaded.algebra(), kind, guard)?;
    let label = if endos { "End" } else { "Aut" };
    if json {
        return Ok(json_out(&json!({
            "kind": if endos { "endomorphisms" } else { "automorphisms" },
            "order": e.maps.len(),
            "candidates": e.candidates,
            "maps": e.maps.iter().map(matrix_texts).collect::<Vec<_>>(),
        })));
    }
    let mut out = format!("|{label}| = {}\n", e.maps.len());
    let _ = writeln!(out, "candidates examined: {}", e.candidates);
    for (k, m) in e.maps.iter().enumerate() {
        let _ = writeln!(out, "{:>4}  {}", k + 1, compact(m));
    }
    Ok(out)
}

fn aut_describe(loaded: &Loaded, json: bool) -> Result<String, CliError> {
    let l = cyclic(loaded, "aut-describe")?;
    let field = l.field();
    let n = l.n();
    let q = field.order();
    let mut facts: Vec<(String, String)> = vec![("type".into(), l.tag().to_string())];
    match l.tag() {
        TypeTag::I => {
            facts.push((
                "End(L)".into(),
                "S ∪ Aut(L), S = {f : f² = 0, f(L) ⊆ [L,L]}".into(),
            ));
            facts.push((
                "endomorphisms".into(),
                "f(a_j) column j: M[i][j] = γ1^(j−1)·γ(i−j+1)".into(),
            ));
            facts.push(("Aut(L)".into(), "UC(n) ⋊ diagonal group, γ1 ≠ 0".into()));
            facts.push(("U".into(), format!("≅ one-units of F[X]/(X^{n}) via φ")));
            if let Some(q) = q {
                let one_units = u128::from(q).pow(n as u32 - 1);
                facts.push(("|U|".into(), one_units.to_string()));
                facts.push((
                    "|Aut(L)|".into(),
                    (one_units * u128::from(q - 1)).to_string(),
                ));
            }
        }
        TypeTag::II => {
            let (c, _) = l.canonical_c()?;
            let a_text = l.annihilator_poly_text()?;
            facts.push(("c".into(), lincomb("a", &c)));
            facts.push(("a(X)".into(), a_text.clone()));
            facts.push((
                "D".into(),
                format!("endomorphisms fixing c ≅ F[X]/({a_text}) under multiplication"),
            ));
            facts.push((
                "C".into(),
                format!("D ∩ Aut(L) ≅ U(F[X]/({a_text})), normal in Aut(L)"),
            ));
            facts.push((
                "Aut(L)/C".into(),
                "embeds in F^× via the scalar action on F·c".into(),
            ));
            if q.is_some() {
                let ring = QuotientRing::new(l.annihilator_poly()?)?;
                facts.push((
                    "|D|".into(),
                    ring.residues(Guard::Default)?.len().to_string(),
                ));
                facts.push(("|C|".into(), ring.units(Guard::Default)?.len().to_string()));
            }
        }
        TypeTag::III { t } => {
            let r = l.rebase_type3()?;
            facts.push(("t".into(), t.to_string()));
            facts.push(("L/V".into(), format!("type I, dimension {}", t - 1)));
            let uu = l.type3_quotient(&r, QuotientBlock::ModUU)?;
            facts.push(("L/[U,U]".into(), format!("type II, dimension {}", uu.dim())));
            facts.push((
                "Aut(L)".into(),
                "embeds into Aut(L/V) × Aut(L/[U,U])".into(),
            ));
        }
    }
    if json {
        let map: serde_json::Map<String, Value> = facts
            .into_iter()
            .map(|(k, v)| (k, Value::String(v)))
            .collect();
        return Ok(json_out(&Value::Object(map)));
    }
    let mut rows = header(loaded);
    rows.extend(facts);
    Ok(table(&rows))
}

fn units(field: &str, modulus: &str, json: bool) -> Result<String, CliError> {
    let field = parse_field(field)?;
    let m = Poly::from_coeffs(field, parse_coeffs(field, modulus)?)?;
    let ring = QuotientRing::new(m.clone())?;
    if !field.is_finite() {
        if json {
            return Ok(json_out(
                &json!({ "modulus": texts(m.coeffs()), "order": null, "units": null }),
            ));
        }
        return Ok(format!(
            "ring: {field}[X]/({})\n|U| = infinite (residues coprime to the modulus)\n",
            m.display_in("X")
        ));
    }
    let units = ring.units(Guard::Default)?;
    if json {
        return Ok(json_out(&json!({
            "modulus": texts(m.coeffs()),
            "order": units.len(),
            "units": units.iter().map(|u| texts(&u.coefficient_vector())).collect::<Vec<_>>(),
        })));
    }
    let mut out = format!(
        "ring: {field}[X]/({})\n|U| = {}\n",
        m.display_in("X"),
        units.len()
    );
    for u in &units {
        let _ = writeln!(out, "  {u}");
    }
    Ok(out)
}

fn rebase(loaded: &Loaded, json: bool) -> Result<String, CliError> {
    let l = cyclic(loaded, "rebase")?;
    let r = l.rebase_type3()?;
    let quotients = [QuotientBlock::ModV, QuotientBlock::ModUU]
        .into_iter()
        .map(|b| Ok((b, l.type3_quotient(&r, b)?)))
        .collect::<Result<Vec<(QuotientBlock, LeibnizAlgebra)>, CliError>>()?;
    if json {
        let q: serde_json::Map<String, Value> = quotients
            .iter()
            .map(|(b, alg)| {
                (
                    b.to_string(),
                    serde_json::to_value(SpecFile::from_table(alg)).expect("serializes"),
                )
            })
            .collect();
        return Ok(json_out(&json!({
            "t": r.t,
            "beta": texts(&r.beta),
            "transition": matrix_texts(&r.transition),
            "U": span_texts(&r.u_sub),
            "UU": span_texts(&r.uu_sub),
            "V": span_texts(&r.v_sub),
            "quotients": q,
        })));
    }
    let mut rows = vec![("t".into(), r.t.to_string())];
    rows.push(("β".into(), format!("({})", texts(&r.beta).join(", "))));
    for j in 1..=r.n() {
        rows.push((format!("d{j}"), lincomb("a", r.d(j))));
    }
    rows.push(subspace_row(loaded, "U", &r.u_sub));
    rows.push(subspace_row(loaded, "[U,U]", &r.uu_sub));
    rows.push(subspace_row(loaded, "V", &r.v_sub));
    let mut out = table(&rows);
    for (b, alg) in &quotients {
        let (_, complement) = r.quotient_data(*b);
        let names: Vec<String> = complement
            .iter()
            .enumerate()
            .map(|(k, v)| format!("e{} = {}", k + 1, lincomb("a", v)))
            .collect();
        let _ = writeln!(out, "{b}, basis images {}:", names.join("; "));
        for ((i, j), v) in alg.products() {
            let _ = writeln!(out, "  [e{}, e{}] = {}", i + 1, j + 1, lincomb("e", v));
        }
    }
    Ok(out)
}

fn from_operator(field: &str, map: &MapFile, json: bool) -> Result<String, CliError> {
    let field = parse_field(field)?;
    let m = map.to_matrix(field)?;
    let alg = from_operator_action(field, &m)?;
    if json {
        let mut s = SpecFile::from_table(&alg).to_json();
        s.push('\n');
        return Ok(s);
    }
    let loaded = Loaded::Table(alg);
    let mut out = String::from("basis: b1 = c, b2.. = standard basis of F^m\n");
    out.push_str(&bracket_table(&loaded, false));
    Ok(out)
}

fn verify(loaded: &Loaded, suites: &str, guard: Guard, json: bool) -> Result<Outcome, CliError> {
    let ids = parse_suite_list(suites)?;
    let verifier = Verifier::new(loaded, guard);
    let results = ids
        .iter()
        .map(|id| verifier.run(id))
        .collect::<Result<Vec<_>, _>>()?;
    let failed = results.iter().any(|r| r.status == Status::Fail);
    let overall = if failed { Status::Fail } else { Status::Pass };
    let stdout = if json {
        json_out(&json!({ "status": overall, "suites": results }))
    } else {
        let mut out = String::new();
        for r in &results {
            let _ = writeln!(out, "{}  {}  {}", r.suite, r.status.label(), r.title);
            let rows: Vec<(String, String)> = r
                .checks
                .iter()
                .map(|c| {
                    (
                        format!("  {}  {}", c.status.label(), c.id),
                        c.witness.clone(),
                    )
                })
                .collect();
            out.push_str(&table(&rows));
        }
        let count = |s: Status| results.iter().filter(|r| r.status == s).count();
        let _ = writeln!(
            out,
            "overall: {} ({} passed, {} failed, {} skipped)",
            overall.label(),
            count(Status::Pass),
            count(Status::Fail),
            count(Status::Skipped)
        );
        out
    };
    let mut stderr = String::new();
    if let Some((r, c)) = results
        .iter()
        .find_map(|r| r.first_failure().map(|c| (r, c)))
    {
        stderr = format!(
            "verification failed: {} / {}: {}\n",
            r.suite, c.id, c.witness
        );
    }
    Ok(Outcome {
        stdout,
        stderr,
        code: if failed { EXIT_VERIFY_FAILED } else { EXIT_OK },
    })
}
