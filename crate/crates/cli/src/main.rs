//! `gsr`: orbits, classification, induction, verification, Mackey cocycles,
//! systems of imprimitivity and Virasoro unitarity probes from the command
//! line. Output is sorted-key JSON (or a terse text table).
//!
//! Exit codes: 0 all checks pass, 1 a check fails (or the computation is
//! refused), 2 inconclusive, 3 schema error, 4 numeric failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use gsr_core::character::{dyn_classify, sl2_membership, stabilizer_and_orbit, Character, DynOrbit, Edge};
use gsr_core::imprimitivity::{build_induced_system, natural_subgroup, round_trip, verify_system};
use gsr_core::induction::{dyn_periodic_rep, induce_character, mackey_cocycle, InducedRep, Window};
use gsr_core::io;
use gsr_core::scalar::parse_surd;
use gsr_core::verify::{self, Convention, VerificationReport, DEFAULT_TOLERANCE};
use gsr_core::virasoro::fqs_parameters;
use gsr_core::{algebra::GradedAlgebraSpec, Error, Scalar};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gsr", version, about = "Induced representations of group-graded *-algebras")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Extend a character along its orbit and report the values.
    Orbit(CharArgs),
    /// Orbit class, stabilizer and definedness set.
    Classify(CharArgs),
    /// Build the induced representation and export its matrices.
    Induce(CharArgs),
    /// Run checks on an exported representation.
    Verify(VerifyArgs),
    /// Mackey cocycle on the stabilizer and its obstruction verdict.
    Mackey(CharArgs),
    /// Build, verify and round-trip the canonical system of imprimitivity.
    Imprimitivity(ImprimitivityArgs),
    /// Discrete-series parameters with low-level Gram positivity.
    Fqs(FqsArgs),
}

#[derive(Clone, Copy, ValueEnum, PartialEq)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Common {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Residual tolerance (default: $GSR_TOLERANCE or 1e-10).
    #[arg(long)]
    tolerance: Option<f64>,
}

#[derive(Args)]
struct CharArgs {
    /// Algebra spec file, or a built-in name (weyl, su2, su11, s3_over_a3).
    #[arg(long)]
    spec: String,
    /// Character spec: a file path or inline JSON.
    #[arg(long)]
    character: Option<String>,
    /// Seed x₀ = χ(a*a) for dynamical families.
    #[arg(long, allow_hyphen_values = true)]
    seed: Option<String>,
    #[arg(long, default_value_t = 50)]
    back: usize,
    #[arg(long, default_value_t = 50)]
    fwd: usize,
    #[arg(long, default_value = "principal")]
    branches: String,
    /// χ(C) for sl2 families.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    /// χ(H) for sl2 families.
    #[arg(long, allow_hyphen_values = true)]
    t: Option<String>,
    /// Half-open label window K:M.
    #[arg(long, default_value = "-50:50", allow_hyphen_values = true)]
    window: String,
    /// Twist z ∈ 𝕋 for periodic orbits: "n:k" for e^{2πik/n} or an exact scalar.
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    /// Orbit sampling depth for stabilizers and cocycles.
    #[arg(long, default_value_t = 8)]
    depth: usize,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct VerifyArgs {
    /// Matrix export produced by `induce`.
    #[arg(long)]
    rep: PathBuf,
    /// Overrides the spec embedded in the export.
    #[arg(long)]
    spec: Option<String>,
    /// Comma-separated: relations, commutant, casimir, well-behaved.
    #[arg(long, default_value = "relations,commutant")]
    checks: String,
    /// Expected Casimir value for the casimir check.
    #[arg(long, allow_hyphen_values = true)]
    s: Option<String>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct ImprimitivityArgs {
    #[command(flatten)]
    chr: CharArgs,
    /// Use an exported representation instead of inducing one.
    #[arg(long)]
    rep: Option<PathBuf>,
}

#[derive(Args)]
struct FqsArgs {
    #[arg(long, default_value_t = 3)]
    n: i64,
    /// Highest Verma level whose Gram matrix is tested (≤ 3).
    #[arg(long, default_value_t = 2)]
    level: i64,
    #[arg(long, value_enum, default_value = "standard")]
    convention: Conv,
    #[command(flatten)]
    common: Common,
}

#[derive(Clone, Copy, ValueEnum)]
enum Conv {
    Standard,
    Reversed,
}

struct Output {
    value: Value,
    text: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = match &cli.cmd {
        Cmd::Orbit(a) | Cmd::Classify(a) | Cmd::Induce(a) | Cmd::Mackey(a) => &a.common,
        Cmd::Verify(a) => &a.common,
        Cmd::Imprimitivity(a) => &a.chr.common,
        Cmd::Fqs(a) => &a.common,
    };
    let tol = match tolerance(common) {
        Ok(t) => t,
        Err(e) => return fail(&e),
    };
    let result = match &cli.cmd {
        Cmd::Orbit(a) => orbit(a),
        Cmd::Classify(a) => classify(a),
        Cmd::Induce(a) => induce(a),
        Cmd::Verify(a) => run_verify(a, tol),
        Cmd::Mackey(a) => mackey(a),
        Cmd::Imprimitivity(a) => imprimitivity(a, tol),
        Cmd::Fqs(a) => fqs(a, tol),
    };
    match result.and_then(|out| emit(common, &out).map(|()| out.code)) {
        Ok(code) => ExitCode::from(code),
        Err(e) => fail(&e),
    }
}

fn fail(e: &Error) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(match e {
        Error::Schema(_) | Error::Group(_) => 3,
        Error::Numeric(_) => 4,
        _ => 1,
    })
}

fn tolerance(c: &Common) -> Result<f64, Error> {
    if let Some(t) = c.tolerance {
        return Ok(t);
    }
    match std::env::var("GSR_TOLERANCE") {
        Ok(s) => s.trim().parse().map_err(|_| Error::Schema(format!("GSR_TOLERANCE={s:?} is not a number"))),
        Err(_) => Ok(DEFAULT_TOLERANCE),
    }
}

fn emit(c: &Common, out: &Output) -> Result<(), Error> {
    let body = match c.format {
        Format::Json => io::to_pretty(&out.value),
        Format::Text => out.text.clone(),
    };
    match &c.output {
        None => {
            print!("{body}");
            Ok(())
        }
        Some(p) => write_atomic(p, &body),
    }
}

fn write_atomic(path: &Path, body: &str) -> Result<(), Error> {
    let tmp = path.with_extension("tmp~");
    let io_err = |e: std::io::Error| Error::Invalid(format!("{}: {e}", path.display()));
    std::fs::write(&tmp, body).map_err(io_err)?;
    std::fs::rename(&tmp, path).map_err(io_err)
}

fn read_json(path: &Path) -> Result<Value, Error> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))?;
    io::parse_json(&text).map_err(|e| in_file(path, e))
}

fn in_file(path: &Path, e: Error) -> Error {
    match e {
        Error::Schema(m) => Error::Schema(format!("{}: {m}", path.display())),
        e => e,
    }
}

fn load_spec(s: &str) -> Result<GradedAlgebraSpec, Error> {
    let p = Path::new(s);
    if p.exists() {
        return io::spec_from_json(&read_json(p)?).map_err(|e| in_file(p, e));
    }
    match s {
        "weyl" => Ok(GradedAlgebraSpec::weyl()),
        "su2" => Ok(GradedAlgebraSpec::su2()),
        "su11" => Ok(GradedAlgebraSpec::su11()),
        "s3_over_a3" => Ok(GradedAlgebraSpec::s3_over_a3().0),
        _ => Err(Error::Schema(format!("{s}: no such spec file or built-in spec"))),
    }
}

fn characters(a: &CharArgs, spec: &GradedAlgebraSpec) -> Result<Vec<Character>, Error> {
    let v = if let Some(c) = &a.character {
        if c.trim_start().starts_with('{') {
            io::parse_json(c)?
        } else {
            read_json(Path::new(c))?
        }
    } else if let Some(seed) = &a.seed {
        json!({"kind": "dyn", "seed": seed, "back": a.back, "fwd": a.fwd, "branches": a.branches})
    } else if let (Some(s), Some(t)) = (&a.s, &a.t) {
        json!({"kind": "sl2", "algebra": spec.family.tag(), "s": s, "t": t})
    } else {
        return Err(Error::Schema("give --character, --seed, or both --s and --t".into()));
    };
    io::characters_from_json(&v, spec)
}

fn first_character(a: &CharArgs, spec: &GradedAlgebraSpec) -> Result<Character, Error> {
    let mut cs = characters(a, spec)?;
    if cs.len() > 1 {
        eprintln!("note: {} forward branches; using the first", cs.len());
    }
    Ok(cs.remove(0))
}

fn edge_json(e: &Edge) -> Value {
    match e {
        Edge::Wall(k) => json!({"wall": k}),
        Edge::Open(k) => json!({"open": k}),
    }
}

fn orbit_json(o: &DynOrbit) -> Value {
    let values: Vec<Value> = o.values().iter().map(|(k, x)| json!([k, io::scalar_to_json(x)])).collect();
    json!({
        "branch": o.branch,
        "class": dyn_classify(o).to_string(),
        "explored": [o.explored().0, o.explored().1],
        "multi_branch": o.multi_branch,
        "lower": edge_json(&o.lower),
        "period": o.period,
        "upper": edge_json(&o.upper),
        "values": values,
    })
}

fn orbit(a: &CharArgs) -> Result<Output, Error> {
    let spec = load_spec(&a.spec)?;
    let mut items = Vec::new();
    let mut text = String::new();
    for chi in characters(a, &spec)? {
        match &chi {
            Character::Dyn(o) => {
                items.push(orbit_json(o));
                text.push_str(&format!("# {}\n", dyn_classify(o)));
                for (k, x) in o.values() {
                    text.push_str(&format!("{k}\t{x}\n"));
                }
            }
            Character::Sl2(c) => {
                let report = stabilizer_and_orbit(&chi, Some(&spec), a.depth)?;
                let (lo, hi) = c.domain();
                let orbit: Vec<Value> = report
                    .orbit
                    .iter()
                    .filter_map(|(g, x)| match x {
                        Character::Sl2(x) => Some(json!({
                            "g": g.as_int(),
                            "s": x.s.to_string(),
                            "t": x.t.to_string(),
                        })),
                        _ => None,
                    })
                    .collect();
                items.push(json!({
                    "domain": [lo, hi],
                    "membership": format!("{:?}", sl2_membership(c)),
                    "orbit": orbit,
                    "s": c.s.to_string(),
                    "t": c.t.to_string(),
                }));
                text.push_str(&format!("{} G_chi = [{lo:?}, {hi:?}]\n", chi.describe()));
            }
            Character::Finite(_) => {
                let report = stabilizer_and_orbit(&chi, Some(&spec), a.depth)?;
                let orbit: Vec<Value> = report.orbit.iter().map(|(g, x)| json!([g.to_string(), x.describe()])).collect();
                items.push(json!({"character": chi.describe(), "orbit": orbit}));
                text.push_str(&format!("{}\n", chi.describe()));
            }
        }
    }
    Ok(Output { value: json!({"orbits": items}), text, code: 0 })
}

fn classify(a: &CharArgs) -> Result<Output, Error> {
    let spec = load_spec(&a.spec)?;
    let mut items = Vec::new();
    let mut text = String::new();
    for chi in characters(a, &spec)? {
        let report = stabilizer_and_orbit(&chi, Some(&spec), a.depth)?;
        let class = match &chi {
            Character::Dyn(o) => dyn_classify(o).to_string(),
            Character::Sl2(c) => format!("{:?}", sl2_membership(c)),
            Character::Finite(c) => c.describe(),
        };
        text.push_str(&format!("{class}\tstabilizer {}\tG_chi {}\n", report.stabilizer, report.definedness));
        items.push(json!({
            "character": chi.describe(),
            "class": class,
            "definedness": report.definedness.to_string(),
            "orbit_sample": report.orbit.len(),
            "stabilizer": report.stabilizer.to_string(),
        }));
    }
    Ok(Output { value: json!({"classes": items}), text, code: 0 })
}

fn parse_z(s: &str) -> Result<Scalar, Error> {
    if let Some((n, k)) = s.split_once(':') {
        let bad = || Error::Schema(format!("--z {s:?}: expected n:k"));
        return Ok(Scalar::root_of_unity(n.parse().map_err(|_| bad())?, k.parse().map_err(|_| bad())?));
    }
    parse_surd(s).map(Scalar::Exact).map_err(|e| Error::Schema(format!("--z: {e}")))
}

fn build_rep(a: &CharArgs, spec: &GradedAlgebraSpec) -> Result<InducedRep, Error> {
    let chi = first_character(a, spec)?;
    match (&chi, &a.z) {
        (Character::Dyn(o), Some(z)) => dyn_periodic_rep(o, &parse_z(z)?),
        (_, Some(_)) => Err(Error::Schema("--z applies to periodic dynamical orbits only".into())),
        _ => induce_character(&chi, spec, a.window.parse::<Window>()?),
    }
}

fn induce(a: &CharArgs) -> Result<Output, Error> {
    let spec = load_spec(&a.spec)?;
    let rep = build_rep(a, &spec)?;
    let value = io::rep_to_json(&rep, &spec);
    let text = format!("dimension {}\noperators {}\n", rep.dim(), rep.ops.keys().cloned().collect::<Vec<_>>().join(" "));
    Ok(Output { value, text, code: 0 })
}

fn reports_output(reports: Vec<VerificationReport>, mut value: Value) -> Output {
    let mut text = String::new();
    for r in &reports {
        text.push_str(&format!("{}\t{}\t{}\t{}\n", r.check, r.status, r.residual, r.witness.as_deref().unwrap_or("-")));
    }
    let code = verify::exit_code(&reports) as u8;
    if value.is_null() {
        value = io::reports_to_json(&reports);
    } else {
        value["reports"] = io::reports_to_json(&reports);
    }
    Output { value, text, code }
}

fn run_verify(a: &VerifyArgs, tol: f64) -> Result<Output, Error> {
    let spec = a.spec.as_deref().map(load_spec).transpose()?;
    let (rep, spec) = io::rep_from_json(&read_json(&a.rep)?, spec.as_ref())?;
    let mut reports = Vec::new();
    for check in a.checks.split(',').map(str::trim).filter(|c| !c.is_empty()) {
        reports.push(match check {
            "relations" => verify::relation_check(&rep, &spec, tol)?,
            "commutant" => verify::commutant_report(&rep, tol)?,
            "casimir" => {
                let s = a.s.as_deref().ok_or_else(|| Error::Schema("the casimir check needs --s".into()))?;
                let s = parse_surd(s).map(Scalar::Exact).map_err(|e| Error::Schema(format!("--s: {e}")))?;
                verify::casimir_check(&rep, &s, tol)?
            }
            "well-behaved" | "well_behaved" => verify::well_behaved_check(&rep, &spec, tol)?,
            other => return Err(Error::Schema(format!("--checks: unknown check {other:?}"))),
        });
    }
    Ok(reports_output(reports, Value::Null))
}

fn mackey(a: &CharArgs) -> Result<Output, Error> {
    let spec = load_spec(&a.spec)?;
    let chi = first_character(a, &spec)?;
    let m = mackey_cocycle(&chi, &spec, a.depth)?;
    let (cocycle, unit) = m.residuals(&spec);
    let sections: Vec<Value> =
        m.sections.iter().map(|(h, w)| json!({"h": io::elem_to_json(&spec.group, h), "word": spec.word_string(w)})).collect();
    let tau: Vec<Value> = m
        .tau
        .iter()
        .map(|((h, k), t)| {
            json!({"h": io::elem_to_json(&spec.group, h), "k": io::elem_to_json(&spec.group, k), "tau": io::scalar_to_json(t)})
        })
        .collect();
    let value = json!({
        "cocycle_residual": cocycle,
        "extension": m.extension.as_ref().map(io::scalar_to_json),
        "sections": sections,
        "stabilizer": m.stabilizer.to_string(),
        "tau": tau,
        "unit_residual": unit,
        "verdict": m.verdict.to_string(),
    });
    let text = format!("stabilizer {}\nobstruction {}\n", m.stabilizer, m.verdict);
    let code = match m.verdict {
        gsr_core::induction::Obstruction::Inconclusive(_) => 2,
        _ => 0,
    };
    Ok(Output { value, text, code })
}

fn imprimitivity(a: &ImprimitivityArgs, tol: f64) -> Result<Output, Error> {
    let spec = load_spec(&a.chr.spec)?;
    let (rep, spec) = match &a.rep {
        Some(p) => io::rep_from_json(&read_json(p)?, Some(&spec))?,
        None => (build_rep(&a.chr, &spec)?, spec),
    };
    let h = natural_subgroup(&rep, &spec)?;
    let sys = build_induced_system(&rep, &spec, &h)?;
    let reports = vec![verify_system(&sys, &spec, tol)?, round_trip(&sys, &spec, tol)];
    Ok(reports_output(reports, json!({"system": io::system_to_json(&sys, &spec)})))
}

fn fqs(a: &FqsArgs, tol: f64) -> Result<Output, Error> {
    let conv = match a.convention {
        Conv::Standard => Convention::Standard,
        Conv::Reversed => Convention::Reversed,
    };
    let mut rows = Vec::new();
    let mut text = String::from("n\tp\tq\tz\ta\tgram\n");
    for pt in fqs_parameters(a.n)? {
        let (z, h) = (Scalar::from_q(pt.z.clone()), Scalar::from_q(pt.a.clone()));
        let mut levels = Vec::new();
        let mut verdicts = Vec::new();
        for level in 1..=a.level {
            let (_, r) = verify::vir_gram_positivity(&h, &z, level, conv)?;
            verdicts.push(format!("L{level}:{}", r.status));
            let mut v = io::report_to_json(&r);
            v["level"] = json!(level);
            levels.push(v);
        }
        text.push_str(&format!("{}\t{}\t{}\t{}\t{}\t{}\n", pt.n, pt.p, pt.q, pt.z, pt.a, verdicts.join(",")));
        rows.push(json!({
            "a": Scalar::from_q(pt.a).to_string(),
            "gram": levels,
            "n": pt.n,
            "p": pt.p,
            "q": pt.q,
            "z": Scalar::from_q(pt.z).to_string(),
        }));
    }
    let _ = tol;
    Ok(Output { value: json!({"points": rows}), text, code: 0 })
}
