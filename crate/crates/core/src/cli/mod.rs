//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 parse error,
//! 3 precondition violation, 4 resource bound, 5 search failure.
//! With `--json` standard output carries exactly one JSON document;
//! diagnostics always go to standard error.

pub mod parse;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::classify::{
    classify_image_with, pi_polynomial, central_polynomial, preimage_search, ClassificationReport,
    ClassifyOptions, ImageClass, PreimageOptions, DEFAULT_MAX_TUPLES,
};
use crate::composition::AlgebraLevel;
use crate::error::{Error, Result};
use crate::hermitian::{verify_model, Herm2};
use crate::poly::{associator, enumerate_monomials, identity_polynomial, Polynomial};
use crate::scalar::{ScalarMode, DEFAULT_TOLERANCE};
use crate::spin::{automorphism_mapping, orbit_equivalent, ExactSpin, FloatSpin};

pub use parse::{parse, parse_polynomial, ExprAst, Factor, Parsed, Term, VarTable};

pub mod exit {
    pub const SUCCESS: i32 = 0;
    pub const VERIFICATION_FAILURE: i32 = 1;
    pub const PARSE_ERROR: i32 = 2;
    pub const PRECONDITION: i32 = 3;
    pub const RESOURCE_BOUND: i32 = 4;
    pub const SEARCH_FAILURE: i32 = 5;
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Parse { .. } => exit::PARSE_ERROR,
        Error::BoundExceeded(_) => exit::RESOURCE_BOUND,
        Error::SearchFailed { .. } => exit::SEARCH_FAILURE,
        Error::InvariantViolation(_) => exit::VERIFICATION_FAILURE,
        Error::LevelMismatch { .. }
        | Error::DimensionMismatch { .. }
        | Error::IndexOutOfRange { .. }
        | Error::InvalidInput(_)
        | Error::NotMultilinear
        | Error::MissingAssignment(_)
        | Error::NotFull(_) => exit::PRECONDITION,
    }
}

#[derive(Debug, Parser)]
#[command(name = "jordan", version, about = "Polynomial images on spin factors J_n")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Spin,
    Hermitian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeFlag {
    Exact,
    Float,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalArgs {
    /// Dimension n of J_n (inferred from element arguments when omitted, else 3)
    #[arg(long = "n", global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Model::Spin)]
    pub model: Model,
    #[arg(long = "scalar-mode", global = true, value_enum, default_value_t = ModeFlag::Exact)]
    pub scalar_mode: ModeFlag,
    #[arg(long, global = true, default_value_t = DEFAULT_TOLERANCE)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-tuples", global = true, default_value_t = DEFAULT_MAX_TUPLES)]
    pub max_tuples: u64,
    /// Reject unparenthesized product chains
    #[arg(long, global = true)]
    pub strict: bool,
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Classify the image of a multilinear polynomial
    Classify { expr: String },
    /// Evaluate a polynomial at given elements
    Eval {
        expr: String,
        /// NAME=ELEMENT, e.g. x1=e1 or "x2=1 + [0, 2]"
        #[arg(long = "assign")]
        assign: Vec<String>,
        /// File with one NAME = ELEMENT per line
        #[arg(long = "assign-file")]
        assign_file: Option<PathBuf>,
    },
    /// Find inputs on which a full-image polynomial takes the target value
    Witness {
        expr: String,
        #[arg(long)]
        target: String,
        #[arg(long = "max-retries", default_value_t = 64)]
        max_retries: usize,
    },
    /// Decide whether two elements lie in one automorphism orbit
    Orbit { x: String, y: String },
    /// Check the Hermitian 2x2 models against J_n
    ModelsVerify {
        #[arg(default_value = "all")]
        level: String,
        #[arg(long, default_value_t = 100)]
        pairs: usize,
    },
    /// List canonical multilinear monomials of degree m
    Monomials {
        m: u32,
        #[arg(long)]
        count: bool,
    },
    /// Run the golden examples and the model checks
    Selftest,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Outcome {
        Outcome {
            code: exit::SUCCESS,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { exit::PARSE_ERROR } else { exit::SUCCESS };
            let rendered = e.render().to_string();
            return if code == exit::SUCCESS {
                Outcome::ok(rendered)
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: rendered,
                }
            };
        }
    };
    execute(&cli)
}

pub fn execute(cli: &Cli) -> Outcome {
    let g = &cli.global;
    let mut warnings = Vec::new();
    let result = match &cli.command {
        Command::Classify { expr } => run_classify(g, expr, &mut warnings),
        Command::Eval {
            expr,
            assign,
            assign_file,
        } => run_eval(g, expr, assign, assign_file.as_ref(), &mut warnings),
        Command::Witness {
            expr,
            target,
            max_retries,
        } => run_witness(g, expr, target, *max_retries, &mut warnings),
        Command::Orbit { x, y } => run_orbit(g, x, y),
        Command::ModelsVerify { level, pairs } => run_models_verify(g, level, *pairs),
        Command::Monomials { m, count } => run_monomials(g, *m, *count),
        Command::Selftest => run_selftest(g),
    };
    let mut stderr: String = warnings.iter().map(|w| format!("warning: {w}\n")).collect();
    match result {
        Ok(Rendered { json, text, code, diagnostics }) => {
            stderr.push_str(&diagnostics);
            let stdout = if g.json { format!("{json}\n") } else { text };
            Outcome { code, stdout, stderr }
        }
        Err(err) => {
            let code = exit_code(&err);
            let _ = writeln!(stderr, "error: {err}");
            let mut doc = json!({ "error": err.to_string(), "exit_code": code });
            if let Error::SearchFailed { trace } = &err {
                for line in trace {
                    let _ = writeln!(stderr, "  {line}");
                }
                doc["trace"] = json!(trace);
            }
            let stdout = if g.json { format!("{doc}\n") } else { String::new() };
            Outcome { code, stdout, stderr }
        }
    }
}

pub struct Rendered {
    pub json: Value,
    pub text: String,
    pub code: i32,
    pub diagnostics: String,
}

impl Rendered {
    fn new(json: Value, text: String) -> Rendered {
        Rendered {
            json,
            text,
            code: exit::SUCCESS,
            diagnostics: String::new(),
        }
    }
}

fn lower(g: &GlobalArgs, expr: &str, warnings: &mut Vec<String>) -> Result<(Polynomial, VarTable)> {
    let (p, table, w) = parse_polynomial(expr, g.strict)?;
    warnings.extend(w);
    Ok((p, table))
}

fn options(g: &GlobalArgs) -> ClassifyOptions {
    ClassifyOptions {
        max_tuples: g.max_tuples,
        parallel: true,
    }
}

/// `--n` if given, else the dimension of the first full-form element, else 3.
fn resolve_n(g: &GlobalArgs, elements: &[&str]) -> Result<usize> {
    if let Some(n) = g.n {
        if n < 2 {
            return Err(Error::InvalidInput(format!("--n must be at least 2, got {n}")));
        }
        return Ok(n);
    }
    for text in elements {
        if !text.trim().starts_with('e') {
            if let Ok(x) = FloatSpin::parse(text) {
                return Ok(x.n());
            }
        }
    }
    Ok(3)
}

fn witness_text(label: &str, record: Option<&crate::classify::BasicEvalRecord>) -> String {
    match record {
        None => format!("{label}: none\n"),
        Some(r) => format!("{label}: {:?} -> {}\n", r.tuple, r.value),
    }
}

fn report_text(report: &ClassificationReport) -> String {
    let mut out = format!("class: {}\n", report.class);
    out.push_str(&witness_text("real witness", report.real_witness.as_ref()));
    out.push_str(&witness_text("pure witness", report.pure_witness.as_ref()));
    let _ = writeln!(out, "tuples examined: {}", report.tuples_examined);
    out
}

pub fn run_classify(g: &GlobalArgs, expr: &str, warnings: &mut Vec<String>) -> Result<Rendered> {
    let n = resolve_n(g, &[])?;
    let (p, _) = lower(g, expr, warnings)?;
    let report = classify_image_with(&p, n, &options(g))?;
    Ok(Rendered::new(report.to_json(), report_text(&report)))
}

fn read_assignments(inline: &[String], file: Option<&PathBuf>) -> Result<Vec<(String, String)>> {
    let mut pairs = Vec::new();
    let mut push = |line: &str| -> Result<()> {
        let (name, value) = line
            .split_once('=')
            .ok_or_else(|| Error::InvalidInput(format!("expected NAME=ELEMENT, got {line:?}")))?;
        pairs.push((name.trim().to_string(), value.trim().to_string()));
        Ok(())
    };
    for a in inline {
        push(a)?;
    }
    if let Some(path) = file {
        let content = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
        for line in content.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if !line.is_empty() {
                push(line)?;
            }
        }
    }
    Ok(pairs)
}

/// Orders the assigned element texts by variable index.
fn bind<'a>(table: &VarTable, pairs: &'a [(String, String)]) -> Result<Vec<&'a str>> {
    if let Some((name, _)) = pairs.iter().find(|(name, _)| table.index_of(name).is_none()) {
        return Err(Error::InvalidInput(format!("variable {name} does not occur in the expression")));
    }
    table
        .names
        .iter()
        .enumerate()
        .map(|(i, name)| {
            pairs
                .iter()
                .rev()
                .find(|(n, _)| n == name)
                .map(|(_, v)| v.as_str())
                .ok_or(Error::MissingAssignment(i as u32 + 1))
        })
        .collect()
}

pub fn run_eval(
    g: &GlobalArgs,
    expr: &str,
    assign: &[String],
    assign_file: Option<&PathBuf>,
    warnings: &mut Vec<String>,
) -> Result<Rendered> {
    let pairs = read_assignments(assign, assign_file)?;
    let (p, table) = lower(g, expr, warnings)?;
    let texts = bind(&table, &pairs)?;
    let n = resolve_n(g, &texts)?;
    if texts.is_empty() {
        return Err(Error::InvalidInput("expression has no variables".into()));
    }
    match (g.model, g.scalar_mode) {
        (Model::Spin, ModeFlag::Exact) => {
            let xs = texts.iter().map(|t| ExactSpin::parse_in(t, n)).collect::<Result<Vec<_>>>()?;
            let value = p.evaluate(&xs)?;
            let json = json!({ "model": "spin", "n": n, "value": value.to_string() });
            Ok(Rendered::new(json, format!("{value}\n")))
        }
        (Model::Spin, ModeFlag::Float) => {
            let xs = texts.iter().map(|t| FloatSpin::parse_in(t, n)).collect::<Result<Vec<_>>>()?;
            let value = p.evaluate(&xs)?;
            let json = json!({ "model": "spin", "n": n, "value": value.to_string() });
            Ok(Rendered::new(json, format!("{value}\n")))
        }
        (Model::Hermitian, ModeFlag::Exact) => {
            let level = AlgebraLevel::for_spin_dimension(n).ok_or_else(|| {
                Error::InvalidInput(format!("no Hermitian 2x2 model of dimension {n} (use 3, 4, 6 or 10)"))
            })?;
            let xs = texts
                .iter()
                .map(|t| Herm2::from_spin(&ExactSpin::parse_in(t, n)?, level))
                .collect::<Result<Vec<_>>>()?;
            let value = p.evaluate(&xs)?;
            let json = json!({
                "model": "hermitian",
                "n": n,
                "value": value.to_record(),
                "spin_value": value.to_spin().to_string(),
            });
            Ok(Rendered::new(json, format!("{value}\n")))
        }
        (Model::Hermitian, ModeFlag::Float) => Err(Error::InvalidInput(
            "the Hermitian model is exact only; drop --scalar-mode float".into(),
        )),
    }
}

pub fn run_witness(
    g: &GlobalArgs,
    expr: &str,
    target: &str,
    max_retries: usize,
    warnings: &mut Vec<String>,
) -> Result<Rendered> {
    let n = resolve_n(g, &[target])?;
    let target = FloatSpin::parse_in(target, n)?;
    let (p, table) = lower(g, expr, warnings)?;
    let found = preimage_search(
        &p,
        &target,
        &PreimageOptions {
            seed: g.seed,
            tolerance: g.tol,
            max_retries,
            classify: options(g),
        },
    )?;
    let mut assignment = serde_json::Map::new();
    let mut text = String::new();
    for (name, x) in table.names.iter().zip(&found.assignment) {
        assignment.insert(name.clone(), json!(x.to_string()));
        let _ = writeln!(text, "{name} = {x}");
    }
    let _ = writeln!(text, "value = {}", found.value);
    let _ = writeln!(text, "residual = {:e}", found.residual);
    let json = json!({
        "assignment": assignment,
        "value": found.value.to_string(),
        "target": target.to_string(),
        "residual": found.residual,
        "slot": found.slot,
        "attempts": found.attempts,
        "trace": found.trace,
    });
    Ok(Rendered::new(json, text))
}

pub fn run_orbit(g: &GlobalArgs, x: &str, y: &str) -> Result<Rendered> {
    let n = resolve_n(g, &[x, y])?;
    let (equivalent, fx, fy) = match g.scalar_mode {
        ModeFlag::Exact => {
            let (ex, ey) = (ExactSpin::parse_in(x, n)?, ExactSpin::parse_in(y, n)?);
            (orbit_equivalent(&ex, &ey, ScalarMode::Exact), ex.to_f64(), ey.to_f64())
        }
        ModeFlag::Float => {
            let (fx, fy) = (FloatSpin::parse_in(x, n)?, FloatSpin::parse_in(y, n)?);
            let mode = ScalarMode::Floating { tolerance: g.tol };
            (orbit_equivalent(&fx, &fy, mode), fx, fy)
        }
    };
    let mut json = json!({
        "equivalent": equivalent,
        "x": fx.to_string(),
        "y": fy.to_string(),
        "automorphism": Value::Null,
    });
    let mut text = format!("equivalent: {equivalent}\n");
    let pure_zero = fx.pure_norm_sq() <= g.tol;
    if equivalent && !pure_zero {
        let phi = automorphism_mapping(fx.pure_part(), fy.pure_part(), g.tol)?;
        let image = phi.apply(&fx)?;
        let residual = image.distance(&fy);
        json["automorphism"] = json!(phi.matrix());
        json["image"] = json!(image.to_string());
        json["residual"] = json!(residual);
        let _ = writeln!(text, "image of x: {image}\nresidual: {residual:e}");
    }
    Ok(Rendered::new(json, text))
}

pub fn run_models_verify(g: &GlobalArgs, level: &str, pairs: usize) -> Result<Rendered> {
    let levels: Vec<AlgebraLevel> = if level.eq_ignore_ascii_case("all") {
        AlgebraLevel::ALL.to_vec()
    } else {
        vec![level.parse()?]
    };
    let reports = levels
        .iter()
        .map(|&l| verify_model(l, pairs, g.seed))
        .collect::<Result<Vec<_>>>()?;
    let ok = reports.iter().all(|r| r.ok());
    let mut text = String::new();
    let mut diagnostics = String::new();
    for r in &reports {
        let _ = writeln!(
            text,
            "J_{} ({}): {} basis pairs, {} random pairs: {}",
            r.n,
            r.level,
            r.basis_pairs,
            r.random_pairs,
            if r.ok() { "ok" } else { "FAILED" }
        );
        for f in &r.failures {
            let _ = writeln!(diagnostics, "J_{}: {f}", r.n);
        }
    }
    let json = json!({ "ok": ok, "models": reports });
    Ok(Rendered {
        json,
        text,
        code: if ok { exit::SUCCESS } else { exit::VERIFICATION_FAILURE },
        diagnostics,
    })
}

pub fn run_monomials(_g: &GlobalArgs, m: u32, count: bool) -> Result<Rendered> {
    let monomials = enumerate_monomials(m)?;
    let names: Vec<String> = monomials.iter().map(ToString::to_string).collect();
    if count {
        return Ok(Rendered::new(
            json!({ "m": m, "count": names.len() }),
            format!("{}\n", names.len()),
        ));
    }
    let text = names.iter().map(|s| format!("{s}\n")).collect();
    Ok(Rendered::new(json!({ "m": m, "count": names.len(), "monomials": names }), text))
}

/// Golden checks bundled with the binary.
pub fn selftest_checks(seed: u64) -> Vec<(String, bool)> {
    let mut checks = Vec::new();
    let class_is = |p: &Polynomial, n: usize, want: ImageClass| {
        classify_image_with(p, n, &ClassifyOptions::default()).map(|r| r.class == want) == Ok(true)
    };
    for n in [3, 4, 6, 10] {
        checks.push((format!("associator on J_{n} is pure"), class_is(&associator(), n, ImageClass::PureSpace)));
    }
    checks.push(("associator∘associator on J_3 is scalars".into(), class_is(&central_polynomial(), 3, ImageClass::Scalars)));
    checks.push(("nested degree-8 polynomial on J_3 is zero".into(), class_is(&pi_polynomial(), 3, ImageClass::Zero)));
    checks.push(("identity polynomial on J_3 is full".into(), class_is(&identity_polynomial(), 3, ImageClass::Full)));
    let basis = |i| ExactSpin::basis(3, i).expect("valid basis index");
    let value = associator().evaluate(&[basis(1), basis(1), basis(2)]);
    checks.push(("associator(e1, e1, e2) = e2".into(), value == Ok(basis(2))));
    for level in AlgebraLevel::ALL {
        let ok = verify_model(level, 20, seed).map(|r| r.ok()) == Ok(true);
        checks.push((format!("{level} model is J_{}", level.spin_dimension()), ok));
    }
    checks
}

pub fn run_selftest(g: &GlobalArgs) -> Result<Rendered> {
    let checks = selftest_checks(g.seed);
    let passed = checks.iter().filter(|(_, ok)| *ok).count();
    let all = passed == checks.len();
    let failed: Vec<&str> = checks.iter().filter(|(_, ok)| !ok).map(|(name, _)| name.as_str()).collect();
    let text = if all {
        format!("PASS {passed}/{} checks\n", checks.len())
    } else {
        format!("FAIL {passed}/{} checks: {}\n", checks.len(), failed.join("; "))
    };
    let json = json!({
        "passed": all,
        "checks": checks.iter().map(|(name, ok)| json!({ "name": name, "ok": ok })).collect::<Vec<_>>(),
    });
    Ok(Rendered {
        json,
        text,
        code: if all { exit::SUCCESS } else { exit::VERIFICATION_FAILURE },
        diagnostics: String::new(),
    })
}

