//! The `color-euler` command line: `series`, `chi` and `verify`.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 input error, 3 budget exceeded.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde_json::{json, Map, Value};

use crate::cec::{variant_series, AlgebraSpec};
use crate::characteristic::{
    abel_exact_complex, abel_exact_with_module, abel_numeric_complex, theorem_main, CharResult, NumericVerdict,
    Variant,
};
use crate::error::Error;
use crate::io::{self, SpecFile};
use crate::numeric::AbelSchedule;
use crate::oracle;
use crate::summation::{chi_method_complex, SummationMethod};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

/// Order used by `verify` when none is given.
pub const DEFAULT_VERIFY_ORDER: usize = 12;
/// Largest total dimension for which `verify` runs the floating-point crosscheck.
pub const NUMERIC_CHECK_MAX_DIM: u64 = 6;

#[derive(Parser, Debug)]
#[command(name = "color-euler", version, about = "Poincaré series and Euler characteristics of color Lie algebra cochain complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated Poincaré series of the cochain complex.
    Series {
        spec: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value = "color")]
        variant: Variant,
    },
    /// Euler characteristic, exact (abel) or in the sense of another method.
    Chi {
        spec: PathBuf,
        #[arg(long, default_value = "color")]
        variant: Variant,
        #[arg(long, default_value = "abel")]
        method: String,
        #[arg(long)]
        assume_boundary_char: bool,
        /// Term budget for non-Abel methods.
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Oracle, numeric and coherence checks on a spec, or a re-check of a saved report.
    Verify {
        path: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure { code: EXIT_INPUT, message: e.to_string() }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    std::fs::read_to_string(path)
        .map_err(|e| Failure { code: EXIT_INPUT, message: format!("cannot read {}: {e}", path.display()) })
}

fn load_spec(path: &Path) -> std::result::Result<AlgebraSpec, Failure> {
    Ok(SpecFile::from_json(&read(path)?)?.to_spec()?)
}

fn echo(spec: &AlgebraSpec) -> Value {
    serde_json::to_value(SpecFile::from_spec(spec)).expect("spec serializes")
}

/// Parses arguments, runs one command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let (report, code) = match dispatch(cli.command) {
        Ok(r) => r,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            return f.code;
        }
    };
    let _ = out.write_all(io::render(&report).as_bytes());
    code
}

fn dispatch(cmd: Command) -> std::result::Result<(Value, i32), Failure> {
    match cmd {
        Command::Series { spec, order, variant } => {
            let spec = load_spec(&spec)?;
            Ok((cmd_series(&spec, order.unwrap_or_else(|| spec.default_order()), variant), EXIT_OK))
        }
        Command::Chi { spec, variant, method, assume_boundary_char, budget } => {
            let spec = load_spec(&spec)?;
            cmd_chi(&spec, variant, &method, assume_boundary_char, budget)
        }
        Command::Verify { path, order } => {
            let text = read(&path)?;
            let value: Value =
                serde_json::from_str(&text).map_err(|e| Failure::from(Error::Parse(e.to_string())))?;
            if value.get("command").is_some() {
                verify_report(&value)
            } else {
                let spec = SpecFile::from_json(&text)?.to_spec()?;
                cmd_verify(&spec, order.unwrap_or(DEFAULT_VERIFY_ORDER))
            }
        }
    }
}

pub fn cmd_series(spec: &AlgebraSpec, order: usize, variant: Variant) -> Value {
    let s = variant_series(spec, variant, order);
    json!({
        "command": "series",
        "spec": echo(spec),
        "variant": variant.name(),
        "order": order,
        "series": io::series(&s),
    })
}

fn cmd_chi(
    spec: &AlgebraSpec,
    variant: Variant,
    method: &str,
    assume: bool,
    budget: Option<usize>,
) -> std::result::Result<(Value, i32), Failure> {
    let mut report = Map::new();
    report.insert("command".into(), json!("chi"));
    report.insert("spec".into(), echo(spec));
    report.insert("variant".into(), json!(variant.name()));
    report.insert("method".into(), json!(method));
    let mut code = EXIT_OK;
    if method == "abel" {
        report.insert("exact".into(), io::char_result(&abel_exact_with_module(spec, variant)));
        if assume {
            report.insert("conditional".into(), io::char_result(&theorem_main(spec, variant, true)));
        }
        let numeric = abel_numeric_complex(spec, variant, &AbelSchedule::default());
        report.insert("crosscheck".into(), io::numeric_report(&numeric));
    } else {
        let mut m = SummationMethod::parse(method)?;
        if let Some(b) = budget {
            m = m.with_budget(b);
        }
        let chi = chi_method_complex(spec, variant, &m);
        if chi.budget_exceeded() {
            code = EXIT_BUDGET;
        }
        report.insert("budget".into(), json!(m.budget()));
        report.insert("result".into(), io::method_chi(&chi));
        if assume {
            report.insert(
                "note".into(),
                json!("the boundary assertion only enters the Abel path; method-sense values are reported as computed"),
            );
        }
    }
    Ok((Value::Object(report), code))
}

fn mismatch(check: &str, detail: Value) -> Value {
    json!({ "check": check, "detail": detail })
}

fn cmd_verify(spec: &AlgebraSpec, order: usize) -> std::result::Result<(Value, i32), Failure> {
    let mut failures = Vec::new();
    let mut checks = Map::new();

    match oracle::verify_closed_form(spec, order)? {
        None => {
            checks.insert("oracle".into(), json!("pass"));
        }
        Some(m) => {
            checks.insert("oracle".into(), json!("fail"));
            failures.push(mismatch(
                "oracle",
                json!({
                    "degree": m.degree,
                    "element": m.element.to_string(),
                    "oracle": m.oracle.to_string(),
                    "closed_form": m.closed_form.to_string(),
                }),
            ));
        }
    }

    let exact: Vec<(Variant, CharResult)> = Variant::ALL.iter().map(|&v| (v, abel_exact_complex(spec, v))).collect();

    if spec.total_dim() <= NUMERIC_CHECK_MAX_DIM {
        let trivial_m = spec.with_module_dims([(spec.group().zero(), 1)].into())?;
        let mut ok = true;
        for (v, r) in &exact {
            let num = abel_numeric_complex(&trivial_m, *v, &AbelSchedule::default());
            let problem = match (r, &num.verdict) {
                (CharResult::Exists(x), NumericVerdict::Converged(vals)) => {
                    let want = x.to_f64_map();
                    vals.iter()
                        .find(|(a, got)| (*got - want.get(*a).copied().unwrap_or(0.0)).abs() >= 1e-3)
                        .map(|(a, got)| json!({ "variant": v.name(), "element": a.to_string(), "got_numeric": got }))
                }
                (CharResult::Diverges(w), NumericVerdict::Diverging(d)) if w.is_subset(d) => None,
                (r, _) => Some(json!({
                    "variant": v.name(),
                    "exact": io::char_result(r),
                    "numeric": io::numeric_report(&num)["verdict"].clone(),
                })),
            };
            if let Some(p) = problem {
                ok = false;
                failures.push(mismatch("exact-vs-numeric", p));
            }
        }
        checks.insert("exact_vs_numeric".into(), json!(if ok { "pass" } else { "fail" }));
    } else {
        checks.insert("exact_vs_numeric".into(), json!("skipped: total dimension above 6"));
    }

    let mut coherent = true;
    let get = |v: Variant| exact.iter().find(|(w, _)| *w == v).map(|(_, r)| r).expect("all variants");
    for (hi, lo) in [(Variant::Color, Variant::Super), (Variant::Color, Variant::Ordinary), (Variant::Super, Variant::Ordinary)] {
        let (CharResult::Exists(x), r_lo) = (get(hi), get(lo)) else { continue };
        let pushed = match hi {
            Variant::Color => x.pushforward(&spec.variant_hom(lo))?,
            _ => x.pushforward(&crate::group::GroupHom::to_trivial(x.group()))?,
        };
        let ok = matches!(r_lo, CharResult::Exists(y) if *y == pushed);
        if !ok {
            coherent = false;
            failures.push(mismatch(
                "variant-coherence",
                json!({ "from": hi.name(), "to": lo.name(), "pushed": io::elem(&pushed), "found": io::char_result(r_lo) }),
            ));
        }
    }
    checks.insert("variant_coherence".into(), json!(if coherent { "pass" } else { "fail" }));

    let code = if failures.is_empty() { EXIT_OK } else { EXIT_MISMATCH };
    let report = json!({
        "command": "verify",
        "spec": echo(spec),
        "order": order,
        "checks": checks,
        "mismatches": failures,
    });
    Ok((report, code))
}

/// Recomputes the series stored in a saved `series` report.
fn verify_report(report: &Value) -> std::result::Result<(Value, i32), Failure> {
    let bad = |what: &str| Failure::from(Error::Parse(format!("report: {what}")));
    if report["command"] != "series" {
        return Err(bad("only series reports can be re-checked"));
    }
    let spec_file: SpecFile = serde_json::from_value(report["spec"].clone()).map_err(|e| bad(&e.to_string()))?;
    let spec = spec_file.to_spec()?;
    let variant: Variant = report["variant"].as_str().ok_or_else(|| bad("missing variant"))?.parse()?;
    let stored = report["series"].as_array().ok_or_else(|| bad("missing series"))?;
    if stored.is_empty() {
        return Err(bad("empty series"));
    }
    let fresh = variant_series(&spec, variant, stored.len() - 1);
    let ring = fresh.group().clone();
    let mut first = None;
    for (n, v) in stored.iter().enumerate() {
        let found = io::parse_elem(&ring, v)?;
        let expected = fresh.coeff(n);
        if &found != expected {
            let a = ring.elements().find(|a| found.coeff(a) != expected.coeff(a)).expect("they differ");
            first = Some(json!({
                "degree": n,
                "element": a.to_string(),
                "expected": expected.coeff(&a).to_string(),
                "found": found.coeff(&a).to_string(),
            }));
            break;
        }
    }
    let code = if first.is_some() { EXIT_MISMATCH } else { EXIT_OK };
    let mismatches: Vec<Value> = first.into_iter().map(|d| mismatch("series", d)).collect();
    Ok((
        json!({ "command": "verify", "spec": echo(&spec), "variant": variant.name(), "order": stored.len() - 1, "mismatches": mismatches }),
        code,
    ))
}
