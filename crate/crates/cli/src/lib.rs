//! Command-line front end. Every verb produces one [`Report`]; `main`
//! prints it as JSON (or CSV for `scan --csv`).

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use froberg_core::bounds::audit_chain;
use froberg_core::exactpoly::{rat_int, rat_to_string, Rational};
use froberg_core::gpoly::{build_g, certify_bound, coeffs_via_symmetric, equiv_triple, scan_dprime_range, ScanMode};
use froberg_core::ring::{conjectured_series, rs_params};
use froberg_core::verify::{
    check_gcase, check_split, reproduce_table1, split_plan, table1_plan, Outcome, VerifyReport, DEFAULT_TRIALS,
    TABLE1,
};
use froberg_core::Error;
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// One invocation's result. Keys serialize in a fixed order and maps are
/// sorted, so equal reports give equal bytes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: Map<String, Value>,
    pub seed: u64,
    pub outcome: String,
    pub details: Value,
    pub elapsed_ms: u64,
    pub version: String,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("reports are plain JSON values")
    }

    /// The report with the run-dependent fields blanked.
    pub fn normalized(&self) -> Report {
        Report {
            elapsed_ms: 0,
            version: String::new(),
            ..self.clone()
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "froberg", version, about = "Degree-wise checks of Froberg's conjecture for generic forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Truncated Hilbert series conjectured for generic forms.
    Series {
        #[arg(short)]
        n: u32,
        /// Comma-separated generator degrees.
        #[arg(short, value_delimiter = ',', num_args = 0..)]
        d: Vec<u32>,
        #[arg(long)]
        max_deg: u32,
    },
    /// g_{d,d'}: coefficients, bound certificate, equivalent conditions.
    GAnalyze(Degrees),
    /// Coefficient sign-change scan for d' = 1..=dprime-max.
    Scan {
        #[arg(long, default_value_t = 1)]
        dprime_min: u32,
        #[arg(long)]
        dprime_max: u32,
        #[arg(long, value_enum, default_value_t = Mode::Exact)]
        mode: Mode,
        /// Emit one CSV row per d' instead of JSON.
        #[arg(long)]
        csv: bool,
    },
    /// Row-by-row check of the dimension count.
    Audit(Degrees),
    /// Random full-rank check of the generic product basis.
    Verify {
        #[command(flatten)]
        deg: Degrees,
        #[command(flatten)]
        rand: RandomArgs,
    },
    /// Two-stage check through the subring in the first n' variables.
    VerifySplit {
        #[command(flatten)]
        deg: Degrees,
        #[arg(long)]
        nprime: u32,
        #[command(flatten)]
        rand: RandomArgs,
    },
    /// Published split parameters for d = 3, d' = 2, n = 16..21.
    Table1 {
        /// Only this row (default: all rows).
        #[arg(long)]
        row: Option<u32>,
        /// Also run both rank stages (slow: matrices up to ~10^4 square).
        #[arg(long)]
        run: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Recomputes the published values.
    Selftest,
}

#[derive(Args, Debug, Clone, Copy)]
struct Degrees {
    #[arg(short)]
    n: u32,
    #[arg(short)]
    d: u32,
    #[arg(long)]
    dprime: u32,
}

#[derive(Args, Debug, Clone, Copy)]
struct RandomArgs {
    #[arg(short, default_value_t = 11)]
    p: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: u32,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Mode {
    Exact,
    IntervalFast,
}

impl From<Mode> for ScanMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => ScanMode::Exact,
            Mode::IntervalFast => ScanMode::IntervalFast,
        }
    }
}

/// What `main` should do with an invocation.
pub struct Execution {
    pub report: Report,
    pub exit_code: i32,
    /// Text for standard output.
    pub stdout: String,
    /// Diagnostic for standard error, if any.
    pub stderr: Option<String>,
}

/// Parses and runs one command; `argv` excludes the program name.
pub fn run<S: AsRef<str>>(argv: &[S]) -> (Report, i32) {
    let e = execute(argv);
    (e.report, e.exit_code)
}

pub fn execute<S: AsRef<str>>(argv: &[S]) -> Execution {
    let start = Instant::now();
    let args = std::iter::once("froberg").chain(argv.iter().map(AsRef::as_ref));
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            let is_info = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let mut report = blank("usage", Map::new(), 0);
            report.outcome = if is_info { "holds" } else { "error" }.into();
            report.details = json!({ "error": text });
            return Execution {
                report,
                exit_code: if is_info { 0 } else { 2 },
                stdout: if is_info { text.clone() } else { String::new() },
                stderr: if is_info { None } else { Some(text) },
            };
        }
    };
    let csv = matches!(cli.command, Command::Scan { csv: true, .. });
    let (mut report, code) = match dispatch(&cli.command) {
        Ok(done) => done,
        Err((mut report, err)) => {
            report.outcome = "error".into();
            report.details = json!({ "error": err.to_string() });
            (report, 2)
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    let stderr = (code == 2).then(|| format!("error: {}", report.details["error"].as_str().unwrap_or("")));
    let stdout = if csv && code != 2 {
        scan_csv(&report)
    } else {
        report.to_json() + "\n"
    };
    Execution {
        report,
        exit_code: code,
        stdout,
        stderr,
    }
}

fn blank(command: &str, params: Map<String, Value>, seed: u64) -> Report {
    Report {
        command: command.into(),
        params,
        seed,
        outcome: String::new(),
        details: Value::Null,
        elapsed_ms: 0,
        version: VERSION.into(),
    }
}

fn finish(mut report: Report, ok: bool, yes: &str, no: &str, details: Value) -> (Report, i32) {
    report.outcome = if ok { yes } else { no }.into();
    report.details = details;
    (report, if ok { 0 } else { 1 })
}

fn big_json(v: &BigUint) -> Value {
    match v.to_u64() {
        Some(x) => json!(x),
        None => json!(v.to_string()),
    }
}

fn rat_json(q: &Rational) -> Value {
    json!(rat_to_string(q))
}

fn obj(pairs: Value) -> Map<String, Value> {
    match pairs {
        Value::Object(m) => m,
        _ => Map::new(),
    }
}

type Dispatched = std::result::Result<(Report, i32), (Report, Error)>;

fn dispatch(cmd: &Command) -> Dispatched {
    match cmd {
        Command::Series { n, d, max_deg } => {
            let report = blank("series", obj(json!({"n": n, "d": d, "max_deg": max_deg})), 0);
            if *n == 0 {
                return Err((report, Error::InvalidArgument("n must be at least 1".into())));
            }
            let coeffs: Vec<Value> = conjectured_series(*n, d, *max_deg).iter().map(big_json).collect();
            Ok(finish(report, true, "holds", "fails", json!({ "coeffs": coeffs })))
        }
        Command::GAnalyze(g) => {
            let report = blank("g-analyze", degree_params(g), 0);
            match g_analyze(g) {
                Ok((ok, det)) => Ok(finish(report, ok, "holds", "fails", det)),
                Err(e) => Err((report, e)),
            }
        }
        Command::Scan {
            dprime_min,
            dprime_max,
            mode,
            ..
        } => {
            let mode: ScanMode = (*mode).into();
            let report = blank(
                "scan",
                obj(json!({"dprime_min": dprime_min, "dprime_max": dprime_max, "mode": mode.as_str()})),
                0,
            );
            if *dprime_min == 0 || dprime_min > dprime_max {
                return Err((report, Error::InvalidArgument("need 1 <= dprime-min <= dprime-max".into())));
            }
            let reports = scan_dprime_range(*dprime_min..=*dprime_max, mode);
            let ok = reports.iter().all(|r| r.all_at_most_one);
            let rows: Vec<Value> = reports
                .iter()
                .map(|r| {
                    json!({
                        "dprime": r.dprime,
                        "max_d_checked": r.max_d_checked,
                        "all_at_most_one": r.all_at_most_one,
                        "failures": r.failures,
                        "escalations": r.escalations,
                    })
                })
                .collect();
            Ok(finish(report, ok, "holds", "fails", json!({ "scans": rows, "all_at_most_one": ok })))
        }
        Command::Audit(g) => {
            let report = blank("audit", degree_params(g), 0);
            let a = match audit_chain(g.n, g.d, g.dprime) {
                Ok(a) => a,
                Err(e) => return Err((report, e)),
            };
            let p = rs_params(g.n, g.d, g.dprime);
            let max_hi = a.rows.iter().map(|r| r.lhs.hi.clone()).max().unwrap_or_else(|| rat_int(0));
            let failing: Vec<Value> = a
                .failing_rows()
                .map(|r| json!({"t": r.t, "lhs_lo": rat_json(&r.lhs.lo), "lhs_hi": rat_json(&r.lhs.hi)}))
                .collect();
            let details = json!({
                "concludes": a.concludes,
                "hypothesis": a.hypothesis,
                "rows": a.rows.len(),
                "failing_rows": failing,
                "max_lhs_hi": rat_json(&max_hi),
                "r": big_json(&p.r),
                "s": big_json(&p.s),
                "dim_dprime": big_json(&p.dim_dprime),
            });
            Ok(finish(report, a.concludes, "holds", "fails", details))
        }
        Command::Verify { deg, rand } => {
            let mut params = degree_params(deg);
            params.extend(obj(json!({"p": rand.p, "trials": rand.trials})));
            let report = blank("verify", params, rand.seed);
            match check_gcase(deg.n, deg.d, deg.dprime, rand.p, rand.seed, rand.trials) {
                Ok(v) => Ok(verify_finish(report, &v)),
                Err(e) => Err((report, e)),
            }
        }
        Command::VerifySplit { deg, nprime, rand } => {
            let mut params = degree_params(deg);
            params.extend(obj(json!({"nprime": nprime, "p": rand.p, "trials": rand.trials})));
            let report = blank("verify-split", params, rand.seed);
            let run = split_plan(deg.n, deg.d, deg.dprime, *nprime, rand.p)
                .and_then(|plan| check_split(&plan, rand.seed, rand.trials));
            match run {
                Ok(v) => Ok(verify_finish(report, &v)),
                Err(e) => Err((report, e)),
            }
        }
        Command::Table1 { row, run, seed } => {
            let mut params = obj(json!({"run": run}));
            if let Some(r) = row {
                params.insert("row".into(), json!(r));
            }
            let report = blank("table1", params, *seed);
            match table1(*row, *run, *seed) {
                Ok((ok, yes, no, det)) => Ok(finish(report, ok, yes, no, det)),
                Err(e) => Err((report, e)),
            }
        }
        Command::Selftest => {
            let report = blank("selftest", Map::new(), 0);
            let checks = selftest();
            let ok = checks.iter().all(|(_, pass)| *pass);
            let list: Vec<Value> = checks.iter().map(|(name, pass)| json!({"name": name, "pass": pass})).collect();
            Ok(finish(report, ok, "holds", "fails", json!({ "checks": list })))
        }
    }
}

fn degree_params(g: &Degrees) -> Map<String, Value> {
    obj(json!({"n": g.n, "d": g.d, "dprime": g.dprime}))
}

fn g_analyze(g: &Degrees) -> froberg_core::Result<(bool, Value)> {
    let poly = build_g(g.d, g.dprime)?;
    let cert = certify_bound(g.d, g.dprime, g.n)?;
    let eq = equiv_triple(g.n, g.d, g.dprime)?;
    let details = json!({
        "coeffs": poly.coeffs().iter().map(rat_json).collect::<Vec<_>>(),
        "sign_changes": cert.sign_changes,
        "g_at_nminus1": rat_json(&cert.g_at_nminus1),
        "method": cert.method.as_str(),
        "holds": cert.holds,
        "propagates_in_d": cert.propagates_in_d,
        "witness": cert.witness.as_ref().map(rat_json),
        "equiv": {
            "g_nonneg": eq.g_nonneg,
            "dim_sq": eq.dim_sq,
            "r_cond": eq.r_cond,
            "agree": eq.agree(),
        },
    });
    Ok((cert.holds, details))
}

fn verify_details(v: &VerifyReport) -> Value {
    let stages: Vec<Value> = v
        .stages
        .iter()
        .map(|s| {
            json!({"name": s.name, "trial": s.trial, "rows": s.rows, "cols": s.cols,
                   "rank": s.rank, "full_rank": s.full_rank})
        })
        .collect();
    let mut d = json!({
        "prime": v.prime,
        "trials": v.trials,
        "failures": v.failures,
        "rank": v.rank,
        "rows": v.matrix_dims.0,
        "cols": v.matrix_dims.1,
        "r": big_json(&v.params.r),
        "s": big_json(&v.params.s),
        "stages": stages,
    });
    if let Some(plan) = &v.split {
        d["l"] = json!(plan.l);
        d["nprime"] = json!(plan.nprime);
        d["quotient_dim"] = json!(plan.quotient_dim);
    }
    d
}

fn verify_finish(report: Report, v: &VerifyReport) -> (Report, i32) {
    finish(report, v.outcome == Outcome::Verified, "verified", "inconclusive", verify_details(v))
}

type Table1Result = (bool, &'static str, &'static str, Value);

fn table1(row: Option<u32>, run: bool, seed: u64) -> froberg_core::Result<Table1Result> {
    let rows: Vec<u32> = match row {
        Some(r) => vec![r],
        None => TABLE1.iter().map(|t| t.0).collect(),
    };
    let mut all_match = true;
    let mut all_verified = true;
    let mut out = Vec::new();
    for n in rows {
        let (plan, expected) = table1_plan(n)?;
        let matches = plan.l == expected;
        all_match &= matches;
        let mut entry = json!({
            "n": n, "nprime": plan.nprime, "p": plan.p, "l": plan.l, "expected_l": expected,
            "matches": matches, "r": plan.r, "s": plan.s, "quotient_dim": plan.quotient_dim,
            "stage1_side": plan.dims.sub_ddprime,
        });
        if run {
            let v = reproduce_table1(n, seed)?;
            all_verified &= v.outcome == Outcome::Verified;
            entry["outcome"] = json!(v.outcome.as_str());
            entry["verify"] = verify_details(&v);
        }
        out.push(entry);
    }
    let details = json!({ "rows": out });
    Ok(if run {
        (all_match && all_verified, "verified", "inconclusive", details)
    } else {
        (all_match, "holds", "fails", details)
    })
}

/// Published values, each recomputed.
fn selftest() -> Vec<(String, bool)> {
    let mut out = Vec::new();
    for &(d, n, want) in &[(3u32, 22i64, 7i64), (4, 6, 1), (5, 3, 0)] {
        let x = rat_int(n - 1);
        let by_g = build_g(d, 2).map(|g| g.eval(&x));
        let by_sym = coeffs_via_symmetric(d, 2).map(|c| {
            c.iter().rev().fold(rat_int(0), |acc, k| acc * &x + k)
        });
        let pass = by_g == Ok(rat_int(want)) && by_sym == Ok(rat_int(want));
        out.push((format!("g_{{{d},2}}({}) = {want}", n - 1), pass));
    }
    for &(n, _, _, l) in &TABLE1 {
        let pass = table1_plan(n).map(|(p, _)| p.l == l).unwrap_or(false);
        out.push((format!("table row n={n}: l = {l}"), pass));
    }
    for &(n, d, dp, want) in &[(3u32, 5u32, 2u32, true), (22, 3, 2, true), (21, 3, 2, false), (6, 4, 2, true)] {
        let pass = audit_chain(n, d, dp).map(|a| a.concludes == want).unwrap_or(false);
        out.push((format!("audit ({n},{d},{dp}) concludes {want}"), pass));
    }
    let c = certify_bound(5, 2, 3);
    out.push((
        "g_{5,2} bound at n=3 holds with one sign change".into(),
        c.map(|c| c.holds && c.sign_changes == 1).unwrap_or(false),
    ));
    let g = build_g(3, 2).map(|g| g.eval_int(20));
    out.push(("g_{3,2}(20) = -1".into(), g == Ok(rat_int(-1))));
    out
}

/// CSV for `scan`: one row per `d'`.
pub fn scan_csv(report: &Report) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["dprime", "max_d_checked", "all_at_most_one", "failures", "escalations"])
        .expect("in-memory write");
    for row in report.details["scans"].as_array().into_iter().flatten() {
        let failures: Vec<String> = row["failures"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|v| v.to_string())
            .collect();
        w.write_record([
            row["dprime"].to_string(),
            row["max_d_checked"].to_string(),
            row["all_at_most_one"].to_string(),
            failures.join(" "),
            row["escalations"].to_string(),
        ])
        .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}
