//! Command-line frontend: one subcommand per operation family, JSON (default)
//! or CSV output, exact values first with decimal approximations in a
//! clearly-labeled `approx` object.
//!
//! Exit codes: 0 success, 1 usage errors, 2 domain errors (reported as a
//! machine-readable JSON object on stdout).

use crate::crf::{crf_ideal_l, crf_ideal_n, CrfError, CrfTriple};
use crate::exact::{QuadVal, Rat};
use crate::lattice::{
    destab_candidates, realize_corollary_lattice, search_irrational, LatticeError,
};
use crate::oracle::{run_verification, OracleError, DEFAULT_BUDGET};
use crate::pell::{fundamental_solution, nth_solution, pell_for_type, PellError, TypePellData};
use crate::semihomog::{chern_vector, torsion_count_u, SemihomogError, Slope};
use crate::thresholds::{
    beta0_principal, beta_pair, beta_principal, family_matches, product_surface_beta,
    subadditivity_check, PairError, PolarizedPair, ThresholdError,
};
use clap::{Parser, Subcommand, ValueEnum};
use num::BigInt;
use serde_json::{json, Map, Value};
use std::ffi::OsString;
use std::path::{Path, PathBuf};
use std::str::FromStr;

const APPROX_DIGITS: usize = 20;

#[derive(Parser)]
#[command(
    name = "bft",
    version,
    about = "Exact basepoint-freeness thresholds of polarized abelian surfaces of type (1,d)"
)]
struct Cli {
    /// Output format (default: json; the family table defaults to csv)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// key=value config file (search.bound, oracle.budget, parallel.width)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimal (or k-th) positive solution of x^2 - N y^2 = 1
    Pell {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: Option<u64>,
    },
    /// Chern vector of the semihomogeneous bundle of slope lambda
    Semihomog {
        #[arg(long)]
        d: u64,
        #[arg(long, value_name = "A/B", allow_hyphen_values = true)]
        lambda: String,
    },
    /// Rank-function profiles of the ideal sheaf of a point
    Crf {
        #[arg(long)]
        d: u64,
        /// Intersection data of a second polarization
        #[arg(long, value_name = "L2,LN,N2")]
        pair: Option<String>,
        /// Evaluate the profiles at one rational point
        #[arg(long, value_name = "X")]
        eval: Option<String>,
        /// Emit decimal table rows on a rational grid
        #[arg(long, value_name = "X0:X1:STEP")]
        table: Option<String>,
    },
    /// Principal thresholds with Pell data and family match
    Beta {
        #[arg(long)]
        d: u64,
    },
    /// Thresholds of a pair from its intersection numbers
    BetaPair {
        #[arg(long)]
        l2: u64,
        #[arg(long)]
        ln: u64,
        #[arg(long)]
        n2: u64,
    },
    /// Closed-form family table for d up to a bound
    Family {
        #[arg(long)]
        dmax: u64,
    },
    /// Threshold on the split surface for n = a C1 + b C2
    Product {
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
    },
    /// Inverse-threshold comparison for the split n = m·l ± c
    Subadd {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        m: u64,
        #[arg(long, allow_hyphen_values = true)]
        c2: i64,
    },
    /// Enumerate intersection triples with irrational thresholds
    Search {
        #[arg(long)]
        d: u64,
        #[arg(long)]
        bound: Option<u64>,
        /// Also report pairs whose thresholds are rational
        #[arg(long)]
        rational_too: bool,
    },
    /// Destabilization candidate table
    Destab {
        #[arg(long)]
        d: u64,
    },
    /// Certificate for the type-(1,17) irrational-threshold example
    Corollary17,
    /// Run the oracle suite against every fast path
    Verify {
        #[arg(long)]
        d_max: Option<u64>,
        #[arg(long)]
        budget: Option<u64>,
    },
}

#[derive(Debug)]
enum DomainError {
    Pell(PellError),
    Pair(PairError),
    Threshold(ThresholdError),
    Semihomog(SemihomogError),
    Crf(CrfError),
    Lattice(LatticeError),
    Oracle(OracleError),
}

macro_rules! from_err {
    ($($variant:ident($ty:ty)),*) => {$(
        impl From<$ty> for DomainError {
            fn from(e: $ty) -> Self {
                DomainError::$variant(e)
            }
        }
    )*};
}
from_err!(
    Pell(PellError),
    Pair(PairError),
    Threshold(ThresholdError),
    Semihomog(SemihomogError),
    Crf(CrfError),
    Lattice(LatticeError),
    Oracle(OracleError)
);

enum Failure {
    Usage(String),
    Domain(DomainError),
}

impl<E: Into<DomainError>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.into())
    }
}

fn error_json(e: &DomainError) -> Value {
    let (name, mut extra) = match e {
        DomainError::Pell(PellError::PerfectSquareModulus(n)) => {
            ("PerfectSquareModulus", json!({ "n": n }))
        }
        DomainError::Pell(PellError::ModulusTooSmall(n)) => ("ModulusTooSmall", json!({ "n": n })),
        DomainError::Pell(PellError::ModulusOverflow(d)) => ("ModulusOverflow", json!({ "d": d })),
        DomainError::Pair(PairError::NonPositive { which }) => {
            ("NotAmple", json!({ "which": which }))
        }
        DomainError::Pair(PairError::OddSelfIntersection { which, value }) => {
            ("OddSelfIntersection", json!({ "which": which, "value": value }))
        }
        DomainError::Pair(PairError::HodgeViolation { ln_sq, product }) => (
            "HodgeViolation",
            json!({ "ln_sq": ln_sq.to_string(), "product": product.to_string() }),
        ),
        DomainError::Pair(PairError::Pell(inner)) => {
            return error_json(&DomainError::Pell(inner.clone()))
        }
        DomainError::Threshold(ThresholdError::HypothesisFailed { deficit, minimal_m }) => {
            let mut v = json!({ "deficit": deficit.to_string() });
            if let Some(m) = minimal_m {
                v["minimal_m"] = json!(m);
            }
            ("HypothesisFailed", v)
        }
        DomainError::Threshold(ThresholdError::PerfectSquareType { d }) => {
            ("PerfectSquareType", json!({ "d": d }))
        }
        DomainError::Threshold(ThresholdError::NuTooSmall { nu, d }) => {
            ("NuTooSmall", json!({ "nu": nu.to_string(), "d": d }))
        }
        DomainError::Threshold(ThresholdError::InvalidCurveClass { c_sq }) => {
            ("InvalidCurveClass", json!({ "c2": c_sq }))
        }
        DomainError::Threshold(ThresholdError::Pair(inner)) => {
            return error_json(&DomainError::Pair(inner.clone()))
        }
        DomainError::Semihomog(SemihomogError::ZeroSlope) => ("ZeroSlope", json!({})),
        DomainError::Semihomog(SemihomogError::ZeroDenominator) => ("ZeroDenominator", json!({})),
        DomainError::Semihomog(SemihomogError::HodgeViolation { ln_sq, product }) => (
            "HodgeViolation",
            json!({ "ln_sq": ln_sq.to_string(), "product": product.to_string() }),
        ),
        DomainError::Crf(CrfError::PerfectSquare(d)) => ("PerfectSquare", json!({ "d": d })),
        DomainError::Crf(CrfError::HypothesisFailed { deficit }) => {
            ("HypothesisFailed", json!({ "deficit": deficit.to_string() }))
        }
        DomainError::Crf(CrfError::BelowDomain { x, floor }) => (
            "BelowDomain",
            json!({ "x": x.to_string(), "floor": floor.to_string() }),
        ),
        DomainError::Crf(other) => ("ProfileError", json!({ "detail": other.to_string() })),
        DomainError::Lattice(LatticeError::NotAmple { which, value }) => {
            ("NotAmple", json!({ "which": which, "value": value.to_string() }))
        }
        DomainError::Lattice(LatticeError::OddSelfIntersection { which, value }) => {
            ("OddSelfIntersection", json!({ "which": which, "value": value.to_string() }))
        }
        DomainError::Lattice(LatticeError::PerfectSquareType { d }) => {
            ("PerfectSquareType", json!({ "d": d }))
        }
        DomainError::Lattice(LatticeError::EnumerationTooLarge { r_max }) => {
            ("EnumerationTooLarge", json!({ "r_max": r_max.to_string() }))
        }
        DomainError::Lattice(LatticeError::Pair(inner)) => {
            return error_json(&DomainError::Pair(inner.clone()))
        }
        DomainError::Lattice(other) => ("LatticeError", json!({ "detail": other.to_string() })),
        DomainError::Oracle(OracleError::BudgetExceeded { needed, budget }) => (
            "BudgetExceeded",
            json!({ "needed": needed.to_string(), "budget": budget }),
        ),
    };
    let message = match e {
        DomainError::Pell(e) => e.to_string(),
        DomainError::Pair(e) => e.to_string(),
        DomainError::Threshold(e) => e.to_string(),
        DomainError::Semihomog(e) => e.to_string(),
        DomainError::Crf(e) => e.to_string(),
        DomainError::Lattice(e) => e.to_string(),
        DomainError::Oracle(e) => e.to_string(),
    };
    let obj = extra.as_object_mut().expect("error payload is an object");
    obj.insert("error".to_string(), json!(name));
    obj.insert("message".to_string(), json!(message));
    Value::Object(std::mem::take(obj))
}

/// Plain-text key=value configuration.
#[derive(Debug, Clone)]
pub struct Config {
    pub search_bound: u64,
    pub oracle_budget: u64,
    pub parallel_width: Option<usize>,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            search_bound: 100,
            oracle_budget: DEFAULT_BUDGET,
            parallel_width: None,
        }
    }
}

impl Config {
    pub fn load(path: &Path) -> Result<Config, String> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut cfg = Config::default();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {} is not key=value: {raw}", lineno + 1))?;
            let (key, value) = (key.trim(), value.trim());
            let parse = |v: &str| -> Result<u64, String> {
                v.parse()
                    .map_err(|e| format!("config line {}: {e}", lineno + 1))
            };
            match key {
                "search.bound" => cfg.search_bound = parse(value)?,
                "oracle.budget" => cfg.oracle_budget = parse(value)?,
                "parallel.width" => cfg.parallel_width = Some(parse(value)? as usize),
                other => eprintln!("warning: unknown config key `{other}` ignored"),
            }
        }
        Ok(cfg)
    }
}

fn with_pool<R: Send>(width: Option<usize>, f: impl FnOnce() -> R + Send) -> R {
    match width {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build()
            .expect("thread pool")
            .install(f),
        None => f(),
    }
}

struct CommandOutput {
    records: Vec<Value>,
    default_format: Format,
    exit: i32,
}

impl CommandOutput {
    fn single(v: Value) -> Self {
        CommandOutput {
            records: vec![v],
            default_format: Format::Json,
            exit: 0,
        }
    }

    fn lines(vs: Vec<Value>) -> Self {
        CommandOutput {
            records: vs,
            default_format: Format::Json,
            exit: 0,
        }
    }
}

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("serializable output")
}

fn quad_json(v: &QuadVal) -> Value {
    to_value(v)
}

fn approx(v: &QuadVal) -> Value {
    json!(v.decimal(APPROX_DIGITS))
}

fn parse_rat(s: &str, what: &str) -> Result<Rat, Failure> {
    Rat::from_str(s.trim()).map_err(|e| Failure::Usage(format!("invalid {what} `{s}`: {e}")))
}

fn cmd_pell(n: u64, k: Option<u64>) -> Result<CommandOutput, Failure> {
    let fund = fundamental_solution(n)?;
    let k = k.unwrap_or(1);
    if k == 0 {
        return Err(Failure::Usage("--k must be at least 1".into()));
    }
    let sol = if k == 1 { fund } else { nth_solution(&fund, k) };
    let mut v = to_value(&sol);
    v["command"] = json!("pell");
    Ok(CommandOutput::single(v))
}

fn cmd_semihomog(d: u64, lambda: &str) -> Result<CommandOutput, Failure> {
    let lam_rat = parse_rat(lambda, "slope")?;
    let slope = Slope::from_rat(&lam_rat);
    let u = torsion_count_u(&slope, d)?;
    let vector = chern_vector(&slope, d)?;
    let mut v = to_value(&vector);
    v["command"] = json!("semihomog");
    v["d"] = json!(d);
    v["lambda"] = json!(lam_rat.to_string());
    v["u"] = json!(u.to_string());
    Ok(CommandOutput::single(v))
}

fn crf_triple_json(triple: &CrfTriple) -> Value {
    let mut v = to_value(triple);
    let bps: Vec<Value> = triple.h0.breakpoints().iter().map(quad_json).collect();
    v["breakpoints"] = Value::Array(bps);
    v["breakpoints_approx"] = Value::Array(
        triple.h0.breakpoints().iter().map(|b| approx(b)).collect(),
    );
    v
}

fn cmd_crf(
    d: u64,
    pair: Option<&str>,
    eval: Option<&str>,
    table: Option<&str>,
) -> Result<CommandOutput, Failure> {
    let (triple, pair_desc) = match pair {
        Some(spec) => {
            let parts: Vec<&str> = spec.split(',').collect();
            if parts.len() != 3 {
                return Err(Failure::Usage(format!(
                    "--pair expects L2,LN,N2 but got `{spec}`"
                )));
            }
            let nums: Vec<u64> = parts
                .iter()
                .map(|p| {
                    p.trim()
                        .parse::<u64>()
                        .map_err(|e| Failure::Usage(format!("--pair entry `{p}`: {e}")))
                })
                .collect::<Result<_, _>>()?;
            if nums[0] != 2 * d {
                return Err(Failure::Usage(format!(
                    "--pair l2 = {} is inconsistent with --d {d} (expected l2 = {})",
                    nums[0],
                    2 * d
                )));
            }
            let pair = PolarizedPair::new(nums[0], nums[1], nums[2])?;
            (crf_ideal_n(&pair)?, Some((nums[0], nums[1], nums[2])))
        }
        None => (crf_ideal_l(d)?, None),
    };
    let mut v = crf_triple_json(&triple);
    v["command"] = json!("crf");
    v["d"] = json!(d);
    if let Some((l2, ln, n2)) = pair_desc {
        v["pair"] = json!([l2, ln, n2]);
    }
    if let Some(x) = eval {
        let x = parse_rat(x, "evaluation point")?;
        let h0 = triple.h0.eval(&x)?;
        let h1 = triple.h1.eval(&x)?;
        let h2 = triple.h2.eval(&x)?;
        v["eval"] = json!({
            "x": x.to_string(),
            "h0": h0.to_string(),
            "h1": h1.to_string(),
            "h2": h2.to_string(),
            "chi": triple.chi.eval_rat(&x).to_string(),
        });
    }
    if let Some(spec) = table {
        let parts: Vec<&str> = spec.split(':').collect();
        if parts.len() != 3 {
            return Err(Failure::Usage(format!(
                "--table expects X0:X1:STEP but got `{spec}`"
            )));
        }
        let x0 = parse_rat(parts[0], "table start")?;
        let x1 = parse_rat(parts[1], "table end")?;
        let step = parse_rat(parts[2], "table step")?;
        if step <= Rat::from_integer(BigInt::from(0)) {
            return Err(Failure::Usage("table step must be positive".into()));
        }
        let mut rows = Vec::new();
        let mut x = x0;
        while x <= x1 {
            let h0 = triple.h0.eval(&x)?;
            let h1 = triple.h1.eval(&x)?;
            let h2 = triple.h2.eval(&x)?;
            rows.push(json!({
                "x": x.to_string(),
                "h0": h0.to_string(),
                "h1": h1.to_string(),
                "h2": h2.to_string(),
                "h0_approx": QuadVal::from_rat(h0).decimal(APPROX_DIGITS),
                "h1_approx": QuadVal::from_rat(h1).decimal(APPROX_DIGITS),
            }));
            x += &step;
        }
        v["table"] = Value::Array(rows);
    }
    Ok(CommandOutput::single(v))
}

fn pell_data_json(data: &TypePellData) -> Value {
    match data {
        TypePellData::Pell(sol) => to_value(sol),
        TypePellData::Square(m) => json!({ "square_root_of_d": m.root }),
    }
}

fn cmd_beta(d: u64) -> Result<CommandOutput, Failure> {
    let beta = beta_principal(d)?;
    let beta0 = beta0_principal(d)?;
    let data = pell_for_type(d)?;
    let branch = match &data {
        TypePellData::Pell(_) => "pell",
        TypePellData::Square(_) => "square-type",
    };
    let mut v = json!({
        "command": "beta",
        "d": d,
        "beta": beta.as_rat().expect("principal threshold is rational").to_string(),
        "beta0": beta0.as_rat().expect("principal companion is rational").to_string(),
        "branch": branch,
        "pell": pell_data_json(&data),
        "approx": { "beta": beta.decimal(APPROX_DIGITS), "beta0": beta0.decimal(APPROX_DIGITS) },
    });
    if let TypePellData::Pell(sol) = &data {
        let second = nth_solution(sol, 2);
        let candidate = Rat::new(BigInt::from(2) * &second.y, &second.x - 1);
        v["second_candidate"] = json!(candidate.to_string());
        v["note"] =
            json!("second_candidate is listed for reference; the threshold always comes from the fundamental solution");
    }
    let families = family_matches(d);
    if !families.is_empty() {
        v["family"] = to_value(&families);
    }
    Ok(CommandOutput::single(v))
}

fn cmd_beta_pair(l2: u64, ln: u64, n2: u64) -> Result<CommandOutput, Failure> {
    let pair = PolarizedPair::new(l2, ln, n2)?;
    let res = beta_pair(&pair)?;
    let mut v = to_value(&res);
    v["command"] = json!("beta-pair");
    v["l2"] = json!(l2);
    v["ln"] = json!(ln);
    v["n2"] = json!(n2);
    v["approx"] = json!({
        "beta": res.beta.decimal(APPROX_DIGITS),
        "beta0": res.beta0.decimal(APPROX_DIGITS),
    });
    v["provenance"] = json!(match pair.pell() {
        TypePellData::Pell(_) => "pair formula over the fundamental Pell solution",
        TypePellData::Square(_) => "perfect-square type, proportional case",
    });
    Ok(CommandOutput::single(v))
}

fn cmd_family(dmax: u64) -> Result<CommandOutput, Failure> {
    let mut rows = Vec::new();
    for d in 1..=dmax {
        match pell_for_type(d)? {
            TypePellData::Square(m) => {
                rows.push(json!({
                    "d": d,
                    "x0": "",
                    "y0": "",
                    "beta": format!("1/{}", m.root),
                    "family": "square",
                }));
            }
            TypePellData::Pell(sol) => {
                let beta = beta_principal(d)?;
                let tags: Vec<&str> = family_matches(d).iter().map(|f| f.kind.tag()).collect();
                rows.push(json!({
                    "d": d,
                    "x0": sol.x.to_string(),
                    "y0": sol.y.to_string(),
                    "beta": beta.as_rat().expect("rational").to_string(),
                    "family": tags.join(";"),
                }));
            }
        }
    }
    Ok(CommandOutput {
        records: rows,
        default_format: Format::Csv,
        exit: 0,
    })
}

fn cmd_product(a: u64, b: u64) -> Result<CommandOutput, Failure> {
    if a == 0 || b == 0 {
        return Err(Failure::Usage("--a and --b must be positive".into()));
    }
    let beta = product_surface_beta(a, b);
    let regime = if 2 * a <= b {
        "1/(2a)"
    } else if a <= b {
        "1/b"
    } else if a <= 2 * b {
        "1/a"
    } else {
        "1/(2b)"
    };
    Ok(CommandOutput::single(json!({
        "command": "product",
        "a": a,
        "b": b,
        "beta": beta.to_string(),
        "regime": regime,
        "approx": { "beta": QuadVal::from_rat(beta.clone()).decimal(APPROX_DIGITS) },
    })))
}

fn cmd_subadd(d: u64, m: u64, c2: i64) -> Result<CommandOutput, Failure> {
    let report = subadditivity_check(d, m, c2)?;
    let mut v = to_value(&report);
    v["command"] = json!("subadd");
    v["verdict"] = json!(if report.subadditive {
        "sum <= total"
    } else {
        "sum > total (counterexample)"
    });
    v["approx"] = json!({
        "sum": report.sum.decimal(APPROX_DIGITS),
        "total_inv": report.total_inv.decimal(APPROX_DIGITS),
    });
    Ok(CommandOutput::single(v))
}

fn cmd_search(
    d: u64,
    bound: Option<u64>,
    rational_too: bool,
    cfg: &Config,
) -> Result<CommandOutput, Failure> {
    let bound = bound.unwrap_or(cfg.search_bound);
    let hits = with_pool(cfg.parallel_width, || {
        search_irrational(d, bound, rational_too)
    })?;
    let records = hits
        .iter()
        .map(|h| {
            let mut v = to_value(h);
            v["approx"] = json!({
                "beta": h.result.beta.decimal(APPROX_DIGITS),
                "beta0": h.result.beta0.decimal(APPROX_DIGITS),
            });
            v
        })
        .collect();
    Ok(CommandOutput::lines(records))
}

fn cmd_destab(d: u64) -> Result<CommandOutput, Failure> {
    let candidates = destab_candidates(d)?;
    let records = candidates
        .iter()
        .map(|c| {
            let mut v = to_value(c);
            v["command"] = json!("destab");
            v["d"] = json!(d);
            v
        })
        .collect();
    Ok(CommandOutput::lines(records))
}

fn cmd_corollary17() -> Result<CommandOutput, Failure> {
    let cert = realize_corollary_lattice();
    let mut v = to_value(&cert);
    v["command"] = json!("corollary17");
    v["approx"] = json!({
        "beta": cert.threshold.beta.decimal(APPROX_DIGITS),
        "beta0": cert.threshold.beta0.decimal(APPROX_DIGITS),
    });
    Ok(CommandOutput::single(v))
}

fn cmd_verify(d_max: Option<u64>, budget: Option<u64>, cfg: &Config) -> Result<CommandOutput, Failure> {
    let d_max = d_max.unwrap_or(100);
    let budget = budget.unwrap_or(cfg.oracle_budget);
    let reports = with_pool(cfg.parallel_width, || run_verification(d_max, budget));
    let all_pass = reports.iter().all(|r| r.pass);
    let mut records: Vec<Value> = reports.iter().map(to_value).collect();
    records.push(json!({
        "command": "verify",
        "checks": reports.len(),
        "pass": all_pass,
    }));
    Ok(CommandOutput {
        records,
        default_format: Format::Json,
        exit: if all_pass { 0 } else { 2 },
    })
}

fn csv_escape(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

fn value_to_cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => n.to_string(),
        other => other.to_string(),
    }
}

fn render_csv(records: &[Value]) -> String {
    if records.is_empty() {
        return String::new();
    }
    let mut columns: Vec<String> = Vec::new();
    for record in records {
        if let Value::Object(map) = record {
            for key in map.keys() {
                if !columns.iter().any(|c| c == key) {
                    columns.push(key.clone());
                }
            }
        }
    }
    let mut out = String::new();
    out.push_str(
        &columns
            .iter()
            .map(|c| csv_escape(c))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for record in records {
        let empty = Map::new();
        let map = record.as_object().unwrap_or(&empty);
        let row: Vec<String> = columns
            .iter()
            .map(|c| map.get(c).map(value_to_cell).unwrap_or_default())
            .map(|cell| csv_escape(&cell))
            .collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

fn execute(cli: &Cli, cfg: &Config) -> Result<CommandOutput, Failure> {
    match &cli.cmd {
        Cmd::Pell { n, k } => cmd_pell(*n, *k),
        Cmd::Semihomog { d, lambda } => cmd_semihomog(*d, lambda),
        Cmd::Crf {
            d,
            pair,
            eval,
            table,
        } => cmd_crf(*d, pair.as_deref(), eval.as_deref(), table.as_deref()),
        Cmd::Beta { d } => cmd_beta(*d),
        Cmd::BetaPair { l2, ln, n2 } => cmd_beta_pair(*l2, *ln, *n2),
        Cmd::Family { dmax } => cmd_family(*dmax),
        Cmd::Product { a, b } => cmd_product(*a, *b),
        Cmd::Subadd { d, m, c2 } => cmd_subadd(*d, *m, *c2),
        Cmd::Search {
            d,
            bound,
            rational_too,
        } => cmd_search(*d, *bound, *rational_too, cfg),
        Cmd::Destab { d } => cmd_destab(*d),
        Cmd::Corollary17 => cmd_corollary17(),
        Cmd::Verify { d_max, budget } => cmd_verify(*d_max, *budget, cfg),
    }
}

/// Parses `argv`, dispatches, and writes output to stdout. Returns the
/// process exit code: 0 success, 1 usage error, 2 domain error.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return code;
        }
    };
    let cfg = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(cfg) => cfg,
            Err(msg) => {
                eprintln!("error: {msg}");
                return 1;
            }
        },
        None => Config::default(),
    };
    match execute(&cli, &cfg) {
        Ok(output) => {
            let format = cli.format.unwrap_or(output.default_format);
            match format {
                Format::Json => {
                    for record in &output.records {
                        println!("{record}");
                    }
                }
                Format::Csv => print!("{}", render_csv(&output.records)),
            }
            output.exit
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            1
        }
        Err(Failure::Domain(e)) => {
            println!("{}", error_json(&e));
            2
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_parsing() {
        let dir = std::env::temp_dir().join("bft-config-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("bft.conf");
        std::fs::write(&path, "# comment\nsearch.bound = 55\noracle.budget=123\nparallel.width = 2\n").unwrap();
        let cfg = Config::load(&path).unwrap();
        assert_eq!(cfg.search_bound, 55);
        assert_eq!(cfg.oracle_budget, 123);
        assert_eq!(cfg.parallel_width, Some(2));
        std::fs::write(&path, "nonsense line\n").unwrap();
        assert!(Config::load(&path).is_err());
    }

    #[test]
    fn csv_rendering() {
        let records = vec![
            json!({"d": 2, "beta": "1", "family": ""}),
            json!({"d": 3, "beta": "2/3", "family": "m2-k;m2+m+k"}),
        ];
        let csv = render_csv(&records);
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), "d,beta,family");
        assert_eq!(lines.next().unwrap(), "2,1,");
        assert_eq!(lines.next().unwrap(), "3,2/3,m2-k;m2+m+k");
    }

    #[test]
    fn error_json_shapes() {
        let e = DomainError::Threshold(ThresholdError::HypothesisFailed {
            deficit: BigInt::from(108),
            minimal_m: None,
        });
        let v = error_json(&e);
        assert_eq!(v["error"], "HypothesisFailed");
        assert_eq!(v["deficit"], "108");
    }
}
