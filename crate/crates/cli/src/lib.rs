//! Command-line front end: `compute`, `table`, `poly`, `hodge` and `verify`.
//!
//! Output is one JSON object per line by default, or CSV with `--format csv`.
//! Exit codes: 0 success, 1 an identity or cross-check failed, 2 invalid input
//! (including resource guards).

pub mod records;

use std::ffi::OsString;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use hurwitz_core::hurwitz::{
    factorization_count_bounded, factorization_normaliser, hurwitz_definition_with,
    odd_length_beta, one_part_completed3, one_part_ordinary, HurwitzQuery,
};
use hurwitz_core::polynomiality::{degree_bounds, hodge_integral, hurwitz_poly, HodgeIndex};
use hurwitz_core::verify::{self, Suite, VerifyConfig};
use hurwitz_core::{Error, Execution, Partition, Rational};
use serde::Serialize;

pub use records::{
    CheckRecord, ClassVectorJson, HodgeRecord, Method, MultiPolyJson, OutputRecord, PolyRecord,
    VerifySummary,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

/// Default degree limit for the character-sum route.
pub const DEFAULT_MAX_D_DEFINITION: u32 = 8;
/// Default degree limit for the class-algebra route.
pub const DEFAULT_MAX_D_FACTORIZATION: u32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "hurwitz",
    version,
    about = "Exact double Hurwitz numbers with completed cycles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute one double Hurwitz number H^{g,(r)}_{alpha,beta}.
    Compute(ComputeArgs),
    /// One-part numbers H^{g,(2)}_{(d),beta} for every odd-length beta of d.
    Table(TableArgs),
    /// The polynomial d H^{g,(2)}_{(d),beta} / s! in beta_1..beta_n.
    Poly(PolyArgs),
    /// A combinatorial Hodge integral <<tau_b1 .. tau_bn Lambda_2k>>_g.
    Hodge(HodgeArgs),
    /// Run the verification suites.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum PolyFormat {
    Json,
    Csv,
    Text,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// JSON lines, or CSV with columns
    /// command,r,g,alpha,beta,s,method,result,agreement,timing_ms (compute, table),
    /// g,b,k,admissible,result,timing_ms (hodge),
    /// suite,check,cases,passed,input,lhs,rhs (verify).
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Omit the timing field so identical runs print identical bytes.
    #[arg(long)]
    pub no_timing: bool,
    /// Run on the calling thread only.
    #[arg(long)]
    pub sequential: bool,
}

#[derive(Args, Debug, Clone)]
pub struct ComputeArgs {
    /// Completed cycles have size r+1.
    #[arg(long, default_value_t = 2)]
    pub r: u32,
    #[arg(long)]
    pub g: u32,
    /// Comma-separated parts, e.g. 3,1.
    #[arg(long)]
    pub alpha: String,
    #[arg(long)]
    pub beta: String,
    /// `both` pairs the character sum with the closed form when one exists,
    /// otherwise with the class-algebra count.
    #[arg(long, value_enum, default_value_t = Method::Definition)]
    pub method: Method,
    /// Largest degree accepted [default: 8 for definition, 5 for factorization].
    #[arg(long)]
    pub max_d: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct TableArgs {
    #[arg(long)]
    pub g: u32,
    #[arg(long)]
    pub d: u32,
    /// `closed` or `definition`.
    #[arg(long, value_enum, default_value_t = Method::Closed)]
    pub method: Method,
    #[arg(long)]
    pub max_d: Option<u32>,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct PolyArgs {
    #[arg(long)]
    pub g: u32,
    /// Number of parts; must be odd.
    #[arg(long)]
    pub n: usize,
    /// `csv` prints one `exponents,coeff` row per term, `text` a formula.
    #[arg(long, value_enum, default_value_t = PolyFormat::Json)]
    pub format: PolyFormat,
    #[arg(long)]
    pub no_timing: bool,
}

#[derive(Args, Debug, Clone)]
pub struct HodgeArgs {
    #[arg(long)]
    pub g: u32,
    /// Comma-separated non-negative indices b_1..b_n (n odd).
    #[arg(long)]
    pub b: String,
    #[arg(long, default_value_t = 0)]
    pub k: u32,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct VerifyArgs {
    /// lemmas, oracles, hodge, string-dilaton, degrees or all.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long, default_value_t = 8)]
    pub max_d: u32,
    #[arg(long, default_value_t = 2)]
    pub max_g: u32,
    #[command(flatten)]
    pub common: Common,
}

/// Result of one invocation: exit code and captured streams.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }
}

/// Failure inside a command, carrying whatever was already printed.
struct Failure {
    code: i32,
    message: String,
    stdout: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::IdentityFailed(_) => EXIT_FAILURE,
            _ => EXIT_INVALID,
        };
        Failure {
            code,
            message: e.to_string(),
            stdout: String::new(),
        }
    }
}

fn invalid(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_INVALID,
        message: message.into(),
        stdout: String::new(),
    }
}

type CmdResult = std::result::Result<String, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    let result = match cli.command {
        Command::Compute(a) => compute(&a),
        Command::Table(a) => table(&a),
        Command::Poly(a) => poly(&a),
        Command::Hodge(a) => hodge(&a),
        Command::Verify(a) => verify_cmd(&a),
    };
    match result {
        Ok(stdout) => Outcome::ok(stdout),
        Err(f) => Outcome {
            code: f.code,
            stdout: f.stdout,
            stderr: format!("error: {}\n", f.message),
        },
    }
}

fn exec(common: &Common) -> Execution {
    if common.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

fn elapsed_ms(start: Instant, no_timing: bool) -> Option<f64> {
    if no_timing {
        None
    } else {
        Some((start.elapsed().as_secs_f64() * 1e6).round() / 1e3)
    }
}

fn json_line<T: Serialize>(out: &mut String, value: &T) {
    out.push_str(&serde_json::to_string(value).expect("records serialize"));
    out.push('\n');
}

fn csv_text(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for row in rows {
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 output")
}

fn parse_partition(what: &str, text: &str) -> std::result::Result<Partition, Failure> {
    let p: Partition = text
        .parse()
        .map_err(|e: Error| invalid(format!("{what}: {e}")))?;
    if p.is_empty() {
        return Err(invalid(format!("{what}: partition must be nonempty")));
    }
    Ok(p)
}

/// Evaluates `q` by one route, enforcing the resource guards.
pub fn evaluate(
    q: &HurwitzQuery,
    method: Method,
    max_d: Option<u32>,
    exec: Execution,
) -> hurwitz_core::Result<Rational> {
    match method {
        Method::Definition => {
            let limit = max_d.unwrap_or(DEFAULT_MAX_D_DEFINITION);
            if q.d() > limit {
                return Err(Error::ResourceGuard {
                    d: q.d(),
                    limit,
                    method: "definition",
                });
            }
            hurwitz_definition_with(q, exec)
        }
        Method::Factorization => {
            let limit = max_d.unwrap_or(DEFAULT_MAX_D_FACTORIZATION);
            let count = factorization_count_bounded(q, limit)?;
            Ok(count / factorization_normaliser(q))
        }
        Method::Closed => {
            let beta = match (q.alpha().len(), q.beta().len()) {
                (1, _) => q.beta(),
                (_, 1) => q.alpha(),
                _ => {
                    return Err(Error::Ramification(format!(
                    "closed form needs a one-part partition on one side, got alpha=({}) beta=({})",
                    q.alpha(),
                    q.beta()
                )))
                }
            };
            match q.r() {
                1 => one_part_ordinary(q.g(), beta),
                2 => one_part_completed3(q.g(), beta),
                r => Err(Error::OutOfRange {
                    what: "r for the closed form",
                    value: r as i64,
                    allowed: "1 or 2".into(),
                }),
            }
        }
        Method::Both => unreachable!("expanded by compute_record"),
    }
}

fn closed_available(q: &HurwitzQuery) -> bool {
    let one_part = if q.alpha().len() == 1 {
        q.beta()
    } else {
        q.alpha()
    };
    q.is_one_part() && (q.r() == 1 || (q.r() == 2 && one_part.len() % 2 == 1))
}

/// Builds the record for one query; `Both` reports the two values and whether
/// they agree.
pub fn compute_record(
    command: &str,
    q: &HurwitzQuery,
    method: Method,
    max_d: Option<u32>,
    exec: Execution,
    no_timing: bool,
) -> hurwitz_core::Result<OutputRecord> {
    let start = Instant::now();
    let (result, results, agreement) = if method == Method::Both {
        let second = if closed_available(q) {
            Method::Closed
        } else {
            Method::Factorization
        };
        let a = evaluate(q, Method::Definition, max_d, exec)?;
        let b = evaluate(q, second, max_d, exec)?;
        let agree = a == b;
        let map = [(Method::Definition, a.to_string()), (second, b.to_string())]
            .into_iter()
            .collect();
        (a.to_string(), Some(map), Some(agree))
    } else {
        (evaluate(q, method, max_d, exec)?.to_string(), None, None)
    };
    Ok(OutputRecord {
        command: command.into(),
        r: q.r(),
        g: q.g(),
        alpha: q.alpha().to_string(),
        beta: q.beta().to_string(),
        s: q.s(),
        method,
        result,
        results,
        agreement,
        timing_ms: elapsed_ms(start, no_timing),
    })
}

fn emit_records(records: &[OutputRecord], format: Format) -> String {
    match format {
        Format::Json => {
            let mut out = String::new();
            for r in records {
                json_line(&mut out, r);
            }
            out
        }
        Format::Csv => csv_text(
            &OutputRecord::CSV_HEADER,
            records.iter().map(OutputRecord::csv_row),
        ),
    }
}

fn compute(a: &ComputeArgs) -> CmdResult {
    let alpha = parse_partition("alpha", &a.alpha)?;
    let beta = parse_partition("beta", &a.beta)?;
    if a.method == Method::Closed && a.r == 2 {
        match (alpha.len(), beta.len()) {
            (1, _) => odd_length_beta(&beta)?,
            (_, 1) => odd_length_beta(&alpha)?,
            _ => 0,
        };
    }
    let q = HurwitzQuery::new(a.r, a.g, alpha, beta)?;
    let record = compute_record(
        "compute",
        &q,
        a.method,
        a.max_d,
        exec(&a.common),
        a.common.no_timing,
    )?;
    let stdout = emit_records(std::slice::from_ref(&record), a.common.format);
    if record.agreement == Some(false) {
        return Err(Failure {
            code: EXIT_FAILURE,
            message: format!(
                "methods disagree for r={} g={} alpha=({}) beta=({}): {:?}",
                record.r, record.g, record.alpha, record.beta, record.results
            ),
            stdout,
        });
    }
    Ok(stdout)
}

fn table(a: &TableArgs) -> CmdResult {
    if a.d == 0 {
        return Err(invalid("d must be at least 1"));
    }
    if !matches!(a.method, Method::Closed | Method::Definition) {
        return Err(invalid("table supports --method closed or definition"));
    }
    let betas: Vec<Partition> = hurwitz_core::partitions::partitions_of(a.d)
        .into_iter()
        .filter(|b| b.len() % 2 == 1)
        .collect();
    let queries = betas
        .into_iter()
        .map(|b| HurwitzQuery::new(2, a.g, Partition::single(a.d), b))
        .collect::<hurwitz_core::Result<Vec<_>>>()?;
    let exec = exec(&a.common);
    let records = hurwitz_core::par::try_map(exec, &queries, |q| {
        compute_record(
            "table",
            q,
            a.method,
            a.max_d,
            Execution::Sequential,
            a.common.no_timing,
        )
    })?;
    Ok(emit_records(&records, a.common.format))
}

fn poly(a: &PolyArgs) -> CmdResult {
    let start = Instant::now();
    let p = hurwitz_poly(a.g, a.n)?;
    let (lo, hi) = degree_bounds(a.g, a.n)?;
    let json = MultiPolyJson::from(p.as_ref());
    Ok(match a.format {
        PolyFormat::Text => format!("{p}\n"),
        PolyFormat::Csv => {
            let header: Vec<String> = (1..=a.n)
                .map(|i| format!("b{i}"))
                .chain(["coeff".to_string()])
                .collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            csv_text(
                &header,
                json.terms.iter().map(|t| {
                    t.exp
                        .iter()
                        .map(u32::to_string)
                        .chain([t.coeff.clone()])
                        .collect()
                }),
            )
        }
        PolyFormat::Json => {
            let mut out = String::new();
            json_line(
                &mut out,
                &PolyRecord {
                    command: "poly".into(),
                    g: a.g,
                    n: a.n,
                    lowest_degree: lo,
                    highest_degree: hi,
                    poly: json,
                    timing_ms: elapsed_ms(start, a.no_timing),
                },
            );
            out
        }
    })
}

fn parse_indices(text: &str) -> std::result::Result<Vec<u32>, Failure> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| invalid(format!("b: cannot parse index {t:?} in {text:?}")))
        })
        .collect()
}

fn hodge(a: &HodgeArgs) -> CmdResult {
    let start = Instant::now();
    let idx = HodgeIndex::new(a.g, parse_indices(&a.b)?, a.k)?;
    let value = hodge_integral(&idx)?;
    let record = HodgeRecord {
        command: "hodge".into(),
        g: a.g,
        admissible: idx.is_admissible(),
        b: idx.b,
        k: a.k,
        result: value.to_string(),
        timing_ms: elapsed_ms(start, a.common.no_timing),
    };
    Ok(match a.common.format {
        Format::Json => {
            let mut out = String::new();
            json_line(&mut out, &record);
            out
        }
        Format::Csv => csv_text(&HodgeRecord::CSV_HEADER, [record.csv_row()]),
    })
}

fn verify_cmd(a: &VerifyArgs) -> CmdResult {
    let start = Instant::now();
    let suite: Suite = a.suite.parse()?;
    let cfg = VerifyConfig {
        max_d: a.max_d,
        max_g: a.max_g,
        exec: exec(&a.common),
    };
    let report = verify::run(suite, &cfg).map_err(|e| Failure {
        code: EXIT_FAILURE,
        message: format!("verification aborted: {e}"),
        stdout: String::new(),
    })?;
    let checks: Vec<CheckRecord> = report.checks.iter().map(CheckRecord::from).collect();
    let stdout = match a.common.format {
        Format::Json => {
            let mut out = String::new();
            for c in &checks {
                json_line(&mut out, c);
            }
            json_line(
                &mut out,
                &VerifySummary {
                    command: "verify".into(),
                    suite: suite.to_string(),
                    max_d: a.max_d,
                    max_g: a.max_g,
                    checks: checks.len(),
                    cases: report.total_cases(),
                    passed: report.passed(),
                    timing_ms: elapsed_ms(start, a.common.no_timing),
                },
            );
            out
        }
        Format::Csv => csv_text(
            &CheckRecord::CSV_HEADER,
            checks.iter().map(CheckRecord::csv_row),
        ),
    };
    match report.first_failure() {
        None => Ok(stdout),
        Some(c) => {
            let x = c
                .counterexample
                .as_ref()
                .expect("failed checks carry a counterexample");
            Err(Failure {
                code: EXIT_FAILURE,
                message: format!(
                    "{} / {} failed ({}): at {}: lhs = {}, rhs = {}",
                    c.suite, c.name, c.statement, x.input, x.lhs, x.rhs
                ),
                stdout,
            })
        }
    }
}
