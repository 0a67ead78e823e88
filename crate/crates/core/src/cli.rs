//! `cayley-hit` command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 mathematically infeasible request (unreachable target, singular system,
//! fully truncated simulation).

use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::bench;
use crate::circulant::CirculantWalk;
use crate::decimal::{to_significant, DEFAULT_SIGNIFICANT_DIGITS};
use crate::error::Error;
use crate::hitting::{evaluate, Method};
use crate::montecarlo::{simulate, SimConfig, DEFAULT_MAX_STEPS};
use crate::verify::{closedforms_suite, identities_suite, inverse_suite, SuiteReport, MIN_N_MAX};
use crate::Rational;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INFEASIBLE: i32 = 3;

/// Fixed CSV header for `hit --format csv`.
pub const CSV_HEADER: [&str; 8] = ["N", "steps", "method", "l", "num", "den", "approx", "runtime_ms"];

#[derive(Debug, Parser)]
#[command(name = "cayley-hit", version, about = "Exact hitting times of random walks on circulant digraphs")]
pub struct Cli {
    /// Worker threads (default: all cores). Output does not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Hitting times h(0, l) from vertex 0.
    Hit(HitArgs),
    /// Run the property suites.
    Verify(VerifyArgs),
    /// Monte-Carlo estimate of h(0, l).
    Simulate(SimulateArgs),
    /// Time closed forms against the exact solve on {+1,+2}.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Oracle,
    Rowsum,
    Corrected,
    Printed,
    Fibonacci,
}

impl From<MethodArg> for Method {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Oracle => Method::Oracle,
            MethodArg::Rowsum => Method::RowSum,
            MethodArg::Corrected => Method::Corrected,
            MethodArg::Printed => Method::Printed,
            MethodArg::Fibonacci => Method::Fibonacci,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Inverse,
    Identities,
    Closedforms,
    All,
}

#[derive(Debug, Args)]
pub struct HitArgs {
    /// Modulus N.
    #[arg(long = "n")]
    pub n: usize,
    /// Comma-separated step multiset, e.g. 1,2 or 1,2,-1,-2.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub steps: Vec<i64>,
    /// Target vertex.
    #[arg(long = "l", conflicts_with = "all", required_unless_present = "all")]
    pub l: Option<usize>,
    /// Every target 1..N-1.
    #[arg(long)]
    pub all: bool,
    #[arg(long, value_enum, default_value = "oracle")]
    pub method: MethodArg,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Significant digits of the decimal approximation.
    #[arg(long, default_value_t = DEFAULT_SIGNIFICANT_DIGITS, value_parser = clap::builder::RangedU64ValueParser::<usize>::new().range(1..))]
    pub precision: usize,
    /// Fill in runtime_ms (makes output run-dependent).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "n-max")]
    pub n_max: usize,
    #[arg(long, value_enum, default_value = "all")]
    pub suite: Suite,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long = "n")]
    pub n: usize,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
    pub steps: Vec<i64>,
    #[arg(long = "l")]
    pub l: usize,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub trials: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "max-steps", default_value_t = DEFAULT_MAX_STEPS)]
    pub max_steps: u64,
    /// Also solve exactly and report the z-score.
    #[arg(long = "compare-exact")]
    pub compare_exact: bool,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long = "n-list", value_delimiter = ',', required = true)]
    pub n_list: Vec<usize>,
    #[arg(long, value_delimiter = ',', value_enum, default_value = "corrected,oracle")]
    pub methods: Vec<MethodArg>,
    /// Report the fastest of this many runs.
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Fraction {
    pub num: String,
    pub den: String,
}

impl From<&Rational> for Fraction {
    fn from(r: &Rational) -> Self {
        Self {
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OutputRecord {
    #[serde(rename = "N")]
    pub n: usize,
    pub steps: Vec<usize>,
    pub method: String,
    pub l: usize,
    pub value: Fraction,
    pub value_approx: String,
    pub runtime_ms: Option<f64>,
}

#[derive(Debug, Clone, Serialize)]
struct SimulateRecord {
    #[serde(rename = "N")]
    n: usize,
    steps: Vec<usize>,
    l: usize,
    trials: u64,
    seed: u64,
    mean: f64,
    variance: f64,
    stderr: f64,
    truncated_trials: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact: Option<Fraction>,
    #[serde(skip_serializing_if = "Option::is_none")]
    z: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unreachable { .. } | Error::Singular { .. } | Error::Truncated { .. } => {
                EXIT_INFEASIBLE
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_VERIFY_FAILED,
            message: format!("write failed: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// records to `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };

    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        pool = pool.num_threads(t);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_USAGE;
        }
    };

    // Commands write into a buffer so the worker pool never touches `out`.
    let (result, buffer) = pool.install(|| {
        let mut buf = Vec::new();
        let result = match &cli.command {
            Command::Hit(a) => cmd_hit(a, &mut buf),
            Command::Verify(a) => cmd_verify(a, &mut buf),
            Command::Simulate(a) => cmd_simulate(a, &mut buf),
            Command::Bench(a) => cmd_bench(a, &mut buf),
        };
        (result, buf)
    });
    if let Err(e) = out.write_all(&buffer).and_then(|_| out.flush()) {
        let _ = writeln!(err, "error: write failed: {e}");
        return EXIT_VERIFY_FAILED;
    }
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn cmd_hit(args: &HitArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let walk = CirculantWalk::new(args.n, &args.steps)?;
    let method = Method::from(args.method);
    let targets: Vec<usize> = match args.l {
        Some(l) if l == 0 || l >= args.n => {
            return Err(usage(format!("--l must lie in 1..={}, got {l}", args.n - 1)))
        }
        Some(l) => vec![l],
        None => (1..args.n).collect(),
    };

    let start = Instant::now();
    let result = evaluate(&walk, method)?;
    let runtime_ms = args.timing.then(|| start.elapsed().as_secs_f64() * 1e3);

    let records = targets.into_iter().map(|l| {
        let value = &result.values[l - 1];
        OutputRecord {
            n: walk.modulus(),
            steps: walk.steps().to_vec(),
            method: method.name().to_string(),
            l,
            value: value.into(),
            value_approx: to_significant(value, args.precision),
            runtime_ms,
        }
    });

    match args.format {
        Format::Json => {
            for record in records {
                let line = serde_json::to_string(&record).map_err(|e| usage(e.to_string()))?;
                writeln!(out, "{line}")?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            let csv_err = |e: csv::Error| usage(e.to_string());
            w.write_record(CSV_HEADER).map_err(csv_err)?;
            for r in records {
                let steps: Vec<String> = r.steps.iter().map(usize::to_string).collect();
                w.write_record([
                    r.n.to_string(),
                    steps.join(","),
                    r.method,
                    r.l.to_string(),
                    r.value.num,
                    r.value.den,
                    r.value_approx,
                    r.runtime_ms.map(|t| format!("{t:.3}")).unwrap_or_default(),
                ])
                .map_err(csv_err)?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn print_report(report: &SuiteReport, out: &mut dyn Write) -> std::io::Result<()> {
    for line in &report.details {
        writeln!(out, "{line}")?;
    }
    writeln!(out, "{}", report.summary())
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if args.n_max < MIN_N_MAX {
        return Err(usage(format!(
            "--n-max must be at least {MIN_N_MAX}, got {}",
            args.n_max
        )));
    }
    let suites: &[Suite] = match args.suite {
        Suite::All => &[Suite::Inverse, Suite::Identities, Suite::Closedforms],
        ref one => std::slice::from_ref(one),
    };
    let mut ok = true;
    for suite in suites {
        let report = match suite {
            Suite::Inverse => inverse_suite(args.n_max)?,
            Suite::Identities => identities_suite(args.n_max)?,
            Suite::Closedforms => closedforms_suite(args.n_max)?,
            Suite::All => unreachable!(),
        };
        print_report(&report, out)?;
        ok &= report.all_passed();
    }
    Ok(if ok { EXIT_OK } else { EXIT_VERIFY_FAILED })
}

fn cmd_simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let walk = CirculantWalk::new(args.n, &args.steps)?;
    let config = SimConfig::new(walk.clone(), args.l, args.trials, args.seed)
        .with_max_steps(args.max_steps);
    let stats = simulate(&config)?;

    let mut record = SimulateRecord {
        n: walk.modulus(),
        steps: walk.steps().to_vec(),
        l: args.l,
        trials: stats.trials,
        seed: args.seed,
        mean: stats.mean,
        variance: stats.variance,
        stderr: stats.stderr,
        truncated_trials: stats.truncated_trials,
        exact: None,
        z: None,
        verdict: None,
    };
    let fully_truncated = stats.truncated_trials == stats.trials;
    if args.compare_exact && !fully_truncated {
        let exact = evaluate(&walk, Method::Oracle)?.values[args.l - 1].clone();
        let cmp = stats.compare(&exact)?;
        record.exact = Some((&exact).into());
        record.z = Some(cmp.z());
        record.verdict = Some(if cmp.is_consistent() {
            "consistent"
        } else {
            "inconsistent"
        });
    }
    let line = serde_json::to_string(&record).map_err(|e| usage(e.to_string()))?;
    writeln!(out, "{line}")?;
    if fully_truncated {
        return Err(Error::Truncated {
            truncated: stats.truncated_trials,
            trials: stats.trials,
        }
        .into());
    }
    Ok(EXIT_OK)
}

fn cmd_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if let Some(bad) = args.n_list.iter().find(|&&n| n < 3) {
        return Err(usage(format!("--n-list values must be at least 3, got {bad}")));
    }
    let methods: Vec<Method> = args.methods.iter().map(|&m| Method::from(m)).collect();
    if methods.contains(&Method::Fibonacci) {
        return Err(usage("fibonacci cannot be benchmarked on {+1,+2}"));
    }
    let rows = bench::run(&args.n_list, &methods, args.repeats)?;
    writeln!(out, "N,method,runtime_ms")?;
    for row in rows {
        writeln!(
            out,
            "{},{},{:.3}",
            row.modulus,
            row.method,
            row.elapsed.as_secs_f64() * 1e3
        )?;
    }
    Ok(EXIT_OK)
}
