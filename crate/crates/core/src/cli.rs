//! Command-line front end: `eval`, `constants`, `estimate`, `verify`.
//!
//! Every invocation writes one JSON object to stdout (or CSV for
//! `verify --format csv`). Exit codes: 0 success, 1 domain error or failed
//! verification, 2 usage error.

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{Map, Number, Value};

use crate::asymptotics::{assemble_constants, estimate_constant};
use crate::error::Error;
use crate::euler_family::{self, FamilyKind, Parameters};
use crate::identities::{
    derivation_chain_check, verify_grid, Identity, VerificationReport, CHAIN_TOLERANCE,
};
use crate::special_core::{gamma, gamma_log_value, LogValue};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "euler-factorials",
    version,
    about = "Euler's generalized factorials, their asymptotic constants, and Gamma identity checks"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate Γ or one of the families Γ_E, Δ, Θ at a real argument.
    Eval(EvalArgs),
    /// Closed-form constants A, B, C, k and the residuals of their relations.
    Constants(ParamArgs),
    /// Recover a growth constant from the exact n-term product.
    Estimate(EstimateArgs),
    /// Check an identity on a grid (or the derivation chain for one (a, b)).
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EvalFunc {
    Gamma,
    #[value(name = "gammaE")]
    GammaE,
    Delta,
    Theta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyArg {
    #[value(name = "gammaE")]
    GammaE,
    Delta,
    Theta,
}

impl From<FamilyArg> for FamilyKind {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::GammaE => FamilyKind::GammaE,
            FamilyArg::Delta => FamilyKind::Delta,
            FamilyArg::Theta => FamilyKind::Theta,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IdentityArg {
    Duplication,
    Multiplication,
    Chain,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(value_enum)]
    func: EvalFunc,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    x: f64,
    /// Print sign and natural log of the magnitude instead of the value.
    #[arg(long = "log")]
    log_scale: bool,
}

#[derive(Debug, Args)]
struct ParamArgs {
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
}

#[derive(Debug, Args)]
struct EstimateArgs {
    #[arg(value_enum)]
    func: FamilyArg,
    #[arg(long, allow_negative_numbers = true)]
    a: f64,
    #[arg(long, allow_negative_numbers = true)]
    b: f64,
    #[arg(long)]
    n: u64,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    identity: IdentityArg,
    /// Order of the multiplication formula (2..=12).
    #[arg(long)]
    n: Option<u32>,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long = "x-min", allow_negative_numbers = true)]
    x_min: Option<f64>,
    #[arg(long = "x-max", allow_negative_numbers = true)]
    x_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

/// One machine-readable result, serialized as the JSON output of a command.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub outputs: Map<String, Value>,
    pub status: Status,
    pub message: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Error,
}

impl OutputRecord {
    fn new(command: &str) -> Self {
        OutputRecord {
            command: command.to_string(),
            inputs: Map::new(),
            outputs: Map::new(),
            status: Status::Ok,
            message: None,
        }
    }

    fn input(&mut self, name: &str, value: Value) -> &mut Self {
        self.inputs.insert(name.to_string(), value);
        self
    }

    fn output(&mut self, name: &str, value: Value) -> &mut Self {
        self.outputs.insert(name.to_string(), value);
        self
    }

    fn fail(&mut self, message: impl Into<String>) {
        self.status = Status::Error;
        self.message = Some(message.into());
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("output record serializes")
    }
}

/// What a command printed and how it exited.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: i32,
}

/// 17 significant digits in scientific notation; non-finite values become `null`.
pub fn format_number(v: f64) -> String {
    let s = format!("{v:.16e}");
    match s.split_once('e') {
        Some((mantissa, exp)) if !exp.starts_with('-') => format!("{mantissa}e+{exp}"),
        _ => s,
    }
}

fn num(v: f64) -> Value {
    if v.is_finite() {
        // arbitrary_precision keeps the digits exactly as written
        Value::Number(
            format_number(v)
                .parse::<Number>()
                .expect("formatted float is a JSON number"),
        )
    } else {
        Value::Null
    }
}

fn opt_num(v: Option<f64>) -> Value {
    v.map_or(Value::Null, num)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::Argument(_) => EXIT_USAGE,
        Error::Domain(_) | Error::Pole(_) | Error::Consistency(_) => EXIT_FAILURE,
    }
}

struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        Failure {
            code: exit_code_for(&err),
            message: err.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn require<T>(value: Option<T>, flag: &str, context: &str) -> Result<T, Failure> {
    value.ok_or_else(|| usage(format!("--{flag} is required for {context}")))
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
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    stdout: e.to_string(),
                    stderr: String::new(),
                    exit_code: EXIT_OK,
                };
            }
            let mut record = OutputRecord::new("usage");
            let rendered = e.to_string();
            let first_line = rendered.lines().next().unwrap_or("usage error").to_string();
            record.fail(first_line);
            return Outcome {
                stdout: record.to_json() + "\n",
                stderr: rendered,
                exit_code: EXIT_USAGE,
            };
        }
    };

    let (record, exit_code, csv_body) = match cli.command {
        Command::Eval(args) => with_no_csv(eval(&args)),
        Command::Constants(args) => with_no_csv(constants(&args)),
        Command::Estimate(args) => with_no_csv(estimate(&args)),
        Command::Verify(args) => verify(&args),
    };
    let stderr = match &record.message {
        Some(m) => format!("error: {m}\n"),
        None => String::new(),
    };
    let stdout = match csv_body {
        Some(body) => body,
        None => record.to_json() + "\n",
    };
    Outcome {
        stdout,
        stderr,
        exit_code,
    }
}

fn with_no_csv((record, code): (OutputRecord, i32)) -> (OutputRecord, i32, Option<String>) {
    (record, code, None)
}

fn finish(mut record: OutputRecord, result: Result<(), Failure>) -> (OutputRecord, i32) {
    match result {
        Ok(()) => (record, EXIT_OK),
        Err(f) => {
            record.fail(f.message);
            (record, f.code)
        }
    }
}

fn log_value_outputs(record: &mut OutputRecord, v: LogValue) {
    record
        .output("sign", Value::from(v.sign))
        .output("log_abs", num(v.log_abs));
}

fn eval(args: &EvalArgs) -> (OutputRecord, i32) {
    let func = match args.func {
        EvalFunc::Gamma => "gamma",
        EvalFunc::GammaE => "gammaE",
        EvalFunc::Delta => "delta",
        EvalFunc::Theta => "theta",
    };
    let mut record = OutputRecord::new("eval");
    record.input("func", Value::from(func));
    if args.func != EvalFunc::Gamma {
        record
            .input("a", opt_num(args.a))
            .input("b", opt_num(args.b));
    }
    record
        .input("x", num(args.x))
        .input("log", Value::from(args.log_scale));

    let result = (|| {
        let value = match args.func {
            EvalFunc::Gamma => gamma_log_value(args.x)?,
            family => {
                let kind = match family {
                    EvalFunc::GammaE => FamilyKind::GammaE,
                    EvalFunc::Delta => FamilyKind::Delta,
                    _ => FamilyKind::Theta,
                };
                let a = require(args.a, "a", func)?;
                let b = require(args.b, "b", func)?;
                euler_family::evaluate(kind, Parameters::new(a, b)?, args.x)?
            }
        };
        if args.log_scale {
            log_value_outputs(&mut record, value);
            return Ok(());
        }
        let linear = match args.func {
            EvalFunc::Gamma => gamma(args.x).ok().filter(|v| v.is_finite()),
            _ => value.to_finite_f64(),
        };
        match linear {
            Some(v) => {
                record.output("value", num(v));
            }
            None => {
                record
                    .output("value", Value::Null)
                    .output("overflow", Value::from(true));
                log_value_outputs(&mut record, value);
            }
        }
        Ok(())
    })();
    finish(record, result)
}

fn constants(args: &ParamArgs) -> (OutputRecord, i32) {
    let mut record = OutputRecord::new("constants");
    record.input("a", num(args.a)).input("b", num(args.b));
    let result = (|| {
        let c = assemble_constants(Parameters::new(args.a, args.b)?)?;
        record
            .output("A", num(c.a))
            .output("B", num(c.b))
            .output("C", num(c.c))
            .output("k", num(c.k))
            .output(
                "residual_A_eq_BC_over_sqrt_e",
                num(c.product_relation_residual()),
            )
            .output("residual_B_eq_Ck_sqrt_e", num(c.bridge_relation_residual()))
            .output(
                "residual_A_eq_B2_over_ek",
                num(c.squared_relation_residual()),
            );
        Ok(())
    })();
    finish(record, result)
}

fn estimate(args: &EstimateArgs) -> (OutputRecord, i32) {
    let kind = FamilyKind::from(args.func);
    let mut record = OutputRecord::new("estimate");
    record
        .input("func", Value::from(kind.name()))
        .input("a", num(args.a))
        .input("b", num(args.b))
        .input("n", Value::from(args.n));
    let result = (|| {
        let e = estimate_constant(kind, Parameters::new(args.a, args.b)?, args.n)?;
        record
            .output("n_used", Value::from(e.n_used))
            .output("estimate", num(e.estimate))
            .output("closed_form", num(e.closed_form))
            .output("relative_error", num(e.relative_error));
        Ok(())
    })();
    finish(record, result)
}

fn report_outputs(record: &mut OutputRecord, report: &VerificationReport) {
    record
        .output("identity_name", Value::from(report.identity_name.clone()))
        .output(
            "grid",
            Value::Array(report.grid.iter().map(|&x| num(x)).collect()),
        )
        .output(
            "residuals",
            Value::Array(report.residuals.iter().map(|&r| num(r)).collect()),
        )
        .output("max_residual", num(report.max_residual))
        .output("mean_residual", num(report.mean_residual))
        .output("tolerance", num(report.tolerance))
        .output("passed", Value::from(report.passed));
}

/// CSV body with columns `x,residual`, numbers formatted as in the JSON output.
pub fn report_csv(report: &VerificationReport) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["x", "residual"]).expect("in-memory write");
    for (x, r) in report.grid.iter().zip(&report.residuals) {
        w.write_record([format_number(*x), format_number(*r)])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ASCII output")
}

fn verify(args: &VerifyArgs) -> (OutputRecord, i32, Option<String>) {
    let identity_name = match args.identity {
        IdentityArg::Duplication => "duplication",
        IdentityArg::Multiplication => "multiplication",
        IdentityArg::Chain => "chain",
    };
    let mut record = OutputRecord::new("verify");
    record.input("identity", Value::from(identity_name));
    if let Some(n) = args.n {
        record.input("n", Value::from(n));
    }
    for (name, v) in [
        ("a", args.a),
        ("b", args.b),
        ("x_min", args.x_min),
        ("x_max", args.x_max),
    ] {
        if let Some(v) = v {
            record.input(name, num(v));
        }
    }
    if let Some(steps) = args.steps {
        record.input("steps", Value::from(steps));
    }
    if let Some(t) = args.tolerance {
        record.input("tolerance", num(t));
    }
    record.input(
        "format",
        Value::from(match args.format {
            Format::Json => "json",
            Format::Csv => "csv",
        }),
    );

    let result: Result<VerificationReport, Failure> = (|| {
        if let Some(t) = args.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(usage(format!(
                    "--tolerance must be finite and >= 0, got {t}"
                )));
            }
        }
        match args.identity {
            IdentityArg::Chain => {
                let a = require(args.a, "a", "chain")?;
                let b = require(args.b, "b", "chain")?;
                let report = derivation_chain_check(Parameters::new(a, b)?)?;
                let tolerance = args.tolerance.unwrap_or(CHAIN_TOLERANCE);
                Ok(VerificationReport::new(
                    report.identity_name,
                    report.grid,
                    report.residuals,
                    tolerance,
                ))
            }
            grid_identity => {
                let identity = if grid_identity == IdentityArg::Multiplication {
                    Identity::Multiplication(require(args.n, "n", "multiplication")?)
                } else {
                    Identity::Duplication
                };
                let x_min = require(args.x_min, "x-min", identity_name)?;
                let x_max = require(args.x_max, "x-max", identity_name)?;
                let steps = require(args.steps, "steps", identity_name)?;
                let tolerance = args.tolerance.unwrap_or(identity.default_tolerance());
                Ok(verify_grid(identity, x_min, x_max, steps, tolerance)?)
            }
        }
    })();

    match result {
        Ok(report) => {
            report_outputs(&mut record, &report);
            let csv = (args.format == Format::Csv).then(|| report_csv(&report));
            if !report.passed {
                record.fail(format!(
                    "verification failed: max residual {} exceeds tolerance {}",
                    format_number(report.max_residual),
                    format_number(report.tolerance)
                ));
                return (record, EXIT_FAILURE, csv);
            }
            (record, EXIT_OK, csv)
        }
        Err(f) => {
            record.fail(f.message);
            (record, f.code, None)
        }
    }
}
