//! Command dispatch for the `vvmf` binary.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use vvmf_core::{
    duality_report, t_eigenphases, t_order, validate, CheckOutcome, DimResult, DimStatus, Error,
    FormKind, GeneratorProfile, HilbertSeries, ModularRepresentation, RepAnalysis, Settings,
    Tolerance,
};

use crate::catalog::{self, CatalogError};
use crate::repfile::{Encoding, RepFile, RepFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "vvmf", version, about = "Dimensions of vector-valued modular forms")]
pub struct Cli {
    /// Snapping tolerance for floating point comparisons.
    #[arg(long, global = true, env = "VVMF_TOLERANCE", default_value_t = Tolerance::DEFAULT_EPS)]
    pub tolerance: f64,
    /// Largest order of ρ(T) searched for.
    #[arg(long, global = true, env = "VVMF_ORDER_CAP", default_value_t = 4096)]
    pub order_cap: usize,
    /// Largest image group enumerated.
    #[arg(long, global = true, env = "VVMF_CLOSURE_CAP", default_value_t = 20000)]
    pub closure_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Source {
    /// A representation file, or `catalog:EXPR` such as `catalog:rho0+kappa^2`.
    pub source: String,
    /// Print JSON instead of text.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the SL(2,Z) relations and enumerate the image group.
    Validate(Source),
    /// Print the invariants of a representation.
    Info(Source),
    /// Tabulate dim M_w and dim S_w over a weight range.
    Dims {
        #[command(flatten)]
        source: Source,
        #[arg(long, allow_negative_numbers = true)]
        from: i64,
        #[arg(long, allow_negative_numbers = true)]
        to: i64,
    },
    /// Weights of free generators and the Hilbert series numerator.
    Generators {
        #[command(flatten)]
        source: Source,
        /// Cusp forms instead of holomorphic forms.
        #[arg(long)]
        cusp: bool,
    },
    /// Check the duality identities between ρ and its contragredient.
    Duality {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 3)]
        nmax: u32,
    },
    /// Catalog of built-in representations.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Write a representation as a file.
    Export {
        source: String,
        #[arg(long, value_enum, default_value_t = EncodingArg::Complex)]
        encoding: EncodingArg,
        /// Output path (stdout when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CatalogAction {
    List,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum EncodingArg {
    Complex,
    Cyclotomic,
}

#[derive(Debug)]
pub enum CliError {
    /// Bad invocation: exit code 1.
    Usage(String),
    /// Unparsable or invalid representation, or a failed computation: exit code 2.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failure(e.to_string())
    }
}

impl From<RepFileError> for CliError {
    fn from(e: RepFileError) -> Self {
        match e {
            RepFileError::Io { .. } => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

impl From<CatalogError> for CliError {
    fn from(e: CatalogError) -> Self {
        match e {
            CatalogError::Core(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(&cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", e.message());
            e.exit_code()
        }
    }
}

fn settings(cli: &Cli) -> Result<Settings, CliError> {
    let tol = Tolerance::new(cli.tolerance).map_err(|e| CliError::Usage(e.to_string()))?;
    if cli.order_cap == 0 || cli.closure_cap == 0 {
        return Err(CliError::Usage("caps must be positive".into()));
    }
    Ok(Settings { tol, order_cap: cli.order_cap, closure_cap: cli.closure_cap })
}

/// Loads a representation from `catalog:EXPR` or a file and checks the group relations.
pub fn load(source: &str, settings: &Settings) -> Result<ModularRepresentation, CliError> {
    let rep = match source.strip_prefix("catalog:") {
        Some(expr) => catalog::evaluate(expr, settings)?,
        None => {
            let path = Path::new(source);
            let stem = path.file_stem().map_or("rep".into(), |s| s.to_string_lossy().into_owned());
            RepFile::read(path)?.to_rep(&stem)?
        }
    };
    validate(&rep, settings.tol, settings.order_cap, None)?;
    Ok(rep)
}

fn execute(cli: &Cli) -> Result<String, CliError> {
    let settings = settings(cli)?;
    match &cli.command {
        Command::Validate(src) => cmd_validate(src, &settings),
        Command::Info(src) => cmd_info(src, &settings),
        Command::Dims { source, from, to } => cmd_dims(source, *from, *to, &settings),
        Command::Generators { source, cusp } => cmd_generators(source, *cusp, &settings),
        Command::Duality { source, nmax } => cmd_duality(source, *nmax, &settings),
        Command::Catalog { action: CatalogAction::List } => Ok(cmd_catalog()),
        Command::Export { source, encoding, output } => {
            cmd_export(source, *encoding, output.as_deref(), &settings)
        }
    }
}

fn to_json(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json output");
    s.push('\n');
    s
}

fn cmd_validate(src: &Source, settings: &Settings) -> Result<String, CliError> {
    let rep = load(&src.source, settings)?;
    let report = validate(&rep, settings.tol, settings.order_cap, Some(settings.closure_cap))?;
    let order = report.t_order.unwrap_or(0);
    let size = report.group_size.unwrap_or(0);
    if src.json {
        return Ok(to_json(&json!({
            "rep": rep.name(),
            "degree": rep.degree(),
            "relations_ok": report.relations_ok,
            "t_order": order,
            "group_size": size,
            "max_residual": report.max_residual,
        })));
    }
    Ok(format!(
        "{}: degree {}\nrelations: ok (max residual {:.1e})\norder of T: {}\nimage group order: {}\n",
        rep.name(),
        rep.degree(),
        report.max_residual,
        order,
        size
    ))
}

fn cmd_info(src: &Source, settings: &Settings) -> Result<String, CliError> {
    let rep = load(&src.source, settings)?;
    let order = t_order(&rep, settings.tol, settings.order_cap)?;
    let phases: Vec<String> = t_eigenphases(&rep, settings)?.iter().map(|p| p.to_string()).collect();
    let a = RepAnalysis::new(&rep, settings)?;
    let ks: Vec<i64> = (-6..=11).collect();

    let even = a.even_invariants().map(|e| {
        json!({
            "degree": e.sig.d,
            "alpha": e.sig.alpha,
            "beta1": e.sig.beta1,
            "beta2": e.sig.beta2,
            "trace_lambda": e.exp.trace_lambda.to_string(),
            "lambda_plus": e.lambda_plus,
            "lambda_minus": e.lambda_minus,
            "h0": e.h0,
            "gamma": ks.iter().map(|&k| json!({"k": k, "value": e.gamma(k)})).collect::<Vec<_>>(),
        })
    });
    let odd = a.odd_invariants().map(|o| {
        json!({
            "degree": o.dot_sig.d,
            "alpha": o.dot_sig.alpha,
            "beta1": o.dot_sig.beta1,
            "beta2": o.dot_sig.beta2,
            "trace_lambda": o.dot_exp.trace_lambda.to_string(),
            "lambda_plus": o.dot_lambda_plus,
            "lambda_minus": o.dot_lambda_minus,
            "weight_one_exact": a.weight_one_exact(),
            "gamma": ks.iter().map(|&k| json!({"k": k, "value": o.dot_gamma(k)})).collect::<Vec<_>>(),
        })
    });
    if src.json {
        return Ok(to_json(&json!({
            "rep": rep.name(),
            "degree": rep.degree(),
            "t_order": order,
            "eigenphases": phases,
            "even": even,
            "odd": odd,
        })));
    }

    let mut s = String::new();
    let _ = writeln!(s, "{}: degree {} (even part {}, odd part {})", rep.name(), rep.degree(),
        a.part_degree(vvmf_core::Parity::Even), a.part_degree(vvmf_core::Parity::Odd));
    let _ = writeln!(s, "order of T: {}", order);
    let _ = writeln!(s, "eigenphases of T: {}", phases.join(" "));
    let header: Vec<String> = ks.iter().map(|k| format!("{:>4}", k)).collect();
    if let Some(e) = a.even_invariants() {
        let _ = writeln!(s, "\neven part");
        let _ = writeln!(s, "  signature (alpha, beta1, beta2) = ({}, {}, {})", e.sig.alpha, e.sig.beta1, e.sig.beta2);
        let _ = writeln!(s, "  Tr Lambda = {}", e.exp.trace_lambda);
        let _ = writeln!(s, "  lambda+ = {}, lambda- = {}, h0 = {}", e.lambda_plus, e.lambda_minus, e.h0);
        let row: Vec<String> = ks.iter().map(|&k| format!("{:>4}", e.gamma(k))).collect();
        let _ = writeln!(s, "  k     {}\n  gamma {}", header.join(""), row.join(""));
    }
    if let Some(o) = a.odd_invariants() {
        let _ = writeln!(s, "\nodd part (through rho * kappa^-1)");
        let _ = writeln!(s, "  signature (alpha, beta1, beta2) = ({}, {}, {})", o.dot_sig.alpha, o.dot_sig.beta1, o.dot_sig.beta2);
        let _ = writeln!(s, "  Tr Lambda = {}", o.dot_exp.trace_lambda);
        let _ = writeln!(s, "  lambda+ = {}, lambda- = {}", o.dot_lambda_plus, o.dot_lambda_minus);
        let row: Vec<String> = ks.iter().map(|&k| format!("{:>4}", o.dot_gamma(k))).collect();
        let _ = writeln!(s, "  k     {}\n  gamma {}", header.join(""), row.join(""));
        let _ = writeln!(
            s,
            "  weight 1: {}",
            if a.weight_one_exact() { "exact" } else { "lower bound only (odd part not certified irreducible)" }
        );
    }
    Ok(s)
}

fn cell(r: &DimResult) -> String {
    match r.status {
        DimStatus::Exact => r.value.to_string(),
        DimStatus::LowerBound => format!("{}+", r.value),
    }
}

fn cmd_dims(src: &Source, from: i64, to: i64, settings: &Settings) -> Result<String, CliError> {
    if from > to {
        return Err(CliError::Usage(format!("empty weight range {}..{}", from, to)));
    }
    let rep = load(&src.source, settings)?;
    let rows = RepAnalysis::new(&rep, settings)?.dim_table(from, to)?;
    if src.json {
        let weights: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "w": r.weight,
                    "dimM": r.holomorphic.value,
                    "dimS": r.cusp.value,
                    "statusM": r.holomorphic.status.as_str(),
                    "statusS": r.cusp.status.as_str(),
                })
            })
            .collect();
        return Ok(to_json(&json!({"rep": rep.name(), "degree": rep.degree(), "weights": weights})));
    }
    let mut s = format!("{}: degree {}\n{:>6} {:>8} {:>8}\n", rep.name(), rep.degree(), "w", "dim M", "dim S");
    for r in &rows {
        let _ = writeln!(s, "{:>6} {:>8} {:>8}", r.weight, cell(&r.holomorphic), cell(&r.cusp));
    }
    if rows.iter().any(|r| !r.holomorphic.is_exact() || !r.cusp.is_exact()) {
        s.push_str("(+ marks a lower bound: the odd part is not certified irreducible)\n");
    }
    Ok(s)
}

fn polynomial(coeffs: &[i64]) -> String {
    let terms: Vec<String> = coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0)
        .map(|(w, c)| match (w, c) {
            (0, c) => c.to_string(),
            (w, 1) => format!("z^{}", w),
            (w, c) => format!("{}z^{}", c, w),
        })
        .collect();
    if terms.is_empty() { "0".into() } else { terms.join(" + ") }
}

fn cmd_generators(src: &Source, cusp: bool, settings: &Settings) -> Result<String, CliError> {
    let rep = load(&src.source, settings)?;
    let kind = if cusp { FormKind::Cusp } else { FormKind::Holomorphic };
    let a = RepAnalysis::new(&rep, settings)?;
    let profile = match GeneratorProfile::from_analysis(&a, kind) {
        Ok(p) => p,
        Err(Error::Weight1Indeterminate) => {
            let bound = if cusp { a.dim_cusp(1)? } else { a.dim_holomorphic(1)? };
            if src.json {
                return Ok(to_json(&json!({
                    "rep": rep.name(),
                    "degree": rep.degree(),
                    "kind": kind.as_str(),
                    "indeterminate": true,
                    "weight1_lower_bound": bound.value,
                    "generators": Value::Null,
                    "numerator": Value::Null,
                })));
            }
            return Ok(format!(
                "{}: degree {} ({} forms)\n{:>6} {:>8}\n{:>6} {:>8}\ngenerator weights undetermined: the odd part is not certified irreducible\n",
                rep.name(), rep.degree(), kind.as_str(), "w", "count", 1, cell(&bound)
            ));
        }
        Err(e) => return Err(e.into()),
    };
    let series = HilbertSeries::from_profile(&profile);
    if src.json {
        let gens: Vec<Value> = profile.counts.iter().map(|(w, c)| json!({"w": w, "count": c})).collect();
        return Ok(to_json(&json!({
            "rep": rep.name(),
            "degree": rep.degree(),
            "kind": kind.as_str(),
            "indeterminate": false,
            "generators": gens,
            "numerator": series.numerator,
        })));
    }
    let mut s = format!("{}: degree {} ({} forms)\n{:>6} {:>8}\n", rep.name(), rep.degree(), kind.as_str(), "w", "count");
    for (w, c) in &profile.counts {
        let _ = writeln!(s, "{:>6} {:>8}", w, c);
    }
    let _ = writeln!(s, "total {}", profile.total());
    let _ = writeln!(s, "Hilbert series: ({}) / ((1 - z^4)(1 - z^6))", polynomial(&series.numerator));
    Ok(s)
}

fn cmd_duality(src: &Source, nmax: u32, settings: &Settings) -> Result<String, CliError> {
    if nmax == 0 {
        return Err(CliError::Usage("--nmax must be at least 1".into()));
    }
    let rep = load(&src.source, settings)?;
    let report = duality_report(&rep, nmax, settings)?;
    let text = if src.json {
        let checks: Vec<Value> = report
            .checks
            .iter()
            .map(|c| match &c.outcome {
                CheckOutcome::Passed => json!({"name": c.name, "outcome": "passed"}),
                CheckOutcome::Skipped { reason } => {
                    json!({"name": c.name, "outcome": "skipped", "reason": reason})
                }
                CheckOutcome::Failed { counterexamples } => {
                    json!({"name": c.name, "outcome": "failed", "counterexamples": counterexamples})
                }
            })
            .collect();
        to_json(&json!({
            "rep": report.rep,
            "dual": report.dual,
            "degree": rep.degree(),
            "nmax": nmax,
            "passed": report.all_passed(),
            "checks": checks,
        }))
    } else {
        let mut s = format!("{} against {} (n <= {})\n", report.rep, report.dual, nmax);
        for c in &report.checks {
            match &c.outcome {
                CheckOutcome::Passed => {
                    let _ = writeln!(s, "PASS {}", c.name);
                }
                CheckOutcome::Skipped { reason } => {
                    let _ = writeln!(s, "SKIP {} ({})", c.name, reason);
                }
                CheckOutcome::Failed { counterexamples } => {
                    let _ = writeln!(s, "FAIL {}: {}", c.name, counterexamples.join("; "));
                }
            }
        }
        s
    };
    if report.all_passed() {
        Ok(text)
    } else {
        Err(CliError::Failure(format!("duality identities failed\n{}", text)))
    }
}

fn cmd_catalog() -> String {
    let mut s = catalog::names().join("\n");
    s.push_str(&format!(
        "\n\np1(N) is available for 2 <= N <= {}. Combine with `+` (direct sum), \
         `*k^j` (tensor with kappa^j) and prefix `~` (contragredient), e.g. catalog:rho0+~kappa^1*k^2\n",
        catalog::P1_MAX_LEVEL
    ));
    s
}

fn cmd_export(
    source: &str,
    encoding: EncodingArg,
    output: Option<&Path>,
    settings: &Settings,
) -> Result<String, CliError> {
    let rep = load(source, settings)?;
    let order = t_order(&rep, settings.tol, settings.order_cap)?;
    let encoding = match encoding {
        EncodingArg::Complex => Encoding::Complex,
        EncodingArg::Cyclotomic => Encoding::Cyclotomic,
    };
    let mut text = RepFile::from_rep(&rep, encoding, order, settings.tol)?.to_json();
    text.push('\n');
    match output {
        Some(path) => {
            std::fs::write(path, &text)
                .map_err(|e| CliError::Usage(format!("cannot write {}: {}", path.display(), e)))?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}
