//! Command-line front end.
//!
//! Seven subcommands cover the evaluation pipeline end to end: `layout`,
//! `timing`, `errors`, `evaluate`, `sweep`, `frontier`, and `validate`.
//! Output is CSV by default, JSON with `--format json`, written to stdout
//! or to `--out`. Exit codes: 0 success, 1 usage or model error, 2 when
//! the validation suite has failing cases.

use std::borrow::Cow;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{ArgAction, Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::apps::{
    all_applications, by_name, evaluate, min_improvement_for_target, sweep,
    ApplicationSpec, EvalResult, FrontierOutcome,
};
use crate::config::{
    load_config_file, resolve_config_path, ArchKind, ConfigFile, ImprovementFactors,
    Scenario,
};
use crate::error_model::{logical_error, transversal_gate_error, LogicalErrorEstimate};
use crate::layout::{chain_mapping, code_qubit_counts, ChainLayout, CodeCounts, TABULATED_DISTANCES};
use crate::schedule::{schedule, ScheduleResult};
use crate::validate::{run_all, ValidateOptions};
use crate::{Error, Result};

#[derive(Debug, Parser)]
#[command(
    name = "sdqc-eval",
    version,
    about = "Cost model for distributed trapped-ion quantum computing"
)]
struct Cli {
    /// JSON config file; the SDQC_EVAL_CONFIG variable is used when absent.
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,

    /// Dotted-path config override, e.g. --set errors.two_qubit=1e-4.
    #[arg(long = "set", global = true, value_name = "KEY=VALUE", action = ArgAction::Append)]
    set: Vec<String>,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Csv)]
    format: OutputFormat,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Seed for the Monte Carlo validation case.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Chain packing and qubit counts per code distance.
    Layout(LayoutArgs),
    /// Remote-gate and logical-clock latencies.
    Timing(TimingArgs),
    /// Transversal and logical error curves.
    Errors(ErrorsArgs),
    /// Evaluate one application at one operating point.
    Evaluate(EvaluateArgs),
    /// Evaluate applications across a scenario grid.
    Sweep(SweepArgs),
    /// Minimum improvement factor reaching a target success probability.
    Frontier(FrontierArgs),
    /// Recompute the published reference values and report pass or fail.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
struct LayoutArgs {
    /// Architectures: sdqc, qccd, photonic, a comma list, or all.
    #[arg(long, default_value = "sdqc")]
    arch: String,

    /// Code distances: a comma list or all.
    #[arg(short = 'd', long = "distance", default_value = "all")]
    distance: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PipeliningMode {
    Pipelined,
    Unpipelined,
    Both,
}

#[derive(Debug, Args)]
struct TimingArgs {
    #[arg(long, default_value = "all")]
    arch: String,

    #[arg(short = 'd', long = "distance", default_value = "all")]
    distance: String,

    /// Machine sizes: a comma list of integers or log:a:b:n.
    #[arg(long = "n-logical", default_value = "132")]
    n_logical: String,

    /// Which pipelining assumption to report.
    #[arg(long, value_enum, default_value_t = PipeliningMode::Both)]
    pipelining: PipeliningMode,
}

#[derive(Debug, Args)]
struct ErrorsArgs {
    #[arg(long, default_value = "all")]
    arch: String,

    #[arg(short = 'd', long = "distance", default_value = "13")]
    distance: String,

    /// Transversal-error axis: log:a:b:n, lin:a:b:n, or a comma list.
    /// When given, the machine-size axis is ignored.
    #[arg(long = "p-trans", value_name = "GRID")]
    p_trans: Option<String>,

    /// Machine-size axis, used when --p-trans is absent.
    #[arg(long = "n-logical", default_value = "132")]
    n_logical: String,

    /// Uniform improvement factors: a grid or comma list.
    #[arg(long, default_value = "1")]
    lambda: String,

    /// Extraction improvement factors; tracks --lambda when absent.
    #[arg(long = "lambda-se")]
    lambda_se: Option<String>,
}

#[derive(Debug, Args)]
struct EvaluateArgs {
    /// Application: fermi-hubbard or ecdlp.
    #[arg(long)]
    app: String,

    /// Architecture; defaults to the config's.
    #[arg(long)]
    arch: Option<String>,

    #[arg(short = 'd', long = "distance")]
    distance: Option<u32>,

    #[arg(long)]
    lambda: Option<f64>,

    /// Extraction improvement factor; tracks --lambda when absent.
    #[arg(long = "lambda-se")]
    lambda_se: Option<f64>,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Applications: fermi-hubbard, ecdlp, a comma list, or all.
    #[arg(long)]
    app: String,

    /// Architectures; defaults to the config's.
    #[arg(long)]
    arch: Option<String>,

    /// Code-distance axis; defaults to the config's sweep section.
    #[arg(short = 'd', long = "distance")]
    distance: Option<String>,

    /// Improvement-factor axis; defaults to the config's sweep section.
    #[arg(long)]
    lambda: Option<String>,

    /// Extraction improvement axis; tracks lambda when absent.
    #[arg(long = "lambda-se")]
    lambda_se: Option<String>,
}

#[derive(Debug, Args)]
struct FrontierArgs {
    /// Applications: fermi-hubbard, ecdlp, a comma list, or all.
    #[arg(long)]
    app: String,

    #[arg(long, default_value = "all")]
    arch: String,

    #[arg(short = 'd', long = "distance", default_value = "13")]
    distance: String,

    /// Target success probability.
    #[arg(long, default_value_t = 0.9)]
    target: f64,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Trials for the Monte Carlo case.
    #[arg(long = "mc-trials", default_value_t = 10_000_000)]
    mc_trials: u64,
}

/// Parse argv and run the selected subcommand, writing its report to
/// `out` (or to `--out` when given). Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            return match err.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{err}");
                    0
                }
                _ => {
                    eprint!("{err}");
                    1
                }
            };
        }
    };
    match execute(&cli) {
        Ok(report) => {
            if let Some(path) = &cli.out {
                if let Err(err) = std::fs::write(path, &report.text) {
                    eprintln!("error: cannot write {}: {err}", path.display());
                    return 1;
                }
            } else if out.write_all(report.text.as_bytes()).is_err() {
                return 1;
            }
            report.exit_code
        }
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

struct Report {
    text: String,
    exit_code: i32,
}

impl Report {
    fn ok(text: String) -> Report {
        Report { text, exit_code: 0 }
    }
}

fn execute(cli: &Cli) -> Result<Report> {
    let path = resolve_config_path(cli.config.clone());
    let config = load_config_file(path.as_deref(), &cli.set)?;
    match &cli.command {
        Command::Layout(args) => cmd_layout(cli, &config, args),
        Command::Timing(args) => cmd_timing(cli, &config, args),
        Command::Errors(args) => cmd_errors(cli, &config, args),
        Command::Evaluate(args) => cmd_evaluate(cli, &config, args),
        Command::Sweep(args) => cmd_sweep(cli, &config, args),
        Command::Frontier(args) => cmd_frontier(cli, &config, args),
        Command::Validate(args) => cmd_validate(cli, args),
    }
}

fn base_scenario(config: &ConfigFile) -> Scenario {
    Scenario {
        architecture: config.architecture.clone().unwrap_or_default(),
        times: config.times.clone().unwrap_or_default(),
        errors: config.errors.clone().unwrap_or_default(),
        ..Scenario::default()
    }
}

fn parse_arch_list(spec: &str) -> Result<Vec<ArchKind>> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(ArchKind::ALL.to_vec());
    }
    spec.split(',').map(|s| ArchKind::parse(s.trim())).collect()
}

fn parse_distance_list(spec: &str) -> Result<Vec<u32>> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(TABULATED_DISTANCES.to_vec());
    }
    spec.split(',')
        .map(|s| {
            s.trim()
                .parse::<u32>()
                .map_err(|_| Error::invalid("--distance", format!("not an integer: {s:?}")))
        })
        .collect()
}

fn parse_app_list(spec: &str) -> Result<Vec<ApplicationSpec>> {
    if spec.eq_ignore_ascii_case("all") {
        return Ok(all_applications());
    }
    spec.split(',').map(|s| by_name(s.trim())).collect()
}

/// Parse a numeric axis: `log:a:b:n`, `lin:a:b:n`, or a comma list.
fn parse_grid(flag: &'static str, spec: &str) -> Result<Vec<f64>> {
    let bad = |msg: String| Error::invalid(flag, msg);
    let parse_one = |s: &str| -> Result<f64> {
        let v: f64 = s
            .trim()
            .parse()
            .map_err(|_| bad(format!("not a number: {s:?}")))?;
        if !v.is_finite() {
            return Err(bad(format!("not finite: {s:?}")));
        }
        Ok(v)
    };
    let ramp = |rest: &str, log: bool| -> Result<Vec<f64>> {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            return Err(bad(format!("expected a:b:n after the prefix, got {rest:?}")));
        }
        let a = parse_one(parts[0])?;
        let b = parse_one(parts[1])?;
        let n: usize = parts[2]
            .parse()
            .map_err(|_| bad(format!("not a point count: {:?}", parts[2])))?;
        if n == 0 {
            return Err(bad("point count must be at least 1".into()));
        }
        if log && (a <= 0.0 || b <= 0.0) {
            return Err(bad("log grids need positive endpoints".into()));
        }
        if n == 1 {
            return Ok(vec![a]);
        }
        Ok((0..n)
            .map(|i| {
                let t = i as f64 / (n - 1) as f64;
                if log {
                    a * (b / a).powf(t)
                } else {
                    a + (b - a) * t
                }
            })
            .collect())
    };
    if let Some(rest) = spec.strip_prefix("log:") {
        ramp(rest, true)
    } else if let Some(rest) = spec.strip_prefix("lin:") {
        ramp(rest, false)
    } else {
        spec.split(',').map(parse_one).collect()
    }
}

/// Parse an integer axis, rounding grid points and dropping consecutive
/// duplicates the rounding introduces.
fn parse_count_grid(flag: &'static str, spec: &str) -> Result<Vec<u64>> {
    let values = parse_grid(flag, spec)?;
    let mut out: Vec<u64> = Vec::with_capacity(values.len());
    for v in values {
        if v < 1.0 {
            return Err(Error::invalid(flag, format!("counts must be at least 1, got {v}")));
        }
        let rounded = v.round() as u64;
        if out.last() != Some(&rounded) {
            out.push(rounded);
        }
    }
    Ok(out)
}

fn csv_escape(cell: &str) -> Cow<'_, str> {
    if cell.contains([',', '"', '\n']) {
        Cow::Owned(format!("\"{}\"", cell.replace('"', "\"\"")))
    } else {
        Cow::Borrowed(cell)
    }
}

fn render_csv(columns: &[&str], rows: &[Vec<String>]) -> String {
    let mut text = columns.join(",");
    text.push('\n');
    for row in rows {
        debug_assert_eq!(row.len(), columns.len());
        let cells: Vec<Cow<'_, str>> = row.iter().map(|c| csv_escape(c)).collect();
        text.push_str(&cells.join(","));
        text.push('\n');
    }
    text
}

fn render_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut text = serde_json::to_string_pretty(doc)?;
    text.push('\n');
    Ok(text)
}

fn sci(x: f64) -> String {
    format!("{x:.6e}")
}

#[derive(Serialize)]
struct LayoutDoc {
    counts: CodeCounts,
    #[serde(flatten)]
    layout: ChainLayout,
    max_chain: u32,
}

fn cmd_layout(cli: &Cli, _config: &ConfigFile, args: &LayoutArgs) -> Result<Report> {
    let archs = parse_arch_list(&args.arch)?;
    let distances = parse_distance_list(&args.distance)?;
    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for &arch in &archs {
        for &d in &distances {
            let counts = code_qubit_counts(d)?;
            let layout = chain_mapping(arch, d)?;
            for (index, chain) in layout.chains.iter().enumerate() {
                rows.push(vec![
                    arch.to_string(),
                    d.to_string(),
                    index.to_string(),
                    chain.data.to_string(),
                    chain.nonsegmented.to_string(),
                    chain.segmented.to_string(),
                    chain.occupancy().to_string(),
                ]);
            }
            let max_chain = layout.max_occupancy();
            docs.push(LayoutDoc {
                counts,
                layout,
                max_chain,
            });
        }
    }
    let text = match cli.format {
        OutputFormat::Csv => render_csv(
            &["arch", "d", "chain", "data", "nonsegmented", "segmented", "occupancy"],
            &rows,
        ),
        OutputFormat::Json => render_json(&docs)?,
    };
    Ok(Report::ok(text))
}

fn cmd_timing(cli: &Cli, config: &ConfigFile, args: &TimingArgs) -> Result<Report> {
    let archs = parse_arch_list(&args.arch)?;
    let distances = parse_distance_list(&args.distance)?;
    let sizes = parse_count_grid("--n-logical", &args.n_logical)?;
    let modes: &[bool] = match args.pipelining {
        PipeliningMode::Pipelined => &[true],
        PipeliningMode::Unpipelined => &[false],
        PipeliningMode::Both => &[true, false],
    };
    let mut rows = Vec::new();
    let mut docs: Vec<ScheduleResult> = Vec::new();
    for &arch in &archs {
        for &d in &distances {
            for &n_logical in &sizes {
                for &pipelined in modes {
                    let mut scenario = base_scenario(config);
                    scenario.architecture.kind = arch;
                    scenario.code_distance = d;
                    scenario.n_logical = n_logical;
                    let result = schedule(&scenario, pipelined)?;
                    rows.push(vec![
                        arch.to_string(),
                        n_logical.to_string(),
                        d.to_string(),
                        format!("{:.3}", result.t_remote_tq_us),
                        format!("{:.4}", result.t_logical_clock_us / 1000.0),
                        pipelined.to_string(),
                    ]);
                    docs.push(result);
                }
            }
        }
    }
    let text = match cli.format {
        OutputFormat::Csv => render_csv(
            &["arch", "n_logical", "d", "t_remote_tq_us", "t_logical_clock_ms", "pipelined"],
            &rows,
        ),
        OutputFormat::Json => render_json(&docs)?,
    };
    Ok(Report::ok(text))
}

#[derive(Serialize)]
struct ErrorsRow {
    architecture: ArchKind,
    code_distance: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    n_logical: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<f64>,
    lambda_se: f64,
    p_trans: f64,
    p_logical: LogicalErrorEstimate,
}

fn errors_cells(row: &ErrorsRow) -> Vec<String> {
    vec![
        row.architecture.to_string(),
        row.code_distance.to_string(),
        row.n_logical.map(|n| n.to_string()).unwrap_or_default(),
        row.lambda.map(|l| l.to_string()).unwrap_or_default(),
        row.lambda_se.to_string(),
        sci(row.p_trans),
        sci(row.p_logical.central),
        sci(row.p_logical.lower),
        sci(row.p_logical.upper),
        row.p_logical.regime.name().to_string(),
    ]
}

fn cmd_errors(cli: &Cli, config: &ConfigFile, args: &ErrorsArgs) -> Result<Report> {
    let archs = parse_arch_list(&args.arch)?;
    let distances = parse_distance_list(&args.distance)?;
    let lambdas = parse_grid("--lambda", &args.lambda)?;
    let lambda_ses = args
        .lambda_se
        .as_deref()
        .map(|spec| parse_grid("--lambda-se", spec))
        .transpose()?;

    let mut docs = Vec::new();
    for &arch in &archs {
        for &d in &distances {
            if let Some(p_spec) = &args.p_trans {
                let ps = parse_grid("--p-trans", p_spec)?;
                let ses = lambda_ses.clone().unwrap_or_else(|| vec![1.0]);
                for &lambda_se in &ses {
                    for &p in &ps {
                        docs.push(ErrorsRow {
                            architecture: arch,
                            code_distance: d,
                            n_logical: None,
                            lambda: None,
                            lambda_se,
                            p_trans: p,
                            p_logical: logical_error(arch, d, p, lambda_se)?,
                        });
                    }
                }
            } else {
                let sizes = parse_count_grid("--n-logical", &args.n_logical)?;
                for &n_logical in &sizes {
                    for &lambda in &lambdas {
                        let ses = lambda_ses.clone().unwrap_or_else(|| vec![lambda]);
                        for &lambda_se in &ses {
                            let mut scenario = base_scenario(config);
                            scenario.architecture.kind = arch;
                            scenario.code_distance = d;
                            scenario.n_logical = n_logical;
                            scenario.improvements = ImprovementFactors { lambda, lambda_se };
                            let p_trans = transversal_gate_error(&scenario)?.p_total;
                            docs.push(ErrorsRow {
                                architecture: arch,
                                code_distance: d,
                                n_logical: Some(n_logical),
                                lambda: Some(lambda),
                                lambda_se,
                                p_trans,
                                p_logical: logical_error(arch, d, p_trans, lambda_se)?,
                            });
                        }
                    }
                }
            }
        }
    }
    let text = match cli.format {
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = docs.iter().map(errors_cells).collect();
            render_csv(
                &[
                    "arch",
                    "d",
                    "n_logical",
                    "lambda",
                    "lambda_se",
                    "p_trans",
                    "p_logical",
                    "p_logical_lo",
                    "p_logical_hi",
                    "regime",
                ],
                &rows,
            )
        }
        OutputFormat::Json => render_json(&docs)?,
    };
    Ok(Report::ok(text))
}

const EVAL_COLUMNS: [&str; 14] = [
    "app",
    "arch",
    "d",
    "lambda",
    "space_total",
    "n_spare",
    "p_trans",
    "p_logical",
    "p_logical_lo",
    "p_logical_hi",
    "success",
    "success_lo",
    "success_hi",
    "t_exec_days",
];

fn eval_cells(result: &EvalResult) -> Vec<String> {
    vec![
        result.application.to_string(),
        result.architecture.to_string(),
        result.code_distance.to_string(),
        result.lambda.to_string(),
        result.space.total.to_string(),
        result.n_spare.to_string(),
        sci(result.transversal.p_total),
        sci(result.p_logical.central),
        sci(result.p_logical.lower),
        sci(result.p_logical.upper),
        format!("{:.6}", result.success.central),
        format!("{:.6}", result.success.lower),
        format!("{:.6}", result.success.upper),
        format!("{:.3}", result.execution.days),
    ]
}

fn cmd_evaluate(cli: &Cli, config: &ConfigFile, args: &EvaluateArgs) -> Result<Report> {
    let app = by_name(&args.app)?;
    let mut scenario = base_scenario(config);
    if let Some(arch) = &args.arch {
        scenario.architecture.kind = ArchKind::parse(arch)?;
    }
    if let Some(d) = args.distance {
        scenario.code_distance = d;
    }
    if let Some(lambda) = args.lambda {
        scenario.improvements.lambda = lambda;
        scenario.improvements.lambda_se = lambda;
    }
    if let Some(lambda_se) = args.lambda_se {
        scenario.improvements.lambda_se = lambda_se;
    }
    let result = evaluate(&app, &scenario)?;
    let text = match cli.format {
        OutputFormat::Csv => render_csv(&EVAL_COLUMNS, &[eval_cells(&result)]),
        OutputFormat::Json => render_json(&result)?,
    };
    Ok(Report::ok(text))
}

#[derive(Serialize)]
struct SweepDoc {
    scenario: Scenario,
    #[serde(skip_serializing_if = "Option::is_none")]
    result: Option<EvalResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn cmd_sweep(cli: &Cli, config: &ConfigFile, args: &SweepArgs) -> Result<Report> {
    let apps = parse_app_list(&args.app)?;
    let sweep_section = config.sweep.clone().unwrap_or_default();

    let archs = match &args.arch {
        Some(spec) => parse_arch_list(spec)?,
        None => vec![config.architecture.clone().unwrap_or_default().kind],
    };
    let distances = match &args.distance {
        Some(spec) => parse_distance_list(spec)?,
        None => sweep_section.code_distance.clone().unwrap_or_else(|| vec![13]),
    };
    let lambdas = match &args.lambda {
        Some(spec) => parse_grid("--lambda", spec)?,
        None => sweep_section.lambda.clone().unwrap_or_else(|| vec![1.0]),
    };
    let lambda_ses = match &args.lambda_se {
        Some(spec) => Some(parse_grid("--lambda-se", spec)?),
        None => sweep_section.lambda_se.clone(),
    };

    let mut scenarios = Vec::new();
    for &arch in &archs {
        for &d in &distances {
            for &lambda in &lambdas {
                let ses = lambda_ses.clone().unwrap_or_else(|| vec![lambda]);
                for lambda_se in ses {
                    let mut scenario = base_scenario(config);
                    scenario.architecture.kind = arch;
                    scenario.code_distance = d;
                    scenario.improvements = ImprovementFactors { lambda, lambda_se };
                    scenarios.push(scenario);
                }
            }
        }
    }

    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for app in &apps {
        for row in sweep(app, &scenarios) {
            match row.outcome {
                Ok(result) => {
                    let mut cells = eval_cells(&result);
                    cells.push(String::new());
                    rows.push(cells);
                    docs.push(SweepDoc {
                        scenario: row.scenario,
                        result: Some(result),
                        error: None,
                    });
                }
                Err(message) => {
                    let s = &row.scenario;
                    let mut cells = vec![
                        app.name.to_string(),
                        s.architecture.kind.to_string(),
                        s.code_distance.to_string(),
                        s.improvements.lambda.to_string(),
                    ];
                    cells.resize(EVAL_COLUMNS.len(), String::new());
                    cells.push(message.clone());
                    rows.push(cells);
                    docs.push(SweepDoc {
                        scenario: row.scenario,
                        result: None,
                        error: Some(message),
                    });
                }
            }
        }
    }

    let text = match cli.format {
        OutputFormat::Csv => {
            let mut columns: Vec<&str> = EVAL_COLUMNS.to_vec();
            columns.push("error");
            render_csv(&columns, &rows)
        }
        OutputFormat::Json => render_json(&docs)?,
    };
    Ok(Report::ok(text))
}

#[derive(Serialize)]
struct FrontierDoc {
    application: String,
    architecture: ArchKind,
    code_distance: u32,
    target: f64,
    outcome: FrontierOutcome,
}

fn cmd_frontier(cli: &Cli, config: &ConfigFile, args: &FrontierArgs) -> Result<Report> {
    let apps = parse_app_list(&args.app)?;
    let archs = parse_arch_list(&args.arch)?;
    let distances = parse_distance_list(&args.distance)?;
    let mut rows = Vec::new();
    let mut docs = Vec::new();
    for app in &apps {
        for &arch in &archs {
            for &d in &distances {
                let mut scenario = base_scenario(config);
                scenario.architecture.kind = arch;
                scenario.code_distance = d;
                let outcome = min_improvement_for_target(app, &scenario, args.target)?;
                let lambda_star = match outcome {
                    FrontierOutcome::Reachable(l) => l.to_string(),
                    FrontierOutcome::Unreachable => String::new(),
                };
                rows.push(vec![
                    app.name.to_string(),
                    arch.to_string(),
                    d.to_string(),
                    args.target.to_string(),
                    lambda_star,
                ]);
                docs.push(FrontierDoc {
                    application: app.name.to_string(),
                    architecture: arch,
                    code_distance: d,
                    target: args.target,
                    outcome,
                });
            }
        }
    }
    let text = match cli.format {
        OutputFormat::Csv => {
            render_csv(&["app", "arch", "d", "target", "lambda_star"], &rows)
        }
        OutputFormat::Json => render_json(&docs)?,
    };
    Ok(Report::ok(text))
}

fn cmd_validate(cli: &Cli, args: &ValidateArgs) -> Result<Report> {
    let opts = ValidateOptions {
        mc_trials: args.mc_trials,
        seed: cli.seed,
    };
    let cases = run_all(&opts)?;
    let failed = cases.iter().filter(|c| !c.passed).count();
    let text = match cli.format {
        OutputFormat::Csv => {
            let rows: Vec<Vec<String>> = cases
                .iter()
                .map(|c| {
                    vec![
                        c.id.clone(),
                        if c.passed { "PASS" } else { "FAIL" }.to_string(),
                        c.expected.clone(),
                        c.actual.clone(),
                        c.tolerance.clone(),
                        c.provenance.clone(),
                        c.description.clone(),
                    ]
                })
                .collect();
            render_csv(
                &["id", "status", "expected", "actual", "tolerance", "provenance", "description"],
                &rows,
            )
        }
        OutputFormat::Json => render_json(&cases)?,
    };
    eprintln!(
        "{} of {} validation cases passed",
        cases.len() - failed,
        cases.len()
    );
    Ok(Report {
        text,
        exit_code: if failed == 0 { 0 } else { 2 },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn capture(args: &[&str]) -> (i32, String) {
        let mut buffer = Vec::new();
        let code = run(args, &mut buffer);
        (code, String::from_utf8(buffer).unwrap())
    }

    #[test]
    fn timing_csv_has_the_pinned_columns() {
        let (code, text) = capture(&["sdqc-eval", "timing", "--arch", "sdqc", "-d", "13"]);
        assert_eq!(code, 0);
        let mut lines = text.lines();
        assert_eq!(
            lines.next().unwrap(),
            "arch,n_logical,d,t_remote_tq_us,t_logical_clock_ms,pipelined"
        );
        let first = lines.next().unwrap();
        assert!(first.starts_with("sdqc,132,13,1716.000,80.0147,true"), "{first}");
    }

    #[test]
    fn evaluate_json_is_a_single_document() {
        let (code, text) = capture(&[
            "sdqc-eval", "evaluate", "--app", "ecdlp", "--arch", "sdqc", "-d", "13",
            "--lambda", "10", "--format", "json",
        ]);
        assert_eq!(code, 0);
        let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(doc["application"], "ecdlp");
        let success = doc["success"]["central"].as_f64().unwrap();
        assert!((success - 0.9961343489629868).abs() < 1e-12);
    }

    #[test]
    fn unknown_flag_is_a_usage_error() {
        let (code, _) = capture(&["sdqc-eval", "timing", "--bogus"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn unknown_distance_is_reported() {
        let (code, _) = capture(&["sdqc-eval", "timing", "-d", "4"]);
        assert_eq!(code, 1);
    }

    #[test]
    fn help_exits_zero() {
        let (code, text) = capture(&["sdqc-eval", "--help"]);
        assert_eq!(code, 0);
        assert!(text.contains("validate"));
    }

    #[test]
    fn sweep_cardinality_matches_the_grid() {
        let (code, text) = capture(&[
            "sdqc-eval", "sweep", "--app", "fermi", "--arch", "all", "-d",
            "3,5,7,9,11,13", "--lambda", "log:0.1:1000:25",
        ]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().count(), 1 + 3 * 6 * 25);
    }

    #[test]
    fn grid_parsing_round_trips_endpoints() {
        let grid = parse_grid("--lambda", "log:0.1:1000:25").unwrap();
        assert_eq!(grid.len(), 25);
        assert!((grid[0] - 0.1).abs() < 1e-15);
        assert!((grid[24] - 1000.0).abs() < 1e-9);
        let lin = parse_grid("--lambda", "lin:1:3:3").unwrap();
        assert_eq!(lin, vec![1.0, 2.0, 3.0]);
        let list = parse_grid("--lambda", "1,10,100").unwrap();
        assert_eq!(list, vec![1.0, 10.0, 100.0]);
    }

    #[test]
    fn count_grid_drops_rounding_duplicates() {
        let counts = parse_count_grid("--n-logical", "log:2:4:5").unwrap();
        assert_eq!(counts, vec![2, 3, 4]);
    }

    #[test]
    fn csv_cells_with_commas_are_quoted() {
        assert_eq!(csv_escape("a,b"), "\"a,b\"");
        assert_eq!(csv_escape("plain"), "plain");
        assert_eq!(csv_escape("say \"hi\""), "\"say \"\"hi\"\"\"");
    }

    #[test]
    fn frontier_reports_the_photonic_threshold() {
        let (code, text) = capture(&[
            "sdqc-eval", "frontier", "--app", "ecdlp", "--arch", "photonic", "-d", "13",
            "--target", "0.9",
        ]);
        assert_eq!(code, 0);
        assert_eq!(text.lines().nth(1).unwrap(), "ecdlp,photonic,13,0.9,191");
    }
}
