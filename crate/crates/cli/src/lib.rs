//! Command-line front end: single solves, refinement studies and bound tables
//! for the model problem `-eps u'' + u' = x`, `u(0) = u(1) = 0`.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use layerfd::{
    epsilon_sweep, shishkin_envelope, solve_bvp_with_stats, uniform_mesh, uniform_upwind_envelope, ConvergenceReport,
    Execution, MeshSpec, ProblemSpec, Scheme,
};

pub const SOLVE_HEADER: [&str; 4] = ["x", "u_numeric", "u_exact", "abs_error"];
pub const STUDY_HEADER: [&str; 5] = ["epsilon", "N", "max_error", "order", "theory_bound"];
pub const SHISHKIN_BOUND_HEADER: [&str; 2] = ["N", "shishkin_bound"];
pub const UNIFORM_BOUND_HEADER: [&str; 4] = ["epsilon", "N", "x", "uniform_upwind_bound"];

/// Finite-difference solver for -eps u'' + u' = x on (0, 1) with u(0) = u(1) = 0
#[derive(Parser, Debug)]
#[command(name = "layerfd", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Solve once and write the nodal solution
    Solve(SolveArgs),
    /// Run a refinement study over lists of eps and N
    Study(StudyArgs),
    /// Tabulate the theoretical error bounds
    Bounds(BoundsArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MeshArg {
    Uniform,
    Shishkin,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum SchemeArg {
    Central,
    Upwind,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Central => Scheme::CentralUniform,
            SchemeArg::Upwind => Scheme::Upwind,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Table,
}

#[derive(Args, Debug, Clone)]
pub struct MeshArgs {
    #[arg(long, value_enum)]
    pub mesh: MeshArg,

    /// Lower bound of the convection coefficient (Shishkin transition parameter)
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,

    /// Numerator constant of the Shishkin transition parameter
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    pub sigma0: f64,
}

#[derive(Args, Debug, Clone)]
pub struct OutputArgs {
    /// Output file; standard output when omitted
    #[arg(long)]
    pub out: Option<PathBuf>,

    #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
    pub format: OutputFormat,
}

#[derive(Args, Debug, Clone)]
pub struct SolveArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub eps: f64,

    #[arg(long)]
    pub n: usize,

    #[command(flatten)]
    pub mesh: MeshArgs,

    #[arg(long, value_enum)]
    pub scheme: SchemeArg,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct StudyArgs {
    /// Comma-separated eps values
    #[arg(long, value_delimiter = ',', num_args = 1.., allow_negative_numbers = true)]
    pub eps: Vec<f64>,

    /// Comma-separated, strictly increasing interval counts
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<usize>,

    #[command(flatten)]
    pub mesh: MeshArgs,

    #[arg(long, value_enum)]
    pub scheme: SchemeArg,

    /// Constant C of the C ln(N)/N bound reported for Shishkin meshes
    #[arg(long = "const", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c_const: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Args, Debug, Clone)]
pub struct BoundsArgs {
    /// Comma-separated interval counts
    #[arg(long, value_delimiter = ',', num_args = 0..)]
    pub n: Vec<usize>,

    /// eps values for the uniform-mesh bound
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    pub eps: Vec<f64>,

    /// `shishkin` tabulates C ln(N)/N; `uniform` tabulates the nodal upwind bound
    #[arg(long, value_enum, default_value_t = MeshArg::Shishkin)]
    pub mesh: MeshArg,

    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub alpha: f64,

    #[arg(long = "const", default_value_t = 1.0, allow_negative_numbers = true)]
    pub c_const: f64,

    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Invalid arguments; exit status 2.
    Usage(String),
    /// Assembly, solver or I/O failure; exit status 1.
    Compute(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Compute(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "usage error: {msg}"),
            CliError::Compute(msg) => write!(f, "error: {msg}"),
        }
    }
}

impl std::error::Error for CliError {}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn compute(err: impl std::fmt::Display) -> CliError {
    CliError::Compute(err.to_string())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommandKind {
    Solve,
    Study,
    Bounds,
}

/// Fully validated run configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: CommandKind,
    pub epsilons: Vec<f64>,
    pub n_list: Vec<usize>,
    pub mesh: MeshSpec,
    pub scheme: Scheme,
    pub c_const: f64,
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
}

fn mesh_spec(kind: MeshArg, alpha: f64, sigma0: f64) -> Result<MeshSpec, CliError> {
    if !(alpha > 0.0 && alpha.is_finite()) {
        return Err(usage(format!("--alpha must be positive, got {alpha}")));
    }
    if !(sigma0 > 0.0 && sigma0.is_finite()) {
        return Err(usage(format!("--sigma0 must be positive, got {sigma0}")));
    }
    Ok(match kind {
        MeshArg::Uniform => MeshSpec::Uniform,
        MeshArg::Shishkin => MeshSpec::Shishkin { alpha, sigma0 },
    })
}

fn check_epsilons(epsilons: &[f64]) -> Result<(), CliError> {
    if epsilons.is_empty() {
        return Err(usage("--eps needs at least one value"));
    }
    match epsilons.iter().find(|e| !(**e > 0.0 && **e <= 1.0)) {
        Some(e) => Err(usage(format!("--eps values must lie in (0, 1], got {e}"))),
        None => Ok(()),
    }
}

fn check_n_list(n_list: &[usize]) -> Result<(), CliError> {
    if n_list.is_empty() {
        return Err(usage("--n needs at least one value"));
    }
    if n_list.windows(2).any(|w| w[1] <= w[0]) {
        return Err(usage(format!("--n values must be strictly increasing, got {n_list:?}")));
    }
    Ok(())
}

fn check_const(c: f64) -> Result<(), CliError> {
    if c > 0.0 && c.is_finite() {
        Ok(())
    } else {
        Err(usage(format!("--const must be positive, got {c}")))
    }
}

/// Checks that every (eps, N) cell yields a valid mesh for the scheme.
fn check_cells(epsilons: &[f64], n_list: &[usize], mesh: MeshSpec, scheme: Scheme) -> Result<(), CliError> {
    if scheme == Scheme::CentralUniform && mesh != MeshSpec::Uniform {
        return Err(usage("the central scheme needs --mesh uniform"));
    }
    for &eps in epsilons {
        for &n in n_list {
            mesh.build(n, eps).map_err(|e| usage(e.to_string()))?;
        }
    }
    Ok(())
}

impl RunConfig {
    pub fn from_command(command: Command) -> Result<Self, CliError> {
        match command {
            Command::Solve(args) => {
                let mesh = mesh_spec(args.mesh.mesh, args.mesh.alpha, args.mesh.sigma0)?;
                let scheme = args.scheme.into();
                check_epsilons(&[args.eps])?;
                check_cells(&[args.eps], &[args.n], mesh, scheme)?;
                Ok(RunConfig {
                    command: CommandKind::Solve,
                    epsilons: vec![args.eps],
                    n_list: vec![args.n],
                    mesh,
                    scheme,
                    c_const: 1.0,
                    output_path: args.output.out,
                    output_format: args.output.format,
                })
            }
            Command::Study(args) => {
                let mesh = mesh_spec(args.mesh.mesh, args.mesh.alpha, args.mesh.sigma0)?;
                let scheme = args.scheme.into();
                check_epsilons(&args.eps)?;
                check_n_list(&args.n)?;
                check_const(args.c_const)?;
                check_cells(&args.eps, &args.n, mesh, scheme)?;
                Ok(RunConfig {
                    command: CommandKind::Study,
                    epsilons: args.eps,
                    n_list: args.n,
                    mesh,
                    scheme,
                    c_const: args.c_const,
                    output_path: args.output.out,
                    output_format: args.output.format,
                })
            }
            Command::Bounds(args) => {
                check_n_list(&args.n)?;
                check_const(args.c_const)?;
                if let Some(n) = args.n.iter().find(|&&n| n < 2) {
                    return Err(usage(format!("--n values must be at least 2, got {n}")));
                }
                let mesh = mesh_spec(args.mesh, args.alpha, 2.0)?;
                if mesh == MeshSpec::Uniform {
                    check_epsilons(&args.eps)?;
                }
                Ok(RunConfig {
                    command: CommandKind::Bounds,
                    epsilons: args.eps,
                    n_list: args.n,
                    mesh,
                    scheme: Scheme::Upwind,
                    c_const: args.c_const,
                    output_path: args.output.out,
                    output_format: args.output.format,
                })
            }
        }
    }

    fn alpha(&self) -> f64 {
        match self.mesh {
            MeshSpec::Shishkin { alpha, .. } => alpha,
            MeshSpec::Uniform => 1.0,
        }
    }
}

/// Rendered output of a command: the data document plus summary lines.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Rendered {
    pub data: String,
    pub summary: Vec<String>,
}

/// Runs a validated configuration. Nothing is written here; the caller
/// decides where `data` and `summary` go.
pub fn execute(config: &RunConfig) -> Result<Rendered, CliError> {
    match config.command {
        CommandKind::Solve => cmd_solve(config),
        CommandKind::Study => cmd_study(config),
        CommandKind::Bounds => cmd_bounds(config),
    }
}

fn csv_document<I, R>(header: &[&str], rows: I) -> Result<String, CliError>
where
    I: IntoIterator<Item = R>,
    R: IntoIterator<Item = String>,
{
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(header).map_err(compute)?;
    for row in rows {
        writer.write_record(row).map_err(compute)?;
    }
    let bytes = writer.into_inner().map_err(compute)?;
    String::from_utf8(bytes).map_err(compute)
}

fn number(x: f64) -> String {
    format!("{x}")
}

fn optional(x: Option<f64>) -> String {
    x.map(number).unwrap_or_default()
}

pub fn cmd_solve(config: &RunConfig) -> Result<Rendered, CliError> {
    let eps = config.epsilons[0];
    let n = config.n_list[0];
    let problem = ProblemSpec::model(eps).map_err(|e| usage(e.to_string()))?;
    let mesh = config.mesh.build(n, eps).map_err(|e| usage(e.to_string()))?;
    let (grid, stats) = solve_bvp_with_stats(&problem, &mesh, config.scheme).map_err(compute)?;
    let exact = grid.u_exact().ok_or_else(|| compute("exact solution unavailable"))?;
    let max_error = grid.max_norm_error().map_err(compute)?;

    let nodes = grid.points().iter().zip(grid.u_numeric()).zip(exact);
    let data = match config.output_format {
        OutputFormat::Csv => csv_document(
            &SOLVE_HEADER,
            nodes.map(|((&x, &u), &e)| [number(x), number(u), number(e), number((u - e).abs())]),
        )?,
        OutputFormat::Table => {
            let mut out = format!("{:>22} {:>22} {:>22} {:>12}\n", "x", "u_numeric", "u_exact", "abs_error");
            for ((&x, &u), &e) in nodes {
                let _ = writeln!(out, "{x:>22.15e} {u:>22.15e} {e:>22.15e} {:>12.4e}", (u - e).abs());
            }
            out
        }
    };
    let summary = vec![
        format!(
            "eps = {eps:e}, N = {n}, mesh = {}, scheme = {}",
            config.mesh.kind(),
            config.scheme
        ),
        format!("max_error = {max_error:e}"),
        format!("solve_time = {:.6e} s", stats.elapsed.as_secs_f64()),
    ];
    Ok(Rendered { data, summary })
}

pub fn cmd_study(config: &RunConfig) -> Result<Rendered, CliError> {
    let constant = (config.mesh.kind() == layerfd::MeshKind::Shishkin).then_some(config.c_const);
    let start = std::time::Instant::now();
    let reports = epsilon_sweep(
        &config.epsilons,
        &config.n_list,
        config.mesh,
        config.scheme,
        constant,
        Execution::default(),
    )
    .map_err(compute)?;
    let elapsed = start.elapsed();

    let data = match config.output_format {
        OutputFormat::Csv => csv_document(
            &STUDY_HEADER,
            reports.iter().flat_map(|r| {
                r.rows.iter().map(move |row| {
                    [
                        number(r.epsilon),
                        row.n_intervals.to_string(),
                        number(row.max_error),
                        optional(row.observed_order),
                        optional(row.theory_bound),
                    ]
                })
            }),
        )?,
        OutputFormat::Table => study_table(&reports, &config.n_list),
    };
    let summary = vec![
        format!(
            "{} eps x {} N cells, mesh = {}, scheme = {}",
            config.epsilons.len(),
            config.n_list.len(),
            config.mesh.kind(),
            config.scheme
        ),
        format!("study_time = {:.6e} s", elapsed.as_secs_f64()),
    ];
    Ok(Rendered { data, summary })
}

fn grid_table(title: &str, n_list: &[usize], rows: &[(String, Vec<Option<f64>>)], cell: fn(f64) -> String) -> String {
    let mut out = format!("{title}\n{:<12}", "eps \\ N");
    for n in n_list {
        let _ = write!(out, " {n:>10}");
    }
    out.push('\n');
    for (label, values) in rows {
        let _ = write!(out, "{label:<12}");
        for v in values {
            let _ = write!(out, " {:>10}", v.map(cell).unwrap_or_else(|| "-".into()));
        }
        out.push('\n');
    }
    out
}

fn study_table(reports: &[ConvergenceReport], n_list: &[usize]) -> String {
    let errors: Vec<(String, Vec<Option<f64>>)> = reports
        .iter()
        .map(|r| (format!("{:e}", r.epsilon), r.rows.iter().map(|row| Some(row.max_error)).collect()))
        .collect();
    let orders: Vec<(String, Vec<Option<f64>>)> = reports
        .iter()
        .map(|r| (format!("{:e}", r.epsilon), r.rows.iter().map(|row| row.observed_order).collect()))
        .collect();
    let mut out = grid_table("maximum norm error", n_list, &errors, |e| {
        if e >= 1e-3 {
            format!("{e:.4}")
        } else {
            format!("{e:.2e}")
        }
    });
    out.push('\n');
    out.push_str(&grid_table("order of convergence", n_list, &orders, |p| format!("{p:.4}")));
    if let Some(bounds) = reports.first().filter(|r| r.rows.iter().all(|row| row.theory_bound.is_some())) {
        // the bound does not depend on eps
        let row = vec![("all eps".to_string(), bounds.rows.iter().map(|row| row.theory_bound).collect())];
        out.push('\n');
        out.push_str(&grid_table("C ln(N)/N bound", n_list, &row, |b| format!("{b:.4e}")));
    }
    out
}

pub fn cmd_bounds(config: &RunConfig) -> Result<Rendered, CliError> {
    let c = config.c_const;
    let data = match config.mesh {
        MeshSpec::Shishkin { .. } => {
            let bounds = config
                .n_list
                .iter()
                .map(|&n| shishkin_envelope(n, c).map(|b| (n, b)))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| usage(e.to_string()))?;
            match config.output_format {
                OutputFormat::Csv => csv_document(
                    &SHISHKIN_BOUND_HEADER,
                    bounds.iter().map(|&(n, b)| [n.to_string(), number(b)]),
                )?,
                OutputFormat::Table => {
                    let mut out = format!("{:>10} {:>14}\n", "N", "C ln(N)/N");
                    for (n, b) in bounds {
                        let _ = writeln!(out, "{n:>10} {b:>14.6e}");
                    }
                    out
                }
            }
        }
        MeshSpec::Uniform => {
            let alpha = config.alpha();
            let mut rows = Vec::new();
            for &eps in &config.epsilons {
                for &n in &config.n_list {
                    let mesh = uniform_mesh(n).map_err(|e| usage(e.to_string()))?;
                    let h = 1.0 / n as f64;
                    for &x in mesh.points() {
                        let b = uniform_upwind_envelope(x, h, eps, alpha, c).map_err(|e| usage(e.to_string()))?;
                        rows.push((eps, n, x, b));
                    }
                }
            }
            match config.output_format {
                OutputFormat::Csv => csv_document(
                    &UNIFORM_BOUND_HEADER,
                    rows.iter()
                        .map(|&(eps, n, x, b)| [number(eps), n.to_string(), number(x), number(b)]),
                )?,
                OutputFormat::Table => {
                    let mut out = format!("{:>10} {:>8} {:>22} {:>14}\n", "eps", "N", "x", "bound");
                    for (eps, n, x, b) in rows {
                        let _ = writeln!(out, "{eps:>10.1e} {n:>8} {x:>22.15e} {b:>14.6e}");
                    }
                    out
                }
            }
        }
    };
    Ok(Rendered {
        data,
        summary: vec![format!("C = {c}")],
    })
}

/// Validates, computes, then writes. The output file is only created once
/// the computation has succeeded.
pub fn run(cli: Cli) -> Result<(), CliError> {
    let config = RunConfig::from_command(cli.command)?;
    let rendered = execute(&config)?;
    match &config.output_path {
        Some(path) => {
            let mut file = File::create(path).map_err(|e| compute(format!("{}: {e}", path.display())))?;
            file.write_all(rendered.data.as_bytes()).map_err(compute)?;
            let mut stdout = io::stdout().lock();
            for line in &rendered.summary {
                writeln!(stdout, "{line}").map_err(compute)?;
            }
        }
        None => {
            io::stdout().lock().write_all(rendered.data.as_bytes()).map_err(compute)?;
            let mut stderr = io::stderr().lock();
            for line in &rendered.summary {
                writeln!(stderr, "{line}").map_err(compute)?;
            }
        }
    }
    Ok(())
}
