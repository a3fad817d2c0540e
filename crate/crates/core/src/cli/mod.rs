//! The `lawson` command line: argument parsing, command execution and exit codes.
//!
//! Exit codes: 0 success, 1 invalid input, 2 verification failure, 3 numeric
//! failure (non-convergence, indeterminate count, violated truncation bound).

mod export;
mod output;

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::elliptic::{complete_e, complete_k, landen_gap, Modulus};
use crate::spectral::{sl_spectrum, ReflectionAxis, SlProblem, Symmetry, DEFAULT_COUNT};
use crate::surface::{classify, predicted_identification, validate, Family, Functional, Phi, Subcase, Topology, Triple};
use crate::verify::{verify, Check, VerificationReport, ANCHOR_TOL_4096, SEPARATION_FLOOR};
use crate::Error;

pub use export::{write_csv, write_obj};
pub use output::{to_json, to_text, Envelope, Status};

/// Environment variable overriding the default spectral grid.
pub const GRID_ENV: &str = "LAWSON_GRID_N";
pub const DEFAULT_GRID: usize = 2048;
pub const DEFAULT_EXPORT_GRID: usize = 128;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_VERIFY: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "lawson", version, about = "Generalized Lawson surfaces T(a,b,c) in S^5", allow_negative_numbers = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// `a b c`, or `--lawson a b`.
#[derive(Debug, Clone, Args)]
pub struct TripleArgs {
    /// Integers a b c (or a b with --lawson)
    #[arg(num_args = 0..=3, allow_negative_numbers = true)]
    pub values: Vec<i64>,

    /// Lawson tau-surface tau(a,b), c = sqrt(a^2 + b^2)
    #[arg(long)]
    pub lawson: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ExportFormat {
    Csv,
    Obj,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SymmetryArg {
    FullPeriodic,
    EvenInY,
    OddInY,
    PiPeriodic,
    PiAntiperiodic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AxisArg {
    Zero,
    HalfPi,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Topology, subcase, covering degree, extremal index and area
    Classify {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Run every residual, anchor, count and symmetry check for one triple
    Verify {
        #[command(flatten)]
        triple: TripleArgs,
        /// Grid size (default 2048 or $LAWSON_GRID_N)
        #[arg(long)]
        grid: Option<usize>,
        /// Double the grid and report convergence between the two grids
        #[arg(long)]
        deep: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Lowest eigenvalues of the separated problem at one l
    Spectrum {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = 0)]
        l: u32,
        #[arg(long, value_enum, default_value = "full-periodic")]
        symmetry: SymmetryArg,
        /// Reflection axis for even-in-y / odd-in-y
        #[arg(long, value_enum, default_value = "zero")]
        axis: AxisArg,
        /// Grid size (default 2048 or $LAWSON_GRID_N)
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_COUNT)]
        count: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Sample the immersion to CSV or an OBJ mesh
    Export {
        #[command(flatten)]
        triple: TripleArgs,
        #[arg(long, default_value_t = DEFAULT_EXPORT_GRID)]
        nx: usize,
        #[arg(long, default_value_t = DEFAULT_EXPORT_GRID)]
        ny: usize,
        #[arg(long, value_enum, default_value = "obj")]
        format: ExportFormat,
        /// Three distinct coordinates in 1..6 for the OBJ projection
        #[arg(long, value_delimiter = ',', default_value = "1,3,5")]
        axes: Vec<usize>,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Landmark surfaces and the bipolar Klein bottle equality
    Table {
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
    /// Landen transformation gap of E over k in [0, k_max]
    Landen {
        #[arg(long, default_value_t = 100)]
        points: usize,
        #[arg(long, default_value_t = 0.99)]
        k_max: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: OutputFormat,
    },
}

#[derive(Debug)]
pub enum CliError {
    Input(String),
    Library(Error),
    Io(io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Library(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numeric() => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(s) => write!(f, "{s}"),
            CliError::Library(e) => write!(f, "{e}"),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

/// What a command printed and the exit code it asks for.
#[derive(Debug)]
pub struct Outcome {
    pub stdout: Vec<u8>,
    pub code: i32,
}

impl TripleArgs {
    pub fn parse(&self) -> Result<Triple, CliError> {
        match (self.lawson, self.values.as_slice()) {
            (false, &[a, b, c]) => Ok(validate(Family::Generalized, a, b, Some(c))?),
            (true, &[a, b]) => Ok(validate(Family::Lawson, a, b, None)?),
            (false, v) => Err(CliError::Input(format!("expected three integers a b c, got {}", v.len()))),
            (true, v) => Err(CliError::Input(format!("--lawson expects two integers a b, got {}", v.len()))),
        }
    }
}

fn default_grid() -> Result<usize, CliError> {
    match std::env::var(GRID_ENV) {
        Ok(s) => match s.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(n),
            _ => Err(CliError::Input(format!("{GRID_ENV} must be a positive integer (got {s:?})"))),
        },
        Err(_) => Ok(DEFAULT_GRID),
    }
}

fn render<P: Serialize>(envelope: &Envelope<P>, format: OutputFormat) -> Vec<u8> {
    let mut s = match format {
        OutputFormat::Json => to_json(envelope),
        OutputFormat::Text => to_text(envelope),
    };
    if !s.ends_with('\n') {
        s.push('\n');
    }
    s.into_bytes()
}

fn emit<P: Serialize>(envelope: Envelope<P>, format: OutputFormat) -> Outcome {
    let code = match envelope.status {
        Status::Ok => EXIT_OK,
        Status::Fail => EXIT_VERIFY,
        Status::Indeterminate => EXIT_NUMERIC,
    };
    Outcome { stdout: render(&envelope, format), code }
}

#[derive(Debug, Serialize)]
struct ClassifyPayload {
    label: String,
    topology: Topology,
    subcase: Subcase,
    covering_degree: u32,
    identification: Option<Phi>,
    j: u32,
    functional: Functional,
    s: f64,
    area: f64,
    lambda_j: f64,
}

fn cmd_classify(t: Triple) -> Result<Envelope<ClassifyPayload>, CliError> {
    let c = classify(&t)?;
    Ok(Envelope {
        command: "classify",
        triple: Some(t),
        payload: ClassifyPayload {
            label: t.label(),
            topology: c.topology,
            subcase: c.subcase,
            covering_degree: c.covering_degree,
            identification: predicted_identification(&t),
            j: c.j,
            functional: c.functional,
            s: c.s,
            area: c.area,
            lambda_j: c.lambda_value,
        },
        tolerances: BTreeMap::new(),
        status: Status::Ok,
    })
}

#[derive(Debug, Serialize)]
struct VerifyPayload {
    passed: usize,
    failed: Vec<String>,
    n2: u32,
    j: u32,
    report: VerificationReport,
}

#[derive(Debug, Serialize)]
struct IndeterminatePayload {
    error: String,
}

fn verify_tolerances(grid: usize) -> BTreeMap<&'static str, f64> {
    BTreeMap::from([
        ("anchor", ANCHOR_TOL_4096 * (4096.0 / grid as f64).powi(2)),
        ("anchor_order_deviation", 0.2),
        ("area_quadrature", 1e-8),
        ("coefficient_relations", 1e-12),
        ("profile", 1e-10),
        ("identification", crate::surface::IDENTIFICATION_TOL),
        ("interlacing", crate::spectral::INTERLACING_TOL),
        ("non_identification", SEPARATION_FLOOR),
        ("takahashi_ratio_deviation", 0.8),
        ("unit_norm", 1e-12),
    ])
}

fn cmd_verify(t: Triple, grid: usize, deep: bool, format: OutputFormat) -> Result<Outcome, CliError> {
    let fine = if deep { 2 * grid } else { grid };
    let mut tolerances = verify_tolerances(fine);
    match verify(&t, grid, deep) {
        Ok(report) => {
            tolerances.insert("count_epsilon", report.count.epsilon);
            let failed: Vec<String> = report.checks.iter().filter(|c| !c.pass).map(|c: &Check| c.name.clone()).collect();
            let status = if failed.is_empty() { Status::Ok } else { Status::Fail };
            let payload = VerifyPayload {
                passed: report.checks.len() - failed.len(),
                failed,
                n2: report.count.n2,
                j: report.count.j_closed,
                report,
            };
            Ok(emit(Envelope { command: "verify", triple: Some(t), payload, tolerances, status }, format))
        }
        Err(e @ Error::IndeterminateCount { .. }) => {
            let payload = IndeterminatePayload { error: e.to_string() };
            let envelope = Envelope { command: "verify", triple: Some(t), payload, tolerances, status: Status::Indeterminate };
            eprintln!("error: {e}");
            Ok(emit(envelope, format))
        }
        Err(e) => Err(e.into()),
    }
}

#[derive(Debug, Serialize)]
struct SpectrumPayload {
    l: u32,
    symmetry: Symmetry,
    axis: ReflectionAxis,
    grid_n: usize,
    count: usize,
    eigenvalues: Vec<f64>,
}

fn cmd_spectrum(
    t: Triple,
    l: u32,
    symmetry: SymmetryArg,
    axis: AxisArg,
    grid: usize,
    count: usize,
) -> Result<Envelope<SpectrumPayload>, CliError> {
    let symmetry = match symmetry {
        SymmetryArg::FullPeriodic => Symmetry::FullPeriodic,
        SymmetryArg::EvenInY => Symmetry::EvenInY,
        SymmetryArg::OddInY => Symmetry::OddInY,
        SymmetryArg::PiPeriodic => Symmetry::PiPeriodic,
        SymmetryArg::PiAntiperiodic => Symmetry::PiAntiperiodic,
    };
    let axis = match axis {
        AxisArg::Zero => ReflectionAxis::Zero,
        AxisArg::HalfPi => ReflectionAxis::HalfPi,
    };
    let s = sl_spectrum(&SlProblem::new(t, l, symmetry).with_axis(axis), grid, count)?;
    Ok(Envelope {
        command: "spectrum",
        triple: Some(t),
        payload: SpectrumPayload { l, symmetry, axis, grid_n: s.grid_n, count, eigenvalues: s.eigenvalues },
        tolerances: BTreeMap::new(),
        status: Status::Ok,
    })
}

#[derive(Debug, Serialize)]
struct ExportPayload {
    path: String,
    format: &'static str,
    nx: usize,
    ny: usize,
    vertices: usize,
    faces: usize,
}

fn parse_axes(axes: &[usize]) -> Result<[usize; 3], CliError> {
    match *axes {
        [i, j, k] if [i, j, k].iter().all(|v| (1..=6).contains(v)) && i != j && j != k && i != k => Ok([i, j, k]),
        _ => Err(CliError::Input(format!("--axes needs three distinct indices in 1..6 (got {axes:?})"))),
    }
}

fn cmd_export(
    t: Triple,
    nx: usize,
    ny: usize,
    format: ExportFormat,
    axes: &[usize],
    out: Option<PathBuf>,
) -> Result<Outcome, CliError> {
    if nx < 2 || ny < 2 {
        return Err(CliError::Input(format!("export grid must be at least 2 x 2 (got {nx} x {ny})")));
    }
    let axes = parse_axes(axes)?;
    let write = |sink: &mut dyn Write| -> io::Result<(usize, usize)> {
        match format {
            ExportFormat::Csv => write_csv(sink, &t, nx, ny).map(|rows| (rows, 0)),
            ExportFormat::Obj => write_obj(sink, &t, nx, ny, axes),
        }
    };
    let Some(path) = out else {
        let mut buf = Vec::new();
        write(&mut buf)?;
        return Ok(Outcome { stdout: buf, code: EXIT_OK });
    };
    let mut file = BufWriter::new(File::create(&path)?);
    let (vertices, faces) = write(&mut file)?;
    file.flush()?;
    let payload = ExportPayload {
        path: path.display().to_string(),
        format: match format {
            ExportFormat::Csv => "csv",
            ExportFormat::Obj => "obj",
        },
        nx,
        ny,
        vertices,
        faces,
    };
    let envelope = Envelope { command: "export", triple: Some(t), payload, tolerances: BTreeMap::new(), status: Status::Ok };
    Ok(emit(envelope, OutputFormat::Json))
}

#[derive(Debug, Serialize)]
struct TableRow {
    name: &'static str,
    label: String,
    topology: Topology,
    j: u32,
    functional: Functional,
    area: f64,
    lambda_j: f64,
    reference: f64,
    residual: f64,
}

#[derive(Debug, Serialize)]
struct Equality {
    statement: &'static str,
    s_012: f64,
    bipolar: f64,
    residual: f64,
    pass: bool,
}

#[derive(Debug, Serialize)]
struct TablePayload {
    rows: Vec<TableRow>,
    equality: Equality,
}

const TABLE_TOL: f64 = 1e-10;

fn cmd_table() -> Result<Envelope<TablePayload>, CliError> {
    let e = |k: f64| complete_e(Modulus::from_k(k));
    let k_half = complete_k(Modulus::from_k(0.5))?;
    let bipolar = 12.0 * PI * e(2.0 * 2f64.sqrt() / 3.0)?;
    let entries = [
        ("Clifford torus", validate(Family::Generalized, 0, 0, Some(1))?, 4.0 * PI * PI),
        ("equilateral torus", validate(Family::Generalized, 1, 1, Some(2))?, 8.0 * PI * PI / 3f64.sqrt()),
        ("bipolar Klein bottle", validate(Family::Generalized, 0, 1, Some(2))?, 2.0 * PI * (8.0 * e(0.5)? - 3.0 * k_half)),
        ("Lawson tau(1,1)", validate(Family::Lawson, 1, 1, None)?, 4.0 * PI * PI),
        ("Lawson tau(3,1)", validate(Family::Lawson, 3, 1, None)?, bipolar * 2.0),
    ];
    let mut rows = Vec::with_capacity(entries.len());
    for (name, t, reference) in entries {
        let c = classify(&t)?;
        rows.push(TableRow {
            name,
            label: t.label(),
            topology: c.topology,
            j: c.j,
            functional: c.functional,
            area: c.area,
            lambda_j: c.lambda_value,
            reference,
            residual: (c.lambda_value - reference).abs(),
        });
    }
    let s_012 = classify(&validate(Family::Generalized, 0, 1, Some(2))?)?.s;
    let residual = (s_012 - bipolar).abs();
    let pass = residual <= TABLE_TOL && rows.iter().all(|r| r.residual <= TABLE_TOL * r.reference);
    Ok(Envelope {
        command: "table",
        triple: None,
        payload: TablePayload {
            rows,
            equality: Equality { statement: "S(0,1,2) = 12 pi E(2 sqrt 2 / 3)", s_012, bipolar, residual, pass },
        },
        tolerances: BTreeMap::from([("equality", TABLE_TOL)]),
        status: if pass { Status::Ok } else { Status::Fail },
    })
}

#[derive(Debug, Serialize)]
struct LandenRow {
    k: f64,
    gap: f64,
}

#[derive(Debug, Serialize)]
struct LandenPayload {
    max_gap: f64,
    rows: Vec<LandenRow>,
}

const LANDEN_TOL: f64 = 1e-10;

fn cmd_landen(points: usize, k_max: f64) -> Result<Envelope<LandenPayload>, CliError> {
    if points < 2 || !(0.0..1.0).contains(&k_max) {
        return Err(CliError::Input(format!("need at least 2 points and 0 ≤ k_max < 1 (got {points}, {k_max})")));
    }
    let rows = (0..points)
        .map(|i| {
            let k = k_max * i as f64 / (points - 1) as f64;
            landen_gap(k).map(|gap| LandenRow { k, gap })
        })
        .collect::<crate::Result<Vec<_>>>()?;
    let max_gap = rows.iter().map(|r| r.gap).fold(0.0, f64::max);
    Ok(Envelope {
        command: "landen",
        triple: None,
        payload: LandenPayload { max_gap, rows },
        tolerances: BTreeMap::from([("gap", LANDEN_TOL)]),
        status: if max_gap <= LANDEN_TOL { Status::Ok } else { Status::Fail },
    })
}

pub fn execute(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Classify { triple, format } => Ok(emit(cmd_classify(triple.parse()?)?, format)),
        Command::Verify { triple, grid, deep, format } => {
            let t = triple.parse()?;
            let grid = match grid {
                Some(g) => g,
                None => default_grid()?,
            };
            cmd_verify(t, grid, deep, format)
        }
        Command::Spectrum { triple, l, symmetry, axis, grid, count, format } => {
            let t = triple.parse()?;
            let grid = match grid {
                Some(g) => g,
                None => default_grid()?,
            };
            Ok(emit(cmd_spectrum(t, l, symmetry, axis, grid, count)?, format))
        }
        Command::Export { triple, nx, ny, format, axes, out } => cmd_export(triple.parse()?, nx, ny, format, &axes, out),
        Command::Table { format } => Ok(emit(cmd_table()?, format)),
        Command::Landen { points, k_max, format } => Ok(emit(cmd_landen(points, k_max)?, format)),
    }
}

/// Parses `args`, runs the command, writes its output and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(cli) {
        Ok(outcome) => {
            let mut stdout = io::stdout().lock();
            if stdout.write_all(&outcome.stdout).and_then(|_| stdout.flush()).is_err() {
                return EXIT_INPUT;
            }
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
