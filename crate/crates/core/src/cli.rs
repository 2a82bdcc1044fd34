//! The `diophlab` command line.
//!
//! [`run`] parses arguments, executes one subcommand and returns the process
//! exit code: 0 on success, 2 for parse and usage errors, 3 when a work or
//! memory budget would be exceeded, 4 when a requested integer transform does
//! not exist, and 1 for anything else. JSON output never contains timings
//! unless `--timing` is passed, so identical invocations print identical bytes.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::asymptotics::{exponent_report, ExponentReport, PredictionOptions, ReportConfig};
use crate::counting::{
    applicable_engines, choose_engine, count_partitioned, count_with, enumerate_solutions, Budget, CountMode, Engine,
    Hypercube, DEFAULT_MEMORY_BUDGET, DEFAULT_WORK_BUDGET,
};
use crate::error::{Error, Result};
use crate::families::{assertion2_check, assertion3_lower_bound, unit_hyperboloid_lines, SplitEquation};
use crate::parse::{parse_equation, render};
use crate::poly::{classify_with, Assumptions, Polynomial};
use crate::transforms::{
    apply_transform, check_integer_translation, compose_rotations, deformation_matrix, diagonalize_binary_quadratic,
    homothety_case, pythagorean_rotation, verify_count_preservation, Branch, DiagonalOutcome, TransformMatrix,
};

/// Environment variable holding the default work budget.
pub const BUDGET_ENV: &str = "DIOPHLAB_BUDGET";

pub const EXIT_OK: i32 = 0;
pub const EXIT_OTHER: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_TRANSFORM: i32 = 4;

/// Exit code for a library error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::InvalidFitInput(_) | Error::InvalidArgument(_) | Error::InvalidSliceVars(_) => {
            EXIT_USAGE
        }
        Error::BudgetExceeded { .. } | Error::MemoryBudgetExceeded { .. } => EXIT_BUDGET,
        Error::NoIntegerHomothety { .. }
        | Error::InvalidRotation { .. }
        | Error::InvalidAxis { .. }
        | Error::SingularMatrix
        | Error::InvalidMatrix(_) => EXIT_TRANSFORM,
        _ => EXIT_OTHER,
    }
}

#[derive(Debug, Parser)]
#[command(name = "diophlab", version, about = "Exact counts and integer transforms for Diophantine equations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Integer,
    Natural,
}

impl From<ModeArg> for CountMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Integer => CountMode::IntegerBox,
            ModeArg::Natural => CountMode::NaturalOrthant,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Auto,
    Brute,
    Sliced,
    Mitm,
    Explicit,
}

impl EngineArg {
    fn engine(self) -> Option<Engine> {
        match self {
            EngineArg::Auto => None,
            EngineArg::Brute => Some(Engine::Brute),
            EngineArg::Sliced => Some(Engine::Sliced),
            EngineArg::Mitm => Some(Engine::Mitm),
            EngineArg::Explicit => Some(Engine::Explicit),
        }
    }
}

#[derive(Debug, Clone, Args)]
struct BudgetArgs {
    /// Maximum number of visited points; defaults to $DIOPHLAB_BUDGET or 1e9.
    #[arg(long)]
    budget: Option<u64>,
    /// Maximum number of hash-table entries for the meet-in-the-middle engine.
    #[arg(long, default_value_t = DEFAULT_MEMORY_BUDGET)]
    memory: u64,
}

impl BudgetArgs {
    fn resolve(&self) -> Result<Budget> {
        let work = match self.budget {
            Some(b) => b,
            None => match std::env::var(BUDGET_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("{BUDGET_ENV}='{v}' is not a positive integer")))?,
                Err(_) => DEFAULT_WORK_BUDGET,
            },
        };
        if work == 0 || self.memory == 0 {
            return Err(Error::InvalidArgument("budgets must be positive".into()));
        }
        Ok(Budget { work, memory: self.memory })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count integer solutions in a box.
    Count {
        #[arg(long)]
        eq: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Integer)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        /// Split the outermost range across this many parallel chunks.
        #[arg(long, default_value_t = 1)]
        chunks: usize,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
        /// Include wall-clock time in JSON and CSV output.
        #[arg(long)]
        timing: bool,
    },
    /// Fit the growth exponent over several radii and compare with the prediction.
    Fit {
        #[arg(long)]
        eq: String,
        /// Strictly increasing radii, comma separated.
        #[arg(long = "N", value_delimiter = ',', num_args = 1..)]
        n: Vec<u64>,
        #[arg(long, value_enum, default_value_t = ModeArg::Integer)]
        mode: ModeArg,
        #[arg(long, value_enum, default_value_t = EngineArg::Auto)]
        engine: EngineArg,
        #[arg(long, default_value_t = crate::asymptotics::DEFAULT_SLACK)]
        slack: f64,
        /// Treat the equation as irreducible.
        #[arg(long)]
        irreducible: bool,
        /// Assert a genus >= 1 curve on a coordinate plane (implies --irreducible).
        #[arg(long)]
        genus_curve: bool,
        /// Variable count from which the large-k cap applies (default 2^degree).
        #[arg(long)]
        large_k_threshold: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Show the structural class and the predicted exponent.
    Classify {
        #[arg(long)]
        eq: String,
        #[arg(long, value_enum, default_value_t = ModeArg::Integer)]
        mode: ModeArg,
        #[arg(long)]
        irreducible: bool,
        #[arg(long)]
        genus_curve: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// List solutions in lexicographic order.
    Enumerate {
        #[arg(long)]
        eq: String,
        #[arg(long = "N")]
        n: u64,
        #[arg(long, value_enum, default_value_t = ModeArg::Integer)]
        mode: ModeArg,
        #[arg(long, default_value_t = 100)]
        limit: usize,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Rotations, homotheties and substitutions.
    #[command(subcommand)]
    Transform(TransformCommand),
    /// Explicit solution families.
    #[command(subcommand)]
    Witness(WitnessCommand),
    /// Cross-check all engines on random equations.
    Check {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        cases: usize,
        /// Largest radius tried.
        #[arg(long = "N", default_value_t = 6)]
        n: u64,
    },
}

#[derive(Debug, Clone, Args)]
struct MatrixSource {
    /// Path to a matrix JSON file.
    #[arg(long, conflicts_with = "matrix_json")]
    matrix: Option<PathBuf>,
    /// Matrix JSON given inline.
    #[arg(long)]
    matrix_json: Option<String>,
}

impl MatrixSource {
    fn load(&self) -> Result<TransformMatrix> {
        let text = match (&self.matrix, &self.matrix_json) {
            (Some(path), _) => std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?,
            (None, Some(text)) => text.clone(),
            (None, None) => return Err(Error::InvalidArgument("one of --matrix or --matrix-json is required".into())),
        };
        TransformMatrix::parse_json(&text)
    }
}

#[derive(Debug, Subcommand)]
enum TransformCommand {
    /// Rational rotation from the Pythagorean triple of (u, v).
    Rotate {
        #[arg(long)]
        u: u64,
        #[arg(long)]
        v: u64,
    },
    /// Product of Pythagorean rotations embedded in axis pairs.
    Compose {
        #[arg(long)]
        size: usize,
        /// Rotation as `i,j,u,v` (0-based axes); repeat for a product.
        #[arg(long = "rotation")]
        rotations: Vec<String>,
    },
    /// Homothety case of a matrix.
    Classify {
        #[command(flatten)]
        source: MatrixSource,
    },
    /// Integer deformation matrix `lambda * M`.
    Deform {
        #[command(flatten)]
        source: MatrixSource,
    },
    /// Diagonalize `a11 x^2 + 2 a12 x y + a22 y^2`.
    Diagonalize {
        #[arg(long, allow_hyphen_values = true)]
        a11: i64,
        #[arg(long, allow_hyphen_values = true)]
        a12: i64,
        #[arg(long, allow_hyphen_values = true)]
        a22: i64,
        #[arg(long, default_value = "plus")]
        branch: String,
    },
    /// Substitute an integer affine map into an equation.
    Apply {
        #[arg(long)]
        eq: String,
        #[command(flatten)]
        source: MatrixSource,
        /// Keep the common factor of the coefficients.
        #[arg(long)]
        no_normalize: bool,
    },
    /// Check that solutions correspond under an integer affine map.
    VerifyPreservation {
        #[arg(long)]
        eq: String,
        #[command(flatten)]
        source: MatrixSource,
        #[arg(long = "N")]
        n: u64,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Debug, Subcommand)]
enum WitnessCommand {
    /// The four lines on x1^2 + x2^2 - x3^2 - 1 = 0.
    Hyperboloid {
        #[arg(long = "N")]
        n: u64,
        /// Include the points themselves.
        #[arg(long)]
        points: bool,
    },
    /// Integer x_n with c x_n^m + F0 = 0 for `F(x_1..x_{n-1}) + c x_n^m + F0`.
    Trivial {
        #[command(flatten)]
        split: SplitArgs,
    },
    /// Scaled copies of a nontrivial zero of the homogeneous part.
    Scaled {
        #[command(flatten)]
        split: SplitArgs,
        /// Nontrivial zero of the form, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        nontrivial: Vec<i64>,
        #[arg(long, allow_hyphen_values = true)]
        xn: i64,
        #[arg(long = "N")]
        n: u64,
        #[arg(long)]
        points: bool,
    },
}

#[derive(Debug, Clone, Args)]
struct SplitArgs {
    /// Homogeneous form in x1..x_{n-1}.
    #[arg(long)]
    form: String,
    /// Coefficient of the last variable.
    #[arg(long, allow_hyphen_values = true)]
    leading: i128,
    #[arg(long, allow_hyphen_values = true)]
    constant: i128,
    #[arg(long)]
    degree: u32,
}

impl SplitArgs {
    fn equation(&self) -> Result<SplitEquation> {
        SplitEquation::new(parse_equation(&self.form)?, self.leading, self.constant, self.degree)
    }
}

/// Runs the command line with `args` (including the program name), writing
/// results to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if let Error::Parse(p) = &e {
                let _ = writeln!(err, "at position {}", p.position);
            }
            exit_code(&e)
        }
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    writeln!(out, "{text}").map_err(io_err)
}

fn emit_table(out: &mut dyn Write, rows: &[(&str, String)]) -> Result<()> {
    let width = rows.iter().map(|r| r.0.len()).max().unwrap_or(0);
    for (k, v) in rows {
        writeln!(out, "{k:<width$}  {v}").map_err(io_err)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct CountReport {
    equation: String,
    count: u64,
    radius: u64,
    mode: CountMode,
    engine: Engine,
    #[serde(skip_serializing_if = "Option::is_none")]
    elapsed_ms: Option<f64>,
}

fn execute(cmd: Command, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        Command::Count { eq, n, mode, engine, chunks, budget, format, timing } => {
            let p = parse_equation(&eq)?;
            let budget = budget.resolve()?;
            let cube = Hypercube { radius: n, mode: mode.into() };
            let engine = engine.engine().unwrap_or_else(|| choose_engine(&p));
            let r = if chunks > 1 {
                count_partitioned(&p, cube, engine, chunks, &budget)?
            } else {
                count_with(&p, cube, engine, &budget)?
            };
            let ms = r.elapsed.as_secs_f64() * 1e3;
            let report = CountReport {
                equation: render(&p),
                count: r.count,
                radius: n,
                mode: r.mode,
                engine: r.engine,
                elapsed_ms: timing.then_some(ms),
            };
            match format {
                Format::Json => emit_json(out, &report)?,
                Format::Csv => {
                    let header = if timing { "equation,mode,radius,engine,count,elapsed_ms" } else { "equation,mode,radius,engine,count" };
                    writeln!(out, "{header}").map_err(io_err)?;
                    let mut line = format!("\"{}\",{},{},{},{}", report.equation, r.mode, n, r.engine, r.count);
                    if timing {
                        line.push_str(&format!(",{ms:.3}"));
                    }
                    writeln!(out, "{line}").map_err(io_err)?;
                }
                Format::Table => emit_table(
                    out,
                    &[
                        ("equation", report.equation.clone()),
                        ("mode", r.mode.to_string()),
                        ("radius", n.to_string()),
                        ("engine", r.engine.to_string()),
                        ("count", r.count.to_string()),
                        ("elapsed", format!("{ms:.3} ms")),
                    ],
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Fit {
            eq,
            n,
            mode,
            engine,
            slack,
            irreducible,
            genus_curve,
            large_k_threshold,
            budget,
            format,
        } => {
            let p = parse_equation(&eq)?;
            let budget = budget.resolve()?;
            let cfg = ReportConfig {
                mode: mode.into(),
                radii: n,
                slack,
                engine: engine.engine(),
                assumptions: Assumptions { irreducible: irreducible || genus_curve, genus_curve },
                options: PredictionOptions { large_k_threshold },
            };
            let report = exponent_report(&p, &cfg, &budget)?;
            write_fit(out, &report, format)?;
            Ok(EXIT_OK)
        }
        Command::Classify { eq, mode, irreducible, genus_curve, format } => {
            let p = parse_equation(&eq)?;
            let class = classify_with(&p, Assumptions { irreducible: irreducible || genus_curve, genus_curve })?;
            let prediction = crate::asymptotics::predicted_exponent_with(&class, mode.into(), PredictionOptions::default())?;
            #[derive(Serialize)]
            struct ClassReport<'a> {
                equation: String,
                class: &'a crate::poly::EquationClass,
                prediction: &'a crate::asymptotics::ExponentPrediction,
                engines: Vec<Engine>,
            }
            let report = ClassReport { equation: render(&p), class: &class, prediction: &prediction, engines: applicable_engines(&p) };
            match format {
                Format::Json | Format::Csv => emit_json(out, &report)?,
                Format::Table => emit_table(
                    out,
                    &[
                        ("equation", report.equation.clone()),
                        ("class", serde_json::to_string(&class.kind).unwrap_or_default()),
                        ("degree", class.degree.to_string()),
                        ("variables", class.var_count.to_string()),
                        ("positive", class.pos_count.to_string()),
                        ("predicted", prediction.exponent.to_string()),
                        ("source", prediction.source.to_string()),
                        ("note", prediction.applicability_note.clone()),
                    ],
                )?,
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate { eq, n, mode, limit, budget } => {
            let p = parse_equation(&eq)?;
            let budget = budget.resolve()?;
            let points: Vec<Vec<i64>> =
                enumerate_solutions(&p, Hypercube { radius: n, mode: mode.into() }, limit, &budget)?.collect();
            writeln!(out, "{}", crate::families::witnesses_to_json(&points)).map_err(io_err)?;
            Ok(EXIT_OK)
        }
        Command::Transform(t) => transform(t, out),
        Command::Witness(w) => witness(w, out),
        Command::Check { seed, cases, n } => check(seed, cases, n, out),
    }
}

fn write_fit(out: &mut dyn Write, report: &ExponentReport, format: Format) -> Result<()> {
    let alpha = report.alpha.map_or("none".to_string(), |a| format!("{a:.6}"));
    match format {
        Format::Json => emit_json(out, report),
        Format::Csv => {
            writeln!(out, "N,count").map_err(io_err)?;
            for (n, c) in &report.points {
                writeln!(out, "{n},{c}").map_err(io_err)?;
            }
            Ok(())
        }
        Format::Table => {
            let verdict = serde_json::to_value(report.verdict).ok().and_then(|v| v.as_str().map(String::from));
            emit_table(
                out,
                &[
                    ("equation", report.equation.clone()),
                    ("mode", report.mode.to_string()),
                    ("predicted", report.predicted.to_string()),
                    ("source", report.source_citation.to_string()),
                    ("alpha", alpha),
                    ("verdict", verdict.unwrap_or_default()),
                    ("message", report.message.clone()),
                ],
            )?;
            writeln!(out).map_err(io_err)?;
            let rows: Vec<(String, String)> = report.points.iter().map(|(n, c)| (n.to_string(), c.to_string())).collect();
            let w = rows.iter().map(|r| r.0.len()).max().unwrap_or(1).max(1);
            writeln!(out, "{:>w$}  count", "N").map_err(io_err)?;
            for (n, c) in rows {
                writeln!(out, "{n:>w$}  {c}").map_err(io_err)?;
            }
            Ok(())
        }
    }
}

fn parse_rotation_spec(spec: &str) -> Result<((usize, usize), u64, u64)> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    let bad = || Error::InvalidArgument(format!("rotation '{spec}' must be i,j,u,v"));
    if parts.len() != 4 {
        return Err(bad());
    }
    let i = parts[0].parse().map_err(|_| bad())?;
    let j = parts[1].parse().map_err(|_| bad())?;
    let u = parts[2].parse().map_err(|_| bad())?;
    let v = parts[3].parse().map_err(|_| bad())?;
    Ok(((i, j), u, v))
}

fn transform(cmd: TransformCommand, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        TransformCommand::Rotate { u, v } => {
            let m = pythagorean_rotation(u, v)?;
            emit_json(out, &m)?;
        }
        TransformCommand::Compose { size, rotations } => {
            let blocks = rotations
                .iter()
                .map(|s| {
                    let (axes, u, v) = parse_rotation_spec(s)?;
                    Ok((axes, pythagorean_rotation(u, v)?))
                })
                .collect::<Result<Vec<_>>>()?;
            let m = compose_rotations(&blocks, size)?;
            #[derive(Serialize)]
            struct Composed {
                matrix: TransformMatrix,
                proper_rotation: bool,
            }
            let proper_rotation = m.is_proper_rotation()?;
            emit_json(out, &Composed { matrix: m, proper_rotation })?;
        }
        TransformCommand::Classify { source } => {
            let m = source.load()?;
            #[derive(Serialize)]
            struct Classified {
                #[serde(flatten)]
                case: crate::transforms::HomothetyCase,
                integer_translation: bool,
                orthogonal: Option<bool>,
            }
            let orthogonal = m.is_orthogonal().ok();
            emit_json(
                out,
                &Classified { case: homothety_case(&m), integer_translation: check_integer_translation(&m), orthogonal },
            )?;
        }
        TransformCommand::Deform { source } => {
            let m = source.load()?;
            let case = homothety_case(&m);
            let d = deformation_matrix(&m, &case)?;
            #[derive(Serialize)]
            struct Deformed {
                case_id: u8,
                #[serde(flatten)]
                deformation: crate::transforms::Deformation,
                integer_translation: bool,
            }
            emit_json(
                out,
                &Deformed { case_id: case.case_id, deformation: d, integer_translation: check_integer_translation(&m) },
            )?;
        }
        TransformCommand::Diagonalize { a11, a12, a22, branch } => {
            let branch: Branch = branch.parse()?;
            let d = diagonalize_binary_quadratic(a11, a12, a22, branch)?;
            emit_json(out, &d)?;
            if matches!(d.outcome, DiagonalOutcome::NoIntegerHomothety { .. }) {
                return Ok(EXIT_TRANSFORM);
            }
        }
        TransformCommand::Apply { eq, source, no_normalize } => {
            let p = parse_equation(&eq)?;
            let map = source.load()?.to_integer_affine()?;
            let p = p.with_var_count(map.size().max(p.var_count()))?;
            let t = apply_transform(&p, &map, !no_normalize)?;
            #[derive(Serialize)]
            struct Applied {
                original: String,
                transformed: String,
                content_divisor: i128,
            }
            emit_json(
                out,
                &Applied { original: render(&p), transformed: render(&t.polynomial), content_divisor: t.content_divisor },
            )?;
        }
        TransformCommand::VerifyPreservation { eq, source, n, budget } => {
            let p = parse_equation(&eq)?;
            let map = source.load()?.to_integer_affine()?;
            let p = p.with_var_count(map.size().max(p.var_count()))?;
            let report = verify_count_preservation(&p, &map, Hypercube::integer(n), &budget.resolve()?)?;
            emit_json(out, &report)?;
            if report.violations() > 0 || !report.inflation_bound_holds {
                return Ok(EXIT_OTHER);
            }
        }
    }
    Ok(EXIT_OK)
}

fn witness(cmd: WitnessCommand, out: &mut dyn Write) -> Result<i32> {
    match cmd {
        WitnessCommand::Hyperboloid { n, points } => {
            let f = unit_hyperboloid_lines(n)?;
            #[derive(Serialize)]
            struct Lines<'a> {
                radius: u64,
                distinct: u64,
                with_multiplicity: u64,
                #[serde(skip_serializing_if = "Option::is_none")]
                points: Option<&'a [Vec<i64>]>,
            }
            emit_json(
                out,
                &Lines {
                    radius: n,
                    distinct: f.distinct(),
                    with_multiplicity: f.with_multiplicity,
                    points: points.then_some(&f.points[..]),
                },
            )?;
        }
        WitnessCommand::Trivial { split } => {
            let eq = split.equation()?;
            let w = assertion2_check(&eq)?;
            #[derive(Serialize)]
            struct Trivial {
                equation: String,
                witness: Option<crate::families::TrivialWitness>,
            }
            emit_json(out, &Trivial { equation: render(&eq.polynomial()?), witness: w })?;
        }
        WitnessCommand::Scaled { split, nontrivial, xn, n, points } => {
            let eq = split.equation()?;
            let mut w = assertion3_lower_bound(&eq, &nontrivial, xn, n)?;
            #[derive(Serialize)]
            struct Scaled {
                equation: String,
                count: u64,
                #[serde(flatten)]
                witnesses: crate::families::ScaledWitnesses,
            }
            let count = w.count();
            if !points {
                w.witnesses.clear();
            }
            emit_json(out, &Scaled { equation: render(&eq.polynomial()?), count, witnesses: w })?;
        }
    }
    Ok(EXIT_OK)
}

/// Random separable or lightly coupled equation with small coefficients.
fn random_equation(rng: &mut ChaCha8Rng) -> Polynomial {
    let k = rng.gen_range(2..=4usize);
    let mut terms = Vec::new();
    for i in 0..k {
        let degree = rng.gen_range(1..=3u32);
        let mut coeff = rng.gen_range(-3..=3i128);
        if coeff == 0 {
            coeff = 1;
        }
        let mut e = vec![0; k];
        e[i] = degree;
        terms.push((coeff, e));
    }
    if rng.gen_bool(0.3) {
        let (a, b) = (rng.gen_range(0..k), rng.gen_range(0..k));
        let mut e = vec![0; k];
        e[a] += 1;
        e[b] += 1;
        terms.push((rng.gen_range(-2..=2i128), e));
    }
    terms.push((rng.gen_range(-10..=10i128), vec![0; k]));
    Polynomial::from_terms(k, terms).expect("small coefficients")
}

#[derive(Serialize)]
struct Disagreement {
    equation: String,
    mode: CountMode,
    radius: u64,
    counts: Vec<(Engine, u64)>,
}

#[derive(Serialize)]
struct CheckReport {
    seed: u64,
    cases: usize,
    comparisons: u64,
    disagreements: Vec<Disagreement>,
}

fn check(seed: u64, cases: usize, max_radius: u64, out: &mut dyn Write) -> Result<i32> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = Budget::default();
    let mut report = CheckReport { seed, cases, comparisons: 0, disagreements: Vec::new() };
    for _ in 0..cases {
        let p = random_equation(&mut rng);
        if p.is_zero() {
            continue;
        }
        let radius = rng.gen_range(1..=max_radius.max(1));
        for mode in [CountMode::IntegerBox, CountMode::NaturalOrthant] {
            let cube = Hypercube { radius, mode };
            let counts = applicable_engines(&p)
                .into_iter()
                .map(|e| Ok((e, count_with(&p, cube, e, &budget)?.count)))
                .collect::<Result<Vec<_>>>()?;
            report.comparisons += counts.len() as u64 - 1;
            if counts.windows(2).any(|w| w[0].1 != w[1].1) {
                report.disagreements.push(Disagreement { equation: render(&p), mode, radius, counts });
            }
        }
    }
    emit_json(out, &report)?;
    Ok(if report.disagreements.is_empty() { EXIT_OK } else { EXIT_OTHER })
}
