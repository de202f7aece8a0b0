//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 config error, 3 I/O error,
//! 4 divergence.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::config::RunConfig;
use crate::curve::uniform_grid;
use crate::error::AppError;
use crate::export::{
    coord_header, format_error_table, render_svg, write_csv, write_error_history, write_error_table, SvgPath,
};
use crate::pia::{iteration_spectrum, pia_init, pia_run, FitProblem, PiaState};
use crate::reproduce::{run_experiment, Experiment};
use crate::tp::verify_ntp_suite;

#[derive(Debug, Parser)]
#[command(name = "toric-bezier", version, about = "GT-Bernstein bases, total positivity checks and PIA curve fitting")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tabulate the rational basis on a uniform parameter grid.
    BasisEval {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 101)]
        grid: usize,
        /// Directory for basis_values.csv; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Randomized total-positivity check of the rational collocation matrices.
    TpCheck {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Directory for tp_report.csv.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit data points by progressive iterative approximation.
    PiaFit {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        tol: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
    /// Reproduce the circle or helix fitting experiment.
    Example {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        iterations: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 201)]
        grid: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Circle,
    Helix,
}

impl From<Which> for Experiment {
    fn from(w: Which) -> Self {
        match w {
            Which::Circle => Experiment::Circle,
            Which::Helix => Experiment::Helix,
        }
    }
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(command: &Command) -> Result<(), AppError> {
    match command {
        Command::BasisEval { config, grid, out } => cmd_basis_eval(&RunConfig::load(config)?, *grid, out.as_deref()),
        Command::TpCheck {
            config,
            trials,
            seed,
            out,
        } => cmd_tp_check(&RunConfig::load(config)?, *trials, *seed, out.as_deref()),
        Command::PiaFit {
            config,
            iterations,
            tol,
            out,
            grid,
        } => {
            let config = RunConfig::load(config)?;
            let out = out
                .clone()
                .or_else(|| config.out_dir.as_ref().map(PathBuf::from))
                .unwrap_or_else(|| PathBuf::from("out"));
            cmd_pia_fit(&config, *iterations, *tol, &out, *grid)
        }
        Command::Example {
            which,
            iterations,
            out,
            grid,
        } => {
            let experiment = Experiment::from(*which);
            let out = out
                .clone()
                .unwrap_or_else(|| Path::new("out").join(experiment.name()));
            cmd_example(experiment, *iterations, &out, *grid)
        }
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>, AppError> {
    fs::create_dir_all(dir)?;
    Ok(BufWriter::new(File::create(dir.join(name))?))
}

fn grid_for(lo: f64, hi: f64, count: usize) -> Result<Vec<f64>, AppError> {
    match count {
        0 => Err(AppError::Config("grid must have at least one point".into())),
        1 => Ok(vec![lo]),
        n => uniform_grid(lo, hi, n).map_err(|e| AppError::Config(e.to_string())),
    }
}

/// Rows `t, T_0(t), ..., T_n(t)` on a uniform grid (a single point sits at `a_0`).
pub fn basis_table(config: &RunConfig, grid: usize) -> Result<(Vec<String>, Vec<Vec<f64>>), AppError> {
    let ns = config.nodeset()?;
    let w = config.weights_for(&ns)?;
    let mut header = vec!["t".to_string()];
    header.extend((0..ns.len()).map(|i| format!("T{i}")));
    let rows = grid_for(ns.start(), ns.end(), grid)?
        .into_iter()
        .map(|t| {
            let values = ns.eval_rational(&w, t).map_err(|e| AppError::Other(e.to_string()))?;
            let mut row = vec![t];
            row.extend(values.values);
            Ok(row)
        })
        .collect::<Result<Vec<_>, AppError>>()?;
    Ok((header, rows))
}

pub fn cmd_basis_eval(config: &RunConfig, grid: usize, out: Option<&Path>) -> Result<(), AppError> {
    let (header, rows) = basis_table(config, grid)?;
    match out {
        Some(dir) => write_csv(create(dir, "basis_values.csv")?, &header, &rows),
        None => write_csv(io::stdout().lock(), &header, &rows),
    }
}

pub fn cmd_tp_check(config: &RunConfig, trials: usize, seed: u64, out: Option<&Path>) -> Result<(), AppError> {
    let ns = config.nodeset()?;
    let w = config.weights_for(&ns)?;
    if trials == 0 {
        return Err(AppError::Config("--trials must be at least 1".into()));
    }
    let report = verify_ntp_suite(&ns, &w, trials, seed).map_err(|e| AppError::Other(e.to_string()))?;

    println!(
        "tp-check: n = {}, {} trials, seed {}, method {}, relative tolerance {:e}",
        ns.degree(),
        trials,
        seed,
        report.method,
        report.tolerance
    );
    for case in crate::tp::BoundaryCase::ALL {
        let (total, failed) = report.case_counts(case);
        println!("  {:<9} {:>6} trials {:>6} failures", case.label(), total, failed);
    }
    if let Some(worst) = report.worst() {
        let wit = worst.report.witness.as_ref().expect("worst has a witness");
        println!(
            "  worst relative minor {:.3e} (trial {}, rows {:?}, cols {:?})",
            wit.value, worst.index, wit.rows, wit.cols
        );
    }
    println!("  failures: {}", report.failure_count());

    if let Some(dir) = out {
        let mut w = csv::Writer::from_writer(create(dir, "tp_report.csv")?);
        w.write_record([
            "trial",
            "case",
            "is_tp",
            "is_stp",
            "min_relative_minor",
            "witness_rows",
            "witness_cols",
        ])?;
        for t in &report.trials {
            let (value, rows, cols) = match &t.report.witness {
                Some(wit) => (wit.value, join(&wit.rows), join(&wit.cols)),
                None => (f64::NAN, String::new(), String::new()),
            };
            w.write_record([
                t.index.to_string(),
                t.case.label().to_string(),
                t.report.is_tp.to_string(),
                t.report.is_stp.to_string(),
                crate::export::fmt_f64(value),
                rows,
                cols,
            ])?;
        }
        w.flush()?;
    }

    if report.all_passed() {
        Ok(())
    } else {
        Err(AppError::Verification(format!(
            "{} of {} trials failed the total positivity check",
            report.failure_count(),
            trials
        )))
    }
}

fn join(idx: &[usize]) -> String {
    idx.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

/// Writes control points, error history and a sampled polyline (plus SVG in 2D).
fn write_fit_outputs(
    dir: &Path,
    prefix: &str,
    problem: &FitProblem,
    state: &PiaState,
    grid: usize,
) -> Result<Vec<Vec<f64>>, AppError> {
    let dim = state.control.dim();
    let curve = problem.curve(&state.control)?;

    let mut header = vec!["index".to_string()];
    header.extend(coord_header(dim));
    let rows: Vec<Vec<f64>> = state
        .control
        .points()
        .enumerate()
        .map(|(i, p)| std::iter::once(i as f64).chain(p.iter().copied()).collect())
        .collect();
    write_csv(create(dir, &format!("{prefix}control_points.csv"))?, &header, &rows)?;
    write_error_history(create(dir, &format!("{prefix}error_history.csv"))?, &state.error_history)?;

    let ts = grid_for(problem.nodeset().start(), problem.nodeset().end(), grid.max(2))?;
    let mut polyline = Vec::with_capacity(ts.len());
    let mut rows = Vec::with_capacity(ts.len());
    for t in ts {
        let p = curve.eval(t).map_err(|e| AppError::Other(e.to_string()))?;
        rows.push(std::iter::once(t).chain(p.iter().copied()).collect());
        polyline.push(p);
    }
    let mut header = vec!["t".to_string()];
    header.extend(coord_header(dim));
    write_csv(create(dir, &format!("{prefix}curve.csv"))?, &header, &rows)?;
    Ok(polyline)
}

pub fn cmd_pia_fit(
    config: &RunConfig,
    iterations: Option<usize>,
    tol: Option<f64>,
    out: &Path,
    grid: usize,
) -> Result<(), AppError> {
    let problem = config.fit_problem()?;
    let max_iter = iterations.unwrap_or_else(|| config.max_iter_or_default());
    let tol = tol.unwrap_or_else(|| config.tol_or_default());
    if max_iter == 0 {
        return Err(AppError::Config("--iterations must be at least 1".into()));
    }
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(AppError::Config(format!("--tol must be non-negative, got {tol}")));
    }
    let state = pia_run(&problem, max_iter, tol)?;
    let polyline = write_fit_outputs(out, "", &problem, &state, grid)?;
    if state.control.dim() == 2 {
        let svg = render_svg(
            &[
                SvgPath {
                    label: "control polygon".into(),
                    points: state.control.to_points(),
                    color: "gray".into(),
                    dashed: true,
                },
                SvgPath {
                    label: "fitted curve".into(),
                    points: polyline,
                    color: "red".into(),
                    dashed: false,
                },
            ],
            &problem.data().to_points(),
        );
        fs::write(out.join("curve.svg"), svg)?;
    }
    println!(
        "pia-fit: {} iterations, final error {:.3e}, spectral radius of I - C {:.6}",
        state.iteration,
        state.last_error().unwrap_or(0.0),
        iteration_spectrum(&problem)
    );
    Ok(())
}

const COLORS: [&str; 3] = ["red", "blue", "green"];

pub fn cmd_example(experiment: Experiment, iterations: Option<usize>, out: &Path, grid: usize) -> Result<(), AppError> {
    let iterations = iterations.unwrap_or_else(|| experiment.default_iterations());
    let outcome = run_experiment(experiment, iterations)?;

    for (label, problem, state) in &outcome.runs {
        let config = RunConfig::for_fit(problem, iterations.max(1), 0.0);
        fs::create_dir_all(out)?;
        fs::write(out.join(format!("config_{label}.json")), config.to_json_string() + "\n")?;
        write_fit_outputs(out, &format!("{label}_"), problem, state, grid)?;
    }
    write_error_table(create(out, "error_table.csv")?, &outcome.table)?;

    if experiment == Experiment::Circle {
        let mut stages = vec![0];
        stages.extend(experiment.checkpoints().iter().copied().filter(|&c| c <= iterations));
        for stage in stages {
            let mut paths = Vec::new();
            for (k, (label, problem, _)) in outcome.runs.iter().enumerate() {
                let state = if stage == 0 {
                    pia_init(problem)
                } else {
                    pia_run(problem, stage, 0.0)?
                };
                let curve = problem.curve(&state.control)?;
                let points = curve
                    .sample_polyline(grid.max(2))
                    .map_err(|e| AppError::Other(e.to_string()))?;
                paths.push(SvgPath {
                    label: label.clone(),
                    points,
                    color: COLORS[k % COLORS.len()].to_string(),
                    dashed: k > 0,
                });
            }
            let data = experiment.data();
            let name = if stage == 0 {
                "circle_initial.svg".to_string()
            } else {
                format!("circle_iter_{stage}.svg")
            };
            fs::write(out.join(name), render_svg(&paths, &data))?;
        }
    }

    println!("{} example, {} iterations", experiment.name(), iterations);
    print!("{}", format_error_table(&outcome.table));
    for (label, problem, _) in &outcome.runs {
        println!("  spectral radius of I - C ({label}): {:.12}", iteration_spectrum(problem));
    }
    Ok(())
}
