use std::path::Path;

use centroaffine_core::curves::{centro_affine_curvature, check_zero_convex, euclidean_curvature, evaluate_jet, CurveSpec};
use centroaffine_core::ellipse::{CausalClass, CausalKind, TimeOrientation};
use centroaffine_core::linalg::wedge;
use centroaffine_core::osculation::{centro_affine_length, density_on_path, nullity_report, osculating_path, Tolerances};
use centroaffine_core::path::{MatrixPath, SampledPath, Transformed};
use centroaffine_core::reconstruction::{reconstruct, ReconstructOptions};
use centroaffine_core::{Error, Grid, Mat2};
use clap::ValueEnum;
use serde_json::Value;

use crate::check::run_suite;
use crate::output::{Format, Report};
use crate::schema::{load_curve, read_text, CurveFile, PathRecord};
use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Command {
    Invariants,
    Osculate,
    Length,
    Reconstruct,
    Check,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    /// A file path or `builtin:<family>[:k=v,...]`.
    pub input: Option<String>,
    pub grid: Option<Grid>,
    pub transform: Option<Mat2>,
    pub tol_null: f64,
    pub tol_osculation: f64,
    pub tol_quadrature: f64,
    pub format: Format,
    pub seed: u64,
    pub only: Option<String>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        let t = Tolerances::default();
        RunConfig {
            command,
            input: None,
            grid: None,
            transform: None,
            tol_null: t.null,
            tol_osculation: ReconstructOptions::default().osculation_tol,
            tol_quadrature: t.quadrature,
            format: Format::Json,
            seed: 0,
            only: None,
        }
    }

    fn validate(&self) -> CliResult<()> {
        for (name, v) in [("--tol-null", self.tol_null), ("--tol-osc", self.tol_osculation), ("--tol-quad", self.tol_quadrature)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(CliError::Usage(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }

    fn tolerances(&self) -> Tolerances {
        Tolerances { null: self.tol_null, quadrature: self.tol_quadrature, ..Tolerances::default() }
    }

    fn input(&self) -> CliResult<&str> {
        self.input.as_deref().ok_or_else(|| CliError::Usage("--input is required".into()))
    }
}

pub const DEFAULT_GRID: (f64, f64, usize) = (-1.0, 1.0, 101);

/// Clearance from the ends of a sampled curve at which every derived
/// quantity, including the osculating-path acceleration, is available.
const SAMPLED_CLEARANCE: usize = 6;

fn default_grid(curve: &CurveSpec) -> CliResult<Grid> {
    Ok(match curve.as_sampled() {
        Some(s) => {
            let g = s.grid();
            if g.n < 2 * SAMPLED_CLEARANCE + 9 {
                return Err(CliError::Math(Error::InsufficientSamples { t: g.t_min }));
            }
            Grid::new(g.node(SAMPLED_CLEARANCE), g.node(g.n - 1 - SAMPLED_CLEARANCE), g.n - 2 * SAMPLED_CLEARANCE)?
        }
        None => Grid::new(DEFAULT_GRID.0, DEFAULT_GRID.1, DEFAULT_GRID.2)?,
    })
}

fn load_config_curve(config: &RunConfig) -> CliResult<(CurveSpec, Grid)> {
    let mut curve = load_curve(config.input()?)?;
    if let Some(g) = config.transform {
        curve = curve.transformed(g)?;
    }
    let grid = match config.grid {
        Some(g) => g,
        None => default_grid(&curve)?,
    };
    Ok((curve, grid))
}

fn curve_label(curve: &CurveSpec) -> String {
    match curve {
        CurveSpec::Builtin { family, .. } => family.name().to_string(),
        CurveSpec::Sampled(_) => "sampled".into(),
        CurveSpec::Transformed { base, .. } => format!("transformed {}", curve_label(base)),
        CurveSpec::Reparametrized { base, .. } => format!("reparametrized {}", curve_label(base)),
    }
}

fn require_zero_convex(curve: &CurveSpec, nodes: &[f64]) -> CliResult<(f64, f64)> {
    let report = check_zero_convex(curve, nodes, 0.0)?;
    if let Some(t) = report.offending {
        return Err(Error::NotZeroConvex { t }.into());
    }
    Ok((report.min_wedge_pos_vel, report.min_wedge_vel_acc))
}

pub fn cmd_invariants(config: &RunConfig) -> CliResult<Report> {
    let (curve, grid) = load_config_curve(config)?;
    let nodes = grid.to_vec();
    let (m1, m2) = require_zero_convex(&curve, &nodes)?;
    let path = osculating_path(&curve, &nodes)?;
    let tol = config.tolerances();
    let mut report = Report::new(
        "invariants",
        vec!["t", "x", "y", "kappa", "euclidean_curvature", "density", "vertex", "wedge_pos_vel", "wedge_vel_acc"],
    );
    report.summary("curve", curve_label(&curve));
    report.summary("points", nodes.len());
    report.summary("min_wedge_pos_vel", m1);
    report.summary("min_wedge_vel_acc", m2);
    for &t in &nodes {
        let j = evaluate_jet(&curve, t, 2)?;
        let d = density_on_path(&path, t, &tol)?;
        report.row(vec![
            t.into(),
            j.p.x.into(),
            j.p.y.into(),
            centro_affine_curvature(&curve, t)?.into(),
            euclidean_curvature(&curve, t)?.into(),
            d.value.into(),
            d.vertex.into(),
            wedge(j.p, j.d1).into(),
            wedge(j.d1, j.d2).into(),
        ]);
    }
    Ok(report)
}

fn orientation_label(c: &CausalClass) -> &'static str {
    if c.is_degenerate() {
        return "degenerate";
    }
    match c.time_orientation {
        TimeOrientation::Future => "future",
        TimeOrientation::Past => "past",
        TimeOrientation::NotApplicable => "none",
    }
}

fn kind_label(k: CausalKind) -> &'static str {
    match k {
        CausalKind::Spatial => "spatial",
        CausalKind::Null => "null",
        CausalKind::Temporal => "temporal",
    }
}

pub fn cmd_osculate(config: &RunConfig) -> CliResult<Report> {
    let (curve, grid) = load_config_curve(config)?;
    let nodes = grid.to_vec();
    require_zero_convex(&curve, &nodes)?;
    let path = osculating_path(&curve, &nodes)?;
    let tol = config.tolerances();
    let rep = nullity_report(&path, &nodes, &tol)?;
    let mut report = Report::new(
        "osculate",
        vec!["t", "a11", "a12", "a22", "nullity_residual", "accel", "kind", "orientation", "vertex"],
    );
    report.summary("curve", curve_label(&curve));
    report.summary("points", nodes.len());
    report.summary("max_nullity_residual", rep.max_residual);
    report.summary("tol_null", config.tol_null);
    report.summary("vertices", rep.vertex_count());
    let mut records = Vec::with_capacity(nodes.len());
    for p in &rep.points {
        let a = path.jet(p.t)?.value;
        records.push(PathRecord::new(p.t, a));
        report.row(vec![
            p.t.into(),
            a.a11.into(),
            a.a12.into(),
            a.a22.into(),
            p.residual.into(),
            p.accel.into(),
            kind_label(p.class.kind).into(),
            orientation_label(&p.class).into(),
            p.vertex.into(),
        ]);
    }
    if rep.max_residual > config.tol_null {
        report.warnings.push(format!("nullity residual {:e} exceeds tolerance {:e}", rep.max_residual, config.tol_null));
    }
    report.attachments.push(("path", serde_json::to_value(&records).expect("records serialize")));
    Ok(report)
}

pub fn cmd_length(config: &RunConfig) -> CliResult<Report> {
    let (curve, grid) = load_config_curve(config)?;
    let nodes = grid.to_vec();
    require_zero_convex(&curve, &nodes)?;
    let tol = config.tolerances();
    let len = centro_affine_length(&curve, grid.t_min, grid.t_max, &tol)?;
    let path = osculating_path(&curve, &nodes)?;
    let mut report = Report::new("length", vec!["t", "density", "vertex"]);
    report.summary("curve", curve_label(&curve));
    report.summary("t_min", grid.t_min);
    report.summary("t_max", grid.t_max);
    report.summary("length", len.length);
    report.summary("error_estimate", len.error_estimate);
    report.summary("intervals", len.intervals);
    report.summary("vertex_crossing", len.vertex_crossing);
    report.summary("converged", len.converged);
    for &t in &nodes {
        let d = density_on_path(&path, t, &tol)?;
        report.row(vec![t.into(), d.value.into(), d.vertex.into()]);
    }
    if len.vertex_crossing {
        report.warnings.push("vertex-crossing: the window contains a zero of the centro-affine curvature".into());
    }
    if !len.converged {
        report.warnings.push(format!("quadrature error estimate {:e} above tolerance", len.error_estimate));
    }
    Ok(report)
}

/// The reconstruction input: a matrix-path file, or a curve whose
/// osculating path is used.
enum PathInput {
    Sampled(SampledPath),
    Curve(CurveSpec),
}

fn load_path_input(input: &str) -> CliResult<PathInput> {
    if !input.starts_with("builtin:") {
        let text = read_text(Path::new(input))?;
        let value: Value = serde_json::from_str(&text).map_err(|e| CliError::Schema(format!("{input}: {e}")))?;
        let is_curve = value.get("kind").is_some();
        if !is_curve {
            return Ok(PathInput::Sampled(crate::schema::load_path(input)?));
        }
    }
    Ok(PathInput::Curve(load_curve(input)?))
}

pub fn cmd_reconstruct(config: &RunConfig) -> CliResult<Report> {
    let opts = ReconstructOptions { null_tol: config.tol_null, osculation_tol: config.tol_osculation };
    let input = load_path_input(config.input()?)?;
    let (path, grid): (Box<dyn MatrixPath>, Grid) = match input {
        PathInput::Sampled(p) => {
            let g = p.grid();
            let default = Grid::new(g.node(2), g.node(g.n - 3), g.n - 4)?;
            (Box::new(p), config.grid.unwrap_or(default))
        }
        PathInput::Curve(c) => {
            let grid = match config.grid {
                Some(g) => g,
                None => default_grid(&c)?,
            };
            (Box::new(osculating_path(&c, &grid.to_vec())?), grid)
        }
    };
    let path: Box<dyn MatrixPath> = match config.transform {
        Some(g) => Box::new(Transformed::new(g, path)?),
        None => path,
    };
    let r = reconstruct(&path, &grid, &opts)?;
    let sampled = r.curve.as_sampled().expect("reconstruction is sampled");
    let mut report = Report::new("reconstruct", vec!["t", "x", "y"]);
    report.summary("points", sampled.grid().n);
    report.summary("time_reversed", r.time_reversed);
    report.summary("osculation_residual", r.osculation_residual);
    report.summary("zero_convex", r.convexity.ok);
    report.summary("min_wedge_pos_vel", r.convexity.min_wedge_pos_vel);
    report.summary("min_wedge_vel_acc", r.convexity.min_wedge_vel_acc);
    for (t, p) in sampled.grid().nodes().zip(sampled.points()) {
        report.row(vec![t.into(), p.x.into(), p.y.into()]);
    }
    let g = sampled.grid();
    let file = CurveFile::sampled(g.t_min, g.t_max, sampled.points());
    report.attachments.push(("curve", serde_json::to_value(&file).expect("curve serializes")));
    Ok(report)
}

pub fn cmd_check(config: &RunConfig) -> CliResult<Report> {
    let outcomes = run_suite(config.seed, config.only.as_deref())?;
    let mut report = Report::new("check", vec!["property", "cases", "worst", "tolerance", "passed"]);
    report.summary("seed", config.seed);
    report.summary("properties", outcomes.len());
    report.summary("passed", outcomes.iter().filter(|o| o.passed).count());
    for o in &outcomes {
        report.row(vec![o.name.into(), o.cases.into(), o.worst.into(), o.tolerance.into(), o.passed.into()]);
        if !o.passed {
            report.failures.push(o.name.to_string());
        }
    }
    Ok(report)
}

pub fn run(config: &RunConfig) -> CliResult<Report> {
    config.validate()?;
    match config.command {
        Command::Invariants => cmd_invariants(config),
        Command::Osculate => cmd_osculate(config),
        Command::Length => cmd_length(config),
        Command::Reconstruct => cmd_reconstruct(config),
        Command::Check => cmd_check(config),
    }
}

/// Exit status of a finished report: check failures, then tolerance
/// warnings, then success.
pub fn exit_status(report: &Report) -> (i32, Option<CliError>) {
    if !report.failures.is_empty() {
        let total = report.rows.len();
        return (crate::EXIT_CHECK_FAILED, Some(CliError::CheckFailed { failed: report.failures.clone(), total }));
    }
    if !report.warnings.is_empty() {
        return (crate::EXIT_WARNING, None);
    }
    (0, None)
}
