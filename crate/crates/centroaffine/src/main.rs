use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use centroaffine::commands::{exit_status, run, Command, RunConfig};
use centroaffine::output::Format;
use centroaffine::schema::{parse_grid, parse_transform};
use centroaffine::{CliError, CliResult, EXIT_USAGE};
use clap::Parser;

/// Centro-affine invariants of planar curves and their osculating ellipse paths.
#[derive(Debug, Parser)]
#[command(name = "centroaffine", version)]
struct Args {
    command: Command,
    /// Curve or path file, or `builtin:<family>[:k=v,...]`.
    #[arg(long)]
    input: Option<String>,
    /// Parameter grid `t_min,t_max,n`.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Matrix `g` with `det g > 0`, as `[[a,b],[c,d]]` or `a,b,c,d`.
    #[arg(long, allow_hyphen_values = true)]
    transform: Option<String>,
    #[arg(long)]
    tol_null: Option<f64>,
    #[arg(long = "tol-osc")]
    tol_osc: Option<f64>,
    #[arg(long)]
    tol_quad: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated property names for `check`.
    #[arg(long)]
    only: Option<String>,
}

fn config(args: Args) -> CliResult<(RunConfig, Option<PathBuf>)> {
    let mut c = RunConfig::new(args.command);
    c.input = args.input;
    c.grid = args.grid.as_deref().map(parse_grid).transpose()?;
    c.transform = args.transform.as_deref().map(parse_transform).transpose()?;
    if let Some(v) = args.tol_null {
        c.tol_null = v;
    }
    if let Some(v) = args.tol_osc {
        c.tol_osculation = v;
    }
    if let Some(v) = args.tol_quad {
        c.tol_quadrature = v;
    }
    c.format = args.format;
    c.seed = args.seed;
    c.only = args.only;
    Ok((c, args.out))
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| CliError::io("<stdout>", e)),
    }
}

fn main_inner(args: Args) -> CliResult<i32> {
    let (config, out) = config(args)?;
    let report = run(&config)?;
    emit(&report.render(config.format), out.as_ref())?;
    let (code, err) = exit_status(&report);
    if let Some(e) = err {
        eprintln!("{}", e.record());
    } else if code != 0 {
        let record = serde_json::json!({ "warning": report.warnings, "exit_code": code });
        eprintln!("{record}");
    }
    Ok(code)
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code as u8);
        }
    };
    match main_inner(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("{}", e.record());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
