//! JSON input formats.
//!
//! Curve specs:
//!
//! ```json
//! {"kind": "builtin", "family": "spiral", "params": {"c": 0.2}, "t_min": -1, "t_max": 1}
//! {"kind": "sampled", "samples": [[1.0, 0.0], [0.99, 0.1]], "t_min": 0, "t_max": 0.1}
//! ```
//!
//! or the selector `builtin:<family>[:key=value,...]`. Matrix paths are a
//! list of `{"t", "a11", "a12", "a22"}` records on a uniform grid, bare or
//! under a `"path"` key.

use std::collections::BTreeMap;
use std::path::Path;

use centroaffine_core::curves::{CurveSpec, Family, Reparam};
use centroaffine_core::path::SampledPath;
use centroaffine_core::{Grid, Mat2, Sym2, Vec2};
use serde::{Deserialize, Serialize};

use crate::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CurveKind {
    Builtin,
    Sampled,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveFile {
    pub kind: CurveKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_min: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
}

/// Parameters of each family with their defaults (`None` = required).
fn family_params(family: &str) -> Option<&'static [(&'static str, Option<f64>)]> {
    Some(match family {
        "circle" => &[],
        "ellipse" => &[("a", None), ("b", None), ("axis_x", Some(1.0)), ("axis_y", Some(0.0)), ("phase", Some(0.0))],
        "spiral" => &[("c", None)],
        "generic" => &[("p", Some(1.2)), ("q", Some(0.15)), ("r", Some(1.0)), ("s", Some(-0.1)), ("k", Some(2.0))],
        _ => return None,
    })
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

impl CurveFile {
    pub fn sampled(t_min: f64, t_max: f64, points: &[Vec2]) -> Self {
        CurveFile {
            kind: CurveKind::Sampled,
            family: None,
            params: BTreeMap::new(),
            samples: Some(points.iter().map(|p| [p.x, p.y]).collect()),
            t_min: Some(t_min),
            t_max: Some(t_max),
        }
    }

    pub fn to_curve(&self) -> CliResult<CurveSpec> {
        match self.kind {
            CurveKind::Sampled => {
                if self.family.is_some() || !self.params.is_empty() {
                    return Err(schema("sampled curves take no family or params"));
                }
                let samples = self.samples.as_ref().ok_or_else(|| schema("sampled curve needs \"samples\""))?;
                let (t_min, t_max) = match (self.t_min, self.t_max) {
                    (Some(a), Some(b)) => (a, b),
                    _ => return Err(schema("sampled curve needs \"t_min\" and \"t_max\"")),
                };
                let points = samples.iter().map(|&[x, y]| Vec2::new(x, y)).collect();
                Ok(CurveSpec::sampled(t_min, t_max, points)?)
            }
            CurveKind::Builtin => {
                if self.samples.is_some() {
                    return Err(schema("builtin curves take no samples"));
                }
                let name = self.family.as_deref().ok_or_else(|| schema("builtin curve needs \"family\""))?;
                builtin_curve(name, &self.params, self.t_min, self.t_max)
            }
        }
    }
}

fn builtin_curve(name: &str, params: &BTreeMap<String, f64>, t_min: Option<f64>, t_max: Option<f64>) -> CliResult<CurveSpec> {
    let known = family_params(name).ok_or_else(|| schema(format!("unknown family {name:?} (circle, ellipse, spiral, generic)")))?;
    let mut standard = false;
    for (key, &value) in params {
        if key == "standard" {
            standard = value != 0.0;
        } else if !known.iter().any(|(k, _)| k == key) {
            return Err(schema(format!("unknown parameter {key:?} for family {name}")));
        }
    }
    let get = |key: &str| -> CliResult<f64> {
        let default = known.iter().find(|(k, _)| *k == key).and_then(|(_, d)| *d);
        params.get(key).copied().or(default).ok_or_else(|| schema(format!("family {name} needs parameter {key:?}")))
    };
    let family = match name {
        "circle" => Family::circle(),
        "ellipse" => Family::ellipse(get("a")?, get("b")?, Vec2::new(get("axis_x")?, get("axis_y")?), get("phase")?)?,
        "spiral" => Family::spiral(get("c")?)?,
        _ => Family::generic(get("p")?, get("q")?, get("r")?, get("s")?, get("k")?)?,
    };
    let (lo, hi) = (t_min.unwrap_or(f64::NEG_INFINITY), t_max.unwrap_or(f64::INFINITY));
    if !standard {
        return Ok(CurveSpec::builtin_on(family, lo, hi)?);
    }
    // Closed-form standard parametrizations only.
    let scale = match family {
        Family::Ellipse { .. } => 1.0,
        Family::Spiral { rate } => 1.0 / (1.0 + rate * rate).sqrt(),
        Family::Generic { .. } => return Err(schema("standard=1 is closed-form only for circle, ellipse and spiral")),
    };
    Ok(CurveSpec::builtin(family).reparametrized(Reparam::Affine { scale, shift: 0.0 }, lo, hi)?)
}

/// Parse `builtin:<family>[:key=value,...]`; `t_min` and `t_max` keys set
/// the range.
pub fn parse_selector(selector: &str) -> CliResult<CurveFile> {
    let rest = selector.strip_prefix("builtin:").ok_or_else(|| schema("selector must start with \"builtin:\""))?;
    let (family, args) = rest.split_once(':').unwrap_or((rest, ""));
    let mut file = CurveFile {
        kind: CurveKind::Builtin,
        family: Some(family.to_string()),
        params: BTreeMap::new(),
        samples: None,
        t_min: None,
        t_max: None,
    };
    for pair in args.split(',').filter(|s| !s.is_empty()) {
        let (k, v) = pair.split_once('=').ok_or_else(|| schema(format!("expected key=value, got {pair:?}")))?;
        let v: f64 = v.trim().parse().map_err(|_| schema(format!("{k}: {v:?} is not a number")))?;
        match k.trim() {
            "t_min" => file.t_min = Some(v),
            "t_max" => file.t_max = Some(v),
            key => {
                file.params.insert(key.to_string(), v);
            }
        }
    }
    Ok(file)
}

pub fn read_text(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))
}

/// A builtin selector or the path of a curve file.
pub fn load_curve(input: &str) -> CliResult<CurveSpec> {
    if input.starts_with("builtin:") {
        return parse_selector(input)?.to_curve();
    }
    let file: CurveFile = serde_json::from_str(&read_text(Path::new(input))?).map_err(|e| schema(format!("{input}: {e}")))?;
    file.to_curve()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathRecord {
    pub t: f64,
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl PathRecord {
    pub fn new(t: f64, a: Sym2) -> Self {
        PathRecord { t, a11: a.a11, a12: a.a12, a22: a.a22 }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum PathFile {
    List(Vec<PathRecord>),
    Object { path: Vec<PathRecord> },
}

/// Build a sampled path from records on a uniform grid; every sample must be
/// positive definite.
pub fn path_from_records(records: &[PathRecord]) -> CliResult<SampledPath> {
    if records.len() < 9 {
        return Err(schema(format!("matrix path needs at least 9 records, got {}", records.len())));
    }
    let (t0, t1) = (records[0].t, records[records.len() - 1].t);
    let grid = Grid::new(t0, t1, records.len()).map_err(|e| schema(format!("path times: {e}")))?;
    let h = grid.step();
    for (i, r) in records.iter().enumerate() {
        if (r.t - grid.node(i)).abs() > 1e-9 * h.abs().max(1.0) {
            return Err(schema(format!("record {i} (t = {}) is off the uniform grid with step {h}", r.t)));
        }
        let a = Sym2::new(r.a11, r.a12, r.a22);
        if !a.is_finite() || !a.is_positive_definite() {
            return Err(schema(format!("record {i} (t = {}) is not positive definite", r.t)));
        }
    }
    let values = records.iter().map(|r| Sym2::new(r.a11, r.a12, r.a22)).collect();
    Ok(SampledPath::new(t0, t1, values)?)
}

pub fn load_path(input: &str) -> CliResult<SampledPath> {
    let text = read_text(Path::new(input))?;
    let file: PathFile = serde_json::from_str(&text)
        .map_err(|_| schema(format!("{input}: expected a list of {{t, a11, a12, a22}} records or an object with a \"path\" list")))?;
    let records = match file {
        PathFile::List(r) | PathFile::Object { path: r } => r,
    };
    path_from_records(&records)
}

/// `"a,b,n"`.
pub fn parse_grid(text: &str) -> CliResult<Grid> {
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    let bad = || CliError::Usage(format!("--grid expects a,b,n; got {text:?}"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let a: f64 = parts[0].parse().map_err(|_| bad())?;
    let b: f64 = parts[1].parse().map_err(|_| bad())?;
    let n: usize = parts[2].parse().map_err(|_| bad())?;
    if n < 9 {
        return Err(CliError::Usage(format!("--grid needs n >= 9, got {n}")));
    }
    Grid::new(a, b, n).map_err(|e| CliError::Usage(e.to_string()))
}

/// Row-major 2×2 matrix, `"[[1,1],[0,1]]"` or `"1,1,0,1"`, with positive
/// determinant.
pub fn parse_transform(text: &str) -> CliResult<Mat2> {
    let cleaned: String = text.chars().map(|c| if c == '[' || c == ']' { ' ' } else { c }).collect();
    let nums: Vec<f64> = cleaned
        .split(',')
        .map(|s| s.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("--transform expects four numbers; got {text:?}")))?;
    if nums.len() != 4 {
        return Err(CliError::Usage(format!("--transform expects four numbers; got {}", nums.len())));
    }
    let g = Mat2::from_rows([[nums[0], nums[1]], [nums[2], nums[3]]]);
    if g.det().is_nan() || g.det() <= 0.0 {
        return Err(CliError::Usage(format!("--transform must have positive determinant (got {})", g.det())));
    }
    Ok(g)
}
