//! Curves of osculating centered ellipses.
//!
//! In any parametrization `β` of a 0-convex curve with `β″ = aβ + bβ′`, the
//! osculating centered ellipse at `t` is
//!
//! ```text
//! γ(t) = β·βᵀ + β′·β′ᵀ / (−a)
//! ```
//!
//! which reduces to `ααᵀ + α′α′ᵀ` in the standard parametrization. The path
//! `γ` is null, and in the standard parametrization its covariant
//! acceleration has invariant norm `ϰ²`. By conformal equivalence that norm
//! is `−det γ″ / det γ`. Its fourth root is the centro-affine arc-length
//! density.

use alloc::vec::Vec;

use crate::curves::{centro_affine_curvature, check_zero_convex, decompose, evaluate_jet, CurveSpec, SampledCurve};
use crate::ellipse::{causal_class, conformal_acceleration, flat_norm, CausalClass, CenteredEllipse, TangentVec};
use crate::grid::Grid;
use crate::linalg::{det_sym, wedge, Sym2, Vec2};
use crate::path::{MatrixPath, PathJet, SampledPath};
use crate::quadrature::{simpson_adaptive, simpson_fixed, DEFAULT_QUADRATURE_TOL};
use crate::stencil;
use crate::taylor::TaylorVec2;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Largest accepted nullity residual `|det γ′| / ‖γ′‖²_max`.
    pub null: f64,
    /// Points with `|ϰ|`-scale `(‖Dγ′‖)^{1/2}` at or below this are vertices.
    pub vertex: f64,
    /// Negative acceleration norms down to `−negative · max(1, ‖γ″‖²/det γ)`
    /// are clamped to 0.
    pub negative: f64,
    /// Simpson halving agreement, relative to `1 + |length|`.
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { null: 1e-6, vertex: 1e-6, negative: 1e-6, quadrature: DEFAULT_QUADRATURE_TOL }
    }
}

fn osculating_matrix(p: Vec2, d1: Vec2, m: f64) -> Sym2 {
    p.outer_self() + d1.outer_self() * (1.0 / m)
}

/// The centered ellipse osculating `curve` at `t`.
pub fn osculating_ellipse(curve: &CurveSpec, t: f64) -> Result<CenteredEllipse> {
    let j = evaluate_jet(curve, t, 2)?;
    let (a, _) = decompose(&j)?;
    if !(a < 0.0) || wedge(j.p, j.d1) <= 0.0 {
        return Err(Error::NotZeroConvex { t });
    }
    CenteredEllipse::new(osculating_matrix(j.p, j.d1, -a))
}

/// Osculating path of an analytic curve, differentiated exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyticOsculatingPath {
    curve: CurveSpec,
}

impl MatrixPath for AnalyticOsculatingPath {
    fn domain(&self) -> (f64, f64) {
        self.curve.domain()
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        let d = self.curve.analytic_derivatives::<5>(t)?;
        let p = TaylorVec2::<3>::from_derivatives([d[0], d[1], d[2]]);
        let v = TaylorVec2::<3>::from_derivatives([d[1], d[2], d[3]]);
        let acc = TaylorVec2::<3>::from_derivatives([d[2], d[3], d[4]]);
        let w = p.wedge(v);
        if !(w.value() > 0.0) {
            return Err(Error::NotZeroConvex { t });
        }
        let m = v.wedge(acc) / w;
        if !(m.value() > 0.0) {
            return Err(Error::NotZeroConvex { t });
        }
        let gamma = p.outer_self() + v.outer_self().scale_by(m.recip());
        Ok(PathJet { t, value: gamma.derivative(0), d1: gamma.derivative(1), d2: gamma.derivative(2) })
    }
}

/// The path of osculating ellipses of a curve.
#[derive(Debug, Clone, PartialEq)]
pub enum OsculatingPath {
    Analytic(AnalyticOsculatingPath),
    Sampled(SampledPath),
}

impl MatrixPath for OsculatingPath {
    fn domain(&self) -> (f64, f64) {
        match self {
            OsculatingPath::Analytic(p) => p.domain(),
            OsculatingPath::Sampled(p) => p.domain(),
        }
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        match self {
            OsculatingPath::Analytic(p) => p.jet(t),
            OsculatingPath::Sampled(p) => p.jet(t),
        }
    }

    fn sample_grid(&self) -> Option<Grid> {
        match self {
            OsculatingPath::Analytic(_) => None,
            OsculatingPath::Sampled(p) => p.sample_grid(),
        }
    }
}

/// Osculating path at the interior nodes of a sampled curve. Values and the
/// product-rule velocities
/// `γ′ = 2 sym(β′βᵀ) + 2 sym(β″β′ᵀ)/m − m′ β′β′ᵀ/m²` (with `m = −a`) are
/// built from stencil jets. The path reports the stencil velocity of its
/// values and a stencil on the product-rule velocity as acceleration.
fn sampled_osculating_path(curve: &CurveSpec, s: &SampledCurve) -> Result<SampledPath> {
    let grid = s.grid();
    let n = grid.n;
    if n < 13 {
        return Err(Error::InsufficientSamples { t: grid.t_min });
    }
    let h = grid.step();
    let mut jets = Vec::with_capacity(n - 4);
    let mut a_vals = Vec::with_capacity(n - 4);
    for i in 2..n - 2 {
        let t = grid.node(i);
        let j = evaluate_jet(curve, t, 2)?;
        if wedge(j.p, j.d1) <= 0.0 {
            return Err(Error::NotZeroConvex { t });
        }
        let (a, _) = decompose(&j)?;
        if !(a < 0.0) {
            return Err(Error::NotZeroConvex { t });
        }
        jets.push(j);
        a_vals.push(a);
    }
    let mut values = Vec::with_capacity(n - 8);
    let mut firsts = Vec::with_capacity(n - 8);
    for k in 2..jets.len() - 2 {
        let j = jets[k];
        let m = -a_vals[k];
        let m_prime = -stencil::first(&a_vals[k - 2..=k + 2], h);
        values.push(osculating_matrix(j.p, j.d1, m));
        let first = j.p.sym_outer(j.d1) * 2.0 + j.d2.sym_outer(j.d1) * (2.0 / m) - j.d1.outer_self() * (m_prime / (m * m));
        firsts.push(first);
    }
    SampledPath::with_derivatives(grid.node(4), grid.node(n - 5), values, firsts)
}

/// Build the osculating path, checking 0-convexity on `grid` first.
///
/// Analytic curves give a closed-form path; sampled curves give a path on
/// their interior sample nodes.
pub fn osculating_path(curve: &CurveSpec, grid: &[f64]) -> Result<OsculatingPath> {
    let report = check_zero_convex(curve, grid, 0.0)?;
    if let Some(t) = report.offending {
        return Err(Error::NotZeroConvex { t });
    }
    match curve {
        CurveSpec::Sampled(s) => Ok(OsculatingPath::Sampled(sampled_osculating_path(curve, s)?)),
        analytic => Ok(OsculatingPath::Analytic(AnalyticOsculatingPath { curve: analytic.clone() })),
    }
}

/// `|det γ′| / ‖γ′‖²_max`, zero for a vanishing velocity.
pub fn nullity_residual(vel: Sym2) -> f64 {
    let s = vel.max_abs();
    libm::fabs(det_sym(vel)) / (s * s).max(f64::MIN_POSITIVE)
}

/// [`nullity_residual`] of a path jet, treating a velocity at rounding level
/// relative to the value as zero.
pub fn jet_nullity_residual(j: &PathJet) -> f64 {
    let floor = f64::EPSILON * j.value.max_abs() * j.value.max_abs();
    let s = j.d1.max_abs();
    libm::fabs(det_sym(j.d1)) / (s * s).max(floor).max(f64::MIN_POSITIVE)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullityPoint {
    pub t: f64,
    pub residual: f64,
    /// Invariant acceleration norm `−det γ″ / det γ`.
    pub accel: f64,
    pub class: CausalClass,
    /// `‖Dγ′‖^{1/2}` at or below the vertex tolerance.
    pub vertex: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OsculationReport {
    pub max_residual: f64,
    pub points: Vec<NullityPoint>,
}

impl OsculationReport {
    pub fn vertex_count(&self) -> usize {
        self.points.iter().filter(|p| p.vertex).count()
    }
}

/// Nullity residual, acceleration and causal label at every grid point.
pub fn nullity_report<P: MatrixPath>(path: &P, grid: &[f64], tol: &Tolerances) -> Result<OsculationReport> {
    let mut points = Vec::with_capacity(grid.len());
    let mut max_residual: f64 = 0.0;
    for &t in grid {
        let j = path.jet(t)?;
        let residual = jet_nullity_residual(&j);
        max_residual = max_residual.max(residual);
        let class = causal_class(&TangentVec::new(j.value, j.d1)?, tol.null)?;
        let accel = -det_sym(j.d2) / det_sym(j.value);
        let vertex = libm::sqrt(libm::fabs(accel)) <= tol.vertex;
        points.push(NullityPoint { t, residual, accel, class, vertex });
    }
    Ok(OsculationReport { max_residual, points })
}

/// Both routes to the acceleration norm of a path at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AccelNorms {
    /// Flat acceleration `γ″`.
    pub flat_accel: Sym2,
    /// Covariant acceleration `D̄γ′/dt` of the invariant metric.
    pub conformal_accel: Sym2,
    /// `−det γ″`.
    pub flat: f64,
    /// `−det D̄γ′`.
    pub conformal: f64,
    /// Invariant norm of the covariant acceleration, `−det γ″ / det γ`.
    pub invariant: f64,
    pub nullity_residual: f64,
}

pub fn invariant_accel_norm<P: MatrixPath>(path: &P, t: f64) -> Result<AccelNorms> {
    let j = path.jet(t)?;
    let conformal_accel = conformal_acceleration(j.value, j.d1, j.d2)?;
    Ok(AccelNorms {
        flat_accel: j.d2,
        conformal_accel,
        flat: flat_norm(j.d2),
        conformal: flat_norm(conformal_accel),
        invariant: flat_norm(j.d2) / det_sym(j.value),
        nullity_residual: jet_nullity_residual(&j),
    })
}

/// `‖Dγ′/dt‖` for the invariant metric, valid only on null paths.
pub fn accel_norm<P: MatrixPath>(path: &P, t: f64, null_tol: f64) -> Result<f64> {
    let n = invariant_accel_norm(path, t)?;
    if n.nullity_residual > null_tol {
        return Err(Error::NullityViolated { t, residual: n.nullity_residual });
    }
    Ok(n.invariant)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Density {
    pub value: f64,
    pub vertex: bool,
}

/// Arc-length density `‖Dγ′/dt‖^{1/4}` along an osculating path.
pub fn density_on_path<P: MatrixPath>(path: &P, t: f64, tol: &Tolerances) -> Result<Density> {
    let j = path.jet(t)?;
    let residual = jet_nullity_residual(&j);
    if residual > tol.null {
        return Err(Error::NullityViolated { t, residual });
    }
    let det = det_sym(j.value);
    let mut accel = flat_norm(j.d2) / det;
    if accel < 0.0 {
        let scale = j.d2.max_abs() * j.d2.max_abs() / det;
        if -accel > tol.negative * scale.max(1.0) {
            return Err(Error::NegativeAcceleration { t, value: accel });
        }
        accel = 0.0;
    }
    let value = libm::sqrt(libm::sqrt(accel));
    Ok(Density { value, vertex: value * value <= tol.vertex })
}

/// Arc-length density of `curve` at `t`, in the curve's own parameter.
pub fn arc_element_density(curve: &CurveSpec, t: f64, tol: &Tolerances) -> Result<Density> {
    let path = osculating_path(curve, &[t])?;
    density_on_path(&path, t, tol)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LengthResult {
    pub length: f64,
    pub error_estimate: f64,
    pub intervals: usize,
    /// `ϰ` vanishes or changes sign in the window.
    pub vertex_crossing: bool,
    /// Simpson halving check met the tolerance.
    pub converged: bool,
}

/// A zero or a sign change of `ϰ` along `nodes`.
fn vertex_along(curve: &CurveSpec, nodes: impl Iterator<Item = f64>, tol: &Tolerances) -> Result<bool> {
    let mut prev: Option<f64> = None;
    for t in nodes {
        let k = centro_affine_curvature(curve, t)?;
        if libm::fabs(k) <= tol.vertex || prev.is_some_and(|p| p * k < 0.0) {
            return Ok(true);
        }
        prev = Some(k);
    }
    Ok(false)
}

/// Centro-affine length of `curve` over `[a, b]`.
///
/// Analytic curves refine Simpson's rule until two successive grids agree.
/// Sampled curves integrate over their own nodes, which the window ends
/// must hit, and compare against every other node.
pub fn centro_affine_length(curve: &CurveSpec, a: f64, b: f64, tol: &Tolerances) -> Result<LengthResult> {
    if !(a < b) {
        return Err(Error::InvalidParameter("length window needs a < b".into()));
    }
    let mut vertex_crossing = false;
    match curve {
        CurveSpec::Sampled(s) => {
            let grid = s.grid();
            let i0 = grid.index_of(a).ok_or(Error::NotOnGrid { t: a })?;
            let i1 = grid.index_of(b).ok_or(Error::NotOnGrid { t: b })?;
            let path = osculating_path(curve, &[])?;
            let values = (i0..=i1)
                .map(|i| {
                    let d = density_on_path(&path, grid.node(i), tol)?;
                    vertex_crossing |= d.vertex;
                    Ok(d.value)
                })
                .collect::<Result<Vec<_>>>()?;
            let q = simpson_fixed(&values, grid.step())?;
            vertex_crossing |= vertex_along(curve, (i0..=i1).map(|i| grid.node(i)), tol)?;
            let converged = q.error_estimate <= tol.quadrature * (1.0 + libm::fabs(q.value));
            Ok(LengthResult { length: q.value, error_estimate: q.error_estimate, intervals: q.intervals, vertex_crossing, converged })
        }
        analytic => {
            let probe = Grid::new(a, b, 65)?;
            let path = osculating_path(analytic, &probe.to_vec())?;
            vertex_crossing |= vertex_along(analytic, probe.nodes(), tol)?;
            let q = simpson_adaptive(
                |t| {
                    let d = density_on_path(&path, t, tol)?;
                    vertex_crossing |= d.vertex;
                    Ok(d.value)
                },
                a,
                b,
                16,
                tol.quadrature,
            )?;
            Ok(LengthResult { length: q.value, error_estimate: q.error_estimate, intervals: q.intervals, vertex_crossing, converged: true })
        }
    }
}

/// Counterclockwise parametrization `ε(s) = cos s·Av + sin s·Aw/L` of `E_A`,
/// `L = √⟨Aw, w⟩`, for `v∧w > 0`, `⟨Av, v⟩ = 1`, `⟨Av, w⟩ = 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseParametrization {
    pub a: Sym2,
    pub v: Vec2,
    pub w: Vec2,
    pub l: f64,
}

impl EllipseParametrization {
    /// The `n`-th derivative of `ε` at `s`.
    pub fn derivative(&self, s: f64, n: usize) -> Vec2 {
        let (c, si) = match n % 4 {
            0 => (libm::cos(s), libm::sin(s)),
            1 => (-libm::sin(s), libm::cos(s)),
            2 => (-libm::cos(s), -libm::sin(s)),
            _ => (libm::sin(s), -libm::cos(s)),
        };
        self.a.apply(self.v) * c + self.a.apply(self.w) * (si / self.l)
    }

    pub fn point(&self, s: f64) -> Vec2 {
        self.derivative(s, 0)
    }

    /// Euclidean curvature at `s = 0`, `(v∧w) / ((v∧Aw)·|v|)`.
    pub fn curvature_at_start(&self) -> f64 {
        wedge(self.v, self.w) / (wedge(self.v, self.a.apply(self.w)) * self.v.norm())
    }
}

/// Returns the parametrization and its curvature at `s = 0`.
pub fn parametrize_ellipse(e: &CenteredEllipse, v: Vec2, w: Vec2) -> Result<(EllipseParametrization, f64)> {
    let a = e.matrix();
    if !(wedge(v, w) > 0.0) {
        return Err(Error::EllipseFrame("v∧w must be positive"));
    }
    if libm::fabs(a.quad(v) - 1.0) > 1e-9 {
        return Err(Error::EllipseFrame("⟨Av, v⟩ must equal 1"));
    }
    if libm::fabs(a.apply(v).dot(w)) > 1e-9 * (1.0 + w.norm()) {
        return Err(Error::EllipseFrame("⟨Av, w⟩ must vanish"));
    }
    let param = EllipseParametrization { a, v, w, l: libm::sqrt(a.quad(w)) };
    let k0 = param.curvature_at_start();
    Ok((param, k0))
}
