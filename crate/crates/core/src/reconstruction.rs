//! Recovering a 0-convex curve from a null path of ellipses.
//!
//! If `γ` is null with spatial acceleration, `γ′(t)` has a one-dimensional
//! kernel spanned by `v(t)` with `⟨γv, v⟩ = 1`, and `α(t) = γ(t)v(t)` is a
//! 0-convex curve osculated by `E_{γ(t)}` or by `E_{γ(−t)}`. The sign of `v`
//! is only fixed up to a global choice, so `α` is recovered up to `±α`; both
//! have the same osculating ellipses.

use alloc::vec::Vec;

use crate::curves::{check_zero_convex, CurveSpec, ZeroConvexReport};
use crate::grid::Grid;
use crate::linalg::{kernel_of_singular_sym, wedge, Vec2};
use crate::osculation::{invariant_accel_norm, nullity_residual, osculating_ellipse};
use crate::path::{MatrixPath, Reversed};
use crate::stencil;
use crate::{Error, Result};

/// Consecutive kernel directions may turn by at most this angle (cosine).
const MIN_ALIGNMENT: f64 = core::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconstructOptions {
    /// Largest accepted nullity residual of the input path.
    pub null_tol: f64,
    /// Largest accepted relative distance between `γ(t)` and the osculating
    /// ellipse of the reconstructed curve.
    pub osculation_tol: f64,
}

impl Default for ReconstructOptions {
    fn default() -> Self {
        Self { null_tol: 1e-6, osculation_tol: 1e-5 }
    }
}

/// Sign-continuous kernel vectors of `γ′` along a grid.
#[derive(Debug, Clone, PartialEq)]
pub struct KernelField {
    pub t: Vec<f64>,
    pub v: Vec<Vec2>,
    /// Smallest cosine between consecutive directions; at least `1/√2`.
    pub min_alignment: f64,
    /// Largest `|⟨γv, v⟩ − 1|`.
    pub normalization_residual: f64,
}

pub fn kernel_field<P: MatrixPath>(path: &P, grid: &[f64], null_tol: f64) -> Result<KernelField> {
    let mut v: Vec<Vec2> = Vec::with_capacity(grid.len());
    let mut min_alignment: f64 = 1.0;
    let mut normalization_residual: f64 = 0.0;
    for &t in grid {
        let j = path.jet(t)?;
        if !(j.d1.max_abs() > 1e-14 * j.value.max_abs()) {
            return Err(Error::VelocityVanishes { t });
        }
        let residual = nullity_residual(j.d1);
        if residual > null_tol {
            return Err(Error::PathNotNull { t, residual });
        }
        let k = kernel_of_singular_sym(j.d1, f64::INFINITY)?;
        let mut w = k * (1.0 / libm::sqrt(j.value.quad(k)));
        normalization_residual = normalization_residual.max(libm::fabs(j.value.quad(w) - 1.0));
        if let Some(&prev) = v.last() {
            if prev.dot(w) < 0.0 {
                w = -w;
            }
            let cos = prev.dot(w) / (prev.norm() * w.norm());
            if cos < MIN_ALIGNMENT {
                return Err(Error::SignPropagationBroke { t });
            }
            min_alignment = min_alignment.min(cos);
        }
        v.push(w);
    }
    Ok(KernelField { t: grid.to_vec(), v, min_alignment, normalization_residual })
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReconstructionResult {
    /// `α = γv` sampled on the grid (negated if time was reversed).
    pub curve: CurveSpec,
    pub time_reversed: bool,
    /// 0-convexity at nodes at least three steps from either end.
    pub convexity: ZeroConvexReport,
    /// Largest `‖osc(α, t) − γ(t)‖_max / ‖γ(t)‖_max` over the same nodes.
    pub osculation_residual: f64,
}

fn median(mut xs: Vec<f64>) -> f64 {
    xs.sort_by(f64::total_cmp);
    let n = xs.len();
    if n % 2 == 1 {
        xs[n / 2]
    } else {
        0.5 * (xs[n / 2 - 1] + xs[n / 2])
    }
}

/// Reconstruct a 0-convex curve from `path` sampled on `grid`.
///
/// Needs at least 9 nodes: `v′` uses five-point stencils, and convexity and
/// osculation are checked away from the three outermost nodes on each side.
pub fn reconstruct<P: MatrixPath>(path: &P, grid: &Grid, opts: &ReconstructOptions) -> Result<ReconstructionResult> {
    if grid.n < 9 {
        return Err(Error::InsufficientSamples { t: grid.t_min });
    }
    for t in grid.nodes() {
        let n = invariant_accel_norm(path, t)?;
        if n.nullity_residual > opts.null_tol {
            return Err(Error::PathNotNull { t, residual: n.nullity_residual });
        }
        if !(n.invariant > 0.0) {
            return Err(Error::AccelerationNotSpatial { t, value: n.invariant });
        }
    }
    let field = kernel_field(path, &grid.to_vec(), opts.null_tol)?;
    let h = grid.step();
    let wedges = (2..grid.n - 2)
        .map(|i| wedge(field.v[i], stencil::first(&field.v[i - 2..=i + 2], h)))
        .collect();
    if median(wedges) < 0.0 {
        let reversed = Reversed(path);
        let g = grid.reversed();
        let field = kernel_field(&reversed, &g.to_vec(), opts.null_tol)?;
        finish(&reversed, &g, &field, true, opts)
    } else {
        finish(path, grid, &field, false, opts)
    }
}

fn finish<P: MatrixPath>(path: &P, grid: &Grid, field: &KernelField, time_reversed: bool, opts: &ReconstructOptions) -> Result<ReconstructionResult> {
    let points = grid
        .nodes()
        .zip(&field.v)
        .map(|(t, &v)| Ok(path.jet(t)?.value.apply(v)))
        .collect::<Result<Vec<_>>>()?;
    let curve = CurveSpec::sampled(grid.t_min, grid.t_max, points)?;
    let inner: Vec<f64> = (3..grid.n - 3).map(|i| grid.node(i)).collect();
    let convexity = check_zero_convex(&curve, &inner, 0.0)?;
    if let Some(t) = convexity.offending {
        return Err(Error::ReconstructionNotConvex { t });
    }
    let mut osculation_residual: f64 = 0.0;
    for &t in &inner {
        let gamma = path.jet(t)?.value;
        let e = osculating_ellipse(&curve, t)?;
        osculation_residual = osculation_residual.max(e.matrix().distance_max(gamma) / gamma.max_abs());
    }
    if osculation_residual > opts.osculation_tol {
        return Err(Error::OsculationResidual { residual: osculation_residual });
    }
    Ok(ReconstructionResult { curve, time_reversed, convexity, osculation_residual })
}
