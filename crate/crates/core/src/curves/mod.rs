//! Plane curves, their jets, 0-convexity, centro-affine curvature and the
//! standard centro-affine reparametrization.
//!
//! For a 0-convex curve `β` the second derivative decomposes in the moving
//! frame `(β, β′)` as `β″ = a·β + b·β′` with `a < 0`. Reparametrizing by
//! `t′ = 1/√(−a)` yields the standard parametrization `α″ = −α + ½ϰα′`, and
//! eliminating `t′`, `t″` gives the closed form used here:
//!
//! ```text
//! ϰ = (2b·(−a) + a′) / (−a)^{3/2}
//! ```

mod family;
mod reparam;
mod sampled;

use alloc::boxed::Box;

pub use family::Family;
pub use reparam::{standard_reparam, Reparam, StandardReparam};
pub use sampled::{SampledCurve, MIN_SAMPLES};

use crate::linalg::{wedge, Mat2, Vec2};
use crate::stencil;
use crate::taylor::{Taylor, TaylorVec2};
use crate::{Error, Result};

/// A plane curve.
#[derive(Debug, Clone, PartialEq)]
pub enum CurveSpec {
    Builtin { family: Family, t_min: f64, t_max: f64 },
    Sampled(SampledCurve),
    /// `g ∘ base` for `det g > 0`. Only wraps analytic curves; transforming a
    /// sampled curve maps its samples instead.
    Transformed { g: Mat2, base: Box<CurveSpec> },
    /// `base ∘ φ` over `[s_min, s_max]`. Only wraps analytic curves.
    Reparametrized { phi: Reparam, s_min: f64, s_max: f64, base: Box<CurveSpec> },
}

/// Position and derivatives up to order three at one parameter value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet {
    pub t: f64,
    pub order: usize,
    pub p: Vec2,
    pub d1: Vec2,
    pub d2: Vec2,
    pub d3: Vec2,
}

/// Coefficients of `β″ = a·β + b·β′` and the derivative of `a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Decomposition {
    pub a: f64,
    pub b: f64,
    pub a_prime: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZeroConvexReport {
    pub ok: bool,
    /// `min α∧α′` over the grid.
    pub min_wedge_pos_vel: f64,
    /// `min α′∧α″` over the grid.
    pub min_wedge_vel_acc: f64,
    /// First grid point where a margin is violated.
    pub offending: Option<f64>,
}

impl CurveSpec {
    pub fn builtin(family: Family) -> Self {
        CurveSpec::Builtin { family, t_min: f64::NEG_INFINITY, t_max: f64::INFINITY }
    }

    pub fn builtin_on(family: Family, t_min: f64, t_max: f64) -> Result<Self> {
        if !(t_min < t_max) {
            return Err(Error::InvalidParameter("curve range needs t_min < t_max".into()));
        }
        Ok(CurveSpec::Builtin { family, t_min, t_max })
    }

    pub fn sampled(t_min: f64, t_max: f64, points: alloc::vec::Vec<Vec2>) -> Result<Self> {
        Ok(CurveSpec::Sampled(SampledCurve::new(t_min, t_max, points)?))
    }

    /// Parameter interval the curve is defined on.
    pub fn domain(&self) -> (f64, f64) {
        match self {
            CurveSpec::Builtin { t_min, t_max, .. } => (*t_min, *t_max),
            CurveSpec::Sampled(s) => (s.grid().t_min, s.grid().t_max),
            CurveSpec::Transformed { base, .. } => base.domain(),
            CurveSpec::Reparametrized { s_min, s_max, .. } => (*s_min, *s_max),
        }
    }

    /// Whether closed-form derivatives of every order are available.
    pub fn is_analytic(&self) -> bool {
        match self {
            CurveSpec::Builtin { .. } => true,
            CurveSpec::Sampled(_) => false,
            CurveSpec::Transformed { base, .. } | CurveSpec::Reparametrized { base, .. } => base.is_analytic(),
        }
    }

    pub fn as_sampled(&self) -> Option<&SampledCurve> {
        match self {
            CurveSpec::Sampled(s) => Some(s),
            _ => None,
        }
    }

    /// `g ∘ self`.
    pub fn transformed(&self, g: Mat2) -> Result<CurveSpec> {
        let det = g.det();
        if !(det > 0.0) || !g.is_finite() {
            return Err(Error::NonPositiveDeterminant { det });
        }
        Ok(match self {
            CurveSpec::Sampled(s) => {
                let grid = s.grid();
                CurveSpec::Sampled(SampledCurve::new(
                    grid.t_min,
                    grid.t_max,
                    s.points().iter().map(|p| g.apply(*p)).collect(),
                )?)
            }
            other => CurveSpec::Transformed { g, base: Box::new(other.clone()) },
        })
    }

    /// `self ∘ φ` on `[s_min, s_max]`.
    pub fn reparametrized(&self, phi: Reparam, s_min: f64, s_max: f64) -> Result<CurveSpec> {
        if !self.is_analytic() {
            return Err(Error::InvalidParameter("only analytic curves can be reparametrized in closed form".into()));
        }
        phi.validate()?;
        if !(s_min < s_max) {
            return Err(Error::InvalidParameter("reparametrization range needs s_min < s_max".into()));
        }
        Ok(CurveSpec::Reparametrized { phi, s_min, s_max, base: Box::new(self.clone()) })
    }

    fn check_domain(&self, t: f64) -> Result<()> {
        let (lo, hi) = self.domain();
        if !(t >= lo && t <= hi) {
            return Err(Error::ParameterOutOfRange { t, min: lo, max: hi });
        }
        Ok(())
    }

    /// Closed-form derivatives `[α, α′, …, α⁽ᴺ⁻¹⁾]` of an analytic curve.
    pub fn analytic_derivatives<const N: usize>(&self, t: f64) -> Result<[Vec2; N]> {
        self.check_domain(t)?;
        match self {
            CurveSpec::Builtin { family, .. } => Ok(core::array::from_fn(|n| family.derivative(t, n))),
            CurveSpec::Sampled(_) => Err(Error::InvalidParameter("sampled curves have no closed-form derivatives".into())),
            CurveSpec::Transformed { g, base } => Ok(base.analytic_derivatives::<N>(t)?.map(|v| g.apply(v))),
            CurveSpec::Reparametrized { phi, base, .. } => {
                let inner = Taylor::<N>::from_derivatives(phi.derivatives::<N>(t));
                let outer = base.analytic_derivatives::<N>(inner.value())?;
                let x = Taylor::compose(outer.map(|v| v.x), inner);
                let y = Taylor::compose(outer.map(|v| v.y), inner);
                Ok(core::array::from_fn(|k| Vec2::new(x.derivative(k), y.derivative(k))))
            }
        }
    }

    pub fn position(&self, t: f64) -> Result<Vec2> {
        Ok(evaluate_jet(self, t, 0)?.p)
    }
}

/// Position and derivatives up to `order` (at most 3).
pub fn evaluate_jet(curve: &CurveSpec, t: f64, order: usize) -> Result<Jet> {
    if order > 3 {
        return Err(Error::InvalidParameter("jet order must be at most 3".into()));
    }
    let d = match curve {
        CurveSpec::Sampled(s) => s.derivatives(t, order)?,
        analytic => {
            let mut d = analytic.analytic_derivatives::<4>(t)?;
            for v in d.iter_mut().skip(order + 1) {
                *v = Vec2::ZERO;
            }
            d
        }
    };
    Ok(Jet { t, order, p: d[0], d1: d[1], d2: d[2], d3: d[3] })
}

fn frame_wedge(t: f64, p: Vec2, d1: Vec2) -> Result<f64> {
    let w = wedge(p, d1);
    if !(libm::fabs(w) > 1e-14 * p.norm() * d1.norm()) {
        return Err(Error::DegenerateFrame { t });
    }
    Ok(w)
}

/// Solve `d2 = a·p + b·d1` for `(a, b)`.
pub fn decompose(jet: &Jet) -> Result<(f64, f64)> {
    let w = frame_wedge(jet.t, jet.p, jet.d1)?;
    Ok((wedge(jet.d2, jet.d1) / w, wedge(jet.p, jet.d2) / w))
}

/// `(a, b, a′)` at `t`. Analytic curves differentiate `a` exactly; sampled
/// curves apply the five-point stencil to `a` at neighbouring nodes.
pub fn decomposition(curve: &CurveSpec, t: f64) -> Result<Decomposition> {
    match curve {
        CurveSpec::Sampled(s) => {
            let h = s.step();
            let (a, b) = decompose(&evaluate_jet(curve, t, 2)?)?;
            let mut vals = [0.0; 5];
            for (k, v) in vals.iter_mut().enumerate() {
                let tk = t + (k as f64 - 2.0) * h;
                *v = if k == 2 { a } else { decompose(&evaluate_jet(curve, tk, 2)?)?.0 };
            }
            Ok(Decomposition { a, b, a_prime: stencil::first(&vals, h) })
        }
        analytic => {
            let d = analytic.analytic_derivatives::<4>(t)?;
            frame_wedge(t, d[0], d[1])?;
            let p = TaylorVec2::<2>::from_derivatives([d[0], d[1]]);
            let v = TaylorVec2::<2>::from_derivatives([d[1], d[2]]);
            let acc = TaylorVec2::<2>::from_derivatives([d[2], d[3]]);
            let w = p.wedge(v);
            let a = acc.wedge(v) / w;
            let b = wedge(d[0], d[2]) / w.value();
            Ok(Decomposition { a: a.value(), b, a_prime: a.derivative(1) })
        }
    }
}

/// Centro-affine curvature `ϰ` at `t`, in any orientation-preserving
/// parametrization.
pub fn centro_affine_curvature(curve: &CurveSpec, t: f64) -> Result<f64> {
    let Decomposition { a, b, a_prime } = decomposition(curve, t)?;
    let m = -a;
    if !(m > 0.0) {
        return Err(Error::NotZeroConvex { t });
    }
    Ok((2.0 * b * m + a_prime) / (m * libm::sqrt(m)))
}

/// Euclidean curvature `α′∧α″ / |α′|³`.
pub fn euclidean_curvature(curve: &CurveSpec, t: f64) -> Result<f64> {
    let j = evaluate_jet(curve, t, 2)?;
    let s = j.d1.norm();
    Ok(wedge(j.d1, j.d2) / (s * s * s))
}

/// Check `α∧α′ > margin` and `α′∧α″ > margin` at every grid point.
pub fn check_zero_convex(curve: &CurveSpec, grid: &[f64], margin: f64) -> Result<ZeroConvexReport> {
    let mut report = ZeroConvexReport {
        ok: true,
        min_wedge_pos_vel: f64::INFINITY,
        min_wedge_vel_acc: f64::INFINITY,
        offending: None,
    };
    for &t in grid {
        let j = evaluate_jet(curve, t, 2)?;
        let w1 = wedge(j.p, j.d1);
        let w2 = wedge(j.d1, j.d2);
        report.min_wedge_pos_vel = report.min_wedge_pos_vel.min(w1);
        report.min_wedge_vel_acc = report.min_wedge_vel_acc.min(w2);
        if !(w1 > margin && w2 > margin) && report.offending.is_none() {
            report.ok = false;
            report.offending = Some(t);
        }
    }
    Ok(report)
}

/// Longest run of consecutive grid points with `|ϰ| > threshold`, returned
/// as `(first, last)` parameter values.
pub fn vertex_free_run(curve: &CurveSpec, grid: &[f64], threshold: f64) -> Result<Option<(f64, f64)>> {
    let mut best: Option<(usize, usize)> = None;
    let mut start = None;
    for (i, &t) in grid.iter().enumerate() {
        let k = centro_affine_curvature(curve, t)?;
        if libm::fabs(k) > threshold {
            let s = *start.get_or_insert(i);
            if best.is_none_or(|(a, b)| i - s > b - a) {
                best = Some((s, i));
            }
        } else {
            start = None;
        }
    }
    Ok(best.map(|(a, b)| (grid[a], grid[b])))
}
