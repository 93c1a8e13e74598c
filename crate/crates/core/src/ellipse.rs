//! The space of origin-centered ellipses as the cone of positive-definite
//! symmetric matrices.
//!
//! `A` stands for the ellipse `E_A = {z : ⟨A⁻¹z, z⟩ = 1} = A^{1/2}S¹`, and
//! `g ∈ GL₊(2)` acts by `g·A = gAgᵀ`. Two Lorentz structures live on the cone:
//!
//! * the flat one, `‖X‖ = −det X`, independent of the base point, and
//! * the `GL₊(2)`-invariant one, `‖(A, X)‖ = −det(A⁻¹X) = −det X / det A`.
//!
//! They are conformal with factor `φ(A) = √det A`, so null vectors agree and
//! covariant accelerations of null curves have equal norms.

use crate::linalg::{adjugate, det_sym, inverse_spd, spd_sqrt, trace_sym, Mat2, Sym2, Vec2};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CenteredEllipse {
    matrix: Sym2,
}

impl CenteredEllipse {
    pub fn new(matrix: Sym2) -> Result<Self> {
        if !matrix.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { matrix })
    }

    pub fn matrix(&self) -> Sym2 {
        self.matrix
    }

    /// The point `A^{1/2}(cos θ, sin θ)`.
    pub fn point_at(&self, theta: f64) -> Vec2 {
        let r = spd_sqrt(self.matrix).expect("ellipse matrix is positive definite");
        r.apply(Vec2::new(libm::cos(theta), libm::sin(theta)))
    }
}

/// A tangent vector `X` at a base point `A` of the cone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentVec {
    pub base: Sym2,
    pub dir: Sym2,
}

impl TangentVec {
    pub fn new(base: Sym2, dir: Sym2) -> Result<Self> {
        if !base.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(Self { base, dir })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CausalKind {
    Spatial,
    Null,
    Temporal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimeOrientation {
    Future,
    Past,
    NotApplicable,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CausalClass {
    pub kind: CausalKind,
    pub time_orientation: TimeOrientation,
}

impl CausalClass {
    /// A null class with a vanishing vector (e.g. the velocity of a constant
    /// path).
    pub fn is_degenerate(&self) -> bool {
        self.kind == CausalKind::Null && self.time_orientation == TimeOrientation::NotApplicable
    }
}

/// Representative `B` with `det B = 1` and the log-scale `x = ½ log det A`,
/// so that `A = e^x·B`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WarpedCoords {
    pub b: Sym2,
    pub x: f64,
}

/// The matrix of the ellipse with semi-axis `a` along the unit vector `u`
/// and `b` along `iu`.
pub fn ellipse_from_axes(u: Vec2, a: f64, b: f64) -> Result<CenteredEllipse> {
    if !(a > 0.0 && b > 0.0) {
        return Err(Error::InvalidParameter(alloc::format!("semi-axes must be positive (a = {a}, b = {b})")));
    }
    if libm::fabs(u.norm() - 1.0) > 1e-12 {
        return Err(Error::InvalidParameter("axis must be a unit vector".into()));
    }
    CenteredEllipse::new(u.outer_self() * (a * a) + u.perp().outer_self() * (b * b))
}

/// `⟨A⁻¹z, z⟩ − 1`; zero exactly on the ellipse.
pub fn ellipse_contains(e: &CenteredEllipse, z: Vec2) -> f64 {
    let inv = inverse_spd(e.matrix).expect("ellipse matrix is positive definite");
    inv.quad(z) - 1.0
}

/// `|A^{-1/2} z|`, which is one exactly on `A^{1/2}S¹`.
pub fn unit_circle_preimage_norm(e: &CenteredEllipse, z: Vec2) -> f64 {
    let r = spd_sqrt(e.matrix).expect("ellipse matrix is positive definite");
    let r_inv = inverse_spd(r).expect("square root is positive definite");
    r_inv.apply(z).norm()
}

/// Flat Lorentz norm `−det X`.
pub fn flat_norm(x: Sym2) -> f64 {
    -det_sym(x)
}

/// Polarization of the flat norm, `⟨X, Y⟩ = −½ tr(adj(X)·Y)`.
pub fn flat_inner(x: Sym2, y: Sym2) -> f64 {
    -0.5 * (adjugate(x) * y).trace()
}

/// `GL₊(2)`-invariant norm `−det(A⁻¹X)`.
pub fn invariant_norm(v: &TangentVec) -> Result<f64> {
    if !v.base.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(-det_sym(v.dir) / det_sym(v.base))
}

/// Classify a tangent vector as spatial, null or temporal, and time-orient
/// null and temporal ones.
///
/// The null band is `|‖(A, X)‖| ≤ tol · (‖X‖_max / ‖A‖_max)²`. Orientation is
/// read at the identity after translating by `A^{-1/2}`: the vector is
/// future-directed when `Y = A^{-1/2} X A^{-1/2}` has positive trace, which
/// for `‖Y‖ ≤ 0` is the same as `Y₁₁ > 0` or `Y₂₂ > 0`.
pub fn causal_class(v: &TangentVec, tol: f64) -> Result<CausalClass> {
    let n = invariant_norm(v)?;
    let ratio = v.dir.max_abs() / v.base.max_abs();
    let band = tol * ratio * ratio;
    let kind = if libm::fabs(n) <= band {
        CausalKind::Null
    } else if n > 0.0 {
        CausalKind::Spatial
    } else {
        CausalKind::Temporal
    };
    let time_orientation = if kind == CausalKind::Spatial || v.dir.max_abs() == 0.0 {
        TimeOrientation::NotApplicable
    } else {
        let r_inv = inverse_spd(spd_sqrt(v.base)?)?;
        let y = Mat2::from_rows([[r_inv.a11, r_inv.a12], [r_inv.a12, r_inv.a22]]).congruence(v.dir);
        if trace_sym(y) > 0.0 {
            TimeOrientation::Future
        } else {
            TimeOrientation::Past
        }
    };
    Ok(CausalClass { kind, time_orientation })
}

fn check_group(g: Mat2) -> Result<()> {
    let det = g.det();
    if !(det > 0.0) || !g.is_finite() {
        return Err(Error::NonPositiveDeterminant { det });
    }
    Ok(())
}

/// `g·E_A = E_{gAgᵀ}`.
pub fn group_act(g: Mat2, e: &CenteredEllipse) -> Result<CenteredEllipse> {
    check_group(g)?;
    CenteredEllipse::new(g.congruence(e.matrix))
}

pub fn group_act_tangent(g: Mat2, v: &TangentVec) -> Result<TangentVec> {
    check_group(g)?;
    TangentVec::new(g.congruence(v.base), g.congruence(v.dir))
}

/// Flat-metric gradient of `log √det A`, `W = A⁻¹ − tr(A⁻¹)·I`.
///
/// It is characterized by `⟨W, X⟩_flat = ½ tr(A⁻¹X)` for every symmetric `X`,
/// i.e. `adj W = −A⁻¹`.
pub fn grad_log_phi(a: Sym2) -> Result<Sym2> {
    let inv = inverse_spd(a)?;
    Ok(inv - Sym2::IDENTITY * trace_sym(inv))
}

/// Covariant acceleration of a curve for the invariant metric, from its
/// flat velocity and acceleration at base point `a`:
/// `D̄γ′ = γ″ − 2γ′(log φ)·γ′ + ‖γ′‖·grad(log φ)`.
pub fn conformal_acceleration(a: Sym2, vel: Sym2, acc: Sym2) -> Result<Sym2> {
    let inv = inverse_spd(a)?;
    let dlog_phi = 0.5 * (inv * vel).trace();
    Ok(acc - vel * (2.0 * dlog_phi) + grad_log_phi(a)? * flat_norm(vel))
}

pub fn warped_coords(a: Sym2) -> Result<WarpedCoords> {
    if !a.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let d = det_sym(a);
    Ok(WarpedCoords { b: a * (1.0 / libm::sqrt(d)), x: 0.5 * libm::log(d) })
}

/// Split `A⁻¹X = M + ẋ·I` into its trace-free part and scale rate, returning
/// `(½ tr M², ẋ)`; the invariant norm equals `½ tr M² − ẋ²`.
pub fn warped_norm_split(v: &TangentVec) -> Result<(f64, f64)> {
    let q = inverse_spd(v.base)? * v.dir;
    let x_dot = 0.5 * q.trace();
    let m = q.sub_scalar(x_dot);
    Ok((0.5 * (m * m).trace(), x_dot))
}
