//! Plane vectors, symmetric 2×2 matrices and general 2×2 matrices.
//!
//! Everything here is closed form; there are no iterative solvers.

use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::{Error, Result};

/// Relative tolerance used by [`kernel_of_singular_sym`] when callers do not
/// supply one.
pub const DEFAULT_SINGULAR_TOL: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    pub fn dot(self, o: Vec2) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn norm(self) -> f64 {
        libm::hypot(self.x, self.y)
    }

    /// Counterclockwise rotation by a right angle.
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    /// `u·vᵀ + v·uᵀ` halved, i.e. the symmetric part of the outer product.
    pub fn sym_outer(self, o: Vec2) -> Sym2 {
        Sym2::new(self.x * o.x, 0.5 * (self.x * o.y + self.y * o.x), self.y * o.y)
    }

    /// `u·uᵀ`.
    pub fn outer_self(self) -> Sym2 {
        Sym2::new(self.x * self.x, self.x * self.y, self.y * self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl AddAssign for Vec2 {
    fn add_assign(&mut self, o: Vec2) {
        self.x += o.x;
        self.y += o.y;
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    fn mul(self, v: Vec2) -> Vec2 {
        v * self
    }
}

/// `u ∧ v = det(u, v)`.
pub fn wedge(u: Vec2, v: Vec2) -> f64 {
    u.x * v.y - u.y * v.x
}

/// Symmetric matrix `[[a11, a12], [a12, a22]]`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Sym2 {
    pub a11: f64,
    pub a12: f64,
    pub a22: f64,
}

impl Sym2 {
    pub const ZERO: Sym2 = Sym2 { a11: 0.0, a12: 0.0, a22: 0.0 };
    pub const IDENTITY: Sym2 = Sym2 { a11: 1.0, a12: 0.0, a22: 1.0 };

    pub const fn new(a11: f64, a12: f64, a22: f64) -> Self {
        Self { a11, a12, a22 }
    }

    pub const fn diag(a: f64, b: f64) -> Self {
        Self::new(a, 0.0, b)
    }

    pub fn scaled(self, s: f64) -> Sym2 {
        Sym2::new(self.a11 * s, self.a12 * s, self.a22 * s)
    }

    /// Largest absolute entry.
    pub fn max_abs(self) -> f64 {
        libm::fabs(self.a11).max(libm::fabs(self.a12)).max(libm::fabs(self.a22))
    }

    pub fn is_finite(self) -> bool {
        self.a11.is_finite() && self.a12.is_finite() && self.a22.is_finite()
    }

    pub fn is_positive_definite(self) -> bool {
        self.a11 > 0.0 && det_sym(self) > 0.0
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(self.a11 * v.x + self.a12 * v.y, self.a12 * v.x + self.a22 * v.y)
    }

    pub fn quad(self, v: Vec2) -> f64 {
        self.apply(v).dot(v)
    }

    pub fn to_mat(self) -> Mat2 {
        Mat2::new(self.a11, self.a12, self.a12, self.a22)
    }

    pub fn distance_max(self, o: Sym2) -> f64 {
        (self - o).max_abs()
    }
}

impl Add for Sym2 {
    type Output = Sym2;
    fn add(self, o: Sym2) -> Sym2 {
        Sym2::new(self.a11 + o.a11, self.a12 + o.a12, self.a22 + o.a22)
    }
}

impl Sub for Sym2 {
    type Output = Sym2;
    fn sub(self, o: Sym2) -> Sym2 {
        Sym2::new(self.a11 - o.a11, self.a12 - o.a12, self.a22 - o.a22)
    }
}

impl Neg for Sym2 {
    type Output = Sym2;
    fn neg(self) -> Sym2 {
        self.scaled(-1.0)
    }
}

impl Mul<f64> for Sym2 {
    type Output = Sym2;
    fn mul(self, s: f64) -> Sym2 {
        self.scaled(s)
    }
}

impl Mul<Sym2> for f64 {
    type Output = Sym2;
    fn mul(self, x: Sym2) -> Sym2 {
        x.scaled(self)
    }
}

pub fn det_sym(x: Sym2) -> f64 {
    x.a11 * x.a22 - x.a12 * x.a12
}

pub fn trace_sym(x: Sym2) -> f64 {
    x.a11 + x.a22
}

pub fn adjugate(x: Sym2) -> Sym2 {
    Sym2::new(x.a22, -x.a12, x.a11)
}

pub fn inverse_spd(a: Sym2) -> Result<Sym2> {
    if !a.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(adjugate(a).scaled(1.0 / det_sym(a)))
}

/// Eigen-decomposition of a symmetric 2×2 matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymEigen {
    /// Eigenvalues in ascending order.
    pub values: [f64; 2],
    /// Orthonormal eigenvectors matching `values`.
    pub vectors: [Vec2; 2],
}

pub fn eig_sym(x: Sym2) -> SymEigen {
    if x.a12 == 0.0 {
        // Diagonal, including repeated eigenvalues: standard basis.
        let (e1, e2) = (Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0));
        return if x.a11 <= x.a22 {
            SymEigen { values: [x.a11, x.a22], vectors: [e1, e2] }
        } else {
            SymEigen { values: [x.a22, x.a11], vectors: [e2, e1] }
        };
    }
    let mean = 0.5 * (x.a11 + x.a22);
    let radius = libm::hypot(0.5 * (x.a11 - x.a22), x.a12);
    let hi = mean + radius;
    // Avoid cancellation in the smaller eigenvalue when possible.
    let lo = if hi != 0.0 && mean.abs() > radius { det_sym(x) / hi } else { mean - radius };
    let theta = 0.5 * libm::atan2(2.0 * x.a12, x.a11 - x.a22);
    let e_hi = Vec2::new(libm::cos(theta), libm::sin(theta));
    SymEigen { values: [lo, hi], vectors: [e_hi.perp(), e_hi] }
}

/// Positive-definite square root, `R·R = A`.
///
/// Uses `√A = (A + √det A · I) / √(tr A + 2√det A)`.
pub fn spd_sqrt(a: Sym2) -> Result<Sym2> {
    if !a.is_positive_definite() {
        return Err(Error::NotPositiveDefinite);
    }
    let s = libm::sqrt(det_sym(a));
    let t = libm::sqrt(trace_sym(a) + 2.0 * s);
    Ok((a + Sym2::IDENTITY.scaled(s)).scaled(1.0 / t))
}

/// Unit kernel vector of a rank-one symmetric matrix, normalized so that its
/// first nonzero component is positive.
pub fn kernel_of_singular_sym(x: Sym2, tol: f64) -> Result<Vec2> {
    let scale = x.max_abs();
    if scale == 0.0 || !x.is_finite() {
        return Err(Error::KernelNotOneDimensional);
    }
    let ratio = libm::fabs(det_sym(x)) / (scale * scale);
    if ratio > tol {
        return Err(Error::NotSingular { ratio });
    }
    // The kernel is orthogonal to the dominant row.
    let r1 = Vec2::new(x.a11, x.a12);
    let r2 = Vec2::new(x.a12, x.a22);
    let row = if r1.norm() >= r2.norm() { r1 } else { r2 };
    let mut v = row.perp() * (1.0 / row.norm());
    if v.x < 0.0 || (v.x == 0.0 && v.y < 0.0) {
        v = -v;
    }
    Ok(v)
}

/// General 2×2 matrix `[[m11, m12], [m21, m22]]`, used for group elements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2 {
    pub m11: f64,
    pub m12: f64,
    pub m21: f64,
    pub m22: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { m11: 1.0, m12: 0.0, m21: 0.0, m22: 1.0 };

    pub const fn new(m11: f64, m12: f64, m21: f64, m22: f64) -> Self {
        Self { m11, m12, m21, m22 }
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Self {
        Self::new(rows[0][0], rows[0][1], rows[1][0], rows[1][1])
    }

    pub fn from_columns(c1: Vec2, c2: Vec2) -> Self {
        Self::new(c1.x, c2.x, c1.y, c2.y)
    }

    pub fn rotation(theta: f64) -> Self {
        let (s, c) = (libm::sin(theta), libm::cos(theta));
        Self::new(c, -s, s, c)
    }

    pub fn det(self) -> f64 {
        self.m11 * self.m22 - self.m12 * self.m21
    }

    pub fn trace(self) -> f64 {
        self.m11 + self.m22
    }

    pub fn transpose(self) -> Mat2 {
        Mat2::new(self.m11, self.m21, self.m12, self.m22)
    }

    pub fn inverse(self) -> Option<Mat2> {
        let d = self.det();
        if d == 0.0 || !d.is_finite() {
            return None;
        }
        Some(Mat2::new(self.m22 / d, -self.m12 / d, -self.m21 / d, self.m11 / d))
    }

    pub fn apply(self, v: Vec2) -> Vec2 {
        Vec2::new(self.m11 * v.x + self.m12 * v.y, self.m21 * v.x + self.m22 * v.y)
    }

    /// `g·X·gᵀ`.
    pub fn congruence(self, x: Sym2) -> Sym2 {
        let m = self * x.to_mat() * self.transpose();
        Sym2::new(m.m11, 0.5 * (m.m12 + m.m21), m.m22)
    }

    pub fn sub_scalar(self, s: f64) -> Mat2 {
        Mat2::new(self.m11 - s, self.m12, self.m21, self.m22 - s)
    }

    pub fn is_finite(self) -> bool {
        self.m11.is_finite() && self.m12.is_finite() && self.m21.is_finite() && self.m22.is_finite()
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.m11 * o.m11 + self.m12 * o.m21,
            self.m11 * o.m12 + self.m12 * o.m22,
            self.m21 * o.m11 + self.m22 * o.m21,
            self.m21 * o.m12 + self.m22 * o.m22,
        )
    }
}

impl Mul<Mat2> for Sym2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        self.to_mat() * o
    }
}

impl Mul<Sym2> for Sym2 {
    type Output = Mat2;
    fn mul(self, o: Sym2) -> Mat2 {
        self.to_mat() * o.to_mat()
    }
}
