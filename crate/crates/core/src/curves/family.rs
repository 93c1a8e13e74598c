use alloc::format;

use crate::linalg::Vec2;
use crate::{Error, Result};

/// Built-in analytic curve families, all with closed-form derivatives of
/// every order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    /// `a·cos(t + φ)·u + b·sin(t + φ)·iu` for a unit axis `u`.
    Ellipse { a: f64, b: f64, axis: Vec2, phase: f64 },
    /// `e^{ct}(cos t, sin t)`.
    Spiral { rate: f64 },
    /// `(p cos t + q cos kt, r sin t + s sin kt)`.
    Generic { p: f64, q: f64, r: f64, s: f64, k: f64 },
}

/// `dⁿ/dxⁿ cos x`.
fn cos_deriv(x: f64, n: usize) -> f64 {
    match n % 4 {
        0 => libm::cos(x),
        1 => -libm::sin(x),
        2 => -libm::cos(x),
        _ => libm::sin(x),
    }
}

/// `dⁿ/dxⁿ sin x`.
fn sin_deriv(x: f64, n: usize) -> f64 {
    match n % 4 {
        0 => libm::sin(x),
        1 => libm::cos(x),
        2 => -libm::sin(x),
        _ => -libm::cos(x),
    }
}

impl Family {
    pub fn ellipse(a: f64, b: f64, axis: Vec2, phase: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0) {
            return Err(Error::InvalidParameter(format!("ellipse semi-axes must be positive (a = {a}, b = {b})")));
        }
        let n = axis.norm();
        if !(n > 0.0) || !n.is_finite() {
            return Err(Error::InvalidParameter("ellipse axis must be a nonzero vector".into()));
        }
        Ok(Family::Ellipse { a, b, axis: axis * (1.0 / n), phase })
    }

    pub fn circle() -> Self {
        Family::Ellipse { a: 1.0, b: 1.0, axis: Vec2::new(1.0, 0.0), phase: 0.0 }
    }

    pub fn spiral(rate: f64) -> Result<Self> {
        if !rate.is_finite() {
            return Err(Error::InvalidParameter("spiral rate must be finite".into()));
        }
        Ok(Family::Spiral { rate })
    }

    pub fn generic(p: f64, q: f64, r: f64, s: f64, k: f64) -> Result<Self> {
        if ![p, q, r, s, k].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidParameter("generic family parameters must be finite".into()));
        }
        Ok(Family::Generic { p, q, r, s, k })
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Ellipse { .. } => "ellipse",
            Family::Spiral { .. } => "spiral",
            Family::Generic { .. } => "generic",
        }
    }

    /// The `n`-th derivative at `t`.
    pub fn derivative(&self, t: f64, n: usize) -> Vec2 {
        match *self {
            Family::Ellipse { a, b, axis, phase } => {
                let x = t + phase;
                axis * (a * cos_deriv(x, n)) + axis.perp() * (b * sin_deriv(x, n))
            }
            Family::Spiral { rate } => {
                // (c + i)ⁿ · e^{(c + i)t}
                let (mut re, mut im) = (1.0, 0.0);
                for _ in 0..n {
                    (re, im) = (re * rate - im, re + im * rate);
                }
                let e = libm::exp(rate * t);
                let (wr, wi) = (e * libm::cos(t), e * libm::sin(t));
                Vec2::new(re * wr - im * wi, re * wi + im * wr)
            }
            Family::Generic { p, q, r, s, k } => {
                let kn = libm::pow(k, n as f64);
                Vec2::new(
                    p * cos_deriv(t, n) + q * kn * cos_deriv(k * t, n),
                    r * sin_deriv(t, n) + s * kn * sin_deriv(k * t, n),
                )
            }
        }
    }
}
