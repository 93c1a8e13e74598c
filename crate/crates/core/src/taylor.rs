//! Truncated Taylor arithmetic.
//!
//! A [`Taylor<N>`] holds the normalized coefficients `f⁽ᵏ⁾(t)/k!` for
//! `k < N`. Ring operations on these values propagate exact derivatives, which
//! is how closed-form curves produce derivatives of their osculating paths
//! without finite differences.

use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::linalg::{Sym2, Vec2};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor<const N: usize>(pub [f64; N]);

const FACTORIALS: [f64; 10] = [1.0, 1.0, 2.0, 6.0, 24.0, 120.0, 720.0, 5040.0, 40320.0, 362880.0];

impl<const N: usize> Taylor<N> {
    pub fn constant(v: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = v;
        Self(c)
    }

    /// The independent variable itself, expanded at `t`.
    pub fn variable(t: f64) -> Self {
        let mut c = [0.0; N];
        c[0] = t;
        if N > 1 {
            c[1] = 1.0;
        }
        Self(c)
    }

    /// Build from plain derivatives `[f, f′, f″, …]`.
    pub fn from_derivatives(d: [f64; N]) -> Self {
        let mut c = d;
        for (k, ck) in c.iter_mut().enumerate() {
            *ck /= FACTORIALS[k];
        }
        Self(c)
    }

    pub fn value(&self) -> f64 {
        self.0[0]
    }

    /// The `k`-th derivative.
    pub fn derivative(&self, k: usize) -> f64 {
        self.0[k] * FACTORIALS[k]
    }

    pub fn recip(self) -> Self {
        let c = self.0;
        let mut r = [0.0; N];
        r[0] = 1.0 / c[0];
        for k in 1..N {
            let s: f64 = (1..=k).map(|j| c[j] * r[k - j]).sum();
            r[k] = -s * r[0];
        }
        Self(r)
    }

    pub fn scale(self, s: f64) -> Self {
        Self(self.0.map(|c| c * s))
    }

    /// Composition `f ∘ φ`, given the derivatives of `f` at `φ(t)`.
    ///
    /// `outer[k]` must hold `f⁽ᵏ⁾(φ(t))` for `k < N`.
    pub fn compose(outer: [f64; N], inner: Self) -> Self {
        let mut delta = inner;
        delta.0[0] = 0.0;
        let mut acc = Self::constant(outer[0]);
        let mut pow = Self::constant(1.0);
        for (k, dk) in outer.iter().enumerate().skip(1) {
            pow = pow * delta;
            acc = acc + pow.scale(dk / FACTORIALS[k]);
        }
        acc
    }
}

impl<const N: usize> Add for Taylor<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut c = self.0;
        for (a, b) in c.iter_mut().zip(o.0) {
            *a += b;
        }
        Self(c)
    }
}

impl<const N: usize> Sub for Taylor<N> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl<const N: usize> Neg for Taylor<N> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-1.0)
    }
}

impl<const N: usize> Mul for Taylor<N> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut c = [0.0; N];
        for (k, ck) in c.iter_mut().enumerate() {
            *ck = (0..=k).map(|j| self.0[j] * o.0[k - j]).sum();
        }
        Self(c)
    }
}

impl<const N: usize> Div for Taylor<N> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

/// A plane vector whose components are Taylor expansions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorVec2<const N: usize> {
    pub x: Taylor<N>,
    pub y: Taylor<N>,
}

impl<const N: usize> TaylorVec2<N> {
    /// Build from the derivatives `[v, v′, v″, …]` of a vector function.
    pub fn from_derivatives(d: [Vec2; N]) -> Self {
        Self {
            x: Taylor::from_derivatives(d.map(|v| v.x)),
            y: Taylor::from_derivatives(d.map(|v| v.y)),
        }
    }

    pub fn wedge(self, o: Self) -> Taylor<N> {
        self.x * o.y - self.y * o.x
    }

    /// `v·vᵀ`.
    pub fn outer_self(self) -> TaylorSym2<N> {
        TaylorSym2 { a11: self.x * self.x, a12: self.x * self.y, a22: self.y * self.y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TaylorSym2<const N: usize> {
    pub a11: Taylor<N>,
    pub a12: Taylor<N>,
    pub a22: Taylor<N>,
}

impl<const N: usize> TaylorSym2<N> {
    pub fn scale_by(self, s: Taylor<N>) -> Self {
        Self { a11: self.a11 * s, a12: self.a12 * s, a22: self.a22 * s }
    }

    /// The `k`-th derivative as a plain matrix.
    pub fn derivative(&self, k: usize) -> Sym2 {
        Sym2::new(self.a11.derivative(k), self.a12.derivative(k), self.a22.derivative(k))
    }
}

impl<const N: usize> Add for TaylorSym2<N> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { a11: self.a11 + o.a11, a12: self.a12 + o.a12, a22: self.a22 + o.a22 }
    }
}
