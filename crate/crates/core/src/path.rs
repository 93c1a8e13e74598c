//! Curves `t ↦ γ(t)` in the cone of positive-definite matrices.

use alloc::vec::Vec;

use crate::grid::Grid;
use crate::linalg::{Mat2, Sym2};
use crate::stencil;
use crate::{Error, Result};

/// Value, velocity and acceleration of a matrix path at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathJet {
    pub t: f64,
    pub value: Sym2,
    pub d1: Sym2,
    pub d2: Sym2,
}

pub trait MatrixPath {
    /// Interval on which [`MatrixPath::jet`] can be evaluated.
    fn domain(&self) -> (f64, f64);

    fn jet(&self, t: f64) -> Result<PathJet>;

    /// The sample grid of a sampled path; evaluation is restricted to its
    /// nodes.
    fn sample_grid(&self) -> Option<Grid> {
        None
    }
}

impl<P: MatrixPath + ?Sized> MatrixPath for &P {
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn jet(&self, t: f64) -> Result<PathJet> {
        (**self).jet(t)
    }
    fn sample_grid(&self) -> Option<Grid> {
        (**self).sample_grid()
    }
}

impl<P: MatrixPath + ?Sized> MatrixPath for alloc::boxed::Box<P> {
    fn domain(&self) -> (f64, f64) {
        (**self).domain()
    }
    fn jet(&self, t: f64) -> Result<PathJet> {
        (**self).jet(t)
    }
    fn sample_grid(&self) -> Option<Grid> {
        (**self).sample_grid()
    }
}

/// A path with user-supplied exact derivatives.
pub struct ClosedFormPath<F> {
    t_min: f64,
    t_max: f64,
    f: F,
}

impl<F: Fn(f64) -> (Sym2, Sym2, Sym2)> ClosedFormPath<F> {
    /// `f(t)` returns `(γ, γ′, γ″)`.
    pub fn new(t_min: f64, t_max: f64, f: F) -> Self {
        Self { t_min, t_max, f }
    }
}

impl<F: Fn(f64) -> (Sym2, Sym2, Sym2)> MatrixPath for ClosedFormPath<F> {
    fn domain(&self) -> (f64, f64) {
        (self.t_min, self.t_max)
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        if !(t >= self.t_min && t <= self.t_max) {
            return Err(Error::ParameterOutOfRange { t, min: self.t_min, max: self.t_max });
        }
        let (value, d1, d2) = (self.f)(t);
        if !value.is_positive_definite() {
            return Err(Error::NotPositiveDefinite);
        }
        Ok(PathJet { t, value, d1, d2 })
    }
}

/// A path sampled on a uniform grid.
///
/// Velocities come from five-point central stencils on the samples. When
/// exact first derivatives are stored alongside the values, the acceleration
/// is the five-point first derivative of those; otherwise it is the
/// five-point second derivative of the samples.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledPath {
    grid: Grid,
    values: Vec<Sym2>,
    firsts: Option<Vec<Sym2>>,
}

impl SampledPath {
    pub fn new(t_min: f64, t_max: f64, values: Vec<Sym2>) -> Result<Self> {
        Self::build(t_min, t_max, values, None)
    }

    pub fn with_derivatives(t_min: f64, t_max: f64, values: Vec<Sym2>, firsts: Vec<Sym2>) -> Result<Self> {
        if firsts.len() != values.len() {
            return Err(Error::InvalidParameter("derivative samples must match value samples".into()));
        }
        Self::build(t_min, t_max, values, Some(firsts))
    }

    fn build(t_min: f64, t_max: f64, values: Vec<Sym2>, firsts: Option<Vec<Sym2>>) -> Result<Self> {
        if values.len() < 5 {
            return Err(Error::InvalidParameter("sampled path needs at least 5 samples".into()));
        }
        if let Some(bad) = values.iter().position(|v| !v.is_finite() || !v.is_positive_definite()) {
            return Err(Error::InvalidParameter(alloc::format!("sample {bad} is not positive definite")));
        }
        let grid = Grid::new(t_min, t_max, values.len())?;
        Ok(Self { grid, values, firsts })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Sym2] {
        &self.values
    }

    /// `(t, γ(t))` for every sample.
    pub fn records(&self) -> impl Iterator<Item = (f64, Sym2)> + '_ {
        self.grid.nodes().zip(self.values.iter().copied())
    }

    /// Sample `path` at the nodes of `grid`.
    pub fn sample<P: MatrixPath>(path: &P, grid: &Grid) -> Result<Self> {
        let values = grid.nodes().map(|t| path.jet(t).map(|j| j.value)).collect::<Result<Vec<_>>>()?;
        Self::new(grid.t_min, grid.t_max, values)
    }
}

impl MatrixPath for SampledPath {
    fn domain(&self) -> (f64, f64) {
        (self.grid.node(2), self.grid.node(self.grid.n - 3))
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        let i = self.grid.index_of(t).ok_or(Error::NotOnGrid { t })?;
        if i < 2 || i + 2 >= self.values.len() {
            return Err(Error::NotDifferentiable { t });
        }
        let h = self.grid.step();
        let w = &self.values[i - 2..=i + 2];
        let (d1, d2) = match &self.firsts {
            Some(f) => (stencil::first(w, h), stencil::first(&f[i - 2..=i + 2], h)),
            None => (stencil::first(w, h), stencil::second(w, h)),
        };
        Ok(PathJet { t: self.grid.node(i), value: self.values[i], d1, d2 })
    }

    fn sample_grid(&self) -> Option<Grid> {
        Some(self.grid)
    }
}

/// `t ↦ γ(−t)`.
#[derive(Debug, Clone)]
pub struct Reversed<P>(pub P);

impl<P: MatrixPath> MatrixPath for Reversed<P> {
    fn domain(&self) -> (f64, f64) {
        let (a, b) = self.0.domain();
        (-b, -a)
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        let j = self.0.jet(-t)?;
        Ok(PathJet { t, value: j.value, d1: -j.d1, d2: j.d2 })
    }

    fn sample_grid(&self) -> Option<Grid> {
        self.0.sample_grid().map(|g| g.reversed())
    }
}

/// `t ↦ g·γ(t)·gᵀ`.
#[derive(Debug, Clone)]
pub struct Transformed<P> {
    g: Mat2,
    inner: P,
}

impl<P: MatrixPath> Transformed<P> {
    pub fn new(g: Mat2, inner: P) -> Result<Self> {
        let det = g.det();
        if !(det > 0.0) || !g.is_finite() {
            return Err(Error::NonPositiveDeterminant { det });
        }
        Ok(Self { g, inner })
    }
}

impl<P: MatrixPath> MatrixPath for Transformed<P> {
    fn domain(&self) -> (f64, f64) {
        self.inner.domain()
    }

    fn jet(&self, t: f64) -> Result<PathJet> {
        let j = self.inner.jet(t)?;
        Ok(PathJet {
            t,
            value: self.g.congruence(j.value),
            d1: self.g.congruence(j.d1),
            d2: self.g.congruence(j.d2),
        })
    }

    fn sample_grid(&self) -> Option<Grid> {
        self.inner.sample_grid()
    }
}
