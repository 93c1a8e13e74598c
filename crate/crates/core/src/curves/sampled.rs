use alloc::vec::Vec;

use crate::grid::Grid;
use crate::linalg::Vec2;
use crate::stencil;
use crate::taylor::Taylor;
use crate::{Error, Result};

/// Fewest samples accepted for a sampled curve.
pub const MIN_SAMPLES: usize = 9;

/// A curve given by points at uniformly spaced parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    grid: Grid,
    points: Vec<Vec2>,
}

impl SampledCurve {
    pub fn new(t_min: f64, t_max: f64, points: Vec<Vec2>) -> Result<Self> {
        if points.len() < MIN_SAMPLES {
            return Err(Error::InvalidParameter(alloc::format!(
                "sampled curve needs at least {MIN_SAMPLES} points, got {}",
                points.len()
            )));
        }
        if !points.iter().all(|p| p.is_finite()) {
            return Err(Error::InvalidParameter("sampled curve has non-finite points".into()));
        }
        let grid = Grid::new(t_min, t_max, points.len())?;
        Ok(Self { grid, points })
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn step(&self) -> f64 {
        self.grid.step()
    }

    fn check_range(&self, t: f64) -> Result<()> {
        if !(t >= self.grid.t_min && t <= self.grid.t_max) {
            return Err(Error::ParameterOutOfRange { t, min: self.grid.t_min, max: self.grid.t_max });
        }
        Ok(())
    }

    /// Derivatives `[α, α′, α″, α‴]` up to `order` (entries above `order`
    /// are zero).
    ///
    /// On sample nodes this uses order-4 central stencils (five points for
    /// the first two derivatives, seven for the third). Between nodes it
    /// differentiates the degree-6 interpolant through the seven nearest
    /// samples.
    pub fn derivatives(&self, t: f64, order: usize) -> Result<[Vec2; 4]> {
        self.check_range(t)?;
        let n = self.points.len();
        let h = self.step();
        let mut out = [Vec2::ZERO; 4];
        if let Some(i) = self.grid.index_of(t) {
            let r = if order >= 3 { stencil::RADIUS_7 } else if order >= 1 { stencil::RADIUS_5 } else { 0 };
            if i < r || i + r >= n {
                return Err(Error::InsufficientSamples { t });
            }
            out[0] = self.points[i];
            if order >= 1 {
                let w = &self.points[i - 2..=i + 2];
                out[1] = stencil::first(w, h);
                if order >= 2 {
                    out[2] = stencil::second(w, h);
                }
            }
            if order >= 3 {
                out[3] = stencil::third(&self.points[i - 3..=i + 3], h);
            }
            return Ok(out);
        }
        let x = (t - self.grid.t_min) / h;
        let c = libm::round(x) as usize;
        if c < 3 || c + 3 >= n {
            return Err(Error::InsufficientSamples { t });
        }
        let u = Taylor::<4>::variable(x - c as f64);
        let mut px = Taylor::constant(0.0);
        let mut py = Taylor::constant(0.0);
        for j in 0..7 {
            let xj = j as f64 - 3.0;
            let mut basis = Taylor::constant(1.0);
            for m in (0..7).filter(|&m| m != j) {
                let xm = m as f64 - 3.0;
                basis = basis * (u - Taylor::constant(xm)).scale(1.0 / (xj - xm));
            }
            let f = self.points[c - 3 + j];
            px = px + basis.scale(f.x);
            py = py + basis.scale(f.y);
        }
        let mut hk = 1.0;
        for (k, slot) in out.iter_mut().enumerate().take(order + 1) {
            *slot = Vec2::new(px.derivative(k), py.derivative(k)) * (1.0 / hk);
            hk *= h;
        }
        Ok(out)
    }
}
