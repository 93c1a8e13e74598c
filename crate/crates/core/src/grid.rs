use alloc::vec::Vec;

use crate::{Error, Result};

/// Uniform parameter grid `t_min, t_min + h, …, t_max` with `n` nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    pub t_min: f64,
    pub t_max: f64,
    pub n: usize,
}

impl Grid {
    pub fn new(t_min: f64, t_max: f64, n: usize) -> Result<Self> {
        if !(t_min.is_finite() && t_max.is_finite()) || t_max <= t_min {
            return Err(Error::InvalidParameter("grid bounds must be finite with t_min < t_max".into()));
        }
        if n < 2 {
            return Err(Error::InvalidParameter("grid needs at least two nodes".into()));
        }
        Ok(Self { t_min, t_max, n })
    }

    pub fn step(&self) -> f64 {
        (self.t_max - self.t_min) / (self.n - 1) as f64
    }

    pub fn node(&self, i: usize) -> f64 {
        if i + 1 == self.n {
            self.t_max
        } else {
            self.t_min + i as f64 * self.step()
        }
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(|i| self.node(i))
    }

    pub fn to_vec(&self) -> Vec<f64> {
        self.nodes().collect()
    }

    /// The grid traversed backwards in time, `t ↦ −t`.
    pub fn reversed(&self) -> Grid {
        Grid { t_min: -self.t_max, t_max: -self.t_min, n: self.n }
    }

    /// Index of the node at `t`, if `t` lies on the grid (relative tolerance
    /// `1e-9` of the step).
    pub fn index_of(&self, t: f64) -> Option<usize> {
        let x = (t - self.t_min) / self.step();
        let i = libm::round(x);
        if i < 0.0 || i > (self.n - 1) as f64 || libm::fabs(x - i) > 1e-9 {
            return None;
        }
        Some(i as usize)
    }
}
