//! Fixed-step classical Runge–Kutta for scalar autonomous equations
//! `y′ = f(y)`, with a step-halving convergence check.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Agreement required between the run at `ds` and at `ds/2`.
pub const DEFAULT_CONVERGENCE_TOL: f64 = 1e-9;

/// Most substeps per output interval tried before giving up.
const MAX_SUBSTEPS: usize = 1 << 12;

fn rk4_step<F>(f: &mut F, y: f64, h: f64) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let k1 = f(y)?;
    let k2 = f(y + 0.5 * h * k1)?;
    let k3 = f(y + 0.5 * h * k2)?;
    let k4 = f(y + h * k3)?;
    Ok(y + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4))
}

/// Integrate over `steps` output intervals of size `ds` (negative `ds`
/// integrates backwards), taking `substeps` RK4 steps per interval.
/// Returns `steps + 1` values starting with `y0`.
pub fn rk4<F>(mut f: F, y0: f64, ds: f64, steps: usize, substeps: usize) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let h = ds / substeps as f64;
    let mut out = Vec::with_capacity(steps + 1);
    let mut y = y0;
    out.push(y);
    for _ in 0..steps {
        for _ in 0..substeps {
            y = rk4_step(&mut f, y, h)?;
        }
        out.push(y);
    }
    Ok(out)
}

/// RK4 with automatic step halving: the run with `2k` substeps is accepted
/// once it agrees with the run with `k` substeps to `tol` at every output
/// node.
pub fn rk4_converged<F>(mut f: F, y0: f64, ds: f64, steps: usize, tol: f64) -> Result<Vec<f64>>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut substeps = 1;
    let mut coarse = rk4(&mut f, y0, ds, steps, substeps)?;
    let mut diff = f64::INFINITY;
    while substeps < MAX_SUBSTEPS {
        substeps *= 2;
        let fine = rk4(&mut f, y0, ds, steps, substeps)?;
        diff = coarse.iter().zip(&fine).map(|(a, b)| libm::fabs(a - b)).fold(0.0, f64::max);
        if diff <= tol {
            return Ok(fine);
        }
        coarse = fine;
    }
    Err(Error::IntegratorDidNotConverge { diff })
}
