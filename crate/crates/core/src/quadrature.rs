//! Composite Simpson quadrature with a Richardson-style halving check.

use alloc::vec::Vec;

use crate::{Error, Result};

/// Required agreement between successive grids, relative to `1 + |I|`.
pub const DEFAULT_QUADRATURE_TOL: f64 = 1e-7;

const MAX_PANELS: usize = 1 << 16;

/// Composite Simpson rule on equally spaced `values` with spacing `h`. The
/// number of intervals must be even.
pub fn simpson_uniform(values: &[f64], h: f64) -> Result<f64> {
    let intervals = values.len().saturating_sub(1);
    if intervals < 2 || !intervals.is_multiple_of(2) {
        return Err(Error::InvalidParameter("Simpson's rule needs an even, positive number of intervals".into()));
    }
    let mut acc = values[0] + values[intervals];
    for (i, v) in values.iter().enumerate().take(intervals).skip(1) {
        acc += if i % 2 == 1 { 4.0 * v } else { 2.0 * v };
    }
    Ok(acc * h / 3.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub value: f64,
    /// `|I(h) − I(2h)|` for the accepted grid.
    pub error_estimate: f64,
    pub intervals: usize,
}

/// Integrate `f` over `[a, b]`, doubling the number of Simpson intervals
/// (starting at `initial`) until two successive estimates agree to
/// `tol · (1 + |I|)`.
pub fn simpson_adaptive<F>(mut f: F, a: f64, b: f64, initial: usize, tol: f64) -> Result<Quadrature>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut n = initial.max(2);
    if n % 2 == 1 {
        n += 1;
    }
    let sample = |f: &mut F, n: usize| -> Result<Vec<f64>> {
        let h = (b - a) / n as f64;
        (0..=n).map(|i| f(if i == n { b } else { a + i as f64 * h })).collect()
    };
    let mut values = sample(&mut f, n)?;
    let mut prev = simpson_uniform(&values, (b - a) / n as f64)?;
    let mut diff = f64::INFINITY;
    while n < MAX_PANELS {
        // Reuse the existing nodes and only evaluate the new midpoints.
        let h = (b - a) / (2 * n) as f64;
        let mut refined = Vec::with_capacity(2 * n + 1);
        for (i, &v) in values.iter().take(n).enumerate() {
            refined.push(v);
            refined.push(f(a + (2 * i + 1) as f64 * h)?);
        }
        refined.push(values[n]);
        n *= 2;
        values = refined;
        let cur = simpson_uniform(&values, h)?;
        diff = libm::fabs(cur - prev);
        if diff <= tol * (1.0 + libm::fabs(cur)) {
            return Ok(Quadrature { value: cur, error_estimate: diff, intervals: n });
        }
        prev = cur;
    }
    Err(Error::QuadratureDidNotConverge { diff })
}

/// Simpson on fixed nodes, with the estimate on every other node as the
/// error check. The interval count must be a multiple of four.
pub fn simpson_fixed(values: &[f64], h: f64) -> Result<Quadrature> {
    let intervals = values.len().saturating_sub(1);
    if intervals < 4 || !intervals.is_multiple_of(4) {
        return Err(Error::InvalidParameter(
            "window must span a positive multiple of four sample intervals".into(),
        ));
    }
    let fine = simpson_uniform(values, h)?;
    let coarse_values: Vec<f64> = values.iter().step_by(2).copied().collect();
    let coarse = simpson_uniform(&coarse_values, 2.0 * h)?;
    Ok(Quadrature { value: fine, error_estimate: libm::fabs(fine - coarse), intervals })
}
