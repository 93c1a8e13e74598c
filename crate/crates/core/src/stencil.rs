//! Central finite-difference stencils of order four on uniform grids.
//!
//! Every stencil takes the samples `f[-r..=r]` around the center as a slice
//! of length `2r + 1` and the grid step `h`.

use core::ops::{Add, Mul};

/// Half-width of the first- and second-derivative stencils.
pub const RADIUS_5: usize = 2;
/// Half-width of the third-derivative stencil.
pub const RADIUS_7: usize = 3;

fn combine<T>(f: &[T], weights: &[f64], scale: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let mut acc = f[0] * (weights[0] * scale);
    for (v, w) in f.iter().zip(weights).skip(1) {
        acc = acc + *v * (w * scale);
    }
    acc
}

/// `(f₋₂ − 8f₋₁ + 8f₁ − f₂) / 12h`.
pub fn first<T>(f: &[T], h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    debug_assert_eq!(f.len(), 5);
    combine(f, &[1.0, -8.0, 0.0, 8.0, -1.0], 1.0 / (12.0 * h))
}

/// `(−f₋₂ + 16f₋₁ − 30f₀ + 16f₁ − f₂) / 12h²`.
pub fn second<T>(f: &[T], h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    debug_assert_eq!(f.len(), 5);
    combine(f, &[-1.0, 16.0, -30.0, 16.0, -1.0], 1.0 / (12.0 * h * h))
}

/// `(f₋₃ − 8f₋₂ + 13f₋₁ − 13f₁ + 8f₂ − f₃) / 8h³`.
pub fn third<T>(f: &[T], h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    debug_assert_eq!(f.len(), 7);
    combine(f, &[1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0], 1.0 / (8.0 * h * h * h))
}

/// Five-point first derivative of a scalar function at `x`.
pub fn first_of<F: FnMut(f64) -> T, T>(mut f: F, x: f64, h: f64) -> T
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let v = [f(x - 2.0 * h), f(x - h), f(x), f(x + h), f(x + 2.0 * h)];
    first(&v, h)
}
