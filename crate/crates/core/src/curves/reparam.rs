use alloc::format;
use alloc::vec::Vec;

use super::{decompose, evaluate_jet, CurveSpec};
use crate::ode::{rk4_converged, DEFAULT_CONVERGENCE_TOL};
use crate::{Error, Result};

/// Closed-form orientation-preserving parameter changes `t = φ(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Reparam {
    /// `φ(s) = scale·s + shift`, `scale > 0`.
    Affine { scale: f64, shift: f64 },
    /// `φ(s) = s + A·sin(ωs)`, monotone while `|Aω| < 1`.
    Wobble { amplitude: f64, frequency: f64 },
}

impl Reparam {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Reparam::Affine { scale, shift } if scale > 0.0 && scale.is_finite() && shift.is_finite() => Ok(()),
            Reparam::Wobble { amplitude, frequency } if libm::fabs(amplitude * frequency) < 1.0 => Ok(()),
            other => Err(Error::InvalidParameter(format!("{other:?} is not orientation preserving"))),
        }
    }

    pub fn eval(&self, s: f64) -> f64 {
        self.derivatives::<1>(s)[0]
    }

    /// `[φ, φ′, …, φ⁽ᴺ⁻¹⁾]` at `s`.
    pub fn derivatives<const N: usize>(&self, s: f64) -> [f64; N] {
        match *self {
            Reparam::Affine { scale, shift } => core::array::from_fn(|k| match k {
                0 => scale * s + shift,
                1 => scale,
                _ => 0.0,
            }),
            Reparam::Wobble { amplitude, frequency } => core::array::from_fn(|k| {
                let x = frequency * s;
                let wk = libm::pow(frequency, k as f64);
                let sin_k = match k % 4 {
                    0 => libm::sin(x),
                    1 => libm::cos(x),
                    2 => -libm::sin(x),
                    _ => -libm::cos(x),
                };
                let base = match k {
                    0 => s,
                    1 => 1.0,
                    _ => 0.0,
                };
                base + amplitude * wk * sin_k
            }),
        }
    }
}

/// A curve re-sampled in its standard centro-affine parametrization.
#[derive(Debug, Clone, PartialEq)]
pub struct StandardReparam {
    /// `α(s) = β(t(s))` sampled on the `s` grid.
    pub curve: CurveSpec,
    pub s: Vec<f64>,
    /// `t(s)` at every `s` node.
    pub t: Vec<f64>,
}

impl StandardReparam {
    pub fn t_of_s(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.s.iter().copied().zip(self.t.iter().copied())
    }
}

fn steps_for(len: f64, ds: f64) -> Result<usize> {
    let n = len / ds;
    let r = libm::round(n);
    if libm::fabs(n - r) > 1e-9 * r.max(1.0) {
        return Err(Error::InvalidParameter(format!("range length {len} is not a multiple of the step {ds}")));
    }
    Ok(r as usize)
}

/// Integrate `dt/ds = 1/√(−a(t))` from `t(0) = t0` over `[s_min, s_max]`
/// (which must contain zero) with step `ds`, and sample `β(t(s))`.
pub fn standard_reparam(curve: &CurveSpec, t0: f64, s_min: f64, s_max: f64, ds: f64) -> Result<StandardReparam> {
    if !(ds > 0.0) || !(s_min <= 0.0 && s_max >= 0.0 && s_min < s_max) {
        return Err(Error::InvalidParameter("need ds > 0 and s_min ≤ 0 ≤ s_max".into()));
    }
    let forward = steps_for(s_max, ds)?;
    let backward = steps_for(-s_min, ds)?;
    let (lo, hi) = curve.domain();
    let rhs = |t: f64| -> Result<f64> {
        if !(t >= lo && t <= hi) {
            return Err(Error::LeftParameterRange { t });
        }
        let jet = evaluate_jet(curve, t, 2).map_err(|e| match e {
            Error::InsufficientSamples { t } | Error::ParameterOutOfRange { t, .. } => Error::LeftParameterRange { t },
            other => other,
        })?;
        let (a, _) = decompose(&jet)?;
        if !(a < 0.0) {
            return Err(Error::LeftZeroConvexRegion { t });
        }
        Ok(1.0 / libm::sqrt(-a))
    };
    let fwd = rk4_converged(rhs, t0, ds, forward, DEFAULT_CONVERGENCE_TOL)?;
    let bwd = rk4_converged(rhs, t0, -ds, backward, DEFAULT_CONVERGENCE_TOL)?;

    let t: Vec<f64> = bwd.iter().rev().chain(fwd.iter().skip(1)).copied().collect();
    let s: Vec<f64> = (0..t.len()).map(|i| (i as f64 - backward as f64) * ds).collect();
    let points = t.iter().map(|&ti| curve.position(ti)).collect::<Result<Vec<_>>>()?;
    let curve = CurveSpec::sampled(s[0], s[s.len() - 1], points)?;
    Ok(StandardReparam { curve, s, t })
}
