//! Seeded property suite run by `centroaffine check`.
//!
//! Each property draws its cases from its own ChaCha stream derived from the
//! seed and the property name, so `--only` does not change the cases of the
//! properties it keeps.

use centroaffine_core::curves::{
    centro_affine_curvature, decomposition, standard_reparam, CurveSpec, Family, Reparam,
};
use centroaffine_core::ellipse::{
    causal_class, conformal_acceleration, flat_norm, group_act_tangent, invariant_norm, warped_norm_split, CenteredEllipse,
    TangentVec, TimeOrientation,
};
use centroaffine_core::linalg::{adjugate, det_sym, eig_sym, inverse_spd, spd_sqrt, wedge};
use centroaffine_core::osculation::{
    accel_norm, centro_affine_length, nullity_residual, osculating_path, parametrize_ellipse, Tolerances,
};
use centroaffine_core::path::{ClosedFormPath, MatrixPath, Transformed};
use centroaffine_core::reconstruction::{reconstruct, ReconstructOptions};
use centroaffine_core::stencil;
use centroaffine_core::{Grid, Mat2, Sym2, Vec2};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{CliError, CliResult};

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub name: &'static str,
    pub cases: usize,
    /// Largest observed error (or smallest margin, for separation checks).
    pub worst: f64,
    pub tolerance: f64,
    pub passed: bool,
}

type Property = fn(&mut ChaCha8Rng) -> CliResult<Outcome>;

pub const PROPERTIES: &[(&str, Property)] = &[
    ("linalg", linalg),
    ("group-invariance", group_invariance),
    ("warped-split", warped_split),
    ("curvature-invariance", curvature_invariance),
    ("standard-reparam", standard_reparametrization),
    ("nullity", nullity),
    ("accel-curvature", accel_curvature),
    ("orientation", orientation),
    ("conformal-norm", conformal_norm),
    ("non-null-controls", non_null_controls),
    ("ellipse-curvature", ellipse_curvature),
    ("length-invariance", length_invariance),
    ("degenerate", degenerate),
    ("reconstruction", reconstruction),
];

fn stream(seed: u64, name: &str) -> ChaCha8Rng {
    // FNV-1a of the name, mixed into the seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in name.bytes() {
        h = (h ^ b as u64).wrapping_mul(0x0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h)
}

/// Run every property, or the comma-separated selection in `only`.
pub fn run_suite(seed: u64, only: Option<&str>) -> CliResult<Vec<Outcome>> {
    let selected: Vec<&str> = match only {
        Some(list) => list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect(),
        None => PROPERTIES.iter().map(|(n, _)| *n).collect(),
    };
    let mut out = Vec::with_capacity(selected.len());
    for name in selected {
        let (name, prop) = PROPERTIES.iter().find(|(n, _)| *n == name).ok_or_else(|| {
            let known: Vec<&str> = PROPERTIES.iter().map(|(n, _)| *n).collect();
            CliError::Usage(format!("unknown property {name:?}; known: {}", known.join(", ")))
        })?;
        out.push(prop(&mut stream(seed, name))?);
    }
    Ok(out)
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / (1.0 + b.abs())
}

fn within(name: &'static str, cases: usize, worst: f64, tolerance: f64) -> Outcome {
    Outcome { name, cases, worst, tolerance, passed: worst <= tolerance }
}

pub fn random_spd(rng: &mut ChaCha8Rng) -> Sym2 {
    let th = rng.random_range(0.0..std::f64::consts::PI);
    let u = Vec2::new(th.cos(), th.sin());
    u.outer_self() * rng.random_range(0.2..3.0) + u.perp().outer_self() * rng.random_range(0.2..3.0)
}

pub fn random_sym(rng: &mut ChaCha8Rng) -> Sym2 {
    Sym2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0))
}

/// Random `g` with `det g > 0` and condition number at most 10.
pub fn random_group(rng: &mut ChaCha8Rng) -> Mat2 {
    loop {
        let g = Mat2::new(rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0), rng.random_range(-2.0..2.0));
        let det = g.det();
        let frob2 = g.m11 * g.m11 + g.m12 * g.m12 + g.m21 * g.m21 + g.m22 * g.m22;
        if det > 0.1 && frob2 / det < 10.0 {
            return g;
        }
    }
}

pub fn random_rate(rng: &mut ChaCha8Rng) -> f64 {
    let c = rng.random_range(0.05..1.5);
    if rng.random_bool(0.5) {
        c
    } else {
        -c
    }
}

fn random_wobble(rng: &mut ChaCha8Rng) -> Reparam {
    Reparam::Wobble { amplitude: rng.random_range(-0.4..0.4), frequency: rng.random_range(0.2..1.5) }
}

fn linalg(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 200;
    for _ in 0..n {
        let x = random_sym(rng);
        let e = eig_sym(x);
        for k in 0..2 {
            let r = x.apply(e.vectors[k]) - e.vectors[k] * e.values[k];
            worst = worst.max(r.norm() / (1.0 + x.max_abs()));
        }
        let p = x.to_mat() * adjugate(x).to_mat();
        worst = worst.max((p.m11 - det_sym(x)).abs() + p.m12.abs() + p.m21.abs() + (p.m22 - det_sym(x)).abs());
        let a = random_spd(rng);
        let q = a.to_mat() * inverse_spd(a)?.to_mat();
        worst = worst.max((q.m11 - 1.0).abs() + q.m12.abs() + q.m21.abs() + (q.m22 - 1.0).abs());
        let r = spd_sqrt(a)?;
        worst = worst.max((r * r).distance_to(a) / (1.0 + a.max_abs()));
    }
    Ok(within("linalg", n, worst, 1e-12))
}

trait MatDistance {
    fn distance_to(self, s: Sym2) -> f64;
}

impl MatDistance for Mat2 {
    fn distance_to(self, s: Sym2) -> f64 {
        (self.m11 - s.a11).abs().max((self.m12 - s.a12).abs()).max((self.m21 - s.a12).abs()).max((self.m22 - s.a22).abs())
    }
}

fn group_invariance(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 200;
    for _ in 0..n {
        let v = TangentVec::new(random_spd(rng), random_sym(rng))?;
        let g = random_group(rng);
        let moved = group_act_tangent(g, &v)?;
        let before = invariant_norm(&v)?;
        worst = worst.max(rel(invariant_norm(&moved)?, before));
        if before.abs() > 1e-3 && causal_class(&v, 1e-10)? != causal_class(&moved, 1e-10)? {
            worst = f64::INFINITY;
        }
    }
    Ok(within("group-invariance", n, worst, 1e-10))
}

fn warped_split(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 1000;
    for _ in 0..n {
        let v = TangentVec::new(random_spd(rng), random_sym(rng))?;
        let (h, xd) = warped_norm_split(&v)?;
        worst = worst.max(rel(h - xd * xd, invariant_norm(&v)?));
    }
    Ok(within("warped-split", n, worst, 1e-10))
}

fn curvature_invariance(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 50;
    for _ in 0..n {
        let c = random_rate(rng);
        let base = CurveSpec::builtin(Family::spiral(c)?);
        let t = rng.random_range(-1.0..1.0);
        let k = centro_affine_curvature(&base, t)?;
        worst = worst.max(rel(k, 4.0 * c / (1.0 + c * c).sqrt()));
        let moved = base.transformed(random_group(rng))?;
        worst = worst.max(rel(centro_affine_curvature(&moved, t)?, k));
        let phi = random_wobble(rng);
        let re = moved.reparametrized(phi, -3.0, 3.0)?;
        // φ(s) = t for the s returned by a few Newton steps.
        let mut s = t;
        for _ in 0..30 {
            let d = phi.derivatives::<2>(s);
            s -= (d[0] - t) / d[1];
        }
        worst = worst.max(rel(centro_affine_curvature(&re, s)?, k));
    }
    Ok(within("curvature-invariance", n, worst, 1e-6))
}

fn standard_reparametrization(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 5;
    for _ in 0..n {
        let c = random_rate(rng);
        let t0 = rng.random_range(-0.5..0.5);
        let curve = CurveSpec::builtin(Family::spiral(c)?);
        let r = standard_reparam(&curve, t0, -0.5, 0.5, 0.01)?;
        let k = (1.0 + c * c).sqrt();
        for (s, t) in r.t_of_s() {
            worst = worst.max((t - (t0 + s / k)).abs());
        }
    }
    Ok(within("standard-reparam", n, worst, 1e-10))
}

fn nullity(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 50;
    for _ in 0..n {
        let curve = CurveSpec::builtin(Family::spiral(random_rate(rng))?)
            .transformed(random_group(rng))?
            .reparametrized(random_wobble(rng), -2.0, 2.0)?;
        let t = rng.random_range(-1.0..1.0);
        let path = osculating_path(&curve, &[t])?;
        worst = worst.max(nullity_residual(path.jet(t)?.d1));
    }
    Ok(within("nullity", n, worst, 1e-8))
}

/// `‖Dγ′/dt‖ = ϰ²` in the standard parametrization, and `ϰ²·m²` with
/// `m = −a` in any other.
fn accel_curvature(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 50;
    for _ in 0..n {
        let curve = CurveSpec::builtin(Family::generic(
            rng.random_range(1.1..1.3),
            rng.random_range(0.1..0.2),
            rng.random_range(0.9..1.1),
            rng.random_range(-0.15..-0.05),
            2.0,
        )?)
        .reparametrized(random_wobble(rng), -2.0, 2.0)?;
        let t = rng.random_range(-0.8..0.8);
        let path = osculating_path(&curve, &[t])?;
        let k = centro_affine_curvature(&curve, t)?;
        let m = -decomposition(&curve, t)?.a;
        let expect = k * k * m * m;
        worst = worst.max((accel_norm(&path, t, 1e-6)? - expect).abs() / (1.0 + expect));
    }
    Ok(within("accel-curvature", n, worst, 1e-6))
}

fn orientation(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut mismatches = 0usize;
    let n = 40;
    for _ in 0..n {
        let c = random_rate(rng);
        let curve = CurveSpec::builtin(Family::spiral(c)?).transformed(random_group(rng))?;
        let t = rng.random_range(-1.0..1.0);
        let j = osculating_path(&curve, &[t])?.jet(t)?;
        let class = causal_class(&TangentVec::new(j.value, j.d1)?, 1e-6)?;
        let expect = if c > 0.0 { TimeOrientation::Future } else { TimeOrientation::Past };
        if class.time_orientation != expect {
            mismatches += 1;
        }
    }
    Ok(within("orientation", n, mismatches as f64, 0.0))
}

fn conformal_gap(value: Sym2, d1: Sym2, d2: Sym2) -> CliResult<f64> {
    let flat = flat_norm(d2);
    let conformal = flat_norm(conformal_acceleration(value, d1, d2)?);
    Ok((conformal - flat).abs() / (1.0 + flat.abs()))
}

/// Random null paths: osculating paths of moved, reparametrized spirals.
fn conformal_norm(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 20;
    for _ in 0..n {
        let curve = CurveSpec::builtin(Family::spiral(random_rate(rng))?).reparametrized(random_wobble(rng), -2.0, 2.0)?;
        let t = rng.random_range(-1.0..1.0);
        let path = Transformed::new(random_group(rng), osculating_path(&curve, &[t])?)?;
        let j = path.jet(t)?;
        worst = worst.max(conformal_gap(j.value, j.d1, j.d2)?);
    }
    Ok(within("conformal-norm", n, worst, 1e-6))
}

/// Fixed non-null paths `(γ, γ′, γ″)` at one parameter, whose conformal and
/// flat acceleration norms differ.
pub fn non_null_control_paths() -> Vec<(&'static str, Sym2, Sym2, Sym2)> {
    let e = |t: f64| (2.0 * t).exp();
    vec![
        ("diag(1+t, 1-t) at 0", Sym2::IDENTITY, Sym2::diag(1.0, -1.0), Sym2::ZERO),
        ("exp(2t) I at 0.1", Sym2::IDENTITY * e(0.1), Sym2::IDENTITY * (2.0 * e(0.1)), Sym2::IDENTITY * (4.0 * e(0.1))),
        ("diag(1+t, 1+2t) at 0", Sym2::IDENTITY, Sym2::diag(1.0, 2.0), Sym2::ZERO),
        ("[[2,t],[t,1]] + t^2 I at 0", Sym2::new(2.0, 0.0, 1.0), Sym2::new(0.0, 1.0, 0.0), Sym2::IDENTITY * 2.0),
        ("diag(e^t, e^-t) at 0", Sym2::IDENTITY, Sym2::diag(1.0, -1.0), Sym2::IDENTITY),
    ]
}

fn non_null_controls(_: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let controls = non_null_control_paths();
    let mut smallest = f64::INFINITY;
    for (_, value, d1, d2) in &controls {
        smallest = smallest.min(conformal_gap(*value, *d1, *d2)?);
    }
    Ok(Outcome { name: "non-null-controls", cases: controls.len(), worst: smallest, tolerance: 1e-2, passed: smallest > 1e-2 })
}

fn ellipse_curvature(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 100;
    let h = 2e-3;
    for _ in 0..n {
        let a = random_spd(rng);
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let dir = Vec2::new(th.cos(), th.sin());
        let v = dir * (1.0 / a.quad(dir).sqrt());
        let w = a.apply(v).perp() * rng.random_range(0.2..2.0);
        let (p, k0) = parametrize_ellipse(&CenteredEllipse::new(a)?, v, w)?;
        let pts: Vec<Vec2> = (-2..=2).map(|i| p.point(i as f64 * h)).collect();
        let d1 = stencil::first(&pts, h);
        let d2 = stencil::second(&pts, h);
        let fd = wedge(d1, d2) / d1.norm().powi(3);
        worst = worst.max(rel(k0, fd));
    }
    Ok(within("ellipse-curvature", n, worst, 1e-8))
}

fn length_invariance(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 3;
    let tol = Tolerances::default();
    for _ in 0..n {
        let c = random_rate(rng);
        let k = (1.0 + c * c).sqrt();
        let native = CurveSpec::builtin(Family::spiral(c)?);
        let standard = native.reparametrized(Reparam::Affine { scale: 1.0 / k, shift: 0.0 }, -5.0, 5.0)?;
        // Window of standard length 1 starting at s = 0.
        let anchor = (4.0 * c.abs() / k).sqrt();
        let l_std = centro_affine_length(&standard, 0.0, 1.0, &tol)?.length;
        let l_nat = centro_affine_length(&native, 0.0, 1.0 / k, &tol)?.length;
        let l_moved = centro_affine_length(&native.transformed(random_group(rng))?, 0.0, 1.0 / k, &tol)?.length;
        worst = worst.max(rel(l_std, anchor)).max(rel(l_nat, anchor)).max(rel(l_moved, anchor));
    }
    Ok(within("length-invariance", n, worst, 1e-5))
}

fn degenerate(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 10;
    let tol = Tolerances::default();
    for _ in 0..n {
        let th = rng.random_range(0.0..std::f64::consts::TAU);
        let family = Family::ellipse(rng.random_range(0.3..3.0), rng.random_range(0.3..3.0), Vec2::new(th.cos(), th.sin()), rng.random_range(-1.0..1.0))?;
        let curve = CurveSpec::builtin(family);
        let grid = Grid::new(-1.0, 1.0, 11)?;
        let path = osculating_path(&curve, &grid.to_vec())?;
        let first = path.jet(grid.t_min)?.value;
        for t in grid.nodes() {
            worst = worst.max(centro_affine_curvature(&curve, t)?.abs());
            worst = worst.max(path.jet(t)?.value.distance_max(first) / first.max_abs());
        }
        worst = worst.max(centro_affine_length(&curve, -1.0, 1.0, &tol)?.length);
    }
    Ok(within("degenerate", n, worst, 1e-6))
}

fn sup_error_mod_sign(a: &CurveSpec, b: impl Fn(f64) -> CliResult<Vec2>, grid: &Grid) -> CliResult<f64> {
    let (mut plus, mut minus): (f64, f64) = (0.0, 0.0);
    for t in grid.nodes() {
        let p = a.position(t)?;
        let q = b(t)?;
        plus = plus.max((p - q).norm() / q.norm());
        minus = minus.max((p + q).norm() / q.norm());
    }
    Ok(plus.min(minus))
}

fn reconstruction(rng: &mut ChaCha8Rng) -> CliResult<Outcome> {
    let mut worst: f64 = 0.0;
    let n = 5;
    let opts = ReconstructOptions::default();
    for _ in 0..n {
        let curve = CurveSpec::builtin(Family::spiral(random_rate(rng))?);
        let grid = Grid::new(-0.5, 0.5, 41)?;
        let path = osculating_path(&curve, &grid.to_vec())?;
        let r = reconstruct(&path, &grid, &opts)?;
        if r.time_reversed || !r.convexity.ok {
            worst = f64::INFINITY;
        }
        worst = worst.max(sup_error_mod_sign(&r.curve, |t| Ok(curve.position(t)?), &grid)?);
        let g = random_group(rng);
        let moved = reconstruct(&Transformed::new(g, &path)?, &grid, &opts)?;
        worst = worst.max(sup_error_mod_sign(&moved.curve, |t| Ok(g.apply(r.curve.position(t)?)), &grid)?);
        let reversed = ClosedFormPath::new(-0.5, 0.5, |t| {
            let j = path.jet(-t).expect("inside the window");
            (j.value, -j.d1, j.d2)
        });
        let back = reconstruct(&reversed, &grid, &opts)?;
        if !back.time_reversed {
            worst = f64::INFINITY;
        }
        worst = worst.max(sup_error_mod_sign(&back.curve, |t| Ok(curve.position(t)?), &grid)?);
    }
    Ok(within("reconstruction", n, worst, 1e-5))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_are_unique_and_filterable() {
        let mut names: Vec<&str> = PROPERTIES.iter().map(|(n, _)| *n).collect();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), PROPERTIES.len());
        let only = run_suite(7, Some("conformal-norm")).unwrap();
        assert_eq!(only.len(), 1);
        assert!(only[0].passed);
        assert!(matches!(run_suite(7, Some("nope")), Err(CliError::Usage(_))));
    }

    #[test]
    fn streams_are_independent_of_selection() {
        let a = run_suite(3, Some("warped-split")).unwrap();
        let b = run_suite(3, Some("linalg,warped-split")).unwrap();
        assert_eq!(a[0], b[1]);
    }
}
