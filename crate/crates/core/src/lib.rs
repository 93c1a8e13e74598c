//! Centro-affine invariants of origin-convex plane curves.
//!
//! A plane curve `α` is *0-convex* when `α∧α′ > 0` and `α′∧α″ > 0`. At every
//! point such a curve has a unique osculating ellipse centered at the origin,
//! and the ellipse `E_A = {z : ⟨A⁻¹z, z⟩ = 1}` is identified with the
//! positive-definite matrix `A`. The space of those matrices carries the
//! `GL₊(2)`-invariant Lorentz norm `‖(A, X)‖ = −det(A⁻¹X)`, and the curve of
//! osculating ellipses is a null curve for it. This crate computes:
//!
//! * centro-affine curvature `ϰ` and the standard centro-affine
//!   reparametrization ([`curves`]),
//! * the Lorentz geometry of the ellipse space: norms, causal classes, the
//!   group action and the conformal covariant derivative ([`ellipse`]),
//! * osculating-ellipse paths, their nullity, `‖Dγ′/dt‖ = ϰ²` and the
//!   centro-affine arc length ([`osculation`]),
//! * reconstruction of a 0-convex curve from a null matrix path with spatial
//!   acceleration ([`reconstruction`]).
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod curves;
pub mod ellipse;
mod error;
pub mod grid;
pub mod linalg;
pub mod ode;
pub mod osculation;
pub mod path;
pub mod quadrature;
pub mod reconstruction;
pub mod stencil;
pub mod taylor;

pub use error::{Error, Result};
pub use grid::Grid;
pub use linalg::{Mat2, Sym2, Vec2};
