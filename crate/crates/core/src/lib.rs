//! Exact-arithmetic toolkit for the unit equation x + y = 1 inside a
//! finitely generated subgroup G of K* x K*, where K = F_q(t) has positive
//! characteristic p.
//!
//! The crate provides:
//! - finite fields F_{p^k} and polynomial / rational-function arithmetic
//!   over them, all in canonical form ([`field`], [`poly`], [`ratfunc`]);
//! - the places of F_q(t) (monic irreducibles plus the infinite place),
//!   valuations, the sum formula, and homogeneous heights ([`places`],
//!   [`heights`]);
//! - finitely generated subgroups of K* x K* with their support set S and
//!   the embedding into Z^|S| x Z^|S| by weighted valuation vectors
//!   ([`group`]);
//! - the integer binary forms W_N and their antisymmetry / syzygy /
//!   determinant identities over exact big integers ([`wn`]);
//! - brute-force enumeration of solutions over exponent boxes, Frobenius
//!   descent, and the reduction of ax + by = 1 to the unit equation
//!   ([`solver`]);
//! - exact certification of the gap-principle inequalities and the
//!   counting bounds on enumerated data ([`certify`]).

pub mod certify;
pub mod config;
pub mod field;
pub mod group;
pub mod heights;
pub mod lattice;
pub mod parse;
pub mod places;
pub mod poly;
pub mod ratfunc;
pub mod report;
pub mod solver;
pub mod wn;

mod factor;

pub use field::{FieldElem, FieldError, FieldOp, FieldRef, FieldSpec};
pub use group::{GroupElem, GroupError, GroupRef, GroupSpec, PhiVector};
pub use heights::Height;
pub use places::Place;
pub use poly::Poly;
pub use ratfunc::RatFunc;
