//! Plane maximal curves over `F_{q^2}`.
//!
//! Maximality of the Hermitian, Hurwitz, generalized Hurwitz and Fermat
//! families is decided two ways: by closed-form number-theoretic criteria
//! ([`criteria`]) and by exhaustive point counting ([`point_count`]). The
//! crate also carries the Weierstrass semigroups of the Hurwitz families
//! ([`semigroup`]), the degree-bound ladder for plane maximal curves in exact
//! arithmetic ([`bounds`]) and pointwise verification of the explicit
//! covering maps between the families ([`covering`]).

pub mod arith;
pub mod bounds;
pub mod cli;
pub mod covering;
pub mod criteria;
pub mod curves;
pub mod field;
pub mod point_count;
pub mod semigroup;
pub mod surd;

pub use curves::{CurveFamily, CurveSpec, PlaneCurve, ProjectivePoint};
pub use field::{Field, FieldDescriptor, FieldElement};
