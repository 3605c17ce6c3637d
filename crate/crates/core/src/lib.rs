//! Exact desingularization of plane foliation germs.
//!
//! A germ of singular foliation at the origin of the plane is given by a
//! polynomial 1-form `a(x,y) dx + b(x,y) dy` with rational coefficients. This
//! crate blows up points until every singular point of the transform is
//! simple, records the exceptional components with their multiplicities,
//! valences and classified special points, builds balanced equations of
//! separatrices, decides the second-kind property, and computes the
//! combinatorial dimension of the obstruction space attached to the poles of
//! a balanced equation. All arithmetic is exact; every identity check is an
//! equality of integers or rationals.

pub mod algebra;
pub mod blowup;
pub mod entryjson;
pub mod error;
pub mod examples;
pub mod foliation;
pub mod invariants;
pub mod parse;
pub mod reduction;

pub use error::{Error, Result};
