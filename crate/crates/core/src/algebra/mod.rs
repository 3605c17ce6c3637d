//! Exact arithmetic substrate: rationals, univariate and bivariate
//! polynomials, univariate rational functions.

pub mod poly1;
pub mod poly2;
pub mod rat;
pub mod ratfunc;

pub use poly1::{rational_roots, Poly1};
pub use poly2::{divides, gcd2, Poly2};
pub use rat::{is_rational_square, rat, rat_from_str, rat_i, rat_to_string, Rat};
pub use ratfunc::{eval_poly2, RatFunc1};
