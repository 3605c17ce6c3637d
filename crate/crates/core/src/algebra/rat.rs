//! Exact rational scalars.
//!
//! `Rat` is `num_rational::BigRational`: always reduced, denominator > 0,
//! so equality is canonical. Everything downstream is built on it; no
//! floating point appears anywhere in the crate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

/// Canonical printing: `p` for integers, `p/q` with `q > 0` otherwise.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn rat_from_str(s: &str) -> Option<Rat> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().ok()?;
        let d: BigInt = d.trim().parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().ok()?;
        Some(Rat::from_integer(n))
    }
}

/// The nonnegative square root when `r` is the square of a rational.
pub fn is_rational_square(r: &Rat) -> Option<Rat> {
    if r.is_negative() {
        return None;
    }
    if r.is_zero() {
        return Some(Rat::zero());
    }
    let sn = r.numer().sqrt();
    if &sn * &sn != *r.numer() {
        return None;
    }
    let sd = r.denom().sqrt();
    if &sd * &sd != *r.denom() {
        return None;
    }
    Some(Rat::new(sn, sd))
}
