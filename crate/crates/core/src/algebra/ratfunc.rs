//! Univariate rational functions over `Rat`.
//!
//! Parametrized curve germs stay exact through blow-up charts only if we can
//! divide one coordinate function by the other; the quotient is a rational
//! function of the parameter, regular at 0 whenever the division is
//! legitimate. Pairs are kept reduced by gcd so degrees stay small.

use std::fmt;

use num_traits::{One, Zero};

use super::poly1::Poly1;
use super::poly2::Poly2;
use super::rat::Rat;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatFunc1 {
    num: Poly1,
    den: Poly1,
}

impl RatFunc1 {
    pub fn new(num: Poly1, den: Poly1) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        RatFunc1 { num, den }.reduced()
    }

    pub fn from_poly(p: Poly1) -> Self {
        RatFunc1 {
            num: p,
            den: Poly1::constant(Rat::one()),
        }
    }

    pub fn constant(c: Rat) -> Self {
        Self::from_poly(Poly1::constant(c))
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly1::zero())
    }

    pub fn var() -> Self {
        Self::from_poly(Poly1::var())
    }

    fn reduced(mut self) -> Self {
        if self.num.is_zero() {
            self.den = Poly1::constant(Rat::one());
            return self;
        }
        let g = self.num.gcd(&self.den);
        if g.degree().unwrap_or(0) > 0 {
            self.num = self.num.div_exact(&g).unwrap();
            self.den = self.den.div_exact(&g).unwrap();
        }
        // normalize so the denominator has leading coefficient 1
        let lc = self.den.leading().unwrap().clone();
        self.num = self.num.scale(&lc.recip());
        self.den = self.den.scale(&lc.recip());
        self
    }

    pub fn num(&self) -> &Poly1 {
        &self.num
    }

    pub fn den(&self) -> &Poly1 {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Regular at the parameter origin, i.e. the denominator does not vanish.
    pub fn regular_at_0(&self) -> bool {
        !self.den.coeff(0).is_zero()
    }

    /// Value at 0; requires regularity.
    pub fn eval0(&self) -> Rat {
        assert!(self.regular_at_0(), "pole at the parameter origin");
        self.num.coeff(0) / self.den.coeff(0)
    }

    /// Order of vanishing at 0 (num order minus den order); `None` if zero.
    pub fn ord0(&self) -> Option<i64> {
        let n = self.num.ord0()? as i64;
        let d = self.den.ord0().expect("nonzero denominator") as i64;
        Some(n - d)
    }

    pub fn add(&self, other: &Self) -> Self {
        RatFunc1::new(
            self.num.mul(&other.den).add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc1 {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub_const(&self, c: &Rat) -> Self {
        self.sub(&RatFunc1::constant(c.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        RatFunc1::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.is_zero(), "division by zero rational function");
        RatFunc1::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn derivative(&self) -> Self {
        RatFunc1::new(
            self.num
                .derivative()
                .mul(&self.den)
                .sub(&self.num.mul(&self.den.derivative())),
            self.den.mul(&self.den),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut out = RatFunc1::constant(Rat::one());
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }
}

/// Evaluate a bivariate polynomial on a pair of rational functions.
pub fn eval_poly2(p: &Poly2, fx: &RatFunc1, fy: &RatFunc1) -> RatFunc1 {
    let mut xpows = vec![RatFunc1::constant(Rat::one())];
    let mut ypows = vec![RatFunc1::constant(Rat::one())];
    let mut acc = RatFunc1::zero();
    for (e, c) in p.terms() {
        while xpows.len() <= e.i as usize {
            let next = xpows.last().unwrap().mul(fx);
            xpows.push(next);
        }
        while ypows.len() <= e.j as usize {
            let next = ypows.last().unwrap().mul(fy);
            ypows.push(next);
        }
        let term = xpows[e.i as usize]
            .mul(&ypows[e.j as usize])
            .mul(&RatFunc1::constant(c.clone()));
        acc = acc.add(&term);
    }
    acc
}

impl fmt::Display for RatFunc1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) && self.den.coeff(0).is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, rat_i};

    fn p(coeffs: &[i64]) -> Poly1 {
        Poly1::from_coeffs(coeffs.iter().map(|&c| rat_i(c)).collect())
    }

    #[test]
    fn reduction_cancels_common_factors() {
        // s^2(s-1) / s(s-1) = s
        let f = RatFunc1::new(p(&[0, 0, -1, 1]), p(&[0, -1, 1]));
        assert_eq!(f, RatFunc1::var());
    }

    #[test]
    fn ord_and_eval() {
        let f = RatFunc1::new(p(&[0, 1]), p(&[-2, 1])); // s/(s-2)
        assert!(f.regular_at_0());
        assert_eq!(f.ord0(), Some(1));
        assert_eq!(f.eval0(), rat_i(0));
        let g = f.sub_const(&rat(1, 2));
        assert_eq!(g.eval0(), rat(-1, 2));
    }

    #[test]
    fn derivative_quotient_rule() {
        // d/ds [s^2/(1+s)] = (s^2 + 2s)/(1+s)^2
        let f = RatFunc1::new(p(&[0, 0, 1]), p(&[1, 1]));
        let d = f.derivative();
        let expected = RatFunc1::new(p(&[0, 2, 1]), p(&[1, 1]).mul(&p(&[1, 1])));
        assert_eq!(d, expected);
    }
}
