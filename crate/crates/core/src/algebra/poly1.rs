//! Dense univariate polynomials over `Rat`.
//!
//! Used for restrictions of bivariate polynomials to coordinate axes and for
//! root hunting along divisor components. Coefficients are indexed by degree;
//! the leading coefficient is nonzero unless the polynomial is zero.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::{rat_to_string, Rat};

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly1 {
    coeffs: Vec<Rat>,
}

impl Poly1 {
    pub fn zero() -> Self {
        Poly1 { coeffs: vec![] }
    }

    pub fn constant(c: Rat) -> Self {
        Poly1 { coeffs: vec![c] }.normalized()
    }

    pub fn var() -> Self {
        Poly1 {
            coeffs: vec![Rat::zero(), Rat::one()],
        }
    }

    pub fn from_coeffs(coeffs: Vec<Rat>) -> Self {
        Poly1 { coeffs }.normalized()
    }

    fn normalized(mut self) -> Self {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Rat> {
        self.coeffs.last()
    }

    /// Order of vanishing at 0; `None` for the zero polynomial.
    pub fn ord0(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * t + c;
        }
        acc
    }

    pub fn add(&self, other: &Poly1) -> Poly1 {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        Poly1 { coeffs: out }.normalized()
    }

    pub fn sub(&self, other: &Poly1) -> Poly1 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly1 {
        Poly1 {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly1 {
        if c.is_zero() {
            return Poly1::zero();
        }
        Poly1 {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn mul(&self, other: &Poly1) -> Poly1 {
        if self.is_zero() || other.is_zero() {
            return Poly1::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly1 { coeffs: out }.normalized()
    }

    pub fn derivative(&self) -> Poly1 {
        if self.coeffs.len() <= 1 {
            return Poly1::zero();
        }
        let mut out = Vec::with_capacity(self.coeffs.len() - 1);
        for (k, c) in self.coeffs.iter().enumerate().skip(1) {
            out.push(c * Rat::from_integer(BigInt::from(k)));
        }
        Poly1 { coeffs: out }.normalized()
    }

    /// Substitution t -> t + c.
    pub fn shift(&self, c: &Rat) -> Poly1 {
        let mut acc = Poly1::zero();
        let tc = Poly1::from_coeffs(vec![c.clone(), Rat::one()]);
        for coef in self.coeffs.iter().rev() {
            acc = acc.mul(&tc).add(&Poly1::constant(coef.clone()));
        }
        acc
    }

    pub fn divrem(&self, d: &Poly1) -> (Poly1, Poly1) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.degree().unwrap();
        let lead = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quo = vec![Rat::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let c = rem.leading().unwrap() / &lead;
            let k = rd - dd;
            quo[k] = c.clone();
            let mut shifted = vec![Rat::zero(); k];
            shifted.extend(d.coeffs.iter().map(|a| a * &c));
            rem = rem.sub(&Poly1 { coeffs: shifted });
        }
        (Poly1 { coeffs: quo }.normalized(), rem)
    }

    pub fn div_exact(&self, d: &Poly1) -> Option<Poly1> {
        let (q, r) = self.divrem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients. Zero polynomial has content 1.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in &self.coeffs {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rat::new(num, den)
    }

    /// Content-free copy with positive leading coefficient.
    pub fn primitive(&self) -> Poly1 {
        if self.is_zero() {
            return Poly1::zero();
        }
        let mut p = self.scale(&self.content().recip());
        if p.leading().unwrap().is_negative() {
            p = p.neg();
        }
        p
    }

    pub fn gcd(&self, other: &Poly1) -> Poly1 {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.primitive()
    }
}

/// All rational roots with exact multiplicities plus the rational-root-free
/// cofactor. The reconstruction identity
/// `leading * prod (t - r_i)^{m_i} * residual/lc(residual) ... ` is checked in
/// tests in the equivalent form `prod (t - r_i)^{m_i} * residual == q`.
pub fn rational_roots(q: &Poly1) -> (Vec<(Rat, usize)>, Poly1) {
    assert!(!q.is_zero(), "rational_roots of the zero polynomial");
    let mut roots: Vec<(Rat, usize)> = Vec::new();
    let mut rest = q.clone();

    // roots at zero
    if let Some(k) = rest.ord0() {
        if k > 0 {
            roots.push((Rat::zero(), k));
            rest = Poly1 {
                coeffs: rest.coeffs[k..].to_vec(),
            };
        }
    }
    if rest.degree() == Some(0) || rest.degree().is_none() {
        return (roots, rest);
    }

    // primitive integer model for candidate enumeration
    let prim = rest.primitive();
    let a0 = prim.coeff(0).numer().abs();
    let an = prim.leading().unwrap().numer().abs();
    let mut candidates: Vec<Rat> = Vec::new();
    for p in divisors(&a0) {
        for qd in divisors(&an) {
            if p.gcd(&qd).is_one() {
                candidates.push(Rat::new(p.clone(), qd.clone()));
                candidates.push(Rat::new(-p.clone(), qd));
            }
        }
    }
    candidates.sort();
    candidates.dedup();

    for cand in candidates {
        if rest.degree() == Some(0) {
            break;
        }
        if !rest.eval(&cand).is_zero() {
            continue;
        }
        let lin = Poly1::from_coeffs(vec![-cand.clone(), Rat::one()]);
        let mut mult = 0usize;
        while let Some(qq) = rest.div_exact(&lin) {
            rest = qq;
            mult += 1;
        }
        roots.push((cand, mult));
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    (roots, rest)
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    assert!(n.is_positive(), "divisors of a nonpositive integer");
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            out.push(n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

impl fmt::Display for Poly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            let show_coeff = k == 0 || !a.is_one();
            if show_coeff {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({})", rat_to_string(&a))?;
                }
            }
            if k >= 1 {
                write!(f, "t")?;
                if k > 1 {
                    write!(f, "^{}", k)?;
                }
            }
        }
        Ok(())
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
    fn roots_of_split_quadratic() {
        // t^2 - 3t + 2
        let (roots, rest) = rational_roots(&p(&[2, -3, 1]));
        assert_eq!(roots, vec![(rat_i(1), 1), (rat_i(2), 1)]);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn irrational_quadratic_left_alone() {
        let q = p(&[-2, 0, 1]);
        let (roots, rest) = rational_roots(&q);
        assert!(roots.is_empty());
        assert_eq!(rest, q);
    }

    #[test]
    fn triple_zero_root() {
        let (roots, rest) = rational_roots(&p(&[0, 0, 0, 1]));
        assert_eq!(roots, vec![(rat_i(0), 3)]);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn fractional_root() {
        // (2t - 1)(t + 3) = 2t^2 + 5t - 3
        let (roots, rest) = rational_roots(&p(&[-3, 5, 2]));
        assert_eq!(roots, vec![(rat_i(-3), 1), (rat(1, 2), 1)]);
        assert_eq!(rest.degree(), Some(0));
    }

    #[test]
    fn reconstruction_identity() {
        // q = 3 (t-1)^2 (t+2) (t^2+1)
        let q = p(&[1, 0, 1])
            .mul(&p(&[-1, 1]))
            .mul(&p(&[-1, 1]))
            .mul(&p(&[2, 1]))
            .scale(&rat_i(3));
        let (roots, rest) = rational_roots(&q);
        let mut recon = rest.clone();
        for (r, m) in &roots {
            let lin = Poly1::from_coeffs(vec![-r.clone(), Rat::one()]);
            for _ in 0..*m {
                recon = recon.mul(&lin);
            }
        }
        assert_eq!(recon, q);
    }

    #[test]
    fn shift_and_eval_agree() {
        let q = p(&[1, -4, 0, 2]);
        let s = q.shift(&rat(3, 2));
        assert_eq!(s.eval(&rat_i(0)), q.eval(&rat(3, 2)));
        assert_eq!(s.eval(&rat_i(2)), q.eval(&rat(7, 2)));
    }

    #[test]
    fn gcd_of_products() {
        let a = p(&[-1, 1]).mul(&p(&[1, 1]));
        let b = p(&[-1, 1]).mul(&p(&[5, 3]));
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }
}
