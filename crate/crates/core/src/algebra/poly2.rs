//! Sparse bivariate polynomials over `Rat`.
//!
//! Terms live in a `BTreeMap` keyed by exponent pairs under graded
//! lexicographic order (total degree first, then x-exponent), so iteration is
//! deterministic and the leading term is the maximal key. No zero coefficient
//! is ever stored; the zero polynomial is the empty map.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly1::Poly1;
use super::rat::{rat_to_string, Rat};

/// Exponent pair with graded-lex ordering.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Exp2 {
    pub i: u32,
    pub j: u32,
}

impl Exp2 {
    pub fn total(&self) -> u32 {
        self.i + self.j
    }
}

impl Ord for Exp2 {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.total(), self.i).cmp(&(other.total(), other.i))
    }
}

impl PartialOrd for Exp2 {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Poly2 {
    terms: BTreeMap<Exp2, Rat>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2 {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Poly2::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        let mut p = Poly2::zero();
        p.add_term(0, 0, c);
        p
    }

    pub fn var_x() -> Self {
        Poly2::monomial(1, 0, Rat::one())
    }

    pub fn var_y() -> Self {
        Poly2::monomial(0, 1, Rat::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut p = Poly2::zero();
        p.add_term(i, j, c);
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = Exp2 { i, j };
        let entry = self.terms.entry(key).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.total() == 0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Exp2, &Rat)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms
            .get(&Exp2 { i, j })
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.total()).max()
    }

    /// Minimum total degree over stored terms; `None` for the zero polynomial
    /// (read: infinity).
    pub fn order_at_origin(&self) -> Option<u32> {
        self.terms.keys().next().map(|e| e.total())
    }

    /// Sum of the terms of total degree exactly `k`.
    pub fn homogeneous_part(&self, k: u32) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            if e.total() == k {
                out.add_term(e.i, e.j, c.clone());
            }
        }
        out
    }

    /// Minimum x-exponent over stored terms.
    pub fn val_x(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.i).min()
    }

    pub fn val_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.j).min()
    }

    pub fn add(&self, other: &Poly2) -> Poly2 {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.i, e.j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly2) -> Poly2 {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (*e, -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Poly2 {
        if c.is_zero() {
            return Poly2::zero();
        }
        Poly2 {
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, a) in &self.terms {
            for (f, b) in &other.terms {
                out.add_term(e.i + f.i, e.j + f.j, a * b);
            }
        }
        out
    }

    pub fn mul_monomial(&self, i: u32, j: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exp2 { i: e.i + i, j: e.j + j }, c.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Poly2 {
        let mut out = Poly2::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for _ in 0..e.i {
                t *= x;
            }
            for _ in 0..e.j {
                t *= y;
            }
            acc += t;
        }
        acc
    }

    pub fn dx(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            if e.i > 0 {
                out.add_term(e.i - 1, e.j, c * Rat::from_integer(BigInt::from(e.i)));
            }
        }
        out
    }

    pub fn dy(&self) -> Poly2 {
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            if e.j > 0 {
                out.add_term(e.i, e.j - 1, c * Rat::from_integer(BigInt::from(e.j)));
            }
        }
        out
    }

    /// `p(sx, sy)` expanded exactly. Powers of the substituted values are
    /// cached per exponent.
    pub fn substitute(&self, sx: &Poly2, sy: &Poly2) -> Poly2 {
        let mut xpows: Vec<Poly2> = vec![Poly2::one()];
        let mut ypows: Vec<Poly2> = vec![Poly2::one()];
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            while xpows.len() <= e.i as usize {
                let next = xpows.last().unwrap().mul(sx);
                xpows.push(next);
            }
            while ypows.len() <= e.j as usize {
                let next = ypows.last().unwrap().mul(sy);
                ypows.push(next);
            }
            out = out.add(&xpows[e.i as usize].mul(&ypows[e.j as usize]).scale(c));
        }
        out
    }

    /// Substitution (x, y) -> (x + cx, y + cy).
    pub fn translate(&self, cx: &Rat, cy: &Rat) -> Poly2 {
        if cx.is_zero() && cy.is_zero() {
            return self.clone();
        }
        let sx = Poly2::var_x().add(&Poly2::constant(cx.clone()));
        let sy = Poly2::var_y().add(&Poly2::constant(cy.clone()));
        self.substitute(&sx, &sy)
    }

    pub fn swap_xy(&self) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (Exp2 { i: e.j, j: e.i }, c.clone()))
                .collect(),
        }
    }

    /// `p(x, 0)` as a univariate polynomial in x.
    pub fn restrict_y0(&self) -> Poly1 {
        let mut coeffs = vec![];
        for (e, c) in &self.terms {
            if e.j == 0 {
                let i = e.i as usize;
                if coeffs.len() <= i {
                    coeffs.resize(i + 1, Rat::zero());
                }
                coeffs[i] = c.clone();
            }
        }
        Poly1::from_coeffs(coeffs)
    }

    /// `p(0, y)` as a univariate polynomial in y.
    pub fn restrict_x0(&self) -> Poly1 {
        self.swap_xy().restrict_y0()
    }

    /// Exact division by x^k; `None` if some term has x-exponent below k.
    pub fn div_xpow(&self, k: u32) -> Option<Poly2> {
        if k == 0 {
            return Some(self.clone());
        }
        let mut out = Poly2::zero();
        for (e, c) in &self.terms {
            if e.i < k {
                return None;
            }
            out.add_term(e.i - k, e.j, c.clone());
        }
        Some(out)
    }

    pub fn div_ypow(&self, k: u32) -> Option<Poly2> {
        self.swap_xy().div_xpow(k).map(|p| p.swap_xy())
    }

    /// Exact multivariate division: `Some(q)` with `self = q * d` when the
    /// divisor divides, `None` otherwise. Single-divisor leading-term
    /// cancellation is exact here: if the quotient exists its terms are forced
    /// one by one, and any failure to cancel proves indivisibility.
    pub fn div_exact(&self, d: &Poly2) -> Option<Poly2> {
        assert!(!d.is_zero(), "division by zero polynomial");
        let (dlead, dcoef) = d.terms.iter().next_back().map(|(e, c)| (*e, c.clone()))?;
        let mut rem = self.clone();
        let mut quo = Poly2::zero();
        while !rem.is_zero() {
            let (rlead, rcoef) = {
                let (e, c) = rem.terms.iter().next_back().unwrap();
                (*e, c.clone())
            };
            if rlead.i < dlead.i || rlead.j < dlead.j {
                return None;
            }
            let mono = Exp2 {
                i: rlead.i - dlead.i,
                j: rlead.j - dlead.j,
            };
            let c = rcoef / &dcoef;
            let piece = Poly2::monomial(mono.i, mono.j, c);
            rem = rem.sub(&piece.mul(d));
            quo = quo.add(&piece);
        }
        Some(quo)
    }

    /// Positive rational `c` such that `self / c` has coprime integer
    /// coefficients.
    pub fn content(&self) -> Rat {
        if self.is_zero() {
            return Rat::one();
        }
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for c in self.terms.values() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
        Rat::new(num, den)
    }

    /// Content 1, leading (graded-lex greatest) coefficient positive.
    pub fn normalize(&self) -> Poly2 {
        if self.is_zero() {
            return Poly2::zero();
        }
        let mut p = self.scale(&self.content().recip());
        if p.terms.values().next_back().unwrap().is_negative() {
            p = p.neg();
        }
        p
    }

    /// View as a polynomial in y with `Poly1` coefficients in x.
    fn y_view(&self) -> Vec<Poly1> {
        let degy = self.terms.keys().map(|e| e.j).max().unwrap_or(0) as usize;
        let mut out = vec![Poly1::zero(); degy + 1];
        for (e, c) in &self.terms {
            let j = e.j as usize;
            let mut coeffs = vec![Rat::zero(); e.i as usize + 1];
            coeffs[e.i as usize] = c.clone();
            out[j] = out[j].add(&Poly1::from_coeffs(coeffs));
        }
        out
    }

    fn from_y_view(view: &[Poly1]) -> Poly2 {
        let mut out = Poly2::zero();
        for (j, p) in view.iter().enumerate() {
            for (i, c) in p.coeffs().iter().enumerate() {
                out.add_term(i as u32, j as u32, c.clone());
            }
        }
        out
    }

    fn embed_x(p: &Poly1) -> Poly2 {
        let mut out = Poly2::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(i as u32, 0, c.clone());
        }
        out
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.j).max()
    }
}

/// True iff there is a polynomial h with `g = f * h`, decided exactly.
pub fn divides(f: &Poly2, g: &Poly2) -> bool {
    assert!(!f.is_zero(), "divisibility by the zero polynomial");
    if g.is_zero() {
        return true;
    }
    g.div_exact(f).is_some()
}

/// A greatest common divisor, content 1, leading coefficient positive.
///
/// Primitive Euclidean recursion on Q[x][y]: split off the x-content of each
/// argument, run a pseudo-remainder sequence on the primitive parts, and glue
/// the univariate gcd of the contents back on.
pub fn gcd2(f: &Poly2, g: &Poly2) -> Poly2 {
    assert!(
        !(f.is_zero() && g.is_zero()),
        "gcd of two zero polynomials"
    );
    if f.is_zero() {
        return g.normalize();
    }
    if g.is_zero() {
        return f.normalize();
    }

    // Reduce to primitive parts in y over Q[x].
    let fv = f.y_view();
    let gv = g.y_view();
    let fc = x_content(&fv);
    let gc = x_content(&gv);
    let cont = fc.gcd(&gc);

    let fp = divide_view(&fv, &fc);
    let gp = divide_view(&gv, &gc);

    let prim = primitive_gcd_y(fp, gp);
    Poly2::from_y_view(&prim)
        .mul(&Poly2::embed_x(&cont))
        .normalize()
}

fn x_content(view: &[Poly1]) -> Poly1 {
    let mut c = Poly1::zero();
    for p in view {
        if p.is_zero() {
            continue;
        }
        c = if c.is_zero() { p.primitive() } else { c.gcd(p) };
        if c.degree() == Some(0) {
            break;
        }
    }
    if c.is_zero() {
        Poly1::constant(Rat::one())
    } else {
        c
    }
}

fn divide_view(view: &[Poly1], d: &Poly1) -> Vec<Poly1> {
    view.iter()
        .map(|p| {
            if p.is_zero() {
                Poly1::zero()
            } else {
                p.div_exact(d).expect("content division is exact")
            }
        })
        .collect()
}

fn trim(mut v: Vec<Poly1>) -> Vec<Poly1> {
    while v.last().is_some_and(|p| p.is_zero()) {
        v.pop();
    }
    v
}

fn primitive_gcd_y(a: Vec<Poly1>, b: Vec<Poly1>) -> Vec<Poly1> {
    let mut a = trim(a);
    let mut b = trim(b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        if b.len() == 1 {
            // A nonzero x-free-content constant in y divides primitives only
            // through its x-content, which is 1 here.
            return vec![Poly1::constant(Rat::one())];
        }
        let r = prem_y(&a, &b);
        a = b;
        b = make_primitive(trim(r));
    }
    make_primitive(a)
}

fn make_primitive(v: Vec<Poly1>) -> Vec<Poly1> {
    if v.is_empty() {
        return v;
    }
    let c = x_content(&v);
    divide_view(&v, &c)
}

/// Pseudo-remainder of a by b in the main variable y over Q[x].
fn prem_y(a: &[Poly1], b: &[Poly1]) -> Vec<Poly1> {
    let db = b.len() - 1;
    let lb = b[db].clone();
    let mut r: Vec<Poly1> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        // r := lb * r - lr * y^(dr-db) * b
        let mut nr = vec![Poly1::zero(); dr.max(db + dr - db) + 1];
        for (k, p) in r.iter().enumerate() {
            nr[k] = p.mul(&lb);
        }
        for (k, p) in b.iter().enumerate() {
            let idx = k + dr - db;
            nr[idx] = nr[idx].sub(&p.mul(&lr));
        }
        r = trim(nr);
        if r.is_empty() {
            break;
        }
    }
    r
}

impl fmt::Display for Poly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
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
            let show_coeff = e.total() == 0 || !a.is_one();
            if show_coeff {
                if a.denom().is_one() {
                    write!(f, "{}", a.numer())?;
                } else {
                    write!(f, "({})", rat_to_string(&a))?;
                }
            }
            if e.i >= 1 {
                write!(f, "x")?;
                if e.i > 1 {
                    write!(f, "^{}", e.i)?;
                }
            }
            if e.j >= 1 {
                write!(f, "y")?;
                if e.j > 1 {
                    write!(f, "^{}", e.j)?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat_i;

    fn x() -> Poly2 {
        Poly2::var_x()
    }
    fn y() -> Poly2 {
        Poly2::var_y()
    }

    #[test]
    fn order_at_origin_examples() {
        // x^2 y + y^3 -> 3
        let p = x().pow(2).mul(&y()).add(&y().pow(3));
        assert_eq!(p.order_at_origin(), Some(3));
        assert_eq!(Poly2::one().add(&x()).order_at_origin(), Some(0));
        assert_eq!(Poly2::zero().order_at_origin(), None);
    }

    #[test]
    fn homogeneous_part_examples() {
        let p = x().pow(2).add(&x().mul(&y())).add(&y());
        assert_eq!(p.homogeneous_part(2), x().pow(2).add(&x().mul(&y())));
        assert_eq!(p.homogeneous_part(1), y());
        assert_eq!(Poly2::zero().homogeneous_part(3), Poly2::zero());
    }

    #[test]
    fn divides_examples() {
        assert!(divides(&y(), &y().mul(&x()).add(&y().pow(2))));
        assert!(!divides(&y(), &x()));
        assert!(divides(&x().sub(&y()), &x().pow(2).sub(&y().pow(2))));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(
            gcd2(&x().pow(2).mul(&y()), &x().mul(&y().pow(2))),
            x().mul(&y())
        );
        assert_eq!(gcd2(&x(), &y()), Poly2::one());
        assert_eq!(
            gcd2(&x().pow(2).sub(&y().pow(2)), &x().sub(&y())),
            x().sub(&y())
        );
    }

    #[test]
    fn substitute_examples() {
        // (y - x^2)(x, x*t) = xt - x^2 with t in the y slot
        let p = y().sub(&x().pow(2));
        let s = p.substitute(&x(), &x().mul(&y()));
        assert_eq!(s, x().mul(&y()).sub(&x().pow(2)));

        let q = x().add(&y());
        assert_eq!(
            q.substitute(&x().add(&Poly2::one()), &y()),
            x().add(&y()).add(&Poly2::one())
        );

        assert_eq!(x().pow(2).substitute(&y(), &x()), y().pow(2));
    }

    #[test]
    fn order_is_additive() {
        let p = x().pow(2).mul(&y()).add(&y().pow(3));
        let q = x().add(&y().pow(2));
        assert_eq!(
            p.mul(&q).order_at_origin(),
            Some(p.order_at_origin().unwrap() + q.order_at_origin().unwrap())
        );
    }

    #[test]
    fn gcd_with_content() {
        // 6x(x+y) vs 4x^2(x+y)^2
        let f = x().mul(&x().add(&y())).scale(&rat_i(6));
        let g = x().pow(2).mul(&x().add(&y()).pow(2)).scale(&rat_i(4));
        assert_eq!(gcd2(&f, &g), x().mul(&x().add(&y())));
    }

    #[test]
    fn display_reads_back() {
        let p = x()
            .pow(2)
            .scale(&rat_i(-3))
            .add(&y().pow(2).mul(&x()))
            .add(&Poly2::constant(crate::algebra::rat::rat(2, 3)));
        assert_eq!(format!("{}", p), "xy^2 - 3x^2 + (2/3)");
    }
}
