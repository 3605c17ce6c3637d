//! Foliation germs given by polynomial 1-forms and their pointwise data:
//! multiplicity, the separatrix test, singularity classification, index and
//! tangency order along a smooth curve in normalized position.

use num_traits::{One, Signed, Zero};

use crate::algebra::poly2::{divides, gcd2, Poly2};
use crate::algebra::rat::{is_rational_square, Rat};
use crate::error::{Error, Result};

/// Germ of foliation `a dx + b dy`, primitivized at construction: the gcd of
/// the raw coefficient pair is divided out and kept for reconstruction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneForm {
    a: Poly2,
    b: Poly2,
    removed: Poly2,
}

impl OneForm {
    pub fn new(a_raw: Poly2, b_raw: Poly2) -> Result<Self> {
        if a_raw.is_zero() && b_raw.is_zero() {
            return Err(Error::ZeroForm);
        }
        let g = gcd2(&a_raw, &b_raw);
        if g.is_constant() {
            return Ok(OneForm {
                a: a_raw,
                b: b_raw,
                removed: Poly2::one(),
            });
        }
        let a = a_raw.div_exact(&g).expect("gcd divides");
        let b = b_raw.div_exact(&g).expect("gcd divides");
        Ok(OneForm { a, b, removed: g })
    }

    /// Coefficient of dx.
    pub fn a(&self) -> &Poly2 {
        &self.a
    }

    /// Coefficient of dy.
    pub fn b(&self) -> &Poly2 {
        &self.b
    }

    pub fn pair(&self) -> (&Poly2, &Poly2) {
        (&self.a, &self.b)
    }

    /// Common factor divided out at construction (1 when the input was
    /// already primitive).
    pub fn removed_factor(&self) -> &Poly2 {
        &self.removed
    }

    /// min(ord a, ord b) at the origin.
    pub fn multiplicity(&self) -> u32 {
        multiplicity_pair(&self.a, &self.b)
    }
}

pub fn multiplicity_pair(a: &Poly2, b: &Poly2) -> u32 {
    match (a.order_at_origin(), b.order_at_origin()) {
        (Some(p), Some(q)) => p.min(q),
        (Some(p), None) => p,
        (None, Some(q)) => q,
        (None, None) => unreachable!("zero form"),
    }
}

/// Rational projective tangent direction in the plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Direction (1 : m), tangent to a curve `y = m x + ...`.
    Slope(Rat),
    /// Direction (0 : 1), tangent to `x = 0`.
    Vertical,
}

impl Direction {
    fn from_vector(dx: Rat, dy: Rat) -> Direction {
        if dx.is_zero() {
            assert!(!dy.is_zero(), "zero direction vector");
            Direction::Vertical
        } else {
            Direction::Slope(dy / dx)
        }
    }
}

/// Classification of the germ at a point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SingClass {
    Regular,
    /// Simple non-degenerate singularity: eigenvalue ratio of the dual vector
    /// field is not a positive rational. Rational eigenvalues are recorded
    /// when they exist.
    Reduced {
        trace: Rat,
        det: Rat,
        eigenvalues: Option<(Rat, Rat)>,
    },
    /// Exactly one eigenvalue zero. The strong direction carries the nonzero
    /// eigenvalue, the weak direction spans the kernel.
    SaddleNode { strong: Direction, weak: Direction },
    NonReduced,
}

impl SingClass {
    pub fn is_singular(&self) -> bool {
        !matches!(self, SingClass::Regular)
    }

    pub fn name(&self) -> &'static str {
        match self {
            SingClass::Regular => "regular",
            SingClass::Reduced { .. } => "reduced",
            SingClass::SaddleNode { .. } => "saddle-node",
            SingClass::NonReduced => "non-reduced",
        }
    }
}

/// Classify the origin for the raw coefficient pair `a dx + b dy`.
///
/// The test runs on the dual vector field X = -b d/dx + a d/dy. With
/// `omega = lambda x dy + y dx` the eigenvalues of X are `-lambda` and `1`,
/// so "ratio not a positive rational" matches the usual exclusion of
/// negative rational lambda. A non-square discriminant forces an irrational
/// (or non-real) ratio except in the trace-zero case, where the ratio is -1;
/// both are simple.
pub fn classify_pair(a: &Poly2, b: &Poly2) -> SingClass {
    if !a.coeff(0, 0).is_zero() || !b.coeff(0, 0).is_zero() {
        return SingClass::Regular;
    }
    // Linear part of X: rows d(-b), d(a).
    let m11 = -b.coeff(1, 0);
    let m12 = -b.coeff(0, 1);
    let m21 = a.coeff(1, 0);
    let m22 = a.coeff(0, 1);
    let trace = &m11 + &m22;
    let det = &m11 * &m22 - &m12 * &m21;

    if !det.is_zero() {
        let disc = &trace * &trace - Rat::from_integer(4.into()) * &det;
        match is_rational_square(&disc) {
            None => SingClass::Reduced {
                trace,
                det,
                eigenvalues: None,
            },
            Some(s) => {
                let two = Rat::from_integer(2.into());
                let l1 = (&trace - &s) / &two;
                let l2 = (&trace + &s) / &two;
                if det.is_positive() {
                    // same-sign rational eigenvalues: positive ratio
                    SingClass::NonReduced
                } else {
                    SingClass::Reduced {
                        trace,
                        det,
                        eigenvalues: Some((l1, l2)),
                    }
                }
            }
        }
    } else if !trace.is_zero() {
        // rank-one linear part: saddle-node
        let strong = eigenvector(&m11, &m12, &m21, &m22, &trace);
        let weak = eigenvector(&m11, &m12, &m21, &m22, &Rat::zero());
        SingClass::SaddleNode { strong, weak }
    } else {
        SingClass::NonReduced
    }
}

/// Eigendirection of the 2x2 matrix for the given eigenvalue.
fn eigenvector(m11: &Rat, m12: &Rat, m21: &Rat, m22: &Rat, lambda: &Rat) -> Direction {
    // (m11 - l) dx + m12 dy = 0 or m21 dx + (m22 - l) dy = 0
    let a = m11 - lambda;
    if !a.is_zero() || !m12.is_zero() {
        Direction::from_vector(m12.clone(), -a)
    } else {
        let c = m22 - lambda;
        Direction::from_vector(c.clone(), -m21.clone())
    }
}

pub fn classify_at_origin(form: &OneForm) -> SingClass {
    classify_pair(form.a(), form.b())
}

/// Reduced equation of a curve germ through the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveGerm {
    f: Poly2,
}

impl CurveGerm {
    /// Requires f(0,0) = 0, f nonzero and squarefree.
    pub fn new(f: Poly2) -> Result<Self> {
        if f.is_zero() || !f.coeff(0, 0).is_zero() {
            return Err(Error::NotASeparatrix {
                curve: format!("{}", f),
            });
        }
        let fs = f.normalize();
        if !is_squarefree(&fs) {
            return Err(Error::NotASeparatrix {
                curve: format!("{} (not squarefree)", f),
            });
        }
        Ok(CurveGerm { f: fs })
    }

    pub fn poly(&self) -> &Poly2 {
        &self.f
    }
}

pub fn is_squarefree(f: &Poly2) -> bool {
    let fx = f.dx();
    let fy = f.dy();
    if fx.is_zero() && fy.is_zero() {
        return false; // nonzero constant cannot reach here; repeated factors otherwise
    }
    let d = if fx.is_zero() {
        fy
    } else if fy.is_zero() {
        fx
    } else {
        gcd2(&fx, &fy)
    };
    gcd2(f, &d).is_constant()
}

/// f divides df ^ omega, i.e. f | (f_x b - f_y a), decided exactly.
pub fn is_separatrix(f: &CurveGerm, form: &OneForm) -> bool {
    is_separatrix_pair(f.poly(), form.a(), form.b())
}

pub fn is_separatrix_pair(f: &Poly2, a: &Poly2, b: &Poly2) -> bool {
    let wedge = f.dx().mul(b).sub(&f.dy().mul(a));
    divides(f, &wedge)
}

/// Index along the invariant axis {y=0}: the order in x of b(x, 0).
pub fn ind(form: &OneForm) -> Result<u32> {
    ind_pair(form.a(), form.b())
}

pub fn ind_pair(a: &Poly2, b: &Poly2) -> Result<u32> {
    let y = Poly2::var_y();
    if !divides(&y, &a.clone()) {
        return Err(Error::NotInvariant);
    }
    let r = b.restrict_y0();
    match r.ord0() {
        Some(k) => Ok(k as u32),
        None => Err(Error::NotInvariant), // y divides both coefficients: degenerate input
    }
}

/// Tangency order along the non-invariant axis {y=0}: order in x of a(x, 0).
pub fn tan(form: &OneForm) -> Result<u32> {
    tan_pair(form.a(), form.b())
}

pub fn tan_pair(a: &Poly2, _b: &Poly2) -> Result<u32> {
    let y = Poly2::var_y();
    if divides(&y, &a.clone()) {
        return Err(Error::IsInvariant);
    }
    let r = a.restrict_y0();
    Ok(r.ord0().expect("nonzero restriction") as u32)
}

/// Affine normalization: move a rational point to the origin and a rational
/// line through it onto {y=0}. Only lines are accepted; every curve this
/// library measures against is an axis of some chart.
pub fn normalize_line(
    form: &OneForm,
    point: (&Rat, &Rat),
    line: &Poly2,
) -> Result<OneForm> {
    if line.degree() != Some(1) {
        return Err(Error::NotALine);
    }
    if !line.eval(point.0, point.1).is_zero() {
        return Err(Error::NotALine);
    }
    // translate the point to the origin
    let a0 = form.a().translate(point.0, point.1);
    let b0 = form.b().translate(point.0, point.1);
    let l = line.translate(point.0, point.1);
    // l = p x + q y with (p, q) != 0; send l to y via a linear map
    let p = l.coeff(1, 0);
    let q = l.coeff(0, 1);
    // choose (x, y) -> (x', y') with y' = p x + q y and x' transverse
    let (sx, sy, jac) = if q.is_zero() {
        // line is x = 0: swap coordinates, x = y', y = x'
        (
            Poly2::var_y(),
            Poly2::var_x(),
            [
                (Rat::zero(), Rat::one()),
                (Rat::one(), Rat::zero()),
            ],
        )
    } else {
        // x = x', y = (y' - p x') / q
        let sx = Poly2::var_x();
        let sy = Poly2::var_y()
            .sub(&Poly2::var_x().scale(&p))
            .scale(&q.recip());
        (
            sx,
            sy,
            [
                (Rat::one(), Rat::zero()),
                (-&p / &q, q.recip()),
            ],
        )
    };
    // pull the form back: a dx + b dy with dx = j00 dx' + j01 dy', ...
    let a_s = a0.substitute(&sx, &sy);
    let b_s = b0.substitute(&sx, &sy);
    let new_a = a_s.scale(&jac[0].0).add(&b_s.scale(&jac[1].0));
    let new_b = a_s.scale(&jac[0].1).add(&b_s.scale(&jac[1].1));
    OneForm::new(new_a, new_b)
}
