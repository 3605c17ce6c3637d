//! Elementary point blow-ups in explicit charts.
//!
//! Conventions, fixed once for the whole crate. A blow-up at the local origin
//! is covered by two charts:
//!
//! * chart U: (x, y) = (u, u v); the exceptional curve is {u = 0}, the
//!   divisor coordinate is v = y/x and the chart covers every direction
//!   (1 : m);
//! * chart V: (x, y) = (u v, v); the exceptional curve is {v = 0}, the
//!   divisor coordinate is u = x/y, and only its origin (direction (0 : 1))
//!   is new relative to chart U.
//!
//! The strict transform of the axis {y = 0} is {v = 0} in chart U; the
//! strict transform of {x = 0} is {u = 0} in chart V.


use crate::algebra::poly2::Poly2;
use crate::algebra::ratfunc::{eval_poly2, RatFunc1};
use crate::foliation::multiplicity_pair;

/// Which chart of a blow-up.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartKind {
    U,
    V,
}

/// Local equation of a divisor branch through a point, as a coordinate axis.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchAxis {
    /// {first coordinate = 0}
    U,
    /// {second coordinate = 0}
    V,
}

/// Exact pullback of `a dx + b dy` under the two chart maps, including the
/// transformation of the differentials.
pub fn pullback_form(a: &Poly2, b: &Poly2) -> ((Poly2, Poly2), (Poly2, Poly2)) {
    (pullback_chart_u(a, b), pullback_chart_v(a, b))
}

/// Chart U: dx = du, dy = v du + u dv.
pub fn pullback_chart_u(a: &Poly2, b: &Poly2) -> (Poly2, Poly2) {
    let x = Poly2::var_x();
    let y = Poly2::var_y();
    let sub = x.mul(&y);
    let a_s = a.substitute(&x, &sub);
    let b_s = b.substitute(&x, &sub);
    let new_a = a_s.add(&y.mul(&b_s));
    let new_b = x.mul(&b_s);
    (new_a, new_b)
}

/// Chart V: dx = v du + u dv, dy = dv.
pub fn pullback_chart_v(a: &Poly2, b: &Poly2) -> (Poly2, Poly2) {
    let x = Poly2::var_x();
    let y = Poly2::var_y();
    let sub = x.mul(&y);
    let a_s = a.substitute(&sub, &y);
    let b_s = b.substitute(&sub, &y);
    let new_a = y.mul(&a_s);
    let new_b = x.mul(&a_s).add(&b_s);
    (new_a, new_b)
}

/// Tangent-cone test: the blow-up of the origin is dicritical iff
/// `x a_nu + y b_nu` vanishes identically, where nu is the multiplicity and
/// a_nu, b_nu the homogeneous parts of that degree. A regular origin
/// (nu = 0) is never dicritical.
pub fn is_dicritical_center(a: &Poly2, b: &Poly2) -> bool {
    let nu = multiplicity_pair(a, b);
    if nu == 0 {
        return false;
    }
    let radial = Poly2::var_x()
        .mul(&a.homogeneous_part(nu))
        .add(&Poly2::var_y().mul(&b.homogeneous_part(nu)));
    radial.is_zero()
}

/// Blow-up of the local origin with the exceptional factor divided out.
#[derive(Clone, Debug)]
pub struct Divided {
    pub chart_u: (Poly2, Poly2),
    pub chart_v: (Poly2, Poly2),
    /// Division exponent: nu for a non-dicritical center, nu + 1 otherwise.
    pub m: u32,
    pub nu: u32,
    pub dicritical: bool,
}

pub fn divided_transform(a: &Poly2, b: &Poly2) -> Divided {
    let nu = multiplicity_pair(a, b);
    let dicritical = is_dicritical_center(a, b);
    let m = nu + dicritical as u32;

    let (ua, ub) = pullback_chart_u(a, b);
    let chart_u = (
        ua.div_xpow(m).expect("exceptional factor divides chart U"),
        ub.div_xpow(m).expect("exceptional factor divides chart U"),
    );
    let (va, vb) = pullback_chart_v(a, b);
    let chart_v = (
        va.div_ypow(m).expect("exceptional factor divides chart V"),
        vb.div_ypow(m).expect("exceptional factor divides chart V"),
    );

    // the divided pair must not vanish identically on the new divisor
    debug_assert!(
        chart_u.0.val_x() == Some(0) || chart_u.1.val_x() == Some(0),
        "division exponent not maximal"
    );
    Divided {
        chart_u,
        chart_v,
        m,
        nu,
        dicritical,
    }
}

/// Strict transform of a curve f through the blow-up of the origin:
/// the pullback divided by the exceptional coordinate to the power
/// `ord_0(f)`. Returns both charts and the order.
pub fn strict_transform(f: &Poly2) -> ((Poly2, Poly2), u32) {
    assert!(!f.is_zero(), "strict transform of the zero curve");
    let nu = f.order_at_origin().unwrap();
    let x = Poly2::var_x();
    let y = Poly2::var_y();
    let fu = f
        .substitute(&x, &x.mul(&y))
        .div_xpow(nu)
        .expect("order divides in chart U");
    let fv = f
        .substitute(&x.mul(&y), &y)
        .div_ypow(nu)
        .expect("order divides in chart V");
    ((fu, fv), nu)
}

/// One step of pushing a parametrized germ (x(s), y(s)) with x(0)=y(0)=0 up
/// through the blow-up of the origin. Picks the chart containing the strict
/// transform of the branch and returns it with the new parametrization.
pub fn push_param_up(x: &RatFunc1, y: &RatFunc1) -> (ChartKind, RatFunc1, RatFunc1) {
    let ox = x.ord0();
    let oy = y.ord0();
    match (ox, oy) {
        (None, None) => panic!("constant parametrization"),
        // y identically zero: the germ is the x-axis, strict transform {v=0}
        (Some(_), None) => (ChartKind::U, x.clone(), RatFunc1::zero()),
        // x identically zero: the germ is the y-axis, strict transform {u=0}
        (None, Some(_)) => (ChartKind::V, RatFunc1::zero(), y.clone()),
        (Some(a), Some(b)) => {
            if a <= b {
                // chart U: u = x(s), v = y(s)/x(s)
                (ChartKind::U, x.clone(), y.div(x))
            } else {
                // chart V: u = x(s)/y(s), v = y(s)
                (ChartKind::V, x.div(y), y.clone())
            }
        }
    }
}

/// Evaluate the 1-form on the velocity of a parametrized germ:
/// a(g(s)) x'(s) + b(g(s)) y'(s). Identically zero iff the branch is
/// invariant.
pub fn form_on_parametrization(
    a: &Poly2,
    b: &Poly2,
    x: &RatFunc1,
    y: &RatFunc1,
) -> RatFunc1 {
    let av = eval_poly2(a, x, y);
    let bv = eval_poly2(b, x, y);
    av.mul(&x.derivative()).add(&bv.mul(&y.derivative()))
}

/// Apply the chart substitution to a parametrization when pushing DOWN:
/// chart U sends (u(s), v(s)) to (u, u v) in the frame below, chart V to
/// (u v, v). Translation to the center's position is the caller's step.
pub fn push_param_down(kind: ChartKind, u: &RatFunc1, v: &RatFunc1) -> (RatFunc1, RatFunc1) {
    match kind {
        ChartKind::U => (u.clone(), u.mul(v)),
        ChartKind::V => (u.mul(v), v.clone()),
    }
}
