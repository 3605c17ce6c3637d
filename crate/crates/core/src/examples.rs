//! The dicritical family used for end-to-end verification, plus the fixed
//! corpus of germs every identity suite runs over.
//!
//! The family member with data (n, r_1..r_n, t_1..t_n) is the foliation of
//! the meromorphic function H = N / x^(r+1), where
//! `N = x^(r+2) - sum_j q_j x^(r+1-j) y^j`, Q(t) = sum q_j t^j has Q(0) = 0
//! and Q'(t) = prod (t - t_j)^(r_j), r = sum r_j. Clearing the pole gives the
//! polynomial 1-form `x dN - (r+1) N dx`. After one blow-up the foliation is
//! regular, the exceptional curve is not invariant, and the leaves
//! x = Q(t) + c meet it transversally except above the t_j, where the
//! contact order is r_j.

use num_traits::{One, Zero};

use crate::algebra::poly1::Poly1;
use crate::algebra::poly2::Poly2;
use crate::algebra::rat::{rat_i, Rat};
use crate::algebra::ratfunc::RatFunc1;
use crate::error::{Error, Result};
use crate::foliation::OneForm;
use crate::parse::parse_form;
use crate::reduction::TrackedCurve;

#[derive(Clone, Debug)]
pub struct KlughertzParams {
    pub n: usize,
    pub r: Vec<u32>,
    pub t: Vec<Rat>,
}

impl KlughertzParams {
    pub fn new(n: usize, r: Vec<u32>, t: Vec<Rat>) -> Result<Self> {
        if n < 2 || r.len() != n || t.len() != n {
            return Err(Error::InvalidParams(format!(
                "need n >= 2 with n orders and n tangency coordinates, got n={} r={} t={}",
                n,
                r.len(),
                t.len()
            )));
        }
        if r.contains(&0) {
            return Err(Error::InvalidParams("tangency orders must be positive".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                if t[i] == t[j] {
                    return Err(Error::InvalidParams(format!(
                        "tangency coordinates must be pairwise distinct, {} repeats",
                        crate::algebra::rat::rat_to_string(&t[i])
                    )));
                }
            }
        }
        Ok(KlughertzParams { n, r, t })
    }

    pub fn total_order(&self) -> u32 {
        self.r.iter().sum()
    }
}

#[derive(Clone, Debug)]
pub struct KlughertzData {
    pub params: KlughertzParams,
    pub form: OneForm,
    /// First integral as a numerator / denominator pair (N, x^(r+1)).
    pub first_integral: (Poly2, Poly2),
    /// The n tangent separatrices, as exact parametrizations
    /// s -> (Q(t_j + s) - Q(t_j), (t_j + s)(Q(t_j + s) - Q(t_j))).
    pub separatrices: Vec<TrackedCurve>,
}

pub fn klughertz(params: KlughertzParams) -> Result<KlughertzData> {
    klughertz_scaled(params, Rat::one())
}

/// Same family with Q' scaled by a nonzero constant; every checked invariant
/// is independent of the scale.
pub fn klughertz_scaled(params: KlughertzParams, scale: Rat) -> Result<KlughertzData> {
    if scale.is_zero() {
        return Err(Error::InvalidParams("scale must be nonzero".into()));
    }
    let r_total = params.total_order();

    // Q'(t) = scale * prod (t - t_j)^(r_j), then Q with Q(0) = 0
    let mut qprime = Poly1::constant(scale);
    for (tj, &rj) in params.t.iter().zip(&params.r) {
        let lin = Poly1::from_coeffs(vec![-tj.clone(), Rat::one()]);
        for _ in 0..rj {
            qprime = qprime.mul(&lin);
        }
    }
    let q = integrate(&qprime);

    // N = x^(r+2) - sum_{j=1}^{r+1} q_j x^(r+1-j) y^j
    let mut n_poly = Poly2::monomial(r_total + 2, 0, Rat::one());
    for j in 1..=(r_total + 1) as usize {
        let qj = q.coeff(j);
        if qj.is_zero() {
            continue;
        }
        n_poly = n_poly.sub(&Poly2::monomial(r_total + 1 - j as u32, j as u32, qj));
    }

    // omega = x dN - (r+1) N dx
    let x = Poly2::var_x();
    let a = x
        .mul(&n_poly.dx())
        .sub(&n_poly.scale(&rat_i(i64::from(r_total) + 1)));
    let b = x.mul(&n_poly.dy());
    let form = OneForm::new(a, b)?;

    // tangent separatrices: the leaf branch through (0, t_j)
    let mut separatrices = Vec::new();
    for tj in &params.t {
        let shifted = q.shift(tj); // Q(t_j + s)
        let xs = shifted.sub(&Poly1::constant(q.eval(tj)));
        let ts = Poly1::from_coeffs(vec![tj.clone(), Rat::one()]); // t_j + s
        let ys = ts.mul(&xs);
        separatrices.push(TrackedCurve::Parametrized {
            x: RatFunc1::from_poly(xs),
            y: RatFunc1::from_poly(ys),
        });
    }

    let denom = Poly2::monomial(r_total + 1, 0, Rat::one());
    Ok(KlughertzData {
        params,
        form,
        first_integral: (n_poly, denom),
        separatrices,
    })
}

fn integrate(p: &Poly1) -> Poly1 {
    let mut coeffs = vec![Rat::zero()];
    for (k, c) in p.coeffs().iter().enumerate() {
        coeffs.push(c / Rat::from_integer((k as i64 + 1).into()));
    }
    Poly1::from_coeffs(coeffs)
}

/// Expected verdicts of one corpus germ. Every value is exact; the notes say
/// where it comes from.
#[derive(Clone, Debug)]
pub struct Expected {
    pub nu0: u32,
    pub nu0_balanced: i64,
    pub second_kind: bool,
    pub obstruction_dim: u64,
    /// Component multiplicities in id order, when pinned by hand.
    pub component_nus: Option<Vec<u64>>,
    pub note: &'static str,
}

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: String,
    pub form: OneForm,
    pub separatrices: Vec<TrackedCurve>,
    pub first_integral: Option<(Poly2, Poly2)>,
    pub expected: Expected,
}

fn explicit(text: &str) -> TrackedCurve {
    TrackedCurve::Explicit(crate::parse::parse_poly(text).unwrap())
}

fn entry(
    name: &str,
    form_text: &str,
    seps: Vec<TrackedCurve>,
    expected: Expected,
) -> CorpusEntry {
    CorpusEntry {
        name: name.to_string(),
        form: parse_form(form_text).unwrap(),
        separatrices: seps,
        first_integral: None,
        expected,
    }
}

fn klughertz_entry(name: &str, n: usize, r: Vec<u32>, t: Vec<i64>, t_rat: Option<Vec<Rat>>) -> CorpusEntry {
    let t = t_rat.unwrap_or_else(|| t.into_iter().map(rat_i).collect());
    let params = KlughertzParams::new(n, r, t).unwrap();
    let r_total = i64::from(params.total_order());
    let nn = params.n as i64;
    let data = klughertz(params).unwrap();
    CorpusEntry {
        name: name.to_string(),
        form: data.form.clone(),
        separatrices: data.separatrices.clone(),
        first_integral: Some(data.first_integral.clone()),
        expected: Expected {
            nu0: r_total as u32 + 1,
            nu0_balanced: r_total + 2,
            second_kind: true,
            obstruction_dim: ((nn - 2) * (nn - 3) / 2) as u64,
            component_nus: None,
            note: "family values: multiplicity r+1, balanced r+2, dimension (n-2)(n-3)/2",
        },
    }
}

/// The fixed verification corpus. Separatrix lists are complete for each
/// entry; completeness is part of the fixture, not recomputed.
pub fn corpus() -> Vec<CorpusEntry> {
    vec![
        entry(
            "radial",
            "x dy - y dx",
            vec![],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1]),
                note: "one non-invariant line, two pencil members",
            },
        ),
        entry(
            "saddle-1",
            "x dy + y dx",
            vec![explicit("x"), explicit("y")],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1]),
                note: "level curves of xy",
            },
        ),
        entry(
            "saddle-2",
            "2x dy + y dx",
            vec![explicit("x"), explicit("y")],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1]),
                note: "eigenvalue ratio -2",
            },
        ),
        entry(
            "node-half",
            "2y dx - x dy",
            vec![explicit("x")],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1, 1]),
                note: "ratio 1/2; the y-axis joins the inner pencil, only x stays isolated",
            },
        ),
        entry(
            "cusp",
            "2y dy - 3x^2 dx",
            vec![explicit("y^2 - x^3")],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1, 1, 2]),
                note: "chain multiplicities and orders (2,3,6) fixed by chart computation",
            },
        ),
        entry(
            "saddle-node-1",
            "x^2 dy - y dx",
            vec![explicit("x"), explicit("y")],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1]),
                note: "normal form p=1; the divisor carries the strong curve upstairs",
            },
        ),
        entry(
            "saddle-node-2",
            "(x^2 - 2)y dx + x^3 dy",
            vec![explicit("x"), explicit("y")],
            Expected {
                nu0: 1,
                nu0_balanced: 2,
                second_kind: true,
                obstruction_dim: 0,
                component_nus: Some(vec![1]),
                note: "normal form p=2, zeta=1",
            },
        ),
        entry(
            "tangent-saddle-node",
            "y dx + (y - x) dy",
            vec![explicit("y")],
            Expected {
                nu0: 1,
                nu0_balanced: 1,
                second_kind: false,
                obstruction_dim: 0,
                component_nus: Some(vec![1]),
                note: "blown-down saddle-node with the divisor as weak curve; index 2",
            },
        ),
        klughertz_entry("klughertz-2", 2, vec![1, 1], vec![0, 1], None),
        klughertz_entry("klughertz-3", 3, vec![1, 1, 1], vec![0, 1, 2], None),
        klughertz_entry("klughertz-4", 4, vec![1, 1, 1, 1], vec![0, 1, 2, 3], None),
        klughertz_entry(
            "klughertz-5",
            5,
            vec![1, 1, 1, 1, 1],
            vec![],
            Some(vec![
                rat_i(0),
                rat_i(1),
                rat_i(2),
                rat_i(-1),
                crate::algebra::rat::rat(1, 2),
            ]),
        ),
        klughertz_entry("klughertz-mixed", 3, vec![3, 2, 1], vec![0, 1, -1], None),
    ]
}
