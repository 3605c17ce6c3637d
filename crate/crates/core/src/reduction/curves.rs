//! Curves followed through the blow-up process.
//!
//! Three representations, all exact:
//! * explicit polynomial equations, pushed UP by strict transform;
//! * parametrized germs with rational-function coordinates, pushed UP one
//!   chart at a time (the branch picks exactly one chart per component);
//! * curvettes, transverse discs attached upstairs, whose blow-down is
//!   computed by pushing the parametrization DOWN the chart chain.
//!
//! A trace records the multiplicity of the strict transform at every center
//! and the points where the curve meets the final divisor. That data feeds
//! every multiplicity identity downstream.

use num_traits::Zero;

use crate::algebra::poly2::Poly2;
use crate::algebra::rat::{rat_to_string, Rat};
use crate::algebra::ratfunc::RatFunc1;
use crate::blowup::{form_on_parametrization, push_param_up, ChartKind};
use crate::error::{Error, Result};
use crate::foliation::is_separatrix_pair;

use super::scan::StageScan;
use super::tree::{CenterId, CompId, DivisorCoord, ResolutionTree};

#[derive(Clone, Debug)]
pub enum TrackedCurve {
    /// Polynomial equation through the origin.
    Explicit(Poly2),
    /// Primitive parametrization s -> (x(s), y(s)) of an irreducible germ
    /// through the origin.
    Parametrized { x: RatFunc1, y: RatFunc1 },
    /// Smooth transverse disc at a free point of a component, given by its
    /// chart-U attachment coordinate.
    Curvette { comp: CompId, coord: Rat },
}

impl TrackedCurve {
    pub fn label(&self) -> String {
        match self {
            TrackedCurve::Explicit(f) => format!("{{{} = 0}}", crate::parse::print_poly(f)),
            TrackedCurve::Parametrized { x, y } => format!("s -> ({}, {})", x, y),
            TrackedCurve::Curvette { comp, coord } => {
                format!("curvette of D{} at {}", comp, rat_to_string(coord))
            }
        }
    }
}

/// Multiplicity and passage data of one curve through the whole process.
#[derive(Clone, Debug)]
pub struct CurveTrace {
    /// Multiplicity of the strict transform at each center (0 = missed).
    pub m_by_center: Vec<u32>,
    /// Components whose final divisor still meets the strict transform,
    /// with the crossing coordinate.
    pub attachments: Vec<(CompId, DivisorCoord)>,
    /// Multiplicity of the blown-down curve at the origin.
    pub nu0: u32,
}

impl CurveTrace {
    pub fn nu_along(&self, tree: &ResolutionTree, comp: CompId) -> u64 {
        tree.nu_curve_along(&self.m_by_center, comp)
    }
}

/// Trace any curve through a finished tree.
pub fn trace_curve(tree: &ResolutionTree, curve: &TrackedCurve) -> Result<CurveTrace> {
    match curve {
        TrackedCurve::Explicit(f) => trace_explicit(tree, f),
        TrackedCurve::Parametrized { x, y } => trace_parametrized(tree, x, y),
        TrackedCurve::Curvette { comp, coord } => Ok(curvette_trace(tree, *comp, coord)),
    }
}

/// Map center -> strict-transform multiplicity for a curvette: the disc
/// {v = coord} in the chart-U frame of the component, pushed down through
/// the chart chain, hits exactly the centers below its component.
pub fn curvette_blowdown_multiplicities(
    tree: &ResolutionTree,
    comp: CompId,
    coord: &Rat,
) -> Vec<u32> {
    curvette_trace(tree, comp, coord).m_by_center
}

fn curvette_trace(tree: &ResolutionTree, comp: CompId, coord: &Rat) -> CurveTrace {
    let mut m = vec![0u32; tree.n_centers()];
    // parametrization in the component's chart U: (u, v) = (s, coord)
    let mut px = RatFunc1::var();
    let mut py = RatFunc1::constant(coord.clone());
    let mut chart = tree.components[comp].chart_u;
    loop {
        let ch = &tree.charts[chart];
        let center = &tree.centers[ch.center];
        let (lx, ly) = crate::blowup::push_param_down(ch.kind, &px, &py);
        m[ch.center] = ord_pair(&lx, &ly);
        px = lx.add(&RatFunc1::constant(center.point.0.clone()));
        py = ly.add(&RatFunc1::constant(center.point.1.clone()));
        match center.parent_chart {
            None => break,
            Some(pc) => chart = pc,
        }
    }
    let nu0 = m[0];
    CurveTrace {
        m_by_center: m,
        attachments: vec![(comp, DivisorCoord::Finite(coord.clone()))],
        nu0,
    }
}

fn ord_pair(x: &RatFunc1, y: &RatFunc1) -> u32 {
    let ox = x.ord0();
    let oy = y.ord0();
    let o = match (ox, oy) {
        (Some(a), Some(b)) => a.min(b),
        (Some(a), None) => a,
        (None, Some(b)) => b,
        (None, None) => panic!("constant zero parametrization"),
    };
    assert!(o >= 0, "parametrization has a pole at 0");
    o as u32
}

fn trace_parametrized(tree: &ResolutionTree, x: &RatFunc1, y: &RatFunc1) -> Result<CurveTrace> {
    let mut m = vec![0u32; tree.n_centers()];
    let mut attachments = Vec::new();
    let blown = tree.blown_at_stage(tree.n_centers());

    let mut center: CenterId = 0;
    let mut px = x.clone();
    let mut py = y.clone();
    assert!(
        px.ord0().is_none_or(|o| o >= 1) && py.ord0().is_none_or(|o| o >= 1),
        "parametrized germ must pass through the origin"
    );
    loop {
        m[center] = ord_pair(&px, &py);
        let (kind, u, v) = push_param_up(&px, &py);
        let comp = center; // component id equals its birth center id
        let (slot, chart_id, nx, ny) = match kind {
            ChartKind::U => {
                let t = v.eval0();
                (
                    (comp, DivisorCoord::Finite(t.clone())),
                    tree.components[comp].chart_u,
                    u,
                    v.sub_const(&t),
                )
            }
            ChartKind::V => (
                (comp, DivisorCoord::Infinity),
                tree.components[comp].chart_v,
                u,
                v,
            ),
        };
        debug_assert!(tree.charts[chart_id].component == comp);
        if blown.contains(&slot) {
            let next = tree
                .center_blowing(&slot)
                .expect("blown slot has a center");
            // the center's site lives in this same chart; retranslate to its
            // local frame (finite slots were already recentered above)
            debug_assert_eq!(tree.centers[next].parent_chart, Some(chart_id));
            center = next;
            px = nx;
            py = ny;
        } else {
            attachments.push(slot);
            break;
        }
    }
    let nu0 = m[0];
    Ok(CurveTrace {
        m_by_center: m,
        attachments,
        nu0,
    })
}

fn trace_explicit(tree: &ResolutionTree, f: &Poly2) -> Result<CurveTrace> {
    assert!(!f.is_zero());
    let mut m = vec![0u32; tree.n_centers()];
    let mut attachments = Vec::new();
    let blown = tree.blown_at_stage(tree.n_centers());
    walk_explicit(tree, 0, f.clone(), &mut m, &mut attachments, &blown)?;
    let nu0 = m[0];
    Ok(CurveTrace {
        m_by_center: m,
        attachments,
        nu0,
    })
}

fn walk_explicit(
    tree: &ResolutionTree,
    center: CenterId,
    f_local: Poly2,
    m: &mut [u32],
    attachments: &mut Vec<(CompId, DivisorCoord)>,
    blown: &std::collections::BTreeSet<(CompId, DivisorCoord)>,
) -> Result<()> {
    if !f_local.coeff(0, 0).is_zero() {
        return Ok(()); // the curve misses this center
    }
    let ord = f_local.order_at_origin().expect("nonzero strict transform");
    m[center] = ord;

    let comp = center;
    let x = Poly2::var_x();
    let y = Poly2::var_y();
    let fu = f_local
        .substitute(&x, &x.mul(&y))
        .div_xpow(ord)
        .expect("order divides");
    let fv = f_local
        .substitute(&x.mul(&y), &y)
        .div_ypow(ord)
        .expect("order divides");

    // crossings with the new component: finite roots in chart U plus the
    // chart-V origin
    let along = fu.restrict_x0();
    if along.is_zero() {
        // the strict transform contains the whole component: impossible for
        // a curve germ through one point
        unreachable!("strict transform contains a divisor component");
    }
    let (roots, residual) = crate::algebra::poly1::rational_roots(&along);
    if residual.degree().unwrap_or(0) >= 1 {
        return Err(Error::NonRationalSingularity {
            component: comp,
            residual: format!("{}", residual),
        });
    }
    for (t0, _) in roots {
        let slot = (comp, DivisorCoord::Finite(t0.clone()));
        if blown.contains(&slot) {
            let next = tree.center_blowing(&slot).unwrap();
            let chart_of_next = tree.centers[next].parent_chart.unwrap();
            let f_next = if chart_of_next == tree.components[comp].chart_u {
                fu.translate(&Rat::zero(), &t0)
            } else {
                // the slot was blown from the chart-V frame only for the
                // infinity slot, never for finite coordinates
                unreachable!("finite slot blown in an unexpected chart");
            };
            walk_explicit(tree, next, f_next, m, attachments, blown)?;
        } else {
            attachments.push(slot);
        }
    }
    // chart-V origin: strict transform passes through infinity direction
    if fv.coeff(0, 0).is_zero() {
        let slot = (comp, DivisorCoord::Infinity);
        if blown.contains(&slot) {
            let next = tree.center_blowing(&slot).unwrap();
            debug_assert_eq!(tree.centers[next].parent_chart, Some(tree.components[comp].chart_v));
            walk_explicit(tree, next, fv.clone(), m, attachments, blown)?;
        } else {
            attachments.push(slot);
        }
    }
    Ok(())
}

/// Order of vanishing along a component of the total transform of a curve,
/// via the chart-U composition to the base. Generic-point route used to
/// cross-check the recursion.
pub fn nu_curve_direct(tree: &ResolutionTree, f: &Poly2, comp: CompId) -> u64 {
    let (bx, by) = tree.base_coords(tree.components[comp].chart_u);
    let total = f.substitute(&bx, &by);
    u64::from(total.val_x().expect("nonzero pullback"))
}

/// Invariance test usable for every representation: explicit curves use the
/// exact division test, parametrizations the velocity pairing, curvettes are
/// leaves by construction only in dicritical pencils, so they are checked
/// through the transverse crossing instead.
pub fn curve_is_separatrix(tree: &ResolutionTree, curve: &TrackedCurve) -> bool {
    let (a, b) = tree.form.pair();
    match curve {
        TrackedCurve::Explicit(f) => is_separatrix_pair(f, a, b),
        TrackedCurve::Parametrized { x, y } => form_on_parametrization(a, b, x, y).is_zero(),
        TrackedCurve::Curvette { comp, .. } => tree.components[*comp].dicritical,
    }
}

/// Multiplicity at the origin of the blown-down curve.
pub fn curve_nu0(tree: &ResolutionTree, curve: &TrackedCurve) -> Result<u32> {
    Ok(trace_curve(tree, curve)?.nu0)
}

/// Pick `count` fresh attachment coordinates on a component, scanning from
/// the seed upward and skipping special points, consumed slots and already
/// chosen coordinates.
pub fn fresh_attachments(
    tree: &ResolutionTree,
    scan: &StageScan,
    comp: CompId,
    count: usize,
    seed: i64,
    taken: &mut Vec<(CompId, Rat)>,
) -> Vec<Rat> {
    let mut out = Vec::new();
    let mut t = seed;
    while out.len() < count {
        let cand = Rat::from_integer(t.into());
        t += 1;
        if !super::driver::free_coordinate(tree, scan, comp, &cand) {
            continue;
        }
        if taken.iter().any(|(c, r)| *c == comp && *r == cand) {
            continue;
        }
        taken.push((comp, cand.clone()));
        out.push(cand);
    }
    out
}
