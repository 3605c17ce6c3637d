//! Stage scans: enumerate and classify every special point of the divisor
//! after the first k blow-ups.
//!
//! All data is read off the birth charts of the components, which is valid
//! at every stage because a blow-up changes nothing away from its center.
//! Finite points of a component live in its chart U; the chart-V origin
//! contributes the single remaining direction; corners sit at chart origins
//! of the younger component.

use num_traits::Zero;

use crate::algebra::poly1::{rational_roots, Poly1};
use crate::algebra::poly2::Poly2;
use crate::algebra::rat::Rat;
use crate::blowup::{BranchAxis, ChartKind};
use crate::error::{Error, Result};
use crate::foliation::{classify_pair, Direction, SingClass};

use super::tree::{BlowSite, ChartId, CompId, DivisorCoord, ResolutionTree};

/// Index or tangency data of one divisor branch through a point.
#[derive(Clone, Debug)]
pub struct BranchData {
    pub comp: CompId,
    pub invariant: bool,
    /// Ind when the branch is invariant, Tan otherwise.
    pub value: u32,
}

#[derive(Clone, Debug)]
pub struct PointRecord {
    /// Incident components; two entries exactly when the point is a corner.
    pub comps: Vec<CompId>,
    /// Canonical address: for corners, the slot on the younger component.
    pub address: (CompId, DivisorCoord),
    pub chart: ChartId,
    /// Coordinates of the point inside that chart.
    pub local: (Rat, Rat),
    pub class: SingClass,
    /// Tangent saddle-node: saddle-node whose weak direction is carried by an
    /// invariant divisor branch through the point.
    pub snt: bool,
    pub branches: Vec<BranchData>,
}

impl PointRecord {
    pub fn is_corner(&self) -> bool {
        self.comps.len() == 2
    }

    pub fn ind_along(&self, comp: CompId) -> Option<u32> {
        self.branches
            .iter()
            .find(|b| b.comp == comp && b.invariant)
            .map(|b| b.value)
    }

    pub fn tan_along(&self, comp: CompId) -> Option<u32> {
        self.branches
            .iter()
            .find(|b| b.comp == comp && !b.invariant)
            .map(|b| b.value)
    }

    pub fn label(&self) -> String {
        format!("D{}:{}", self.address.0, self.address.1)
    }
}

/// Everything the invariants need about one stage.
#[derive(Clone, Debug)]
pub struct StageScan {
    pub k: usize,
    pub points: Vec<PointRecord>,
    pub edges: Vec<(CompId, CompId)>,
}

impl StageScan {
    pub fn points_on(&self, comp: CompId) -> impl Iterator<Item = &PointRecord> {
        self.points.iter().filter(move |p| p.comps.contains(&comp))
    }

    pub fn neighbors(&self, comp: CompId) -> Vec<CompId> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == comp {
                    Some(b)
                } else if b == comp {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn valence(&self, comp: CompId) -> usize {
        self.neighbors(comp).len()
    }
}

/// Scan the stage consisting of the first `k` centers (k >= 1).
pub fn scan_stage(tree: &ResolutionTree, k: usize) -> Result<StageScan> {
    assert!(k >= 1 && k <= tree.n_centers());
    let blown = tree.blown_at_stage(k);
    let edges: Vec<(CompId, CompId)> = tree.edges_at_stage(k).into_iter().collect();
    let mut points: Vec<PointRecord> = Vec::new();

    for comp in 0..k {
        let c = &tree.components[comp];
        let chart_u = &tree.charts[c.chart_u];
        let (au, bu) = &chart_u.form;
        let p_v = au.restrict_x0();
        let q_v = bu.restrict_x0();

        // internal consistency: the component is invariant iff the dv
        // coefficient vanishes on the divisor
        debug_assert_eq!(q_v.is_zero(), !c.dicritical, "invariance flag mismatch");

        // finite special points: roots of the index polynomial (invariant
        // case) or of the tangency polynomial (dicritical case)
        let driver: &Poly1 = if c.dicritical { &q_v } else { &p_v };
        assert!(!driver.is_zero(), "divided form vanishes along the divisor");
        let (roots, residual) = rational_roots(driver);
        if residual.degree().unwrap_or(0) >= 1 {
            return Err(Error::NonRationalSingularity {
                component: comp,
                residual: format!("{}", residual),
            });
        }
        for (t0, _mult) in roots {
            // corner-with-parent slot is handled through the edge list
            if c.corner_at_zero.is_some() && t0.is_zero() {
                continue;
            }
            if blown.contains(&(comp, DivisorCoord::Finite(t0.clone()))) {
                continue;
            }
            let local = (
                au.translate(&Rat::zero(), &t0),
                bu.translate(&Rat::zero(), &t0),
            );
            points.push(point_record(
                tree,
                c.chart_u,
                vec![(comp, BranchAxis::U)],
                (comp, DivisorCoord::Finite(t0.clone())),
                (Rat::zero(), t0),
                &local,
            ));
        }

        // chart-V origin
        if c.corner_at_inf.is_none() && !blown.contains(&(comp, DivisorCoord::Infinity)) {
            let chart_v = &tree.charts[c.chart_v];
            let (av, bv) = &chart_v.form;
            let special = if c.dicritical {
                av.restrict_y0().ord0().is_none_or(|o| o >= 1)
            } else {
                bv.restrict_y0().ord0().is_none_or(|o| o >= 1)
            };
            if special {
                points.push(point_record(
                    tree,
                    c.chart_v,
                    vec![(comp, BranchAxis::V)],
                    (comp, DivisorCoord::Infinity),
                    (Rat::zero(), Rat::zero()),
                    &(av.clone(), bv.clone()),
                ));
            }
        }
    }

    // corners, one record per adjacency edge, analyzed in the younger chart
    for &(a, b) in &edges {
        let young = a.max(b);
        let old = a.min(b);
        let yc = &tree.components[young];
        let (chart_id, addr) = if yc.corner_at_zero == Some(old) {
            (yc.chart_u, (young, DivisorCoord::Finite(Rat::zero())))
        } else if yc.corner_at_inf == Some(old) {
            (yc.chart_v, (young, DivisorCoord::Infinity))
        } else {
            unreachable!("edge without a corner chart");
        };
        let chart = &tree.charts[chart_id];
        let branches = match chart.kind {
            ChartKind::U => vec![(young, BranchAxis::U), (old, BranchAxis::V)],
            ChartKind::V => vec![(young, BranchAxis::V), (old, BranchAxis::U)],
        };
        points.push(point_record(
            tree,
            chart_id,
            branches,
            addr,
            (Rat::zero(), Rat::zero()),
            &chart.form.clone(),
        ));
    }

    points.sort_by(|p, q| p.address.cmp(&q.address));
    Ok(StageScan { k, points, edges })
}

/// Build the record for a point already translated to the chart-local origin.
fn point_record(
    tree: &ResolutionTree,
    chart: ChartId,
    on: Vec<(CompId, BranchAxis)>,
    address: (CompId, DivisorCoord),
    local_coords: (Rat, Rat),
    local: &(Poly2, Poly2),
) -> PointRecord {
    let (a, b) = local;
    let class = classify_pair(a, b);
    let mut branches = Vec::new();
    let mut snt = false;
    for (comp, axis) in &on {
        let invariant = !tree.components[*comp].dicritical;
        // Ind along {u=0} is ord_v a(0,v); Tan along {u=0} is ord_v b(0,v);
        // along {v=0} the roles of a and b swap.
        let value = match (axis, invariant) {
            (BranchAxis::U, true) => a.restrict_x0().ord0(),
            (BranchAxis::U, false) => b.restrict_x0().ord0(),
            (BranchAxis::V, true) => b.restrict_y0().ord0(),
            (BranchAxis::V, false) => a.restrict_y0().ord0(),
        }
        .expect("restriction vanishes identically at a divisor point") as u32;
        branches.push(BranchData {
            comp: *comp,
            invariant,
            value,
        });
        if let SingClass::SaddleNode { weak, .. } = &class {
            let axis_dir = match axis {
                BranchAxis::U => Direction::Vertical,
                BranchAxis::V => Direction::Slope(Rat::zero()),
            };
            if invariant && *weak == axis_dir {
                snt = true;
            }
        }
    }
    PointRecord {
        comps: on.iter().map(|(c, _)| *c).collect(),
        address,
        chart,
        local: local_coords,
        class,
        snt,
        branches,
    }
}

/// The reducedness predicate: which points still force a blow-up.
pub fn failing_points<'a>(
    tree: &ResolutionTree,
    scan: &'a StageScan,
) -> Vec<&'a PointRecord> {
    scan.points
        .iter()
        .filter(|p| point_fails(tree, p))
        .collect()
}

pub fn point_fails(tree: &ResolutionTree, p: &PointRecord) -> bool {
    if p.class == SingClass::NonReduced {
        return true;
    }
    let dic_incident: Vec<CompId> = p
        .comps
        .iter()
        .copied()
        .filter(|&c| tree.components[c].dicritical)
        .collect();
    if !dic_incident.is_empty() {
        if p.class.is_singular() {
            return true;
        }
        if p.branches.iter().any(|b| !b.invariant && b.value > 0) {
            return true;
        }
        if dic_incident.len() == 2 {
            // a corner of two non-invariant components must be separated
            return true;
        }
    }
    false
}

/// Turn a failing point into a blow-up site.
pub fn site_for_point(tree: &ResolutionTree, p: &PointRecord) -> BlowSite {
    let chart = &tree.charts[p.chart];
    let on: Vec<(CompId, BranchAxis)> = if p.is_corner() {
        match chart.kind {
            ChartKind::U => vec![(chart.component, BranchAxis::U), (other_comp(p, chart.component), BranchAxis::V)],
            ChartKind::V => vec![(chart.component, BranchAxis::V), (other_comp(p, chart.component), BranchAxis::U)],
        }
    } else {
        match chart.kind {
            ChartKind::U => vec![(chart.component, BranchAxis::U)],
            ChartKind::V => vec![(chart.component, BranchAxis::V)],
        }
    };
    let corner_removed = if p.is_corner() {
        let (a, b) = (p.comps[0], p.comps[1]);
        Some((a.min(b), a.max(b)))
    } else {
        None
    };
    BlowSite {
        parent_chart: Some(p.chart),
        point: p.local.clone(),
        on,
        consumed: vec![p.address.clone()],
        corner_removed,
    }
}

fn other_comp(p: &PointRecord, c: CompId) -> CompId {
    *p.comps.iter().find(|&&d| d != c).expect("corner has two components")
}

/// Final-state audit. Returns human-readable violations; empty on a valid
/// reduced tree.
pub fn audit(tree: &ResolutionTree) -> Result<Vec<String>> {
    let scan = scan_stage(tree, tree.n_centers())?;
    let mut bad = Vec::new();
    for p in &scan.points {
        match &p.class {
            SingClass::NonReduced => bad.push(format!("{} is non-reduced", p.label())),
            SingClass::Regular => {}
            _ => {
                // singular points may only sit on invariant components
                for &c in &p.comps {
                    if tree.components[c].dicritical {
                        bad.push(format!(
                            "{} is singular on non-invariant D{}",
                            p.label(),
                            c
                        ));
                    }
                }
                // every divisor branch through a singular point must be
                // invariant and carried by a coordinate axis
                for b in &p.branches {
                    if !b.invariant {
                        bad.push(format!(
                            "{} has a non-invariant branch D{} at a singular point",
                            p.label(),
                            b.comp
                        ));
                    }
                }
            }
        }
        for b in &p.branches {
            if !b.invariant && b.value > 0 {
                bad.push(format!(
                    "{} has tangency order {} on D{}",
                    p.label(),
                    b.value,
                    b.comp
                ));
            }
        }
        if p.is_corner()
            && p.comps
                .iter()
                .all(|&c| tree.components[c].dicritical)
        {
            bad.push(format!("{} is a corner of two non-invariant components", p.label()));
        }
        // saddle-node bookkeeping: the recorded flag must match the weak
        // direction test
        if let SingClass::SaddleNode { weak, .. } = &p.class {
            let chart = &tree.charts[p.chart];
            let mut expect = false;
            for b in &p.branches {
                let axis_dir = if b.comp == chart.component {
                    match chart.kind {
                        ChartKind::U => Direction::Vertical,
                        ChartKind::V => Direction::Slope(Rat::zero()),
                    }
                } else {
                    match chart.kind {
                        ChartKind::U => Direction::Slope(Rat::zero()),
                        ChartKind::V => Direction::Vertical,
                    }
                };
                if b.invariant && *weak == axis_dir {
                    expect = true;
                }
            }
            if expect != p.snt {
                bad.push(format!("{} saddle-node flag inconsistent", p.label()));
            }
        }
    }
    Ok(bad)
}
