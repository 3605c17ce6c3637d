//! The blow-up process record: centers, charts, components.
//!
//! Component `i` is created by center `i`, so the two share an id space. A
//! chart stores the divided local form of the transformed foliation in its
//! own coordinates; that local data stays valid at every later stage away
//! from points that get blown up afterwards, which is what makes the whole
//! record local and incremental.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::Zero;

use crate::algebra::poly2::Poly2;
use crate::algebra::rat::{rat_to_string, Rat};
use crate::blowup::{divided_transform, BranchAxis, ChartKind};
use crate::error::Result;
use crate::foliation::OneForm;

pub type CompId = usize;
pub type CenterId = usize;
pub type ChartId = usize;

/// Canonical address of a point on a component: the chart-U divisor
/// coordinate, or the chart-V origin.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum DivisorCoord {
    Finite(Rat),
    Infinity,
}

impl fmt::Display for DivisorCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DivisorCoord::Finite(t) => write!(f, "{}", rat_to_string(t)),
            DivisorCoord::Infinity => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub id: ChartId,
    pub component: CompId,
    pub center: CenterId,
    pub kind: ChartKind,
    /// Divided local form of the transformed foliation in this chart.
    pub form: (Poly2, Poly2),
    /// Older component whose strict transform crosses this chart's origin.
    pub strict_branch: Option<CompId>,
}

#[derive(Clone, Debug)]
pub struct Center {
    pub id: CenterId,
    /// Scan round that produced this center; the initial blow-up is round 0.
    pub depth: usize,
    /// Chart whose coordinates the site lives in; `None` for the base plane.
    pub parent_chart: Option<ChartId>,
    /// Site coordinates in the parent frame.
    pub point: (Rat, Rat),
    /// Divisor branches through the site, with their local axis equations
    /// after translation.
    pub on: Vec<(CompId, BranchAxis)>,
    /// Local form at the site (translated), before blowing up.
    pub local_form: (Poly2, Poly2),
    /// Multiplicity of the local form at the site.
    pub nu: u32,
    /// Division exponent used for the exceptional factor.
    pub m: u32,
    pub dicritical: bool,
    /// Point slots this center consumed, in canonical addresses.
    pub consumed: Vec<(CompId, DivisorCoord)>,
    /// Corner edge removed by this center, if it blew up a corner.
    pub corner_removed: Option<(CompId, CompId)>,
}

#[derive(Clone, Debug)]
pub struct Component {
    pub id: CompId,
    /// Multiplicity of the component in the pullback of the maximal ideal.
    pub nu: u64,
    pub dicritical: bool,
    pub chart_u: ChartId,
    pub chart_v: ChartId,
    /// The chart-U origin is a corner with this component, when present.
    pub corner_at_zero: Option<CompId>,
    /// The chart-V origin is a corner with this component, when present.
    pub corner_at_inf: Option<CompId>,
}

/// Where to blow up next.
#[derive(Clone, Debug)]
pub struct BlowSite {
    pub parent_chart: Option<ChartId>,
    pub point: (Rat, Rat),
    pub on: Vec<(CompId, BranchAxis)>,
    pub consumed: Vec<(CompId, DivisorCoord)>,
    pub corner_removed: Option<(CompId, CompId)>,
}

#[derive(Clone, Debug)]
pub struct ResolutionTree {
    pub form: OneForm,
    pub centers: Vec<Center>,
    pub charts: Vec<Chart>,
    pub components: Vec<Component>,
    /// Rounds the driver ran before the stage stabilized.
    pub rounds: usize,
}

fn sorted_edge(a: CompId, b: CompId) -> (CompId, CompId) {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

impl ResolutionTree {
    /// Blow up the origin of the base plane.
    pub fn new(form: OneForm) -> Result<Self> {
        if form.multiplicity() == 0 {
            return Err(crate::error::Error::NotSingular);
        }
        let mut tree = ResolutionTree {
            form,
            centers: vec![],
            charts: vec![],
            components: vec![],
            rounds: 0,
        };
        let site = BlowSite {
            parent_chart: None,
            point: (Rat::zero(), Rat::zero()),
            on: vec![],
            consumed: vec![],
            corner_removed: None,
        };
        tree.blow(site, 0);
        Ok(tree)
    }

    pub fn n_centers(&self) -> usize {
        self.centers.len()
    }

    /// Local form at a site, translated so the site is the origin.
    pub fn local_form_at(&self, parent_chart: Option<ChartId>, point: &(Rat, Rat)) -> (Poly2, Poly2) {
        match parent_chart {
            None => {
                let (a, b) = self.form.pair();
                (a.clone(), b.clone())
            }
            Some(cid) => {
                let (a, b) = &self.charts[cid].form;
                (a.translate(&point.0, &point.1), b.translate(&point.0, &point.1))
            }
        }
    }

    /// Perform one elementary blow-up. Returns the new component id.
    pub fn blow(&mut self, site: BlowSite, depth: usize) -> CompId {
        let (a, b) = self.local_form_at(site.parent_chart, &site.point);
        let div = divided_transform(&a, &b);
        let id = self.centers.len();

        // multiplicity of the new component: 1 for the initial blow-up,
        // otherwise the sum over the divisor components through the center
        let nu_comp: u64 = if site.on.is_empty() {
            1
        } else {
            site.on.iter().map(|(c, _)| self.components[*c].nu).sum()
        };

        // branch visibility: the strict transform of a branch {ly = 0} shows
        // at the chart-U origin, a branch {lx = 0} at the chart-V origin
        let v_branch = site
            .on
            .iter()
            .find(|(_, ax)| *ax == BranchAxis::V)
            .map(|(c, _)| *c);
        let u_branch = site
            .on
            .iter()
            .find(|(_, ax)| *ax == BranchAxis::U)
            .map(|(c, _)| *c);

        let chart_u_id = self.charts.len();
        let chart_v_id = chart_u_id + 1;
        self.charts.push(Chart {
            id: chart_u_id,
            component: id,
            center: id,
            kind: ChartKind::U,
            form: div.chart_u.clone(),
            strict_branch: v_branch,
        });
        self.charts.push(Chart {
            id: chart_v_id,
            component: id,
            center: id,
            kind: ChartKind::V,
            form: div.chart_v.clone(),
            strict_branch: u_branch,
        });
        self.components.push(Component {
            id,
            nu: nu_comp,
            dicritical: div.dicritical,
            chart_u: chart_u_id,
            chart_v: chart_v_id,
            corner_at_zero: v_branch,
            corner_at_inf: u_branch,
        });
        self.centers.push(Center {
            id,
            depth,
            parent_chart: site.parent_chart,
            point: site.point,
            on: site.on,
            local_form: (a, b),
            nu: div.nu,
            m: div.m,
            dicritical: div.dicritical,
            consumed: site.consumed,
            corner_removed: site.corner_removed,
        });
        id
    }

    /// Adjacency after the first `k` centers.
    pub fn edges_at_stage(&self, k: usize) -> BTreeSet<(CompId, CompId)> {
        let mut edges = BTreeSet::new();
        for i in 0..k.min(self.centers.len()) {
            let c = &self.centers[i];
            if let Some((a, b)) = c.corner_removed {
                edges.remove(&sorted_edge(a, b));
            }
            for (comp, _) in &c.on {
                edges.insert(sorted_edge(*comp, i));
            }
        }
        edges
    }

    /// Point slots consumed by the first `k` centers.
    pub fn blown_at_stage(&self, k: usize) -> BTreeSet<(CompId, DivisorCoord)> {
        let mut out = BTreeSet::new();
        for i in 0..k.min(self.centers.len()) {
            for slot in &self.centers[i].consumed {
                out.insert(slot.clone());
            }
        }
        out
    }

    /// Center that consumed a given slot, if any.
    pub fn center_blowing(&self, slot: &(CompId, DivisorCoord)) -> Option<CenterId> {
        self.centers
            .iter()
            .find(|c| c.consumed.contains(slot))
            .map(|c| c.id)
    }

    pub fn neighbors(&self, comp: CompId) -> Vec<CompId> {
        self.edges_at_stage(self.n_centers())
            .into_iter()
            .filter_map(|(a, b)| {
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

    /// Multiplicity of the component created by blowing up the given center.
    pub fn component_multiplicity(&self, center: CenterId) -> u64 {
        self.components[center].nu
    }

    /// Base-plane coordinate functions expressed in a chart's coordinates.
    pub fn base_coords(&self, chart_id: ChartId) -> (Poly2, Poly2) {
        let chart = &self.charts[chart_id];
        let x = Poly2::var_x();
        let y = Poly2::var_y();
        let (lx, ly) = match chart.kind {
            ChartKind::U => (x.clone(), x.mul(&y)),
            ChartKind::V => (x.mul(&y), y.clone()),
        };
        let center = &self.centers[chart.center];
        let px = lx.add(&Poly2::constant(center.point.0.clone()));
        let py = ly.add(&Poly2::constant(center.point.1.clone()));
        match center.parent_chart {
            None => (px, py),
            Some(pc) => {
                let (bx, by) = self.base_coords(pc);
                (bx.substitute(&px, &py), by.substitute(&px, &py))
            }
        }
    }

    /// Order of vanishing of the total pullback of the original form along a
    /// component, computed directly in its chart U. Used as the generic-point
    /// route; the per-center recursion must agree.
    pub fn nu_foliation_direct(&self, comp: CompId) -> u64 {
        let chart_id = self.components[comp].chart_u;
        let (bx, by) = self.base_coords(chart_id);
        let (a, b) = self.form.pair();
        let a_s = a.substitute(&bx, &by);
        let b_s = b.substitute(&bx, &by);
        let coef_du = a_s.mul(&bx.dx()).add(&b_s.mul(&by.dx()));
        let coef_dv = a_s.mul(&bx.dy()).add(&b_s.mul(&by.dy()));
        let vu = coef_du.val_x().map(u64::from);
        let vv = coef_dv.val_x().map(u64::from);
        match (vu, vv) {
            (Some(p), Some(q)) => p.min(q),
            (Some(p), None) => p,
            (None, Some(q)) => q,
            (None, None) => unreachable!("pullback of a nonzero form is nonzero"),
        }
    }

    /// Multiplicity of the transformed foliation along a component via the
    /// per-center recursion: local multiplicity at the birth center, plus the
    /// multiplicities along the components through it, plus one on dicritical
    /// components.
    pub fn nu_foliation_along(&self, comp: CompId) -> u64 {
        let mut memo: Vec<Option<u64>> = vec![None; self.components.len()];
        self.nu_fol_memo(comp, &mut memo)
    }

    fn nu_fol_memo(&self, comp: CompId, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(v) = memo[comp] {
            return v;
        }
        let center = &self.centers[comp];
        let mut total = u64::from(center.nu) + center.dicritical as u64;
        for (c, _) in center.on.clone() {
            total += self.nu_fol_memo(c, memo);
        }
        memo[comp] = Some(total);
        total
    }

    /// Multiplicity of a curve's total transform along a component, from its
    /// strict multiplicities at the centers.
    pub fn nu_curve_along(&self, m_by_center: &[u32], comp: CompId) -> u64 {
        let mut memo: Vec<Option<u64>> = vec![None; self.components.len()];
        self.nu_curve_memo(m_by_center, comp, &mut memo)
    }

    fn nu_curve_memo(&self, m: &[u32], comp: CompId, memo: &mut Vec<Option<u64>>) -> u64 {
        if let Some(v) = memo[comp] {
            return v;
        }
        let center = &self.centers[comp];
        let mut total = u64::from(m[comp]);
        for (c, _) in center.on.clone() {
            total += self.nu_curve_memo(m, c, memo);
        }
        memo[comp] = Some(total);
        total
    }

    /// Strict multiplicity and residual data of the original form at every
    /// center, as stored during the process.
    pub fn center_summary(&self, id: CenterId) -> String {
        let c = &self.centers[id];
        let on: Vec<String> = c.on.iter().map(|(d, _)| format!("D{}", d)).collect();
        format!(
            "c{} depth {} nu {} m {}{} on [{}]",
            id,
            c.depth,
            c.nu,
            c.m,
            if c.dicritical { " dicritical" } else { "" },
            on.join(", ")
        )
    }
}
