//! The multiplicity identities of the reduction: the weighted index sum over
//! components, balanced equations of separatrices, the second-kind
//! criterion, the saddle-node correction identity and the obstruction-space
//! dimension attached to the poles of a balanced equation.

use serde::Serialize;

use crate::algebra::rat::{rat_to_string, Rat};
use crate::error::{Error, Result};
use crate::reduction::{
    curve_is_separatrix, fresh_attachments, scan_stage, snt_set, trace_curve, CompId, CurveTrace,
    ResolutionTree, StageScan, TrackedCurve,
};

/// Weighted point count of one component: for an invariant component
/// `-v_dbar + sum of indices`, for a non-invariant one
/// `2 - v_dbar + sum of tangency orders`, where v_dbar counts the invariant
/// neighbors.
pub fn rho(tree: &ResolutionTree, scan: &StageScan, comp: CompId) -> i64 {
    let v_dbar = scan
        .neighbors(comp)
        .iter()
        .filter(|&&e| !tree.components[e].dicritical)
        .count() as i64;
    if !tree.components[comp].dicritical {
        let sum: i64 = scan
            .points_on(comp)
            .filter_map(|p| p.ind_along(comp))
            .map(i64::from)
            .sum();
        -v_dbar + sum
    } else {
        let sum: i64 = scan
            .points_on(comp)
            .filter_map(|p| p.tan_along(comp))
            .map(i64::from)
            .sum();
        2 - v_dbar + sum
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RhoRow {
    pub component: usize,
    pub nu: u64,
    pub rho: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct HertlingReport {
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
    pub components: Vec<RhoRow>,
}

/// The multiplicity identity `nu0 + 1 = sum nu(D) rho(D)` over the first k
/// centers. Valid at every stage of the process, not only the last one.
pub fn check_hertling_stage(tree: &ResolutionTree, k: usize) -> Result<HertlingReport> {
    let scan = scan_stage(tree, k)?;
    let lhs = i64::from(tree.form.multiplicity()) + 1;
    let mut rows = Vec::new();
    let mut rhs = 0i64;
    for comp in 0..k {
        let r = rho(tree, &scan, comp);
        let nu = tree.components[comp].nu;
        rhs += nu as i64 * r;
        rows.push(RhoRow {
            component: comp,
            nu,
            rho: r,
        });
    }
    Ok(HertlingReport {
        lhs,
        rhs,
        ok: lhs == rhs,
        components: rows,
    })
}

pub fn check_hertling(tree: &ResolutionTree) -> Result<HertlingReport> {
    check_hertling_stage(tree, tree.n_centers())
}

/// One curve of a balanced equation together with its traced multiplicities.
#[derive(Clone, Debug)]
pub struct BalancedCurve {
    pub curve: TrackedCurve,
    pub trace: CurveTrace,
}

impl BalancedCurve {
    pub fn nu0(&self) -> u32 {
        self.trace.nu0
    }
}

/// Zeros and poles of a balanced equation of separatrices.
#[derive(Clone, Debug)]
pub struct BalancedEquation {
    pub zeros: Vec<BalancedCurve>,
    pub poles: Vec<BalancedCurve>,
    pub nu0: i64,
}

impl BalancedEquation {
    pub fn nu_along(&self, tree: &ResolutionTree, comp: CompId) -> i64 {
        let z: i64 = self
            .zeros
            .iter()
            .map(|c| c.trace.nu_along(tree, comp) as i64)
            .sum();
        let p: i64 = self
            .poles
            .iter()
            .map(|c| c.trace.nu_along(tree, comp) as i64)
            .sum();
        z - p
    }
}

/// Assemble a balanced equation: the user-supplied isolated separatrices are
/// verified and traced; every non-invariant component of valence v <= 2
/// contributes 2 - v pencil members to the zeros, every one of valence
/// v >= 3 contributes v - 2 pencil members to the poles. Pencil members are
/// curvettes at fresh attachment coordinates scanned upward from the seed.
///
/// The valence counting is tied to the reduction itself: call this on the
/// tree `reduce` returned, not on a refinement (extra free blow-ups change
/// valences and with them the pole count).
pub fn build_balanced_equation(
    tree: &ResolutionTree,
    isolated: &[TrackedCurve],
    seed: i64,
) -> Result<BalancedEquation> {
    let scan = scan_stage(tree, tree.n_centers())?;
    let mut zeros = Vec::new();
    let mut poles = Vec::new();

    for (i, curve) in isolated.iter().enumerate() {
        if let TrackedCurve::Explicit(f) = curve {
            // separatrix equations are reduced; a repeated factor would be
            // double-counted in every multiplicity it enters
            if !crate::foliation::is_squarefree(f) {
                return Err(Error::NotASeparatrix {
                    curve: format!("{} (not squarefree)", curve.label()),
                });
            }
        }
        if isolated[..i].iter().any(|c| c.label() == curve.label()) {
            return Err(Error::NotASeparatrix {
                curve: format!("{} (listed twice)", curve.label()),
            });
        }
        if !curve_is_separatrix(tree, curve) {
            return Err(Error::NotASeparatrix {
                curve: curve.label(),
            });
        }
        let trace = trace_curve(tree, curve)?;
        if trace.attachments.is_empty() {
            return Err(Error::NotASeparatrix {
                curve: curve.label(),
            });
        }
        for (comp, _) in &trace.attachments {
            if tree.components[*comp].dicritical {
                return Err(Error::NotASeparatrix {
                    curve: format!("{} (attaches the non-invariant D{})", curve.label(), comp),
                });
            }
        }
        zeros.push(BalancedCurve {
            curve: curve.clone(),
            trace,
        });
    }

    let mut taken: Vec<(CompId, Rat)> = Vec::new();
    for comp in 0..tree.n_centers() {
        if !tree.components[comp].dicritical {
            continue;
        }
        let v = scan.valence(comp);
        let (count, into_poles) = if v <= 2 { (2 - v, false) } else { (v - 2, true) };
        let coords = fresh_attachments(tree, &scan, comp, count, seed, &mut taken);
        for coord in coords {
            let curve = TrackedCurve::Curvette { comp, coord };
            let trace = trace_curve(tree, &curve)?;
            let entry = BalancedCurve { curve, trace };
            if into_poles {
                poles.push(entry);
            } else {
                zeros.push(entry);
            }
        }
    }

    let nu0 = zeros.iter().map(|c| c.nu0() as i64).sum::<i64>()
        - poles.iter().map(|c| c.nu0() as i64).sum::<i64>();
    Ok(BalancedEquation { zeros, poles, nu0 })
}

#[derive(Clone, Debug, Serialize)]
pub struct SecondKindReport {
    pub snt_empty: bool,
    pub mult_identity: bool,
    pub ok: bool,
}

/// Second kind by both routes: no tangent saddle-node in the reduction, and
/// the balanced equation exceeding the foliation multiplicity by exactly
/// one. The two tests must agree.
pub fn check_second_kind_criterion(
    tree: &ResolutionTree,
    balanced: &BalancedEquation,
) -> Result<SecondKindReport> {
    let snt_empty = snt_set(tree)?.is_empty();
    let mult_identity = balanced.nu0 == i64::from(tree.form.multiplicity()) + 1;
    Ok(SecondKindReport {
        snt_empty,
        mult_identity,
        ok: snt_empty == mult_identity,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrectionRow {
    pub point: String,
    pub component: usize,
    pub nu: u64,
    pub ind: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationReport {
    pub lhs: i64,
    pub rhs: i64,
    pub ok: bool,
    pub corrections: Vec<CorrectionRow>,
}

/// The exact relation between the multiplicity of a balanced equation and
/// the foliation:
///
/// `nu0(F) = nu0(foliation) + 1 - sum over tangent saddle-nodes s, over the
/// components D through s, of nu(D) (Ind(D, s) - 1)`.
///
/// Each tangent saddle-node lowers the balanced multiplicity: its weak curve
/// is a divisor component, so the transverse invariant curve count drops by
/// the excess index. In particular the correction vanishes exactly for
/// second-kind foliations.
pub fn check_relation_multiplicite(
    tree: &ResolutionTree,
    balanced: &BalancedEquation,
) -> Result<RelationReport> {
    let snt = snt_set(tree)?;
    let mut corrections = Vec::new();
    let mut total = 0i64;
    for p in &snt {
        for b in &p.branches {
            debug_assert!(b.invariant, "tangent saddle-node on a non-invariant branch");
            let nu = tree.components[b.comp].nu;
            total += nu as i64 * (i64::from(b.value) - 1);
            corrections.push(CorrectionRow {
                point: p.label(),
                component: b.comp,
                nu,
                ind: b.value,
            });
        }
    }
    let lhs = balanced.nu0;
    let rhs = i64::from(tree.form.multiplicity()) + 1 - total;
    Ok(RelationReport {
        lhs,
        rhs,
        ok: lhs == rhs,
        corrections,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionRow {
    pub center: usize,
    pub v_c: u64,
    pub contribution: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub per_center: Vec<ObstructionRow>,
    pub dim: u64,
}

/// Dimension of the obstruction space attached to a pole set: for every
/// center c, v_c is the multiplicity of the strict transform of the blown
/// down pole union at c, and the dimension is the sum of v_c (v_c - 1) / 2.
pub fn obstruction_dimension(tree: &ResolutionTree, poles: &[BalancedCurve]) -> ObstructionReport {
    let mut per_center = Vec::new();
    let mut dim = 0u64;
    for c in 0..tree.n_centers() {
        let v_c: u64 = poles
            .iter()
            .map(|p| u64::from(p.trace.m_by_center[c]))
            .sum();
        let contribution = v_c * v_c.saturating_sub(1) / 2;
        dim += contribution;
        if v_c > 0 {
            per_center.push(ObstructionRow {
                center: c,
                v_c,
                contribution,
            });
        }
    }
    ObstructionReport { per_center, dim }
}

/// Per-component comparison of the balanced equation and the foliation
/// multiplicities: equal on non-invariant components, off by one on
/// invariant ones.
#[derive(Clone, Debug, Serialize)]
pub struct MuldicRow {
    pub component: usize,
    pub dicritical: bool,
    pub nu_foliation: i64,
    pub nu_balanced: i64,
    pub ok: bool,
}

pub fn check_muldic(tree: &ResolutionTree, balanced: &BalancedEquation) -> Vec<MuldicRow> {
    (0..tree.n_centers())
        .map(|comp| {
            let dicritical = tree.components[comp].dicritical;
            let nu_fol = tree.nu_foliation_along(comp) as i64;
            let nu_bal = balanced.nu_along(tree, comp);
            let expected = nu_fol + (!dicritical) as i64;
            MuldicRow {
                component: comp,
                dicritical,
                nu_foliation: nu_fol,
                nu_balanced: nu_bal,
                ok: nu_bal == expected,
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct BalancedCurveJson {
    pub curve: String,
    pub kind: String,
    pub nu0: u32,
    pub attachments: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BalancedJson {
    pub zeros: Vec<BalancedCurveJson>,
    pub poles: Vec<BalancedCurveJson>,
    pub nu0: i64,
}

pub fn balanced_json(b: &BalancedEquation) -> BalancedJson {
    fn entry(c: &BalancedCurve) -> BalancedCurveJson {
        BalancedCurveJson {
            curve: c.curve.label(),
            kind: match &c.curve {
                TrackedCurve::Explicit(_) => "explicit".into(),
                TrackedCurve::Parametrized { .. } => "parametrized".into(),
                TrackedCurve::Curvette { .. } => "curvette".into(),
            },
            nu0: c.nu0(),
            attachments: c
                .trace
                .attachments
                .iter()
                .map(|(d, t)| format!("D{}:{}", d, t))
                .collect(),
        }
    }
    BalancedJson {
        zeros: b.zeros.iter().map(entry).collect(),
        poles: b.poles.iter().map(entry).collect(),
        nu0: b.nu0,
    }
}

/// Full per-germ report with stable field names.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    pub schema: String,
    pub name: String,
    pub form: String,
    pub nu0_foliation: i64,
    pub nu0_balanced: i64,
    pub hertling: HertlingReport,
    pub second_kind: SecondKindReport,
    pub relation_1_5: RelationReport,
    pub obstruction: ObstructionReport,
    pub balanced: BalancedJson,
}

impl InvariantReport {
    pub fn all_ok(&self) -> bool {
        self.hertling.ok && self.second_kind.ok && self.relation_1_5.ok
    }
}

pub fn invariant_report(
    name: &str,
    tree: &ResolutionTree,
    isolated: &[TrackedCurve],
    seed: i64,
) -> Result<InvariantReport> {
    let balanced = build_balanced_equation(tree, isolated, seed)?;
    let hertling = check_hertling(tree)?;
    let second_kind = check_second_kind_criterion(tree, &balanced)?;
    let relation = check_relation_multiplicite(tree, &balanced)?;
    let obstruction = obstruction_dimension(tree, &balanced.poles);
    Ok(InvariantReport {
        schema: "folres/1".to_string(),
        name: name.to_string(),
        form: crate::parse::print_form(&tree.form),
        nu0_foliation: i64::from(tree.form.multiplicity()),
        nu0_balanced: balanced.nu0,
        hertling,
        second_kind,
        relation_1_5: relation,
        obstruction,
        balanced: balanced_json(&balanced),
    })
}

/// Rationals appear in labels only; keep the canonical printer close by.
pub fn coord_label(r: &Rat) -> String {
    rat_to_string(r)
}
