//! The reduction loop: scan the current stage, blow up every failing point,
//! repeat until the stage is reduced.

use crate::error::{Error, Result};
use crate::foliation::OneForm;

use super::scan::{audit, failing_points, scan_stage, site_for_point, PointRecord, StageScan};
use super::tree::{CompId, DivisorCoord, ResolutionTree};

pub const DEFAULT_MAX_DEPTH: usize = 50;

/// Reduce the germ: blow up the origin, then every failing point of every
/// round, breadth first, until no point fails. Each round is deterministic:
/// failing points are processed in address order.
pub fn reduce(form: &OneForm, max_depth: usize) -> Result<ResolutionTree> {
    reduce_with_order(form, max_depth, None)
}

/// Same loop with the per-round processing order optionally shuffled; the
/// resulting tree must carry the same invariants, which the tests assert.
pub fn reduce_with_order(
    form: &OneForm,
    max_depth: usize,
    shuffle_seed: Option<u64>,
) -> Result<ResolutionTree> {
    assert!(max_depth >= 1, "max_depth must be at least 1");
    let mut tree = ResolutionTree::new(form.clone())?;
    let mut rng = shuffle_seed.map(XorShift::new);
    for round in 1..=max_depth {
        let scan = scan_stage(&tree, tree.n_centers())?;
        let mut failing = failing_points(&tree, &scan);
        if failing.is_empty() {
            tree.rounds = round - 1;
            debug_assert!(audit(&tree)?.is_empty());
            return Ok(tree);
        }
        if round == max_depth {
            return Err(Error::DepthExceeded {
                max_depth,
                count: failing.len(),
                points: failing.iter().map(|p| p.label()).collect(),
            });
        }
        if let Some(rng) = rng.as_mut() {
            shuffle(&mut failing, rng);
        }
        let sites: Vec<_> = failing
            .iter()
            .map(|p| site_for_point(&tree, p))
            .collect();
        for site in sites {
            tree.blow(site, round);
        }
    }
    unreachable!("loop returns or errors before exhausting the range")
}

/// Blow up one extra free point on a component; the point must be regular,
/// not special and not already consumed. Used to refine a finished tree.
pub fn extend_at(tree: &mut ResolutionTree, comp: CompId, coord: &crate::algebra::rat::Rat) -> Result<()> {
    let scan = scan_stage(tree, tree.n_centers())?;
    if !free_coordinate(tree, &scan, comp, coord) {
        return Err(Error::AttachmentConflict {
            component: comp,
            coord: crate::algebra::rat::rat_to_string(coord),
        });
    }
    let chart = tree.components[comp].chart_u;
    let round = tree.centers.iter().map(|c| c.depth).max().unwrap_or(0) + 1;
    let site = super::tree::BlowSite {
        parent_chart: Some(chart),
        point: (num_traits::Zero::zero(), coord.clone()),
        on: vec![(comp, crate::blowup::BranchAxis::U)],
        consumed: vec![(comp, DivisorCoord::Finite(coord.clone()))],
        corner_removed: None,
    };
    tree.blow(site, round);
    Ok(())
}

/// A finite chart-U coordinate that carries no special point, no corner and
/// no earlier blow-up.
pub fn free_coordinate(
    tree: &ResolutionTree,
    scan: &StageScan,
    comp: CompId,
    coord: &crate::algebra::rat::Rat,
) -> bool {
    let addr = (comp, DivisorCoord::Finite(coord.clone()));
    if tree.blown_at_stage(tree.n_centers()).contains(&addr) {
        return false;
    }
    if scan.points.iter().any(|p| p.address == addr) {
        return false;
    }
    // corners of younger components never sit at fresh chart-U coordinates
    // of `comp`, but the slot at 0 may be the corner with the parent
    if num_traits::Zero::is_zero(coord) && tree.components[comp].corner_at_zero.is_some() {
        return false;
    }
    true
}

/// Tangent saddle-nodes of the finished tree.
pub fn snt_set(tree: &ResolutionTree) -> Result<Vec<PointRecord>> {
    let scan = scan_stage(tree, tree.n_centers())?;
    Ok(scan.points.into_iter().filter(|p| p.snt).collect())
}

/// No tangent saddle-node anywhere in the reduction.
pub fn is_second_kind(tree: &ResolutionTree) -> Result<bool> {
    Ok(snt_set(tree)?.is_empty())
}

struct XorShift(u64);

impl XorShift {
    fn new(seed: u64) -> Self {
        XorShift(seed.max(1))
    }
    fn next(&mut self) -> u64 {
        let mut x = self.0;
        x ^= x << 13;
        x ^= x >> 7;
        x ^= x << 17;
        self.0 = x;
        x
    }
}

fn shuffle<T>(v: &mut [T], rng: &mut XorShift) {
    for i in (1..v.len()).rev() {
        let j = (rng.next() % (i as u64 + 1)) as usize;
        v.swap(i, j);
    }
}
