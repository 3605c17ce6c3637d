//! Iterated blow-ups until the transformed foliation is reduced, plus the
//! data every invariant reads off the finished process.

mod curves;
mod driver;
mod output;
mod scan;
mod tree;

pub use curves::{
    curve_is_separatrix, curve_nu0, curvette_blowdown_multiplicities, fresh_attachments,
    nu_curve_direct, trace_curve, CurveTrace, TrackedCurve,
};
pub use driver::{extend_at, is_second_kind, reduce, reduce_with_order, snt_set, DEFAULT_MAX_DEPTH};
pub use output::{tree_dot, tree_json, TreeJson};
pub use scan::{
    audit, failing_points, scan_stage, site_for_point, BranchData, PointRecord, StageScan,
};
pub use tree::{
    BlowSite, Center, CenterId, Chart, ChartId, CompId, Component, DivisorCoord, ResolutionTree,
};

#[cfg(test)]
mod tests;
