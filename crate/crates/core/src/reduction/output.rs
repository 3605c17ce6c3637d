//! Serialized views of a finished tree: a stable JSON shape and a DOT dual
//! graph. Output is deterministic: components in id order, points in address
//! order, rationals printed canonically.

use serde::Serialize;

use crate::error::Result;
use crate::foliation::SingClass;

use super::scan::scan_stage;
use super::tree::ResolutionTree;

#[derive(Serialize)]
pub struct TreeJson {
    pub schema: String,
    pub form: String,
    /// Common factor divided out when the input was primitivized.
    pub removed_factor: String,
    pub components: Vec<ComponentJson>,
    pub centers: Vec<CenterJson>,
    pub rounds: usize,
}

#[derive(Serialize)]
pub struct ComponentJson {
    pub id: usize,
    pub nu: u64,
    pub dicritical: bool,
    pub neighbors: Vec<usize>,
    pub points: Vec<PointJson>,
}

#[derive(Serialize)]
pub struct PointJson {
    pub coord: String,
    pub corner_with: Option<usize>,
    pub class: String,
    pub snt: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ind: Vec<BranchJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub tan: Vec<BranchJson>,
}

#[derive(Serialize)]
pub struct BranchJson {
    pub component: usize,
    pub value: u32,
}

#[derive(Serialize)]
pub struct CenterJson {
    pub id: usize,
    pub depth: usize,
    pub on: Vec<usize>,
    pub nu: u32,
    pub m: u32,
    pub dicritical: bool,
}

pub fn tree_json(tree: &ResolutionTree) -> Result<TreeJson> {
    let scan = scan_stage(tree, tree.n_centers())?;
    let mut components = Vec::new();
    for comp in &tree.components {
        let mut neighbors = tree.neighbors(comp.id);
        neighbors.sort_unstable();
        let mut points = Vec::new();
        for p in scan.points_on(comp.id) {
            let corner_with = if p.is_corner() {
                p.comps.iter().copied().find(|&c| c != comp.id)
            } else {
                None
            };
            let class = match &p.class {
                SingClass::Regular => "regular".to_string(),
                SingClass::Reduced { .. } => "reduced".to_string(),
                SingClass::SaddleNode { .. } => "saddle-node".to_string(),
                SingClass::NonReduced => "non-reduced".to_string(),
            };
            let mut ind = Vec::new();
            let mut tan = Vec::new();
            for b in &p.branches {
                let row = BranchJson {
                    component: b.comp,
                    value: b.value,
                };
                if b.invariant {
                    ind.push(row);
                } else {
                    tan.push(row);
                }
            }
            // the address coordinate is meaningful on the addressed
            // component; report the point under both incident components
            points.push(PointJson {
                coord: format!("{}", p.address.1),
                corner_with,
                class,
                snt: p.snt,
                ind,
                tan,
            });
        }
        components.push(ComponentJson {
            id: comp.id,
            nu: comp.nu,
            dicritical: comp.dicritical,
            neighbors,
            points,
        });
    }
    let centers = tree
        .centers
        .iter()
        .map(|c| CenterJson {
            id: c.id,
            depth: c.depth,
            on: c.on.iter().map(|(d, _)| *d).collect(),
            nu: c.nu,
            m: c.m,
            dicritical: c.dicritical,
        })
        .collect();
    Ok(TreeJson {
        schema: "folres/1".to_string(),
        form: crate::parse::print_form(&tree.form),
        removed_factor: crate::parse::print_poly(tree.form.removed_factor()),
        components,
        centers,
        rounds: tree.rounds,
    })
}

/// DOT dual graph: one node per component, one edge per corner.
pub fn tree_dot(tree: &ResolutionTree) -> String {
    let mut out = String::from("graph divisor {\n");
    for c in &tree.components {
        out.push_str(&format!(
            "  D{} [label=\"D{} nu={} {}\"];\n",
            c.id,
            c.id,
            c.nu,
            if c.dicritical { "dic" } else { "inv" }
        ));
    }
    let edges = tree.edges_at_stage(tree.n_centers());
    for (a, b) in edges {
        out.push_str(&format!("  D{} -- D{};\n", a, b));
    }
    out.push_str("}\n");
    out
}
