use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Cylinder, QuotientCylinder};
use crate::rational::{self, Rational};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexJson {
    pub name: String,
    pub level: usize,
    pub label: String,
    pub component: String,
    pub special: bool,
    #[serde(with = "rational::serde_str")]
    pub sigma: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeJson {
    pub upper: String,
    pub lower: String,
    #[serde(with = "rational::serde_str")]
    pub length: Rational,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CylinderJson {
    pub vertices: Vec<VertexJson>,
    pub edges: Vec<EdgeJson>,
    pub components: Vec<String>,
    pub special_components: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeJson {
    pub name: String,
    pub members: Vec<String>,
    pub component: String,
    pub root: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuotientCylinderJson {
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
    /// Node carrying each point of the base space, in base label order.
    pub leaves: Vec<String>,
}

pub(super) fn cylinder_json(cyl: &Cylinder) -> CylinderJson {
    let vertices = cyl
        .vertices
        .iter()
        .map(|v| VertexJson {
            name: cyl.vertex_name(v.id),
            level: v.id.level,
            label: cyl.seq.level(v.id.level).space().label(v.id.index).to_string(),
            component: cyl.component_label(v.component).to_string(),
            special: cyl.is_special(v.id),
            sigma: v.sigma.clone(),
        })
        .collect();
    let edges = cyl
        .vertices
        .iter()
        .filter_map(|v| {
            v.down.map(|d| EdgeJson {
                upper: cyl.vertex_name(v.id),
                lower: cyl.vertex_name(cyl.vertices[d].id),
                length: v.length.clone(),
            })
        })
        .collect();
    let (_, special) = cyl.special_and_roots();
    CylinderJson {
        vertices,
        edges,
        components: cyl.seq.x_infinity().labels().to_vec(),
        special_components: special
            .into_iter()
            .map(|c| cyl.component_label(c).to_string())
            .collect(),
    }
}

fn node_name(q: &QuotientCylinder, cyl: &Cylinder, i: usize) -> String {
    cyl.vertex_name(q.nodes()[i].representative)
}

pub(super) fn quotient_json(q: &QuotientCylinder, cyl: &Cylinder) -> QuotientCylinderJson {
    QuotientCylinderJson {
        nodes: (0..q.nodes().len())
            .map(|i| NodeJson {
                name: node_name(q, cyl, i),
                members: q.nodes()[i].members.iter().map(|&m| cyl.vertex_name(m)).collect(),
                component: cyl.component_label(q.nodes()[i].component).to_string(),
                root: q.nodes()[i].is_root,
            })
            .collect(),
        edges: q
            .edges()
            .iter()
            .map(|(a, b, len)| EdgeJson {
                upper: node_name(q, cyl, *a),
                lower: node_name(q, cyl, *b),
                length: len.clone(),
            })
            .collect(),
        leaves: q.leaf_nodes().iter().map(|&i| node_name(q, cyl, i)).collect(),
    }
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(super) fn cylinder_dot(cyl: &Cylinder) -> String {
    let mut out = String::from("graph cylinder {\n  rankdir=TB;\n  node [shape=circle];\n");
    for v in &cyl.vertices {
        let shape = if cyl.is_special(v.id) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={}];", quote(&cyl.vertex_name(v.id)), shape);
    }
    for v in &cyl.vertices {
        if let Some(d) = v.down {
            let style = if num_traits::Zero::is_zero(&v.length) { ", style=dashed" } else { "" };
            let _ = writeln!(
                out,
                "  {} -- {} [label={}{}];",
                quote(&cyl.vertex_name(v.id)),
                quote(&cyl.vertex_name(cyl.vertices[d].id)),
                quote(&rational::format(&v.length)),
                style
            );
        }
    }
    out.push_str("}\n");
    out
}

pub(super) fn quotient_dot(q: &QuotientCylinder, cyl: &Cylinder) -> String {
    let mut out = String::from("graph quotient_cylinder {\n  rankdir=TB;\n  node [shape=circle];\n");
    for (i, node) in q.nodes().iter().enumerate() {
        let shape = if node.is_root { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  {} [shape={}];", quote(&node_name(q, cyl, i)), shape);
    }
    for (a, b, len) in q.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(&node_name(q, cyl, *a)),
            quote(&node_name(q, cyl, *b)),
            quote(&rational::format(len))
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use crate::cylinder::build_cylinder;
    use crate::desk;
    use crate::trimming::trimming_sequence;

    #[test]
    fn dot_marks_roots_and_lengths() {
        let cyl = build_cylinder(&trimming_sequence(&desk::caterpillar()));
        let dot = cyl.to_dot();
        assert!(dot.contains("\"a@0\" -- \"a@1\" [label=\"1\"]"));
        assert!(dot.contains("\"a@1\" -- \"a@2\" [label=\"5/2\"]"));
        assert!(dot.contains("\"a@2\" [shape=doublecircle]"));

        let q = cyl.quotient().unwrap();
        let dot = q.to_dot(&cyl);
        assert_eq!(dot.matches("doublecircle").count(), 1);
        assert_eq!(dot.matches(" -- ").count(), 8);
    }

    #[test]
    fn json_mirrors_structure() {
        let cyl = build_cylinder(&trimming_sequence(&desk::line(&[0, 1, 3])));
        let json = cyl.to_json();
        assert_eq!(json.vertices.len(), 4);
        assert_eq!(json.edges.len(), 3);
        assert_eq!(json.components, vec!["p0".to_string()]);
        let value = serde_json::to_value(cyl.quotient().unwrap().to_json(&cyl)).unwrap();
        assert_eq!(value["leaves"][1], "p1@0");
        assert_eq!(value["nodes"].as_array().unwrap().len(), 3);
    }
}
