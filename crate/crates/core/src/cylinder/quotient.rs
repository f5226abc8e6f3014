use num_traits::Zero;
use petgraph::unionfind::UnionFind;

use super::{Cylinder, CylinderPoint, VertexId};
use crate::error::{Error, Result};
use crate::rational::Rational;

/// A vertex of the metric quotient: a class of cylinder vertices joined by
/// zero-length edges.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotientNode {
    /// Member with the lowest level (ties broken by index).
    pub representative: VertexId,
    pub members: Vec<VertexId>,
    pub component: usize,
    pub is_root: bool,
}

/// The metric forest obtained by collapsing every zero-length edge.
#[derive(Debug, Clone)]
pub struct QuotientCylinder {
    nodes: Vec<QuotientNode>,
    edges: Vec<(usize, usize, Rational)>,
    leaf_nodes: Vec<usize>,
    node_of: Vec<usize>,
}

impl QuotientCylinder {
    pub(super) fn new(cyl: &Cylinder) -> Result<Self> {
        let inf = cyl.seq.x_infinity();
        for u in 0..inf.len() {
            for v in u + 1..inf.len() {
                if inf.d(u, v).is_zero() {
                    return Err(Error::UnexpectedGlue {
                        u: inf.label(u).to_string(),
                        v: inf.label(v).to_string(),
                    });
                }
            }
        }

        let n = cyl.vertices.len();
        let mut classes = UnionFind::<usize>::new(n);
        for (i, v) in cyl.vertices.iter().enumerate() {
            if let Some(d) = v.down {
                if v.length.is_zero() {
                    classes.union(i, d);
                }
            }
        }
        let labels = classes.into_labeling();
        let mut node_of = vec![usize::MAX; n];
        let mut nodes: Vec<QuotientNode> = Vec::new();
        let mut class_index = std::collections::HashMap::new();
        for (i, v) in cyl.vertices.iter().enumerate() {
            let idx = *class_index.entry(labels[i]).or_insert_with(|| {
                nodes.push(QuotientNode {
                    representative: v.id,
                    members: Vec::new(),
                    component: v.component,
                    is_root: false,
                });
                nodes.len() - 1
            });
            node_of[i] = idx;
            let node = &mut nodes[idx];
            node.members.push(v.id);
            node.is_root |= v.sigma.is_zero();
        }
        let edges = cyl
            .vertices
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.length.is_zero())
            .map(|(i, v)| {
                let d = v.down.expect("positive edges have a lower end");
                (node_of[i], node_of[d], v.length.clone())
            })
            .collect();
        let leaf_nodes = (0..cyl.seq.base().len()).map(|x| node_of[x]).collect();
        Ok(QuotientCylinder {
            nodes,
            edges,
            leaf_nodes,
            node_of,
        })
    }

    pub fn nodes(&self) -> &[QuotientNode] {
        &self.nodes
    }

    /// Positive-length edges as (upper node, lower node, length).
    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    /// Node carrying each point of the base space.
    pub fn leaf_nodes(&self) -> &[usize] {
        &self.leaf_nodes
    }

    pub fn node_of(&self, cyl: &Cylinder, id: VertexId) -> usize {
        self.node_of[cyl.flat(id)]
    }

    pub fn roots(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].is_root).collect()
    }

    /// Distance between two nodes, computed in the cylinder on
    /// representatives.
    pub fn distance(&self, cyl: &Cylinder, a: usize, b: usize) -> Rational {
        let (ra, rb) = (self.nodes[a].representative, self.nodes[b].representative);
        cyl.rho(
            &CylinderPoint::vertex(ra.level, ra.index),
            &CylinderPoint::vertex(rb.level, rb.index),
        )
    }

    pub fn to_json(&self, cyl: &Cylinder) -> super::QuotientCylinderJson {
        super::export::quotient_json(self, cyl)
    }

    pub fn to_dot(&self, cyl: &Cylinder) -> String {
        super::export::quotient_dot(self, cyl)
    }
}

#[cfg(test)]
mod tests {
    use crate::cylinder::build_cylinder;
    use crate::desk;
    use crate::rational::{int, ratio};
    use crate::trimming::trimming_sequence;

    #[test]
    fn caterpillar_quotient_is_a_rooted_tree() {
        let cyl = build_cylinder(&trimming_sequence(&desk::caterpillar()));
        let q = cyl.quotient().unwrap();
        assert_eq!(q.nodes().len(), 9);
        assert_eq!(q.edges().len(), 8);
        let roots = q.roots();
        assert_eq!(roots.len(), 1);
        let internal = q
            .nodes()
            .iter()
            .filter(|n| n.representative.level == 1)
            .count();
        assert_eq!(internal, 2);
        for &leaf in q.leaf_nodes() {
            assert_eq!(q.distance(&cyl, leaf, roots[0]), ratio(7, 2));
        }
    }

    #[test]
    fn trim_space_quotient_is_the_space() {
        let circle = desk::circle(4);
        let cyl = build_cylinder(&trimming_sequence(&circle));
        let q = cyl.quotient().unwrap();
        assert_eq!(q.nodes().len(), 4);
        assert!(q.edges().is_empty());
        assert_eq!(q.roots().len(), 4);
        for x in 0..4 {
            for y in 0..4 {
                let (a, b) = (q.leaf_nodes()[x], q.leaf_nodes()[y]);
                assert_eq!(q.distance(&cyl, a, b), *circle.d(x, y));
            }
        }
    }

    #[test]
    fn singleton_quotient() {
        let cyl = build_cylinder(&trimming_sequence(&desk::singleton()));
        let q = cyl.quotient().unwrap();
        assert_eq!(q.nodes().len(), 1);
        assert_eq!(q.roots(), vec![0]);
    }

    #[test]
    fn zero_edges_collapse() {
        // The middle point of {0,1,3} has a zero-length edge into the root.
        let cyl = build_cylinder(&trimming_sequence(&desk::line(&[0, 1, 3])));
        let q = cyl.quotient().unwrap();
        assert_eq!(q.nodes().len(), 3);
        assert_eq!(q.edges().len(), 2);
        let root = q.roots()[0];
        assert_eq!(q.leaf_nodes()[1], root);
        assert_eq!(q.nodes()[root].members.len(), 2);
        assert_eq!(q.distance(&cyl, q.leaf_nodes()[0], q.leaf_nodes()[2]), int(3));

        let cyl = build_cylinder(&trimming_sequence(&desk::equilateral(int(2))));
        let q = cyl.quotient().unwrap();
        assert_eq!(q.nodes().len(), 4);
        assert_eq!(q.roots().len(), 1);
    }
}
