//! The trimming cylinder: a forest on the disjoint union of all levels of a
//! trimming sequence, with an edge from every vertex `v` of level `k < N` to
//! its projection, of length equal to the trim function of level `k` at `v`.
//!
//! Points of the cylinder are vertices or points inside positive-length
//! edges. Internally a point is a pair (upper vertex, offset) with offset 0
//! for the vertex itself, so the same arithmetic covers both cases.

mod export;
mod quotient;

use std::fmt;

use num_traits::{Signed, Zero};

pub use export::{CylinderJson, QuotientCylinderJson};
pub use quotient::{QuotientCylinder, QuotientNode};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::trimming::TrimSequence;

/// A vertex `(k, v)` with `v` a point of level `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub level: usize,
    pub index: usize,
}

/// A point of the cylinder.
///
/// `EdgeInterior` lies on the edge below `(level, index)` at distance
/// `offset` from that upper endpoint, with `0 < offset < length`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CylinderPoint {
    Vertex { level: usize, index: usize },
    EdgeInterior { level: usize, index: usize, offset: Rational },
}

impl CylinderPoint {
    pub fn vertex(level: usize, index: usize) -> Self {
        CylinderPoint::Vertex { level, index }
    }

    /// Upper vertex of the edge carrying the point, or the vertex itself.
    pub fn anchor(&self) -> VertexId {
        match *self {
            CylinderPoint::Vertex { level, index } | CylinderPoint::EdgeInterior { level, index, .. } => {
                VertexId { level, index }
            }
        }
    }

    fn offset(&self) -> Rational {
        match self {
            CylinderPoint::Vertex { .. } => Rational::zero(),
            CylinderPoint::EdgeInterior { offset, .. } => offset.clone(),
        }
    }
}

#[derive(Debug, Clone)]
struct VertexData {
    id: VertexId,
    down: Option<usize>,
    length: Rational,
    sigma: Rational,
    component: usize,
}

#[derive(Debug, Clone)]
pub struct Cylinder {
    seq: TrimSequence,
    offsets: Vec<usize>,
    vertices: Vec<VertexData>,
}

pub fn build_cylinder(seq: &TrimSequence) -> Cylinder {
    Cylinder::new(seq.clone())
}

impl Cylinder {
    pub fn new(seq: TrimSequence) -> Self {
        let top = seq.stable_index();
        let mut offsets = Vec::with_capacity(top + 1);
        let mut total = 0;
        for level in seq.levels() {
            offsets.push(total);
            total += level.space().len();
        }
        let mut vertices: Vec<VertexData> = Vec::with_capacity(total);
        for (k, level) in seq.levels().iter().enumerate() {
            for v in 0..level.space().len() {
                let down = level.projection().map(|p| offsets[k + 1] + p.apply(v));
                vertices.push(VertexData {
                    id: VertexId { level: k, index: v },
                    down,
                    length: level.underline()[v].clone(),
                    sigma: seq.sigma_from(k, v),
                    component: seq.descend(k, v, top),
                });
            }
        }
        Cylinder {
            seq,
            offsets,
            vertices,
        }
    }

    pub fn sequence(&self) -> &TrimSequence {
        &self.seq
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().map(|v| v.id)
    }

    pub fn component_count(&self) -> usize {
        self.seq.x_infinity().len()
    }

    fn flat(&self, id: VertexId) -> usize {
        self.offsets[id.level] + id.index
    }

    fn check_vertex(&self, id: VertexId) -> Result<usize> {
        if id.level > self.seq.stable_index() || id.index >= self.seq.level(id.level).space().len() {
            return Err(Error::InvalidPoint(format!(
                "no vertex {} at level {}",
                id.index, id.level
            )));
        }
        Ok(self.flat(id))
    }

    /// Vertex name `label@level`.
    pub fn vertex_name(&self, id: VertexId) -> String {
        format!("{}@{}", self.seq.level(id.level).space().label(id.index), id.level)
    }

    pub fn point_name(&self, a: &CylinderPoint) -> String {
        match a {
            CylinderPoint::Vertex { .. } => self.vertex_name(a.anchor()),
            CylinderPoint::EdgeInterior { offset, .. } => {
                format!("{}+{}", self.vertex_name(a.anchor()), rational::format(offset))
            }
        }
    }

    /// Length of the edge below `id`; zero at the top level.
    pub fn edge_length(&self, id: VertexId) -> &Rational {
        &self.vertices[self.flat(id)].length
    }

    /// Lower endpoint of the edge below `id`.
    pub fn down(&self, id: VertexId) -> Option<VertexId> {
        self.vertices[self.flat(id)].down.map(|d| self.vertices[d].id)
    }

    /// Vertices whose edge ends at `id`.
    pub fn preimages(&self, id: VertexId) -> Vec<VertexId> {
        let target = self.flat(id);
        self.vertices
            .iter()
            .filter(|v| v.down == Some(target))
            .map(|v| v.id)
            .collect()
    }

    /// Vertices of degree one, counting the implicit zero-length tail below
    /// the top level.
    pub fn leaves(&self) -> Vec<VertexId> {
        self.vertices()
            .filter(|&id| self.preimages(id).is_empty())
            .collect()
    }

    /// Component of a vertex, as an index into `X_inf`.
    pub fn component_of(&self, a: &CylinderPoint) -> usize {
        self.vertices[self.flat(a.anchor())].component
    }

    pub fn component_label(&self, c: usize) -> &str {
        self.seq.x_infinity().label(c)
    }

    /// Validates a point and normalises an edge offset: offset 0 is the upper
    /// vertex and offset equal to the edge length is the lower vertex.
    pub fn point_on_edge(&self, upper: VertexId, offset: Rational) -> Result<CylinderPoint> {
        let flat = self.check_vertex(upper)?;
        let len = &self.vertices[flat].length;
        if offset.is_negative() || offset > *len {
            return Err(Error::InvalidPoint(format!(
                "offset {} outside [0, {}] on edge below {}",
                offset,
                len,
                self.vertex_name(upper)
            )));
        }
        if offset.is_zero() {
            return Ok(CylinderPoint::vertex(upper.level, upper.index));
        }
        if offset == *len {
            let d = self.vertices[self.vertices[flat].down.expect("positive edges have a lower end")].id;
            return Ok(CylinderPoint::vertex(d.level, d.index));
        }
        Ok(CylinderPoint::EdgeInterior {
            level: upper.level,
            index: upper.index,
            offset,
        })
    }

    pub fn validate_point(&self, a: &CylinderPoint) -> Result<()> {
        let flat = self.check_vertex(a.anchor())?;
        if let CylinderPoint::EdgeInterior { offset, .. } = a {
            let len = &self.vertices[flat].length;
            if !offset.is_positive() || offset >= len {
                return Err(Error::InvalidPoint(format!(
                    "interior offset {} not in (0, {})",
                    offset, len
                )));
            }
        }
        Ok(())
    }

    /// Distance from `a` down to the bottom of its component.
    pub fn sigma_point(&self, a: &CylinderPoint) -> Rational {
        &self.vertices[self.flat(a.anchor())].sigma - a.offset()
    }

    /// First common vertex of the descending chains from two vertices.
    fn meet(&self, a: usize, b: usize) -> Option<usize> {
        let level = |i: usize| self.vertices[i].id.level;
        let (mut a, mut b) = (a, b);
        while level(a) < level(b) {
            a = self.vertices[a].down?;
        }
        while level(b) < level(a) {
            b = self.vertices[b].down?;
        }
        while a != b {
            a = self.vertices[a].down?;
            b = self.vertices[b].down?;
        }
        Some(a)
    }

    /// Path pseudometric inside a component; `None` across components.
    pub fn path_distance(&self, a: &CylinderPoint, b: &CylinderPoint) -> Option<Rational> {
        let (ua, ub) = (self.flat(a.anchor()), self.flat(b.anchor()));
        let m = self.meet(ua, ub)?;
        let (sa, sb) = (self.sigma_point(a), self.sigma_point(b));
        Some(if m == ua && m == ub {
            (a.offset() - b.offset()).abs()
        } else if m == ua {
            sb - sa
        } else if m == ub {
            sa - sb
        } else {
            let sm = &self.vertices[m].sigma;
            sa + sb - sm - sm
        })
    }

    /// `a` lies strictly below `b`: some descending path runs from `b` to `a`.
    pub fn lies_below(&self, a: &CylinderPoint, b: &CylinderPoint) -> bool {
        let (ua, ub) = (self.flat(a.anchor()), self.flat(b.anchor()));
        if ua == ub {
            return a.offset() > b.offset();
        }
        self.meet(ua, ub) == Some(ua)
    }

    /// The minimal pseudometric on the cylinder extending the base metric and
    /// the path pseudometrics of the components.
    pub fn rho(&self, a: &CylinderPoint, b: &CylinderPoint) -> Rational {
        match self.path_distance(a, b) {
            Some(d) => d,
            None => {
                let (ca, cb) = (self.component_of(a), self.component_of(b));
                self.seq.d_infinity(ca, cb) + self.sigma_point(a) + self.sigma_point(b)
            }
        }
    }

    /// Vertices whose whole descending tail has zero length.
    pub fn is_special(&self, id: VertexId) -> bool {
        self.vertices[self.flat(id)].sigma.is_zero()
    }

    /// Special vertices and the components containing one.
    pub fn special_and_roots(&self) -> (Vec<VertexId>, Vec<usize>) {
        let special: Vec<VertexId> = self.vertices().filter(|&id| self.is_special(id)).collect();
        let mut comps: Vec<usize> = special
            .iter()
            .map(|&id| self.vertices[self.flat(id)].component)
            .collect();
        comps.sort_unstable();
        comps.dedup();
        (special, comps)
    }

    /// A leaf `x` of the base with `a` on its descending chain.
    pub fn leaf_above(&self, a: &CylinderPoint) -> usize {
        let VertexId { level, index } = a.anchor();
        (0..self.seq.base().len())
            .find(|&x| self.seq.position(level, x) == index)
            .expect("projections are surjective")
    }

    /// Every vertex plus the quartile points of every positive edge.
    pub fn sample_points(&self) -> Vec<CylinderPoint> {
        let mut points: Vec<CylinderPoint> = self
            .vertices()
            .map(|id| CylinderPoint::vertex(id.level, id.index))
            .collect();
        for v in &self.vertices {
            if v.length.is_positive() {
                for q in 1..4 {
                    points.push(CylinderPoint::EdgeInterior {
                        level: v.id.level,
                        index: v.id.index,
                        offset: &v.length * rational::ratio(q, 4),
                    });
                }
            }
        }
        points
    }

    pub fn quotient(&self) -> Result<QuotientCylinder> {
        QuotientCylinder::new(self)
    }

    pub fn to_json(&self) -> CylinderJson {
        export::cylinder_json(self)
    }

    pub fn to_dot(&self) -> String {
        export::cylinder_dot(self)
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.level, self.index)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desk;
    use crate::rational::{int, ratio};
    use crate::trimming::trimming_sequence;

    fn cat() -> Cylinder {
        build_cylinder(&trimming_sequence(&desk::caterpillar()))
    }

    fn v(level: usize, index: usize) -> CylinderPoint {
        CylinderPoint::vertex(level, index)
    }

    #[test]
    fn caterpillar_shape() {
        let c = cat();
        assert_eq!(c.vertex_count(), 9);
        assert_eq!(c.component_count(), 1);
        for i in 0..6 {
            assert_eq!(*c.edge_length(VertexId { level: 0, index: i }), int(1));
        }
        for i in 0..2 {
            assert_eq!(*c.edge_length(VertexId { level: 1, index: i }), ratio(5, 2));
        }
        let leaves = c.leaves();
        assert_eq!(leaves.len(), 6);
        assert!(leaves.iter().all(|id| id.level == 0));
    }

    #[test]
    fn trim_and_singleton_shapes() {
        let c = build_cylinder(&trimming_sequence(&desk::circle(4)));
        assert_eq!(c.vertex_count(), 4);
        assert_eq!(c.component_count(), 4);
        assert_eq!(c.leaves().len(), 4);
        let c = build_cylinder(&trimming_sequence(&desk::singleton()));
        assert_eq!(c.vertex_count(), 1);
        assert_eq!(c.component_count(), 1);
    }

    #[test]
    fn below_order() {
        let c = cat();
        assert!(c.lies_below(&v(2, 0), &v(0, 0)));
        assert!(!c.lies_below(&v(0, 0), &v(2, 0)));
        assert!(!c.lies_below(&v(0, 0), &v(0, 0)));
        assert!(!c.lies_below(&v(0, 0), &v(0, 3)));
        assert!(!c.lies_below(&v(0, 3), &v(0, 0)));
        let mid = c.point_on_edge(VertexId { level: 0, index: 0 }, ratio(1, 2)).unwrap();
        assert!(c.lies_below(&mid, &v(0, 0)));
        assert!(c.lies_below(&v(1, 0), &mid));
        assert!(!c.lies_below(&mid, &v(1, 0)));
    }

    #[test]
    fn rho_examples() {
        let c = cat();
        assert_eq!(c.rho(&v(0, 0), &v(0, 3)), int(7));
        assert_eq!(c.rho(&v(0, 0), &v(0, 0)), int(0));
        assert_eq!(c.rho(&v(0, 0), &v(0, 1)), int(2));
        assert_eq!(c.rho(&v(1, 0), &v(1, 1)), int(5));
        let mid = c.point_on_edge(VertexId { level: 0, index: 0 }, ratio(1, 2)).unwrap();
        assert_eq!(c.rho(&mid, &v(0, 0)), ratio(1, 2));
        assert_eq!(c.rho(&mid, &v(0, 1)), ratio(3, 2));
        assert_eq!(c.rho(&mid, &v(0, 3)), ratio(13, 2));

        let circle = desk::circle(4);
        let c = build_cylinder(&trimming_sequence(&circle));
        for x in 0..4 {
            for y in 0..4 {
                assert_eq!(c.rho(&v(0, x), &v(0, y)), *circle.d(x, y));
            }
        }
    }

    #[test]
    fn sigma_on_points() {
        let c = cat();
        assert_eq!(c.sigma_point(&v(0, 0)), ratio(7, 2));
        let mid = c.point_on_edge(VertexId { level: 0, index: 0 }, ratio(1, 2)).unwrap();
        assert_eq!(c.sigma_point(&mid), int(3));
        assert_eq!(c.sigma_point(&v(1, 0)), ratio(5, 2));
        assert_eq!(c.sigma_point(&v(2, 0)), int(0));
    }

    #[test]
    fn special_vertices() {
        let c = cat();
        let (special, roots) = c.special_and_roots();
        assert_eq!(special, vec![VertexId { level: 2, index: 0 }]);
        assert_eq!(roots, vec![0]);

        let c = build_cylinder(&trimming_sequence(&desk::circle(4)));
        let (special, roots) = c.special_and_roots();
        assert_eq!(special.len(), 4);
        assert_eq!(roots.len(), 4);
    }

    #[test]
    fn point_normalisation() {
        let c = cat();
        let top = VertexId { level: 0, index: 0 };
        assert_eq!(c.point_on_edge(top, int(0)).unwrap(), v(0, 0));
        assert_eq!(c.point_on_edge(top, int(1)).unwrap(), v(1, 0));
        assert!(c.point_on_edge(top, int(2)).is_err());
        assert!(c.point_on_edge(top, ratio(-1, 2)).is_err());
        assert!(c.point_on_edge(VertexId { level: 5, index: 0 }, int(0)).is_err());
        let bad = CylinderPoint::EdgeInterior {
            level: 2,
            index: 0,
            offset: ratio(1, 2),
        };
        assert!(c.validate_point(&bad).is_err());
    }
}
