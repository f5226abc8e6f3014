//! Finite pseudometric and metric spaces with exact distances.
//!
//! Points are addressed by index; labels are opaque strings whose order fixes
//! the indexing of the distance table.

use std::collections::HashSet;
use std::fmt;
use std::ops::Deref;
use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// A finite set of labelled points with a validated pseudometric.
#[derive(Clone, PartialEq)]
pub struct PseudometricSpace {
    labels: Arc<[String]>,
    dist: Vec<Rational>,
}

/// A pseudometric space whose distinct points are at positive distance.
#[derive(Clone, PartialEq)]
pub struct MetricSpace(PseudometricSpace);

/// Result of [`validate_space`].
#[derive(Debug, Clone, PartialEq)]
pub enum ValidatedSpace {
    Metric(MetricSpace),
    Pseudometric(PseudometricSpace),
}

/// Per-point shift used to pull every point towards all others.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftFunction(pub Vec<Rational>);

/// Surjection from a space onto the classes of a partition of it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    assignment: Vec<usize>,
    target_len: usize,
}

/// Checks every pseudometric axiom exactly and reports the first witness of
/// a failure.
pub fn validate_space(labels: Vec<String>, table: Vec<Vec<Rational>>) -> Result<ValidatedSpace> {
    let space = PseudometricSpace::new(labels, table)?;
    Ok(if space.is_metric() {
        ValidatedSpace::Metric(MetricSpace(space))
    } else {
        ValidatedSpace::Pseudometric(space)
    })
}

impl PseudometricSpace {
    pub fn new(labels: Vec<String>, table: Vec<Vec<Rational>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptySpace);
        }
        if table.len() != n {
            return Err(Error::ShapeMismatch {
                rows: table.len(),
                cols: table.first().map_or(0, Vec::len),
                labels: n,
            });
        }
        if let Some(row) = table.iter().find(|row| row.len() != n) {
            return Err(Error::ShapeMismatch {
                rows: n,
                cols: row.len(),
                labels: n,
            });
        }
        let mut seen = HashSet::new();
        for label in &labels {
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        let space = PseudometricSpace {
            labels: labels.into(),
            dist: table.into_iter().flatten().collect(),
        };
        space.check_axioms()?;
        Ok(space)
    }

    fn check_axioms(&self) -> Result<()> {
        let n = self.len();
        for x in 0..n {
            if !self.d(x, x).is_zero() {
                return Err(Error::NonzeroDiagonal {
                    x: self.label(x).to_string(),
                    value: self.d(x, x).clone(),
                });
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.d(x, y).is_negative() {
                    return Err(Error::NegativeDistance {
                        x: self.label(x).to_string(),
                        y: self.label(y).to_string(),
                        value: self.d(x, y).clone(),
                    });
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.d(x, y) != self.d(y, x) {
                    return Err(Error::Asymmetry {
                        x: self.label(x).to_string(),
                        y: self.label(y).to_string(),
                        xy: self.d(x, y).clone(),
                        yx: self.d(y, x).clone(),
                    });
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if self.d(x, y) + self.d(y, z) < *self.d(x, z) {
                        return Err(Error::TriangleViolation {
                            x: self.label(x).to_string(),
                            y: self.label(y).to_string(),
                            z: self.label(z).to_string(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn shared_labels(&self) -> &Arc<[String]> {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownPoint(label.to_string()))
    }

    #[inline]
    pub fn d(&self, x: usize, y: usize) -> &Rational {
        &self.dist[x * self.len() + y]
    }

    pub fn table(&self) -> Vec<Vec<Rational>> {
        self.dist.chunks(self.len()).map(<[_]>::to_vec).collect()
    }

    pub fn is_metric(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| (x + 1..n).all(|y| self.d(x, y).is_positive()))
    }

    /// Upgrades to a [`MetricSpace`] when no two distinct points coincide.
    pub fn into_metric(self) -> std::result::Result<MetricSpace, PseudometricSpace> {
        if self.is_metric() {
            Ok(MetricSpace(self))
        } else {
            Err(self)
        }
    }

    /// Gromov product of `y` and `z` seen from `x`.
    pub fn gromov(&self, x: usize, y: usize, z: usize) -> Rational {
        rational::half(&(self.d(x, y) + self.d(x, z) - self.d(y, z)))
    }

    pub fn gromov_product(&self, x: &str, y: &str, z: &str) -> Result<Rational> {
        Ok(self.gromov(self.index_of(x)?, self.index_of(y)?, self.index_of(z)?))
    }

    /// The trim function: the smallest Gromov product at each point over
    /// pairs of other distinct points, with the one- and two-point cases
    /// defined separately.
    pub fn underline_d(&self) -> Vec<Rational> {
        let n = self.len();
        match n {
            1 => vec![Rational::zero()],
            2 => {
                let h = rational::half(self.d(0, 1));
                vec![h.clone(), h]
            }
            _ => (0..n)
                .map(|x| {
                    let mut best: Option<Rational> = None;
                    for y in 0..n {
                        for z in y + 1..n {
                            if y == x || z == x {
                                continue;
                            }
                            let twice = self.d(x, y) + self.d(x, z) - self.d(y, z);
                            if best.as_ref().is_none_or(|b| twice < *b) {
                                best = Some(twice);
                            }
                        }
                    }
                    rational::half(&best.expect("at least one pair"))
                })
                .collect(),
        }
    }

    pub fn is_trim(&self) -> bool {
        self.underline_d().iter().all(Zero::is_zero)
    }

    /// Every point lies between two distinct other points.
    pub fn menger_sufficient_trim(&self) -> bool {
        let n = self.len();
        (0..n).all(|x| self.betweenness_witness(x).is_some())
    }

    pub fn betweenness_witness(&self, x: usize) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|y| (y + 1..n).map(move |z| (y, z)))
            .filter(|&(y, z)| y != x && z != x)
            .find(|&(y, z)| *self.d(y, z) == self.d(x, y) + self.d(x, z))
    }

    /// Pulls each point towards all others by `delta`.
    pub fn drift(&self, delta: &DriftFunction) -> Result<PseudometricSpace> {
        let n = self.len();
        if delta.0.len() != n {
            return Err(Error::BaseMismatch {
                expected: n,
                found: delta.0.len(),
            });
        }
        let under = self.underline_d();
        for x in 0..n {
            if delta.0[x] > under[x] {
                return Err(Error::DriftTooLarge {
                    x: self.label(x).to_string(),
                    delta: delta.0[x].clone(),
                    bound: under[x].clone(),
                });
            }
        }
        let table = (0..n)
            .map(|x| {
                (0..n)
                    .map(|y| {
                        if x == y {
                            Rational::zero()
                        } else {
                            self.d(x, y) - &delta.0[x] - &delta.0[y]
                        }
                    })
                    .collect()
            })
            .collect();
        let drifted = PseudometricSpace::new(self.labels.to_vec(), table).map_err(|e| {
            Error::InternalContradiction(format!("drift below the trim function is not a pseudometric: {e}"))
        })?;
        let constant = delta.0.iter().all(|v| *v == delta.0[0]);
        if n >= 3 || (n == 2 && constant) {
            let drifted_under = drifted.underline_d();
            for x in 0..n {
                if drifted_under[x] != &under[x] - &delta.0[x] {
                    return Err(Error::InternalContradiction(format!(
                        "trim function of the drift at {} is {}, expected {}",
                        self.label(x),
                        drifted_under[x],
                        &under[x] - &delta.0[x]
                    )));
                }
            }
        }
        Ok(drifted)
    }

    /// Glues points at distance zero.
    ///
    /// Classes are ordered by their first member and named after their
    /// lexicographically least label.
    pub fn metric_quotient(&self) -> (MetricSpace, QuotientMap) {
        let n = self.len();
        let mut assignment = vec![usize::MAX; n];
        let mut reps: Vec<usize> = Vec::new();
        for x in 0..n {
            if assignment[x] != usize::MAX {
                continue;
            }
            let class = reps.len();
            reps.push(x);
            for y in x..n {
                if self.d(x, y).is_zero() {
                    assert!(
                        assignment[y] == usize::MAX,
                        "zero-distance relation is not transitive at {}",
                        self.label(y)
                    );
                    assignment[y] = class;
                }
            }
        }
        let map = QuotientMap {
            assignment,
            target_len: reps.len(),
        };
        for x in 0..n {
            for y in 0..n {
                let (cx, cy) = (map.assignment[x], map.assignment[y]);
                assert_eq!(
                    self.d(x, y),
                    self.d(reps[cx], reps[cy]),
                    "quotient distance depends on the class representative"
                );
            }
        }
        let labels: Vec<String> = (0..reps.len())
            .map(|c| {
                map.fiber(c)
                    .into_iter()
                    .map(|x| self.label(x))
                    .min()
                    .expect("classes are nonempty")
                    .to_string()
            })
            .collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| self.d(a, b).clone()).collect())
            .collect();
        let target = PseudometricSpace {
            labels: labels.into(),
            dist: Vec::<Vec<Rational>>::into_iter(table).flatten().collect(),
        };
        debug_assert!(target.is_metric());
        (MetricSpace(target), map)
    }
}

impl fmt::Debug for PseudometricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for x in 0..self.len() {
            let row: Vec<String> = (0..self.len()).map(|y| self.d(x, y).to_string()).collect();
            m.entry(&self.label(x), &row.join(" "));
        }
        m.finish()
    }
}

impl MetricSpace {
    pub fn new(labels: Vec<String>, table: Vec<Vec<Rational>>) -> Result<Self> {
        let space = PseudometricSpace::new(labels, table)?;
        space.into_metric().map_err(|p| {
            let n = p.len();
            let (x, y) = (0..n)
                .flat_map(|x| (x + 1..n).map(move |y| (x, y)))
                .find(|&(x, y)| p.d(x, y).is_zero())
                .expect("a zero distance exists");
            Error::InternalContradiction(format!(
                "{} and {} are distinct points at distance zero",
                p.label(x),
                p.label(y)
            ))
        })
    }

    /// Builds a metric space from distinct labels with `dist(x, y)` for
    /// `x < y`.
    pub fn from_fn(labels: Vec<String>, mut dist: impl FnMut(usize, usize) -> Rational) -> Result<Self> {
        let n = labels.len();
        let mut table = vec![vec![Rational::zero(); n]; n];
        for x in 0..n {
            for y in x + 1..n {
                let v = dist(x, y);
                table[x][y] = v.clone();
                table[y][x] = v;
            }
        }
        MetricSpace::new(labels, table)
    }

    pub fn as_pseudometric(&self) -> &PseudometricSpace {
        &self.0
    }

    pub fn into_pseudometric(self) -> PseudometricSpace {
        self.0
    }
}

impl Deref for MetricSpace {
    type Target = PseudometricSpace;

    fn deref(&self) -> &PseudometricSpace {
        &self.0
    }
}

impl fmt::Debug for MetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl ValidatedSpace {
    pub fn space(&self) -> &PseudometricSpace {
        match self {
            ValidatedSpace::Metric(m) => m,
            ValidatedSpace::Pseudometric(p) => p,
        }
    }

    pub fn is_metric(&self) -> bool {
        matches!(self, ValidatedSpace::Metric(_))
    }
}

impl QuotientMap {
    pub fn identity(n: usize) -> Self {
        QuotientMap {
            assignment: (0..n).collect(),
            target_len: n,
        }
    }

    pub fn from_assignment(assignment: Vec<usize>, target_len: usize) -> Self {
        debug_assert!(assignment.iter().all(|&t| t < target_len));
        QuotientMap {
            assignment,
            target_len,
        }
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.assignment[x]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    pub fn source_len(&self) -> usize {
        self.assignment.len()
    }

    pub fn target_len(&self) -> usize {
        self.target_len
    }

    pub fn is_identity(&self) -> bool {
        self.assignment.iter().enumerate().all(|(i, &t)| i == t) && self.target_len == self.assignment.len()
    }

    pub fn fiber(&self, target: usize) -> Vec<usize> {
        (0..self.assignment.len())
            .filter(|&x| self.assignment[x] == target)
            .collect()
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.target_len];
        for &t in &self.assignment {
            hit[t] = true;
        }
        hit.into_iter().all(|h| h)
    }
}
