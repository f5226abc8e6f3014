//! Tight spans of finite (pseudo)metric spaces and their relation to the
//! trimming cylinder.
//!
//! A function `f >= 0` on a finite space belongs to the tight span when
//! `f(x) = max_y (d(x,y) - f(y))` for every `x`. With two or more points the
//! maximum may be taken over `y != x`, which is what [`is_member`] checks;
//! the supremum of the general definition is attained because the space is
//! finite.

use std::sync::Arc;

use num_traits::{Signed, Zero};
use serde_json::{Map, Value};

use crate::cylinder::{Cylinder, CylinderPoint, VertexId};
use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::PseudometricSpace;
use crate::trimming::TrimSequence;

/// A nonnegative function on the points of a space.
#[derive(Debug, Clone, PartialEq)]
pub struct TightSpanFunction {
    base: Arc<[String]>,
    values: Vec<Rational>,
}

impl TightSpanFunction {
    pub fn new(space: &PseudometricSpace, values: Vec<Rational>) -> Result<Self> {
        if values.len() != space.len() {
            return Err(Error::BaseMismatch {
                expected: space.len(),
                found: values.len(),
            });
        }
        Ok(TightSpanFunction {
            base: space.shared_labels().clone(),
            values,
        })
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, x: usize) -> &Rational {
        &self.values[x]
    }

    pub fn labels(&self) -> &[String] {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise `self >= other`.
    pub fn dominates(&self, other: &[Rational]) -> bool {
        self.values.iter().zip(other).all(|(a, b)| a >= b)
    }

    pub fn to_json(&self) -> Value {
        let map: Map<String, Value> = self
            .base
            .iter()
            .zip(&self.values)
            .map(|(l, v)| (l.clone(), Value::String(rational::format(v))))
            .collect();
        Value::Object(map)
    }

    /// Reads a `label -> value` map; every label of the space must appear.
    pub fn from_json(space: &PseudometricSpace, value: &Value) -> Result<Self> {
        let map = value.as_object().ok_or_else(|| Error::Parse {
            position: 0,
            message: "function must be a JSON object mapping labels to values".into(),
        })?;
        let mut values = vec![None; space.len()];
        for (label, raw) in map {
            let x = space.index_of(label)?;
            let v = match raw {
                Value::String(s) => rational::parse(s)?,
                Value::Number(n) => rational::parse(&n.to_string())?,
                _ => {
                    return Err(Error::Parse {
                        position: 0,
                        message: format!("value for {label:?} is not a number"),
                    })
                }
            };
            values[x] = Some(v);
        }
        let values = values
            .into_iter()
            .enumerate()
            .map(|(x, v)| {
                v.ok_or_else(|| Error::Parse {
                    position: 0,
                    message: format!("missing value for {:?}", space.label(x)),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        TightSpanFunction::new(space, values)
    }
}

/// Evidence for a membership verdict.
#[derive(Debug, Clone, PartialEq)]
pub enum Certificate {
    /// Member: `witnesses[x]` realises the maximum at `x`.
    Tight { witnesses: Vec<usize> },
    Negative { x: usize },
    /// `f(x) + f(y) < d(x,y)`.
    StarViolated { x: usize, y: usize },
    /// `f(x)` exceeds the maximum of `d(x,y) - f(y)` by `slack`.
    Slack { x: usize, slack: Rational },
    /// A singleton's only member is the zero function.
    SingletonNonzero,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Membership {
    pub member: bool,
    pub certificate: Certificate,
}

impl Membership {
    pub fn describe(&self, space: &PseudometricSpace) -> String {
        let l = |i: usize| space.label(i).to_string();
        match &self.certificate {
            Certificate::Tight { witnesses } => {
                let pairs: Vec<String> = witnesses
                    .iter()
                    .enumerate()
                    .map(|(x, &y)| format!("{}->{}", l(x), l(y)))
                    .collect();
                format!("member (tight at {})", pairs.join(", "))
            }
            Certificate::Negative { x } => format!("not a member: negative value at {}", l(*x)),
            Certificate::StarViolated { x, y } => {
                format!("not a member: f({}) + f({}) < d({}, {})", l(*x), l(*y), l(*x), l(*y))
            }
            Certificate::Slack { x, slack } => {
                format!("not a member: not minimal at {} (slack {})", l(*x), slack)
            }
            Certificate::SingletonNonzero => "not a member: a singleton admits only 0".into(),
        }
    }
}

pub fn is_member(space: &PseudometricSpace, f: &[Rational]) -> Membership {
    let n = space.len();
    let reject = |certificate| Membership {
        member: false,
        certificate,
    };
    assert_eq!(f.len(), n, "function and space sizes differ");
    if let Some(x) = (0..n).find(|&x| f[x].is_negative()) {
        return reject(Certificate::Negative { x });
    }
    if n == 1 {
        return if f[0].is_zero() {
            Membership {
                member: true,
                certificate: Certificate::Tight { witnesses: vec![0] },
            }
        } else {
            reject(Certificate::SingletonNonzero)
        };
    }
    for x in 0..n {
        for y in x + 1..n {
            if &f[x] + &f[y] < *space.d(x, y) {
                return reject(Certificate::StarViolated { x, y });
            }
        }
    }
    let mut witnesses = Vec::with_capacity(n);
    for x in 0..n {
        let (best, arg) = (0..n)
            .filter(|&y| y != x)
            .map(|y| (space.d(x, y) - &f[y], y))
            .max_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)))
            .expect("at least two points");
        if best != f[x] {
            return reject(Certificate::Slack {
                x,
                slack: &f[x] - best,
            });
        }
        witnesses.push(arg);
    }
    Membership {
        member: true,
        certificate: Certificate::Tight { witnesses },
    }
}

fn require_member(space: &PseudometricSpace, f: &[Rational]) -> Result<()> {
    let m = is_member(space, f);
    if m.member {
        Ok(())
    } else {
        Err(Error::NotMember(m.describe(space)))
    }
}

/// Sup-distance between two functions on the same space.
pub fn d_t(f: &TightSpanFunction, g: &TightSpanFunction) -> Result<Rational> {
    if f.base != g.base {
        return Err(Error::BaseMismatch {
            expected: f.len(),
            found: g.len(),
        });
    }
    Ok(sup_distance(&f.values, &g.values))
}

pub(crate) fn sup_distance(f: &[Rational], g: &[Rational]) -> Rational {
    f.iter()
        .zip(g)
        .map(|(a, b)| (a - b).abs())
        .max()
        .unwrap_or_else(Rational::zero)
}

/// The distance function `d(x, .)`.
pub fn kuratowski(space: &PseudometricSpace, x: usize) -> TightSpanFunction {
    let values = (0..space.len()).map(|y| space.d(x, y).clone()).collect();
    TightSpanFunction::new(space, values).expect("sizes agree")
}

/// Pushes a function satisfying `f(x) + f(y) >= d(x,y)` down into the tight
/// span with one pass over the points in label order. Each update keeps that
/// inequality and makes the updated point tight; later updates only lower
/// other values, which preserves both. The result is certified before it is
/// returned.
pub fn project(space: &PseudometricSpace, f0: &[Rational]) -> Result<TightSpanFunction> {
    let n = space.len();
    if f0.len() != n {
        return Err(Error::BaseMismatch {
            expected: n,
            found: f0.len(),
        });
    }
    for x in 0..n {
        for y in x..n {
            if &f0[x] + &f0[y] < *space.d(x, y) {
                return Err(Error::StarViolation {
                    x: space.label(x).to_string(),
                    y: space.label(y).to_string(),
                });
            }
        }
    }
    let mut f = f0.to_vec();
    for x in 0..n {
        let best = (0..n)
            .filter(|&y| y != x)
            .map(|y| space.d(x, y) - &f[y])
            .max()
            .unwrap_or_else(Rational::zero);
        f[x] = best.max(Rational::zero());
    }
    let m = is_member(space, &f);
    if !m.member {
        return Err(Error::InternalContradiction(format!(
            "projection produced a non-member: {}",
            m.describe(space)
        )));
    }
    TightSpanFunction::new(space, f)
}

/// `x -> rho(x, a)` on the base space.
pub fn f_point(cyl: &Cylinder, a: &CylinderPoint) -> TightSpanFunction {
    let base = cyl.sequence().base();
    let values = (0..base.len())
        .map(|x| cyl.rho(&CylinderPoint::vertex(0, x), a))
        .collect();
    TightSpanFunction::new(base, values).expect("sizes agree")
}

/// Embeds `T(X_n)` into `T(X)` via `x -> g(x_(n)) + sigma^n(x)`.
pub fn lift(seq: &TrimSequence, n: usize, g: &[Rational]) -> Result<TightSpanFunction> {
    let level = seq.level(n).space();
    if g.len() != level.len() {
        return Err(Error::BaseMismatch {
            expected: level.len(),
            found: g.len(),
        });
    }
    require_member(level, g)?;
    let base = seq.base();
    let values = (0..base.len())
        .map(|x| &g[seq.position(n, x)] + seq.sigma_partial(x, n))
        .collect();
    TightSpanFunction::new(base, values)
}

/// Inverse of [`lift`] on its image: `f - sigma^n` pushed to level `n`.
///
/// Fails when `f` does not dominate `sigma^n` or is not constant on the
/// fibres of the projection to level `n`.
pub fn descend(seq: &TrimSequence, n: usize, f: &TightSpanFunction) -> Result<TightSpanFunction> {
    let base = seq.base();
    let level = seq.level(n).space();
    let mut values: Vec<Option<Rational>> = vec![None; level.len()];
    for x in 0..base.len() {
        let v = f.get(x) - seq.sigma_partial(x, n);
        if v.is_negative() {
            return Err(Error::NotMember(format!(
                "value at {} is below the level-{} partial sum",
                base.label(x),
                n
            )));
        }
        let slot = &mut values[seq.position(n, x)];
        match slot {
            Some(prev) if *prev != v => {
                return Err(Error::InternalContradiction(format!(
                    "function is not constant on the fibre of {} at level {}",
                    level.label(seq.position(n, x)),
                    n
                )))
            }
            _ => *slot = Some(v),
        }
    }
    let values = values
        .into_iter()
        .map(|v| v.expect("projections are surjective"))
        .collect();
    TightSpanFunction::new(level, values)
}

/// Largest `n <= N` with `f >= sigma^n`, and whether `f` lies in tau.
pub fn filtration_level(seq: &TrimSequence, f: &TightSpanFunction) -> Result<(usize, bool)> {
    let base = seq.base();
    require_member(base, f.values())?;
    let top = seq.stable_index();
    let level = (0..=top)
        .rev()
        .find(|&n| f.dominates(&seq.sigma_partial_table(n)))
        .expect("sigma^0 = 0");
    Ok((level, level == top))
}

/// Embeds `T(X_inf)` into `T(X)` via `x -> f(x_(inf)) + sigma(x)`.
pub fn tau_lift(seq: &TrimSequence, f: &[Rational]) -> Result<TightSpanFunction> {
    lift(seq, seq.stable_index(), f)
}

/// Where a point of the tight span sits in the decomposition into tau and
/// the quotient cylinder.
#[derive(Debug, Clone, PartialEq)]
pub enum Classification {
    /// `f = f_a` for a cylinder point with `sigma(a) > 0`; not in tau.
    Branch { point: CylinderPoint },
    /// The root of a special component: in both tau and the quotient
    /// cylinder. `witness` is the function on `X_inf` lifting to it.
    Root {
        component: usize,
        point: CylinderPoint,
        witness: TightSpanFunction,
    },
    /// In tau but not in the quotient cylinder.
    Tau { witness: TightSpanFunction },
}

impl Classification {
    pub fn kind(&self) -> &'static str {
        match self {
            Classification::Branch { .. } => "branch",
            Classification::Root { .. } => "root",
            Classification::Tau { .. } => "tau",
        }
    }
}

/// Classifies a member of `T(X)` as a branch point of the quotient cylinder,
/// a root, or a point of tau, and verifies the witness exactly.
pub fn decompose(cyl: &Cylinder, f: &TightSpanFunction) -> Result<Classification> {
    let seq = cyl.sequence();
    let (n, in_tau) = filtration_level(seq, f)?;
    let contradiction = |what: String| Error::InternalContradiction(what);
    if in_tau {
        let top = seq.stable_index();
        let witness = descend(seq, top, f).map_err(|e| contradiction(format!("tau member does not descend: {e}")))?;
        let inf = seq.x_infinity();
        let m = is_member(inf, witness.values());
        if !m.member {
            return Err(contradiction(format!(
                "descended function is not in the tight span of the limit space: {}",
                m.describe(inf)
            )));
        }
        if let Some(u) = (0..inf.len()).find(|&u| witness.get(u).is_zero()) {
            let point = CylinderPoint::vertex(top, u);
            if f_point(cyl, &point) != *f {
                return Err(contradiction(format!(
                    "function vanishing at {} in the limit space is not the root of its component",
                    inf.label(u)
                )));
            }
            return Ok(Classification::Root {
                component: u,
                point,
                witness,
            });
        }
        return Ok(Classification::Tau { witness });
    }

    let g = descend(seq, n, f).map_err(|e| contradiction(format!("filtration member does not descend: {e}")))?;
    let level = seq.level(n);
    let y = (0..level.space().len())
        .find(|&y| *g.get(y) < level.underline()[y])
        .ok_or_else(|| contradiction(format!("no short edge at level {n} for a function outside the next level")))?;
    let point = cyl.point_on_edge(VertexId { level: n, index: y }, g.get(y).clone())?;
    if !cyl.sigma_point(&point).is_positive() {
        return Err(contradiction("branch point has zero height".into()));
    }
    if f_point(cyl, &point) != *f {
        return Err(contradiction(format!(
            "cylinder point {} does not realise the function",
            cyl.point_name(&point)
        )));
    }
    Ok(Classification::Branch { point })
}

/// Pulls a member of the tight span of the metric quotient back to the
/// pseudometric space.
pub fn pseudo_tight_span(space: &PseudometricSpace, h: &[Rational]) -> Result<TightSpanFunction> {
    let (quotient, map) = space.metric_quotient();
    if h.len() != quotient.len() {
        return Err(Error::BaseMismatch {
            expected: quotient.len(),
            found: h.len(),
        });
    }
    require_member(&quotient, h)?;
    let values = (0..space.len()).map(|x| h[map.apply(x)].clone()).collect();
    TightSpanFunction::new(space, values)
}
