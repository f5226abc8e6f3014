//! Trimming: the drift of a metric space by its own trim function, followed
//! by the metric quotient, iterated until the space is trim.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{DriftFunction, MetricSpace, QuotientMap};

/// One term of a trimming sequence.
#[derive(Debug, Clone)]
pub struct TrimLevel {
    space: MetricSpace,
    underline: Vec<Rational>,
    projection: Option<QuotientMap>,
}

impl TrimLevel {
    pub fn space(&self) -> &MetricSpace {
        &self.space
    }

    /// The trim function of this level.
    pub fn underline(&self) -> &[Rational] {
        &self.underline
    }

    /// Trimming projection onto the next level; `None` at the stable top.
    pub fn projection(&self) -> Option<&QuotientMap> {
        self.projection.as_ref()
    }
}

/// The stabilised tower `X_0 -> X_1 -> ... -> X_N`.
///
/// Level `N` is trim, so trimming it again changes nothing; it doubles as the
/// limit space `X_inf`.
#[derive(Debug, Clone)]
pub struct TrimSequence {
    levels: Vec<TrimLevel>,
    /// `trajectory[k][x]` is the index of `x_(k)` in level `k`.
    trajectory: Vec<Vec<usize>>,
}

/// Trims a metric space once, returning the trimmed space and the projection.
pub fn trim_step(space: &MetricSpace) -> (MetricSpace, QuotientMap) {
    let under = space.underline_d();
    let reduced = space
        .drift(&DriftFunction(under))
        .expect("drifting by the trim function is always admissible");
    reduced.metric_quotient()
}

pub fn trimming_sequence(space: &MetricSpace) -> TrimSequence {
    TrimSequence::new(space.clone())
}

impl TrimSequence {
    pub fn new(base: MetricSpace) -> Self {
        let bound = base.len();
        let mut levels = Vec::new();
        let mut current = base;
        loop {
            let underline = current.underline_d();
            if underline.iter().all(Zero::is_zero) {
                levels.push(TrimLevel {
                    space: current,
                    underline,
                    projection: None,
                });
                break;
            }
            let (next, projection) = trim_step(&current);
            levels.push(TrimLevel {
                space: current,
                underline,
                projection: Some(projection),
            });
            assert!(
                levels.len() <= bound,
                "trimming did not stabilise within {bound} steps"
            );
            current = next;
        }

        let n0 = levels[0].space.len();
        let mut trajectory = vec![(0..n0).collect::<Vec<_>>()];
        for level in &levels[..levels.len() - 1] {
            let proj = level.projection.as_ref().expect("non-top levels project");
            let prev = trajectory.last().expect("nonempty");
            trajectory.push(prev.iter().map(|&v| proj.apply(v)).collect());
        }
        TrimSequence { levels, trajectory }
    }

    /// Stabilisation index `N`.
    pub fn stable_index(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[TrimLevel] {
        &self.levels
    }

    pub fn level(&self, k: usize) -> &TrimLevel {
        &self.levels[k.min(self.stable_index())]
    }

    pub fn base(&self) -> &MetricSpace {
        &self.levels[0].space
    }

    /// The limit space `X_inf`, realised as level `N`.
    pub fn x_infinity(&self) -> &MetricSpace {
        &self.levels[self.stable_index()].space
    }

    /// Index of `x_(k)` in level `k`; levels above `N` repeat level `N`.
    pub fn position(&self, k: usize, x: usize) -> usize {
        self.trajectory[k.min(self.stable_index())][x]
    }

    /// Index of `x_(inf)` in [`Self::x_infinity`].
    pub fn to_infinity(&self, x: usize) -> usize {
        self.position(self.stable_index(), x)
    }

    /// Image at level `to` of the point `v` of level `from`.
    pub fn descend(&self, from: usize, v: usize, to: usize) -> usize {
        let mut v = v;
        for k in from..to.min(self.stable_index()) {
            v = self.levels[k]
                .projection
                .as_ref()
                .expect("non-top levels project")
                .apply(v);
        }
        v
    }

    pub fn d_infinity(&self, u: usize, v: usize) -> &Rational {
        self.x_infinity().d(u, v)
    }

    /// First level at which the trajectories of `x` and `y` coincide.
    pub fn meeting_index(&self, x: usize, y: usize) -> Result<usize> {
        (0..=self.stable_index())
            .find(|&k| self.trajectory[k][x] == self.trajectory[k][y])
            .ok_or_else(|| Error::NeverMeets {
                x: self.base().label(x).to_string(),
                y: self.base().label(y).to_string(),
            })
    }

    /// `x` and `y` end in the same point of `X_inf`.
    pub fn congruent(&self, x: usize, y: usize) -> bool {
        self.to_infinity(x) == self.to_infinity(y)
    }

    /// Partial sum of the trim functions along the trajectory of `x` over
    /// levels `0..n`.
    pub fn sigma_partial(&self, x: usize, n: usize) -> Rational {
        (0..n.min(self.stable_index()))
            .map(|k| &self.levels[k].underline[self.trajectory[k][x]])
            .sum()
    }

    /// Sum of the trim functions along the whole trajectory of `x`; every term
    /// from level `N` on vanishes.
    pub fn sigma(&self, x: usize) -> Rational {
        self.sigma_partial(x, self.stable_index())
    }

    pub fn sigma_table(&self) -> Vec<Rational> {
        (0..self.base().len()).map(|x| self.sigma(x)).collect()
    }

    pub fn sigma_partial_table(&self, n: usize) -> Vec<Rational> {
        (0..self.base().len()).map(|x| self.sigma_partial(x, n)).collect()
    }

    /// Sum of the trim functions from level `k` down, starting at vertex `v`
    /// of level `k`.
    pub fn sigma_from(&self, k: usize, v: usize) -> Rational {
        let mut total = Rational::zero();
        let mut v = v;
        for level in &self.levels[k.min(self.stable_index())..] {
            total += &level.underline[v];
            if let Some(p) = &level.projection {
                v = p.apply(v);
            }
        }
        total
    }

    pub fn to_json(&self) -> TrimSequenceJson {
        let levels = self
            .levels
            .iter()
            .enumerate()
            .map(|(k, level)| LevelJson {
                labels: level.space.labels().to_vec(),
                dist: level.space.table(),
                underline: level.underline.clone(),
                proj: level.projection.as_ref().map(|p| {
                    let next = &self.levels[k + 1].space;
                    p.assignment().iter().map(|&t| next.label(t).to_string()).collect()
                }),
            })
            .collect();
        let base = self.base();
        let inf = self.x_infinity();
        TrimSequenceJson {
            n: self.stable_index(),
            levels,
            x_infinity: inf.labels().to_vec(),
            to_infinity: (0..base.len())
                .map(|x| inf.label(self.to_infinity(x)).to_string())
                .collect(),
            sigma: self.sigma_table(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelJson {
    pub labels: Vec<String>,
    #[serde(with = "rational::serde_str::matrix")]
    pub dist: Vec<Vec<Rational>>,
    #[serde(with = "rational::serde_str::vec")]
    pub underline: Vec<Rational>,
    /// Image of each point in the next level, by label.
    pub proj: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrimSequenceJson {
    #[serde(rename = "N")]
    pub n: usize,
    pub levels: Vec<LevelJson>,
    /// Labels of the limit space (level `N`).
    pub x_infinity: Vec<String>,
    /// Image in the limit space of each level-0 point, by label.
    pub to_infinity: Vec<String>,
    #[serde(with = "rational::serde_str::vec")]
    pub sigma: Vec<Rational>,
}
