//! Finite chains of sets and surjections with positive weights, and the leaf
//! space of the tree they describe.

use std::collections::HashMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{MetricSpace, QuotientMap};

/// On-disk form: `proj[k][i]` names the image in level `k+1` of the `i`-th
/// point of level `k`; `delta[k][i]` is its weight.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ChainJson {
    pub levels: Vec<Vec<String>>,
    pub proj: Vec<Vec<String>>,
    #[serde(with = "rational::serde_str::matrix")]
    pub delta: Vec<Vec<Rational>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChainSpec {
    levels: Vec<Vec<String>>,
    proj: Vec<QuotientMap>,
    delta: Vec<Vec<Rational>>,
}

impl ChainSpec {
    /// `proj[k][i]` is the index in level `k+1` of the image of point `i`.
    /// Weights for the top level may be omitted; they never enter a distance.
    pub fn new(levels: Vec<Vec<String>>, proj: Vec<Vec<usize>>, delta: Vec<Vec<Rational>>) -> Result<Self> {
        let bad = |m: String| Err(Error::InvalidChain(m));
        if levels.is_empty() || levels.iter().any(|l| l.is_empty()) {
            return bad("every level needs at least one point".into());
        }
        for level in &levels {
            let mut seen = std::collections::HashSet::new();
            for label in level {
                if !seen.insert(label) {
                    return Err(Error::DuplicateLabel(label.clone()));
                }
            }
        }
        let m = levels.len() - 1;
        if proj.len() != m {
            return bad(format!("{} levels need {} maps, found {}", levels.len(), m, proj.len()));
        }
        if delta.len() != m && delta.len() != m + 1 {
            return bad(format!("{} levels need {} weight rows, found {}", levels.len(), m, delta.len()));
        }
        let mut maps = Vec::with_capacity(m);
        for (k, p) in proj.into_iter().enumerate() {
            if p.len() != levels[k].len() || p.iter().any(|&t| t >= levels[k + 1].len()) {
                return bad(format!("map out of level {k} is malformed"));
            }
            let map = QuotientMap::from_assignment(p, levels[k + 1].len());
            if !map.is_surjective() {
                return bad(format!("map out of level {k} is not surjective"));
            }
            maps.push(map);
        }
        for (k, row) in delta.iter().enumerate() {
            if row.len() != levels[k].len() {
                return bad(format!("weight row {k} has the wrong length"));
            }
            if let Some(i) = row.iter().position(|w| !rational::is_positive(w)) {
                return Err(Error::NonpositiveLength {
                    node: levels[k][i].clone(),
                    length: row[i].clone(),
                });
            }
        }
        Ok(ChainSpec {
            levels,
            proj: maps,
            delta,
        })
    }

    pub fn from_json(json: ChainJson) -> Result<Self> {
        let mut proj = Vec::with_capacity(json.proj.len());
        for (k, row) in json.proj.iter().enumerate() {
            let target = json
                .levels
                .get(k + 1)
                .ok_or_else(|| Error::InvalidChain(format!("map out of top level {k}")))?;
            let index: HashMap<&str, usize> = target.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();
            proj.push(
                row.iter()
                    .map(|l| index.get(l.as_str()).copied().ok_or_else(|| Error::UnknownPoint(l.clone())))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        ChainSpec::new(json.levels, proj, json.delta)
    }

    pub fn parse_json(text: &str) -> Result<Self> {
        let json: ChainJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            position: e.column(),
            message: e.to_string(),
        })?;
        ChainSpec::from_json(json)
    }

    pub fn to_json(&self) -> ChainJson {
        ChainJson {
            levels: self.levels.clone(),
            proj: (0..self.proj.len())
                .map(|k| {
                    self.proj[k]
                        .assignment()
                        .iter()
                        .map(|&t| self.levels[k + 1][t].clone())
                        .collect()
                })
                .collect(),
            delta: self.delta.clone(),
        }
    }

    /// Index of the top level.
    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_labels(&self, k: usize) -> &[String] {
        &self.levels[k]
    }

    pub fn projection(&self, k: usize) -> &QuotientMap {
        &self.proj[k]
    }

    pub fn delta(&self, k: usize) -> &[Rational] {
        &self.delta[k]
    }

    /// Whether every fiber of the map out of level `k` has at least three
    /// points.
    pub fn fibers_at_least_three(&self, k: usize) -> bool {
        let map = &self.proj[k];
        (0..map.target_len()).all(|t| map.fiber(t).len() >= 3)
    }

    /// Number of leading levels `k` such that the maps out of levels
    /// `0..=k` all have fibers of size at least three.
    pub fn hypothesis_prefix(&self) -> usize {
        (0..self.depth())
            .take_while(|&k| self.fibers_at_least_three(k))
            .count()
    }

    /// Metric on level `k`: points whose images first agree at level `m`
    /// are at distance equal to the weights summed along both trajectories
    /// below `m`.
    pub fn level_metric(&self, k: usize) -> Result<MetricSpace> {
        let labels = self.levels[k].clone();
        let n = labels.len();
        let mut table = vec![vec![Rational::zero(); n]; n];
        for x in 0..n {
            for y in x + 1..n {
                let (mut a, mut b) = (x, y);
                let mut total = Rational::zero();
                let mut level = k;
                while a != b {
                    if level == self.depth() {
                        return Err(Error::NoMeeting {
                            x: labels[x].clone(),
                            y: labels[y].clone(),
                        });
                    }
                    total += &self.delta[level][a] + &self.delta[level][b];
                    a = self.proj[level].apply(a);
                    b = self.proj[level].apply(b);
                    level += 1;
                }
                table[x][y] = total.clone();
                table[y][x] = total;
            }
        }
        MetricSpace::new(labels, table)
    }
}

pub fn chain_metric(spec: &ChainSpec) -> Result<MetricSpace> {
    spec.level_metric(0)
}

/// Words of length `depth` over `{0, ..., alphabet-1}` ending in `0`, mapped
/// down by dropping the first letter, with unit weights.
pub fn shift_chain(alphabet: usize, depth: usize) -> ChainSpec {
    assert!(alphabet >= 1 && alphabet <= 10 && depth >= 1);
    let words = |len: usize| -> Vec<String> {
        let free = len - 1;
        (0..alphabet.pow(free as u32))
            .map(|mut code| {
                let mut w = String::with_capacity(len);
                for _ in 0..free {
                    w.insert(0, char::from_digit((code % alphabet) as u32, 10).unwrap());
                    code /= alphabet;
                }
                w.push('0');
                w
            })
            .collect()
    };
    let levels: Vec<Vec<String>> = (0..depth).map(|k| words(depth - k)).collect();
    let proj = (0..depth - 1)
        .map(|k| {
            let below: HashMap<&str, usize> = levels[k + 1].iter().enumerate().map(|(i, w)| (w.as_str(), i)).collect();
            levels[k].iter().map(|w| below[&w[1..]]).collect()
        })
        .collect();
    let delta = (0..depth - 1).map(|k| vec![rational::int(1); levels[k].len()]).collect();
    ChainSpec::new(levels, proj, delta).expect("shift chains are well formed")
}

/// A chain of the given depth ending in a single point, where every fiber
/// has between `min_fiber` and `max_fiber` points and weights are drawn
/// from `{1/2, 1, ..., 3}`.
pub fn random_chain<R: rand::Rng + ?Sized>(rng: &mut R, depth: usize, min_fiber: usize, max_fiber: usize) -> ChainSpec {
    assert!(depth >= 1 && min_fiber >= 1 && min_fiber <= max_fiber);
    let mut sizes = vec![1usize];
    let mut proj_rev = Vec::new();
    for _ in 0..depth {
        let above = *sizes.last().expect("nonempty");
        let mut map = Vec::new();
        for t in 0..above {
            for _ in 0..rng.random_range(min_fiber..=max_fiber) {
                map.push(t);
            }
        }
        sizes.push(map.len());
        proj_rev.push(map);
    }
    sizes.reverse();
    proj_rev.reverse();
    let levels = sizes
        .iter()
        .enumerate()
        .map(|(k, &n)| (0..n).map(|i| format!("{k}.{i}")).collect())
        .collect();
    let delta = sizes[..depth]
        .iter()
        .map(|&n| (0..n).map(|_| rational::ratio(rng.random_range(1..=6), 2)).collect())
        .collect();
    ChainSpec::new(levels, proj_rev, delta).expect("generated chains are well formed")
}
