//! Random finite metric spaces with small exact rational entries.
//!
//! Four families are mixed: point sets on random weighted trees, point sets
//! in a low-dimensional max-norm space, and both of those with random
//! nonnegative perturbations pushed back into a metric by shortest-path
//! closure.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::rational::{self, Rational};
use crate::space::{MetricSpace, PseudometricSpace};
use crate::treegen::random_tree;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    TreePoints,
    TreePerturbed,
    MaxNorm,
    MaxNormPerturbed,
}

impl Family {
    pub const ALL: [Family; 4] = [
        Family::TreePoints,
        Family::TreePerturbed,
        Family::MaxNorm,
        Family::MaxNormPerturbed,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::TreePoints => "tree",
            Family::TreePerturbed => "tree+noise",
            Family::MaxNorm => "maxnorm",
            Family::MaxNormPerturbed => "maxnorm+noise",
        }
    }
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, max: i64, den: i64) -> Rational {
    rational::ratio(rng.random_range(0..=max * den), den)
}

fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// `size` distinct nodes of a random tree, with the path metric.
pub fn tree_points<R: Rng + ?Sized>(rng: &mut R, size: usize) -> MetricSpace {
    loop {
        let internal = rng.random_range(1..=size.max(2));
        let tree = random_tree(rng, internal, size + 2);
        if tree.node_count() < size {
            continue;
        }
        let nodes = sample(rng, tree.node_count(), size).into_vec();
        let space = tree.point_pseudospace(&nodes).expect("tree path metrics are pseudometrics");
        let table = space.table();
        return MetricSpace::new(labels(size), table).expect("distinct tree nodes are at positive distance");
    }
}

/// `size` points with coordinates in `{0, 1/2, ..., 4}^dim` under the max
/// norm; coincident points are redrawn.
pub fn max_norm_points<R: Rng + ?Sized>(rng: &mut R, size: usize) -> MetricSpace {
    let dim = rng.random_range(1..=3);
    let mut points: Vec<Vec<Rational>> = Vec::with_capacity(size);
    while points.len() < size {
        let p: Vec<Rational> = (0..dim).map(|_| random_rational(rng, 4, 2)).collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    MetricSpace::from_fn(labels(size), |x, y| {
        points[x]
            .iter()
            .zip(&points[y])
            .map(|(a, b)| num_traits::Signed::abs(&(a - b)))
            .max()
            .expect("dim >= 1")
    })
    .expect("max-norm distances between distinct points form a metric")
}

/// Adds independent noise from `{0, 1/4, ..., 1}` to every distance, then
/// replaces each distance by the shortest chain of perturbed distances.
pub fn perturb<R: Rng + ?Sized>(rng: &mut R, space: &PseudometricSpace) -> MetricSpace {
    let n = space.len();
    let mut t = space.table();
    for x in 0..n {
        for y in x + 1..n {
            let v = &t[x][y] + random_rational(rng, 1, 4);
            t[x][y] = v.clone();
            t[y][x] = v;
        }
    }
    for k in 0..n {
        for x in 0..n {
            for y in 0..n {
                let through = &t[x][k] + &t[k][y];
                if through < t[x][y] {
                    t[x][y] = through;
                }
            }
        }
    }
    MetricSpace::new(space.labels().to_vec(), t).expect("shortest-path closure of positive weights is a metric")
}

pub fn random_space<R: Rng + ?Sized>(rng: &mut R, family: Family, size: usize) -> MetricSpace {
    match family {
        Family::TreePoints => tree_points(rng, size),
        Family::TreePerturbed => {
            let base = tree_points(rng, size);
            perturb(rng, &base)
        }
        Family::MaxNorm => max_norm_points(rng, size),
        Family::MaxNormPerturbed => {
            let base = max_norm_points(rng, size);
            perturb(rng, &base)
        }
    }
}

/// A deterministic batch of `count` spaces of sizes 2 to 8, cycling through
/// the families.
pub fn suite(count: usize, seed: u64) -> Vec<(String, MetricSpace)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|i| {
            let family = Family::ALL[i % Family::ALL.len()];
            let size = rng.random_range(2..=8);
            (format!("{}#{i}", family.name()), random_space(&mut rng, family, size))
        })
        .collect()
}
