//! Metric trees, their leaf spaces, and generators whose trimming behaviour
//! is known in advance.

mod chain;
mod newick;

use std::collections::{HashSet, VecDeque};

use num_traits::{Signed, Zero};
use rand::Rng;

pub use chain::{chain_metric, random_chain, shift_chain, ChainJson, ChainSpec};
pub use newick::parse_newick;

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::space::{MetricSpace, PseudometricSpace};

/// A finite tree with rational edge lengths.
#[derive(Debug, Clone)]
pub struct MetricTree {
    names: Vec<String>,
    edges: Vec<(usize, usize, Rational)>,
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl MetricTree {
    /// Builds a tree, rejecting cycles, disconnected graphs, negative
    /// lengths, and zero lengths unless `allow_zero` is set.
    pub fn new(names: Vec<String>, edges: Vec<(usize, usize, Rational)>, allow_zero: bool) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::NotATree("no nodes".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (e, (a, b, len)) in edges.iter().enumerate() {
            if *a >= n || *b >= n {
                return Err(Error::NotATree(format!("edge {e} references a missing node")));
            }
            if a == b {
                return Err(Error::NotATree(format!("loop at {}", names[*a])));
            }
            if len.is_negative() || (len.is_zero() && !allow_zero) {
                return Err(Error::NonpositiveLength {
                    node: names[*b].clone(),
                    length: len.clone(),
                });
            }
            adjacency[*a].push((*b, e));
            adjacency[*b].push((*a, e));
        }
        if edges.len() + 1 != n {
            return Err(Error::NotATree(format!("{} nodes but {} edges", n, edges.len())));
        }
        let reached = bfs_order(&adjacency, 0).len();
        if reached != n {
            return Err(Error::NotATree(format!("only {reached} of {n} nodes are connected")));
        }
        Ok(MetricTree {
            names,
            edges,
            adjacency,
        })
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edges(&self) -> &[(usize, usize, Rational)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Nodes adjacent to exactly one edge.
    pub fn leaves(&self) -> Vec<usize> {
        (0..self.node_count()).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Path distances from `v` to every node.
    pub fn distances_from(&self, v: usize) -> Vec<Rational> {
        let mut dist = vec![Rational::zero(); self.node_count()];
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adjacency[u] {
                if !seen[w] {
                    seen[w] = true;
                    dist[w] = &dist[u] + &self.edges[e].2;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Path pseudometric restricted to the given nodes.
    pub fn point_pseudospace(&self, nodes: &[usize]) -> Result<PseudometricSpace> {
        let labels = nodes.iter().map(|&v| self.names[v].clone()).collect();
        let table = nodes
            .iter()
            .map(|&v| {
                let d = self.distances_from(v);
                nodes.iter().map(|&w| d[w].clone()).collect()
            })
            .collect();
        PseudometricSpace::new(labels, table)
    }

    /// The leaves with the restricted path pseudometric.
    pub fn leaf_pseudospace(&self) -> Result<PseudometricSpace> {
        let leaves = self.leaves();
        if leaves.is_empty() {
            return Err(Error::NotATree("tree has no leaves".into()));
        }
        self.point_pseudospace(&leaves)
    }

    /// The leaf space; zero-length edges are contracted through the metric
    /// quotient.
    pub fn leaf_space(&self) -> Result<MetricSpace> {
        let pseudo = self.leaf_pseudospace()?;
        Ok(match pseudo.into_metric() {
            Ok(m) => m,
            Err(p) => p.metric_quotient().0,
        })
    }
}

fn bfs_order(adjacency: &[Vec<(usize, usize)>], start: usize) -> Vec<usize> {
    let mut seen = vec![false; adjacency.len()];
    let mut order = vec![start];
    seen[start] = true;
    let mut i = 0;
    while i < order.len() {
        for &(w, _) in &adjacency[order[i]] {
            if !seen[w] {
                seen[w] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    order
}

/// Lower bound on the trim function at a leaf from the length of its edge,
/// exact when the other end carries at least two further leaves.
#[derive(Debug, Clone, PartialEq)]
pub struct LeafBound {
    pub leaf: String,
    pub bound: Rational,
    pub exact: bool,
}

pub fn underline_d_tree_oracle(tree: &MetricTree) -> Result<Vec<LeafBound>> {
    let leaves = tree.leaves();
    if leaves.len() < 3 {
        return Err(Error::TooFewLeaves(leaves.len()));
    }
    let leaf_set: HashSet<usize> = leaves.iter().copied().collect();
    Ok(leaves
        .iter()
        .map(|&x| {
            let (v, e) = tree.adjacency[x][0];
            let other_leaves = tree.adjacency[v]
                .iter()
                .filter(|&&(w, _)| w != x && leaf_set.contains(&w))
                .count();
            LeafBound {
                leaf: tree.names[x].clone(),
                bound: tree.edges[e].2.clone(),
                exact: other_leaves >= 2,
            }
        })
        .collect())
}

/// Four-point condition: for every quadruple the two largest of the three
/// pair sums agree.
pub fn satisfies_four_point(space: &PseudometricSpace) -> bool {
    let n = space.len();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                for w in z + 1..n {
                    let mut sums = [
                        space.d(x, y) + space.d(z, w),
                        space.d(x, z) + space.d(y, w),
                        space.d(x, w) + space.d(y, z),
                    ];
                    sums.sort();
                    if sums[1] != sums[2] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Random tree: a random internal tree on `internal` nodes, each carrying
/// zero to three pendant leaves, with lengths drawn from `{1/2, 1, ..., 4}`.
/// At least three leaves are guaranteed and at most `max_leaves` are added.
pub fn random_tree<R: Rng + ?Sized>(rng: &mut R, internal: usize, max_leaves: usize) -> MetricTree {
    let internal = internal.max(1);
    let mut names: Vec<String> = (0..internal).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    let len = |rng: &mut R| rational::ratio(rng.random_range(1..=8), 2);
    for i in 1..internal {
        let parent = rng.random_range(0..i);
        edges.push((parent, i, len(rng)));
    }
    let mut leaves = 0;
    for v in 0..internal {
        let count = rng.random_range(0..=3usize);
        for _ in 0..count {
            if leaves >= max_leaves {
                break;
            }
            names.push(format!("x{leaves}"));
            edges.push((v, names.len() - 1, len(rng)));
            leaves += 1;
        }
    }
    let mut tree = MetricTree::new(names.clone(), edges.clone(), false).expect("construction yields a tree");
    while tree.leaves().len() < 3 {
        let v = rng.random_range(0..internal);
        names.push(format!("x{leaves}"));
        edges.push((v, names.len() - 1, len(rng)));
        leaves += 1;
        tree = MetricTree::new(names.clone(), edges.clone(), false).expect("construction yields a tree");
    }
    tree
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desk;
    use crate::rational::int;
    use rand::SeedableRng;

    fn star(legs: &[i64]) -> MetricTree {
        let mut names = vec!["c".to_string()];
        let mut edges = Vec::new();
        for (i, &l) in legs.iter().enumerate() {
            names.push(format!("l{}", i + 1));
            edges.push((0, i + 1, int(l)));
        }
        MetricTree::new(names, edges, false).unwrap()
    }

    pub(crate) fn caterpillar_tree() -> MetricTree {
        let names = ["u", "v", "a", "b", "c", "d", "e", "f"].map(String::from).to_vec();
        let mut edges = vec![(0, 1, int(5))];
        for i in 0..3 {
            edges.push((0, 2 + i, int(1)));
            edges.push((1, 5 + i, int(1)));
        }
        MetricTree::new(names, edges, false).unwrap()
    }

    #[test]
    fn leaf_space_examples() {
        assert_eq!(star(&[1, 2, 3]).leaf_space().unwrap(), desk::star(&[1, 2, 3]));
        let edge = MetricTree::new(vec!["a".into(), "b".into()], vec![(0, 1, int(5))], false).unwrap();
        let s = edge.leaf_space().unwrap();
        assert_eq!(*s.d(0, 1), int(5));
        let cat = caterpillar_tree().leaf_space().unwrap();
        assert_eq!(cat.table(), desk::caterpillar().table());
        assert!(satisfies_four_point(&cat));
    }

    #[test]
    fn rejects_non_trees() {
        let names = ["a", "b", "c"].map(String::from).to_vec();
        let cycle = vec![(0, 1, int(1)), (1, 2, int(1)), (2, 0, int(1))];
        assert!(matches!(MetricTree::new(names.clone(), cycle, false), Err(Error::NotATree(_))));
        let split = vec![(0, 1, int(1))];
        assert!(matches!(MetricTree::new(names.clone(), split, false), Err(Error::NotATree(_))));
        let zero = vec![(0, 1, int(0)), (1, 2, int(1))];
        assert!(matches!(
            MetricTree::new(names.clone(), zero.clone(), false),
            Err(Error::NonpositiveLength { .. })
        ));
        let t = MetricTree::new(names, zero, true).unwrap();
        assert_eq!(t.leaf_pseudospace().unwrap().len(), 2);
        assert_eq!(t.leaf_space().unwrap().len(), 2);
    }

    #[test]
    fn zero_leaf_edges_are_glued() {
        let names = ["c", "a", "b", "z"].map(String::from).to_vec();
        let edges = vec![(0, 1, int(0)), (0, 2, int(2)), (0, 3, int(3))];
        let t = MetricTree::new(names, edges, true).unwrap();
        let s = t.leaf_space().unwrap();
        assert_eq!(s.len(), 3);
        assert_eq!(*s.d(0, 1), int(2));
    }

    #[test]
    fn oracle_examples() {
        let cat = caterpillar_tree();
        let bounds = underline_d_tree_oracle(&cat).unwrap();
        assert_eq!(bounds.len(), 6);
        assert!(bounds.iter().all(|b| b.exact && b.bound == int(1)));

        let bounds = underline_d_tree_oracle(&star(&[1, 2, 3])).unwrap();
        let values: Vec<Rational> = bounds.iter().map(|b| b.bound.clone()).collect();
        assert_eq!(values, vec![int(1), int(2), int(3)]);
        assert!(bounds.iter().all(|b| b.exact));

        let names = ["a", "b", "c", "d"].map(String::from).to_vec();
        let path = MetricTree::new(names, vec![(0, 1, int(1)), (1, 2, int(1)), (2, 3, int(1))], false).unwrap();
        assert_eq!(underline_d_tree_oracle(&path).unwrap_err(), Error::TooFewLeaves(2));
    }

    #[test]
    fn random_trees_have_enough_leaves() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let internal = rng.random_range(1..6);
            let t = random_tree(&mut rng, internal, 12);
            let leaves = t.leaves().len();
            assert!((3..=12 + 2).contains(&leaves), "{leaves}");
            assert!(satisfies_four_point(&t.leaf_space().unwrap()));
        }
    }
}
