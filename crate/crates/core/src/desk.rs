//! Small named spaces with hand-checkable trimming behaviour.

use crate::rational::{int, Rational};
use crate::space::MetricSpace;

fn build(labels: Vec<String>, dist: impl FnMut(usize, usize) -> Rational) -> MetricSpace {
    MetricSpace::from_fn(labels, dist).expect("desk instances are metric")
}

fn numbered(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{}", i + 1)).collect()
}

pub fn singleton() -> MetricSpace {
    build(vec!["x".into()], |_, _| unreachable!())
}

pub fn two_point(r: Rational) -> MetricSpace {
    build(vec!["x".into(), "y".into()], |_, _| r.clone())
}

/// Three points at mutual distance `side`, labelled `x1`, `x2`, `x3`.
pub fn equilateral(side: Rational) -> MetricSpace {
    build(numbered(3), |_, _| side.clone())
}

/// Points of the real line at the given integer positions, labelled `p<pos>`.
pub fn line(positions: &[i64]) -> MetricSpace {
    let labels = positions.iter().map(|p| format!("p{p}")).collect();
    build(labels, |i, j| int((positions[i] - positions[j]).abs()))
}

/// `n` equally spaced points on a circle of circumference `n` with the
/// shorter-arc distance.
pub fn circle(n: usize) -> MetricSpace {
    let labels = numbered(n);
    build(labels, |i, j| {
        let k = i.abs_diff(j);
        int(k.min(n - k) as i64)
    })
}

/// Words of length `len` over an alphabet of `alphabet` letters with the
/// Hamming distance.
pub fn hamming(len: u32, alphabet: usize) -> MetricSpace {
    let count = alphabet.pow(len);
    let words: Vec<Vec<usize>> = (0..count)
        .map(|mut code| {
            (0..len)
                .map(|_| {
                    let letter = code % alphabet;
                    code /= alphabet;
                    letter
                })
                .collect()
        })
        .collect();
    let labels = words
        .iter()
        .map(|w| w.iter().rev().map(|l| l.to_string()).collect())
        .collect();
    build(labels, |i, j| {
        int(words[i].iter().zip(&words[j]).filter(|(a, b)| a != b).count() as i64)
    })
}

/// Leaf space of a star whose legs have the given lengths: `d(i,j) = l_i + l_j`.
pub fn star(legs: &[i64]) -> MetricSpace {
    let labels = (0..legs.len()).map(|i| format!("l{}", i + 1)).collect();
    build(labels, |i, j| int(legs[i] + legs[j]))
}

/// Six leaves `a..f` in two fibres `{a,b,c}` and `{d,e,f}`: distance 2 inside
/// a fibre and 7 across.
pub fn caterpillar() -> MetricSpace {
    let labels = ["a", "b", "c", "d", "e", "f"].map(String::from).to_vec();
    build(labels, |i, j| if i / 3 == j / 3 { int(2) } else { int(7) })
}
