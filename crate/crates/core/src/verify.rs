//! Exhaustive and sampled checks of the identities relating a space, its
//! trimming sequence, its cylinder and its tight span.
//!
//! Every check records a [`Violation`] instead of panicking, so a single run
//! reports everything that failed.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::cylinder::{Cylinder, CylinderPoint};
use crate::error::Error;
use crate::instances::random_rational;
use crate::rational::{self, Rational};
use crate::space::{DriftFunction, MetricSpace, PseudometricSpace};
use crate::tight_span::{
    d_t, decompose, descend, f_point, is_member, kuratowski, lift, project, sup_distance, tau_lift, Classification,
    TightSpanFunction,
};
use crate::treegen::{chain_metric, underline_d_tree_oracle, ChainSpec, MetricTree};
use crate::trimming::{trim_step, TrimSequence};

/// Cross-component pairs checked for a minimality witness per instance.
pub const MINIMALITY_PAIRS: usize = 50;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub check: String,
    pub detail: String,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Report {
    pub checks: usize,
    pub violations: Vec<Violation>,
}

impl Report {
    fn check(&mut self, ok: bool, name: &str, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.violations.push(Violation {
                check: name.to_string(),
                detail: detail(),
            });
        }
    }

    fn error(&mut self, name: &str, err: &Error) {
        self.checks += 1;
        self.violations.push(Violation {
            check: name.to_string(),
            detail: err.to_string(),
        });
    }

    pub fn merge(&mut self, other: Report) {
        self.checks += other.checks;
        self.violations.extend(other.violations);
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Draws a member of the tight span. Half of the start functions are
/// `u_x * max_y d(x,y)` with random `u_x` in `[0, 1]`, shifted uniformly
/// until `f(x) + f(y) >= d(x,y)`; the other half are a distance function
/// `d(p, .)` plus random nonnegative noise, which already satisfies that
/// inequality and reaches the neighbourhood of `p`. Either is then projected.
pub fn sample_member<R: Rng + ?Sized>(space: &PseudometricSpace, rng: &mut R) -> TightSpanFunction {
    let n = space.len();
    let ecc: Vec<Rational> = (0..n)
        .map(|x| (0..n).map(|y| space.d(x, y)).max().cloned().unwrap_or_default())
        .collect();
    let f: Vec<Rational> = if rng.random_bool(0.5) {
        let f: Vec<Rational> = ecc.iter().map(|e| e * random_rational(rng, 1, 16)).collect();
        let mut shift = Rational::zero();
        for x in 0..n {
            for y in x..n {
                let gap = rational::half(&(space.d(x, y) - &f[x] - &f[y]));
                if gap > shift {
                    shift = gap;
                }
            }
        }
        f.iter().map(|v| v + &shift).collect()
    } else {
        let p = rng.random_range(0..n);
        (0..n)
            .map(|x| space.d(p, x) + &ecc[x] * random_rational(rng, 1, 16) / rational::int(2))
            .collect()
    };
    project(space, &f).expect("start functions satisfy the star condition")
}

fn label_pair(space: &PseudometricSpace, x: usize, y: usize) -> String {
    format!("({}, {})", space.label(x), space.label(y))
}

/// Trim-function inequality, Gromov symmetry, the Menger criterion, drifts
/// and the metric quotient.
pub fn check_metric_core(space: &MetricSpace) -> Report {
    let mut r = Report::default();
    let n = space.len();
    let under = space.underline_d();
    for x in 0..n {
        for y in x + 1..n {
            r.check(&under[x] + &under[y] <= *space.d(x, y), "trim-function inequality", || {
                label_pair(space, x, y)
            });
            for z in 0..n {
                r.check(
                    space.gromov(x, y, z) + space.gromov(y, x, z) == *space.d(x, y),
                    "gromov symmetry",
                    || format!("{} via {}", label_pair(space, x, y), space.label(z)),
                );
            }
        }
    }
    r.check(!space.menger_sufficient_trim() || space.is_trim(), "menger implies trim", String::new);

    for (name, scale) in [("half drift", rational::ratio(1, 2)), ("full drift", rational::int(1))] {
        let delta = DriftFunction(under.iter().map(|v| v * &scale).collect());
        match space.drift(&delta) {
            Err(e) => r.error(name, &e),
            Ok(drifted) => {
                if n >= 3 {
                    let expected: Vec<Rational> = under.iter().zip(&delta.0).map(|(u, d)| u - d).collect();
                    r.check(drifted.underline_d() == expected, name, || "trim function did not drop by the drift".into());
                }
                let (q, map) = drifted.metric_quotient();
                let mut ok = true;
                for x in 0..n {
                    for y in 0..n {
                        ok &= q.d(map.apply(x), map.apply(y)) == drifted.d(x, y);
                    }
                }
                r.check(ok, "quotient preserves distances", || name.to_string());
            }
        }
    }
    r
}

/// Monotonicity, the two sigma identities, the fixed point, the length
/// bound and non-expansiveness of the projection to the limit.
pub fn check_trimming(seq: &TrimSequence) -> Report {
    let mut r = Report::default();
    let base = seq.base();
    let n = base.len();
    let top = seq.stable_index();
    r.check(top <= n, "sequence length bound", || format!("N = {top} > {n}"));
    r.check(seq.sigma_partial_table(1) == seq.level(0).underline(), "first partial sum", String::new);

    for k in 0..top {
        let (lower, upper) = (seq.level(k).space(), seq.level(k + 1).space());
        for x in 0..n {
            for y in x + 1..n {
                let (a, b) = (seq.position(k, x), seq.position(k, y));
                let (c, d) = (seq.position(k + 1, x), seq.position(k + 1, y));
                r.check(lower.d(a, b) >= upper.d(c, d), "monotone levels", || {
                    format!("{} at level {k}", label_pair(base, x, y))
                });
            }
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let d = base.d(x, y);
            match seq.meeting_index(x, y) {
                Ok(m) => r.check(
                    *d == seq.sigma_partial(x, m) + seq.sigma_partial(y, m),
                    "sigma identity for congruent points",
                    || label_pair(base, x, y),
                ),
                Err(_) => r.check(
                    *d == seq.d_infinity(seq.to_infinity(x), seq.to_infinity(y)) + seq.sigma(x) + seq.sigma(y),
                    "sigma identity across the limit",
                    || label_pair(base, x, y),
                ),
            }
            r.check(
                seq.d_infinity(seq.to_infinity(x), seq.to_infinity(y)) <= d,
                "limit projection is non-expansive",
                || label_pair(base, x, y),
            );
        }
    }
    let inf = seq.x_infinity();
    let (again, map) = trim_step(inf);
    r.check(
        map.is_identity() && again.labels() == inf.labels() && again.table() == inf.table(),
        "trim fixed point",
        String::new,
    );
    r
}

fn describe(cyl: &Cylinder, a: &CylinderPoint) -> String {
    cyl.point_name(a)
}

/// Restriction to every level, the triangle inequality, the height
/// inequalities, minimality witnesses, components and the quotient.
pub fn check_cylinder(cyl: &Cylinder) -> Report {
    let mut r = Report::default();
    let seq = cyl.sequence();
    for k in 0..=seq.stable_index() {
        let level = seq.level(k).space();
        for u in 0..level.len() {
            for v in 0..level.len() {
                let rho = cyl.rho(&CylinderPoint::vertex(k, u), &CylinderPoint::vertex(k, v));
                r.check(rho == *level.d(u, v), "rho restricts to the levels", || {
                    format!("level {k}: {}", label_pair(level, u, v))
                });
            }
        }
    }

    let points = cyl.sample_points();
    let vertex_count = cyl.vertex_count();
    let m = points.len();
    let rho: Vec<Vec<Rational>> = points
        .iter()
        .map(|a| points.iter().map(|b| cyl.rho(a, b)).collect())
        .collect();
    for i in 0..m {
        for j in 0..m {
            r.check(rho[i][j] == rho[j][i] && !rho[i][j].is_negative(), "rho symmetric", || {
                format!("{} {}", describe(cyl, &points[i]), describe(cyl, &points[j]))
            });
            let interior = (i >= vertex_count) as usize + (j >= vertex_count) as usize;
            for k in 0..m {
                if interior + (k >= vertex_count) as usize > 1 {
                    continue;
                }
                r.check(rho[i][k] <= &rho[i][j] + &rho[j][k], "rho triangle", || {
                    format!(
                        "{} {} {}",
                        describe(cyl, &points[i]),
                        describe(cyl, &points[j]),
                        describe(cyl, &points[k])
                    )
                });
            }
        }
    }

    let mut witnesses = 0;
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (&points[i], &points[j]);
            let (sa, sb) = (cyl.sigma_point(a), cyl.sigma_point(b));
            match cyl.path_distance(a, b) {
                Some(dl) => {
                    r.check((&sa - &sb).abs() <= dl && dl <= &sa + &sb, "height inequalities", || {
                        format!("{} {}", describe(cyl, a), describe(cyl, b))
                    });
                    if cyl.lies_below(a, b) {
                        r.check(sb == &dl + &sa, "height along a descending path", || {
                            format!("{} below {}", describe(cyl, a), describe(cyl, b))
                        });
                    }
                    if cyl.lies_below(b, a) {
                        r.check(sa == &dl + &sb, "height along a descending path", || {
                            format!("{} below {}", describe(cyl, b), describe(cyl, a))
                        });
                    }
                }
                None if witnesses < MINIMALITY_PAIRS => {
                    witnesses += 1;
                    let (x, y) = (cyl.leaf_above(a), cyl.leaf_above(b));
                    let (px, py) = (CylinderPoint::vertex(0, x), CylinderPoint::vertex(0, y));
                    let via = match (cyl.path_distance(&px, a), cyl.path_distance(&py, b)) {
                        (Some(da), Some(db)) => Some(seq.base().d(x, y) - da - db),
                        _ => None,
                    };
                    r.check(via.as_ref() == Some(&rho[i][j]), "minimality witness", || {
                        format!("{} {}", describe(cyl, a), describe(cyl, b))
                    });
                }
                None => {}
            }
        }
    }

    let base = seq.base();
    for x in 0..base.len() {
        for y in 0..base.len() {
            let same = cyl.component_of(&CylinderPoint::vertex(0, x)) == cyl.component_of(&CylinderPoint::vertex(0, y));
            r.check(same == seq.meeting_index(x, y).is_ok(), "components are congruence classes", || {
                label_pair(base, x, y)
            });
        }
    }
    r.check(cyl.component_count() == seq.x_infinity().len(), "components match the limit", String::new);

    match cyl.quotient() {
        Err(e) => r.error("quotient", &e),
        Ok(q) => {
            let nodes = q.nodes();
            for a in 0..nodes.len() {
                for b in 0..nodes.len() {
                    let d = q.distance(cyl, a, b);
                    let ok = nodes[a].members.iter().all(|ma| {
                        nodes[b].members.iter().all(|mb| {
                            cyl.rho(&CylinderPoint::vertex(ma.level, ma.index), &CylinderPoint::vertex(mb.level, mb.index))
                                == d
                        })
                    });
                    r.check(ok && (a == b) == d.is_zero(), "quotient distances", || {
                        format!("nodes {} {}", cyl.vertex_name(nodes[a].representative), cyl.vertex_name(nodes[b].representative))
                    });
                }
            }
        }
    }
    r
}

/// Canonical maps into the tight span: membership, isometry, lifts and
/// their images, minimality, the closedness witness and the agreement of
/// the decomposition with cylinder points.
pub fn check_tight_span(cyl: &Cylinder, samples: usize, seed: u64) -> Report {
    let mut r = Report::default();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = cyl.sequence();
    let base = seq.base();

    for x in 0..base.len() {
        r.check(is_member(base, kuratowski(base, x).values()).member, "distance functions are members", || {
            base.label(x).to_string()
        });
    }

    let points = cyl.sample_points();
    let images: Vec<TightSpanFunction> = points.iter().map(|a| f_point(cyl, a)).collect();
    for (a, f) in points.iter().zip(&images) {
        let m = is_member(base, f.values());
        r.check(m.member, "cylinder points map into the tight span", || {
            format!("{}: {}", describe(cyl, a), m.describe(base))
        });
    }
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let dt = d_t(&images[i], &images[j]).expect("same base");
            r.check(dt == cyl.rho(&points[i], &points[j]), "cylinder map is isometric", || {
                format!("{} {}", describe(cyl, &points[i]), describe(cyl, &points[j]))
            });
        }
    }

    for (a, f) in points.iter().zip(&images) {
        match decompose(cyl, f) {
            Err(e) => r.error("decompose cylinder point", &e),
            Ok(c) => {
                let height = cyl.sigma_point(a);
                let ok = match &c {
                    Classification::Root { point, .. } => height.is_zero() && cyl.rho(a, point).is_zero(),
                    Classification::Branch { point } => height.is_positive() && cyl.rho(a, point).is_zero(),
                    Classification::Tau { .. } => false,
                };
                r.check(ok, "decomposition recovers cylinder points", || {
                    format!("{} classified as {}", describe(cyl, a), c.kind())
                });
            }
        }
    }

    let members: Vec<TightSpanFunction> = (0..samples.max(2)).map(|_| sample_member(base, &mut rng)).collect();

    for f in &members {
        for x in 0..base.len() {
            for step in [rational::ratio(1, 8), rational::int(1)] {
                if f.get(x) < &step {
                    continue;
                }
                let mut g = f.values().to_vec();
                g[x] -= &step;
                r.check(!is_member(base, &g).member, "members are minimal", || {
                    format!("lowering {} at {}", f.get(x), base.label(x))
                });
            }
        }
    }

    for n in 0..=seq.stable_index() {
        let level = seq.level(n).space();
        let sigma_n = seq.sigma_partial_table(n);
        let ups: Vec<(Vec<Rational>, TightSpanFunction)> = (0..samples.clamp(2, 6))
            .map(|_| sample_member(level, &mut rng))
            .filter_map(|g| match lift(seq, n, g.values()) {
                Ok(f) => Some((g.values().to_vec(), f)),
                Err(e) => {
                    r.error("lift", &e);
                    None
                }
            })
            .collect();
        for (g, f) in &ups {
            r.check(is_member(base, f.values()).member, "lifts are members", || format!("level {n}"));
            r.check(f.dominates(&sigma_n), "lifts dominate the partial sum", || format!("level {n}"));
            let back = descend(seq, n, f).map(|h| h.values() == g.as_slice());
            r.check(back == Ok(true), "descend inverts lift", || format!("level {n}"));
        }
        for i in 0..ups.len() {
            for j in i + 1..ups.len() {
                let up = sup_distance(&ups[i].0, &ups[j].0);
                r.check(d_t(&ups[i].1, &ups[j].1).ok() == Some(up), "lifts are isometric", || format!("level {n}"));
            }
        }
        for f in &members {
            let dominated = f.dominates(&sigma_n);
            let roundtrip = descend(seq, n, f).and_then(|g| lift(seq, n, g.values()));
            let in_image = matches!(&roundtrip, Ok(h) if h == f);
            r.check(dominated == in_image, "lift image is the dominating set", || {
                format!("level {n}, dominated = {dominated}")
            });
        }
    }

    if seq.stable_index() >= 1 {
        let under = seq.level(0).underline();
        for f in &members {
            let Some(a) = (0..base.len()).find(|&a| f.get(a) < &under[a]) else {
                continue;
            };
            let radius = &under[a] - f.get(a);
            for h in &members {
                if d_t(f, h).expect("same base") < radius {
                    r.check(!h.dominates(under), "neighbourhoods outside the first level", || {
                        format!("ball at {} of radius {}", base.label(a), radius)
                    });
                }
            }
        }
    }
    r
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct MainTheoremReport {
    pub samples: usize,
    pub branch: usize,
    pub root: usize,
    pub tau: usize,
    pub violations: Vec<Violation>,
}

impl MainTheoremReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Samples members of the tight span and checks that each one is a branch
/// point of the quotient cylinder, a root, or a point of tau, with verified
/// witnesses, together with the cylinder map and tau lifts.
pub fn verify_main_theorem(cyl: &Cylinder, samples: usize, seed: u64) -> MainTheoremReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let seq = cyl.sequence();
    let base = seq.base();
    let sigma = seq.sigma_table();
    let mut out = MainTheoremReport {
        samples,
        ..Default::default()
    };
    let mut r = Report::default();

    for _ in 0..samples {
        let f = sample_member(base, &mut rng);
        match decompose(cyl, &f) {
            Err(e) => r.error("classification", &e),
            Ok(Classification::Branch { point }) => {
                out.branch += 1;
                r.check(
                    cyl.sigma_point(&point).is_positive() && !f.dominates(&sigma),
                    "branch points lie outside tau",
                    || describe(cyl, &point),
                );
            }
            Ok(Classification::Root { point, witness, .. }) => {
                out.root += 1;
                let lifted = tau_lift(seq, witness.values());
                r.check(
                    cyl.is_special(point.anchor()) && lifted.as_ref() == Ok(&f),
                    "roots lie in both parts",
                    || describe(cyl, &point),
                );
            }
            Ok(Classification::Tau { witness }) => {
                out.tau += 1;
                let lifted = tau_lift(seq, witness.values());
                r.check(lifted.as_ref() == Ok(&f), "tau witnesses lift back", || format!("{:?}", f.values()));
            }
        }
    }

    let points = cyl.sample_points();
    let images: Vec<TightSpanFunction> = points.iter().map(|a| f_point(cyl, a)).collect();
    for i in 0..points.len() {
        r.check(is_member(base, images[i].values()).member, "cylinder points are members", || {
            describe(cyl, &points[i])
        });
        for j in i + 1..points.len() {
            r.check(
                d_t(&images[i], &images[j]).ok() == Some(cyl.rho(&points[i], &points[j])),
                "cylinder map is isometric",
                || format!("{} {}", describe(cyl, &points[i]), describe(cyl, &points[j])),
            );
        }
    }

    let inf = seq.x_infinity();
    let top = seq.stable_index();
    for _ in 0..samples.clamp(1, 10) {
        let h = sample_member(inf, &mut rng);
        for n in 0..=top {
            let level = seq.level(n).space();
            let up: Vec<Rational> = (0..level.len())
                .map(|v| h.get(seq.descend(n, v, top)) + seq.sigma_from(n, v))
                .collect();
            r.check(is_member(level, &up).member, "tau lifts into every level", || format!("level {n}"));
        }
    }

    out.violations = r.violations;
    out
}

/// Everything above on one space.
pub fn run_all(space: &MetricSpace, samples: usize, seed: u64) -> (Report, MainTheoremReport) {
    let seq = TrimSequence::new(space.clone());
    let cyl = Cylinder::new(seq.clone());
    let mut report = check_metric_core(space);
    report.merge(check_trimming(&seq));
    report.merge(check_cylinder(&cyl));
    report.merge(check_tight_span(&cyl, samples.min(20), seed));
    (report, verify_main_theorem(&cyl, samples, seed))
}

/// Edge-length bounds on the trim function of a leaf space: bounds never
/// exceed the computed value, and exact entries match it.
pub fn check_tree_oracle(tree: &MetricTree) -> Report {
    let mut r = Report::default();
    let bounds = match underline_d_tree_oracle(tree) {
        Ok(b) => b,
        Err(e) => {
            r.error("tree oracle", &e);
            return r;
        }
    };
    let space = match tree.leaf_space() {
        Ok(s) => s,
        Err(e) => {
            r.error("leaf space", &e);
            return r;
        }
    };
    let under = space.underline_d();
    for b in &bounds {
        let Ok(x) = space.index_of(&b.leaf) else {
            r.check(false, "tree oracle", || format!("leaf {} missing from the leaf space", b.leaf));
            continue;
        };
        r.check(b.bound <= under[x], "tree oracle bound", || {
            format!("{}: edge {} above trim value {}", b.leaf, b.bound, under[x])
        });
        if b.exact {
            r.check(b.bound == under[x], "tree oracle exact value", || {
                format!("{}: edge {} but trim value {}", b.leaf, b.bound, under[x])
            });
        }
    }
    r
}

/// On the levels where every fiber has at least three points, the trimming
/// sequence of a chain space removes exactly the chain weights and lands on
/// the next chain level.
pub fn check_chain_oracle(spec: &ChainSpec) -> Report {
    let mut r = Report::default();
    let space = match chain_metric(spec) {
        Ok(s) => s,
        Err(e) => {
            r.error("chain metric", &e);
            return r;
        }
    };
    let seq = TrimSequence::new(space);
    let n = seq.base().len();
    let chain_position = |k: usize, x: usize| (0..k).fold(x, |v, j| spec.projection(j).apply(v));
    for k in 0..spec.hypothesis_prefix() {
        if k >= seq.stable_index() {
            r.check(false, "chain levels", || format!("trimming stopped at {} before level {}", seq.stable_index(), k + 1));
            break;
        }
        let under = seq.level(k).underline();
        for x in 0..n {
            r.check(under[seq.position(k, x)] == spec.delta(k)[chain_position(k, x)], "chain weights", || {
                format!("level {k}, point {}", seq.base().label(x))
            });
        }
        let expected = match spec.level_metric(k + 1) {
            Ok(m) => m,
            Err(e) => {
                r.error("chain metric", &e);
                break;
            }
        };
        let got = seq.level(k + 1).space();
        r.check(got.len() == expected.len(), "chain level sizes", || {
            format!("level {}: {} points, expected {}", k + 1, got.len(), expected.len())
        });
        for x in 0..n {
            for y in x + 1..n {
                let a = got.d(seq.position(k + 1, x), seq.position(k + 1, y));
                let b = expected.d(chain_position(k + 1, x), chain_position(k + 1, y));
                r.check(a == b, "chain level distances", || {
                    format!("level {}: {}", k + 1, label_pair(seq.base(), x, y))
                });
            }
        }
    }
    if spec.level_labels(spec.depth()).len() == 1 {
        r.check(seq.x_infinity().len() == 1, "chain limit is a point", String::new);
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::desk;
    use crate::rational::int;

    #[test]
    fn sampler_lands_in_the_tight_span() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for space in [desk::caterpillar(), desk::circle(4), desk::equilateral(int(2)), desk::singleton()] {
            for _ in 0..20 {
                let f = sample_member(&space, &mut rng);
                assert!(is_member(&space, f.values()).member);
            }
        }
    }

    #[test]
    fn sampler_is_not_degenerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let space = desk::caterpillar();
        let distinct: std::collections::HashSet<Vec<Rational>> =
            (0..50).map(|_| sample_member(&space, &mut rng).values().to_vec()).collect();
        assert!(distinct.len() > 10, "{}", distinct.len());
    }

    #[test]
    fn desk_spaces_are_clean() {
        for space in [
            desk::caterpillar(),
            desk::circle(4),
            desk::equilateral(int(2)),
            desk::line(&[0, 1, 3]),
            desk::two_point(int(4)),
            desk::singleton(),
        ] {
            let (report, main) = run_all(&space, 40, 9);
            assert!(report.is_clean(), "{:?}", report.violations);
            assert!(main.is_clean(), "{:?}", main.violations);
            assert_eq!(main.branch + main.root + main.tau, 40);
        }
    }

    #[test]
    fn caterpillar_sees_branches_and_the_root_only() {
        let cyl = Cylinder::new(TrimSequence::new(desk::caterpillar()));
        let report = verify_main_theorem(&cyl, 100, 4);
        assert!(report.is_clean());
        assert_eq!(report.tau, 0);
        assert!(report.branch > 0);
    }

    #[test]
    fn trim_circle_has_no_branches() {
        let cyl = Cylinder::new(TrimSequence::new(desk::circle(4)));
        let report = verify_main_theorem(&cyl, 60, 4);
        assert!(report.is_clean());
        assert_eq!(report.branch, 0);
        assert!(report.tau > 0);
    }

    #[test]
    fn oracles_agree_on_desk_generators() {
        let tree = crate::treegen::parse_newick("((a:1,b:1,c:1)u:5,d:1,e:1,f:1)v;", false).unwrap();
        let r = check_tree_oracle(&tree);
        assert!(r.is_clean() && r.checks >= 12, "{r:?}");
        let r = check_chain_oracle(&crate::treegen::shift_chain(3, 3));
        assert!(r.is_clean() && r.checks > 9, "{r:?}");
    }

    #[test]
    fn broken_identity_is_reported() {
        let mut r = Report::default();
        r.check(false, "demo", || "detail".into());
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.checks, 1);
    }
}
