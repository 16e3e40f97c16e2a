//! Reproducible checks of the spanner claims, bundled as named suites.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::analysis::{
    all_pairs_dijkstra, floyd_warshall, per_edge_stretch, shortest_path, spanning_ratio,
    Directedness,
};
use crate::constructions::{
    gen_convex_lb, gen_molla, gen_nonconvex, gen_random_convex, gen_random_general,
    nonconvex_expected_edges, ConstructionSpec,
};
use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, PointSet};
use crate::graph::{build_theta, build_yao, filter_incoming, half_theta, ConeGraph, Parity};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    ConvexUpper,
    ConvexLower,
    NonConvex,
    MollaYy6,
    HalfTheta6,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::ConvexUpper,
        Suite::ConvexLower,
        Suite::NonConvex,
        Suite::MollaYy6,
        Suite::HalfTheta6,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::ConvexUpper => "convex-upper",
            Suite::ConvexLower => "convex-lower",
            Suite::NonConvex => "nonconvex",
            Suite::MollaYy6 => "molla-yy6",
            Suite::HalfTheta6 => "half-theta6",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown suite '{s}'")))
    }
}

/// Overrides for a suite's defaults. `seed` offsets every random fixture.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct VerifyParams {
    pub n: Option<usize>,
    pub seeds: Option<usize>,
    pub trials: Option<usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub id: String,
    pub claim: String,
    pub passed: bool,
    /// Serialized as `null` when infinite.
    pub measured: f64,
    pub bound: f64,
    pub tolerance: f64,
    /// Fixture seed of the worst case, for replay.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationOutcome {
    pub suite: String,
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl VerificationOutcome {
    fn new(suite: Suite, checks: Vec<Check>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        VerificationOutcome {
            suite: suite.name().into(),
            checks,
            passed,
        }
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }
}

fn at_most(id: String, claim: &str, measured: f64, bound: f64, tol: f64) -> Check {
    Check {
        id,
        claim: claim.into(),
        passed: measured <= bound + tol,
        measured,
        bound,
        tolerance: tol,
        seed: None,
    }
}

fn at_least(id: String, claim: &str, measured: f64, bound: f64, tol: f64) -> Check {
    Check {
        passed: measured >= bound - tol,
        ..at_most(id, claim, measured, bound, tol)
    }
}

fn holds(id: &str, claim: &str, cond: bool) -> Check {
    at_least(id.into(), claim, if cond { 1.0 } else { 0.0 }, 1.0, 0.0)
}

fn with_seed(mut c: Check, seed: Option<u64>) -> Check {
    c.seed = seed;
    c
}

pub fn run_suite(suite: Suite, p: &VerifyParams) -> Result<VerificationOutcome> {
    let checks = match suite {
        Suite::ConvexUpper => convex_upper(p)?,
        Suite::ConvexLower => convex_lower()?,
        Suite::NonConvex => nonconvex(p)?,
        Suite::MollaYy6 => strip_yy6(p)?,
        Suite::HalfTheta6 => half_theta6(p)?,
        Suite::Oracle => oracle(p)?,
    };
    Ok(VerificationOutcome::new(suite, checks))
}

fn sizes(p: &VerifyParams, defaults: &[usize]) -> Vec<usize> {
    p.n.map_or_else(|| defaults.to_vec(), |n| vec![n])
}

fn theta_theta(s: &PointSet) -> Result<(ConeGraph, ConeGraph)> {
    let base = build_theta(s, &ConeSystem::six());
    let filtered = filter_incoming(&base)?;
    Ok((base, filtered))
}

/// Largest value and the seed attaining it; the first seed wins ties.
fn track(worst: &mut (f64, Option<u64>), value: f64, seed: u64) {
    if worst.1.is_none() || value > worst.0 {
        *worst = (value, Some(seed));
    }
}

fn convex_upper(p: &VerifyParams) -> Result<Vec<Check>> {
    let seeds = p.seeds.unwrap_or(50) as u64;
    let mut checks = Vec::new();
    for n in sizes(p, &[10, 30, 100]) {
        let mut ratio = (f64::NEG_INFINITY, None);
        let mut edge = (f64::NEG_INFINITY, None);
        for s in 0..seeds {
            let seed = p.seed.wrapping_add(s);
            let (base, g) = theta_theta(&gen_random_convex(n, seed)?)?;
            track(
                &mut ratio,
                spanning_ratio(&g, Directedness::Undirected)?.ratio,
                seed,
            );
            let per_edge = per_edge_stretch(&base, &g)?;
            track(&mut edge, per_edge.max().map_or(0.0, |m| m.stretch), seed);
        }
        checks.push(with_seed(
            at_most(
                format!("ratio-n{n}"),
                "Theta-Theta-6 on points in convex position is an 8-spanner",
                ratio.0,
                8.0,
                1e-6,
            ),
            ratio.1,
        ));
        checks.push(with_seed(
            at_most(
                format!("edge-stretch-n{n}"),
                "every Theta-6 edge ab has a Theta-Theta-6 path no longer than 4|ab|",
                edge.0,
                4.0,
                1e-6,
            ),
            edge.1,
        ));
    }
    Ok(checks)
}

fn convex_lower() -> Result<Vec<Check>> {
    let set = gen_convex_lb(ConstructionSpec::DEFAULT_CONVEX_LB_EPSILON)?;
    let a = set.id("a").expect("a is labeled");
    let b = |i| set.role('b', i);
    let (base, g) = theta_theta(&set.points)?;
    let report = spanning_ratio(&g, Directedness::Undirected)?;
    let pair = (
        report.witness_src.min(report.witness_dst),
        report.witness_src.max(report.witness_dst),
    );
    let via = [a, b(4), b(3), b(2), b(1)];
    let mut path = report.witness_path.clone();
    if path.first() != Some(&a) {
        path.reverse();
    }
    Ok(vec![
        holds(
            "theta-has-ab1",
            "Theta-6 contains the edge a -> b_1",
            base.contains(a, b(1)),
        ),
        holds(
            "thetatheta-omits-ab1",
            "Theta-Theta-6 discards the edge a -> b_1",
            !g.contains(a, b(1)),
        ),
        at_least(
            "ratio".into(),
            "Theta-Theta-6 on convex points has spanning ratio at least 4",
            report.ratio,
            4.0,
            0.01,
        ),
        at_most(
            "ratio-tight".into(),
            "the lower-bound set attains ratio 4 up to perturbation",
            report.ratio,
            4.0,
            0.01,
        ),
        holds(
            "witness-pair",
            "the spanning ratio is attained by the pair (a, b_1)",
            pair == (a.min(b(1)), a.max(b(1))),
        ),
        holds(
            "witness-path",
            "the shortest a-b_1 path runs a, b_4, b_3, b_2, b_1",
            path == via,
        ),
    ])
}

fn nonconvex(p: &VerifyParams) -> Result<Vec<Check>> {
    let n = p.n.unwrap_or(10);
    let set = gen_nonconvex(
        n,
        ConstructionSpec::DEFAULT_NONCONVEX_ALPHA,
        ConstructionSpec::DEFAULT_DELTA_FRACTION,
    )?;
    let (_, g) = theta_theta(&set.points)?;
    let expected = nonconvex_expected_edges(n);
    let got = g.undirected_edge_set();
    let diff = expected.symmetric_difference(&got).count();
    let (a1, an, b1, bn) = (
        set.role('a', 1),
        set.role('a', n),
        set.role('b', 1),
        set.role('b', n),
    );
    let unit = set.points[a1].pos().sub(set.points[b1].pos()).norm();
    let dist =
        shortest_path(&g, an, bn, Directedness::Undirected)?.map_or(f64::INFINITY, |r| r.length);
    let bound = 0.99 * (2 * n - 1) as f64;
    Ok(vec![
        at_most(
            "edge-set".into(),
            "Theta-Theta-6 is exactly the zig-zag path of 4n-1 edges",
            diff as f64,
            0.0,
            0.0,
        ),
        Check {
            passed: dist / unit > bound,
            ..at_least(
                "path-distance".into(),
                "the a_n-b_n distance in Theta-Theta-6 exceeds (2n-1)|a_1b_1|",
                dist / unit,
                bound,
                0.0,
            )
        },
    ])
}

fn strip_yy6(p: &VerifyParams) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut distances = Vec::new();
    for n in sizes(p, &[4, 8, 16]) {
        let set = gen_molla(
            n,
            ConstructionSpec::DEFAULT_MOLLA_ALPHA,
            ConstructionSpec::DEFAULT_MOLLA_EPSILON,
        )?;
        let sys = ConeSystem::six();
        let yy = filter_incoming(&build_yao(&set.points, &sys))?;
        let (an, bn) = (set.role('a', n), set.role('b', n));
        let dist = shortest_path(&yy, an, bn, Directedness::Undirected)?
            .map_or(f64::INFINITY, |r| r.length);
        distances.push(dist);
        let a_ids: BTreeSet<usize> = (1..=n).map(|i| set.role('a', i)).collect();
        let kept = (
            set.role('a', 1).min(set.role('b', 1)),
            set.role('a', 1).max(set.role('b', 1)),
        );
        let crossing_ab = yy
            .undirected_edge_set()
            .into_iter()
            .filter(|&(u, v)| a_ids.contains(&u) != a_ids.contains(&v) && (u, v) != kept)
            .count();
        let (_, tt) = theta_theta(&set.points)?;
        let tt_ratio = spanning_ratio(&tt, Directedness::Undirected)?.ratio;
        checks.push(at_least(
            format!("yy-distance-n{n}"),
            "the Yao-Yao-6 a_n-b_n path is Hamiltonian, of length at least 2n-1",
            dist,
            (2 * n - 1) as f64 * 0.95,
            0.0,
        ));
        checks.push(at_most(
            format!("yy-ab-edges-n{n}"),
            "Yao-Yao-6 keeps no a-b edge except a_1b_1",
            crossing_ab as f64,
            0.0,
            0.0,
        ));
        checks.push(Check {
            passed: tt_ratio < 8.0,
            ..at_most(
                format!("thetatheta-ratio-n{n}"),
                "Theta-Theta-6 on the same convex set stays below 8",
                tt_ratio,
                8.0,
                0.0,
            )
        });
    }
    if distances.len() > 1 {
        let increasing = distances.windows(2).all(|w| w[1] > w[0]);
        checks.push(holds(
            "yy-distance-increasing",
            "the Yao-Yao-6 a_n-b_n distance grows with n",
            increasing,
        ));
    }
    Ok(checks)
}

fn half_theta6(p: &VerifyParams) -> Result<Vec<Check>> {
    let seeds = p.seeds.unwrap_or(50) as u64;
    let mut checks = Vec::new();
    for n in sizes(p, &[20, 50]) {
        for (parity, name) in [(Parity::Odd, "odd"), (Parity::Even, "even")] {
            let mut crossings = (f64::NEG_INFINITY, None);
            let mut ratio = (f64::NEG_INFINITY, None);
            for s in 0..seeds {
                let seed = p.seed.wrapping_add(s);
                let pts = gen_random_general(n, seed)?;
                let g = half_theta(&build_theta(&pts, &ConeSystem::six()), parity)?;
                let r = spanning_ratio(&g, Directedness::Undirected)?;
                track(&mut crossings, r.crossing_count as f64, seed);
                track(&mut ratio, r.ratio, seed);
            }
            checks.push(with_seed(
                at_most(
                    format!("plane-{name}-n{n}"),
                    "half-Theta-6 is plane",
                    crossings.0,
                    0.0,
                    0.0,
                ),
                crossings.1,
            ));
            checks.push(with_seed(
                at_most(
                    format!("ratio-{name}-n{n}"),
                    "half-Theta-6 is a 2-spanner",
                    ratio.0,
                    2.0,
                    1e-6,
                ),
                ratio.1,
            ));
        }
    }
    Ok(checks)
}

/// Per-cone nearest neighbours by direct scan, with cone membership taken
/// from `atan2`. Ties keep the smallest id.
pub fn brute_force_nearest(s: &PointSet, k: usize, projective: bool) -> BTreeSet<(usize, usize)> {
    let theta = TAU / k as f64;
    let mut edges = BTreeSet::new();
    for u in s.iter() {
        let mut best: Vec<Option<(f64, usize)>> = vec![None; k];
        for v in s.iter().filter(|v| v.id != u.id) {
            let (dx, dy) = (v.x - u.x, v.y - u.y);
            let phi = dy.atan2(dx).rem_euclid(TAU);
            let cone = ((phi / theta).floor() as usize).min(k - 1);
            let bisector = (cone as f64 + 0.5) * theta;
            let r = dx.hypot(dy);
            let m = if projective {
                r * (phi - bisector).cos()
            } else {
                r
            };
            if best[cone].is_none_or(|(bm, _)| m < bm) {
                best[cone] = Some((m, v.id));
            }
        }
        edges.extend(best.into_iter().flatten().map(|(_, v)| (u.id, v)));
    }
    edges
}

fn max_relative_gap(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for (ra, rb) in a.iter().zip(b) {
        for (&x, &y) in ra.iter().zip(rb) {
            let gap = if x == y {
                0.0
            } else if x.is_infinite() || y.is_infinite() {
                f64::INFINITY
            } else {
                (x - y).abs() / x.abs().max(y.abs())
            };
            worst = worst.max(gap);
        }
    }
    worst
}

fn oracle(p: &VerifyParams) -> Result<Vec<Check>> {
    let trials = p.trials.unwrap_or(20);
    let mut rng = ChaCha8Rng::seed_from_u64(p.seed);
    let mut checks = Vec::new();
    for t in 0..trials {
        let n = p.n.unwrap_or_else(|| rng.gen_range(2..=100));
        let k = [6, 6, 4, 7, 8, 9][t % 6];
        let seed: u64 = rng.gen();
        let pts = gen_random_general(n, seed)?;
        let sys = ConeSystem::new(k)?;
        let theta = build_theta(&pts, &sys);
        let yao = build_yao(&pts, &sys);
        let theta_ok = theta.edge_set() == brute_force_nearest(&pts, k, true);
        let yao_ok = yao.edge_set() == brute_force_nearest(&pts, k, false);
        let tt = filter_incoming(&theta)?;
        let gap = [Directedness::Undirected, Directedness::Directed]
            .into_iter()
            .map(|d| max_relative_gap(&floyd_warshall(&tt, d), &all_pairs_dijkstra(&tt, d)))
            .fold(0.0, f64::max);
        let claim = format!("n={n}, k={k}");
        checks.push(with_seed(
            holds(
                &format!("theta-argmin-{t}"),
                &format!("Theta edges equal brute-force projective nearest ({claim})"),
                theta_ok,
            ),
            Some(seed),
        ));
        checks.push(with_seed(
            holds(
                &format!("yao-argmin-{t}"),
                &format!("Yao edges equal brute-force Euclidean nearest ({claim})"),
                yao_ok,
            ),
            Some(seed),
        ));
        checks.push(with_seed(
            at_most(
                format!("apsp-{t}"),
                &format!("Floyd-Warshall matches Dijkstra on Theta-Theta ({claim})"),
                gap,
                0.0,
                1e-9,
            ),
            Some(seed),
        ));
    }
    Ok(checks)
}
