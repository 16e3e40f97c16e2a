//! Point-set generators: the three adversarial families that separate
//! `YY_6` from `ΘΘ_6`, plus random convex and random general-position
//! fixtures.
//!
//! Every adversarial generator re-checks the geometric conditions its
//! argument depends on and fails with the first violated condition rather
//! than returning a silently wrong layout. Callers should rely on those
//! conditions, not on exact coordinates.

use std::collections::BTreeSet;
use std::f64::consts::{FRAC_PI_3, TAU};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{
    euclidean_distance, is_convex_position, is_general_position, polar_angle, ConeSystem, Coord,
    PointSet, ANGLE_EPS,
};

/// Rejection margin (radians) for random fixtures; comfortably above
/// [`ANGLE_EPS`] so the fixtures pass the general-position check.
const RANDOM_ANGLE_MARGIN: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConstructionFamily {
    MollaStrip,
    ConvexLowerBound,
    NonConvexZigzag,
    RandomConvex,
    RandomGeneral,
}

impl ConstructionFamily {
    pub const ALL: [ConstructionFamily; 5] = [
        ConstructionFamily::MollaStrip,
        ConstructionFamily::ConvexLowerBound,
        ConstructionFamily::NonConvexZigzag,
        ConstructionFamily::RandomConvex,
        ConstructionFamily::RandomGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ConstructionFamily::MollaStrip => "molla",
            ConstructionFamily::ConvexLowerBound => "convex-lb",
            ConstructionFamily::NonConvexZigzag => "nonconvex",
            ConstructionFamily::RandomConvex => "random-convex",
            ConstructionFamily::RandomGeneral => "random",
        }
    }
}

impl fmt::Display for ConstructionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConstructionFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ConstructionFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown construction '{s}'")))
    }
}

/// Parameters for one generator run. Fields a family does not use are
/// ignored.
#[derive(Clone, Debug, PartialEq)]
pub struct ConstructionSpec {
    pub family: ConstructionFamily,
    pub n: usize,
    /// Rotation of the supporting lines, radians.
    pub alpha: f64,
    /// `δ` as a fraction of its upper bound `|a_1a_2|·sin(α)/2`.
    pub delta_fraction: f64,
    pub epsilon: f64,
    pub seed: u64,
}

impl ConstructionSpec {
    pub const DEFAULT_MOLLA_ALPHA: f64 = 0.02;
    pub const DEFAULT_NONCONVEX_ALPHA: f64 = 0.01;
    pub const DEFAULT_DELTA_FRACTION: f64 = 0.5;
    pub const DEFAULT_MOLLA_EPSILON: f64 = 1e-4;
    pub const DEFAULT_CONVEX_LB_EPSILON: f64 = 1e-6;

    /// Family defaults: `n = 4` for the strips, 30 for random sets.
    pub fn new(family: ConstructionFamily) -> Self {
        let (n, alpha, epsilon) = match family {
            ConstructionFamily::MollaStrip => {
                (4, Self::DEFAULT_MOLLA_ALPHA, Self::DEFAULT_MOLLA_EPSILON)
            }
            ConstructionFamily::ConvexLowerBound => (
                5,
                Self::DEFAULT_MOLLA_ALPHA,
                Self::DEFAULT_CONVEX_LB_EPSILON,
            ),
            ConstructionFamily::NonConvexZigzag => (
                4,
                Self::DEFAULT_NONCONVEX_ALPHA,
                Self::DEFAULT_MOLLA_EPSILON,
            ),
            ConstructionFamily::RandomConvex | ConstructionFamily::RandomGeneral => {
                (30, Self::DEFAULT_MOLLA_ALPHA, Self::DEFAULT_MOLLA_EPSILON)
            }
        };
        ConstructionSpec {
            family,
            n,
            alpha,
            delta_fraction: Self::DEFAULT_DELTA_FRACTION,
            epsilon,
            seed: 0,
        }
    }

    pub fn generate(&self) -> Result<LabeledPointSet> {
        match self.family {
            ConstructionFamily::MollaStrip => gen_molla(self.n, self.alpha, self.epsilon),
            ConstructionFamily::ConvexLowerBound => gen_convex_lb(self.epsilon),
            ConstructionFamily::NonConvexZigzag => {
                gen_nonconvex(self.n, self.alpha, self.delta_fraction)
            }
            ConstructionFamily::RandomConvex => {
                gen_random_convex(self.n, self.seed).map(LabeledPointSet::unlabeled)
            }
            ConstructionFamily::RandomGeneral => {
                gen_random_general(self.n, self.seed).map(LabeledPointSet::unlabeled)
            }
        }
    }
}

/// A point set whose points may carry role labels such as `a_3` or `d_1`.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledPointSet {
    pub points: PointSet,
    /// Indexed by point id.
    pub labels: Vec<Option<String>>,
}

impl LabeledPointSet {
    pub fn unlabeled(points: PointSet) -> Self {
        let labels = vec![None; points.len()];
        LabeledPointSet { points, labels }
    }

    fn labeled(coords: &[Coord], labels: Vec<String>) -> Result<Self> {
        debug_assert_eq!(coords.len(), labels.len());
        Ok(LabeledPointSet {
            points: PointSet::from_coords(coords)?,
            labels: labels.into_iter().map(Some).collect(),
        })
    }

    pub fn id(&self, role: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_deref() == Some(role))
    }

    /// Id of `<letter>_<i>`; panics if the role is absent.
    pub fn role(&self, letter: char, i: usize) -> usize {
        let role = format!("{letter}_{i}");
        self.id(&role)
            .unwrap_or_else(|| panic!("no point labeled {role}"))
    }

    pub fn coord(&self, letter: char, i: usize) -> Coord {
        self.points[self.role(letter, i)].pos()
    }
}

fn check(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Construction(what()))
    }
}

/// Intersection of the lines `p + s·u` and `q + t·v`.
fn line_intersection(p: Coord, u: Coord, q: Coord, v: Coord) -> Option<Coord> {
    let den = u.cross(v);
    if den.abs() < 1e-300 {
        return None;
    }
    let s = q.sub(p).cross(v) / den;
    Some(p.add(u.scale(s)))
}

fn intersect(p: Coord, u: Coord, q: Coord, v: Coord) -> Result<Coord> {
    line_intersection(p, u, q, v)
        .ok_or_else(|| Error::Construction("supporting lines are parallel".into()))
}

fn angle_at(apex: Coord, p: Coord, q: Coord) -> f64 {
    let (u, v) = (p.sub(apex), q.sub(apex));
    u.cross(v).atan2(u.dot(v)).abs()
}

fn labels_for(letters: &[char], n: usize) -> Vec<String> {
    letters
        .iter()
        .flat_map(|c| (1..=n).map(move |i| format!("{c}_{i}")))
        .collect()
}

/// Convex strip: points `a_1..a_n` on a line rotated clockwise by `alpha`
/// about `a_1` and `b_1..b_n` on a line rotated counterclockwise about
/// `b_1`, joined by a zig-zag of near-equilateral triangles.
///
/// Consecutive zig-zag edges leave `a_i` at `60° − ε` and `b_i` at
/// `300° + ε`, which empties `C_2(a_i)` and `C_5(b_i)`. Each chain also bends
/// by `ε/n` per step so that no point sits inside a hull edge.
pub fn gen_molla(n: usize, alpha: f64, epsilon: f64) -> Result<LabeledPointSet> {
    if n < 2 {
        return Err(Error::InvalidParameter("convex strip needs n >= 2".into()));
    }
    if !(alpha > 0.0 && alpha <= 0.05) {
        return Err(Error::InvalidParameter(format!(
            "strip alpha must lie in (0, 0.05], got {alpha}"
        )));
    }
    if !(epsilon > 0.0 && epsilon <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "strip epsilon must lie in (0, 1e-3], got {epsilon}"
        )));
    }
    let up = Coord::from_angle(FRAC_PI_3 - epsilon);
    let down = Coord::from_angle(5.0 * FRAC_PI_3 + epsilon);
    let bend = epsilon / n as f64;
    let mut a = vec![Coord::new(0.0, 0.0)];
    let mut b = vec![up];
    for j in 0..n - 1 {
        let turn = j as f64 * bend;
        let next_a = intersect(b[j], down, a[j], Coord::from_angle(-alpha + turn))?;
        a.push(next_a);
        let next_b = intersect(next_a, up, b[j], Coord::from_angle(alpha - turn))?;
        b.push(next_b);
    }
    let coords: Vec<Coord> = a.iter().chain(&b).copied().collect();
    let set = LabeledPointSet::labeled(&coords, labels_for(&['a', 'b'], n))?;
    validate_molla(&set, n)?;
    Ok(set)
}

/// Re-checks the inequalities and empty cones the strip argument relies on.
pub fn validate_molla(set: &LabeledPointSet, n: usize) -> Result<()> {
    let k6 = ConeSystem::six();
    let p = &set.points;
    let (a, b) = (|i| &p[set.role('a', i)], |i| &p[set.role('b', i)]);
    for i in 2..=n {
        check(
            euclidean_distance(a(i - 1), a(i)) < euclidean_distance(b(i - 1), a(i)),
            || format!("|a_{{i-1}}a_i| < |b_{{i-1}}a_i| fails at i={i}"),
        )?;
        check(
            euclidean_distance(b(i - 1), b(i)) < euclidean_distance(a(i), b(i)),
            || format!("|b_{{i-1}}b_i| < |a_ib_i| fails at i={i}"),
        )?;
        check(
            k6.projective_distance(a(i - 1), a(i))? > k6.projective_distance(b(i - 1), a(i))?,
            || format!("||a_{{i-1}}a_i|| > ||b_{{i-1}}a_i|| fails at i={i}"),
        )?;
        check(
            k6.projective_distance(b(i - 1), b(i))? > k6.projective_distance(a(i), b(i))?,
            || format!("||b_{{i-1}}b_i|| > ||a_ib_i|| fails at i={i}"),
        )?;
    }
    for i in 1..=n {
        for q in p.iter() {
            if q.id != a(i).id {
                check(k6.cone_index(a(i), q)? != 2, || {
                    format!("C_2(a_{i}) contains point {}", q.id)
                })?;
            }
            if q.id != b(i).id {
                check(k6.cone_index(b(i), q)? != 5, || {
                    format!("C_5(b_{i}) contains point {}", q.id)
                })?;
            }
        }
    }
    check(is_convex_position(p), || {
        "convex strip is not in convex position".into()
    })?;
    check(is_general_position(p, &k6), || {
        "convex strip is not in general position".into()
    })
}

/// Five points `a, b_1..b_4` on which `ΘΘ_6` has spanning ratio close to 4.
///
/// `b_i` starts at unit distance from `a` on the counterclockwise ray of
/// `C_i(a)`. It is rotated clockwise into `C_i(a)` and pulled slightly toward
/// `a`, so that `b_i` falls strictly inside `T(b_{i-1}, a)` and the edge
/// `b_i → b_{i-1}` beats `a → b_{i-1}` in the filtering step.
pub fn gen_convex_lb(epsilon: f64) -> Result<LabeledPointSet> {
    if !(epsilon > 0.0 && epsilon <= 1e-3) {
        return Err(Error::InvalidParameter(format!(
            "convex-lb epsilon must lie in (0, 1e-3], got {epsilon}"
        )));
    }
    let mut coords = vec![Coord::new(0.0, 0.0)];
    for i in 1..=4 {
        let t = i as f64;
        let rotation = epsilon * (0.3 + 0.1 * t);
        let radius = 1.0 + (2.5 - t) * 0.9 * epsilon;
        coords.push(Coord::from_angle(t * FRAC_PI_3 - rotation).scale(radius));
    }
    let mut labels = vec!["a".to_string()];
    labels.extend((1..=4).map(|i| format!("b_{i}")));
    let set = LabeledPointSet::labeled(&coords, labels)?;
    validate_convex_lb(&set, epsilon)?;
    Ok(set)
}

pub fn validate_convex_lb(set: &LabeledPointSet, epsilon: f64) -> Result<()> {
    let k6 = ConeSystem::six();
    let p = &set.points;
    let a = &p[set.id("a").expect("labeled a")];
    let b = |i| &p[set.role('b', i)];
    for i in 1..=4 {
        let phi = polar_angle(b(i).pos().sub(a.pos()));
        let lo = k6.lower_ray_angle(i);
        let hi = k6.upper_ray_angle(i);
        check(phi > lo + ANGLE_EPS && phi < hi - ANGLE_EPS, || {
            format!("b_{i} is not strictly inside C_{i}(a)")
        })?;
        let r = euclidean_distance(a, b(i));
        check((r - 1.0).abs() <= 2.0 * epsilon, || {
            format!("|ab_{i}| = {r} is not within 2·epsilon of 1")
        })?;
    }
    for i in 2..=4 {
        let t = k6.canonical_triangle(b(i - 1), a)?;
        check(t.contains_strictly(b(i).pos()), || {
            format!("b_{i} is not strictly inside T(b_{}, a)", i - 1)
        })?;
    }
    for i in 1..=3 {
        let d = euclidean_distance(b(i), b(i + 1));
        check((d - 1.0).abs() <= 2.0 * epsilon, || {
            format!("|b_{i}b_{}| = {d} is not within 2·epsilon of 1", i + 1)
        })?;
    }
    check(is_convex_position(p), || {
        "convex-lb set is not in convex position".into()
    })?;
    check(is_general_position(p, &k6), || {
        "convex-lb set is not in general position".into()
    })
}

/// Upper bound on `δ` for a non-convex zig-zag: `|a_1a_2|·sin(α)/2`, with
/// `|a_1a_2|` taken from the unshifted layout.
pub fn nonconvex_delta_bound(n: usize, alpha: f64) -> Result<f64> {
    let base = nonconvex_initial_layout(n.max(2), alpha)?;
    Ok(base.a[1].sub(base.a[0]).norm() * alpha.sin() / 2.0)
}

struct ZigzagLayout {
    a: Vec<Coord>,
    b: Vec<Coord>,
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

fn ray_a(alpha: f64) -> Coord {
    Coord::from_angle(-alpha)
}

fn ray_b(alpha: f64) -> Coord {
    Coord::from_angle(alpha)
}

/// Zig-zag with `∠b_{i-1}a_ib_i = ∠a_ib_ia_{i+1} = π/3`, before any shift:
/// every `b_i` sits on the 60° line through `a_i`.
fn nonconvex_initial_layout(n: usize, alpha: f64) -> Result<ZigzagLayout> {
    let a1 = Coord::new(0.0, 0.0);
    let b1 = Coord::from_angle(FRAC_PI_3);
    let mut a = vec![a1];
    let mut b = vec![b1];
    for i in 0..n - 1 {
        let next_a = intersect(b[i], Coord::from_angle(5.0 * FRAC_PI_3), a1, ray_a(alpha))?;
        a.push(next_a);
        b.push(intersect(
            next_a,
            Coord::from_angle(FRAC_PI_3),
            b1,
            ray_b(alpha),
        )?);
    }
    Ok(ZigzagLayout { a, b })
}

/// Signed horizontal distance from the line through `q` with slope angle
/// 60° (`steep = 1`) or 120° (`steep = -1`) to `p`.
fn horizontal_offset(p: Coord, q: Coord, steep: f64) -> f64 {
    p.x - (q.x + steep * (p.y - q.y) / SQRT3)
}

/// Point `origin + t·dir` whose horizontal offset from the given line is
/// `delta`.
fn slide_to_offset(origin: Coord, dir: Coord, q: Coord, steep: f64, delta: f64) -> Coord {
    let f0 = horizontal_offset(origin, q, steep);
    let slope = horizontal_offset(origin.add(dir), q, steep) - f0;
    origin.add(dir.scale((delta - f0) / slope))
}

/// Non-convex family on which `ΘΘ_6` degenerates into a single path of
/// `4n − 1` edges. `delta_fraction` places `δ` strictly below its bound.
pub fn gen_nonconvex(n: usize, alpha: f64, delta_fraction: f64) -> Result<LabeledPointSet> {
    if !(delta_fraction > 0.0 && delta_fraction < 1.0) {
        return Err(Error::Construction(format!(
            "delta fraction {delta_fraction} violates 0 < δ < |a_1a_2|·sin(α)/2"
        )));
    }
    let delta = delta_fraction * nonconvex_delta_bound(n, alpha)?;
    gen_nonconvex_with_delta(n, alpha, delta)
}

/// As [`gen_nonconvex`] with an absolute `δ`. Fails if `δ` violates its
/// bound or any cone-membership property breaks.
pub fn gen_nonconvex_with_delta(n: usize, alpha: f64, delta: f64) -> Result<LabeledPointSet> {
    let set = layout_nonconvex(n, alpha, delta)?;
    let bound = nonconvex_delta_bound(n, alpha)?;
    check(delta > 0.0 && delta < bound, || {
        format!("δ = {delta} violates 0 < δ < |a_1a_2|·sin(α)/2 = {bound}")
    })?;
    check_nonconvex_properties(&set, n, delta)?;
    Ok(set)
}

/// Builds the shifted layout without checking anything beyond the initial
/// angles. Labels run `a_1..a_n, b_1..b_n, c_1..c_n, d_1..d_n`.
pub fn layout_nonconvex(n: usize, alpha: f64, delta: f64) -> Result<LabeledPointSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(
            "non-convex zig-zag needs n >= 2".into(),
        ));
    }
    if !(alpha > 0.0 && alpha < 2.0) {
        return Err(Error::InvalidParameter(format!(
            "non-convex alpha must lie in (0, 2), got {alpha}"
        )));
    }
    let init = nonconvex_initial_layout(n, alpha)?;
    for i in 1..n {
        let at_a = angle_at(init.a[i], init.b[i - 1], init.b[i]);
        check((at_a - FRAC_PI_3).abs() <= 1e-9, || {
            format!(
                "initial angle b_{i}a_{}b_{} = {at_a} is not π/3",
                i + 1,
                i + 1
            )
        })?;
        let at_b = angle_at(init.b[i - 1], init.a[i - 1], init.a[i]);
        check((at_b - FRAC_PI_3).abs() <= 1e-9, || {
            format!("initial angle a_{i}b_{i}a_{} = {at_b} is not π/3", i + 1)
        })?;
    }

    // Left to right: slide b_i along r_b until it sits δ right of the 60°
    // line through a_i, then slide a_{i+1} along r_a until it sits δ right
    // of the 120° line through b_i.
    let (a1, b1) = (init.a[0], init.b[0]);
    let mut a = vec![a1];
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        b.push(slide_to_offset(b1, ray_b(alpha), a[i], 1.0, delta));
        if i + 1 < n {
            a.push(slide_to_offset(a1, ray_a(alpha), b[i], -1.0, delta));
        }
    }
    let lift = Coord::new(0.0, 2.0 * delta);
    let c: Vec<Coord> = b.iter().map(|p| p.add(lift)).collect();
    let d: Vec<Coord> = a.iter().map(|p| p.sub(lift)).collect();
    let coords: Vec<Coord> = a.iter().chain(&b).chain(&c).chain(&d).copied().collect();
    LabeledPointSet::labeled(&coords, labels_for(&['a', 'b', 'c', 'd'], n))
}

/// Checks the shift gaps, the `2δ` offsets, and the cone memberships of every
/// `c_i` and `d_i`.
pub fn check_nonconvex_properties(set: &LabeledPointSet, n: usize, delta: f64) -> Result<()> {
    let k6 = ConeSystem::six();
    let p = &set.points;
    let id = |l, i| set.role(l, i);
    let pt = |l, i| &p[id(l, i)];
    let pos = |l, i| p[id(l, i)].pos();
    let scale = p.extent().max(1.0);
    let tol = 1e-9 * scale;

    for i in 1..=n {
        let gap = horizontal_offset(pos('b', i), pos('a', i), 1.0);
        check((gap - delta).abs() <= tol, || {
            format!("gap between C_2(a_{i}) and C_5(b_{i}) is {gap}, expected δ = {delta}")
        })?;
        if i < n {
            let gap = horizontal_offset(pos('a', i + 1), pos('b', i), -1.0);
            check((gap - delta).abs() <= tol, || {
                format!(
                    "gap between b_{i} and a_{} is {gap}, expected δ = {delta}",
                    i + 1
                )
            })?;
        }
        let bc = pos('c', i).sub(pos('b', i)).norm();
        let ad = pos('a', i).sub(pos('d', i)).norm();
        check((bc - 2.0 * delta).abs() <= 1e-12 * scale, || {
            format!("|b_{i}c_{i}| = {bc} differs from 2δ")
        })?;
        check((ad - 2.0 * delta).abs() <= 1e-12 * scale, || {
            format!("|a_{i}d_{i}| = {ad} differs from 2δ")
        })?;
    }

    let in_cone = |apex: (char, usize), q: (char, usize), cone: usize| -> Result<()> {
        let got = k6.cone_index(pt(apex.0, apex.1), pt(q.0, q.1))?;
        check(got == cone, || {
            format!(
                "{}_{} lies in C_{got}({}_{}), expected C_{cone}",
                q.0, q.1, apex.0, apex.1
            )
        })
    };

    // c_i sits in the small triangle C_2(a_i) ∩ C_2(a_{i+1}) ∩ C_4(b_{i+1}).
    for i in 1..n {
        in_cone(('a', i), ('c', i), 2)?;
        in_cone(('a', i + 1), ('c', i), 2)?;
        in_cone(('b', i + 1), ('c', i), 4)?;
        let y = intersect(
            pos('a', i),
            Coord::from_angle(FRAC_PI_3),
            pos('a', i + 1),
            Coord::from_angle(2.0 * FRAC_PI_3),
        )?;
        let by = y.sub(pos('b', i));
        check(
            by.x.abs() <= tol && (by.y - delta * SQRT3).abs() <= tol,
            || format!("apex y above b_{i} is off: offset ({}, {})", by.x, by.y),
        )?;
        check(delta * SQRT3 < 2.0 * delta && pos('c', i).y > y.y, || {
            format!(
                "c_{i} is not above the apex of C_2(a_{i}) ∩ C_2(a_{})",
                i + 1
            )
        })?;
    }
    // d_1 ∈ C_5(b_1) ∩ C_3(a_2); d_i ∈ C_5(b_{i-1}) ∩ C_5(b_i) ∩ C_3(a_{i+1}).
    in_cone(('b', 1), ('d', 1), 5)?;
    in_cone(('a', 2), ('d', 1), 3)?;
    for i in 2..n {
        in_cone(('b', i - 1), ('d', i), 5)?;
        in_cone(('b', i), ('d', i), 5)?;
        in_cone(('a', i + 1), ('d', i), 3)?;
    }
    check(!is_convex_position(p), || {
        "non-convex zig-zag unexpectedly in convex position".into()
    })?;
    check(is_general_position(p, &k6), || {
        "non-convex zig-zag is not in general position".into()
    })
}

/// The undirected edge set `ΘΘ_6` takes on the non-convex zig-zag:
/// `{a_1b_1} ∪ {a_id_i, b_ic_i} ∪ {d_ia_{i+1}, c_ib_{i+1}}`, as `(min, max)`
/// id pairs under the labeling of [`layout_nonconvex`].
pub fn nonconvex_expected_edges(n: usize) -> BTreeSet<(usize, usize)> {
    let a = |i: usize| i - 1;
    let b = |i: usize| n + i - 1;
    let c = |i: usize| 2 * n + i - 1;
    let d = |i: usize| 3 * n + i - 1;
    let mut set = BTreeSet::new();
    let mut add = |u: usize, v: usize| {
        set.insert((u.min(v), u.max(v)));
    };
    add(a(1), b(1));
    for i in 1..=n {
        add(a(i), d(i));
        add(b(i), c(i));
    }
    for i in 1..n {
        add(d(i), a(i + 1));
        add(c(i), b(i + 1));
    }
    set
}

fn angle_near_ray(phi: f64, margin: f64) -> bool {
    let step = FRAC_PI_3;
    let r = (phi / step).round();
    (phi - r * step).abs() <= margin
}

fn direction_ok(p: Coord, q: Coord) -> bool {
    let v = q.sub(p);
    v.norm() > 0.0 && !angle_near_ray(polar_angle(v), RANDOM_ANGLE_MARGIN)
}

/// `n` points on the unit circle with jittered, well-separated angles.
/// Deterministic per seed; in convex and general position.
pub fn gen_random_convex(n: usize, seed: u64) -> Result<PointSet> {
    if n < 3 {
        return Err(Error::InvalidParameter(
            "random convex set needs n >= 3".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k6 = ConeSystem::six();
    loop {
        let offset = rng.gen::<f64>() * TAU;
        let coords: Vec<Coord> = (0..n)
            .map(|j| {
                let slot = j as f64 + 0.1 + 0.8 * rng.gen::<f64>();
                Coord::from_angle(offset + TAU * slot / n as f64)
            })
            .collect();
        let ok_dirs = coords
            .iter()
            .enumerate()
            .all(|(i, &p)| coords[i + 1..].iter().all(|&q| direction_ok(p, q)));
        if !ok_dirs {
            continue;
        }
        let set = PointSet::from_coords(&coords)?;
        if is_convex_position(&set) && is_general_position(&set, &k6) {
            return Ok(set);
        }
    }
}

/// `n` uniform points in the unit square, each redrawn until no direction to
/// an earlier point is within 1e-9 rad of a multiple of 60°. That covers the
/// cone rays for `k` in {2, 3, 6}.
pub fn gen_random_general(n: usize, seed: u64) -> Result<PointSet> {
    if n < 1 {
        return Err(Error::InvalidParameter("random set needs n >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut coords: Vec<Coord> = Vec::with_capacity(n);
    while coords.len() < n {
        let c = Coord::new(rng.gen(), rng.gen());
        if coords.iter().all(|&p| direction_ok(p, c)) {
            coords.push(c);
        }
    }
    PointSet::from_coords(&coords)
}

/// A center point (id 0) surrounded by `m` points evenly spaced on the unit
/// circle, rotated off the cone rays.
pub fn gen_star(m: usize) -> Result<PointSet> {
    if m < 1 {
        return Err(Error::InvalidParameter(
            "star needs at least one leaf".into(),
        ));
    }
    let offset = 0.05;
    let coords = std::iter::once(Coord::new(0.0, 0.0))
        .chain((0..m).map(|j| Coord::from_angle(offset + TAU * j as f64 / m as f64)))
        .collect::<Vec<_>>();
    PointSet::from_coords(&coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_inequalities_recomputed_from_coordinates() {
        let s = gen_molla(2, 0.02, 1e-4).unwrap();
        let (a1, a2, b1, b2) = (
            s.coord('a', 1),
            s.coord('a', 2),
            s.coord('b', 1),
            s.coord('b', 2),
        );
        let dist = |p: Coord, q: Coord| q.sub(p).norm();
        // projective distance of q from p measured along the bisector of
        // the six-cone sector holding q − p, done by hand here
        let proj = |p: Coord, q: Coord| {
            let v = q.sub(p);
            let phi = v.y.atan2(v.x).rem_euclid(TAU);
            let i = (phi / FRAC_PI_3).floor();
            v.dot(Coord::from_angle((i + 0.5) * FRAC_PI_3))
        };
        assert!(dist(a1, a2) < dist(b1, a2));
        assert!(dist(b1, b2) < dist(a2, b2));
        assert!(proj(a1, a2) > proj(b1, a2));
        assert!(proj(b1, b2) > proj(a2, b2));
    }

    #[test]
    fn strip_parameter_errors() {
        assert!(gen_molla(1, 0.02, 1e-4).is_err());
        assert!(gen_molla(4, 0.0, 1e-4).is_err());
        assert!(gen_molla(4, 0.2, 1e-4).is_err());
        assert!(gen_molla(4, 0.02, 0.0).is_err());
        // perturbation too large for the rotation: |a_{i-1}a_i| < |b_{i-1}a_i| breaks
        let err = gen_molla(4, 0.001, 1e-3).unwrap_err();
        assert!(err.to_string().contains("fails at i=2"), "{err}");
    }

    #[test]
    fn convex_lb_lengths() {
        for eps in [1e-6, 1e-4, 1e-3] {
            let s = gen_convex_lb(eps).unwrap();
            let a = s.points[s.id("a").unwrap()].pos();
            for i in 1..=4 {
                assert!((s.coord('b', i).sub(a).norm() - 1.0).abs() <= 2.0 * eps);
            }
            for i in 1..=3 {
                let d = s.coord('b', i + 1).sub(s.coord('b', i)).norm();
                assert!((d - 1.0).abs() <= 2.0 * eps);
            }
        }
        assert!(gen_convex_lb(0.0).is_err());
        assert!(gen_convex_lb(0.01).is_err());
    }

    #[test]
    fn nonconvex_offsets_are_two_delta() {
        let n = 4;
        let bound = nonconvex_delta_bound(n, 0.01).unwrap();
        let s = gen_nonconvex(n, 0.01, 0.5).unwrap();
        let delta = 0.5 * bound;
        for i in 1..=n {
            let bc = s.coord('c', i).sub(s.coord('b', i)).norm();
            let ad = s.coord('a', i).sub(s.coord('d', i)).norm();
            assert!((bc - 2.0 * delta).abs() < 1e-15);
            assert!((ad - 2.0 * delta).abs() < 1e-15);
        }
    }

    #[test]
    fn nonconvex_delta_bound_is_enforced() {
        assert!(gen_nonconvex(4, 0.01, 1.0).is_err());
        assert!(gen_nonconvex(4, 0.01, 0.0).is_err());
        let bound = nonconvex_delta_bound(4, 0.01).unwrap();
        let err = gen_nonconvex_with_delta(4, 0.01, 2.0 * bound).unwrap_err();
        assert!(err.to_string().contains("violates"), "{err}");
    }

    #[test]
    fn expected_edges_count() {
        for n in 2..10 {
            assert_eq!(nonconvex_expected_edges(n).len(), 4 * n - 1);
        }
    }

    #[test]
    fn random_generators_are_deterministic() {
        assert_eq!(
            gen_random_convex(20, 7).unwrap(),
            gen_random_convex(20, 7).unwrap()
        );
        assert_ne!(
            gen_random_convex(20, 7).unwrap(),
            gen_random_convex(20, 8).unwrap()
        );
        assert_eq!(
            gen_random_general(20, 7).unwrap(),
            gen_random_general(20, 7).unwrap()
        );
        assert_eq!(gen_random_general(1, 3).unwrap().len(), 1);
        assert!(gen_random_convex(2, 0).is_err());
        assert!(gen_random_general(0, 0).is_err());
    }

    #[test]
    fn random_triangle_passes_predicates() {
        let s = gen_random_convex(3, 11).unwrap();
        assert!(is_convex_position(&s));
        assert!(is_general_position(&s, &ConeSystem::six()));
    }

    #[test]
    fn construction_names_round_trip() {
        for f in ConstructionFamily::ALL {
            assert_eq!(f.name().parse::<ConstructionFamily>().unwrap(), f);
        }
    }
}
