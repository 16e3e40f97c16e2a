//! Planar primitives for cone-based proximity graphs.
//!
//! Cones are numbered `1..=k` counterclockwise starting at the positive
//! x-axis. Each cone is half-open: it contains its clockwise bounding ray and
//! excludes its counterclockwise one, so every direction belongs to exactly
//! one cone.

use std::f64::consts::{PI, TAU};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Angular tolerance (radians) used for every cone-boundary comparison.
pub const ANGLE_EPS: f64 = 1e-12;

/// Relative tolerance for orientation tests, scaled by the squared extent of
/// the configuration under test.
pub const ORIENT_EPS: f64 = 1e-12;

/// A bare planar coordinate pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Coord {
    pub x: f64,
    pub y: f64,
}

#[allow(clippy::should_implement_trait)]
impl Coord {
    pub const fn new(x: f64, y: f64) -> Self {
        Coord { x, y }
    }

    pub fn sub(self, o: Coord) -> Coord {
        Coord::new(self.x - o.x, self.y - o.y)
    }

    pub fn add(self, o: Coord) -> Coord {
        Coord::new(self.x + o.x, self.y + o.y)
    }

    pub fn scale(self, s: f64) -> Coord {
        Coord::new(self.x * s, self.y * s)
    }

    pub fn dot(self, o: Coord) -> f64 {
        self.x * o.x + self.y * o.y
    }

    pub fn cross(self, o: Coord) -> f64 {
        self.x * o.y - self.y * o.x
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    /// Unit vector at polar angle `phi`.
    pub fn from_angle(phi: f64) -> Coord {
        let (s, c) = phi.sin_cos();
        Coord::new(c, s)
    }
}

/// A point of a [`PointSet`]; `id` is its position in the owning set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Point {
    pub id: usize,
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(id: usize, x: f64, y: f64) -> Self {
        Point { id, x, y }
    }

    pub fn pos(&self) -> Coord {
        Coord::new(self.x, self.y)
    }
}

/// Ordered set of pairwise distinct, finite points with contiguous ids.
#[derive(Clone, Debug, PartialEq)]
pub struct PointSet {
    points: Vec<Point>,
}

impl PointSet {
    /// Builds a point set, assigning ids in input order.
    pub fn new(coords: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let points: Vec<Point> = coords
            .into_iter()
            .enumerate()
            .map(|(id, (x, y))| Point::new(id, x, y))
            .collect();
        if let Some(p) = points.iter().find(|p| !p.x.is_finite() || !p.y.is_finite()) {
            return Err(Error::NonFinite(p.id));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .x
                .total_cmp(&points[b].x)
                .then(points[a].y.total_cmp(&points[b].y))
                .then(a.cmp(&b))
        });
        for w in order.windows(2) {
            let (p, q) = (&points[w[0]], &points[w[1]]);
            if p.x == q.x && p.y == q.y {
                return Err(Error::DuplicatePoint(p.id.min(q.id), p.id.max(q.id)));
            }
        }
        Ok(PointSet { points })
    }

    pub fn from_coords(coords: &[Coord]) -> Result<Self> {
        Self::new(coords.iter().map(|c| (c.x, c.y)))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn get(&self, id: usize) -> Result<&Point> {
        self.points
            .get(id)
            .ok_or(Error::InvalidId(id, self.points.len()))
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn coords(&self) -> Vec<Coord> {
        self.points.iter().map(Point::pos).collect()
    }

    /// Length of the bounding-box diagonal; 0 for fewer than two points.
    pub fn extent(&self) -> f64 {
        bounding_box(&self.coords())
            .map(|(lo, hi)| hi.sub(lo).norm())
            .unwrap_or(0.0)
    }
}

impl std::ops::Index<usize> for PointSet {
    type Output = Point;

    fn index(&self, id: usize) -> &Point {
        &self.points[id]
    }
}

pub(crate) fn bounding_box(coords: &[Coord]) -> Option<(Coord, Coord)> {
    let first = coords.first()?;
    let mut lo = *first;
    let mut hi = *first;
    for c in coords {
        lo.x = lo.x.min(c.x);
        lo.y = lo.y.min(c.y);
        hi.x = hi.x.max(c.x);
        hi.y = hi.y.max(c.y);
    }
    Some((lo, hi))
}

/// Polar angle of `v` normalized to `[0, 2π)`.
pub fn polar_angle(v: Coord) -> f64 {
    let mut phi = v.y.atan2(v.x);
    if phi < 0.0 {
        phi += TAU;
    }
    if phi >= TAU {
        phi -= TAU;
    }
    phi
}

/// The partition of the plane into `k` equiangular half-open cones.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ConeSystem {
    k: usize,
    theta: f64,
}

impl ConeSystem {
    pub fn new(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidConeCount(
                k,
                "at least two cones are required",
            ));
        }
        Ok(ConeSystem {
            k,
            theta: TAU / k as f64,
        })
    }

    /// The six-cone system the Theta-Theta results are stated for.
    pub fn six() -> Self {
        ConeSystem::new(6).expect("k=6 is valid")
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cone aperture `2π/k`.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Angle of the clockwise bounding ray of cone `i`.
    pub fn lower_ray_angle(&self, i: usize) -> f64 {
        (i - 1) as f64 * self.theta
    }

    /// Angle of the counterclockwise bounding ray of cone `i`.
    pub fn upper_ray_angle(&self, i: usize) -> f64 {
        i as f64 * self.theta
    }

    pub fn bisector_angle(&self, i: usize) -> f64 {
        (i as f64 - 0.5) * self.theta
    }

    /// Index of the cone opposite to `i`, for even `k`.
    pub fn opposite(&self, i: usize) -> usize {
        (i - 1 + self.k / 2) % self.k + 1
    }

    /// Cone containing the direction `v`, or `None` for the zero vector.
    pub fn cone_of_direction(&self, v: Coord) -> Option<usize> {
        if v.x == 0.0 && v.y == 0.0 {
            return None;
        }
        let phi = polar_angle(v);
        let q = phi / self.theta;
        let r = q.round();
        let idx = if (phi - r * self.theta).abs() <= ANGLE_EPS {
            r as usize
        } else {
            q.floor() as usize
        };
        Some(idx % self.k + 1)
    }

    /// Index `i` of the cone `C_i(u)` that contains `v`.
    pub fn cone_index(&self, u: &Point, v: &Point) -> Result<usize> {
        self.cone_of_direction(v.pos().sub(u.pos()))
            .ok_or(Error::DegenerateDirection(u.id, v.id))
    }

    /// Distance from `u` to the orthogonal projection of `v` onto the
    /// bisector of the cone at `u` containing `v`.
    pub fn projective_distance(&self, u: &Point, v: &Point) -> Result<f64> {
        let i = self.cone_index(u, v)?;
        Ok(self.projection_in_cone(u.pos(), v.pos(), i))
    }

    /// Projection of `v - u` onto the bisector of cone `i`; the caller
    /// guarantees `v` lies in `C_i(u)`.
    pub(crate) fn projection_in_cone(&self, u: Coord, v: Coord, i: usize) -> f64 {
        let b = Coord::from_angle(self.bisector_angle(i));
        v.sub(u).dot(b).max(0.0)
    }

    /// Canonical triangle `T(a, b)`: bounded by the rays of `C(a, b)` and the
    /// line through `b` perpendicular to that cone's bisector.
    pub fn canonical_triangle(&self, a: &Point, b: &Point) -> Result<CanonicalTriangle> {
        if self.k < 3 {
            return Err(Error::InvalidConeCount(
                self.k,
                "canonical triangles need cones narrower than a half-plane",
            ));
        }
        let cone = self.cone_index(a, b)?;
        let height = self.projection_in_cone(a.pos(), b.pos(), cone);
        let side = height / (self.theta / 2.0).cos();
        let apex = a.pos();
        let right = apex.add(Coord::from_angle(self.lower_ray_angle(cone)).scale(side));
        let left = apex.add(Coord::from_angle(self.upper_ray_angle(cone)).scale(side));
        Ok(CanonicalTriangle {
            apex: *a,
            target: *b,
            cone,
            corners: [apex, right, left],
        })
    }
}

/// The triangle `T(apex, target)`, corners in counterclockwise order
/// starting at the apex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CanonicalTriangle {
    pub apex: Point,
    pub target: Point,
    pub cone: usize,
    pub corners: [Coord; 3],
}

impl CanonicalTriangle {
    /// Closed containment: points on the boundary count as inside.
    pub fn contains(&self, p: Coord) -> bool {
        let [a, b, c] = self.corners;
        let scale = b.sub(a).norm().max(c.sub(a).norm());
        let tol = ORIENT_EPS * scale * scale;
        orient(a, b, p) >= -tol && orient(b, c, p) >= -tol && orient(c, a, p) >= -tol
    }

    /// Strict containment with the same tolerance, inverted.
    pub fn contains_strictly(&self, p: Coord) -> bool {
        let [a, b, c] = self.corners;
        let scale = b.sub(a).norm().max(c.sub(a).norm());
        let tol = ORIENT_EPS * scale * scale;
        orient(a, b, p) > tol && orient(b, c, p) > tol && orient(c, a, p) > tol
    }
}

/// True iff no point of `s` other than the triangle's apex and target lies in
/// the closed triangle.
pub fn triangle_is_empty(t: &CanonicalTriangle, s: &PointSet) -> bool {
    s.iter()
        .filter(|p| p.id != t.apex.id && p.id != t.target.id)
        .all(|p| !t.contains(p.pos()))
}

pub fn euclidean_distance(u: &Point, v: &Point) -> f64 {
    v.pos().sub(u.pos()).norm()
}

/// Twice the signed area of triangle `abc` (positive when counterclockwise).
pub fn orient(a: Coord, b: Coord, c: Coord) -> f64 {
    b.sub(a).cross(c.sub(a))
}

/// True iff segments `ab` and `cd` share a point that is not an endpoint of
/// either. Collinear segments overlapping in more than one point cross.
pub fn segments_cross(a: Coord, b: Coord, c: Coord, d: Coord) -> bool {
    let scale = b.sub(a).norm().max(d.sub(c).norm());
    let tol = ORIENT_EPS * scale * scale;
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    if o1.abs() <= tol && o2.abs() <= tol {
        let dir = b.sub(a);
        let len2 = dir.dot(dir);
        let tc = c.sub(a).dot(dir) / len2;
        let td = d.sub(a).dot(dir) / len2;
        let lo = tc.min(td).max(0.0);
        let hi = tc.max(td).min(1.0);
        return hi - lo > ORIENT_EPS;
    }
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    let opposite = |p: f64, q: f64| (p > tol && q < -tol) || (p < -tol && q > tol);
    opposite(o1, o2) && opposite(o3, o4)
}

/// True iff no direction between two points of `s` is parallel to a
/// cone-bounding ray of `sys`.
pub fn is_general_position(s: &PointSet, sys: &ConeSystem) -> bool {
    let pts = s.points();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            let phi = polar_angle(q.pos().sub(p.pos()));
            for angle in [phi, (phi + PI) % TAU] {
                let r = (angle / sys.theta()).round();
                if (angle - r * sys.theta()).abs() <= ANGLE_EPS {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff every point is a vertex of the convex hull; points in the
/// interior of a hull edge disqualify. Sets with fewer than three points are
/// in convex position by convention.
pub fn is_convex_position(s: &PointSet) -> bool {
    let n = s.len();
    if n < 3 {
        return true;
    }
    convex_hull(&s.coords()).len() == n
}

/// Indices of the strict convex hull (collinear points dropped), in
/// counterclockwise order.
pub fn convex_hull(coords: &[Coord]) -> Vec<usize> {
    let n = coords.len();
    if n < 3 {
        return (0..n).collect();
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        coords[a]
            .x
            .total_cmp(&coords[b].x)
            .then(coords[a].y.total_cmp(&coords[b].y))
    });
    let extent = bounding_box(coords)
        .map(|(lo, hi)| hi.sub(lo).norm())
        .unwrap_or(0.0);
    let tol = ORIENT_EPS * extent * extent;
    let mut hull: Vec<usize> = Vec::with_capacity(2 * n);
    let push = |hull: &mut Vec<usize>, idx: usize, floor: usize| {
        while hull.len() >= floor + 2 {
            let m = hull.len();
            if orient(coords[hull[m - 2]], coords[hull[m - 1]], coords[idx]) <= tol {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(idx);
    };
    for &idx in &order {
        push(&mut hull, idx, 0);
    }
    let lower_len = hull.len() - 1;
    for &idx in order.iter().rev().skip(1) {
        push(&mut hull, idx, lower_len);
    }
    hull.pop();
    hull
}
