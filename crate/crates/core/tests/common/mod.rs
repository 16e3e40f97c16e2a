//! Test-side oracles, written independently of the library code paths.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::TAU;

use cone_spanner::PointSet;

pub type Pt = (f64, f64);

pub fn coords(s: &PointSet) -> Vec<Pt> {
    s.iter().map(|p| (p.x, p.y)).collect()
}

/// Cone of `q` seen from `p`, 1-based. Only valid away from cone boundaries.
pub fn cone_of(p: Pt, q: Pt, k: usize) -> usize {
    let phi = (q.1 - p.1).atan2(q.0 - p.0).rem_euclid(TAU);
    ((phi / (TAU / k as f64)).floor() as usize).min(k - 1) + 1
}

pub fn dist(p: Pt, q: Pt) -> f64 {
    (q.0 - p.0).hypot(q.1 - p.1)
}

/// Length of the projection of `q - p` onto the bisector of its cone.
pub fn proj(p: Pt, q: Pt, k: usize) -> f64 {
    let theta = TAU / k as f64;
    let bis = (cone_of(p, q, k) as f64 - 0.5) * theta;
    (q.0 - p.0) * bis.cos() + (q.1 - p.1) * bis.sin()
}

/// Per-cone nearest neighbour by exhaustive scan.
pub fn nearest(pts: &[Pt], k: usize, projective: bool) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for (u, &p) in pts.iter().enumerate() {
        for cone in 1..=k {
            let best = (0..pts.len())
                .filter(|&v| v != u && cone_of(p, pts[v], k) == cone)
                .map(|v| {
                    let m = if projective {
                        proj(p, pts[v], k)
                    } else {
                        dist(p, pts[v])
                    };
                    (m, v)
                })
                .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
            if let Some((_, v)) = best {
                out.insert((u, v));
            }
        }
    }
    out
}

/// Keeps, per head and per head-side cone, the shortest incoming edge.
pub fn filter(
    pts: &[Pt],
    edges: &BTreeSet<(usize, usize)>,
    k: usize,
    projective: bool,
) -> BTreeSet<(usize, usize)> {
    let mut best: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
    for &(s, d) in edges {
        let m = if projective {
            proj(pts[s], pts[d], k)
        } else {
            dist(pts[s], pts[d])
        };
        let key = (d, cone_of(pts[d], pts[s], k));
        let slot = best.entry(key).or_insert((m, s));
        if m < slot.0 || (m == slot.0 && s < slot.1) {
            *slot = (m, s);
        }
    }
    best.into_iter().map(|((d, _), (_, s))| (s, d)).collect()
}

/// All-pairs distances by Floyd–Warshall over Euclidean edge weights.
pub fn apsp(pts: &[Pt], edges: &BTreeSet<(usize, usize)>, directed: bool) -> Vec<Vec<f64>> {
    let n = pts.len();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for &(s, t) in edges {
        let w = dist(pts[s], pts[t]);
        d[s][t] = d[s][t].min(w);
        if !directed {
            d[t][s] = d[t][s].min(w);
        }
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                let via = d[i][m] + d[m][j];
                if via < d[i][j] {
                    d[i][j] = via;
                }
            }
        }
    }
    d
}

/// Undirected spanning ratio over unordered pairs.
pub fn ratio(pts: &[Pt], edges: &BTreeSet<(usize, usize)>) -> f64 {
    let d = apsp(pts, edges, false);
    let mut worst: f64 = 0.0;
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            worst = worst.max(d[i][j] / dist(pts[i], pts[j]));
        }
    }
    worst
}

pub fn undirected(edges: &BTreeSet<(usize, usize)>) -> BTreeSet<(usize, usize)> {
    edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect()
}

/// Proper crossing test for segments `ab` and `cd` by sign of orientation.
pub fn proper_cross(a: Pt, b: Pt, c: Pt, d: Pt) -> bool {
    let o = |p: Pt, q: Pt, r: Pt| (q.0 - p.0) * (r.1 - p.1) - (q.1 - p.1) * (r.0 - p.0);
    let (d1, d2) = (o(a, b, c), o(a, b, d));
    let (d3, d4) = (o(c, d, a), o(c, d, b));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

pub fn crossings(pts: &[Pt], edges: &BTreeSet<(usize, usize)>) -> usize {
    let segs: Vec<(usize, usize)> = undirected(edges).into_iter().collect();
    let mut count = 0;
    for (i, &(a, b)) in segs.iter().enumerate() {
        for &(c, d) in &segs[i + 1..] {
            if a == c || a == d || b == c || b == d {
                continue;
            }
            if proper_cross(pts[a], pts[b], pts[c], pts[d]) {
                count += 1;
            }
        }
    }
    count
}
