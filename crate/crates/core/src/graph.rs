//! Construction of Yao and Theta graphs and their filtered variants.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{euclidean_distance, ConeSystem, PointSet};

/// Relative tolerance under which two candidate distances are a tie.
pub const TIE_RTOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    #[serde(rename = "yao")]
    Yao,
    #[serde(rename = "theta")]
    Theta,
    #[serde(rename = "yaoyao")]
    YaoYao,
    #[serde(rename = "thetatheta")]
    ThetaTheta,
    #[serde(rename = "half-theta-odd")]
    HalfThetaOdd,
    #[serde(rename = "half-theta-even")]
    HalfThetaEven,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::Yao,
        Family::Theta,
        Family::YaoYao,
        Family::ThetaTheta,
        Family::HalfThetaOdd,
        Family::HalfThetaEven,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Yao => "yao",
            Family::Theta => "theta",
            Family::YaoYao => "yaoyao",
            Family::ThetaTheta => "thetatheta",
            Family::HalfThetaOdd => "half-theta-odd",
            Family::HalfThetaEven => "half-theta-even",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown graph family '{s}'")))
    }
}

/// Which half of `Θ_6` to keep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

#[derive(Clone, Copy, Debug, PartialEq)]
enum Metric {
    Euclidean,
    Projective,
}

/// A directed edge `src → dst`, with both distances measured at `src` in the
/// cone `C_cone(src)` that contains `dst`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectedEdge {
    pub src: usize,
    pub dst: usize,
    pub cone: usize,
    pub euclid: f64,
    pub projective: f64,
}

impl DirectedEdge {
    fn between(points: &PointSet, sys: &ConeSystem, src: usize, dst: usize) -> Result<Self> {
        let (u, v) = (points.get(src)?, points.get(dst)?);
        let cone = sys.cone_index(u, v)?;
        Ok(DirectedEdge {
            src,
            dst,
            cone,
            euclid: euclidean_distance(u, v),
            projective: sys.projection_in_cone(u.pos(), v.pos(), cone),
        })
    }
}

/// A directed geometric graph produced by one of the cone constructions.
///
/// Edges are kept sorted by `(src, cone)`.
#[derive(Clone, Debug)]
pub struct ConeGraph {
    points: PointSet,
    sys: ConeSystem,
    family: Family,
    edges: Vec<DirectedEdge>,
    tie_events: usize,
}

impl ConeGraph {
    /// Reassembles a graph from a stored edge list, recomputing the edge
    /// annotations from the coordinates.
    pub fn from_edges(
        points: PointSet,
        sys: ConeSystem,
        family: Family,
        pairs: impl IntoIterator<Item = (usize, usize)>,
        tie_events: usize,
    ) -> Result<Self> {
        let mut edges = pairs
            .into_iter()
            .map(|(s, d)| DirectedEdge::between(&points, &sys, s, d))
            .collect::<Result<Vec<_>>>()?;
        edges.sort_by_key(|e| (e.src, e.cone, e.dst));
        Ok(ConeGraph {
            points,
            sys,
            family,
            edges,
            tie_events,
        })
    }

    pub fn points(&self) -> &PointSet {
        &self.points
    }

    pub fn sys(&self) -> &ConeSystem {
        &self.sys
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn edges(&self) -> &[DirectedEdge] {
        &self.edges
    }

    pub fn tie_events(&self) -> usize {
        self.tie_events
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn edges_from(&self, src: usize) -> &[DirectedEdge] {
        let lo = self.edges.partition_point(|e| e.src < src);
        let hi = self.edges.partition_point(|e| e.src <= src);
        &self.edges[lo..hi]
    }

    pub fn out_edge(&self, src: usize, cone: usize) -> Option<&DirectedEdge> {
        self.edges_from(src).iter().find(|e| e.cone == cone)
    }

    pub fn contains(&self, src: usize, dst: usize) -> bool {
        self.edges_from(src).iter().any(|e| e.dst == dst)
    }

    /// Directed `(src, dst)` pairs.
    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().map(|e| (e.src, e.dst)).collect()
    }

    /// Undirected edges as `(min, max)` id pairs.
    pub fn undirected_edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges
            .iter()
            .map(|e| (e.src.min(e.dst), e.src.max(e.dst)))
            .collect()
    }
}

/// `Θ_k`: per vertex and cone, an edge to the point minimizing the projective
/// distance. Ties go to the smallest id.
pub fn build_theta(s: &PointSet, sys: &ConeSystem) -> ConeGraph {
    build_nearest(s, sys, Metric::Projective, Family::Theta)
}

/// `Y_k`: per vertex and cone, an edge to the Euclidean nearest point.
pub fn build_yao(s: &PointSet, sys: &ConeSystem) -> ConeGraph {
    build_nearest(s, sys, Metric::Euclidean, Family::Yao)
}

fn build_nearest(s: &PointSet, sys: &ConeSystem, metric: Metric, family: Family) -> ConeGraph {
    let per_vertex: Vec<(Vec<DirectedEdge>, usize)> = (0..s.len())
        .into_par_iter()
        .map(|a| nearest_per_cone(s, sys, a, metric))
        .collect();
    let mut edges = Vec::new();
    let mut tie_events = 0;
    for (es, ties) in per_vertex {
        edges.extend(es);
        tie_events += ties;
    }
    ConeGraph {
        points: s.clone(),
        sys: *sys,
        family,
        edges,
        tie_events,
    }
}

/// Returns true when `candidate` should replace `best`, and whether the two
/// were tied.
fn improves(candidate: f64, best: f64) -> (bool, bool) {
    let tol = TIE_RTOL * candidate.max(best);
    if candidate < best - tol {
        (true, false)
    } else {
        (false, candidate <= best + tol)
    }
}

fn nearest_per_cone(
    s: &PointSet,
    sys: &ConeSystem,
    a: usize,
    metric: Metric,
) -> (Vec<DirectedEdge>, usize) {
    let apex = s[a].pos();
    let mut best: Vec<Option<(f64, usize)>> = vec![None; sys.k()];
    let mut ties = 0;
    for q in s.iter().filter(|q| q.id != a) {
        let cone = sys
            .cone_of_direction(q.pos().sub(apex))
            .expect("point set has no coincident points");
        let m = match metric {
            Metric::Euclidean => q.pos().sub(apex).norm(),
            Metric::Projective => sys.projection_in_cone(apex, q.pos(), cone),
        };
        let slot = &mut best[cone - 1];
        match *slot {
            None => *slot = Some((m, q.id)),
            Some((bm, _)) => {
                let (replace, tie) = improves(m, bm);
                if replace {
                    *slot = Some((m, q.id));
                } else if tie {
                    ties += 1;
                }
            }
        }
    }
    let edges = best
        .iter()
        .flatten()
        .map(|&(_, b)| DirectedEdge::between(s, sys, a, b).expect("ids are valid and distinct"))
        .collect();
    (edges, ties)
}

/// Keeps, for every vertex `a` and cone `C_i(a)`, only the shortest incoming
/// edge whose tail lies in `C_i(a)`. Turns `Y_k` into `YY_k` and `Θ_k` into
/// `ΘΘ_k`.
///
/// For Theta input the length of `b → a` is the projective distance measured
/// at the tail, in `C(b, a)`. For even `k` this equals the measurement at the
/// head.
pub fn filter_incoming(g: &ConeGraph) -> Result<ConeGraph> {
    let (family, use_projective) = match g.family {
        Family::Yao => (Family::YaoYao, false),
        Family::Theta => (Family::ThetaTheta, true),
        other => return Err(Error::FilterFamily(other)),
    };
    let mut winners: BTreeMap<(usize, usize), (f64, usize)> = BTreeMap::new();
    let mut ties = 0;
    for (idx, e) in g.edges.iter().enumerate() {
        let head = &g.points[e.dst];
        let tail = &g.points[e.src];
        let cone_at_head = g.sys.cone_index(head, tail)?;
        let len = if use_projective {
            e.projective
        } else {
            e.euclid
        };
        match winners.get_mut(&(e.dst, cone_at_head)) {
            None => {
                winners.insert((e.dst, cone_at_head), (len, idx));
            }
            Some(slot) => {
                // Edges are visited in ascending tail order, so keeping the
                // incumbent on a tie keeps the smallest tail id.
                let (replace, tie) = improves(len, slot.0);
                if replace {
                    *slot = (len, idx);
                } else if tie {
                    ties += 1;
                }
            }
        }
    }
    let keep: BTreeSet<usize> = winners.values().map(|&(_, idx)| idx).collect();
    let edges = keep.into_iter().map(|idx| g.edges[idx]).collect();
    Ok(ConeGraph {
        points: g.points.clone(),
        sys: g.sys,
        family,
        edges,
        tie_events: g.tie_events + ties,
    })
}

/// One of the two half-`Θ_6` graphs: the `Θ_6` edges lying in the odd cones
/// (1, 3, 5) or in the even cones (2, 4, 6).
pub fn half_theta(g: &ConeGraph, parity: Parity) -> Result<ConeGraph> {
    if g.family != Family::Theta {
        return Err(Error::FamilyMismatch {
            expected: Family::Theta,
            got: g.family,
        });
    }
    if g.sys.k() != 6 {
        return Err(Error::InvalidConeCount(
            g.sys.k(),
            "half-Theta graphs are defined for six cones only",
        ));
    }
    let (family, rem) = match parity {
        Parity::Odd => (Family::HalfThetaOdd, 1),
        Parity::Even => (Family::HalfThetaEven, 0),
    };
    Ok(ConeGraph {
        points: g.points.clone(),
        sys: g.sys,
        family,
        edges: g
            .edges
            .iter()
            .copied()
            .filter(|e| e.cone % 2 == rem)
            .collect(),
        tie_events: g.tie_events,
    })
}

/// The maximal path from `start` that repeatedly follows the outgoing edge
/// lying in cone `cone`. On a Theta graph it is monotone along the cone's
/// bisector and therefore simple.
pub fn cone_path(g: &ConeGraph, start: usize, cone: usize) -> Result<Vec<usize>> {
    g.points.get(start)?;
    if cone == 0 || cone > g.sys.k() {
        return Err(Error::InvalidParameter(format!(
            "cone index {cone} outside 1..={}",
            g.sys.k()
        )));
    }
    let mut path = vec![start];
    let mut seen = BTreeSet::from([start]);
    let mut cur = start;
    while let Some(e) = g.out_edge(cur, cone) {
        if !seen.insert(e.dst) {
            break;
        }
        path.push(e.dst);
        cur = e.dst;
    }
    Ok(path)
}
