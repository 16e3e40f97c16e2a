//! Shortest paths and spanner diagnostics.
//!
//! Edge weights are Euclidean lengths. Distances default to the undirected
//! reading of a graph, where every directed edge may be traversed both ways.

use std::cmp::{Ordering, Reverse};
use std::collections::{BTreeSet, BinaryHeap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{euclidean_distance, segments_cross};
use crate::graph::{ConeGraph, DirectedEdge, Family};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Directedness {
    Directed,
    #[default]
    Undirected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PathQueryResult {
    pub length: f64,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct StretchReport {
    /// `max d_G(u,v) / |uv|`, or infinity when some pair is disconnected.
    pub ratio: f64,
    pub witness_src: usize,
    pub witness_dst: usize,
    /// Empty when the witness pair is disconnected.
    pub witness_path: Vec<usize>,
    pub max_degree: usize,
    pub crossing_count: usize,
    pub disconnected_pairs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DegreeStats {
    pub max_out: usize,
    pub max_in: usize,
    pub max_total: usize,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeStretch {
    pub edge: DirectedEdge,
    pub stretch: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PerEdgeStretch {
    pub entries: Vec<EdgeStretch>,
    /// Index into `entries` of the maximal stretch.
    pub max_index: Option<usize>,
}

impl PerEdgeStretch {
    pub fn max(&self) -> Option<&EdgeStretch> {
        self.max_index.map(|i| &self.entries[i])
    }
}

#[derive(Clone, Copy, PartialEq)]
struct Dist(f64);

impl Eq for Dist {}

impl PartialOrd for Dist {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dist {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

/// Adjacency lists with Euclidean weights.
pub struct WeightedAdjacency {
    adj: Vec<Vec<(usize, f64)>>,
}

impl WeightedAdjacency {
    pub fn new(g: &ConeGraph, dir: Directedness) -> Self {
        let mut adj = vec![Vec::new(); g.n()];
        for e in g.edges() {
            adj[e.src].push((e.dst, e.euclid));
            if dir == Directedness::Undirected {
                adj[e.dst].push((e.src, e.euclid));
            }
        }
        for list in &mut adj {
            list.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
            list.dedup_by_key(|x| x.0);
        }
        WeightedAdjacency { adj }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    /// Single-source distances and predecessors; unreachable vertices get
    /// `f64::INFINITY`.
    pub fn dijkstra(&self, source: usize) -> (Vec<f64>, Vec<Option<usize>>) {
        let n = self.adj.len();
        let mut dist = vec![f64::INFINITY; n];
        let mut pred = vec![None; n];
        let mut heap = BinaryHeap::new();
        dist[source] = 0.0;
        heap.push(Reverse((Dist(0.0), source)));
        while let Some(Reverse((Dist(d), u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &(v, w) in &self.adj[u] {
                let nd = d + w;
                if nd < dist[v] {
                    dist[v] = nd;
                    pred[v] = Some(u);
                    heap.push(Reverse((Dist(nd), v)));
                }
            }
        }
        (dist, pred)
    }
}

fn unwind(pred: &[Option<usize>], source: usize, target: usize) -> Vec<usize> {
    let mut path = vec![target];
    let mut cur = target;
    while cur != source {
        cur = pred[cur].expect("target was reached");
        path.push(cur);
    }
    path.reverse();
    path
}

/// Sum of Euclidean lengths along a vertex sequence.
pub fn path_length(g: &ConeGraph, vertices: &[usize]) -> f64 {
    let p = g.points();
    vertices
        .windows(2)
        .map(|w| euclidean_distance(&p[w[0]], &p[w[1]]))
        .sum()
}

/// Shortest weighted path from `u` to `v`, or `None` if `v` is unreachable.
pub fn shortest_path(
    g: &ConeGraph,
    u: usize,
    v: usize,
    dir: Directedness,
) -> Result<Option<PathQueryResult>> {
    g.points().get(u)?;
    g.points().get(v)?;
    let adj = WeightedAdjacency::new(g, dir);
    let (dist, pred) = adj.dijkstra(u);
    if dist[v].is_infinite() {
        return Ok(None);
    }
    let vertices = unwind(&pred, u, v);
    Ok(Some(PathQueryResult {
        length: path_length(g, &vertices),
        vertices,
    }))
}

#[derive(Clone, Copy)]
struct Best {
    ratio: f64,
    src: usize,
    dst: usize,
}

impl Best {
    // Larger ratio wins; equal ratios go to the lexicographically smaller pair.
    fn better(self, other: Best) -> Best {
        match self.ratio.total_cmp(&other.ratio) {
            Ordering::Greater => self,
            Ordering::Less => other,
            Ordering::Equal => {
                if (self.src, self.dst) <= (other.src, other.dst) {
                    self
                } else {
                    other
                }
            }
        }
    }
}

struct SourceSummary {
    best: Option<Best>,
    disconnected: usize,
    first_disconnected: Option<(usize, usize)>,
}

/// Exact spanning ratio over all pairs (ordered pairs when directed), with
/// the maximizing pair and its shortest path.
pub fn spanning_ratio(g: &ConeGraph, dir: Directedness) -> Result<StretchReport> {
    let n = g.n();
    if n < 2 {
        return Err(Error::InvalidParameter(
            "spanning ratio needs at least two points".into(),
        ));
    }
    let adj = WeightedAdjacency::new(g, dir);
    let pts = g.points();
    let summaries: Vec<SourceSummary> = (0..n)
        .into_par_iter()
        .map(|s| {
            let (dist, _) = adj.dijkstra(s);
            let mut best: Option<Best> = None;
            let mut disconnected = 0;
            let mut first_disconnected = None;
            let targets: Box<dyn Iterator<Item = usize>> = match dir {
                Directedness::Undirected => Box::new(s + 1..n),
                Directedness::Directed => Box::new((0..n).filter(move |&t| t != s)),
            };
            for t in targets {
                if dist[t].is_infinite() {
                    disconnected += 1;
                    first_disconnected.get_or_insert((s, t));
                    continue;
                }
                let cand = Best {
                    ratio: dist[t] / euclidean_distance(&pts[s], &pts[t]),
                    src: s,
                    dst: t,
                };
                best = Some(best.map_or(cand, |b| b.better(cand)));
            }
            SourceSummary {
                best,
                disconnected,
                first_disconnected,
            }
        })
        .collect();

    let disconnected: usize = summaries.iter().map(|s| s.disconnected).sum();
    let degrees = degree_stats(g);
    let crossings = crossing_count(g);
    if disconnected > 0 {
        let (src, dst) = summaries
            .iter()
            .find_map(|s| s.first_disconnected)
            .expect("some pair is disconnected");
        return Ok(StretchReport {
            ratio: f64::INFINITY,
            witness_src: src,
            witness_dst: dst,
            witness_path: Vec::new(),
            max_degree: degrees.max_total,
            crossing_count: crossings,
            disconnected_pairs: disconnected,
        });
    }
    let best = summaries
        .iter()
        .filter_map(|s| s.best)
        .reduce(Best::better)
        .expect("n >= 2 gives at least one pair");
    let (_, pred) = adj.dijkstra(best.src);
    let path = unwind(&pred, best.src, best.dst);
    Ok(StretchReport {
        ratio: best.ratio,
        witness_src: best.src,
        witness_dst: best.dst,
        witness_path: path,
        max_degree: degrees.max_total,
        crossing_count: crossings,
        disconnected_pairs: 0,
    })
}

/// For every edge `a → b` of `base`, the undirected distance between `a` and
/// `b` in `filtered` relative to `|ab|`.
pub fn per_edge_stretch(base: &ConeGraph, filtered: &ConeGraph) -> Result<PerEdgeStretch> {
    if base.points() != filtered.points() || base.sys() != filtered.sys() {
        return Err(Error::MismatchedGraphs);
    }
    if base.family() != Family::Theta {
        return Err(Error::FamilyMismatch {
            expected: Family::Theta,
            got: base.family(),
        });
    }
    if filtered.family() != Family::ThetaTheta {
        return Err(Error::FamilyMismatch {
            expected: Family::ThetaTheta,
            got: filtered.family(),
        });
    }
    let adj = WeightedAdjacency::new(filtered, Directedness::Undirected);
    let sources: BTreeSet<usize> = base.edges().iter().map(|e| e.src).collect();
    let dists: Vec<(usize, Vec<f64>)> = sources
        .into_par_iter()
        .map(|s| (s, adj.dijkstra(s).0))
        .collect();
    let mut entries = Vec::with_capacity(base.edges().len());
    let mut di = 0;
    for e in base.edges() {
        while dists[di].0 != e.src {
            di += 1;
        }
        entries.push(EdgeStretch {
            edge: *e,
            stretch: dists[di].1[e.dst] / e.euclid,
        });
    }
    let max_index = entries
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.stretch.total_cmp(&b.1.stretch).then(b.0.cmp(&a.0)))
        .map(|(i, _)| i);
    Ok(PerEdgeStretch { entries, max_index })
}

/// Number of unordered pairs of (undirected, deduplicated) edges that cross.
pub fn crossing_count(g: &ConeGraph) -> usize {
    let pts = g.points();
    let segs: Vec<(usize, usize)> = g.undirected_edge_set().into_iter().collect();
    (0..segs.len())
        .into_par_iter()
        .map(|i| {
            let (a, b) = segs[i];
            segs[i + 1..]
                .iter()
                .filter(|&&(c, d)| {
                    segments_cross(pts[a].pos(), pts[b].pos(), pts[c].pos(), pts[d].pos())
                })
                .count()
        })
        .sum()
}

/// Maximum out-, in- and total (in + out) degree over all vertices.
pub fn degree_stats(g: &ConeGraph) -> DegreeStats {
    let mut out = vec![0usize; g.n()];
    let mut inc = vec![0usize; g.n()];
    for e in g.edges() {
        out[e.src] += 1;
        inc[e.dst] += 1;
    }
    DegreeStats {
        max_out: out.iter().copied().max().unwrap_or(0),
        max_in: inc.iter().copied().max().unwrap_or(0),
        max_total: out.iter().zip(&inc).map(|(a, b)| a + b).max().unwrap_or(0),
    }
}

/// Dense all-pairs distances by Floyd–Warshall. Cubic; serves as the
/// reference the Dijkstra engine is checked against.
pub fn floyd_warshall(g: &ConeGraph, dir: Directedness) -> Vec<Vec<f64>> {
    let n = g.n();
    let mut d = vec![vec![f64::INFINITY; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0.0;
    }
    for e in g.edges() {
        d[e.src][e.dst] = d[e.src][e.dst].min(e.euclid);
        if dir == Directedness::Undirected {
            d[e.dst][e.src] = d[e.dst][e.src].min(e.euclid);
        }
    }
    for k in 0..n {
        let row_k = d[k].clone();
        for row in d.iter_mut() {
            let dik = row[k];
            if dik.is_infinite() {
                continue;
            }
            for (dij, dkj) in row.iter_mut().zip(&row_k) {
                let cand = dik + dkj;
                if cand < *dij {
                    *dij = cand;
                }
            }
        }
    }
    d
}

/// All-pairs distances by one Dijkstra per source.
pub fn all_pairs_dijkstra(g: &ConeGraph, dir: Directedness) -> Vec<Vec<f64>> {
    let adj = WeightedAdjacency::new(g, dir);
    (0..g.n())
        .into_par_iter()
        .map(|s| adj.dijkstra(s).0)
        .collect()
}

/// Spanning ratio read off a dense distance matrix.
pub fn ratio_from_matrix(g: &ConeGraph, d: &[Vec<f64>], dir: Directedness) -> f64 {
    let pts = g.points();
    let mut best = 0.0f64;
    for (s, row) in d.iter().enumerate() {
        for (t, &dist) in row.iter().enumerate() {
            if s == t || (dir == Directedness::Undirected && t < s) {
                continue;
            }
            best = best.max(dist / euclidean_distance(&pts[s], &pts[t]));
        }
    }
    best
}
