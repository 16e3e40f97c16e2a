//! JSON graph documents, optionally carrying analysis results.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::analysis::{degree_stats, per_edge_stretch, spanning_ratio, DegreeStats, Directedness};
use crate::constructions::LabeledPointSet;
use crate::error::{Error, Result};
use crate::geometry::{ConeSystem, Coord, PointSet};
use crate::graph::{build_theta, ConeGraph, DirectedEdge, Family};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphReport {
    pub family: Family,
    pub k: usize,
    pub n: usize,
    pub points: Vec<Coord>,
    pub labels: Vec<Option<String>>,
    /// Sorted by `(src, cone)`.
    pub edges: Vec<DirectedEdge>,
    pub tie_events: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub analysis: Option<AnalysisSection>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AnalysisSection {
    pub directedness: Directedness,
    /// `None` when some pair is disconnected.
    pub ratio: Option<f64>,
    pub witness_src: usize,
    pub witness_dst: usize,
    pub witness_path: Vec<usize>,
    pub disconnected_pairs: usize,
    pub degrees: DegreeStats,
    pub crossing_count: usize,
    /// Largest per-edge stretch of a Theta-Theta graph against the Theta
    /// graph it was filtered from.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_edge_stretch: Option<EdgeStretchSummary>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeStretchSummary {
    pub src: usize,
    pub dst: usize,
    /// `None` when the endpoints are disconnected.
    pub stretch: Option<f64>,
}

fn finite(v: f64) -> Option<f64> {
    v.is_finite().then_some(v)
}

impl GraphReport {
    pub fn from_graph(g: &ConeGraph, labels: &[Option<String>]) -> Self {
        let mut labels = labels.to_vec();
        labels.resize(g.n(), None);
        GraphReport {
            family: g.family(),
            k: g.sys().k(),
            n: g.n(),
            points: g.points().coords(),
            labels,
            edges: g.edges().to_vec(),
            tie_events: g.tie_events(),
            analysis: None,
        }
    }

    /// Rebuilds the graph and checks the stored annotations against the
    /// coordinates.
    pub fn to_graph(&self) -> Result<ConeGraph> {
        if self.points.len() != self.n || self.labels.len() != self.n {
            return Err(Error::Graph(format!(
                "n = {} but {} points and {} labels",
                self.n,
                self.points.len(),
                self.labels.len()
            )));
        }
        let points = PointSet::from_coords(&self.points)?;
        let sys = ConeSystem::new(self.k)?;
        let g = ConeGraph::from_edges(
            points,
            sys,
            self.family,
            self.edges.iter().map(|e| (e.src, e.dst)),
            self.tie_events,
        )?;
        let mut stored = self.edges.clone();
        stored.sort_by_key(|e| (e.src, e.cone, e.dst));
        for (have, want) in stored.iter().zip(g.edges()) {
            if have.cone != want.cone {
                return Err(Error::Graph(format!(
                    "edge {} -> {} is stored in cone {} but lies in cone {}",
                    have.src, have.dst, have.cone, want.cone
                )));
            }
        }
        Ok(g)
    }

    pub fn labeled_points(&self) -> Result<LabeledPointSet> {
        Ok(LabeledPointSet {
            points: PointSet::from_coords(&self.points)?,
            labels: self.labels.clone(),
        })
    }

    /// Attaches stretch, degree and crossing diagnostics.
    pub fn analyze(&mut self, dir: Directedness) -> Result<()> {
        let g = self.to_graph()?;
        let stretch = spanning_ratio(&g, dir)?;
        let max_edge_stretch = if g.family() == Family::ThetaTheta {
            let base = build_theta(g.points(), g.sys());
            per_edge_stretch(&base, &g)?
                .max()
                .map(|m| EdgeStretchSummary {
                    src: m.edge.src,
                    dst: m.edge.dst,
                    stretch: finite(m.stretch),
                })
        } else {
            None
        };
        self.analysis = Some(AnalysisSection {
            directedness: dir,
            ratio: finite(stretch.ratio),
            witness_src: stretch.witness_src,
            witness_dst: stretch.witness_dst,
            witness_path: stretch.witness_path,
            disconnected_pairs: stretch.disconnected_pairs,
            degrees: degree_stats(&g),
            crossing_count: stretch.crossing_count,
            max_edge_stretch,
        });
        Ok(())
    }

    pub fn to_json(&self) -> Result<String> {
        let mut s = serde_json::to_string_pretty(self)?;
        s.push('\n');
        Ok(s)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }
}
