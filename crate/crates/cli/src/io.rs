//! File formats. Coordinates travel as strings ("7", "1.25", "5/4") so
//! exactness survives serialization; plain JSON numbers would smuggle
//! floating point back in.

use std::fs;
use std::path::Path;

use anyhow::Context;
use serde::{Deserialize, Serialize};

use greedygeo::delaunay::delaunay_graph;
use greedygeo::{GeometricGraph, Point, Scalar, SiteSet};

/// A point set, optionally with edges: `{"points": [["x","y"], ...]}`
/// plus `"edges": [[i,j], ...]` (i < j) when a graph is meant.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceFile {
    pub points: Vec<(Scalar, Scalar)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<(usize, usize)>>,
}

impl InstanceFile {
    pub fn from_sites(s: &SiteSet) -> Self {
        InstanceFile {
            points: s.iter().map(|p| (p.x.clone(), p.y.clone())).collect(),
            edges: None,
        }
    }

    pub fn from_graph(g: &GeometricGraph) -> Self {
        InstanceFile {
            edges: Some(g.edges()),
            ..Self::from_sites(g.sites())
        }
    }

    pub fn sites(&self) -> anyhow::Result<SiteSet> {
        let pts = self
            .points
            .iter()
            .map(|(x, y)| Point::new(x.clone(), y.clone()))
            .collect();
        SiteSet::new(pts).context("invalid point set")
    }

    /// The described graph: the listed edges when present, the Delaunay
    /// graph of the points otherwise.
    pub fn graph(&self) -> anyhow::Result<GeometricGraph> {
        let sites = self.sites()?;
        match &self.edges {
            None => Ok(delaunay_graph(&sites)),
            Some(edges) => {
                let mut g = GeometricGraph::new(sites);
                for &(i, j) in edges {
                    g.add_edge(i, j).with_context(|| format!("bad edge [{i}, {j}]"))?;
                }
                Ok(g)
            }
        }
    }

    pub fn read(path: &Path) -> anyhow::Result<Self> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("cannot parse {}", path.display()))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("instance files serialize");
        s.push('\n');
        s
    }
}
