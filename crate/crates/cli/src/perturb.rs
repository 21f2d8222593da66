//! Graph edits that build the substrates the support checker classifies.

use serde::{Deserialize, Serialize};

use greedygeo::{GeometricGraph, Scalar, SiteId};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "kebab-case")]
pub enum PerturbOp {
    DropEdge { i: SiteId, j: SiteId },
    AddEdge { i: SiteId, j: SiteId },
    /// Replace all edges with k-nearest-neighbor edges, the union variant:
    /// i~j when either is among the other's k nearest (ties by lowest id).
    KnnRewire { k: usize },
    /// Replace all edges, connecting pairs with dist² ≤ r².
    UnitDisk { r: Scalar },
}

pub fn perturb(g: &GeometricGraph, op: &PerturbOp) -> anyhow::Result<GeometricGraph> {
    match op {
        PerturbOp::DropEdge { i, j } => {
            let mut out = g.clone();
            out.remove_edge(*i, *j)?;
            Ok(out)
        }
        PerturbOp::AddEdge { i, j } => {
            let mut out = g.clone();
            out.add_edge(*i, *j)?;
            Ok(out)
        }
        PerturbOp::KnnRewire { k } => {
            anyhow::ensure!(*k >= 1, "k must be at least 1");
            let s = g.sites();
            let mut out = GeometricGraph::new(s.clone());
            for i in s.ids() {
                let mut others: Vec<SiteId> = s.ids().filter(|&j| j != i).collect();
                others.sort_by(|&a, &b| {
                    s[i].dist_sq(&s[a]).cmp(&s[i].dist_sq(&s[b])).then(a.cmp(&b))
                });
                for &j in others.iter().take(*k) {
                    if !out.has_edge(i, j) {
                        out.add_edge(i, j).expect("distinct valid ids");
                    }
                }
            }
            Ok(out)
        }
        PerturbOp::UnitDisk { r } => {
            anyhow::ensure!(r.is_positive(), "radius must be positive");
            let rr = r * r;
            let s = g.sites();
            let mut out = GeometricGraph::new(s.clone());
            for i in s.ids() {
                for j in i + 1..s.len() {
                    if s[i].dist_sq(&s[j]) <= rr {
                        out.add_edge(i, j).expect("distinct valid ids");
                    }
                }
            }
            Ok(out)
        }
    }
}
