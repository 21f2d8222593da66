//! Geometric graphs: a site set plus a symmetric edge relation.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::sites::{SiteId, SiteSet};

/// An undirected graph over a [`SiteSet`]. Adjacency lists are kept sorted,
/// so neighbor iteration order is deterministic and edge lookups are
/// logarithmic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricGraph {
    sites: SiteSet,
    adjacency: Vec<Vec<SiteId>>,
}

impl GeometricGraph {
    /// Graph with no edges.
    pub fn new(sites: SiteSet) -> Self {
        let n = sites.len();
        GeometricGraph {
            sites,
            adjacency: vec![Vec::new(); n],
        }
    }

    pub fn with_edges<I>(sites: SiteSet, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SiteId, SiteId)>,
    {
        let mut g = GeometricGraph::new(sites);
        for (i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn complete(sites: SiteSet) -> Self {
        let n = sites.len();
        let adjacency = (0..n)
            .map(|i| (0..n).filter(|&j| j != i).collect())
            .collect();
        GeometricGraph { sites, adjacency }
    }

    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Location of site `i`. Panics if the id is out of range.
    pub fn point(&self, i: SiteId) -> &Point {
        &self.sites[i]
    }

    /// Sorted neighbor list of `i`. Panics if the id is out of range.
    pub fn neighbors(&self, i: SiteId) -> &[SiteId] {
        &self.adjacency[i]
    }

    pub fn degree(&self, i: SiteId) -> usize {
        self.adjacency[i].len()
    }

    pub fn has_edge(&self, i: SiteId, j: SiteId) -> bool {
        match self.adjacency.get(i) {
            Some(list) => list.binary_search(&j).is_ok(),
            None => false,
        }
    }

    pub fn add_edge(&mut self, i: SiteId, j: SiteId) -> Result<()> {
        self.check_pair(i, j)?;
        if self.has_edge(i, j) {
            return Err(Error::DuplicateEdge(i.min(j), i.max(j)));
        }
        let pos = self.adjacency[i].binary_search(&j).unwrap_err();
        self.adjacency[i].insert(pos, j);
        let pos = self.adjacency[j].binary_search(&i).unwrap_err();
        self.adjacency[j].insert(pos, i);
        Ok(())
    }

    pub fn remove_edge(&mut self, i: SiteId, j: SiteId) -> Result<()> {
        self.check_pair(i, j)?;
        let pos = self.adjacency[i]
            .binary_search(&j)
            .map_err(|_| Error::NoSuchEdge(i.min(j), i.max(j)))?;
        self.adjacency[i].remove(pos);
        let pos = self.adjacency[j]
            .binary_search(&i)
            .expect("adjacency must be symmetric");
        self.adjacency[j].remove(pos);
        Ok(())
    }

    /// All edges as (i, j) pairs with i < j, in lexicographic order.
    pub fn edges(&self) -> Vec<(SiteId, SiteId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (i, list) in self.adjacency.iter().enumerate() {
            for &j in list {
                if i < j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn check_pair(&self, i: SiteId, j: SiteId) -> Result<()> {
        let n = self.sites.len();
        if i >= n {
            return Err(Error::InvalidSiteId { id: i, len: n });
        }
        if j >= n {
            return Err(Error::InvalidSiteId { id: j, len: n });
        }
        if i == j {
            return Err(Error::SelfLoop(i));
        }
        Ok(())
    }
}
