//! Site sets: the point collections everything else is built on.

use std::collections::HashMap;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::point::Point;

/// Sites are addressed by their index in the owning [`SiteSet`].
pub type SiteId = usize;

/// A nonempty list of pairwise-distinct points. Ids are list indices, so a
/// site keeps its id for the lifetime of the set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteSet {
    sites: Vec<Point>,
}

impl SiteSet {
    pub fn new(sites: Vec<Point>) -> Result<Self> {
        if sites.is_empty() {
            return Err(Error::EmptySiteSet);
        }
        let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(sites.len());
        for (id, p) in sites.iter().enumerate() {
            if let Some(&first) = seen.get(p) {
                return Err(Error::DuplicateSite { first, second: id });
            }
            seen.insert(p, id);
        }
        drop(seen);
        Ok(SiteSet { sites })
    }

    /// Convenience for tests and examples.
    pub fn from_ints(coords: &[(i64, i64)]) -> Result<Self> {
        SiteSet::new(coords.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.sites.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Checked lookup, for validating ids that came from outside.
    pub fn get(&self, id: SiteId) -> Result<&Point> {
        self.sites.get(id).ok_or(Error::InvalidSiteId {
            id,
            len: self.sites.len(),
        })
    }

    pub fn points(&self) -> &[Point] {
        &self.sites
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.sites.iter()
    }

    pub fn ids(&self) -> std::ops::Range<SiteId> {
        0..self.sites.len()
    }
}

impl Index<SiteId> for SiteSet {
    type Output = Point;

    fn index(&self, id: SiteId) -> &Point {
        &self.sites[id]
    }
}

impl<'a> IntoIterator for &'a SiteSet {
    type Item = &'a Point;
    type IntoIter = std::slice::Iter<'a, Point>;

    fn into_iter(self) -> Self::IntoIter {
        self.sites.iter()
    }
}
