//! Greedy forwarding: always hand the packet to the neighbor strictly
//! closest to the destination, and call the result delivered only when the
//! walk stops at a globally nearest site.

use serde::{Deserialize, Serialize};

use crate::graph::GeometricGraph;
use crate::point::Point;
use crate::scalar::Scalar;
use crate::sites::{SiteId, SiteSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RouteKind {
    Delivered,
    Stuck,
}

/// The full trace of one greedy walk. The path starts at the source and
/// each hop strictly decreases the distance to the destination, so the
/// walk can never revisit a node and always terminates.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RouteOutcome {
    pub kind: RouteKind,
    pub path: Vec<SiteId>,
    pub destination: Point,
}

impl RouteOutcome {
    pub fn terminal(&self) -> SiteId {
        *self.path.last().expect("a path always contains the source")
    }

    pub fn hops(&self) -> usize {
        self.path.len() - 1
    }

    pub fn is_delivered(&self) -> bool {
        self.kind == RouteKind::Delivered
    }
}

/// The neighbor of `current` strictly closer to `dest` than `current`
/// itself, minimizing the squared distance, ties broken by lowest id.
/// `None` means greedy forwarding halts here. Panics on an invalid id.
pub fn greedy_next(g: &GeometricGraph, current: SiteId, dest: &Point) -> Option<SiteId> {
    let here = dest.dist_sq(g.point(current));
    let mut best: Option<(Scalar, SiteId)> = None;
    for &j in g.neighbors(current) {
        let d = dest.dist_sq(g.point(j));
        if d >= here {
            continue;
        }
        // neighbors come in ascending id order, so replacing only on a
        // strict improvement leaves ties with the lowest id
        let better = match &best {
            None => true,
            Some((b, _)) => d < *b,
        };
        if better {
            best = Some((d, j));
        }
    }
    best.map(|(_, j)| j)
}

/// Run greedy forwarding from `source` until it halts. Delivered iff the
/// terminal node attains the minimum site-to-destination distance (under
/// ties, any minimizer counts). Panics on an invalid id.
pub fn route(g: &GeometricGraph, source: SiteId, dest: &Point) -> RouteOutcome {
    let mut path = vec![source];
    let mut current = source;
    while let Some(next) = greedy_next(g, current, dest) {
        path.push(next);
        current = next;
    }
    let kind = if nearest_site(g.sites(), dest).contains(&current) {
        RouteKind::Delivered
    } else {
        RouteKind::Stuck
    };
    RouteOutcome {
        kind,
        path,
        destination: dest.clone(),
    }
}

/// All sites attaining the minimum squared distance to `dest`, in
/// ascending id order. Usually a singleton; never empty.
pub fn nearest_site(s: &SiteSet, dest: &Point) -> Vec<SiteId> {
    let mut best: Option<Scalar> = None;
    let mut ids = Vec::new();
    for i in s.ids() {
        let d = dest.dist_sq(&s[i]);
        match &best {
            Some(b) if d > *b => {}
            Some(b) if d == *b => ids.push(i),
            _ => {
                best = Some(d);
                ids = vec![i];
            }
        }
    }
    ids
}
