//! Brute-force edge classification straight from the cell definition.
//!
//! Independent of the triangulation: for a site pair we walk the
//! perpendicular bisector and intersect, over every other site, the set of
//! parameters where the bisector point is still at least as close to the
//! pair as to that site. The surviving parameter set is exactly the shared
//! boundary of the two Voronoi cells. O(n) per pair, so O(n³) for all
//! pairs; slow but hard to get wrong, which is the point.

use crate::error::{Error, Result};
use crate::point::Point;
use crate::scalar::Scalar;
use crate::sites::{SiteId, SiteSet};

use super::EdgeClass;

/// What two Voronoi cells have in common: nothing, one point, or a segment
/// of the bisector. A `None` endpoint means the segment extends to
/// infinity on that side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SharedFeature {
    Empty,
    SinglePoint(Point),
    Segment {
        start: Option<Point>,
        end: Option<Point>,
    },
}

impl SharedFeature {
    pub fn is_bounded_segment(&self) -> bool {
        matches!(
            self,
            SharedFeature::Segment {
                start: Some(_),
                end: Some(_)
            }
        )
    }
}

/// Classify the pair (i, j) by computing the shared feature of their
/// Voronoi cells from first principles.
pub fn edge_oracle(sites: &SiteSet, i: SiteId, j: SiteId) -> Result<(EdgeClass, SharedFeature)> {
    if i == j {
        return Err(Error::CoincidentSites);
    }
    let vi = sites.get(i)?;
    let vj = sites.get(j)?;

    // Bisector points are c(t) = mid + t*u. For another site k, the points
    // of the bisector at least as close to v_i as to v_k satisfy
    // 2(v_k - v_i)·c(t) <= |v_k|² - |v_i|², linear in t.
    let mid = vi.midpoint(vj);
    let u = vi.vector_to(vj).rot90();
    let norm = |p: &Point| &p.x * &p.x + &p.y * &p.y;
    let two = Scalar::from(2);

    let mut lo: Option<Scalar> = None;
    let mut hi: Option<Scalar> = None;
    for k in sites.ids() {
        if k == i || k == j {
            continue;
        }
        let w = vi.vector_to(&sites[k]);
        let a = &two * &w.dot(&u);
        let b = norm(&sites[k]) - norm(vi) - &two * &(&w.x * &mid.x + &w.y * &mid.y);
        match a.sign() {
            std::cmp::Ordering::Greater => {
                let t = b / a;
                if hi.as_ref().map_or(true, |h| t < *h) {
                    hi = Some(t);
                }
            }
            std::cmp::Ordering::Less => {
                let t = b / a;
                if lo.as_ref().map_or(true, |l| t > *l) {
                    lo = Some(t);
                }
            }
            std::cmp::Ordering::Equal => {
                // constraint is t-independent: either vacuous or infeasible
                if b.is_negative() {
                    return Ok((EdgeClass::NotDelaunay, SharedFeature::Empty));
                }
            }
        }
    }

    let at = |t: &Scalar| mid.translate(&u.scale(t));
    match (&lo, &hi) {
        (Some(l), Some(h)) if l > h => Ok((EdgeClass::NotDelaunay, SharedFeature::Empty)),
        (Some(l), Some(h)) if l == h => {
            Ok((EdgeClass::Degenerate, SharedFeature::SinglePoint(at(l))))
        }
        _ => Ok((
            EdgeClass::NonDegenerate,
            SharedFeature::Segment {
                start: lo.as_ref().map(&at),
                end: hi.as_ref().map(&at),
            },
        )),
    }
}

/// Midpoint of the bounded shared Voronoi segment of (i, j): equidistant
/// from both sites and strictly closer to them than to anyone else.
pub fn shared_voronoi_midpoint(sites: &SiteSet, i: SiteId, j: SiteId) -> Result<Point> {
    match edge_oracle(sites, i, j)?.1 {
        SharedFeature::Segment {
            start: Some(p1),
            end: Some(p2),
        } => Ok(p1.midpoint(&p2)),
        _ => Err(Error::NotBoundedSegment { i, j }),
    }
}
