//! Voronoi cells, vertex regions, and the exact equality decision between
//! them.
//!
//! Both region kinds are intersections of bisector half-planes; the only
//! difference is who competes. The Voronoi cell of a site competes against
//! every other site, the vertex region only against the site's graph
//! neighbors, so the vertex region always contains the cell. Deciding
//! whether they are equal reduces, per non-neighbor k, to maximizing a
//! linear functional over the vertex region: the region leaks past k's
//! bisector exactly when the supremum exceeds the bisector offset. Regions
//! are frequently unbounded, so the maximization handles recession
//! directions explicitly instead of clipping to a box.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::graph::GeometricGraph;
use crate::kernel::{bisector_halfplane, HalfPlane};
use crate::point::{Point, Vector};
use crate::scalar::Scalar;
use crate::sites::{SiteId, SiteSet};

/// An intersection of bisector half-planes around a base site, together
/// with its realized boundary: the exact corner points and, when the
/// region is unbounded, the directions its boundary runs off in.
#[derive(Debug, Clone)]
pub struct ConvexRegion {
    base_site: SiteId,
    base_point: Point,
    constraints: Vec<(SiteId, HalfPlane)>,
    vertices: Vec<Point>,
    rays: Vec<Vector>,
}

impl ConvexRegion {
    fn build<'a, I>(base_site: SiteId, base_point: Point, competitors: I) -> Self
    where
        I: IntoIterator<Item = (SiteId, &'a Point)>,
    {
        let constraints: Vec<(SiteId, HalfPlane)> = competitors
            .into_iter()
            .map(|(k, p)| {
                let h = bisector_halfplane(&base_point, p).expect("sites are distinct");
                (k, h)
            })
            .collect();

        // A region vertex is a feasible intersection of two constraint
        // boundaries. Collect them exactly, then order them by angle
        // around the base point (which is strictly interior, so angles are
        // unambiguous).
        let mut corner_set: BTreeSet<Point> = BTreeSet::new();
        for (a, (_, ha)) in constraints.iter().enumerate() {
            for (_, hb) in &constraints[a + 1..] {
                if let Some(p) = ha.boundary_intersection(hb) {
                    if constraints.iter().all(|(_, h)| h.contains(&p)) {
                        corner_set.insert(p);
                    }
                }
            }
        }
        let mut vertices: Vec<Point> = corner_set.into_iter().collect();
        vertices.sort_by(|p, q| angular_order(&base_point, p, q));

        // Unbounded boundary directions: a constraint's boundary direction
        // that the whole recession cone admits.
        let mut ray_set: BTreeSet<Vector> = BTreeSet::new();
        for (_, h) in &constraints {
            let along = h.normal().rot90();
            for d in [along.neg(), along] {
                if in_recession_cone(&constraints, &d) {
                    ray_set.insert(canonical_direction(d));
                }
            }
        }
        let rays: Vec<Vector> = ray_set.into_iter().collect();

        ConvexRegion {
            base_site,
            base_point,
            constraints,
            vertices,
            rays,
        }
    }

    pub fn base_site(&self) -> SiteId {
        self.base_site
    }

    pub fn base_point(&self) -> &Point {
        &self.base_point
    }

    /// One (competing site, bisector half-plane) entry per competitor, in
    /// ascending site order.
    pub fn constraints(&self) -> &[(SiteId, HalfPlane)] {
        &self.constraints
    }

    /// Corner points of the region, ordered by angle around the base.
    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    /// Directions of the unbounded boundary edges (at most two), canonical
    /// scale, empty for bounded regions and for the whole plane.
    pub fn rays(&self) -> &[Vector] {
        &self.rays
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.constraints.iter().all(|(_, h)| h.contains(p))
    }

    pub fn contains_strict(&self, p: &Point) -> bool {
        self.constraints.iter().all(|(_, h)| h.contains_strict(p))
    }

    pub fn is_bounded(&self) -> bool {
        !self.constraints.is_empty() && self.rays.is_empty()
    }
}

/// The set of points at least as close to site `i` as to every other
/// site. Cells of all sites cover the plane and have disjoint interiors.
/// Panics if the id is out of range.
pub fn voronoi_cell(sites: &SiteSet, i: SiteId) -> ConvexRegion {
    let base = sites[i].clone();
    ConvexRegion::build(
        i,
        base,
        sites.ids().filter(|&k| k != i).map(|k| (k, &sites[k])),
    )
}

/// Like the Voronoi cell, but competing only against the graph neighbors
/// of `i`; always a superset of the cell. Panics if the id is out of
/// range.
pub fn vertex_region(g: &GeometricGraph, i: SiteId) -> ConvexRegion {
    let base = g.point(i).clone();
    ConvexRegion::build(
        i,
        base,
        g.neighbors(i).iter().map(|&j| (j, g.point(j))),
    )
}

/// Outcome of comparing a site's vertex region with its Voronoi cell.
///
/// `boundary_contacts` lists the non-neighbors whose bisector the vertex
/// region touches without crossing (the constraint is tight at a single
/// boundary point, the degenerate-edge situation). Contacts do not break
/// equality: the region still lies inside the constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityVerdict {
    pub equal: bool,
    pub witness: Option<Point>,
    pub blocking_site: Option<SiteId>,
    pub boundary_contacts: Vec<SiteId>,
}

/// Decide exactly whether the vertex region of `i` equals its Voronoi
/// cell.
///
/// For every non-neighbor k the check is one linear maximization over the
/// vertex region. When the region crosses k's bisector, a witness point is
/// constructed strictly inside the gap: strictly closer to k than to `i`,
/// yet strictly closer to `i` than to every neighbor, so greedy routing
/// starting at `i` toward the witness is provably stuck. The witness is
/// then nudged, still exactly, until a single site is nearest to it.
pub fn regions_equal(g: &GeometricGraph, i: SiteId) -> EqualityVerdict {
    let vr = vertex_region(g, i);
    let vi = vr.base_point().clone();
    let sites = g.sites();

    // Maximizer candidates. A finite supremum over the region is attained
    // at a corner when the region has corners; otherwise all constraints
    // are parallel and the supremum sits on a boundary line, which always
    // contains the foot of the base point.
    let mut candidates: Vec<Point> = vr.vertices().to_vec();
    for (_, h) in vr.constraints() {
        let foot = h.project_onto_boundary(&vi);
        if vr.contains(&foot) {
            candidates.push(foot);
        }
    }
    candidates.push(vi.clone());

    // Recession directions that can certify an unbounded violation: the
    // realized boundary directions plus every inward normal that the cone
    // admits. (The functional's own gradient is tried per non-neighbor.)
    let mut directions: Vec<Vector> = vr.rays().to_vec();
    for (_, h) in vr.constraints() {
        let inward = h.normal().neg();
        if in_recession_cone(vr.constraints(), &inward) {
            directions.push(inward);
        }
    }

    let mut boundary_contacts = Vec::new();
    let mut violation: Option<(SiteId, Point)> = None;

    for k in sites.ids() {
        if k == i || g.has_edge(i, k) {
            continue;
        }
        let hk = bisector_halfplane(&vi, &sites[k]).expect("sites are distinct");
        let gk = hk.normal();

        let escape = directions
            .iter()
            .find(|d| gk.dot(d).is_positive())
            .cloned()
            .or_else(|| {
                // the gradient itself escapes iff the cone admits it
                in_recession_cone(vr.constraints(), &gk).then(|| gk.clone())
            });

        if let Some(d) = escape {
            if violation.is_none() {
                // march from the base point past the bisector
                let t = -hk.eval(&vi) / gk.dot(&d) + Scalar::one();
                let x0 = vi.translate(&d.scale(&t));
                violation = Some((k, finish_witness(sites, &vr, &hk, x0)));
            }
            continue;
        }

        let best = candidates
            .iter()
            .max_by(|p, q| hk.eval(p).cmp(&hk.eval(q)))
            .expect("the base point is always a candidate");
        match hk.eval(best).sign() {
            Ordering::Greater => {
                if violation.is_none() {
                    // blend from the base point toward the maximizer, past
                    // the bisector crossing but short of the region edge
                    let fi = hk.eval(&vi);
                    let cross = &fi / (&fi - &hk.eval(best));
                    let lambda = (cross + Scalar::one()) / Scalar::from(2);
                    let x0 = vi.translate(&vi.vector_to(best).scale(&lambda));
                    violation = Some((k, finish_witness(sites, &vr, &hk, x0)));
                }
            }
            Ordering::Equal => boundary_contacts.push(k),
            Ordering::Less => {}
        }
    }

    match violation {
        Some((k, w)) => EqualityVerdict {
            equal: false,
            witness: Some(w),
            blocking_site: Some(k),
            boundary_contacts,
        },
        None => EqualityVerdict {
            equal: true,
            witness: None,
            blocking_site: None,
            boundary_contacts,
        },
    }
}

/// A destination proving that greedy routing from `i` can get stuck, if
/// one exists. The point lies in the vertex region of `i` (so no neighbor
/// of `i` is closer to it than `i` is) while a single other site is
/// strictly nearest to it.
pub fn witness_destination(g: &GeometricGraph, i: SiteId) -> Option<Point> {
    regions_equal(g, i).witness
}

/// Check the witness system and, if several sites tie for nearest, walk a
/// little further into the violated set until exactly one is nearest.
fn finish_witness(sites: &SiteSet, vr: &ConvexRegion, hk: &HalfPlane, x0: Point) -> Point {
    debug_assert!(
        vr.constraints().iter().all(|(_, h)| h.contains_strict(&x0)),
        "witness must be strictly inside the vertex region"
    );
    debug_assert!(
        hk.eval(&x0).is_positive(),
        "witness must be strictly past the violated bisector"
    );
    if has_unique_nearest(sites, &x0) {
        return x0;
    }

    // Pick a slope steeper than every bisector so that moving along
    // (1, q) changes every pairwise distance comparison.
    let mut steepest = Scalar::zero();
    for (a, pa) in sites.iter().enumerate() {
        for pb in &sites.points()[a + 1..] {
            let dx = &pb.x - &pa.x;
            let dy = &pb.y - &pa.y;
            if !dy.is_zero() {
                let q = (dx / dy).abs();
                if q > steepest {
                    steepest = q;
                }
            }
        }
    }
    let d = Vector::new(Scalar::one(), steepest + Scalar::one());

    // Largest step that keeps the whole system strict.
    let mut t_max = Scalar::one();
    for (_, h) in vr.constraints() {
        let slope = h.normal().dot(&d);
        if slope.is_positive() {
            let bound = -h.eval(&x0) / slope;
            if bound < t_max {
                t_max = bound;
            }
        }
    }
    let slope_k = hk.normal().dot(&d);
    if slope_k.is_negative() {
        let bound = hk.eval(&x0) / -slope_k;
        if bound < t_max {
            t_max = bound;
        }
    }

    // Each site pair ties for at most one step size, so pair_count + 1
    // halvings must hit a tie-free point.
    let pair_count = sites.len() * (sites.len() - 1) / 2;
    let mut t = t_max / Scalar::from(2);
    for _ in 0..=pair_count {
        let x = x0.translate(&d.scale(&t));
        if has_unique_nearest(sites, &x) {
            return x;
        }
        t = t / Scalar::from(2);
    }
    unreachable!("the chosen direction is parallel to no bisector");
}

fn has_unique_nearest(sites: &SiteSet, x: &Point) -> bool {
    let mut best: Option<Scalar> = None;
    let mut count = 0usize;
    for p in sites {
        let d = x.dist_sq(p);
        match &best {
            Some(b) if d > *b => {}
            Some(b) if d == *b => count += 1,
            _ => {
                best = Some(d);
                count = 1;
            }
        }
    }
    count == 1
}

fn in_recession_cone(constraints: &[(SiteId, HalfPlane)], d: &Vector) -> bool {
    constraints
        .iter()
        .all(|(_, h)| !h.normal().dot(d).is_positive())
}

fn canonical_direction(v: Vector) -> Vector {
    let s = if !v.x.is_zero() { v.x.abs() } else { v.y.abs() };
    Vector::new(v.x / s.clone(), v.y / s)
}

/// Counterclockwise angular order around `center`, starting from the
/// positive x direction. Exact: compares half-planes first, then a cross
/// product.
fn angular_order(center: &Point, p: &Point, q: &Point) -> Ordering {
    let u = center.vector_to(p);
    let v = center.vector_to(q);
    let half = |w: &Vector| -> u8 {
        if w.y.is_positive() || (w.y.is_zero() && w.x.is_positive()) {
            0
        } else {
            1
        }
    };
    half(&u).cmp(&half(&v)).then_with(|| match u.cross(&v).sign() {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => Ordering::Equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaunay::delaunay_graph;
    use proptest::prelude::*;

    fn square() -> SiteSet {
        SiteSet::from_ints(&[(0, 0), (2, 0), (2, 2), (0, 2)]).unwrap()
    }

    fn square_sides(missing: Option<(SiteId, SiteId)>) -> GeometricGraph {
        let mut g = GeometricGraph::new(square());
        for (i, j) in [(0, 1), (1, 2), (2, 3), (0, 3)] {
            if missing != Some((i, j)) {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    #[test]
    fn square_cell_is_a_quadrant() {
        let cell = voronoi_cell(&square(), 0);
        assert_eq!(cell.constraints().len(), 3);
        assert_eq!(cell.vertices(), &[pt(1, 1)]);
        assert_eq!(
            cell.rays(),
            &[
                Vector::new(Scalar::from(-1), Scalar::zero()),
                Vector::new(Scalar::zero(), Scalar::from(-1)),
            ]
        );
        assert!(!cell.is_bounded());
        assert!(cell.contains(&pt(0, 0)));
        assert!(cell.contains(&pt(1, 1)));
        assert!(!cell.contains_strict(&pt(1, 1)));
        assert!(!cell.contains(&Point::new(Scalar::ratio(19, 10), Scalar::ratio(19, 10))));
    }

    #[test]
    fn two_site_cell_is_a_half_plane() {
        let s = SiteSet::from_ints(&[(0, 0), (2, 0)]).unwrap();
        let cell = voronoi_cell(&s, 0);
        assert!(cell.vertices().is_empty());
        assert_eq!(
            cell.rays(),
            &[
                Vector::new(Scalar::zero(), Scalar::from(-1)),
                Vector::new(Scalar::zero(), Scalar::one()),
            ]
        );
        assert!(cell.contains(&pt(1, 5)));
        assert!(!cell.contains(&pt(2, 0)));
    }

    #[test]
    fn single_site_cell_is_the_plane() {
        let s = SiteSet::from_ints(&[(7, -3)]).unwrap();
        let cell = voronoi_cell(&s, 0);
        assert!(cell.constraints().is_empty());
        assert!(!cell.is_bounded());
        assert!(cell.contains(&pt(1000, -1000)));
    }

    #[test]
    fn vertex_region_grows_when_an_edge_is_dropped() {
        let full = square_sides(None);
        let vr = vertex_region(&full, 0);
        assert_eq!(vr.constraints().len(), 2);
        assert_eq!(vr.vertices(), &[pt(1, 1)]);

        let broken = square_sides(Some((0, 1)));
        let vr = vertex_region(&broken, 0);
        assert_eq!(vr.constraints().len(), 1);
        assert!(vr.vertices().is_empty());
        let probe = Point::new(Scalar::ratio(3, 2), Scalar::zero());
        assert!(vr.contains(&probe));
        assert!(!voronoi_cell(&full.sites().clone(), 0).contains(&probe));
    }

    #[test]
    fn complete_graph_regions_match_cells() {
        let s = SiteSet::from_ints(&[(0, 0), (5, 1), (2, 7), (-3, 4), (1, 1)]).unwrap();
        let g = GeometricGraph::complete(s.clone());
        for i in s.ids() {
            let vr = vertex_region(&g, i);
            let vc = voronoi_cell(&s, i);
            assert_eq!(vr.vertices(), vc.vertices());
            assert_eq!(vr.rays(), vc.rays());
            let verdict = regions_equal(&g, i);
            assert!(verdict.equal);
            assert_eq!(verdict.witness, None);
        }
    }

    #[test]
    fn square_sides_support_equality_with_diagonal_contact() {
        let g = square_sides(None);
        for (i, opposite) in [(0, 2), (1, 3), (2, 0), (3, 1)] {
            let verdict = regions_equal(&g, i);
            assert!(verdict.equal, "site {i}");
            assert_eq!(verdict.witness, None);
            assert_eq!(verdict.blocking_site, None);
            // the missing diagonal touches the region in exactly one point
            assert_eq!(verdict.boundary_contacts, vec![opposite]);
        }
    }

    #[test]
    fn dropping_a_side_breaks_equality_with_a_stuck_witness() {
        let g = square_sides(Some((0, 1)));
        let verdict = regions_equal(&g, 0);
        assert!(!verdict.equal);
        assert_eq!(verdict.blocking_site, Some(1));
        let w = verdict.witness.expect("unequal regions produce a witness");
        // stuck at 0: the only neighbor (0,2) is strictly farther from w
        let d0 = w.dist_sq(g.point(0));
        assert!(d0 < w.dist_sq(g.point(3)));
        // while site 1 is strictly nearer, so 0 is not the delivery target
        assert!(w.dist_sq(g.point(1)) < d0);

        // sites 2 and 3 keep their equality
        assert!(regions_equal(&g, 2).equal);
        assert!(regions_equal(&g, 3).equal);
        assert!(witness_destination(&g, 1).is_some());
        assert!(witness_destination(&g, 2).is_none());
    }

    #[test]
    fn isolated_site_yields_the_other_site_as_witness() {
        let s = SiteSet::from_ints(&[(0, 0), (2, 0)]).unwrap();
        let g = GeometricGraph::new(s);
        let verdict = regions_equal(&g, 0);
        assert!(!verdict.equal);
        assert_eq!(verdict.blocking_site, Some(1));
        // no neighbors at all: the march lands past the bisector, here on
        // the other site itself
        assert_eq!(verdict.witness, Some(pt(2, 0)));
    }

    fn random_sites() -> impl Strategy<Value = SiteSet> {
        proptest::collection::btree_set((-9i64..=9, -9i64..=9), 2..9).prop_map(|set| {
            SiteSet::from_ints(&set.into_iter().collect::<Vec<_>>()).unwrap()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn witnesses_are_sound(s in random_sites(), seed in any::<u64>()) {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = GeometricGraph::new(s.clone());
            for i in s.ids() {
                for j in i + 1..s.len() {
                    if rng.gen_bool(0.5) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }

            for i in s.ids() {
                let verdict = regions_equal(&g, i);
                prop_assert_eq!(verdict.equal, verdict.witness.is_none());
                prop_assert_eq!(verdict.equal, verdict.blocking_site.is_none());
                let Some(w) = verdict.witness else { continue };

                let di = w.dist_sq(&s[i]);
                for &j in g.neighbors(i) {
                    prop_assert!(di < w.dist_sq(&s[j]), "witness must strand site {i}");
                }
                let k = verdict.blocking_site.unwrap();
                prop_assert!(!g.has_edge(i, k));
                prop_assert!(w.dist_sq(&s[k]) < di);
                // exactly one site is nearest, and it is not i
                let mut nearest = Vec::new();
                let mut best: Option<Scalar> = None;
                for m in s.ids() {
                    let d = w.dist_sq(&s[m]);
                    match &best {
                        Some(b) if d > *b => {}
                        Some(b) if d == *b => nearest.push(m),
                        _ => { best = Some(d); nearest = vec![m]; }
                    }
                }
                prop_assert_eq!(nearest.len(), 1);
                prop_assert_ne!(nearest[0], i);
            }
        }

        #[test]
        fn cells_partition_and_are_contained_in_regions(
            s in random_sites(),
            seed in any::<u64>(),
            probes in proptest::collection::vec(((-40i64..=40, 1i64..5), (-40i64..=40, 1i64..5)), 20)
        ) {
            use rand::Rng;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut g = GeometricGraph::new(s.clone());
            for i in s.ids() {
                for j in i + 1..s.len() {
                    if rng.gen_bool(0.4) {
                        g.add_edge(i, j).unwrap();
                    }
                }
            }
            let cells: Vec<ConvexRegion> = s.ids().map(|i| voronoi_cell(&s, i)).collect();
            let regions: Vec<ConvexRegion> = s.ids().map(|i| vertex_region(&g, i)).collect();

            for ((xn, xd), (yn, yd)) in probes {
                let p = Point::new(Scalar::ratio(xn, xd), Scalar::ratio(yn, yd));
                let mut nearest = Vec::new();
                let mut best: Option<Scalar> = None;
                for m in s.ids() {
                    let d = p.dist_sq(&s[m]);
                    match &best {
                        Some(b) if d > *b => {}
                        Some(b) if d == *b => nearest.push(m),
                        _ => { best = Some(d); nearest = vec![m]; }
                    }
                }
                let holders: Vec<SiteId> =
                    s.ids().filter(|&m| cells[m].contains(&p)).collect();
                if nearest.len() == 1 {
                    prop_assert_eq!(&holders, &nearest, "unique nearest owns the point");
                }
                for m in s.ids() {
                    if cells[m].contains(&p) {
                        prop_assert!(regions[m].contains(&p), "cell must sit inside region");
                    }
                }
            }
        }

        #[test]
        fn delaunay_graph_regions_are_always_equal(s in random_sites()) {
            let g = delaunay_graph(&s);
            for i in s.ids() {
                prop_assert!(regions_equal(&g, i).equal, "site {}", i);
            }
        }
    }
}
