//! Delaunay triangulation and exact edge classification.
//!
//! The triangulation is built incrementally: sites are visited in
//! lexicographic order, each new site is joined to the hull edges it can
//! see, and edge flips restore the empty-circle property. Every decision
//! goes through the exact predicates in [`crate::kernel`], so cocircular
//! site groups are detected reliably rather than flip-flopping on rounding.
//!
//! With four or more cocircular sites the triangulation itself is not
//! unique: when a flip test comes back exactly cocircular we keep the
//! diagonal we already have. What is unique is the set of non-degenerate
//! edges, and [`classify_edge`](Triangulation::classify_edge) decides
//! degeneracy per edge instead of trusting which diagonal the construction
//! happened to pick. [`delaunay_graph`] keeps exactly the non-degenerate
//! edges.

pub mod oracle;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::GeometricGraph;
use crate::kernel::{in_circle, orientation, CirclePosition, Orientation};
use crate::point::Point;
use crate::sites::{SiteId, SiteSet};

pub use oracle::{edge_oracle, shared_voronoi_midpoint, SharedFeature};

/// Relation of a site pair to the Delaunay structure: no shared cell
/// boundary at all, a single shared point (degenerate), or a shared
/// segment/ray (non-degenerate).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeClass {
    NotDelaunay,
    Degenerate,
    NonDegenerate,
}

/// A Delaunay triangulation. Triangles are stored as sorted id triples;
/// each edge knows its one (hull) or two (interior) incident triangles.
#[derive(Debug, Clone)]
pub struct Triangulation {
    sites: SiteSet,
    triangles: Vec<[SiteId; 3]>,
    edges: BTreeMap<(SiteId, SiteId), (usize, Option<usize>)>,
}

impl Triangulation {
    pub fn sites(&self) -> &SiteSet {
        &self.sites
    }

    pub fn triangles(&self) -> &[[SiteId; 3]] {
        &self.triangles
    }

    /// Edges as (i, j) pairs with i < j, lexicographically sorted.
    pub fn edges(&self) -> Vec<(SiteId, SiteId)> {
        self.edges.keys().copied().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: SiteId, j: SiteId) -> bool {
        self.edges.contains_key(&key(i, j))
    }

    /// Classify an edge of this triangulation.
    ///
    /// Hull edges are non-degenerate: the dual Voronoi feature is an
    /// unbounded ray. An interior edge is degenerate exactly when the four
    /// vertices of its two incident triangles are cocircular, which is when
    /// the two circumcenters coincide and the dual feature collapses to a
    /// point.
    pub fn classify_edge(&self, i: SiteId, j: SiteId) -> Result<EdgeClass> {
        let (u, v) = key(i, j);
        let Some(&(t1, t2)) = self.edges.get(&(u, v)) else {
            return Err(Error::NotAnEdge { i, j });
        };
        let Some(t2) = t2 else {
            return Ok(EdgeClass::NonDegenerate);
        };
        let c = opposite(self.triangles[t1], u, v);
        let d = opposite(self.triangles[t2], u, v);
        let pts = self.sites.points();
        let pos = in_circle(&pts[u], &pts[v], &pts[c], &pts[d])
            .expect("triangulation triangles are never collinear");
        debug_assert!(
            pos != CirclePosition::Inside,
            "empty-circle property violated at edge ({u}, {v})"
        );
        Ok(if pos == CirclePosition::On {
            EdgeClass::Degenerate
        } else {
            EdgeClass::NonDegenerate
        })
    }
}

fn key(i: SiteId, j: SiteId) -> (SiteId, SiteId) {
    (i.min(j), i.max(j))
}

fn opposite(tri: [SiteId; 3], a: SiteId, b: SiteId) -> SiteId {
    tri.into_iter()
        .find(|&v| v != a && v != b)
        .expect("edge endpoints belong to the triangle")
}

/// Build the Delaunay triangulation of a site set.
///
/// Deterministic: the result depends only on the points and their ids.
pub fn triangulate(sites: &SiteSet) -> Result<Triangulation> {
    let n = sites.len();
    if n < 3 {
        return Err(Error::TooFewSites { needed: 3, got: n });
    }
    let pts = sites.points();

    let mut order: Vec<SiteId> = (0..n).collect();
    order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));

    // The sorted prefix that lies on one line. Its points are joined to the
    // first off-line site by a fan; the fan is automatically Delaunay
    // because a circle meets the line in at most two points.
    let mut prefix = 2;
    while prefix < n
        && orientation(&pts[order[0]], &pts[order[1]], &pts[order[prefix]])
            == Orientation::Collinear
    {
        prefix += 1;
    }
    if prefix == n {
        return Err(Error::AllCollinear);
    }
    let apex = order[prefix];

    let mut builder = Builder {
        pts,
        triangles: Vec::new(),
        edges: BTreeMap::new(),
        hull: Vec::new(),
    };
    for w in order[..prefix].windows(2) {
        builder.add_triangle([w[0], w[1], apex]);
    }

    let mut hull: Vec<SiteId> = order[..prefix].to_vec();
    hull.push(apex);
    if orientation(&pts[hull[0]], &pts[hull[prefix - 1]], &pts[apex]) == Orientation::Cw {
        hull.reverse();
    }
    builder.hull = hull;

    for &p in &order[prefix + 1..] {
        builder.insert(p);
    }
    Ok(builder.finish(sites))
}

/// The graph of all non-degenerate Delaunay edges, the edges common to
/// every Delaunay triangulation of the set.
///
/// Inputs a triangulation cannot represent still have well-defined cell
/// adjacency: a single site gives no edges, and collinear sites (including
/// n = 2) give the path joining consecutive sites along their line, since
/// those are the cells sharing a full boundary line.
pub fn delaunay_graph(sites: &SiteSet) -> GeometricGraph {
    let n = sites.len();
    let pts = sites.points();
    let collinear = n < 3
        || (2..n).all(|k| orientation(&pts[0], &pts[1], &pts[k]) == Orientation::Collinear);

    let mut g = GeometricGraph::new(sites.clone());
    if n == 1 {
        return g;
    }
    if collinear {
        let mut order: Vec<SiteId> = (0..n).collect();
        order.sort_by(|&a, &b| pts[a].cmp(&pts[b]));
        for w in order.windows(2) {
            g.add_edge(w[0], w[1]).expect("consecutive sites are distinct");
        }
        return g;
    }

    let t = triangulate(sites).expect("n >= 3 and not collinear");
    for (i, j) in t.edges() {
        if t.classify_edge(i, j).expect("edge of the triangulation") == EdgeClass::NonDegenerate {
            g.add_edge(i, j).expect("triangulation edges are simple");
        }
    }
    g
}

struct Builder<'a> {
    pts: &'a [Point],
    triangles: Vec<Option<[SiteId; 3]>>,
    edges: BTreeMap<(SiteId, SiteId), Vec<usize>>,
    hull: Vec<SiteId>, // counterclockwise
}

impl<'a> Builder<'a> {
    fn add_triangle(&mut self, mut t: [SiteId; 3]) {
        t.sort_unstable();
        let idx = self.triangles.len();
        self.triangles.push(Some(t));
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            self.edges.entry((a, b)).or_default().push(idx);
        }
    }

    fn remove_triangle(&mut self, idx: usize) {
        let t = self.triangles[idx].take().expect("triangle is live");
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            let inc = self.edges.get_mut(&(a, b)).expect("edge is registered");
            inc.retain(|&x| x != idx);
            if inc.is_empty() {
                self.edges.remove(&(a, b));
            }
        }
    }

    /// Join `p` (outside the current hull) to every hull edge it strictly
    /// sees, then restore the empty-circle property by Lawson flips.
    fn insert(&mut self, p: SiteId) {
        let h = self.hull.len();
        let visible: Vec<bool> = (0..h)
            .map(|k| {
                let a = self.hull[k];
                let b = self.hull[(k + 1) % h];
                orientation(&self.pts[a], &self.pts[b], &self.pts[p]) == Orientation::Cw
            })
            .collect();
        // Strictly visible edges form one contiguous run around the hull.
        let start = (0..h)
            .find(|&k| visible[k] && !visible[(k + h - 1) % h])
            .expect("a point outside the hull sees at least one edge");
        let len = (0..h)
            .take_while(|&off| visible[(start + off) % h])
            .count();

        let mut pending = Vec::with_capacity(len);
        for off in 0..len {
            let a = self.hull[(start + off) % h];
            let b = self.hull[(start + off + 1) % h];
            self.add_triangle([a, b, p]);
            pending.push((a, b));
        }

        // Replace the interior of the visible chain with p.
        let mut new_hull = Vec::with_capacity(h - len + 2);
        for off in len..=h {
            new_hull.push(self.hull[(start + off) % h]);
        }
        new_hull.push(p);
        self.hull = new_hull;

        self.legalize(pending);
    }

    fn legalize(&mut self, mut stack: Vec<(SiteId, SiteId)>) {
        while let Some((u, v)) = stack.pop() {
            let Some(inc) = self.edges.get(&key(u, v)) else {
                continue; // flipped away since it was pushed
            };
            if inc.len() != 2 {
                continue; // hull edge
            }
            let (i1, i2) = (inc[0], inc[1]);
            let c = opposite(self.triangles[i1].expect("live"), u, v);
            let d = opposite(self.triangles[i2].expect("live"), u, v);
            let pos = in_circle(&self.pts[u], &self.pts[v], &self.pts[c], &self.pts[d])
                .expect("triangulation triangles are never collinear");
            // Exactly cocircular quads keep their current diagonal; either
            // choice is a valid Delaunay triangulation.
            if pos == CirclePosition::Inside {
                self.remove_triangle(i1);
                self.remove_triangle(i2);
                self.add_triangle([c, d, u]);
                self.add_triangle([c, d, v]);
                stack.push((u, c));
                stack.push((c, v));
                stack.push((v, d));
                stack.push((d, u));
            }
        }
    }

    fn finish(self, sites: &SiteSet) -> Triangulation {
        let mut triangles: Vec<[SiteId; 3]> = self.triangles.into_iter().flatten().collect();
        triangles.sort_unstable();

        let mut edges: BTreeMap<(SiteId, SiteId), (usize, Option<usize>)> = BTreeMap::new();
        for (idx, t) in triangles.iter().enumerate() {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                match edges.entry((a, b)) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert((idx, None));
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let slot = e.get_mut();
                        debug_assert!(slot.1.is_none(), "an edge has at most two triangles");
                        slot.1 = Some(idx);
                    }
                }
            }
        }

        Triangulation {
            sites: sites.clone(),
            triangles,
            edges,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Scalar;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn sites(coords: &[(i64, i64)]) -> SiteSet {
        SiteSet::from_ints(coords).unwrap()
    }

    /// Distinct rational points on the unit circle: t sweeps the slopes of
    /// chords through (-1, 0), plus (-1, 0) itself for the infinite slope.
    pub(crate) fn circle_points(ts: &[(i64, i64)], include_west: bool) -> SiteSet {
        let mut pts = Vec::new();
        for &(n, d) in ts {
            let t = Scalar::ratio(n, d);
            let t2 = &t * &t;
            let denom = Scalar::one() + t2.clone();
            let x = (Scalar::one() - t2) / denom.clone();
            let y = Scalar::from(2) * t / denom;
            pts.push(Point::new(x, y));
        }
        if include_west {
            pts.push(Point::from_ints(-1, 0));
        }
        SiteSet::new(pts).unwrap()
    }

    #[test]
    fn single_triangle() {
        let t = triangulate(&sites(&[(0, 0), (4, 0), (0, 4)])).unwrap();
        assert_eq!(t.triangles(), &[[0, 1, 2]]);
        assert_eq!(t.edges(), vec![(0, 1), (0, 2), (1, 2)]);
        for (i, j) in t.edges() {
            assert_eq!(t.classify_edge(i, j).unwrap(), EdgeClass::NonDegenerate);
        }
    }

    #[test]
    fn square_has_degenerate_diagonal() {
        let s = sites(&[(0, 0), (2, 0), (2, 2), (0, 2)]);
        let t = triangulate(&s).unwrap();
        assert_eq!(t.triangles().len(), 2);
        assert_eq!(t.edge_count(), 5);
        let diagonal = t
            .edges()
            .into_iter()
            .find(|&(i, j)| matches!((i, j), (0, 2) | (1, 3)))
            .expect("one diagonal is present");
        assert_eq!(
            t.classify_edge(diagonal.0, diagonal.1).unwrap(),
            EdgeClass::Degenerate
        );
        for (i, j) in t.edges() {
            if (i, j) != diagonal {
                assert_eq!(t.classify_edge(i, j).unwrap(), EdgeClass::NonDegenerate);
            }
        }
        assert_eq!(t.classify_edge(0, 0), Err(Error::NotAnEdge { i: 0, j: 0 }));
    }

    #[test]
    fn square_graph_is_the_four_sides() {
        let g = delaunay_graph(&sites(&[(0, 0), (2, 0), (2, 2), (0, 2)]));
        assert_eq!(g.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            triangulate(&sites(&[(0, 0), (1, 1)])).err(),
            Some(Error::TooFewSites { needed: 3, got: 2 })
        );
        assert_eq!(
            triangulate(&sites(&[(0, 0), (1, 0), (3, 0)])).err(),
            Some(Error::AllCollinear)
        );

        let g = delaunay_graph(&sites(&[(5, 5)]));
        assert_eq!(g.edge_count(), 0);
        let g = delaunay_graph(&sites(&[(0, 0), (7, 1)]));
        assert_eq!(g.edges(), vec![(0, 1)]);
        // consecutive along the line, regardless of listing order
        let g = delaunay_graph(&sites(&[(3, 0), (0, 0), (1, 0)]));
        assert_eq!(g.edges(), vec![(0, 2), (1, 2)]);
        let g = delaunay_graph(&sites(&[(0, 0), (1, 0), (3, 0)]));
        assert_eq!(g.edges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn collinear_prefix_bootstrap() {
        // three sites share the leftmost vertical line
        let s = sites(&[(0, 0), (0, 1), (0, 2), (5, 0), (5, 2)]);
        let t = triangulate(&s).unwrap();
        let ids: BTreeSet<_> = t.edges().into_iter().collect();
        assert!(ids.contains(&(0, 1)) && ids.contains(&(1, 2)));
        assert_empty_circle(&t);
    }

    #[test]
    fn twelve_cocircular_points_give_the_cycle() {
        let s = circle_points(
            &[
                (0, 1),
                (1, 1),
                (-1, 1),
                (1, 2),
                (-1, 2),
                (1, 3),
                (-1, 3),
                (2, 1),
                (-2, 1),
                (3, 1),
                (-3, 1),
            ],
            true,
        );
        assert_eq!(s.len(), 12);
        let g = delaunay_graph(&s);
        assert_eq!(g.edge_count(), 12);
        for i in s.ids() {
            assert_eq!(g.degree(i), 2, "cycle vertex {i}");
        }
        // every chord of the triangulation is degenerate
        let t = triangulate(&s).unwrap();
        assert_eq!(t.triangles().len(), 10);
        let mut degenerate = 0;
        for (i, j) in t.edges() {
            if t.classify_edge(i, j).unwrap() == EdgeClass::Degenerate {
                degenerate += 1;
            }
        }
        assert_eq!(degenerate, t.edge_count() - 12);
    }

    pub(crate) fn assert_empty_circle(t: &Triangulation) {
        let pts = t.sites().points();
        for tri in t.triangles() {
            for (id, d) in pts.iter().enumerate() {
                if tri.contains(&id) {
                    continue;
                }
                let pos = in_circle(&pts[tri[0]], &pts[tri[1]], &pts[tri[2]], d).unwrap();
                assert_ne!(
                    pos,
                    CirclePosition::Inside,
                    "site {id} inside circumcircle of {tri:?}"
                );
            }
        }
    }

    fn distinct_int_sites(n: std::ops::Range<usize>, span: i64) -> impl Strategy<Value = SiteSet> {
        proptest::collection::btree_set((-span..=span, -span..=span), n)
            .prop_filter_map("needs a non-degenerate site set", |set| {
                let coords: Vec<(i64, i64)> = set.into_iter().collect();
                SiteSet::from_ints(&coords).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn empty_circle_property(s in distinct_int_sites(3..14, 8)) {
            match triangulate(&s) {
                Ok(t) => assert_empty_circle(&t),
                Err(Error::AllCollinear) => {}
                Err(e) => return Err(TestCaseError::fail(format!("{e}"))),
            }
        }

        #[test]
        fn triangulation_matches_oracle(s in distinct_int_sites(3..12, 6)) {
            let Ok(t) = triangulate(&s) else { return Ok(()) };
            for i in s.ids() {
                for j in i + 1..s.len() {
                    let (class, _) = edge_oracle(&s, i, j).unwrap();
                    if t.has_edge(i, j) {
                        prop_assert_eq!(t.classify_edge(i, j).unwrap(), class);
                    } else {
                        // a degenerate pair may be the diagonal we did not pick
                        prop_assert_ne!(class, EdgeClass::NonDegenerate);
                    }
                }
            }
        }

        #[test]
        fn graph_equals_oracle_nondegenerate_set(s in distinct_int_sites(1..12, 6)) {
            let g = delaunay_graph(&s);
            let mut expected = Vec::new();
            for i in s.ids() {
                for j in i + 1..s.len() {
                    if edge_oracle(&s, i, j).unwrap().0 == EdgeClass::NonDegenerate {
                        expected.push((i, j));
                    }
                }
            }
            prop_assert_eq!(g.edges(), expected);
        }

        #[test]
        fn graph_is_planar(s in distinct_int_sites(1..12, 6)) {
            use crate::kernel::segments_intersect;
            let g = delaunay_graph(&s);
            let edges = g.edges();
            let pts = s.points();
            for (a, e1) in edges.iter().enumerate() {
                for e2 in &edges[a + 1..] {
                    if e1.0 == e2.0 || e1.0 == e2.1 || e1.1 == e2.0 || e1.1 == e2.1 {
                        continue;
                    }
                    prop_assert!(
                        !segments_intersect(&pts[e1.0], &pts[e1.1], &pts[e2.0], &pts[e2.1]),
                        "edges {:?} and {:?} cross", e1, e2
                    );
                }
            }
        }

        #[test]
        fn geometry_is_stable_under_relabeling(s in distinct_int_sites(3..10, 6), seed in 0u64..1000) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;

            let mut perm: Vec<usize> = (0..s.len()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let shuffled =
                SiteSet::new(perm.iter().map(|&k| s[k].clone()).collect()).unwrap();

            let canon = |g: &GeometricGraph| -> BTreeSet<(Point, Point)> {
                g.edges()
                    .into_iter()
                    .map(|(i, j)| {
                        let (p, q) = (g.point(i).clone(), g.point(j).clone());
                        if p <= q { (p, q) } else { (q, p) }
                    })
                    .collect()
            };
            prop_assert_eq!(canon(&delaunay_graph(&s)), canon(&delaunay_graph(&shuffled)));
        }
    }
}
