//! Does a given graph support greedy routing? Two independent decision
//! procedures answer the question, and they must never disagree.
//!
//! The edge test checks that the graph contains every non-degenerate
//! Delaunay edge of its site set. The region test checks that every site's
//! vertex region equals its Voronoi cell. Both are exact, and their forced
//! agreement on every instance is the strongest continuous self-check this
//! crate has, so the verdict always runs both. A negative verdict comes
//! with a replayable counterexample: a concrete destination and the stuck
//! route toward it.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::delaunay::delaunay_graph;
use crate::graph::GeometricGraph;
use crate::point::Point;
use crate::regions::regions_equal;
use crate::routing::{nearest_site, route, RouteKind, RouteOutcome};
use crate::scalar::Scalar;
use crate::sites::{SiteId, SiteSet};

/// A destination no greedy walk from `node` can serve: the route gets
/// stuck even though some other site is strictly nearer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub node: SiteId,
    pub destination: Point,
    pub trace: RouteOutcome,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SupportVerdict {
    pub supports: bool,
    /// Does the edge set contain every non-degenerate Delaunay edge?
    pub method_edge_test: bool,
    /// Does every vertex region equal its Voronoi cell?
    pub method_region_test: bool,
    /// Non-degenerate Delaunay edges absent from the graph, ascending.
    pub missing_edges: Vec<(SiteId, SiteId)>,
    pub counterexample: Option<Counterexample>,
}

/// Decide support by both methods and, when it fails, produce a stuck
/// trace. The two method flags are equal on every input; a mismatch would
/// be a bug in this crate, not a property of the graph.
pub fn supports_greedy(g: &GeometricGraph) -> SupportVerdict {
    let canonical = delaunay_graph(g.sites());
    let missing_edges: Vec<(SiteId, SiteId)> = canonical
        .edges()
        .into_iter()
        .filter(|&(i, j)| !g.has_edge(i, j))
        .collect();
    let method_edge_test = missing_edges.is_empty();

    let mut method_region_test = true;
    let mut failure: Option<(SiteId, Point)> = None;
    for i in g.sites().ids() {
        let verdict = regions_equal(g, i);
        if !verdict.equal {
            method_region_test = false;
            if failure.is_none() {
                let w = verdict.witness.expect("an unequal verdict carries a witness");
                failure = Some((i, w));
            }
        }
    }

    debug_assert_eq!(
        method_edge_test, method_region_test,
        "the two support characterizations disagreed"
    );

    let counterexample = failure.map(|(node, destination)| {
        let trace = route(g, node, &destination);
        debug_assert_eq!(trace.kind, RouteKind::Stuck);
        debug_assert!(!nearest_site(g.sites(), &destination).contains(&trace.terminal()));
        Counterexample {
            node,
            destination,
            trace,
        }
    });

    SupportVerdict {
        supports: method_edge_test && method_region_test,
        method_edge_test,
        method_region_test,
        missing_edges,
        counterexample,
    }
}

/// True iff the graph supports greedy routing and no single edge can be
/// removed without breaking that. Checked literally, by removing each edge
/// in turn; equivalently, the edge set is exactly the non-degenerate
/// Delaunay edges.
pub fn is_sparsest_support(g: &GeometricGraph) -> bool {
    if !supports_greedy(g).supports {
        return false;
    }
    for (i, j) in g.edges() {
        let mut reduced = g.clone();
        reduced.remove_edge(i, j).expect("edge listed by the graph");
        if supports_greedy(&reduced).supports {
            return false;
        }
    }
    true
}

/// One randomized trial of [`cross_validate`].
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub removed: Vec<(SiteId, SiteId)>,
    pub added: Vec<(SiteId, SiteId)>,
    pub methods_agree: bool,
    pub supports: bool,
    /// Routes delivered across the destination battery (supported trials).
    pub delivered: usize,
    /// Routes stuck across the battery; must stay 0 on supported trials.
    pub stuck: usize,
    /// For unsupported trials: did the counterexample replay as a stuck
    /// trace ending away from every nearest site?
    pub counterexample_holds: Option<bool>,
}

/// Deterministic empirical report tying the three characterizations
/// together over randomized edits of the Delaunay graph.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CrossValidation {
    pub seed: u64,
    pub trials: Vec<TrialOutcome>,
}

impl CrossValidation {
    pub fn all_passed(&self) -> bool {
        self.trials.iter().all(|t| {
            t.methods_agree
                && if t.supports {
                    t.stuck == 0
                } else {
                    t.counterexample_holds == Some(true)
                }
        })
    }
}

/// Run `trials` randomized sub/supersets of the Delaunay graph of `s`
/// (trial 0 is the unmodified graph). Every trial records method
/// agreement; supported trials route from every source to a battery of
/// destinations (each site location plus seeded random rational points)
/// counting deliveries, unsupported ones replay their counterexample.
/// Outcomes are reported as data, not asserted; same seed, same report.
pub fn cross_validate(s: &SiteSet, trials: usize, seed: u64) -> CrossValidation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = delaunay_graph(s);
    let n = s.len();

    let mut report = Vec::with_capacity(trials);
    for trial in 0..trials {
        let mut g = base.clone();
        let mut removed = Vec::new();
        let mut added = Vec::new();
        if trial > 0 {
            let drop_one_in = rng.gen_range(2..=6u32);
            let add_one_in = rng.gen_range(3..=10u32);
            for (i, j) in base.edges() {
                if rng.gen_ratio(1, drop_one_in) {
                    g.remove_edge(i, j).expect("edge listed by the base graph");
                    removed.push((i, j));
                }
            }
            for i in s.ids() {
                for j in i + 1..n {
                    if !base.has_edge(i, j) && rng.gen_ratio(1, add_one_in) {
                        g.add_edge(i, j).expect("pair verified absent");
                        added.push((i, j));
                    }
                }
            }
        }

        let verdict = supports_greedy(&g);
        let methods_agree = verdict.method_edge_test == verdict.method_region_test;

        let mut delivered = 0;
        let mut stuck = 0;
        let mut counterexample_holds = None;
        if verdict.supports {
            let battery = destination_battery(s, &mut rng, n);
            for src in s.ids() {
                for dest in &battery {
                    match route(&g, src, dest).kind {
                        RouteKind::Delivered => delivered += 1,
                        RouteKind::Stuck => stuck += 1,
                    }
                }
            }
        } else {
            let c = verdict
                .counterexample
                .as_ref()
                .expect("unsupported verdicts carry a counterexample");
            let replay = route(&g, c.node, &c.destination);
            let holds = replay.kind == RouteKind::Stuck
                && !nearest_site(s, &c.destination).contains(&replay.terminal());
            counterexample_holds = Some(holds);
        }

        report.push(TrialOutcome {
            trial,
            removed,
            added,
            methods_agree,
            supports: verdict.supports,
            delivered,
            stuck,
            counterexample_holds,
        });
    }

    CrossValidation {
        seed,
        trials: report,
    }
}

/// Every site location plus `extra` seeded random rational points spanning
/// the site bounding box (with margin). The box is sized through a float
/// once; the points themselves are exact rationals.
pub fn destination_battery(s: &SiteSet, rng: &mut ChaCha8Rng, extra: usize) -> Vec<Point> {
    let mut battery: Vec<Point> = s.points().to_vec();
    let mut bound = 1i64;
    for p in s {
        for c in [&p.x, &p.y] {
            let a = c.to_f64().abs().ceil() as i64 + 1;
            if a > bound {
                bound = a;
            }
        }
    }
    for _ in 0..extra {
        let den = rng.gen_range(1..=12i64);
        let xn = rng.gen_range(-bound * den..=bound * den);
        let yn = rng.gen_range(-bound * den..=bound * den);
        battery.push(Point::new(Scalar::ratio(xn, den), Scalar::ratio(yn, den)));
    }
    battery
}
