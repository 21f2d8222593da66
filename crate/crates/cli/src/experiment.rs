//! Batch experiments: generate instances, build a substrate graph, decide
//! support both ways, cross-validate, and route a destination battery.
//! Reports are a pure function of the config; wall-clock time is kept out
//! of the serialized output so reruns are byte-identical.

use std::time::{Duration, Instant};

use anyhow::ensure;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use greedygeo::delaunay::delaunay_graph;
use greedygeo::routing::{route, RouteKind};
use greedygeo::verifier::{cross_validate, destination_battery, supports_greedy, Counterexample};
use greedygeo::{GeometricGraph, Scalar};

use crate::generate::{generate, GeneratorSpec};
use crate::io::InstanceFile;
use crate::perturb::{perturb, PerturbOp};

fn default_battery() -> usize {
    10
}

fn default_cv_trials() -> usize {
    2
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub trials: usize,
    pub seed: u64,
    pub n_min: usize,
    pub n_max: usize,
    pub coordinate_bound: i64,
    pub substrate: Substrate,
    /// Random battery destinations per site (the battery always includes
    /// every site location).
    #[serde(default = "default_battery")]
    pub battery_per_site: usize,
    #[serde(default = "default_cv_trials")]
    pub cross_validate_trials: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Substrate {
    Delaunay,
    DelaunayMinusRandomEdge,
    Complete,
    Knn { k: usize },
    UnitDisk { r: Scalar },
}

impl Substrate {
    fn label(&self) -> String {
        match self {
            Substrate::Delaunay => "delaunay".into(),
            Substrate::DelaunayMinusRandomEdge => "delaunay-minus-random-edge".into(),
            Substrate::Complete => "complete".into(),
            Substrate::Knn { k } => format!("knn-{k}"),
            Substrate::UnitDisk { r } => format!("unit-disk-{r}"),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialReport {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub substrate: String,
    pub supports: bool,
    pub methods_agree: bool,
    pub missing_edges: usize,
    pub routes_total: usize,
    pub routes_delivered: usize,
    pub delivery_rate: f64,
    pub mean_hops: f64,
    pub max_hops: usize,
    pub cross_validation_passed: bool,
    pub assertions_held: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    /// The instance, serialized for replay; present only when the trial's
    /// assertions failed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub failing_instance: Option<InstanceFile>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub config: ExperimentConfig,
    pub trials: Vec<TrialReport>,
    pub all_assertions_held: bool,
    #[serde(skip, default)]
    pub wall_clock: Duration,
}

impl ExperimentReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("seed,n,substrate,supports,delivery_rate,max_hops\n");
        for t in &self.trials {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                t.seed, t.n, t.substrate, t.supports, t.delivery_rate, t.max_hops
            ));
        }
        out
    }
}

pub fn run_experiment(config: &ExperimentConfig) -> anyhow::Result<ExperimentReport> {
    ensure!(config.trials >= 1, "trials must be at least 1");
    ensure!(config.n_min >= 2, "n_min must be at least 2");
    ensure!(config.n_min <= config.n_max, "n_min must not exceed n_max");
    ensure!(config.coordinate_bound >= 1, "coordinate_bound must be positive");

    let started = Instant::now();
    let mut master = ChaCha8Rng::seed_from_u64(config.seed);
    let trial_seeds: Vec<u64> = (0..config.trials).map(|_| master.gen()).collect();

    // trials are independent; the report stays ordered by trial index
    let trials: Vec<TrialReport> = trial_seeds
        .par_iter()
        .enumerate()
        .map(|(trial, &seed)| run_trial(config, trial, seed))
        .collect::<anyhow::Result<_>>()?;

    let all_assertions_held = trials.iter().all(|t| t.assertions_held);
    Ok(ExperimentReport {
        config: config.clone(),
        trials,
        all_assertions_held,
        wall_clock: started.elapsed(),
    })
}

fn run_trial(config: &ExperimentConfig, trial: usize, seed: u64) -> anyhow::Result<TrialReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.gen_range(config.n_min..=config.n_max);
    let sites = generate(&GeneratorSpec::UniformGrid {
        n,
        seed: rng.gen(),
        bound: config.coordinate_bound,
    })?;
    let base = delaunay_graph(&sites);

    let g: GeometricGraph = match &config.substrate {
        Substrate::Delaunay => base,
        Substrate::DelaunayMinusRandomEdge => {
            let edges = base.edges();
            let (i, j) = edges[rng.gen_range(0..edges.len())];
            perturb(&base, &PerturbOp::DropEdge { i, j })?
        }
        Substrate::Complete => GeometricGraph::complete(sites.clone()),
        Substrate::Knn { k } => perturb(&base, &PerturbOp::KnnRewire { k: *k })?,
        Substrate::UnitDisk { r } => perturb(&base, &PerturbOp::UnitDisk { r: r.clone() })?,
    };

    let verdict = supports_greedy(&g);
    let methods_agree = verdict.method_edge_test == verdict.method_region_test;
    let cv = cross_validate(&sites, config.cross_validate_trials, rng.gen());

    let battery = destination_battery(&sites, &mut rng, config.battery_per_site * n);
    let mut delivered = 0usize;
    let mut hops_sum = 0usize;
    let mut max_hops = 0usize;
    for dest in &battery {
        let src = rng.gen_range(0..n);
        let out = route(&g, src, dest);
        if out.kind == RouteKind::Delivered {
            delivered += 1;
        }
        hops_sum += out.hops();
        max_hops = max_hops.max(out.hops());
    }
    let total = battery.len();

    let counterexample_ok = verdict
        .counterexample
        .as_ref()
        .map(|c| c.trace.kind == RouteKind::Stuck)
        .unwrap_or(false);
    let assertions_held = methods_agree
        && cv.all_passed()
        && if verdict.supports {
            delivered == total
        } else {
            counterexample_ok
        };

    Ok(TrialReport {
        trial,
        seed,
        n,
        substrate: config.substrate.label(),
        supports: verdict.supports,
        methods_agree,
        missing_edges: verdict.missing_edges.len(),
        routes_total: total,
        routes_delivered: delivered,
        delivery_rate: delivered as f64 / total as f64,
        mean_hops: hops_sum as f64 / total as f64,
        max_hops,
        cross_validation_passed: cv.all_passed(),
        assertions_held,
        counterexample: verdict.counterexample,
        failing_instance: if assertions_held {
            None
        } else {
            Some(InstanceFile::from_graph(&g))
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(substrate: Substrate) -> ExperimentConfig {
        ExperimentConfig {
            trials: 6,
            seed: 11,
            n_min: 5,
            n_max: 14,
            coordinate_bound: 1000,
            substrate,
            battery_per_site: 3,
            cross_validate_trials: 2,
        }
    }

    #[test]
    fn delaunay_substrate_delivers_everything() {
        let report = run_experiment(&config(Substrate::Delaunay)).unwrap();
        assert!(report.all_assertions_held);
        for t in &report.trials {
            assert!(t.supports);
            assert_eq!(t.delivery_rate, 1.0);
        }
    }

    #[test]
    fn removing_an_edge_always_breaks_support() {
        let report = run_experiment(&config(Substrate::DelaunayMinusRandomEdge)).unwrap();
        assert!(report.all_assertions_held);
        for t in &report.trials {
            assert!(!t.supports);
            assert!(t.counterexample.is_some());
        }
    }

    #[test]
    fn knn_substrate_keeps_method_agreement() {
        let report = run_experiment(&config(Substrate::Knn { k: 3 })).unwrap();
        for t in &report.trials {
            assert!(t.methods_agree);
        }
    }

    #[test]
    fn reports_reproduce_byte_for_byte() {
        let cfg = config(Substrate::Knn { k: 2 });
        let a = run_experiment(&cfg).unwrap();
        let b = run_experiment(&cfg).unwrap();
        assert_eq!(a.to_json(), b.to_json());
        assert_eq!(a.to_csv(), b.to_csv());
    }

    #[test]
    fn bad_configs_are_rejected() {
        let mut cfg = config(Substrate::Delaunay);
        cfg.n_min = 1;
        assert!(run_experiment(&cfg).is_err());
        cfg.n_min = 20;
        assert!(run_experiment(&cfg).is_err());
    }
}
