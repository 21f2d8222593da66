//! Harness pieces behind the `greedygeo` binary: generators, graph
//! perturbations, experiment orchestration, file formats, and SVG
//! rendering. Split out as a library so integration tests can drive the
//! same code paths the binary does.

pub mod experiment;
pub mod generate;
pub mod io;
pub mod perturb;
pub mod render;
