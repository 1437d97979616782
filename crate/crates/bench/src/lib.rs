//! Benchmark fixtures.

use building_core::{corpus, MetricComplex};

/// Complexes timed by the recognition benchmarks.
pub fn fixtures() -> Vec<(&'static str, MetricComplex)> {
    let mut v: Vec<(&'static str, MetricComplex)> = ["heawood", "tutte-coxeter", "k33", "octahedron", "suspended-heawood"]
        .into_iter()
        .map(|n| (n, corpus::named(n).expect("named example")))
        .collect();
    v.push(("A3", corpus::coxeter_complex("A3").expect("A3")));
    v.push(("~A2-r3", corpus::euclidean_window("~A2", 3).expect("window")));
    v
}
