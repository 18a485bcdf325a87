//! Fixtures shared by the criterion benchmarks.

use gorenstein::complexes::turan_complex;
use gorenstein::families::odd_counterexample;
use gorenstein::{Graph, Polynomial};

/// `(id, f)` pairs spanning small to mid-size codimension.
pub fn workloads() -> Vec<(&'static str, Polynomial)> {
    vec![
        ("square", Graph::cycle(4).dual_generator().expect("pure")),
        ("tk222", turan_complex(&[2, 2, 2]).and_then(|c| c.dual_generator()).expect("pure")),
        ("odd-d5-codim10", odd_counterexample(5, 10).expect("in range")),
    ]
}
