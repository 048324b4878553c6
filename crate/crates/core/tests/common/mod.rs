#![allow(dead_code)]

use std::path::PathBuf;

use citepr::{CellKey, CitationDistribution};
use rand::Rng;
use rand_distr::{Distribution, Pareto};

pub fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

/// The 21-paper example set.
pub fn sample_citations() -> Vec<u64> {
    vec![
        20, 20, 13, 13, 10, 9, 8, 8, 7, 7, 7, 7, 3, 2, 1, 1, 1, 0, 0, 0, 0,
    ]
}

pub fn sample21() -> CitationDistribution {
    CitationDistribution::from_citations(CellKey::new(2000, "PHYS"), sample_citations()).unwrap()
}

/// Skewed integer citation count: a shifted discrete Pareto draw.
pub fn power_law_cc<R: Rng>(rng: &mut R, scale: f64, shape: f64) -> u64 {
    let x: f64 = Pareto::new(1.0, shape).unwrap().sample(rng);
    (scale * (x - 1.0)).floor().min(1e7) as u64
}

/// Random skewed distribution with `n` papers.
pub fn random_distribution<R: Rng>(rng: &mut R, n: usize) -> CitationDistribution {
    let scale = rng.random_range(0.5..20.0);
    let shape = rng.random_range(0.8..3.0);
    let ccs: Vec<u64> = (0..n).map(|_| power_law_cc(rng, scale, shape)).collect();
    CitationDistribution::from_citations(CellKey::new(2000, "RND"), ccs).unwrap()
}

pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
