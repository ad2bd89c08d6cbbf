//! Seeded instance builders shared by the benchmark targets.

use clusterpants::geometry::{PointE2, PointH2};
use clusterpants::treecluster::DistanceMatrix;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_metric(n: usize, seed: u64) -> DistanceMatrix {
    let mut rng = rng(seed);
    DistanceMatrix::from_fn(n, |_, _| 1.0 + rng.gen::<f64>()).expect("valid metric")
}

pub fn random_points(n: usize, seed: u64) -> Vec<PointE2> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| PointE2::new(rng.gen(), rng.gen()))
        .collect()
}

pub fn random_hyperbolic_points(n: usize, radius: f64, seed: u64) -> Vec<PointH2> {
    let mut rng = rng(seed);
    (0..n)
        .map(|_| {
            let u: f64 = rng.gen();
            let t = (1.0 + u * (radius.cosh() - 1.0)).acosh();
            let theta = rng.gen::<f64>() * std::f64::consts::TAU;
            let rho = (t / 2.0).tanh();
            PointH2::new(rho * theta.cos(), rho * theta.sin()).expect("inside the disk")
        })
        .collect()
}

pub fn long_path(n: usize) -> clusterpants::bisectable::FreeTree {
    clusterpants::bisectable::FreeTree::path(n)
}
