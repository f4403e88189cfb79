use gwlp_core::{DesignSpec, Fraction, Point};
use rand::prelude::*;

/// Samples a single-replicate fraction of `n` distinct points.
pub fn random_single_replicate(design: &DesignSpec, n: usize, rng: &mut StdRng) -> Fraction {
    let all: Vec<Point> = design.points().collect();
    let picked = rand::seq::index::sample(rng, all.len(), n);
    Fraction::new(
        design.clone(),
        picked.into_iter().map(|i| (all[i].clone(), 1)),
    )
    .unwrap()
}

/// Samples a fraction with multiplicities in 1..=3 on `support` distinct points.
#[allow(dead_code)]
pub fn random_multiset(design: &DesignSpec, support: usize, rng: &mut StdRng) -> Fraction {
    let all: Vec<Point> = design.points().collect();
    let picked = rand::seq::index::sample(rng, all.len(), support);
    Fraction::new(
        design.clone(),
        picked
            .into_iter()
            .map(|i| (all[i].clone(), rng.gen_range(1..=3))),
    )
    .unwrap()
}
