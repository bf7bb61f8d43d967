//! Seeded instance generators. Randomness comes from ChaCha8 seeded with the
//! caller's `u64`, so the same arguments always produce the same graph.

use num_traits::{Signed, ToPrimitive};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use super::{BipartiteGraph, Rational};
use crate::solvers::Biclique;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("probability {0} outside [0, 1]")]
    Probability(Rational),
    #[error("probability {0} has a numerator or denominator wider than 64 bits")]
    ProbabilityPrecision(Rational),
    #[error("planted side of {plant} exceeds side of {side}")]
    PlantTooLarge { plant: usize, side: usize },
}

/// Exact Bernoulli trial with a rational success probability.
struct Coin {
    num: u64,
    den: u64,
}

impl Coin {
    fn new(p: &Rational) -> Result<Self, GenerateError> {
        if p.is_negative() || p > &Rational::from_integer(1.into()) {
            return Err(GenerateError::Probability(p.clone()));
        }
        let num = p.numer().to_u64();
        let den = p.denom().to_u64();
        match (num, den) {
            (Some(num), Some(den)) => Ok(Coin { num, den }),
            _ => Err(GenerateError::ProbabilityPrecision(p.clone())),
        }
    }

    fn flip(&self, rng: &mut ChaCha8Rng) -> bool {
        rng.gen_range(0..self.den) < self.num
    }
}

/// Each left-right pair becomes a unit edge independently with `probability`.
pub fn generate_random_bipartite(
    left: usize,
    right: usize,
    probability: &Rational,
    seed: u64,
) -> Result<BipartiteGraph, GenerateError> {
    let coin = Coin::new(probability)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for l in 0..left {
        for r in 0..right {
            if coin.flip(&mut rng) {
                edges.push((l, r));
            }
        }
    }
    Ok(BipartiteGraph::unit(left, right, edges).expect("generated pairs are distinct"))
}

/// Plants a complete `plant_left x plant_right` biclique on randomly chosen
/// vertices; every other pair is an edge with `noise` probability.
pub fn generate_planted_biclique(
    left: usize,
    right: usize,
    plant_left: usize,
    plant_right: usize,
    noise: &Rational,
    seed: u64,
) -> Result<(BipartiteGraph, Biclique), GenerateError> {
    for (plant, side) in [(plant_left, left), (plant_right, right)] {
        if plant > side {
            return Err(GenerateError::PlantTooLarge { plant, side });
        }
    }
    let coin = Coin::new(noise)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pick = |side: usize, k: usize| {
        let mut all: Vec<usize> = (0..side).collect();
        all.shuffle(&mut rng);
        all.truncate(k);
        all.sort_unstable();
        all
    };
    let planted = Biclique::new(pick(left, plant_left), pick(right, plant_right));
    let mut in_left = vec![false; left];
    let mut in_right = vec![false; right];
    planted.left.iter().for_each(|&l| in_left[l] = true);
    planted.right.iter().for_each(|&r| in_right[r] = true);

    let mut edges = Vec::new();
    for (l, &planted_l) in in_left.iter().enumerate() {
        for (r, &planted_r) in in_right.iter().enumerate() {
            if (planted_l && planted_r) || coin.flip(&mut rng) {
                edges.push((l, r));
            }
        }
    }
    let graph = BipartiteGraph::unit(left, right, edges).expect("generated pairs are distinct");
    Ok((graph, planted))
}
