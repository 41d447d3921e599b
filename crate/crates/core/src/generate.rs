//! Seeded random instances.

use crate::games::{Coalition, Edge, ExplicitGame, IsGame};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Erdős–Rényi style IS games with integer weights.
///
/// Each unordered pair is an edge with probability `edge_prob`, weighted
/// uniformly on `1..=w_max`. A vertex left isolated is joined to a random
/// other vertex by a unit-weight edge.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeneratorConfig {
    pub n: usize,
    pub edge_prob: f64,
    pub w_max: i64,
    pub seed: u64,
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 2 || self.n > 64 {
            return Err(Error::InvalidGame(format!("vertex count {} outside 2..=64", self.n)));
        }
        if !(self.edge_prob > 0.0 && self.edge_prob <= 1.0) {
            return Err(Error::InvalidGame(format!(
                "edge probability {} outside (0, 1]",
                self.edge_prob
            )));
        }
        if self.w_max < 1 {
            return Err(Error::InvalidGame(format!("w_max {} must be positive", self.w_max)));
        }
        Ok(())
    }
}

/// A generated game plus the vertices whose isolation was repaired.
#[derive(Debug, Clone, PartialEq)]
pub struct Generated {
    pub game: IsGame,
    pub repaired: Vec<usize>,
}

pub fn random_is_game(config: &GeneratorConfig) -> Result<Generated> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let n = config.n;
    let mut edges = Vec::new();
    let mut degree = vec![0usize; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(config.edge_prob) {
                edges.push(Edge {
                    u,
                    v,
                    weight: rng.gen_range(1..=config.w_max),
                });
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    let mut repaired = Vec::new();
    for u in 0..n {
        if degree[u] == 0 {
            let mut v = rng.gen_range(0..n - 1);
            if v >= u {
                v += 1;
            }
            edges.push(Edge {
                u: u.min(v),
                v: u.max(v),
                weight: 1,
            });
            degree[u] += 1;
            degree[v] += 1;
            repaired.push(u);
        }
    }
    let names = (0..n).map(|i| format!("v{i}")).collect();
    Ok(Generated {
        game: IsGame::new(names, edges)?,
        repaired,
    })
}

/// Random monotone supermodular game on `n` players with `v(N) ≤ max_total`:
/// a nonnegative combination of additive terms, unanimity games `[T ⊆ S]`
/// and convex functions `C(|S ∩ T|, 2)` of overlap counts.
pub fn random_convex_game(n: usize, max_total: i64, seed: u64) -> Result<ExplicitGame> {
    if n == 0 || max_total < 1 {
        return Err(Error::InvalidGame("need n ≥ 1 and a positive total".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = 1u64 << n;
    let random_set = |rng: &mut ChaCha8Rng| Coalition(rng.gen_range(1..full));
    loop {
        let additive: Vec<i64> = (0..n).map(|_| rng.gen_range(0..=2)).collect();
        let unanimity: Vec<(Coalition, i64)> = (0..rng.gen_range(0..=3))
            .map(|_| (random_set(&mut rng), rng.gen_range(1..=4)))
            .collect();
        let pairs: Vec<(Coalition, i64)> = (0..rng.gen_range(0..=2))
            .map(|_| (random_set(&mut rng), rng.gen_range(1..=2)))
            .collect();
        let value = |s: Coalition| {
            let a: i64 = s.members().map(|i| additive[i]).sum();
            let u: i64 = unanimity
                .iter()
                .filter(|(t, _)| t.is_subset_of(s))
                .map(|(_, w)| w)
                .sum();
            let p: i64 = pairs
                .iter()
                .map(|(t, w)| {
                    let k = s.intersection(*t).len() as i64;
                    w * k * (k - 1) / 2
                })
                .sum();
            a + u + p
        };
        let total = value(Coalition::full(n));
        if total >= 1 && total <= max_total {
            return ExplicitGame::from_fn(n, value);
        }
    }
}
