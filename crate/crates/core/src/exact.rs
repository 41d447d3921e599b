//! Desk-scale exact oracles.
//!
//! Everything here enumerates: integer covers (depth-first, pruned by the
//! utopia payoffs and by the core constraints of the already-assigned prefix),
//! all `2^|E|` orientations of an IS game, or the finite candidate set of a
//! packing constant. Sizes are capped so that runs stay interactive.

use crate::algorithms::{cover_of_orientation, impact_matrix, GreedyTrace, Orientation, ZDecomposition};
use crate::flow::bounded_transportation;
use crate::games::{
    check_cover, normalize_rationals, shapley_general, utopia_payoff, Coalition, Cover,
    ExplicitGame, Game, IsGame,
};
use crate::measures::{renyi_divergence, renyi_entropy, Distribution, Order};
use crate::{Error, Rational, Result, TOLERANCE};
use rayon::prelude::*;

/// Largest edge count for exhaustive orientation search.
pub const MAX_ORIENTATION_EDGES: usize = 20;

/// Size limits for cover enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    pub max_players: usize,
    pub max_total: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Self {
            max_players: 8,
            max_total: 30,
        }
    }
}

impl Caps {
    fn check(&self, g: &ExplicitGame) -> Result<()> {
        let n = g.players();
        if n > self.max_players {
            return Err(Error::TooManyPlayers {
                n,
                limit: self.max_players,
            });
        }
        let total = g.grand_value();
        if total > self.max_total {
            return Err(Error::TotalTooLarge {
                total,
                limit: self.max_total,
            });
        }
        Ok(())
    }
}

struct Enumerator<'a> {
    g: &'a ExplicitGame,
    n: usize,
    total: i64,
    upper: Vec<i64>,
    /// Σ of `upper` over players `k..n`.
    tail_upper: Vec<i64>,
    /// `v(N) - v(N ∖ T)` for each T: the largest share T can hold in the core.
    ceiling: Vec<i64>,
}

impl<'a> Enumerator<'a> {
    fn new(g: &'a ExplicitGame) -> Self {
        let n = g.players();
        let total = g.grand_value();
        let upper: Vec<i64> = (0..n).map(|j| utopia_payoff(g, j).max(0)).collect();
        let mut tail_upper = vec![0i64; n + 1];
        for k in (0..n).rev() {
            tail_upper[k] = tail_upper[k + 1] + upper[k];
        }
        let full = Coalition::full(n);
        let ceiling = Coalition::all(n)
            .map(|t| total - g.value(Coalition(full.0 & !t.0)))
            .collect();
        Self {
            g,
            n,
            total,
            upper,
            tail_upper,
            ceiling,
        }
    }

    /// Assigns player `k` the value `xk`; returns false if some coalition
    /// whose largest member is `k` violates its core bounds.
    fn assign(&self, k: usize, xk: i64, psum: &mut [i64]) -> bool {
        let bit = 1usize << k;
        for s in 0..bit {
            let t = s | bit;
            let sum = psum[s] + xk;
            psum[t] = sum;
            if sum < self.g.values()[t] || sum > self.ceiling[t] {
                return false;
            }
        }
        true
    }

    fn run(&self, k: usize, assigned: i64, x: &mut Vec<i64>, psum: &mut [i64], out: &mut Vec<Cover>) {
        if k == self.n {
            if assigned == self.total {
                out.push(Cover::new(x.clone()).expect("nonnegative"));
            }
            return;
        }
        let remaining = self.total - assigned;
        if remaining > self.tail_upper[k] {
            return;
        }
        let hi = self.upper[k].min(remaining);
        let lo = if k + 1 == self.n { remaining } else { 0 };
        for xk in lo..=hi {
            if self.assign(k, xk, psum) {
                x.push(xk);
                self.run(k + 1, assigned + xk, x, psum, out);
                x.pop();
            }
        }
    }

    fn covers_with_first(&self, x0: i64) -> Vec<Cover> {
        let mut out = Vec::new();
        let mut psum = vec![0i64; 1 << self.n];
        if self.n == 0 {
            return out;
        }
        if self.assign(0, x0, &mut psum) {
            let mut x = vec![x0];
            self.run(1, x0, &mut x, &mut psum, &mut out);
        }
        out
    }

    fn first_range(&self) -> std::ops::RangeInclusive<i64> {
        let hi = self.upper[0].min(self.total);
        let lo = if self.n == 1 { self.total } else { 0 };
        lo..=hi
    }
}

/// All integer core allocations, in lexicographic order.
pub fn enumerate_covers(g: &ExplicitGame, caps: Caps) -> Result<Vec<Cover>> {
    caps.check(g)?;
    if g.players() == 0 {
        return Ok(Vec::new());
    }
    let e = Enumerator::new(g);
    Ok(e.first_range().flat_map(|x0| e.covers_with_first(x0)).collect())
}

/// Same output as [`enumerate_covers`], with the first player's range split
/// across the current rayon pool.
pub fn enumerate_covers_parallel(g: &ExplicitGame, caps: Caps) -> Result<Vec<Cover>> {
    caps.check(g)?;
    if g.players() == 0 {
        return Ok(Vec::new());
    }
    let e = Enumerator::new(g);
    let parts: Vec<Vec<Cover>> = e
        .first_range()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|x0| e.covers_with_first(x0))
        .collect();
    Ok(parts.into_iter().flatten().collect())
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let pivot = rows[rank].clone();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[c] == 0 {
                continue;
            }
            let f = row[c];
            let mut g = 0;
            for (x, &y) in row.iter_mut().zip(&pivot) {
                *x = *x * pivot[c] - y * f;
                g = gcd(g, *x);
            }
            if g > 1 {
                row.iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Whether `x` is a vertex of the core: its tight constraints
/// `x(S) = v(S)` (including `x(N) = v(N)`) have rank `n`.
pub fn is_extremal(g: &ExplicitGame, x: &Cover) -> bool {
    let n = g.players();
    let tight: Vec<Vec<i128>> = Coalition::all(n)
        .skip(1)
        .filter(|&s| x.sum_over(s) == g.value(s))
        .map(|s| (0..n).map(|i| s.contains(i) as i128).collect())
        .collect();
    integer_rank(tight) == n
}

pub fn extremal_covers(g: &ExplicitGame, covers: &[Cover]) -> Vec<Cover> {
    covers.iter().filter(|x| is_extremal(g, x)).cloned().collect()
}

fn argbest<T: Clone>(items: &[(T, f64)], better: impl Fn(f64, f64) -> bool) -> Option<(Vec<T>, f64)> {
    let best = items
        .iter()
        .map(|(_, v)| *v)
        .fold(None, |acc: Option<f64>, v| match acc {
            Some(b) if !better(v, b) => Some(b),
            _ => Some(v),
        })?;
    let winners = items
        .iter()
        .filter(|(_, v)| (v - best).abs() <= TOLERANCE || *v == best)
        .map(|(t, _)| t.clone())
        .collect();
    Some((winners, best))
}

/// Covers of minimum Rényi entropy, with the minimum.
#[derive(Debug, Clone, PartialEq)]
pub struct MinEntropy<T> {
    pub optima: Vec<T>,
    pub entropy: f64,
}

pub fn min_entropy_cover(g: &ExplicitGame, order: Order, caps: Caps) -> Result<MinEntropy<Cover>> {
    let covers = enumerate_covers(g, caps)?;
    min_entropy_among(&covers, order)
}

/// Minimizers of `H_λ` among the supplied covers.
pub fn min_entropy_among(covers: &[Cover], order: Order) -> Result<MinEntropy<Cover>> {
    let scored = covers
        .iter()
        .map(|c| Ok((c.clone(), renyi_entropy(&c.distribution()?, order))))
        .collect::<Result<Vec<_>>>()?;
    let (optima, entropy) =
        argbest(&scored, |a, b| a < b).ok_or_else(|| Error::InvalidGame("game has no covers".into()))?;
    Ok(MinEntropy { optima, entropy })
}

/// Exhausts every orientation of `g`; returns the minimizers of the
/// induced cover's entropy.
pub fn min_entropy_orientation(g: &IsGame, order: Order) -> Result<MinEntropy<Orientation>> {
    let m = g.edges().len();
    if m > MAX_ORIENTATION_EDGES {
        return Err(Error::TooManyEdges {
            m,
            limit: MAX_ORIENTATION_EDGES,
        });
    }
    let scored = (0u32..1 << m)
        .map(|mask| {
            let heads = g
                .edges()
                .iter()
                .enumerate()
                .map(|(k, e)| if mask >> k & 1 == 1 { e.v } else { e.u })
                .collect();
            let o = Orientation::new(g, heads)?;
            let h = renyi_entropy(&cover_of_orientation(g, &o)?.distribution()?, order);
            Ok((o, h))
        })
        .collect::<Result<Vec<_>>>()?;
    let (optima, entropy) = argbest(&scored, |a, b| a < b).expect("at least one orientation");
    Ok(MinEntropy { optima, entropy })
}

/// The reference distribution a fairness measure compares against.
#[derive(Debug, Clone, PartialEq)]
pub enum Baseline {
    Uniform,
    Shapley,
    Custom(Distribution),
}

impl Baseline {
    pub fn resolve(&self, g: &ExplicitGame) -> Result<Distribution> {
        match self {
            Baseline::Uniform => Ok(Distribution::uniform(g.players())),
            Baseline::Shapley => normalize_rationals(&shapley_general(g)?),
            Baseline::Custom(d) => {
                if d.len() != g.players() {
                    return Err(Error::DimensionMismatch(d.len(), g.players()));
                }
                Ok(d.clone())
            }
        }
    }
}

/// `Fair_λ(Γ, q)` with every cover attaining it.
#[derive(Debug, Clone, PartialEq)]
pub struct FairnessResult {
    pub value: f64,
    pub argmax: Vec<Cover>,
    pub order: Order,
    pub baseline: Distribution,
}

/// Maximum of `D_λ(x ‖ q)` over integer covers `x`.
pub fn worst_case_fairness(
    g: &ExplicitGame,
    q: &Distribution,
    order: Order,
    caps: Caps,
) -> Result<FairnessResult> {
    let covers = enumerate_covers(g, caps)?;
    fairness_among(&covers, q, order)
}

/// Maximum of `D_λ(x ‖ q)` over the supplied covers.
pub fn fairness_among(covers: &[Cover], q: &Distribution, order: Order) -> Result<FairnessResult> {
    let scored = covers
        .iter()
        .map(|c| Ok((c.clone(), renyi_divergence(&c.distribution()?, q, order)?)))
        .collect::<Result<Vec<_>>>()?;
    let (argmax, value) =
        argbest(&scored, |a, b| a > b).ok_or_else(|| Error::InvalidGame("game has no covers".into()))?;
    Ok(FairnessResult {
        value,
        argmax,
        order,
        baseline: q.clone(),
    })
}

/// Is `Fair_λ(Γ, q) ≥ η`?
pub fn decide_fairness(
    g: &ExplicitGame,
    q: &Distribution,
    order: Order,
    eta: f64,
    caps: Caps,
) -> Result<bool> {
    Ok(worst_case_fairness(g, q, order, caps)?.value >= eta - TOLERANCE)
}

/// The packing constants of one cover along one greedy run.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingConstants {
    pub alpha: Rational,
    pub beta: Rational,
    pub alpha_witness: ZDecomposition,
    pub beta_witness: ZDecomposition,
}

fn floor_mul(c: Rational, d: i64) -> i64 {
    (c.numer() * d as i128).div_euclid(*c.denom()) as i64
}

fn ceil_mul(c: Rational, d: i64) -> i64 {
    -((-c.numer() * d as i128).div_euclid(*c.denom())) as i64
}

/// Smallest `α` (largest `β`) such that some integer decomposition `Z` of `x`
/// with `0 ≤ Z_r^j ≤ a_r^j` has every stage total at most `α·Δ_r`
/// (at least `β·Δ_r`).
///
/// The optimum is one of the ratios `k/Δ_r`, so both constants come from a
/// binary search over that finite set with a flow feasibility test.
pub fn packing_constants<G: Game + ?Sized>(g: &G, x: &Cover, t: &GreedyTrace) -> Result<PackingConstants> {
    if !check_cover(g, x)?.is_cover() {
        return Err(Error::InvalidCover(format!("{x} is not in the core")));
    }
    let a = impact_matrix(g, t)?;
    let supply = x.as_slice();
    let l = t.stages();
    if l == 0 {
        let empty = ZDecomposition {
            z: Vec::new(),
            cover: x.clone(),
        };
        return Ok(PackingConstants {
            alpha: Rational::from_integer(1),
            beta: Rational::from_integer(1),
            alpha_witness: empty.clone(),
            beta_witness: empty,
        });
    }
    let total = g.grand_value();
    let mut candidates: Vec<Rational> = t
        .deltas
        .iter()
        .flat_map(|&d| (0..=total).map(move |k| Rational::new(k as i128, d as i128)))
        .collect();
    candidates.sort();
    candidates.dedup();

    let with_upper = |c: Rational| {
        let upper: Vec<i64> = t.deltas.iter().map(|&d| floor_mul(c, d)).collect();
        bounded_transportation(supply, &a.rows, &vec![0; l], &upper)
    };
    let with_lower = |c: Rational| {
        let lower: Vec<i64> = t.deltas.iter().map(|&d| ceil_mul(c, d)).collect();
        bounded_transportation(supply, &a.rows, &lower, &vec![total; l])
    };

    // first feasible candidate for α, last feasible for β
    let alpha_idx = candidates.partition_point(|&c| with_upper(c).is_none());
    if alpha_idx == candidates.len() {
        return Err(Error::Infeasible);
    }
    let beta_idx = candidates.partition_point(|&c| with_lower(c).is_some());
    if beta_idx == 0 {
        return Err(Error::Infeasible);
    }
    let alpha = candidates[alpha_idx];
    let beta = candidates[beta_idx - 1];
    let witness = |z: Vec<Vec<i64>>| ZDecomposition { z, cover: x.clone() };
    Ok(PackingConstants {
        alpha,
        beta,
        alpha_witness: witness(with_upper(alpha).expect("feasible")),
        beta_witness: witness(with_lower(beta).expect("feasible")),
    })
}

/// Packing constants for each cover, with the smallest `α` and largest `β`.
#[derive(Debug, Clone, PartialEq)]
pub struct PackingSummary {
    pub per_cover: Vec<(Cover, PackingConstants)>,
    pub alpha: Rational,
    pub beta: Rational,
}

pub fn packing_over_covers<G: Game + ?Sized>(
    g: &G,
    covers: &[Cover],
    t: &GreedyTrace,
) -> Result<PackingSummary> {
    let per_cover = covers
        .iter()
        .map(|x| Ok((x.clone(), packing_constants(g, x, t)?)))
        .collect::<Result<Vec<_>>>()?;
    let alpha = per_cover
        .iter()
        .map(|(_, p)| p.alpha)
        .min()
        .ok_or_else(|| Error::InvalidCover("no covers supplied".into()))?;
    let beta = per_cover.iter().map(|(_, p)| p.beta).max().expect("nonempty");
    Ok(PackingSummary {
        per_cover,
        alpha,
        beta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algorithms::{greedy_orientation, impact_matrix, reverse_greedy};

    fn triangle() -> IsGame {
        IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)])
            .unwrap()
    }

    fn covers_of(v: &[&[i64]]) -> Vec<Cover> {
        v.iter().map(|x| Cover::new(x.to_vec()).unwrap()).collect()
    }

    #[test]
    fn triangle_cover_counts() {
        let t = triangle().to_explicit().unwrap();
        let covers = enumerate_covers(&t, Caps::default()).unwrap();
        assert_eq!(covers.len(), 57);
        assert!(covers.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(enumerate_covers_parallel(&t, Caps::default()).unwrap(), covers);
        let mut ext = extremal_covers(&t, &covers);
        ext.sort();
        assert_eq!(
            ext,
            covers_of(&[&[0, 2, 10], &[0, 8, 4], &[2, 0, 10], &[4, 8, 0], &[6, 0, 6], &[6, 6, 0]])
        );
    }

    #[test]
    fn small_cover_counts() {
        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap().to_explicit().unwrap();
        let covers = enumerate_covers(&edge, Caps::default()).unwrap();
        assert_eq!(covers, (0..=5).map(|k| Cover::new(vec![k, 5 - k]).unwrap()).collect::<Vec<_>>());
        assert_eq!(extremal_covers(&edge, &covers), covers_of(&[&[0, 5], &[5, 0]]));
        let add = ExplicitGame::additive(&[3, 2]).unwrap();
        assert_eq!(enumerate_covers(&add, Caps::default()).unwrap(), covers_of(&[&[3, 2]]));
    }

    #[test]
    fn caps_are_enforced() {
        let t = triangle().to_explicit().unwrap();
        let tight = Caps {
            max_players: 8,
            max_total: 11,
        };
        assert!(matches!(enumerate_covers(&t, tight), Err(Error::TotalTooLarge { .. })));
        let few = Caps {
            max_players: 2,
            max_total: 30,
        };
        assert!(matches!(enumerate_covers(&t, few), Err(Error::TooManyPlayers { .. })));
    }

    #[test]
    fn minimum_entropy_covers() {
        let t = triangle().to_explicit().unwrap();
        for lambda in [1.0, 2.0] {
            let m = min_entropy_cover(&t, Order::new(lambda).unwrap(), Caps::default()).unwrap();
            assert_eq!(m.optima, covers_of(&[&[0, 2, 10], &[2, 0, 10]]));
        }
        let m = min_entropy_cover(&t, Order::SHANNON, Caps::default()).unwrap();
        assert!((m.entropy - 0.650_022_421_648_354_2).abs() < 1e-12);
        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap().to_explicit().unwrap();
        let m = min_entropy_cover(&edge, Order::new(0.5).unwrap(), Caps::default()).unwrap();
        assert_eq!(m.optima, covers_of(&[&[0, 5], &[5, 0]]));
        assert_eq!(m.entropy, 0.0);
    }

    #[test]
    fn minimum_entropy_orientations() {
        let g = triangle();
        let m = min_entropy_orientation(&g, Order::SHANNON).unwrap();
        assert!((m.entropy - 0.650_022_421_648_354_2).abs() < 1e-12);
        let mut induced: Vec<Cover> = m
            .optima
            .iter()
            .map(|o| cover_of_orientation(&g, o).unwrap())
            .collect();
        induced.sort();
        induced.dedup();
        assert_eq!(induced, covers_of(&[&[0, 2, 10], &[2, 0, 10]]));
        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap();
        let m = min_entropy_orientation(&edge, Order::SHANNON).unwrap();
        assert_eq!(m.optima.len(), 2);
        assert_eq!(m.entropy, 0.0);
    }

    #[test]
    fn fairness_on_triangle() {
        let t = triangle().to_explicit().unwrap();
        let u = worst_case_fairness(&t, &Distribution::uniform(3), Order::SHANNON, Caps::default()).unwrap();
        assert!((u.value - 0.934_940_079_072_802).abs() < 1e-12);
        assert_eq!(u.argmax, covers_of(&[&[0, 2, 10], &[2, 0, 10]]));
        let sh = Baseline::Shapley.resolve(&t).unwrap();
        let s = worst_case_fairness(&t, &sh, Order::SHANNON, Caps::default()).unwrap();
        assert!((s.value - 0.805_012_499_759_614_6).abs() < 1e-12);
        assert_eq!(s.argmax, covers_of(&[&[4, 8, 0]]));

        let edge = IsGame::from_edges(2, &[(0, 1, 5)]).unwrap().to_explicit().unwrap();
        let e = worst_case_fairness(&edge, &Distribution::uniform(2), Order::SHANNON, Caps::default()).unwrap();
        assert!((e.value - 1.0).abs() < 1e-12);
        assert_eq!(e.argmax, covers_of(&[&[0, 5], &[5, 0]]));
    }

    #[test]
    fn fairness_decisions() {
        let t = triangle().to_explicit().unwrap();
        let u = Distribution::uniform(3);
        let caps = Caps::default();
        assert!(decide_fairness(&t, &u, Order::SHANNON, 0.9, caps).unwrap());
        assert!(!decide_fairness(&t, &u, Order::SHANNON, 1.0, caps).unwrap());
        assert!(decide_fairness(&t, &u, Order::new(3.0).unwrap(), 0.0, caps).unwrap());
        assert!(Baseline::Custom(Distribution::uniform(2)).resolve(&t).is_err());
    }

    #[test]
    fn rank_of_indicator_rows() {
        assert_eq!(integer_rank(vec![vec![1, 1, 0], vec![0, 1, 1], vec![1, 2, 1]]), 2);
        assert_eq!(integer_rank(vec![vec![1, 1, 1], vec![1, 0, 0], vec![0, 0, 1]]), 3);
        assert_eq!(integer_rank(vec![]), 0);
    }

    #[test]
    fn packing_on_triangle() {
        let g = triangle();
        let t = g.to_explicit().unwrap();
        let (rg, trace) = reverse_greedy(&t);
        let a = impact_matrix(&t, &trace).unwrap();
        for x in [vec![2, 0, 10], vec![0, 2, 10]] {
            let x = Cover::new(x).unwrap();
            let p = packing_constants(&t, &x, &trace).unwrap();
            assert_eq!(p.alpha, Rational::from_integer(1));
            assert_eq!(p.beta, Rational::from_integer(1));
            assert!(p.alpha_witness.is_consistent(&a));
            assert!(p.beta_witness.is_consistent(&a));
            assert_eq!(p.alpha_witness.stage_sums(), trace.deltas);
        }
        let p = packing_constants(&t, &rg, &trace).unwrap();
        assert_eq!((p.alpha, p.beta), (Rational::from_integer(1), Rational::from_integer(1)));

        // the Shapley-like cover (3,4,5) cannot be packed as tightly
        let x = Cover::new(vec![3, 4, 5]).unwrap();
        let p = packing_constants(&t, &x, &trace).unwrap();
        assert!(p.beta <= Rational::from_integer(1) && Rational::from_integer(1) <= p.alpha);
        assert!(packing_constants(&t, &Cover::new(vec![12, 0, 0]).unwrap(), &trace).is_err());

        let (_, gtrace) = greedy_orientation(&g);
        assert_eq!(gtrace, trace);
    }
}
