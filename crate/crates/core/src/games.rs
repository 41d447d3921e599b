//! TU-cooperative games: explicit value tables and induced-subgraph (IS) games.

use crate::measures::Distribution;
use crate::{Error, Rational, Result};
use std::collections::HashSet;
use std::fmt;

/// Largest player count for which a full value table is materialized.
pub const MAX_TABLE_PLAYERS: usize = 16;
/// Largest player count for exact Shapley values from the subset formula.
pub const MAX_SHAPLEY_PLAYERS: usize = 12;
/// Largest player count for brute-force core checks.
pub const MAX_CHECK_PLAYERS: usize = 20;

/// A coalition as a bitmask over player indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Coalition(pub u64);

impl Coalition {
    pub const EMPTY: Coalition = Coalition(0);

    pub fn full(n: usize) -> Self {
        assert!(n <= 64);
        if n == 64 {
            Coalition(u64::MAX)
        } else {
            Coalition((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        Coalition(1 << i)
    }

    pub fn from_members(members: impl IntoIterator<Item = usize>) -> Self {
        Coalition(members.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Self {
        Coalition(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Self {
        Coalition(self.0 & !(1 << i))
    }

    pub fn union(self, o: Self) -> Self {
        Coalition(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        Coalition(self.0 & o.0)
    }

    pub fn is_subset_of(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn members(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// All subsets of the `n`-player ground set, by increasing bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = Coalition> {
        assert!(n < 64);
        (0..1u64 << n).map(Coalition)
    }
}

/// A set function over `n` players with `v(∅) = 0`.
pub trait Game {
    fn players(&self) -> usize;

    fn value(&self, s: Coalition) -> i64;

    fn player_names(&self) -> &[String];

    fn grand_value(&self) -> i64 {
        self.value(Coalition::full(self.players()))
    }

    /// `v(S) - v(S ∖ {i})`.
    fn marginal(&self, s: Coalition, i: usize) -> i64 {
        self.value(s) - self.value(s.without(i))
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("p{i}")).collect()
}

/// A game given by its full table of `2^n` coalition values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExplicitGame {
    names: Vec<String>,
    values: Vec<i64>,
}

impl ExplicitGame {
    /// `values[S.index()]` is `v(S)`; players get default names `p0, p1, ...`.
    pub fn new(n: usize, values: Vec<i64>) -> Result<Self> {
        Self::with_names(default_names(n), values)
    }

    pub fn with_names(names: Vec<String>, values: Vec<i64>) -> Result<Self> {
        let n = names.len();
        if n > MAX_TABLE_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                limit: MAX_TABLE_PLAYERS,
            });
        }
        if values.len() != 1 << n {
            return Err(Error::InvalidGame(format!(
                "expected {} values for {n} players, got {}",
                1usize << n,
                values.len()
            )));
        }
        if values[0] != 0 {
            return Err(Error::InvalidGame("v(∅) must be 0".into()));
        }
        if let Some(s) = values.iter().position(|&v| v < 0) {
            return Err(Error::InvalidGame(format!(
                "negative value {} for coalition {s:#b}",
                values[s]
            )));
        }
        Ok(Self { names, values })
    }

    /// `v(S) = Σ_{i ∈ S} c_i`.
    pub fn additive(c: &[i64]) -> Result<Self> {
        let n = c.len();
        let values = Coalition::all(n)
            .map(|s| s.members().map(|i| c[i]).sum())
            .collect();
        Self::new(n, values)
    }

    /// Builds the table from a function of the coalition.
    pub fn from_fn(n: usize, f: impl Fn(Coalition) -> i64) -> Result<Self> {
        if n > MAX_TABLE_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                limit: MAX_TABLE_PLAYERS,
            });
        }
        Self::new(n, Coalition::all(n).map(f).collect())
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// First pair `S ⊂ S ∪ {i}` with `v(S) > v(S ∪ {i})`, if any.
    pub fn monotonicity_violation(&self) -> Option<(Coalition, usize)> {
        let n = self.players();
        for s in Coalition::all(n) {
            for i in 0..n {
                if !s.contains(i) && self.value(s) > self.value(s.with(i)) {
                    return Some((s, i));
                }
            }
        }
        None
    }
}

impl Game for ExplicitGame {
    fn players(&self) -> usize {
        self.names.len()
    }

    fn value(&self, s: Coalition) -> i64 {
        self.values[s.index()]
    }

    fn player_names(&self) -> &[String] {
        &self.names
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub weight: i64,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }

    pub fn touches(&self, x: usize) -> bool {
        self.u == x || self.v == x
    }
}

/// Induced-subgraph game: `v(S)` is the weight of the edges inside `S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsGame {
    names: Vec<String>,
    edges: Vec<Edge>,
    vertex_weights: Vec<i64>,
}

impl IsGame {
    /// Validates: loopless, no duplicate edges, nonnegative weights, and every
    /// vertex has strictly positive adjacent weight.
    pub fn new(names: Vec<String>, edges: Vec<Edge>) -> Result<Self> {
        let n = names.len();
        if n > 64 {
            return Err(Error::TooManyPlayers { n, limit: 64 });
        }
        let mut seen = HashSet::new();
        let mut vertex_weights = vec![0i64; n];
        for e in &edges {
            if e.u >= n || e.v >= n {
                return Err(Error::InvalidGame(format!(
                    "edge ({}, {}) references a missing vertex",
                    e.u, e.v
                )));
            }
            if e.u == e.v {
                return Err(Error::InvalidGame(format!("loop at vertex {}", e.u)));
            }
            if e.weight < 0 {
                return Err(Error::InvalidGame(format!(
                    "negative weight on edge ({}, {})",
                    e.u, e.v
                )));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return Err(Error::InvalidGame(format!(
                    "duplicate edge ({}, {})",
                    e.u, e.v
                )));
            }
            vertex_weights[e.u] += e.weight;
            vertex_weights[e.v] += e.weight;
        }
        if let Some(i) = vertex_weights.iter().position(|&w| w <= 0) {
            return Err(Error::InvalidGame(format!(
                "vertex {} has no positive adjacent weight",
                names[i]
            )));
        }
        Ok(Self {
            names,
            edges,
            vertex_weights,
        })
    }

    /// Unnamed vertices `v0, v1, ...` and `(u, v, w)` triples.
    pub fn from_edges(n: usize, edges: &[(usize, usize, i64)]) -> Result<Self> {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let edges = edges
            .iter()
            .map(|&(u, v, weight)| Edge { u, v, weight })
            .collect();
        Self::new(names, edges)
    }

    /// Edges given by vertex name.
    pub fn from_named(names: &[&str], edges: &[(&str, &str, i64)]) -> Result<Self> {
        let index = |x: &str| {
            names
                .iter()
                .position(|&n| n == x)
                .ok_or_else(|| Error::InvalidGame(format!("unknown vertex {x}")))
        };
        let edges = edges
            .iter()
            .map(|&(a, b, weight)| {
                Ok(Edge {
                    u: index(a)?,
                    v: index(b)?,
                    weight,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(names.iter().map(|s| s.to_string()).collect(), edges)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    /// `v(i)`: total weight of edges adjacent to `i`.
    pub fn vertex_weight(&self, i: usize) -> i64 {
        self.vertex_weights[i]
    }

    pub fn vertex_weights(&self) -> &[i64] {
        &self.vertex_weights
    }

    /// `W`: total edge weight, equal to `v(N)`.
    pub fn total_weight(&self) -> i64 {
        self.edges.iter().map(|e| e.weight).sum()
    }

    pub fn to_explicit(&self) -> Result<ExplicitGame> {
        let n = self.players();
        if n > MAX_TABLE_PLAYERS {
            return Err(Error::TooManyPlayers {
                n,
                limit: MAX_TABLE_PLAYERS,
            });
        }
        let mut values = vec![0i64; 1 << n];
        // v(S) = v(S - low) + weight of edges from `low` into S - low
        for s in 1usize..1 << n {
            let low = s.trailing_zeros() as usize;
            let rest = s & (s - 1);
            let gain: i64 = self
                .edges
                .iter()
                .filter(|e| e.touches(low) && rest >> e.other(low) & 1 == 1)
                .map(|e| e.weight)
                .sum();
            values[s] = values[rest] + gain;
        }
        ExplicitGame::with_names(self.names.clone(), values)
    }
}

impl Game for IsGame {
    fn players(&self) -> usize {
        self.names.len()
    }

    fn value(&self, s: Coalition) -> i64 {
        self.edges
            .iter()
            .filter(|e| s.contains(e.u) && s.contains(e.v))
            .map(|e| e.weight)
            .sum()
    }

    fn player_names(&self) -> &[String] {
        &self.names
    }

    fn grand_value(&self) -> i64 {
        self.total_weight()
    }
}

/// An integer allocation, one nonnegative entry per player.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cover(Vec<i64>);

impl Cover {
    pub fn new(alloc: Vec<i64>) -> Result<Self> {
        if let Some(i) = alloc.iter().position(|&x| x < 0) {
            return Err(Error::InvalidCover(format!("negative entry at {i}")));
        }
        Ok(Self(alloc))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }

    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn sum_over(&self, s: Coalition) -> i64 {
        s.members().map(|i| self.0[i]).sum()
    }

    /// The normalized allocation.
    pub fn distribution(&self) -> Result<Distribution> {
        Distribution::from_counts(&self.0)
    }
}

impl fmt::Display for Cover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// `v*(S) = v(N) - v(N ∖ S)`. The dual shares the core of the original game.
///
/// For a non-monotone input the dual may take negative values.
pub fn dual_game(g: &ExplicitGame) -> ExplicitGame {
    let n = g.players();
    let full = Coalition::full(n);
    let total = g.grand_value();
    let values = Coalition::all(n)
        .map(|s| total - g.value(Coalition(full.0 & !s.0)))
        .collect();
    ExplicitGame {
        names: g.names.clone(),
        values,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SupermodularCheck {
    pub holds: bool,
    /// A pair `(S, T)` with `v(S ∪ T) + v(S ∩ T) < v(S) + v(T)`.
    pub witness: Option<(Coalition, Coalition)>,
}

/// Supermodularity via the local criterion
/// `v(S+i+j) - v(S+j) ≥ v(S+i) - v(S)`, equivalent to the pairwise condition.
pub fn check_supermodular(g: &ExplicitGame) -> SupermodularCheck {
    let n = g.players();
    for s in Coalition::all(n) {
        for i in 0..n {
            if s.contains(i) {
                continue;
            }
            for j in i + 1..n {
                if s.contains(j) {
                    continue;
                }
                let (a, b) = (s.with(i), s.with(j));
                if g.value(a.union(b)) + g.value(s) < g.value(a) + g.value(b) {
                    return SupermodularCheck {
                        holds: false,
                        witness: Some((a, b)),
                    };
                }
            }
        }
    }
    SupermodularCheck {
        holds: true,
        witness: None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoverCheck {
    pub efficient: bool,
    /// Proper coalitions with `x(S) < v(S)`.
    pub violated: Vec<Coalition>,
}

impl CoverCheck {
    pub fn is_cover(&self) -> bool {
        self.efficient && self.violated.is_empty()
    }
}

/// Core membership: `x(N) = v(N)` and `x(S) ≥ v(S)` for every proper `S`.
pub fn check_cover<G: Game + ?Sized>(g: &G, c: &Cover) -> Result<CoverCheck> {
    let n = g.players();
    if c.as_slice().len() != n {
        return Err(Error::DimensionMismatch(c.as_slice().len(), n));
    }
    if n > MAX_CHECK_PLAYERS {
        return Err(Error::TooManyPlayers {
            n,
            limit: MAX_CHECK_PLAYERS,
        });
    }
    let full = Coalition::full(n);
    let violated = Coalition::all(n)
        .filter(|&s| s != full && !s.is_empty())
        .filter(|&s| c.sum_over(s) < g.value(s))
        .collect();
    Ok(CoverCheck {
        efficient: c.total() == g.value(full),
        violated,
    })
}

/// `v(N) - v(N ∖ {j})`, an upper bound on `x_j` for every core allocation.
pub fn utopia_payoff<G: Game + ?Sized>(g: &G, j: usize) -> i64 {
    let full = Coalition::full(g.players());
    g.value(full) - g.value(full.without(j))
}

fn factorials(n: usize) -> Vec<i128> {
    let mut f = vec![1i128; n + 1];
    for k in 1..=n {
        f[k] = f[k - 1] * k as i128;
    }
    f
}

/// Exact Shapley values by the subset formula.
pub fn shapley_general(g: &ExplicitGame) -> Result<Vec<Rational>> {
    let n = g.players();
    if n > MAX_SHAPLEY_PLAYERS {
        return Err(Error::TooManyPlayers {
            n,
            limit: MAX_SHAPLEY_PLAYERS,
        });
    }
    let fact = factorials(n);
    let mut numer = vec![0i128; n];
    for s in Coalition::all(n) {
        let k = s.len();
        for (i, acc) in numer.iter_mut().enumerate() {
            if s.contains(i) {
                continue;
            }
            let gain = (g.value(s.with(i)) - g.value(s)) as i128;
            *acc += fact[k] * fact[n - k - 1] * gain;
        }
    }
    Ok(numer
        .into_iter()
        .map(|x| Rational::new(x, fact[n]))
        .collect())
}

/// Shapley value of an IS game: half the adjacent weight of each vertex.
pub fn shapley_is(g: &IsGame) -> Vec<Rational> {
    g.vertex_weights
        .iter()
        .map(|&w| Rational::new(w as i128, 2))
        .collect()
}

/// Normalizes a nonnegative rational vector (e.g. a Shapley value).
pub fn normalize_rationals(x: &[Rational]) -> Result<Distribution> {
    let w: Vec<f64> = x
        .iter()
        .map(|r| *r.numer() as f64 / *r.denom() as f64)
        .collect();
    Distribution::normalize(&w)
}
