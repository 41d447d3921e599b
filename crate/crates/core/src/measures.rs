//! Scalar information measures, all in bits.
//!
//! Conventions: `0 · log 0 = 0`, `0^λ = 0` for `λ > 0`, and every sum ranges
//! over the support of the distribution it iterates.
//!
//! Power sums `Σ p_i^λ` are evaluated as `ln_1p(Σ p_i · expm1((λ-1) ln p_i))`
//! so that orders close to 1 do not lose precision to cancellation.

use crate::{Error, Result};
use std::f64::consts::LN_2;

/// Normalization tolerance on `Σ p_i = 1`.
pub const SUM_TOLERANCE: f64 = 1e-9;

/// A probability vector over players.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Wraps an already normalized vector.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_weights(&probs)?;
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > SUM_TOLERANCE {
            return Err(Error::NotNormalized(sum));
        }
        Ok(Self { probs })
    }

    /// Divides every entry by the total. Order is preserved.
    pub fn normalize(weights: &[f64]) -> Result<Self> {
        check_weights(weights)?;
        let sum: f64 = weights.iter().sum();
        if sum <= 0.0 {
            return Err(Error::ZeroMass);
        }
        Ok(Self {
            probs: weights.iter().map(|w| w / sum).collect(),
        })
    }

    /// Normalizes an integer allocation (a cover, a weight vector).
    pub fn from_counts(counts: &[i64]) -> Result<Self> {
        let w: Vec<f64> = counts.iter().map(|&c| c as f64).collect();
        Self::normalize(&w)
    }

    pub fn uniform(n: usize) -> Self {
        assert!(n > 0, "uniform distribution needs at least one outcome");
        Self {
            probs: vec![1.0 / n as f64; n],
        }
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// Indices with strictly positive mass.
    pub fn support(&self) -> Vec<usize> {
        self.probs
            .iter()
            .enumerate()
            .filter(|(_, &p)| p > 0.0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn has_full_support(&self) -> bool {
        self.probs.iter().all(|&p| p > 0.0)
    }
}

fn check_weights(w: &[f64]) -> Result<()> {
    for (index, &value) in w.iter().enumerate() {
        if !(value >= 0.0 && value.is_finite()) {
            return Err(Error::InvalidWeight { index, value });
        }
    }
    Ok(())
}

/// The Rényi order `λ > 0`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Order(f64);

impl Order {
    /// Shannon / Kullback-Leibler order.
    pub const SHANNON: Order = Order(1.0);

    pub fn new(lambda: f64) -> Result<Self> {
        if lambda > 0.0 && lambda.is_finite() {
            Ok(Self(lambda))
        } else {
            Err(Error::InvalidOrder(lambda))
        }
    }

    pub fn get(self) -> f64 {
        self.0
    }

    pub fn is_shannon(self) -> bool {
        self.0 == 1.0
    }
}

impl std::fmt::Display for Order {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `log2 Σ_i p_i^λ` over the support of `p`.
fn log2_power_sum(p: &[f64], lambda: f64) -> f64 {
    let mut mass = 0.0;
    let mut excess = 0.0;
    for &x in p.iter().filter(|&&x| x > 0.0) {
        mass += x;
        excess += x * ((lambda - 1.0) * x.ln()).exp_m1();
    }
    ((mass - 1.0) + excess).ln_1p() / LN_2
}

/// `H_λ(p)`; Shannon entropy at `λ = 1`.
pub fn renyi_entropy(d: &Distribution, order: Order) -> f64 {
    let lambda = order.get();
    if order.is_shannon() {
        return -d
            .probs
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| p * p.log2())
            .sum::<f64>();
    }
    log2_power_sum(&d.probs, lambda) / (1.0 - lambda)
}

/// `D_λ(p ‖ q)`, possibly `+∞`.
///
/// Terms with `p_i = 0` contribute nothing. A term with `p_i > 0 = q_i`
/// makes the divergence infinite for `λ ≥ 1` and contributes zero for
/// `λ < 1`.
pub fn renyi_divergence(p: &Distribution, q: &Distribution, order: Order) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    let lambda = order.get();
    let orphaned = p
        .probs
        .iter()
        .zip(&q.probs)
        .any(|(&a, &b)| a > 0.0 && b == 0.0);
    if orphaned && lambda >= 1.0 {
        return Ok(f64::INFINITY);
    }
    let pairs = p
        .probs
        .iter()
        .zip(&q.probs)
        .filter(|(&a, &b)| a > 0.0 && b > 0.0);
    if order.is_shannon() {
        return Ok(pairs.map(|(&a, &b)| a * (a / b).log2()).sum());
    }
    // Σ p^λ q^(1-λ) = Σ p · exp((λ-1) ln(p/q))
    let mut mass = 0.0;
    let mut excess = 0.0;
    for (&a, &b) in pairs {
        mass += a;
        excess += a * ((lambda - 1.0) * (a / b).ln()).exp_m1();
    }
    let log2_sum = ((mass - 1.0) + excess).ln_1p() / LN_2;
    Ok(log2_sum / (lambda - 1.0))
}

/// The three-term discrete relative entropy `h_λ[p, q]` for `λ ≠ 1`.
///
/// Nonnegative for every admissible pair; `q` must be positive wherever `p` is.
pub fn relative_entropy_gibbs(p: &Distribution, q: &Distribution, order: Order) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::DimensionMismatch(p.len(), q.len()));
    }
    if order.is_shannon() {
        return Err(Error::UndefinedAtOne("discrete relative entropy"));
    }
    if let Some(index) = p
        .probs
        .iter()
        .zip(&q.probs)
        .position(|(&a, &b)| a > 0.0 && b == 0.0)
    {
        return Err(Error::SupportMismatch { index });
    }
    let lambda = order.get();
    let cross: f64 = p
        .probs
        .iter()
        .zip(&q.probs)
        .filter(|(&a, _)| a > 0.0)
        .map(|(&a, &b)| b.powf(lambda - 1.0) * a)
        .sum();
    let first = cross.log2() / (1.0 - lambda);
    let second = log2_power_sum(&q.probs, lambda) / lambda;
    let third = log2_power_sum(&p.probs, lambda) / (lambda * (1.0 - lambda));
    Ok(first + second - third)
}

/// `log2(r_max / r_min)` over the support of `r`.
pub fn nonuniformity(r: &Distribution) -> f64 {
    let (lo, hi) = r
        .probs
        .iter()
        .filter(|&&x| x > 0.0)
        .fold((f64::INFINITY, 0.0f64), |(lo, hi), &x| (lo.min(x), hi.max(x)));
    (hi / lo).log2()
}
