//! # tufair
//!
//! Worst-case fairness of transferable-utility cooperative games, measured
//! with Rényi divergences against a baseline allocation (uniform or the
//! normalized Shapley value).
//!
//! The crate is organised bottom-up:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`measures`] | Rényi entropy/divergence, the three-term relative entropy, nonuniformity |
//! | [`games`] | explicit and induced-subgraph games, duality, core checks, Shapley values |
//! | [`algorithms`] | ReverseGreedy, greedy/biased orientations, impact matrix, Z-decomposition |
//! | [`exact`] | brute-force oracles: cover enumeration, extremal covers, optima, `Fair_λ`, packing constants |
//! | [`bounds`] | closed-form guarantees and inequality audits |
//! | [`instance`] | JSON instance files |
//! | [`generate`] | seeded random instance generators |
//! | [`cli`] | the `tufair` command line (`analyze`, `exact`, `verify`, `gen`) |
//!
//! ```rust
//! use tufair::games::IsGame;
//! use tufair::exact::{worst_case_fairness, Caps};
//! use tufair::measures::{Distribution, Order};
//!
//! let g = IsGame::from_named(&["A", "B", "C"], &[("A", "B", 2), ("A", "C", 4), ("B", "C", 6)]).unwrap();
//! let table = g.to_explicit().unwrap();
//! let uniform = Distribution::uniform(3);
//! let fair = worst_case_fairness(&table, &uniform, Order::SHANNON, Caps::default()).unwrap();
//! assert!((fair.value - 0.934940).abs() < 1e-6);
//! ```

pub mod algorithms;
pub mod bounds;
pub mod cli;
pub mod error;
pub mod exact;
pub mod flow;
pub mod games;
pub mod generate;
pub mod instance;
pub mod measures;

pub use error::{Error, Result};

/// Exact rational numbers used for Shapley values and packing constants.
pub type Rational = num_rational::Ratio<i128>;

/// Absolute tolerance on bit-valued comparisons.
pub const TOLERANCE: f64 = 1e-9;
