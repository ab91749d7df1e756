//! Tractable structure of finitely described dynamical systems.
//!
//! The crate works at three levels:
//!
//! * [`relation`]: finite relations, their transitive closure and the
//!   decomposition into basic sets (strongly connected pieces carrying a
//!   cycle), terminal classes and transient elements.
//! * [`markov`] and [`two_alphabet`]: stochastic covers of a relation, the
//!   stationary distributions of terminal classes, Markov measures on
//!   cylinder sets and finite-horizon genericity checks.
//! * [`shiftlike`] and [`simplicial1d`]: approximation of maps on the Cantor
//!   set by shift-like maps built from sliding-block codes, and of interval
//!   maps by non-degenerate piecewise-linear simplicial maps, together with
//!   their symbolic codings.
//!
//! Every analysis ends in a [`report::TractabilityReport`].

pub mod error;
pub mod io;
pub mod linalg;
pub mod markov;
pub mod rational;
pub mod relation;
pub mod report;
pub mod rng;
pub mod shiftlike;
pub mod simplicial1d;
pub mod two_alphabet;

pub use error::{Error, ErrorKind, Result};
pub use markov::{DecayCertificate, Distribution, MarkovMeasureSpec, StochasticCover};
pub use rational::Rational;
pub use relation::{BasicSetDecomposition, FiniteRelation};
pub use report::TractabilityReport;
pub use shiftlike::{ShiftLikeSystem, SlidingBlockCode, Word};
pub use simplicial1d::{IntervalComplex, SimplicialMap1D, SimplicialSystem1D};
pub use two_alphabet::TwoAlphabetModel;

/// Environment variable overriding the enumeration caps.
pub const CELL_CAP_ENV: &str = "TRACTABLE_DYN_CELL_CAP";

/// Reads [`CELL_CAP_ENV`], falling back to `default` when unset or unparsable.
pub fn cell_cap_from_env(default: u64) -> u64 {
    std::env::var(CELL_CAP_ENV)
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(default)
}
