//! Exact-arithmetic machinery for free multiplicative convolution.
//!
//! Everything is computed over arbitrary-precision rationals; there is no
//! floating point anywhere in this crate. The main pieces:
//!
//! * [`nclat`]: the lattice of non-crossing partitions: enumeration,
//!   reversed-refinement order, (relative) Kreweras complements, chains
//!   and multi-chains.
//! * [`series`]: truncated power series in `k` non-commuting
//!   indeterminates, partition- and chain-indexed generalized
//!   coefficients, and a one-variable series calculus.
//! * [`freeprob`]: distributions of `k`-tuples, the moment/cumulant
//!   correspondence, the convolution `boxtimes`, the chain-sum
//!   `ls` transform and its inverse, and the one-variable S/T-transforms.
//! * [`hopfy`]: an independent Hopf-algebra engine (comultiplication,
//!   convolution, antipode, exp/log of functionals) used as an oracle
//!   against the chain formulas of [`freeprob`].
//! * [`symqsym`]: symmetric functions in the elementary basis,
//!   quasi-symmetric functions in the monomial basis, and the bridge
//!   between the one-variable Hopf engine and symmetric functions.
//! * [`verify`]: the machine-checkable identity suites driven by the CLI.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod fixtures;
pub mod freeprob;
pub mod hopfy;
pub mod nclat;
pub mod ratio;
pub mod series;
pub mod symqsym;
pub mod verify;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
