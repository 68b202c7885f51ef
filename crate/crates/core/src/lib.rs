//! Exact verification kernels for q-series identities, partition
//! combinatorics and differential ideals attached to the Ising model
//! (the c = 1/2 Virasoro minimal model).
//!
//! Everything except [`nahm`] works over exact rationals. Truncated power
//! series carry their truncation order so that comparisons always state the
//! order to which they hold.

pub mod characters;
pub mod checks;
pub mod diffalg;
pub mod error;
pub mod linalg;
pub mod nahm;
pub mod partitions;
pub mod polyfamilies;
pub mod qseries;
pub mod rational;
pub mod report;
pub mod virasoro;

pub use error::{Error, Result};
pub use rational::Rational;
