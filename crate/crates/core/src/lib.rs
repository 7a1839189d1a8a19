//! Exact verification of the vanishing of Borel- and mirabolic-coset sums of
//! gamma-sheaf trace functions for GL(n) over small finite fields.

// matrix and table code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod arith;
pub mod error;
pub mod harness;
pub mod induction;
pub mod mirabolic;
pub mod perm;
pub mod torus;

pub use error::{Error, Result};
