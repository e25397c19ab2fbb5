//! Polynomial closures of pseudo-convergent sequences in the valuation
//! domain of `ℚ(t1,…,tr)` under the lexicographic monomial valuation.

pub mod error;
pub mod ideals;
pub mod lexgroup;
pub mod pcvseq;
pub mod regbasis;
pub mod syntax;
pub mod valfield;

pub use error::{Error, Result};
