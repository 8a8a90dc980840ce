//! Exact combinatorics behind normal coverings of `Sym(n)` and `Alt(n)`:
//! partition counts, cluster sets, subgroup coverage, primitive type
//! catalogs and certified lower bounds.

pub mod bounds;
pub mod covering;
pub mod error;
pub mod numtheory;
pub mod oracle;
pub mod partitions;
pub mod suite;

pub use error::{Error, Result};
