//! Exact small quantum cohomology of the even orthogonal Grassmannian
//! OG(n+1, 2n+2), computed through Q̃-polynomials.

pub mod cache;
pub mod cli;
pub mod error;
pub mod identities;
pub mod lg;
pub mod linsolve;
pub mod partitions;
pub mod poly;
pub mod qtilde;
pub mod ring;
pub mod suites;
pub mod sym;

pub use error::{Error, Result};
pub use partitions::{Composition, Partition, StrictPartition};
