//! Spin q-Whittaker polynomials and stable spin Hall-Littlewood functions
//! built from stochastic higher-spin vertex weights, with a verification
//! harness for their Yang-Baxter equations and summation identities.

pub mod algebra;
pub mod error;
pub mod functions;
pub mod identities;
pub mod integral;
pub mod lattice;
pub mod partitions;
pub mod params;
pub mod random;
pub mod report;
pub mod rowops;
pub mod weights;
pub mod yang_baxter;

pub use error::{Error, Result};
