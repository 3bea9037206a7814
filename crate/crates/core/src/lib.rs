//! Voltage operations on premaniplexes: flag graphs, voltage operators,
//! their products, symmetry and the analysis of extra automorphisms.

pub mod analysis;
pub mod cosetenum;
pub mod coxword;
pub mod error;
pub mod format;
pub mod operators;
pub mod premaniplex;
pub mod symmetry;
pub mod voltage;

pub use coxword::CoxWord;
pub use error::{Error, Result};
pub use premaniplex::Premaniplex;
