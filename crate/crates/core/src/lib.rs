pub mod arith;
pub mod cochains;
pub mod congruence;
pub mod error;
pub mod explore;
pub mod export;
pub mod groups;
pub mod hecke;
pub mod quotient;
pub mod selftest;
pub mod session;
pub mod tower;
pub mod tree;

pub use error::{Error, Result};
