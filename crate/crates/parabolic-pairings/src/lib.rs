//! Exact engine for invariant bilinear differential pairings on parabolic geometries.

pub mod bgg;
pub mod central;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod oracle;
pub mod pairings;
pub mod parabolic;
pub mod poly;
pub mod rational;
pub mod repthy;
pub mod rootsys;
pub mod weyl;

pub use error::{Error, Result};
pub use poly::Poly;
pub use rational::Q;
