//! Zero gaps of real trigonometric polynomials with prescribed spectrum.
//!
//! The library answers three kinds of question about a real trigonometric
//! polynomial whose frequencies come from a symmetric set S of nonzero
//! integer vectors:
//!
//! - bounds: how long can a zero-free arc (interval, ball, cube) be, in terms
//!   of S alone;
//! - constructions: explicit polynomials on arithmetic-progression spectra
//!   that realize the optimal interval length exactly, touching from above;
//! - search: seeded stochastic maximization of the gap over coefficients, and
//!   brute-force verification on small spectra.
//!
//! Everything downstream of a seed is deterministic, including parallel runs.

pub mod cli;
pub mod error;
pub mod extremal;
pub mod jsonio;
pub mod multidim;
mod roots;
pub mod search;
pub mod spectrum;
pub mod trigpoly;

pub use cli::run;
pub use error::{Error, Result};
