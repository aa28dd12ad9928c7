//! Exact rational arithmetic and exact piecewise-linear functions.
//!
//! Everything downstream (profiles, depth maps, probes) computes with these
//! two types; no floating point appears anywhere in the crate.

mod plf;
mod rational;

pub use plf::PiecewiseLinearFn;
pub use rational::Rational;
