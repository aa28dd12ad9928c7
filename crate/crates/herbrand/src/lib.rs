//! Exact-arithmetic tools for ramification theory of local fields.
//!
//! The crate is organized around the Hasse-Herbrand functions of a finite
//! extension, represented as exact piecewise-linear objects:
//!
//! * [`exactnum`]: arbitrary-precision rationals and exact piecewise-linear
//!   functions on `[0, oo)` (evaluation, inversion, composition).
//! * [`ramification`]: ramification filtration profiles, construction of the
//!   psi/phi pair, jump computations, and a catalog of standard families.
//! * [`depthmap`]: depth and conductor transformation laws driven by psi/phi.
//! * [`cohomology`]: brute-force nonabelian H1 for finite groups, induced
//!   modules, and the Shapiro/inflation/submodule correspondence checks.
//! * [`laurent`]: truncated Laurent series over prime fields, wild
//!   automorphisms, measured ramification data, and norm filtration probes.
//!
//! All arithmetic is exact; nothing in this crate rounds. Operations that
//! sample (probes) take explicit seeds and report them.

pub mod cohomology;
pub mod depthmap;
mod error;
pub mod exactnum;
pub mod laurent;
pub mod ramification;

pub use error::{Error, Result};
