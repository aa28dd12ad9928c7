//! Truncated Laurent series over prime fields, wild automorphisms, and
//! norm-map probes.
//!
//! Series carry an explicit guaranteed-precision window and every operation
//! propagates the window it can actually promise (minimum rule for sums,
//! cross rule for products), so a probe that runs out of known coefficients
//! fails loudly instead of reading zeros that were never computed.

mod automorphism;
mod probes;
mod series;

pub use automorphism::{
    as_automorphism, group_closure, measured_break, norm, norm_unchecked, profile_from_group,
    scaling_automorphism, SeriesAutomorphism,
};
#[cfg(feature = "parallel")]
pub use probes::norm_filtration_probe_par;
pub use probes::{
    norm_filtration_probe, norm_filtration_probe_seq, torus_filtration_check, NormProbeReport,
};
pub use series::{TruncatedLaurentSeries, Valuation};

/// Default number of guaranteed coefficients for newly built automorphisms
/// and probes.
pub const DEFAULT_PRECISION: usize = 256;
