//! Nonabelian H1 for finite groups, at desk scale.
//!
//! Everything here is brute force on validated multiplication tables:
//! pointed-set H1 of a finite group acting on a finite group, induction of
//! coefficient groups along a subgroup, and explicit verification of the
//! canonical maps (Shapiro bijection, inflation injectivity, the submodule
//! isomorphism, and the refined filtered Shapiro bijection). Cocycles are
//! enumerated from generator assignments and classed by coboundary twisting;
//! every canonical map is checked elementwise rather than trusted.

mod battery;
mod checks;
mod group;
mod h1;
mod module;

pub use battery::{full_battery, shapiro_battery, BatteryReport, BatteryRow, INDUCED_ORDER_CAP};
pub use checks::{
    inflation_injectivity_check, refined_shapiro_check, shapiro_check, shapiro_report,
    submodule_lemma_check, CheckReport,
};
pub use group::FiniteGroup;
pub use h1::{
    enumerate_h1, enumerate_h1_seq, enumerate_h1_with_budget, H1PointedSet,
    DEFAULT_ENUMERATION_BUDGET,
};
#[cfg(feature = "parallel")]
pub use h1::enumerate_h1_par;
pub use module::{induce, FiniteGGroup, InducedModule, MAX_INDUCED_ORDER};
