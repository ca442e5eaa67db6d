//! Lévy triplets, measures, exponents and truncation conventions.

pub mod measure;
pub mod triplet;

pub use measure::{
    stable_constant, truncation_correction, unit_exponent_scale, JumpLaw, LevyMeasureSpec,
    LogMoment, Truncation, DEFAULT_TOL,
};
pub use triplet::LevyTriplet;
