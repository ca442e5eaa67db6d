//! Computable laws of Lévy-driven SDEs: characteristic exponents of
//! generating triplets, exact transition and invariant laws of
//! Ornstein-Uhlenbeck processes with Lévy noise, integro-differential
//! generators applied to test functions, ground-state (h-) transforms with
//! invariant measure `phi^2 dx`, seeded simulation of all of these, and
//! numerical invariance diagnostics.

pub mod error;
pub mod levy;
pub mod quad;
pub mod special;

pub use error::{LevyError, Result};
pub use levy::{JumpLaw, LevyMeasureSpec, LevyTriplet, LogMoment, Truncation};
