//! Manufactured solutions, refinement studies and pressure-law sweeps.

mod convergence;
mod mms;
mod sweep;

pub use convergence::{
    convergence_study, fit_order, integrate_mms, mms_errors, ConvergenceReport, FieldConvergence,
    StudySetup,
};
pub use mms::{amplitude_guard, mms_sources, Jet, MmsCase, MmsSources, TrigSum, TrigTerm};
pub use sweep::{eos_property_sweep, SweepReport, SweepSettings, Witness};
