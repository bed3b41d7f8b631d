//! Semi-discrete right-hand side, explicit time stepping and the run driver.

mod ic;
mod integrator;
mod rhs;
mod run;

pub use ic::{Bump, InitialCondition};
pub use integrator::{cfl_dt, step, step_bounds, IntegratorSettings, Method, StepBounds};
pub use rhs::{rhs, Forcing, Model, RhsOutput, Sources};
pub use run::{run, run_from, MemorySink, RunOutcome, RunSink};
