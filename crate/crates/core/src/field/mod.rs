//! Periodic grids, field storage and discrete differential operators.

mod fft;
mod grid;
mod ops;
mod storage;

pub use grid::Grid;
pub use ops::{solve_lame_periodic, DiscretizationScheme, LameSolution, Operators, SchemeKind};
pub use storage::{pairwise_sum, AntisymField, FlowState, ScalarField, VectorField};
