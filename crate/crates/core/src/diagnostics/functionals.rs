//! Time-weighted functionals
//!
//! ```text
//! A1(T) = sup_{t<=T} sigma int|grad u|^2   + int_0^T sigma   int|u_dot|^2
//! A2(T) = sup_{t<=T} sigma^3 int|u_dot|^2  + int_0^T sigma^3 int|grad u_dot|^2
//! ```
//!
//! with `sigma(t) = min(1, t)`. The time integrals use the trapezoid rule over
//! the emitted samples, so their accuracy is set by the record cadence
//! (error `O(dt_record^2)` for smooth trajectories).

use crate::eos::AnalysisParams;
use crate::error::{Error, Result};

pub fn sigma(t: f64) -> f64 {
    t.min(1.0)
}

/// Spatial integrals entering the functionals at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FunctionalSample {
    pub t: f64,
    /// `int |grad u|^2`.
    pub grad_u_sq: f64,
    /// `int |u_dot|^2`.
    pub udot_sq: f64,
    /// `int |grad u_dot|^2`.
    pub grad_udot_sq: f64,
}

/// Streaming evaluation of `(A1, A2)`; both are nondecreasing in the horizon.
#[derive(Debug, Clone, Default)]
pub struct FunctionalsAccumulator {
    last: Option<FunctionalSample>,
    sup1: f64,
    sup2: f64,
    int1: f64,
    int2: f64,
}

impl FunctionalsAccumulator {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a sample (times must not decrease) and returns `(A1, A2)`.
    pub fn push(&mut self, s: FunctionalSample) -> (f64, f64) {
        let w1 = sigma(s.t);
        let w3 = w1.powi(3);
        self.sup1 = self.sup1.max(w1 * s.grad_u_sq);
        self.sup2 = self.sup2.max(w3 * s.udot_sq);
        if let Some(p) = self.last {
            let dt = s.t - p.t;
            let p1 = sigma(p.t);
            let p3 = p1.powi(3);
            self.int1 += 0.5 * dt * (p1 * p.udot_sq + w1 * s.udot_sq);
            self.int2 += 0.5 * dt * (p3 * p.grad_udot_sq + w3 * s.grad_udot_sq);
        }
        self.last = Some(s);
        self.values()
    }

    pub fn values(&self) -> (f64, f64) {
        (self.sup1 + self.int1, self.sup2 + self.int2)
    }
}

/// `(A1, A2)` at the horizon of the last sample.
pub fn functionals_a1_a2(samples: &[FunctionalSample]) -> Result<(f64, f64)> {
    if samples.is_empty() {
        return Err(Error::Parameter(
            "functionals need at least one sample".to_string(),
        ));
    }
    let mut acc = FunctionalsAccumulator::new();
    for s in samples {
        acc.push(*s);
    }
    Ok(acc.values())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SmallnessReport {
    pub e0: f64,
    /// `A1 + A2`.
    pub lhs: f64,
    /// `2 E0^theta`.
    pub rhs: f64,
    pub satisfied: bool,
}

/// Compares `A1 + A2` against `2 E0^theta`. Informational only: the bound is
/// only expected for sufficiently small initial energy.
pub fn smallness_report(e0: f64, a1: f64, a2: f64, analysis: &AnalysisParams) -> SmallnessReport {
    let lhs = a1 + a2;
    let rhs = 2.0 * e0.max(0.0).powf(analysis.theta());
    SmallnessReport {
        e0,
        lhs,
        rhs,
        satisfied: lhs <= rhs,
    }
}
