use crate::dynamics::Model;
use crate::eos::AnalysisParams;
use crate::error::Result;
use crate::field::FlowState;

use super::functionals::{smallness_report, FunctionalSample, FunctionalsAccumulator};
use super::identities::{
    check_lambda_transport, dissipation, elliptic_f_residual, elliptic_omega_residual,
    grad_norm_sq, hoff_from, ratio_bounds, total_energy,
    StateAnalysis,
};

/// CSV column names, in output order.
pub const COLUMNS: [&str; 26] = [
    "step",
    "t",
    "dt",
    "E",
    "KE",
    "PE",
    "D",
    "M",
    "gradL2",
    "min_m",
    "max_m",
    "min_n",
    "max_n",
    "min_s",
    "max_s",
    "A1",
    "A2",
    "res_F",
    "res_omega",
    "res_hoff",
    "res_lambda1",
    "res_lambda2",
    "mass_m",
    "mass_n",
    "smallness_lhs",
    "smallness_rhs",
];

/// One row of scalar diagnostics. Field names match the CSV header.
///
/// Residuals are normalized by `max(1, |reference|)`. `res_omega` is zero in
/// 1D; the Lambda residuals are zero on the first record of a run, which has
/// no predecessor.
#[allow(non_snake_case)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRecord {
    pub step: u64,
    pub t: f64,
    pub dt: f64,
    pub E: f64,
    pub KE: f64,
    pub PE: f64,
    pub D: f64,
    pub M: f64,
    pub gradL2: f64,
    pub min_m: f64,
    pub max_m: f64,
    pub min_n: f64,
    pub max_n: f64,
    pub min_s: f64,
    pub max_s: f64,
    pub A1: f64,
    pub A2: f64,
    pub res_F: f64,
    pub res_omega: f64,
    pub res_hoff: f64,
    pub res_lambda1: f64,
    pub res_lambda2: f64,
    pub mass_m: f64,
    pub mass_n: f64,
    pub smallness_lhs: f64,
    pub smallness_rhs: f64,
}

impl DiagnosticsRecord {
    /// Values in [`COLUMNS`] order, except `step`.
    pub fn values(&self) -> [f64; 25] {
        [
            self.t,
            self.dt,
            self.E,
            self.KE,
            self.PE,
            self.D,
            self.M,
            self.gradL2,
            self.min_m,
            self.max_m,
            self.min_n,
            self.max_n,
            self.min_s,
            self.max_s,
            self.A1,
            self.A2,
            self.res_F,
            self.res_omega,
            self.res_hoff,
            self.res_lambda1,
            self.res_lambda2,
            self.mass_m,
            self.mass_n,
            self.smallness_lhs,
            self.smallness_rhs,
        ]
    }

    /// Inverse of [`values`](Self::values).
    pub fn from_values(step: u64, v: &[f64; 25]) -> Self {
        Self {
            step,
            t: v[0],
            dt: v[1],
            E: v[2],
            KE: v[3],
            PE: v[4],
            D: v[5],
            M: v[6],
            gradL2: v[7],
            min_m: v[8],
            max_m: v[9],
            min_n: v[10],
            max_n: v[11],
            min_s: v[12],
            max_s: v[13],
            A1: v[14],
            A2: v[15],
            res_F: v[16],
            res_omega: v[17],
            res_hoff: v[18],
            res_lambda1: v[19],
            res_lambda2: v[20],
            mass_m: v[21],
            mass_n: v[22],
            smallness_lhs: v[23],
            smallness_rhs: v[24],
        }
    }
}

/// Builds records along a trajectory, carrying the running functionals and
/// the initial energy.
#[derive(Debug, Clone)]
pub struct RecordBuilder {
    analysis: AnalysisParams,
    functionals: FunctionalsAccumulator,
    e0: Option<f64>,
    samples: Vec<FunctionalSample>,
}

impl RecordBuilder {
    pub fn new(analysis: AnalysisParams) -> Self {
        Self {
            analysis,
            functionals: FunctionalsAccumulator::new(),
            e0: None,
            samples: Vec::new(),
        }
    }

    /// Energy of the first recorded state.
    pub fn initial_energy(&self) -> Option<f64> {
        self.e0
    }

    pub fn samples(&self) -> &[FunctionalSample] {
        &self.samples
    }

    /// `previous` is the state one solver step before `state`, if any.
    pub fn record(
        &mut self,
        model: &Model,
        step: u64,
        dt: f64,
        state: &FlowState,
        previous: Option<&FlowState>,
    ) -> Result<DiagnosticsRecord> {
        let energy = total_energy(state, &model.eos)?;
        let e0 = *self.e0.get_or_insert(energy.total);

        let a = StateAnalysis::new(model, state)?;
        let grad_u_sq = grad_norm_sq(model, &state.u).integrate();
        let sample = FunctionalSample {
            t: state.t,
            grad_u_sq,
            udot_sq: a.udot.norm_sq().integrate(),
            grad_udot_sq: grad_norm_sq(model, &a.udot).integrate(),
        };
        self.samples.push(sample);
        let (a1, a2) = self.functionals.push(sample);
        let small = smallness_report(e0, a1, a2, &self.analysis);

        let (_, res_hoff) = hoff_from(model, state, &a)?;
        let (res_lambda1, res_lambda2) = match previous {
            Some(prev) => check_lambda_transport(model, prev, state)?,
            None => (0.0, 0.0),
        };
        let (min_s, max_s) = ratio_bounds(state);

        Ok(DiagnosticsRecord {
            step,
            t: state.t,
            dt,
            E: energy.total,
            KE: energy.kinetic,
            PE: energy.potential,
            D: dissipation(model, state),
            M: grad_u_sq,
            gradL2: grad_u_sq.sqrt(),
            min_m: state.m.min(),
            max_m: state.m.max(),
            min_n: state.n.min(),
            max_n: state.n.max(),
            min_s,
            max_s,
            A1: a1,
            A2: a2,
            res_F: elliptic_f_residual(model, &a),
            res_omega: elliptic_omega_residual(model, state, &a),
            res_hoff,
            res_lambda1,
            res_lambda2,
            mass_m: state.m.integrate(),
            mass_n: state.n.integrate(),
            smallness_lhs: small.lhs,
            smallness_rhs: small.rhs,
        })
    }
}
