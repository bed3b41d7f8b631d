#![allow(dead_code)]

use std::f64::consts::PI;

use twophase::dynamics::Model;
use twophase::eos::{EosParams, ViscosityParams};
use twophase::field::{DiscretizationScheme, FlowState, Grid, Operators, ScalarField, VectorField};
use twophase::io::{parse_config, SimConfig};

pub fn eos() -> EosParams {
    EosParams::new(2.0, 1.0, 1.0, 0.0, 0.6, 0.4).unwrap()
}

pub fn model(grid: Grid, scheme: DiscretizationScheme, mu: f64, lambda: f64) -> Model {
    Model {
        eos: eos(),
        visc: ViscosityParams::new(mu, lambda).unwrap(),
        ops: Operators::new(grid, scheme).unwrap(),
        positivity_floor: 1e-8,
    }
}

pub const BASE_CONFIG: &str = "\
eos.a_l = 2.0
eos.a_g = 1.0
eos.rho_l0 = 1.0
eos.P_l0 = 0.0
eos.m_tilde = 0.6
eos.n_tilde = 0.4
visc.mu = 0.05
visc.lambda = 0.0
";

/// 1D box of length 20 with the shared material parameters.
pub fn config_text(n: usize, body: &str) -> String {
    format!("grid.dim = 1\ngrid.n = {n}\ngrid.length = 20.0\n{BASE_CONFIG}{body}")
}

pub fn config(n: usize, body: &str) -> SimConfig {
    parse_config(&config_text(n, body)).unwrap()
}

/// Gaussian perturbation of all three fields, small enough to keep `G > 0`.
pub const BUMP_BODY: &str = "\
integrator.t_end = 1.0
ic.recipe = gaussian
ic.m_amp = 0.05
ic.m_width = 1.5
ic.n_amp = 0.03
ic.n_width = 1.5
ic.u_amp = 0.02
ic.u_width = 2.0
output.record_every = 1
";

/// Smooth 3D state with all Fourier content at `|k| <= 2`, well inside the
/// dealiasing cutoff for `N >= 16`.
pub fn smooth_state_3d(grid: Grid) -> FlowState {
    let e = eos();
    let k = 2.0 * PI / grid.length();
    let m = ScalarField::from_fn(grid, |x| {
        e.m_tilde() + 0.05 * (k * x[0]).sin() * (k * x[1]).cos() + 0.02 * (2.0 * k * x[2] + 0.3).cos()
    });
    let n = ScalarField::from_fn(grid, |x| {
        e.n_tilde() + 0.03 * (k * x[1] + 0.5).sin() + 0.02 * (k * (x[0] + x[2])).cos()
    });
    let u = VectorField::from_fn(grid, |x| {
        [
            0.1 * (k * x[1]).sin() + 0.05 * (k * x[0] + 0.2).cos(),
            0.08 * (k * x[2] + 1.0).sin() * (k * x[0]).cos(),
            0.06 * (k * (x[0] + x[1])).sin() + 0.04 * (2.0 * k * x[2]).cos(),
        ]
    });
    FlowState::new(m, n, u, 0.0).unwrap()
}

/// Least-squares slope of `log e` against `log h`.
pub fn slope(h: &[f64], e: &[f64]) -> f64 {
    twophase::verification::fit_order(h, e)
}
