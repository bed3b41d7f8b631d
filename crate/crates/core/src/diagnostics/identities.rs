//! Pointwise functionals and identity residuals on a single state.
//!
//! Residuals are normalized by `max(1, |reference side|)` so they stay
//! meaningful near equilibrium, where both sides vanish.

use crate::dynamics::{rhs, Model, RhsOutput};
use crate::eos::EosParams;
use crate::error::{Error, Result};
use crate::field::{solve_lame_periodic, FlowState, ScalarField, VectorField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Energy {
    pub total: f64,
    pub kinetic: f64,
    pub potential: f64,
}

/// `E = int(m |u|^2 / 2 + G(m, n/m))`, split into kinetic and potential parts.
pub fn total_energy(state: &FlowState, eos: &EosParams) -> Result<Energy> {
    let ke_density = state.u.norm_sq().zip_map(&state.m, |u2, m| 0.5 * m * u2);
    let g = state
        .m
        .try_zip_map(&state.n, |m, n| eos.potential_energy_g(m, n))?;
    let kinetic = ke_density.integrate();
    let potential = g.integrate();
    Ok(Energy {
        total: kinetic + potential,
        kinetic,
        potential,
    })
}

/// `int(mu |grad u|^2 + (mu + lambda)(div u)^2)`.
pub fn dissipation(model: &Model, state: &FlowState) -> f64 {
    let grad_sq = grad_norm_sq(model, &state.u);
    let div = model.ops.div(&state.u);
    let mu = model.visc.mu();
    let ml = mu + model.visc.lambda();
    grad_sq.zip_map(&div, |g, d| mu * g + ml * d * d).integrate()
}

/// Pointwise `|grad v|^2 = sum_{jk} (d_k v^j)^2`.
pub fn grad_norm_sq(model: &Model, v: &VectorField) -> ScalarField {
    let mut out = ScalarField::zeros(*v.grid());
    for row in model.ops.grad_tensor(v) {
        for g in row {
            for (o, x) in out.data_mut().iter_mut().zip(g.data()) {
                *o += x * x;
            }
        }
    }
    out
}

/// Extremes of the mass ratio `n/m`.
pub fn ratio_bounds(state: &FlowState) -> (f64, f64) {
    let s = state.n.zip_map(&state.m, |n, m| n / m);
    (s.min(), s.max())
}

/// Momentum `int(m u)` per component. Not conserved by the velocity-form
/// update; reported as drift.
pub fn total_momentum(state: &FlowState) -> Vec<f64> {
    state.u.times_scalar(&state.m).integrals()
}

/// Largest deviation from the far-field state within `shell` of the box
/// faces; flags perturbations that reach the periodic images.
pub fn boundary_shell_perturbation(state: &FlowState, eos: &EosParams, shell: f64) -> f64 {
    let grid = *state.grid();
    let l = grid.length();
    let mut worst: f64 = 0.0;
    for idx in 0..grid.len() {
        let x = grid.coords(idx);
        let near_edge = (0..grid.dim()).any(|a| x[a] < shell || x[a] > l - shell);
        if !near_edge {
            continue;
        }
        let dm = (state.m.data()[idx] - eos.m_tilde()).abs();
        let dn = (state.n.data()[idx] - eos.n_tilde()).abs();
        let du = state
            .u
            .components()
            .iter()
            .fold(0.0f64, |acc, c| acc.max(c.data()[idx].abs()));
        worst = worst.max(dm).max(dn).max(du);
    }
    worst
}

/// Shared intermediate quantities for the identity checks.
#[derive(Debug, Clone)]
pub struct StateAnalysis {
    pub pressure: ScalarField,
    pub rhs: RhsOutput,
    /// Material derivative `u_t + (u . grad) u`.
    pub udot: VectorField,
    pub m_udot: VectorField,
    /// Effective viscous flux.
    pub flux: ScalarField,
}

impl StateAnalysis {
    pub fn new(model: &Model, state: &FlowState) -> Result<Self> {
        let rhs_out = rhs(model, state, None)?;
        let pressure = model.pressure(state)?;
        let udot = material_derivative_u(&rhs_out);
        let m_udot = udot.times_scalar(&state.m);
        let flux = flux_from(model, state, &pressure);
        Ok(Self {
            pressure,
            rhs: rhs_out,
            udot,
            m_udot,
            flux,
        })
    }
}

fn flux_from(model: &Model, state: &FlowState, pressure: &ScalarField) -> ScalarField {
    let lon = model.visc.longitudinal();
    let p_far = model.eos.p_far();
    model
        .ops
        .div(&state.u)
        .zip_map(pressure, |d, p| lon * d - p + p_far)
}

/// `F = (lambda + 2 mu) div u - P(m, n) + P(m~, n~)`.
pub fn effective_viscous_flux(model: &Model, state: &FlowState) -> Result<ScalarField> {
    let pressure = model.pressure(state)?;
    Ok(flux_from(model, state, &pressure))
}

/// `u_dot = u_t + (u . grad) u`, reusing the advection term of `rhs_out`.
pub fn material_derivative_u(rhs_out: &RhsOutput) -> VectorField {
    rhs_out.du_dt.add_scaled(1.0, &rhs_out.advection)
}

/// `|m u_dot - (mu Lap u + (mu + lambda) grad div u - grad P)|_inf`.
pub fn construction_identity_residual(model: &Model, state: &FlowState, a: &StateAnalysis) -> f64 {
    let force = model.momentum_force(state, &a.pressure);
    a.m_udot.add_scaled(-1.0, &force).max_abs()
}

fn normalized(residual: &ScalarField, reference: &ScalarField) -> f64 {
    residual.l2_norm() / reference.l2_norm().max(1.0)
}

pub fn check_elliptic_f(model: &Model, state: &FlowState) -> Result<f64> {
    Ok(elliptic_f_residual(model, &StateAnalysis::new(model, state)?))
}

/// Residual of `Lap F = div(m u_dot)`.
pub fn elliptic_f_residual(model: &Model, a: &StateAnalysis) -> f64 {
    let lhs = model.ops.laplacian(&a.flux);
    let rhs_side = model.ops.div(&a.m_udot);
    normalized(&lhs.add_scaled(-1.0, &rhs_side), &rhs_side)
}

pub fn check_elliptic_omega(model: &Model, state: &FlowState) -> Result<f64> {
    if state.grid().dim() != 3 {
        return Err(Error::Dimension(
            "vorticity identity needs a 3D state".to_string(),
        ));
    }
    Ok(elliptic_omega_residual(model, state, &StateAnalysis::new(model, state)?))
}

/// Residual of `mu Lap w^{jk} = d_k(m u_dot^j) - d_j(m u_dot^k)`, maximum
/// over the independent pairs; zero in 1D, where the identity is vacuous.
pub fn elliptic_omega_residual(model: &Model, state: &FlowState, a: &StateAnalysis) -> f64 {
    let omega = model.ops.antisym_grad(&state.u);
    let dim = omega.dim();
    let mu = model.visc.mu();
    let mut worst: f64 = 0.0;
    for j in 0..dim {
        for k in (j + 1)..dim {
            let lhs = model.ops.laplacian(omega.get(j, k)).scale(mu);
            let rhs_side = model
                .ops
                .derivative(a.m_udot.component(j), k)
                .add_scaled(-1.0, &model.ops.derivative(a.m_udot.component(k), j));
            worst = worst.max(normalized(&lhs.add_scaled(-1.0, &rhs_side), &rhs_side));
        }
    }
    worst
}

pub fn check_laplacian_decomposition(model: &Model, state: &FlowState) -> Result<f64> {
    let pressure = model.pressure(state)?;
    let flux = flux_from(model, state, &pressure);
    Ok(laplacian_decomposition_residual(model, state, &pressure, &flux))
}

/// Residual of `Lap u^j = d_j((F + P - P~)/(lambda + 2 mu)) + d_i w^{j,i}`.
pub fn laplacian_decomposition_residual(
    model: &Model,
    state: &FlowState,
    pressure: &ScalarField,
    flux: &ScalarField,
) -> f64 {
    let ops = &model.ops;
    let lon = model.visc.longitudinal();
    let p_far = model.eos.p_far();
    let potential = flux.zip_map(pressure, |f, p| (f + p - p_far) / lon);
    let grad_potential = ops.grad(&potential);
    let omega = ops.antisym_grad(&state.u);
    let lap_u = ops.vector_laplacian(&state.u);
    let mut worst: f64 = 0.0;
    for j in 0..state.u.dim() {
        let mut residual = lap_u.component(j).add_scaled(-1.0, grad_potential.component(j));
        for i in 0..omega.dim() {
            residual.add_scaled_mut(-1.0, &ops.derivative(omega.get(j, i), i));
        }
        worst = worst.max(residual.max_abs());
    }
    worst / lap_u.max_abs().max(1.0)
}

/// `u = v + w` split through the periodic Lamé operator.
#[derive(Debug, Clone, PartialEq)]
pub struct HoffPair {
    /// Solves `mu Lap v + (lambda + mu) grad div v = grad P`.
    pub v: VectorField,
    /// Solves `mu Lap w + (lambda + mu) grad div w = m u_dot`.
    pub w: VectorField,
    /// Means removed from `grad P` and `m u_dot` before solving.
    pub subtracted_means: Vec<f64>,
}

pub fn hoff_decomposition(model: &Model, state: &FlowState) -> Result<(HoffPair, f64)> {
    hoff_from(model, state, &StateAnalysis::new(model, state)?)
}

/// Residual `|u - mean(u) - v - w|_inf / max(1, |u|_inf)`.
pub fn hoff_from(model: &Model, state: &FlowState, a: &StateAnalysis) -> Result<(HoffPair, f64)> {
    let grad_p = model.ops.grad(&a.pressure);
    let v = solve_lame_periodic(&grad_p, &model.visc)?;
    let w = solve_lame_periodic(&a.m_udot, &model.visc)?;
    let means = state.u.means();
    let mut worst: f64 = 0.0;
    for j in 0..state.u.dim() {
        let mean = means[j];
        let r = state
            .u
            .component(j)
            .zip_map(v.z.component(j), |u, v| u - mean - v)
            .add_scaled(-1.0, w.z.component(j));
        worst = worst.max(r.max_abs());
    }
    let subtracted_means = v
        .subtracted_means
        .iter()
        .zip(&w.subtracted_means)
        .map(|(a, b)| a + b)
        .collect();
    let residual = worst / state.u.max_abs().max(1.0);
    Ok((
        HoffPair {
            v: v.z,
            w: w.z,
            subtracted_means,
        },
        residual,
    ))
}

/// Every instantaneous identity residual of one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdentityReport {
    /// `m u_dot` against the momentum force.
    pub construction: f64,
    pub elliptic_f: f64,
    /// `None` in 1D.
    pub elliptic_omega: Option<f64>,
    pub laplacian_decomposition: f64,
    pub hoff: f64,
}

impl IdentityReport {
    pub fn entries(&self) -> Vec<(&'static str, f64)> {
        let mut out = vec![
            ("construction", self.construction),
            ("res_F", self.elliptic_f),
        ];
        if let Some(o) = self.elliptic_omega {
            out.push(("res_omega", o));
        }
        out.push(("res_w155", self.laplacian_decomposition));
        out.push(("res_hoff", self.hoff));
        out
    }

    pub fn max(&self) -> f64 {
        self.entries().iter().map(|e| e.1).fold(0.0, f64::max)
    }
}

pub fn identity_report(model: &Model, state: &FlowState) -> Result<IdentityReport> {
    let a = StateAnalysis::new(model, state)?;
    let (_, hoff) = hoff_from(model, state, &a)?;
    Ok(IdentityReport {
        construction: construction_identity_residual(model, state, &a),
        elliptic_f: elliptic_f_residual(model, &a),
        elliptic_omega: (state.grid().dim() == 3).then(|| elliptic_omega_residual(model, state, &a)),
        laplacian_decomposition: laplacian_decomposition_residual(model, state, &a.pressure, &a.flux),
        hoff,
    })
}

/// `Lambda_1(m) = (2 mu + lambda) ln(m / m~)`.
pub fn lambda1(m: f64, model: &Model) -> f64 {
    model.visc.longitudinal() * (m / model.eos.m_tilde()).ln()
}

/// `Lambda_2(n) = (2 mu + lambda) ln(n / n~)`.
pub fn lambda2(n: f64, model: &Model) -> f64 {
    model.visc.longitudinal() * (n / model.eos.n_tilde()).ln()
}

/// Residuals of `d_t Lambda + u . grad Lambda + P - P~ = -F` for both
/// potentials, with a forward difference in time between two consecutive
/// states and all spatial terms taken at the earlier one.
pub fn check_lambda_transport(
    model: &Model,
    before: &FlowState,
    after: &FlowState,
) -> Result<(f64, f64)> {
    let dt = after.t - before.t;
    if !(dt > 0.0) {
        return Err(Error::Parameter(format!(
            "states must be consecutive in time (dt = {dt})"
        )));
    }
    let pressure = model.pressure(before)?;
    let flux = flux_from(model, before, &pressure);
    let p_far = model.eos.p_far();
    let residual = |old: &ScalarField, new: &ScalarField, potential: &dyn Fn(f64) -> f64| {
        let lam_old = old.map(potential);
        let lam_new = new.map(potential);
        let grad = model.ops.grad(&lam_old);
        let mut r = lam_new.add_scaled(-1.0, &lam_old).scale(1.0 / dt);
        for (j, g) in grad.components().iter().enumerate() {
            r = r.add_scaled(1.0, &g.zip_map(before.u.component(j), |a, b| a * b));
        }
        let r = r
            .zip_map(&pressure, |x, p| x + p - p_far)
            .add_scaled(1.0, &flux);
        normalized(&r, &flux)
    };
    let r1 = residual(&before.m, &after.m, &|m| lambda1(m, model));
    let r2 = residual(&before.n, &after.n, &|n| lambda2(n, model));
    Ok((r1, r2))
}
