use crate::error::{Error, Result};
use crate::field::{FlowState, ScalarField, VectorField};

use super::rhs::{rhs, Forcing, Model, RhsOutput};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    /// Classical four-stage Runge–Kutta.
    Rk4,
    /// Three-stage strong-stability-preserving Runge–Kutta.
    Ssprk3,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Rk4 => "rk4",
            Method::Ssprk3 => "ssprk3",
        }
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "rk4" => Ok(Method::Rk4),
            "ssprk3" => Ok(Method::Ssprk3),
            other => Err(format!("unknown integrator '{other}' (expected rk4 or ssprk3)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegratorSettings {
    pub method: Method,
    pub cfl: f64,
    pub dt_max: f64,
    pub t_end: f64,
    pub positivity_floor: f64,
}

impl Default for IntegratorSettings {
    fn default() -> Self {
        Self {
            method: Method::Rk4,
            cfl: 0.4,
            dt_max: 1.0,
            t_end: 1.0,
            positivity_floor: 1e-8,
        }
    }
}

impl IntegratorSettings {
    pub fn validate(&self) -> std::result::Result<(), Vec<String>> {
        let mut problems = Vec::new();
        if !(self.cfl > 0.0 && self.cfl <= 1.0) {
            problems.push(format!("integrator.cfl in (0, 1] violated (cfl = {})", self.cfl));
        }
        if !(self.dt_max > 0.0) {
            problems.push(format!("integrator.dt_max > 0 violated (dt_max = {})", self.dt_max));
        }
        if !(self.t_end >= 0.0) || !self.t_end.is_finite() {
            problems.push(format!("integrator.t_end >= 0 violated (t_end = {})", self.t_end));
        }
        if !(self.positivity_floor > 0.0) {
            problems.push(format!(
                "integrator.positivity_floor > 0 violated (floor = {})",
                self.positivity_floor
            ));
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(problems)
        }
    }
}

/// The two stability bounds entering [`cfl_dt`], before the Courant factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepBounds {
    /// `h / (max|u| + c_max)`.
    pub advective: f64,
    /// `h^2 / (2 dim (2 mu + lambda) / min m)`.
    pub viscous: f64,
    /// Largest sound-speed proxy `sqrt(P_m + (n/m) P_n)`.
    pub c_max: f64,
}

pub fn step_bounds(model: &Model, state: &FlowState) -> Result<StepBounds> {
    let grid = state.grid();
    let h = grid.spacing();
    let mut c_max: f64 = 0.0;
    for (&m, &n) in state.m.data().iter().zip(state.n.data()) {
        let (pm, pn) = model.eos.pressure_grad(m, n)?;
        c_max = c_max.max((pm + (n / m) * pn).sqrt());
    }
    let u_max = state.u.max_norm();
    let nu = 2.0 * grid.dim() as f64 * model.visc.longitudinal() / state.m.min();
    Ok(StepBounds {
        advective: h / (u_max + c_max),
        viscous: h * h / nu,
        c_max,
    })
}

/// Courant-limited step, capped by `dt_max`; falls back to `dt_max` when
/// both bounds are degenerate.
pub fn cfl_dt(model: &Model, state: &FlowState, settings: &IntegratorSettings) -> Result<f64> {
    let b = step_bounds(model, state)?;
    let dt = settings.cfl * b.advective.min(b.viscous);
    if dt.is_finite() && dt > 0.0 {
        Ok(dt.min(settings.dt_max))
    } else {
        Ok(settings.dt_max)
    }
}

/// `base + dt * k` at time `t`.
fn advance(base: &FlowState, k: &RhsOutput, dt: f64, t: f64) -> FlowState {
    FlowState {
        m: base.m.add_scaled(dt, &k.dm_dt),
        n: base.n.add_scaled(dt, &k.dn_dt),
        u: base.u.add_scaled(dt, &k.du_dt),
        t,
    }
}

/// `a * x + b * y` at time `t`.
fn blend(a: f64, x: &FlowState, b: f64, y: &FlowState, t: f64) -> FlowState {
    FlowState {
        m: x.m.zip_map(&y.m, |p, q| a * p + b * q),
        n: x.n.zip_map(&y.n, |p, q| a * p + b * q),
        u: x.u.zip_components(&y.u, |p, q| p.zip_map(q, |r, s| a * r + b * s)),
        t,
    }
}

fn finite_stage(state: FlowState, stage: usize) -> Result<FlowState> {
    state.check_finite().map_err(|_| Error::NonFinite {
        what: format!("stage {stage} values"),
        t: state.t,
    })?;
    Ok(state)
}

/// One explicit step of size `dt`; the result is checked for finiteness and
/// positivity.
pub fn step(
    model: &Model,
    state: &FlowState,
    dt: f64,
    method: Method,
    forcing: Option<&dyn Forcing>,
) -> Result<FlowState> {
    if !(dt > 0.0) {
        return Err(Error::Parameter(format!("time step must be positive (dt = {dt})")));
    }
    let t = state.t;
    let next = match method {
        Method::Rk4 => {
            let k1 = rhs(model, state, forcing)?;
            let s2 = finite_stage(advance(state, &k1, 0.5 * dt, t + 0.5 * dt), 2)?;
            let k2 = rhs(model, &s2, forcing)?;
            let s3 = finite_stage(advance(state, &k2, 0.5 * dt, t + 0.5 * dt), 3)?;
            let k3 = rhs(model, &s3, forcing)?;
            let s4 = finite_stage(advance(state, &k3, dt, t + dt), 4)?;
            let k4 = rhs(model, &s4, forcing)?;
            let w = dt / 6.0;
            let combine = |x: &ScalarField,
                           a: &ScalarField,
                           b: &ScalarField,
                           c: &ScalarField,
                           d: &ScalarField| {
                let mut out = x.clone();
                for ((((o, a), b), c), d) in out
                    .data_mut()
                    .iter_mut()
                    .zip(a.data())
                    .zip(b.data())
                    .zip(c.data())
                    .zip(d.data())
                {
                    *o += w * (a + 2.0 * b + 2.0 * c + d);
                }
                out
            };
            let u = state
                .u
                .components()
                .iter()
                .enumerate()
                .map(|(j, x)| {
                    combine(
                        x,
                        k1.du_dt.component(j),
                        k2.du_dt.component(j),
                        k3.du_dt.component(j),
                        k4.du_dt.component(j),
                    )
                })
                .collect();
            FlowState {
                m: combine(&state.m, &k1.dm_dt, &k2.dm_dt, &k3.dm_dt, &k4.dm_dt),
                n: combine(&state.n, &k1.dn_dt, &k2.dn_dt, &k3.dn_dt, &k4.dn_dt),
                u: VectorField::new(u)?,
                t: t + dt,
            }
        }
        Method::Ssprk3 => {
            let k1 = rhs(model, state, forcing)?;
            let s1 = finite_stage(advance(state, &k1, dt, t + dt), 2)?;
            let k2 = rhs(model, &s1, forcing)?;
            let s2 = finite_stage(
                blend(0.75, state, 0.25, &advance(&s1, &k2, dt, t + dt), t + 0.5 * dt),
                3,
            )?;
            let k3 = rhs(model, &s2, forcing)?;
            blend(1.0 / 3.0, state, 2.0 / 3.0, &advance(&s2, &k3, dt, t + dt), t + dt)
        }
    };
    let next = finite_stage(next, 5)?;
    next.check_positivity(model.positivity_floor)?;
    Ok(next)
}
