//! Refinement studies on manufactured solutions.

use std::fmt::Write as _;

use crate::dynamics::{step, step_bounds, Method, Model};
use crate::eos::{EosParams, ViscosityParams};
use crate::error::{Error, Result};
use crate::field::{DiscretizationScheme, FlowState, Operators, SchemeKind};
use crate::io::{format_f64, SimConfig, StudyKind};

use super::mms::{mms_sources, MmsCase};

/// Least-squares slope of `log(errors)` against `log(spacings)`.
pub fn fit_order(spacings: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = spacings.iter().map(|h| h.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|e| e.ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Errors of one field along the refinement ladder.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldConvergence {
    pub field: &'static str,
    pub l2: Vec<f64>,
    pub linf: Vec<f64>,
    pub order_l2: f64,
    pub order_linf: f64,
    /// L2 error strictly decreasing along the ladder.
    pub monotone: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvergenceReport {
    pub kind: StudyKind,
    pub scheme: SchemeKind,
    pub method: Method,
    /// Points per axis (space) or step counts (time), refining.
    pub resolutions: Vec<usize>,
    /// `h` (space) or `dt` (time) for each resolution.
    pub spacings: Vec<f64>,
    pub fields: Vec<FieldConvergence>,
    /// `None` when the scheme has no algebraic order (spectral in space).
    pub expected_order: Option<f64>,
    pub slack: f64,
}

impl ConvergenceReport {
    pub fn field(&self, name: &str) -> Option<&FieldConvergence> {
        self.fields.iter().find(|f| f.field == name)
    }

    /// Monotone decrease in every field, and the L2 order within
    /// `expected +- slack` when an order is expected.
    pub fn passed(&self) -> bool {
        self.fields.iter().all(|f| {
            f.monotone
                && self
                    .expected_order
                    .is_none_or(|p| (f.order_l2 - p).abs() <= self.slack)
        })
    }

    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            StudyKind::Space => "space",
            StudyKind::Time => "time",
        }
    }

    /// Header `field,resolution,spacing,err_l2,err_linf`, one row per
    /// resolution per field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("field,resolution,spacing,err_l2,err_linf\n");
        for f in &self.fields {
            for (i, r) in self.resolutions.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{}",
                    f.field,
                    r,
                    format_f64(self.spacings[i]),
                    format_f64(f.l2[i]),
                    format_f64(f.linf[i])
                );
            }
        }
        out
    }

    pub fn summary_line(&self) -> String {
        let orders: Vec<String> = self
            .fields
            .iter()
            .map(|f| format!("{} {:.3}", f.field, f.order_l2))
            .collect();
        let expected = match self.expected_order {
            Some(p) => format!("expected {p:.1} +- {:.1}", self.slack),
            None => "no algebraic order expected".to_string(),
        };
        format!(
            "convergence {} {}/{}: order {} ({expected}) {}",
            self.kind_name(),
            self.scheme.name(),
            self.method.name(),
            orders.join(", "),
            if self.passed() { "PASS" } else { "FAIL" }
        )
    }
}

/// Everything a study needs besides the manufactured solution.
#[derive(Debug, Clone)]
pub struct StudySetup {
    pub kind: StudyKind,
    /// Points per axis (space) or step counts (time).
    pub resolutions: Vec<usize>,
    pub scheme: DiscretizationScheme,
    pub method: Method,
    pub eos: EosParams,
    pub visc: ViscosityParams,
    pub t_end: f64,
    /// Courant factor for the coarsest space-study step.
    pub cfl: f64,
    /// Grid of a time study.
    pub grid_n: usize,
    pub positivity_floor: f64,
}

impl StudySetup {
    pub fn from_config(cfg: &SimConfig) -> Self {
        Self {
            kind: cfg.study.kind,
            resolutions: cfg.study.resolutions.clone(),
            scheme: cfg.scheme,
            method: cfg.integrator.method,
            eos: cfg.eos,
            visc: cfg.visc,
            t_end: cfg.study.t_end,
            cfl: cfg.integrator.cfl,
            grid_n: cfg.grid.n(),
            positivity_floor: cfg.integrator.positivity_floor,
        }
    }

    fn model(&self, case: &MmsCase, n: usize) -> Result<Model> {
        Ok(Model {
            eos: self.eos,
            visc: self.visc,
            ops: Operators::new(case.grid(n)?, self.scheme)?,
            positivity_floor: self.positivity_floor,
        })
    }
}

/// Integrates the forced system to `t_end` with `steps` equal steps.
pub fn integrate_mms(case: &MmsCase, model: &Model, method: Method, t_end: f64, steps: usize) -> Result<FlowState> {
    let src = mms_sources(case, &model.eos, &model.visc)?;
    let mut state = case.exact_state(*model.grid(), 0.0)?;
    let dt = t_end / steps as f64;
    for k in 0..steps {
        state = step(model, &state, dt, method, Some(&src)).map_err(|e| Error::AtStep {
            step: k + 1,
            t: state.t,
            source: Box::new(e),
        })?;
        state.t = (k + 1) as f64 * dt;
    }
    Ok(state)
}

/// `[(l2, linf); 3]` errors of `m`, `n`, `u` against the exact solution.
pub fn mms_errors(case: &MmsCase, state: &FlowState) -> Result<[(f64, f64); 3]> {
    let exact = case.exact_state(*state.grid(), state.t)?;
    let diff = |a: &crate::field::ScalarField, b: &crate::field::ScalarField| a.zip_map(b, |x, y| x - y);
    let em = diff(&state.m, &exact.m);
    let en = diff(&state.n, &exact.n);
    let eu: Vec<_> = state
        .u
        .components()
        .iter()
        .zip(exact.u.components())
        .map(|(a, b)| diff(a, b))
        .collect();
    let l2 = |f: &crate::field::ScalarField| f.map(|v| v * v).integrate().sqrt();
    let u_l2 = eu.iter().map(|f| f.map(|v| v * v).integrate()).sum::<f64>().sqrt();
    let u_linf = eu.iter().map(|f| f.max_abs()).fold(0.0, f64::max);
    Ok([(l2(&em), em.max_abs()), (l2(&en), en.max_abs()), (u_l2, u_linf)])
}

/// Runs the forced system at every resolution and fits observed orders.
///
/// Space studies refine the grid with `dt ∝ h^2`, anchored at the Courant
/// step of the coarsest grid. Time studies keep the grid at `grid_n` and use
/// `resolutions` as step counts.
pub fn convergence_study(case: &MmsCase, setup: &StudySetup) -> Result<ConvergenceReport> {
    if setup.resolutions.len() < 3 {
        return Err(Error::Parameter(format!(
            "a convergence study needs at least 3 resolutions (got {})",
            setup.resolutions.len()
        )));
    }
    if setup.resolutions.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::Parameter("resolutions must be strictly increasing".to_string()));
    }
    mms_sources(case, &setup.eos, &setup.visc)?;

    let mut spacings = Vec::new();
    let mut errors = Vec::new();
    let annotate = |r: usize| move |e: Error| Error::AtResolution {
        resolution: r,
        source: Box::new(e),
    };
    match setup.kind {
        StudyKind::Space => {
            let n0 = setup.resolutions[0];
            let coarse = setup.model(case, n0).map_err(annotate(n0))?;
            let b = step_bounds(&coarse, &case.exact_state(*coarse.grid(), 0.0)?).map_err(annotate(n0))?;
            let dt0 = setup.cfl * b.advective.min(b.viscous);
            let h0 = coarse.grid().spacing();
            for &n in &setup.resolutions {
                let model = setup.model(case, n).map_err(annotate(n))?;
                let h = model.grid().spacing();
                let dt = dt0 * (h / h0).powi(2);
                let steps = (setup.t_end / dt).ceil().max(1.0) as usize;
                let state = integrate_mms(case, &model, setup.method, setup.t_end, steps).map_err(annotate(n))?;
                spacings.push(h);
                errors.push(mms_errors(case, &state)?);
            }
        }
        StudyKind::Time => {
            let model = setup.model(case, setup.grid_n)?;
            for &steps in &setup.resolutions {
                let state =
                    integrate_mms(case, &model, setup.method, setup.t_end, steps).map_err(annotate(steps))?;
                spacings.push(setup.t_end / steps as f64);
                errors.push(mms_errors(case, &state)?);
            }
        }
    }

    let fields = ["m", "n", "u"]
        .iter()
        .enumerate()
        .map(|(i, &name)| {
            let l2: Vec<f64> = errors.iter().map(|e| e[i].0).collect();
            let linf: Vec<f64> = errors.iter().map(|e| e[i].1).collect();
            FieldConvergence {
                field: name,
                order_l2: fit_order(&spacings, &l2),
                order_linf: fit_order(&spacings, &linf),
                monotone: l2.windows(2).all(|w| w[1] < w[0]),
                l2,
                linf,
            }
        })
        .collect();

    let (expected_order, slack) = match setup.kind {
        StudyKind::Space => (setup.scheme.kind.order(), 0.2),
        StudyKind::Time => (
            Some(match setup.method {
                Method::Rk4 => 4.0,
                Method::Ssprk3 => 3.0,
            }),
            0.3,
        ),
    };
    Ok(ConvergenceReport {
        kind: setup.kind,
        scheme: setup.scheme.kind,
        method: setup.method,
        resolutions: setup.resolutions.clone(),
        spacings,
        fields,
        expected_order,
        slack,
    })
}
