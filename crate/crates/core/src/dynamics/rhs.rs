use crate::eos::{EosParams, ViscosityParams};
use crate::error::Result;
use crate::field::{FlowState, Grid, Operators, ScalarField, VectorField};

/// Everything the right-hand side needs besides the state itself.
#[derive(Debug, Clone)]
pub struct Model {
    pub eos: EosParams,
    pub visc: ViscosityParams,
    pub ops: Operators,
    /// Minimum admissible `m` and `n`.
    pub positivity_floor: f64,
}

impl Model {
    pub fn grid(&self) -> &Grid {
        self.ops.grid()
    }

    /// Pointwise mixture pressure.
    pub fn pressure(&self, state: &FlowState) -> Result<ScalarField> {
        state.m.try_zip_map(&state.n, |m, n| self.eos.pressure(m, n))
    }

    /// `mu Lap u + (mu + lambda) grad div u - grad P`, i.e. `m u_dot`.
    pub fn momentum_force(&self, state: &FlowState, pressure: &ScalarField) -> VectorField {
        self.ops
            .lame(&state.u, &self.visc)
            .add_scaled(-1.0, &self.ops.grad(pressure))
    }

    /// `(u . grad) u`, truncated when dealiasing is on.
    pub fn advection(&self, u: &VectorField) -> VectorField {
        let g = self.ops.grad_tensor(u);
        let comps = (0..u.dim())
            .map(|j| {
                let mut acc = ScalarField::zeros(*u.grid());
                for (i, ui) in u.components().iter().enumerate() {
                    for ((a, x), y) in acc.data_mut().iter_mut().zip(ui.data()).zip(g[j][i].data()) {
                        *a += x * y;
                    }
                }
                self.ops.dealias(&acc)
            })
            .collect();
        VectorField::new(comps).expect("advection keeps the grid")
    }
}

/// Source terms added to each equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Sources {
    pub m: ScalarField,
    pub n: ScalarField,
    pub u: VectorField,
}

/// Time-dependent forcing, e.g. manufactured-solution sources.
pub trait Forcing {
    fn sources(&self, grid: &Grid, t: f64) -> Result<Sources>;
}

#[derive(Debug, Clone, PartialEq)]
pub struct RhsOutput {
    pub dm_dt: ScalarField,
    pub dn_dt: ScalarField,
    pub du_dt: VectorField,
    /// The `(u . grad) u` term subtracted inside `du_dt`.
    pub advection: VectorField,
}

/// Semi-discrete time derivative of `(m, n, u)`.
///
/// Mass equations are in conservative form. The momentum equation is used in
/// velocity form, `u_t = [mu Lap u + (mu + lambda) grad div u - grad P] / m - (u . grad) u`.
pub fn rhs(model: &Model, state: &FlowState, forcing: Option<&dyn Forcing>) -> Result<RhsOutput> {
    state.check_positivity(model.positivity_floor)?;
    let ops = &model.ops;

    let mass_flux = |rho: &ScalarField| ops.dealias_vector(&state.u.times_scalar(rho));
    let mut dm_dt = ops.div(&mass_flux(&state.m)).scale(-1.0);
    let mut dn_dt = ops.div(&mass_flux(&state.n)).scale(-1.0);

    let pressure = model.pressure(state)?;
    let force = model.momentum_force(state, &pressure);
    let advection = model.advection(&state.u);
    let mut du_dt = force
        .map_components(|c| c.zip_map(&state.m, |f, m| f / m))
        .add_scaled(-1.0, &advection);

    if let Some(forcing) = forcing {
        let src = forcing.sources(state.grid(), state.t)?;
        dm_dt.add_scaled_mut(1.0, &src.m);
        dn_dt.add_scaled_mut(1.0, &src.n);
        du_dt = du_dt.add_scaled(1.0, &src.u);
    }

    Ok(RhsOutput {
        dm_dt,
        dn_dt,
        du_dt,
        advection,
    })
}
