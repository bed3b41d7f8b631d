use crate::eos::EosParams;
use crate::error::{Error, Result};

use super::grid::Grid;

/// Pairwise summation; error grows like log(n) rather than n.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 128;
    if values.len() <= BLOCK {
        values.iter().sum()
    } else {
        let (lo, hi) = values.split_at(values.len() / 2);
        pairwise_sum(lo) + pairwise_sum(hi)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    data: Vec<f64>,
}

impl ScalarField {
    /// Fails when the length does not match the grid or an entry is not finite.
    pub fn new(grid: Grid, data: Vec<f64>) -> Result<Self> {
        if data.len() != grid.len() {
            return Err(Error::Dimension(format!(
                "field has {} values, grid needs {}",
                data.len(),
                grid.len()
            )));
        }
        if let Some(i) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                what: format!("field entry {i}"),
                t: f64::NAN,
            });
        }
        Ok(Self { grid, data })
    }

    /// Wraps values produced internally by operators; finiteness is checked
    /// where states are accepted.
    pub(crate) fn from_raw(grid: Grid, data: Vec<f64>) -> Self {
        debug_assert_eq!(data.len(), grid.len());
        Self { grid, data }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self::constant(grid, 0.0)
    }

    pub fn constant(grid: Grid, value: f64) -> Self {
        Self {
            grid,
            data: vec![value; grid.len()],
        }
    }

    /// Samples `f` at the physical coordinates of every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> f64) -> Self {
        let data = (0..grid.len()).map(|i| f(grid.coords(i))).collect();
        Self { grid, data }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<f64> {
        self.data
    }

    pub fn is_finite(&self) -> bool {
        self.data.iter().all(|v| v.is_finite())
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_raw(self.grid, self.data.iter().map(|&v| f(v)).collect())
    }

    pub fn zip_map(&self, other: &Self, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.grid, other.grid);
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Self::from_raw(self.grid, data)
    }

    /// Fallible pointwise map over two fields, used for EOS evaluations.
    pub fn try_zip_map(
        &self,
        other: &Self,
        f: impl Fn(f64, f64) -> Result<f64>,
    ) -> Result<Self> {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::from_raw(self.grid, data))
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map(|v| s * v)
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &Self) -> Self {
        self.zip_map(other, |a, b| a + s * b)
    }

    pub fn add_scaled_mut(&mut self, s: f64, other: &Self) {
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            *a += s * b;
        }
    }

    pub fn min(&self) -> f64 {
        self.data.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.data.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// Index and value of the smallest entry.
    pub fn argmin(&self) -> (usize, f64) {
        self.data
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::INFINITY), |acc, (i, v)| if v < acc.1 { (i, v) } else { acc })
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |acc, v| acc.max(v.abs()))
    }

    /// `h^dim * sum(values)`: the periodic trapezoid rule.
    pub fn integrate(&self) -> f64 {
        self.grid.cell_volume() * pairwise_sum(&self.data)
    }

    pub fn mean(&self) -> f64 {
        pairwise_sum(&self.data) / self.data.len() as f64
    }

    pub fn l2_norm(&self) -> f64 {
        let sq: Vec<f64> = self.data.iter().map(|v| v * v).collect();
        (self.grid.cell_volume() * pairwise_sum(&sq)).sqrt()
    }

    /// Periodic shift by `shift` cells along `axis` (out[i] = in[i - shift]).
    pub fn shifted(&self, axis: usize, shift: usize) -> Self {
        let n = self.grid.n();
        let mut out = vec![0.0; self.data.len()];
        for (idx, v) in self.data.iter().enumerate() {
            let mut ijk = self.grid.unflatten(idx);
            ijk[axis] = (ijk[axis] + shift) % n;
            out[self.grid.flatten(ijk)] = *v;
        }
        Self::from_raw(self.grid, out)
    }
}

/// Vector field stored as `dim` component blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    comps: Vec<ScalarField>,
}

impl VectorField {
    pub fn new(comps: Vec<ScalarField>) -> Result<Self> {
        let Some(first) = comps.first() else {
            return Err(Error::Dimension("vector field needs components".to_string()));
        };
        let grid = *first.grid();
        if comps.len() != grid.dim() {
            return Err(Error::Dimension(format!(
                "vector field has {} components on a {}D grid",
                comps.len(),
                grid.dim()
            )));
        }
        if comps.iter().any(|c| *c.grid() != grid) {
            return Err(Error::Dimension("components live on different grids".to_string()));
        }
        Ok(Self { comps })
    }

    pub(crate) fn from_raw(comps: Vec<ScalarField>) -> Self {
        Self { comps }
    }

    pub fn zeros(grid: Grid) -> Self {
        Self {
            comps: (0..grid.dim()).map(|_| ScalarField::zeros(grid)).collect(),
        }
    }

    pub fn from_fn(grid: Grid, f: impl Fn([f64; 3]) -> [f64; 3]) -> Self {
        let comps = (0..grid.dim())
            .map(|j| ScalarField::from_fn(grid, |x| f(x)[j]))
            .collect();
        Self { comps }
    }

    pub fn grid(&self) -> &Grid {
        self.comps[0].grid()
    }

    pub fn dim(&self) -> usize {
        self.comps.len()
    }

    pub fn component(&self, j: usize) -> &ScalarField {
        &self.comps[j]
    }

    pub fn components(&self) -> &[ScalarField] {
        &self.comps
    }

    pub fn components_mut(&mut self) -> &mut [ScalarField] {
        &mut self.comps
    }

    pub fn into_components(self) -> Vec<ScalarField> {
        self.comps
    }

    pub fn is_finite(&self) -> bool {
        self.comps.iter().all(ScalarField::is_finite)
    }

    pub fn map_components(&self, f: impl Fn(&ScalarField) -> ScalarField) -> Self {
        Self {
            comps: self.comps.iter().map(f).collect(),
        }
    }

    pub fn zip_components(
        &self,
        other: &Self,
        f: impl Fn(&ScalarField, &ScalarField) -> ScalarField,
    ) -> Self {
        Self {
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| f(a, b)).collect(),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        self.map_components(|c| c.scale(s))
    }

    pub fn add_scaled(&self, s: f64, other: &Self) -> Self {
        self.zip_components(other, |a, b| a.add_scaled(s, b))
    }

    /// Multiplies every component pointwise by `f`.
    pub fn times_scalar(&self, f: &ScalarField) -> Self {
        self.map_components(|c| c.zip_map(f, |a, b| a * b))
    }

    /// Pointwise `|v|^2`.
    pub fn norm_sq(&self) -> ScalarField {
        let mut out = ScalarField::zeros(*self.grid());
        for c in &self.comps {
            for (o, v) in out.data_mut().iter_mut().zip(c.data()) {
                *o += v * v;
            }
        }
        out
    }

    pub fn max_norm(&self) -> f64 {
        self.norm_sq().max().sqrt()
    }

    /// Largest absolute entry over all components.
    pub fn max_abs(&self) -> f64 {
        self.comps.iter().fold(0.0, |acc, c| acc.max(c.max_abs()))
    }

    pub fn means(&self) -> Vec<f64> {
        self.comps.iter().map(ScalarField::mean).collect()
    }

    pub fn integrals(&self) -> Vec<f64> {
        self.comps.iter().map(ScalarField::integrate).collect()
    }
}

/// Antisymmetric `dim x dim` matrix of scalar fields; empty in 1D.
#[derive(Debug, Clone, PartialEq)]
pub struct AntisymField {
    dim: usize,
    entries: Vec<ScalarField>,
}

impl AntisymField {
    /// Builds the matrix from the strictly upper entries `(j, k), j < k`,
    /// mirroring them with a sign flip.
    pub(crate) fn from_upper(grid: Grid, upper: impl Fn(usize, usize) -> ScalarField) -> Self {
        let dim = if grid.dim() == 1 { 0 } else { grid.dim() };
        let mut entries = vec![ScalarField::zeros(grid); dim * dim];
        for j in 0..dim {
            for k in (j + 1)..dim {
                let w = upper(j, k);
                entries[k * dim + j] = w.scale(-1.0);
                entries[j * dim + k] = w;
            }
        }
        Self { dim, entries }
    }

    /// Matrix size: 3 in 3D, 0 in 1D.
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, j: usize, k: usize) -> &ScalarField {
        &self.entries[j * self.dim + k]
    }

    /// `sum_{j,k} |w^{jk}|^2` pointwise.
    pub fn norm_sq(&self) -> Option<ScalarField> {
        let first = self.entries.first()?;
        let mut out = ScalarField::zeros(*first.grid());
        for e in &self.entries {
            for (o, v) in out.data_mut().iter_mut().zip(e.data()) {
                *o += v * v;
            }
        }
        Some(out)
    }
}

/// Liquid mass, gas mass and mixture velocity at time `t`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowState {
    pub m: ScalarField,
    pub n: ScalarField,
    pub u: VectorField,
    pub t: f64,
}

impl FlowState {
    pub fn new(m: ScalarField, n: ScalarField, u: VectorField, t: f64) -> Result<Self> {
        if m.grid() != n.grid() || m.grid() != u.grid() {
            return Err(Error::Dimension("state fields live on different grids".to_string()));
        }
        let state = Self { m, n, u, t };
        state.check_finite()?;
        Ok(state)
    }

    /// The constant far-field state `(m~, n~, 0)`.
    pub fn equilibrium(grid: Grid, eos: &EosParams) -> Self {
        Self {
            m: ScalarField::constant(grid, eos.m_tilde()),
            n: ScalarField::constant(grid, eos.n_tilde()),
            u: VectorField::zeros(grid),
            t: 0.0,
        }
    }

    pub fn grid(&self) -> &Grid {
        self.m.grid()
    }

    pub fn check_finite(&self) -> Result<()> {
        let bad = if !self.m.is_finite() {
            Some("m")
        } else if !self.n.is_finite() {
            Some("n")
        } else if !self.u.is_finite() {
            Some("u")
        } else {
            None
        };
        match bad {
            Some(what) => Err(Error::NonFinite {
                what: what.to_string(),
                t: self.t,
            }),
            None => Ok(()),
        }
    }

    /// Fails unless `min m > floor` and `min n > floor`.
    pub fn check_positivity(&self, floor: f64) -> Result<()> {
        for (field, f) in [("m", &self.m), ("n", &self.n)] {
            let (index, value) = f.argmin();
            if !(value > floor) {
                return Err(Error::PositivityLoss {
                    field,
                    index,
                    value,
                    t: self.t,
                });
            }
        }
        Ok(())
    }

    /// Largest pointwise difference over all fields.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let mut d = self.m.zip_map(&other.m, |a, b| a - b).max_abs();
        d = d.max(self.n.zip_map(&other.n, |a, b| a - b).max_abs());
        for (a, b) in self.u.components().iter().zip(other.u.components()) {
            d = d.max(a.zip_map(b, |x, y| x - y).max_abs());
        }
        d
    }
}
