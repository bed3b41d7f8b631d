//! Manufactured solutions built from finite trigonometric sums.
//!
//! Each analytic field is `base + sum_i a_i sin(theta_i)` with
//! `theta_i = (2 pi / L) k_i . x - omega_i t + phi_i`, so every derivative
//! needed by the sources has a closed form.

use std::f64::consts::PI;

use crate::dynamics::{Forcing, Sources};
use crate::eos::{EosParams, ViscosityParams};
use crate::error::{Error, Result};
use crate::field::{FlowState, Grid, ScalarField, VectorField};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrigTerm {
    pub amp: f64,
    /// Integer mode numbers; entries beyond the dimension must be zero.
    pub k: [i32; 3],
    pub omega: f64,
    pub phase: f64,
}

impl TrigTerm {
    pub fn new(amp: f64, k: [i32; 3], omega: f64, phase: f64) -> Self {
        Self {
            amp,
            k,
            omega,
            phase,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrigSum {
    pub base: f64,
    pub terms: Vec<TrigTerm>,
}

/// Value and derivatives of a [`TrigSum`] at one point.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Jet {
    pub value: f64,
    pub dt: f64,
    pub grad: [f64; 3],
    pub hess: [[f64; 3]; 3],
}

impl Jet {
    pub fn laplacian(&self) -> f64 {
        self.hess[0][0] + self.hess[1][1] + self.hess[2][2]
    }
}

impl TrigSum {
    pub fn constant(base: f64) -> Self {
        Self {
            base,
            terms: Vec::new(),
        }
    }

    pub fn new(base: f64, terms: Vec<TrigTerm>) -> Self {
        Self { base, terms }
    }

    /// Sum of term amplitudes, a bound on `|f - base|`.
    pub fn amplitude(&self) -> f64 {
        self.terms.iter().map(|t| t.amp.abs()).sum()
    }

    pub fn jet(&self, length: f64, x: [f64; 3], t: f64) -> Jet {
        let scale = 2.0 * PI / length;
        let mut j = Jet {
            value: self.base,
            ..Jet::default()
        };
        for term in &self.terms {
            let kappa = term.k.map(|k| scale * k as f64);
            let theta = kappa[0] * x[0] + kappa[1] * x[1] + kappa[2] * x[2] - term.omega * t + term.phase;
            let (s, c) = theta.sin_cos();
            j.value += term.amp * s;
            j.dt -= term.amp * term.omega * c;
            for a in 0..3 {
                j.grad[a] += term.amp * kappa[a] * c;
                for b in 0..3 {
                    j.hess[a][b] -= term.amp * kappa[a] * kappa[b] * s;
                }
            }
        }
        j
    }

    pub fn value(&self, length: f64, x: [f64; 3], t: f64) -> f64 {
        self.jet(length, x, t).value
    }
}

/// Analytic `(m, n, u)` on a periodic box.
#[derive(Debug, Clone, PartialEq)]
pub struct MmsCase {
    dim: usize,
    length: f64,
    m: TrigSum,
    n: TrigSum,
    u: Vec<TrigSum>,
}

/// `0.5 min(m~, n~, |m~ - k0|)`: perturbation amplitudes of `m` and `n` must
/// stay below this.
pub fn amplitude_guard(eos: &EosParams) -> f64 {
    0.5 * eos
        .m_tilde()
        .min(eos.n_tilde())
        .min((eos.m_tilde() - eos.k0()).abs())
}

impl MmsCase {
    /// `m` and `n` oscillate about the far-field state; `u` carries its own bases.
    pub fn new(
        eos: &EosParams,
        dim: usize,
        length: f64,
        m_terms: Vec<TrigTerm>,
        n_terms: Vec<TrigTerm>,
        u: Vec<TrigSum>,
    ) -> Result<Self> {
        let case = Self {
            dim,
            length,
            m: TrigSum::new(eos.m_tilde(), m_terms),
            n: TrigSum::new(eos.n_tilde(), n_terms),
            u,
        };
        case.validate(eos)?;
        Ok(case)
    }

    fn validate(&self, eos: &EosParams) -> Result<()> {
        let mut problems = Vec::new();
        if self.dim != 1 && self.dim != 3 {
            problems.push(format!("mms dim must be 1 or 3 (got {})", self.dim));
        }
        if !(self.length > 0.0) {
            problems.push(format!("mms length > 0 violated (got {})", self.length));
        }
        if self.u.len() != self.dim {
            problems.push(format!(
                "mms velocity has {} components for dim {}",
                self.u.len(),
                self.dim
            ));
        }
        let all = [&self.m, &self.n].into_iter().chain(&self.u);
        for sum in all {
            for term in &sum.terms {
                if term.k[self.dim.min(3)..].iter().any(|&k| k != 0) {
                    problems.push(format!("mms mode {:?} uses axes beyond dim {}", term.k, self.dim));
                }
                if ![term.amp, term.omega, term.phase].iter().all(|v| v.is_finite()) {
                    problems.push("mms term coefficients must be finite".to_string());
                }
            }
        }
        let guard = amplitude_guard(eos);
        for (name, sum) in [("m", &self.m), ("n", &self.n)] {
            let amp = sum.amplitude();
            if amp > 0.0 && !(amp < guard) {
                problems.push(format!(
                    "mms amplitude guard violated for {name}: {amp} >= 0.5 min(m~, n~, |m~ - k0|) = {guard}"
                ));
            }
        }
        if problems.is_empty() {
            Ok(())
        } else {
            Err(Error::Config(problems))
        }
    }

    /// A generic two-mode case at `frac` of the amplitude guard.
    pub fn standard(eos: &EosParams, dim: usize, length: f64, frac: f64) -> Result<Self> {
        let g = frac * amplitude_guard(eos);
        let (k1, k2, k3) = if dim == 3 {
            ([1, 0, 0], [1, 1, 0], [0, 1, 1])
        } else {
            ([1, 0, 0], [2, 0, 0], [1, 0, 0])
        };
        let m = vec![
            TrigTerm::new(0.6 * g, k1, 1.0, 0.3),
            TrigTerm::new(0.3 * g, k2, -0.7, 1.1),
        ];
        let n = vec![
            TrigTerm::new(0.5 * g, k1, 0.8, 2.0),
            TrigTerm::new(0.4 * g, k3, 1.3, -0.4),
        ];
        let u = (0..dim)
            .map(|j| {
                let kk = [k1, k2, k3][j % 3];
                TrigSum::new(
                    0.05 * (j as f64 + 1.0),
                    vec![
                        TrigTerm::new(0.1, kk, 1.2, 0.5 + j as f64),
                        TrigTerm::new(0.05, k2, -0.9, 0.2),
                    ],
                )
            })
            .collect();
        Self::new(eos, dim, length, m, n, u)
    }

    /// All perturbations zero: the far-field state at rest.
    pub fn zero(eos: &EosParams, dim: usize, length: f64) -> Result<Self> {
        Self::new(
            eos,
            dim,
            length,
            Vec::new(),
            Vec::new(),
            vec![TrigSum::constant(0.0); dim],
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn m(&self) -> &TrigSum {
        &self.m
    }

    pub fn n(&self) -> &TrigSum {
        &self.n
    }

    pub fn u(&self) -> &[TrigSum] {
        &self.u
    }

    pub fn grid(&self, n: usize) -> Result<Grid> {
        Grid::new(self.dim, n, self.length)
    }

    fn check_grid(&self, grid: &Grid) -> Result<()> {
        if grid.dim() != self.dim || grid.length() != self.length {
            return Err(Error::Dimension(format!(
                "grid (dim {}, L {}) does not match mms case (dim {}, L {})",
                grid.dim(),
                grid.length(),
                self.dim,
                self.length
            )));
        }
        Ok(())
    }

    pub fn exact_state(&self, grid: Grid, t: f64) -> Result<FlowState> {
        self.check_grid(&grid)?;
        let l = self.length;
        let m = ScalarField::from_fn(grid, |x| self.m.value(l, x, t));
        let n = ScalarField::from_fn(grid, |x| self.n.value(l, x, t));
        let u = VectorField::new(
            self.u
                .iter()
                .map(|c| ScalarField::from_fn(grid, |x| c.value(l, x, t)))
                .collect(),
        )?;
        FlowState::new(m, n, u, t)
    }

    /// Exact `(m_t, n_t, u_t)` sampled on `grid`.
    pub fn exact_time_derivative(&self, grid: Grid, t: f64) -> Result<(ScalarField, ScalarField, VectorField)> {
        self.check_grid(&grid)?;
        let l = self.length;
        let m = ScalarField::from_fn(grid, |x| self.m.jet(l, x, t).dt);
        let n = ScalarField::from_fn(grid, |x| self.n.jet(l, x, t).dt);
        let u = VectorField::new(
            self.u
                .iter()
                .map(|c| ScalarField::from_fn(grid, |x| c.jet(l, x, t).dt))
                .collect(),
        )?;
        Ok((m, n, u))
    }
}

/// Forcing that makes an [`MmsCase`] an exact solution of the forced system.
#[derive(Debug, Clone)]
pub struct MmsSources {
    case: MmsCase,
    eos: EosParams,
    visc: ViscosityParams,
}

/// Checks the case against `eos` and packages its sources.
pub fn mms_sources(case: &MmsCase, eos: &EosParams, visc: &ViscosityParams) -> Result<MmsSources> {
    case.validate(eos)?;
    Ok(MmsSources {
        case: case.clone(),
        eos: *eos,
        visc: *visc,
    })
}

impl MmsSources {
    pub fn case(&self) -> &MmsCase {
        &self.case
    }

    /// `[S_m, S_n, S_u^1, S_u^2, S_u^3]` at one point; unused velocity
    /// slots are zero.
    ///
    /// ```text
    /// S_m = m_t + u . grad m + m div u          (same for n)
    /// S_u = u_t + (u . grad) u - [mu Lap u + (mu + lambda) grad div u - P_m grad m - P_n grad n] / m
    /// ```
    pub fn at(&self, x: [f64; 3], t: f64) -> Result<[f64; 5]> {
        let c = &self.case;
        let l = c.length;
        let d = c.dim;
        let m = c.m.jet(l, x, t);
        let n = c.n.jet(l, x, t);
        let u: Vec<Jet> = c.u.iter().map(|s| s.jet(l, x, t)).collect();

        let div_u: f64 = (0..d).map(|j| u[j].grad[j]).sum();
        let transport = |f: &Jet| f.dt + (0..d).map(|j| u[j].value * f.grad[j]).sum::<f64>() + f.value * div_u;
        let (pm, pn) = self.eos.pressure_grad(m.value, n.value)?;
        let (mu, lambda) = (self.visc.mu(), self.visc.lambda());

        let mut out = [0.0; 5];
        out[0] = transport(&m);
        out[1] = transport(&n);
        for j in 0..d {
            let advect: f64 = (0..d).map(|i| u[i].value * u[j].grad[i]).sum();
            let grad_div: f64 = (0..d).map(|i| u[i].hess[j][i]).sum();
            let force = mu * u[j].laplacian() + (mu + lambda) * grad_div - pm * m.grad[j] - pn * n.grad[j];
            out[2 + j] = u[j].dt + advect - force / m.value;
        }
        Ok(out)
    }
}

impl Forcing for MmsSources {
    fn sources(&self, grid: &Grid, t: f64) -> Result<Sources> {
        self.case.check_grid(grid)?;
        let d = grid.dim();
        let mut cols: Vec<Vec<f64>> = vec![Vec::with_capacity(grid.len()); 2 + d];
        for idx in 0..grid.len() {
            let s = self.at(grid.coords(idx), t)?;
            for (col, v) in cols.iter_mut().zip(s) {
                col.push(v);
            }
        }
        let mut cols = cols.into_iter().map(|c| ScalarField::new(*grid, c));
        let m = cols.next().unwrap()?;
        let n = cols.next().unwrap()?;
        let u = VectorField::new(cols.collect::<Result<Vec<_>>>()?)?;
        Ok(Sources { m, n, u })
    }
}
