//! Built-in initial-condition recipes, all perturbations of the far-field state.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::eos::EosParams;
use crate::error::Result;
use crate::field::{FlowState, Grid, ScalarField, VectorField};

/// Gaussian `amp * exp(-d^2 / (2 width^2))` around the point `(center, ..., center)`,
/// with `d` the minimum-image distance on the torus.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bump {
    pub amp: f64,
    pub width: f64,
    pub center: f64,
}

impl Bump {
    pub fn eval(&self, grid: &Grid, x: [f64; 3]) -> f64 {
        if self.amp == 0.0 {
            return 0.0;
        }
        let l = grid.length();
        let d2: f64 = (0..grid.dim())
            .map(|a| {
                let d = (x[a] - self.center).rem_euclid(l);
                let d = if d >= 0.5 * l { d - l } else { d };
                d * d
            })
            .sum();
        self.amp * (-d2 / (2.0 * self.width * self.width)).exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InitialCondition {
    Equilibrium,
    /// Independent bumps on `m`, `n` and the first velocity component.
    Gaussian { m: Bump, n: Bump, u: Bump },
    /// `sin(2 pi mode x / L)` perturbations along the first axis.
    Fourier { mode: u32, m_amp: f64, n_amp: f64, u_amp: f64 },
    /// Bump on `m` with `n = s0 m` pointwise; `s0` defaults to `n~/m~`.
    RatioBump { m: Bump, u: Bump, s0: Option<f64> },
    /// Random low-mode Fourier perturbation of all fields, seeded.
    Random { amp: f64, max_mode: u32 },
}

impl InitialCondition {
    pub fn name(&self) -> &'static str {
        match self {
            InitialCondition::Equilibrium => "equilibrium",
            InitialCondition::Gaussian { .. } => "gaussian",
            InitialCondition::Fourier { .. } => "fourier",
            InitialCondition::RatioBump { .. } => "ratio_bump",
            InitialCondition::Random { .. } => "random",
        }
    }

    pub fn build(&self, grid: Grid, eos: &EosParams, seed: u64) -> Result<FlowState> {
        let (mt, nt) = (eos.m_tilde(), eos.n_tilde());
        let first_axis = |f: &dyn Fn([f64; 3]) -> f64| {
            VectorField::from_fn(grid, |x| [f(x), 0.0, 0.0])
        };
        let (m, n, u) = match self {
            InitialCondition::Equilibrium => {
                return Ok(FlowState::equilibrium(grid, eos));
            }
            InitialCondition::Gaussian { m, n, u } => (
                ScalarField::from_fn(grid, |x| mt + m.eval(&grid, x)),
                ScalarField::from_fn(grid, |x| nt + n.eval(&grid, x)),
                first_axis(&|x| u.eval(&grid, x)),
            ),
            InitialCondition::Fourier {
                mode,
                m_amp,
                n_amp,
                u_amp,
            } => {
                let k = 2.0 * PI * *mode as f64 / grid.length();
                (
                    ScalarField::from_fn(grid, |x| mt + m_amp * (k * x[0]).sin()),
                    ScalarField::from_fn(grid, |x| nt + n_amp * (k * x[0]).sin()),
                    first_axis(&|x| u_amp * (k * x[0]).sin()),
                )
            }
            InitialCondition::RatioBump { m, u, s0 } => {
                let s0 = s0.unwrap_or(nt / mt);
                let mf = ScalarField::from_fn(grid, |x| mt + m.eval(&grid, x));
                let nf = mf.scale(s0);
                (mf, nf, first_axis(&|x| u.eval(&grid, x)))
            }
            InitialCondition::Random { amp, max_mode } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut random_field = |base: f64, scale: f64| {
                    let modes = random_modes(&mut rng, grid.dim(), *max_mode);
                    ScalarField::from_fn(grid, |x| {
                        base + scale * amp * modes.iter().map(|w| w.eval(&grid, x)).sum::<f64>()
                    })
                };
                let mf = random_field(mt, mt);
                let nf = random_field(nt, nt);
                let comps = (0..grid.dim()).map(|_| random_field(0.0, 1.0)).collect();
                (mf, nf, VectorField::new(comps)?)
            }
        };
        FlowState::new(m, n, u, 0.0)
    }
}

struct Wave {
    coef: f64,
    k: [f64; 3],
    phase: f64,
}

impl Wave {
    fn eval(&self, grid: &Grid, x: [f64; 3]) -> f64 {
        let arg: f64 = (0..grid.dim()).map(|a| self.k[a] * x[a]).sum();
        let kscale = 2.0 * PI / grid.length();
        self.coef * (kscale * arg + self.phase).sin()
    }
}

/// Normalized so the sum of coefficient magnitudes is at most one.
fn random_modes(rng: &mut ChaCha8Rng, dim: usize, max_mode: u32) -> Vec<Wave> {
    let max_mode = max_mode.max(1) as i64;
    let count = 2 * max_mode as usize;
    let mut waves: Vec<Wave> = (0..count)
        .map(|_| {
            let mut k = [0.0; 3];
            for kk in k.iter_mut().take(dim) {
                *kk = rng.random_range(-max_mode..=max_mode) as f64;
            }
            if k.iter().all(|v| *v == 0.0) {
                k[0] = 1.0;
            }
            Wave {
                coef: rng.random_range(-1.0..1.0),
                k,
                phase: rng.random_range(0.0..2.0 * PI),
            }
        })
        .collect();
    let total: f64 = waves.iter().map(|w| w.coef.abs()).sum();
    if total > 0.0 {
        for w in &mut waves {
            w.coef /= total;
        }
    }
    waves
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eos() -> EosParams {
        EosParams::new(2.0, 1.0, 1.0, 0.0, 0.6, 0.4).unwrap()
    }

    #[test]
    fn ratio_bump_has_constant_ratio() {
        let g = Grid::new(1, 64, 10.0).unwrap();
        let ic = InitialCondition::RatioBump {
            m: Bump {
                amp: 0.1,
                width: 1.0,
                center: 5.0,
            },
            u: Bump {
                amp: 0.0,
                width: 1.0,
                center: 5.0,
            },
            s0: None,
        };
        let s = ic.build(g, &eos(), 0).unwrap();
        for (m, n) in s.m.data().iter().zip(s.n.data()) {
            assert!((n / m - 0.4 / 0.6).abs() < 1e-15);
        }
        assert!((s.m.max() - 0.7).abs() < 1e-12);
    }

    #[test]
    fn bump_wraps_periodically() {
        let g = Grid::new(1, 64, 10.0).unwrap();
        let b = Bump {
            amp: 1.0,
            width: 0.5,
            center: 0.0,
        };
        assert!((b.eval(&g, [9.9, 0.0, 0.0]) - b.eval(&g, [0.1, 0.0, 0.0])).abs() < 1e-15);
    }

    #[test]
    fn random_is_seeded() {
        let g = Grid::new(3, 8, 1.0).unwrap();
        let ic = InitialCondition::Random {
            amp: 0.05,
            max_mode: 2,
        };
        let a = ic.build(g, &eos(), 7).unwrap();
        let b = ic.build(g, &eos(), 7).unwrap();
        let c = ic.build(g, &eos(), 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.m.min() >= 0.6 * 0.95 - 1e-15);
        assert!(a.u.max_abs() <= 0.05 + 1e-15);
    }
}
