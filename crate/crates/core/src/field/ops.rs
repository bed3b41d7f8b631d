use rustfft::num_complex::Complex64;

use crate::eos::ViscosityParams;
use crate::error::{Error, Result};

use super::fft::FftNd;
use super::grid::Grid;
use super::storage::{AntisymField, ScalarField, VectorField};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SchemeKind {
    /// Fourier differentiation.
    Spectral,
    /// Second-order central differences.
    Central2,
    /// Fourth-order central differences.
    Central4,
}

impl SchemeKind {
    pub fn name(&self) -> &'static str {
        match self {
            SchemeKind::Spectral => "spectral",
            SchemeKind::Central2 => "central2",
            SchemeKind::Central4 => "central4",
        }
    }

    /// Formal order of accuracy; `None` for spectral.
    pub fn order(&self) -> Option<f64> {
        match self {
            SchemeKind::Spectral => None,
            SchemeKind::Central2 => Some(2.0),
            SchemeKind::Central4 => Some(4.0),
        }
    }
}

impl std::str::FromStr for SchemeKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "spectral" => Ok(SchemeKind::Spectral),
            "central2" => Ok(SchemeKind::Central2),
            "central4" => Ok(SchemeKind::Central4),
            other => Err(format!("unknown scheme '{other}' (expected spectral, central2 or central4)")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DiscretizationScheme {
    pub kind: SchemeKind,
    /// 2/3-rule truncation of nonlinear terms; spectral only.
    pub dealias: bool,
}

impl DiscretizationScheme {
    pub fn spectral() -> Self {
        Self {
            kind: SchemeKind::Spectral,
            dealias: true,
        }
    }

    pub fn central2() -> Self {
        Self {
            kind: SchemeKind::Central2,
            dealias: false,
        }
    }

    pub fn central4() -> Self {
        Self {
            kind: SchemeKind::Central4,
            dealias: false,
        }
    }
}

/// Discrete periodic differential operators on one grid.
#[derive(Debug, Clone)]
pub struct Operators {
    grid: Grid,
    scheme: DiscretizationScheme,
    fft: FftNd,
}

impl Operators {
    pub fn new(grid: Grid, scheme: DiscretizationScheme) -> Result<Self> {
        if scheme.kind == SchemeKind::Central4 && grid.n() < 16 {
            return Err(Error::Parameter(format!(
                "central4 needs at least 16 points per axis (got {})",
                grid.n()
            )));
        }
        if scheme.dealias && scheme.kind != SchemeKind::Spectral {
            return Err(Error::Parameter(
                "dealiasing applies to the spectral scheme only".to_string(),
            ));
        }
        Ok(Self {
            grid,
            scheme,
            fft: FftNd::new(grid),
        })
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn scheme(&self) -> DiscretizationScheme {
        self.scheme
    }

    fn spectral_apply(&self, f: &ScalarField, symbol: impl Fn([f64; 3]) -> Complex64) -> ScalarField {
        let mut spec = self.fft.forward(f.data());
        for (idx, c) in spec.iter_mut().enumerate() {
            *c *= symbol(self.fft.wavevector(idx));
        }
        ScalarField::from_raw(self.grid, self.fft.inverse_real(spec))
    }

    fn stencil_apply(&self, f: &ScalarField, axis: usize, stencil: &[(isize, f64)]) -> ScalarField {
        let n = self.grid.n() as isize;
        let mut data = f.data().to_vec();
        let mut tmp = vec![0.0; self.grid.n()];
        self.grid.for_each_line(&mut data, axis, |line| {
            for (i, t) in tmp.iter_mut().enumerate() {
                let i = i as isize;
                *t = stencil
                    .iter()
                    .map(|&(off, w)| w * line[(i + off).rem_euclid(n) as usize])
                    .sum();
            }
            line.copy_from_slice(&tmp);
        });
        ScalarField::from_raw(self.grid, data)
    }

    /// `df/dx_axis`.
    pub fn derivative(&self, f: &ScalarField, axis: usize) -> ScalarField {
        let h = self.grid.spacing();
        match self.scheme.kind {
            SchemeKind::Spectral => {
                self.spectral_apply(f, |k| Complex64::new(0.0, k[axis]))
            }
            SchemeKind::Central2 => {
                let w = 0.5 / h;
                self.stencil_apply(f, axis, &[(-1, -w), (1, w)])
            }
            SchemeKind::Central4 => {
                let w = 1.0 / (12.0 * h);
                self.stencil_apply(f, axis, &[(-2, w), (-1, -8.0 * w), (1, 8.0 * w), (2, -w)])
            }
        }
    }

    pub fn grad(&self, f: &ScalarField) -> VectorField {
        if self.scheme.kind == SchemeKind::Spectral {
            let spec = self.fft.forward(f.data());
            let comps = (0..self.grid.dim())
                .map(|axis| {
                    let s: Vec<Complex64> = spec
                        .iter()
                        .enumerate()
                        .map(|(idx, c)| c * Complex64::new(0.0, self.fft.wavevector(idx)[axis]))
                        .collect();
                    ScalarField::from_raw(self.grid, self.fft.inverse_real(s))
                })
                .collect();
            return VectorField::from_raw(comps);
        }
        VectorField::from_raw((0..self.grid.dim()).map(|a| self.derivative(f, a)).collect())
    }

    pub fn div(&self, v: &VectorField) -> ScalarField {
        if self.scheme.kind == SchemeKind::Spectral {
            let mut acc = vec![Complex64::default(); self.grid.len()];
            for (axis, comp) in v.components().iter().enumerate() {
                let spec = self.fft.forward(comp.data());
                for (idx, (a, c)) in acc.iter_mut().zip(spec).enumerate() {
                    *a += c * Complex64::new(0.0, self.fft.wavevector(idx)[axis]);
                }
            }
            return ScalarField::from_raw(self.grid, self.fft.inverse_real(acc));
        }
        let mut out = ScalarField::zeros(self.grid);
        for (axis, comp) in v.components().iter().enumerate() {
            out.add_scaled_mut(1.0, &self.derivative(comp, axis));
        }
        out
    }

    pub fn laplacian(&self, f: &ScalarField) -> ScalarField {
        let h2 = self.grid.spacing().powi(2);
        match self.scheme.kind {
            SchemeKind::Spectral => self.spectral_apply(f, |k| {
                Complex64::new(-(k[0] * k[0] + k[1] * k[1] + k[2] * k[2]), 0.0)
            }),
            SchemeKind::Central2 | SchemeKind::Central4 => {
                let stencil: &[(isize, f64)] = if self.scheme.kind == SchemeKind::Central2 {
                    &[(-1, 1.0), (0, -2.0), (1, 1.0)]
                } else {
                    &[(-2, -1.0 / 12.0), (-1, 16.0 / 12.0), (0, -30.0 / 12.0), (1, 16.0 / 12.0), (2, -1.0 / 12.0)]
                };
                let scaled: Vec<(isize, f64)> = stencil.iter().map(|&(o, w)| (o, w / h2)).collect();
                let mut out = ScalarField::zeros(self.grid);
                for axis in 0..self.grid.dim() {
                    out.add_scaled_mut(1.0, &self.stencil_apply(f, axis, &scaled));
                }
                out
            }
        }
    }

    pub fn vector_laplacian(&self, v: &VectorField) -> VectorField {
        v.map_components(|c| self.laplacian(c))
    }

    /// Velocity gradient `g[j][k] = d u^j / d x_k`.
    pub fn grad_tensor(&self, u: &VectorField) -> Vec<Vec<ScalarField>> {
        u.components()
            .iter()
            .map(|c| self.grad(c).into_components())
            .collect()
    }

    /// Vorticity matrix `w^{jk} = d_k u^j - d_j u^k`; empty in 1D.
    pub fn antisym_grad(&self, u: &VectorField) -> AntisymField {
        if self.grid.dim() == 1 {
            return AntisymField::from_upper(self.grid, |_, _| unreachable!());
        }
        let g = self.grad_tensor(u);
        AntisymField::from_upper(self.grid, |j, k| g[j][k].zip_map(&g[k][j], |a, b| a - b))
    }

    /// Lamé operator `mu Lap z + (lambda + mu) grad div z`.
    pub fn lame(&self, z: &VectorField, visc: &ViscosityParams) -> VectorField {
        let grad_div = self.grad(&self.div(z));
        self.vector_laplacian(z)
            .scale(visc.mu())
            .add_scaled(visc.mu() + visc.lambda(), &grad_div)
    }

    /// 2/3-rule truncation when dealiasing is enabled; identity otherwise.
    pub fn dealias(&self, f: &ScalarField) -> ScalarField {
        if !self.scheme.dealias {
            return f.clone();
        }
        let n = self.grid.n() as i64;
        let mut spec = self.fft.forward(f.data());
        for (idx, c) in spec.iter_mut().enumerate() {
            let ijk = self.grid.unflatten(idx);
            let cut = (0..self.grid.dim()).any(|a| 3 * self.grid.mode_index(ijk[a]).abs() > n);
            if cut {
                *c = Complex64::default();
            }
        }
        ScalarField::from_raw(self.grid, self.fft.inverse_real(spec))
    }

    pub fn dealias_vector(&self, v: &VectorField) -> VectorField {
        v.map_components(|c| self.dealias(c))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LameSolution {
    pub z: VectorField,
    /// Per-component mean removed from the right-hand side before solving.
    pub subtracted_means: Vec<f64>,
}

/// Solves `mu Lap z + (lambda + mu) grad div z = rhs` on the torus for the
/// zero-mean `z`, inverting the Fourier symbol mode by mode.
///
/// Longitudinal parts are divided by `-(2 mu + lambda)|k|^2`, transverse
/// parts by `-mu |k|^2`. Modes whose derivative wavevector vanishes (the mean
/// and pure-Nyquist modes) are dropped; their right-hand-side means are
/// reported.
pub fn solve_lame_periodic(rhs: &VectorField, visc: &ViscosityParams) -> Result<LameSolution> {
    let mu = visc.mu();
    let lon = visc.longitudinal();
    if !(mu > 0.0 && lon > 0.0 && mu + visc.lambda() > 0.0) {
        return Err(Error::Parameter(
            "Lamé symbol is singular: need mu > 0 and 2*mu + 3*lambda >= 0".to_string(),
        ));
    }
    let grid = *rhs.grid();
    let dim = grid.dim();
    let fft = FftNd::new(grid);
    let subtracted_means = rhs.means();
    let specs: Vec<Vec<Complex64>> = rhs.components().iter().map(|c| fft.forward(c.data())).collect();

    let mut out = vec![vec![Complex64::default(); grid.len()]; dim];
    for idx in 0..grid.len() {
        let k = fft.wavevector(idx);
        let k2: f64 = k[..dim].iter().map(|v| v * v).sum();
        if k2 == 0.0 {
            continue;
        }
        let r: Vec<Complex64> = (0..dim).map(|j| specs[j][idx]).collect();
        let k_dot_r: Complex64 = (0..dim).map(|j| r[j] * k[j]).sum();
        for j in 0..dim {
            let longitudinal = k_dot_r * (k[j] / k2);
            let transverse = r[j] - longitudinal;
            out[j][idx] = -(transverse / (mu * k2) + longitudinal / (lon * k2));
        }
    }
    let comps = out
        .into_iter()
        .map(|s| ScalarField::from_raw(grid, fft.inverse_real(s)))
        .collect();
    Ok(LameSolution {
        z: VectorField::from_raw(comps),
        subtracted_means,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn ops(dim: usize, n: usize, scheme: DiscretizationScheme) -> Operators {
        Operators::new(Grid::new(dim, n, 2.0).unwrap(), scheme).unwrap()
    }

    fn all_schemes() -> [DiscretizationScheme; 3] {
        [
            DiscretizationScheme::spectral(),
            DiscretizationScheme::central2(),
            DiscretizationScheme::central4(),
        ]
    }

    #[test]
    fn scheme_validation() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        assert!(Operators::new(g, DiscretizationScheme::central4()).is_err());
        let bad = DiscretizationScheme {
            kind: SchemeKind::Central2,
            dealias: true,
        };
        assert!(Operators::new(g, bad).is_err());
    }

    #[test]
    fn constants_are_annihilated() {
        for scheme in all_schemes() {
            let o = ops(3, 16, scheme);
            let c = ScalarField::constant(*o.grid(), 2.5);
            assert!(o.grad(&c).max_abs() < 1e-12);
            assert!(o.laplacian(&c).max_abs() < 1e-12);
            let v = VectorField::from_fn(*o.grid(), |_| [1.0, -2.0, 0.5]);
            assert!(o.div(&v).max_abs() < 1e-12);
        }
    }

    #[test]
    fn spectral_derivative_of_sine() {
        let o = ops(1, 32, DiscretizationScheme::spectral());
        let l = o.grid().length();
        let k = 2.0 * PI / l;
        let f = ScalarField::from_fn(*o.grid(), |x| (k * x[0]).sin());
        let exact = ScalarField::from_fn(*o.grid(), |x| k * (k * x[0]).cos());
        let err = o.grad(&f).component(0).zip_map(&exact, |a, b| a - b).max_abs();
        assert!(err <= 1e-12 * k, "err {err}");
        let lap = o.laplacian(&f);
        let err = lap.zip_map(&f, |a, b| a + k * k * b).max_abs();
        assert!(err <= 1e-12 * k * k);
    }

    #[test]
    fn central2_gradient_order() {
        let errs: Vec<f64> = [32, 64, 128]
            .iter()
            .map(|&n| {
                let o = ops(1, n, DiscretizationScheme::central2());
                let k = 2.0 * PI / o.grid().length();
                let f = ScalarField::from_fn(*o.grid(), |x| (k * x[0]).sin());
                let exact = ScalarField::from_fn(*o.grid(), |x| k * (k * x[0]).cos());
                o.derivative(&f, 0).zip_map(&exact, |a, b| a - b).max_abs()
            })
            .collect();
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 2.0).abs() < 0.1, "order {order}");
        }
    }

    #[test]
    fn central4_laplacian_order() {
        let errs: Vec<f64> = [32, 64, 128]
            .iter()
            .map(|&n| {
                let o = ops(1, n, DiscretizationScheme::central4());
                let k = 2.0 * PI / o.grid().length();
                let f = ScalarField::from_fn(*o.grid(), |x| (k * x[0]).cos());
                o.laplacian(&f).zip_map(&f, |a, b| a + k * k * b).max_abs()
            })
            .collect();
        for w in errs.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((order - 4.0).abs() < 0.2, "order {order}");
        }
    }

    #[test]
    fn spectral_laplacian_is_div_grad() {
        let o = ops(3, 16, DiscretizationScheme::spectral());
        let k = 2.0 * PI / o.grid().length();
        let f = ScalarField::from_fn(*o.grid(), |x| {
            (k * x[0]).sin() * (2.0 * k * x[1]).cos() + (3.0 * k * x[2]).sin()
        });
        let a = o.laplacian(&f);
        let b = o.div(&o.grad(&f));
        let scale = a.max_abs();
        assert!(a.zip_map(&b, |x, y| x - y).max_abs() <= 1e-12 * scale);
    }

    #[test]
    fn vorticity_of_gradient_vanishes() {
        let o = ops(3, 16, DiscretizationScheme::spectral());
        let k = 2.0 * PI / o.grid().length();
        let phi = ScalarField::from_fn(*o.grid(), |x| (k * x[0]).sin() * (k * x[1]).sin() * (k * x[2]).cos());
        let u = o.grad(&phi);
        let w = o.antisym_grad(&u);
        assert_eq!(w.dim(), 3);
        assert!(w.norm_sq().unwrap().max().sqrt() < 1e-12);
    }

    #[test]
    fn vorticity_of_shear_mode() {
        // u = (sin(k y), 0, 0): w^{01} = d_y u^0 = k cos(k y).
        let o = ops(3, 16, DiscretizationScheme::spectral());
        let k = 2.0 * PI / o.grid().length();
        let u = VectorField::from_fn(*o.grid(), |x| [(k * x[1]).sin(), 0.0, 0.0]);
        let w = o.antisym_grad(&u);
        let exact = ScalarField::from_fn(*o.grid(), |x| k * (k * x[1]).cos());
        assert!(w.get(0, 1).zip_map(&exact, |a, b| a - b).max_abs() < 1e-12 * k);
        assert!(w.get(1, 0).zip_map(&exact, |a, b| a + b).max_abs() < 1e-12 * k);
        assert!(w.get(0, 2).max_abs() < 1e-12);
    }

    #[test]
    fn dealias_removes_high_modes_only() {
        let o = ops(1, 24, DiscretizationScheme::spectral());
        let k = 2.0 * PI / o.grid().length();
        let low = ScalarField::from_fn(*o.grid(), |x| (8.0 * k * x[0]).sin());
        let high = ScalarField::from_fn(*o.grid(), |x| (9.0 * k * x[0]).sin());
        assert!(o.dealias(&low).zip_map(&low, |a, b| a - b).max_abs() < 1e-13);
        assert!(o.dealias(&high).max_abs() < 1e-13);
        let plain = ops(1, 24, DiscretizationScheme::central2());
        assert_eq!(plain.dealias(&high), high);
    }

    #[test]
    fn lame_longitudinal_mode() {
        // rhs = e sin(k x) with e parallel to k: z = -e sin(k x) / ((2 mu + lambda) k^2).
        let visc = ViscosityParams::new(0.7, 0.2).unwrap();
        let g = Grid::new(3, 16, 2.0).unwrap();
        let k = 2.0 * PI / g.length();
        let rhs = VectorField::from_fn(g, |x| [(k * x[0]).sin(), 0.0, 0.0]);
        let sol = solve_lame_periodic(&rhs, &visc).unwrap();
        let factor = -1.0 / (visc.longitudinal() * k * k);
        let expected = rhs.scale(factor);
        let err = sol.z.add_scaled(-1.0, &expected).max_abs();
        assert!(err < 1e-13, "err {err}");
    }

    #[test]
    fn lame_zero_rhs() {
        let visc = ViscosityParams::new(1.0, 0.0).unwrap();
        let g = Grid::new(1, 16, 1.0).unwrap();
        let sol = solve_lame_periodic(&VectorField::zeros(g), &visc).unwrap();
        assert_eq!(sol.z.max_abs(), 0.0);
        assert_eq!(sol.subtracted_means, vec![0.0]);
    }

    #[test]
    fn lame_roundtrip_reports_mean() {
        let visc = ViscosityParams::new(0.3, -0.1).unwrap();
        let o = ops(3, 16, DiscretizationScheme::spectral());
        let k = 2.0 * PI / o.grid().length();
        let rhs = VectorField::from_fn(*o.grid(), |x| {
            [
                0.4 + (k * x[1]).sin() * (k * x[2]).cos(),
                (2.0 * k * x[0]).cos() - 0.2,
                (k * x[0] + k * x[1]).sin(),
            ]
        });
        let sol = solve_lame_periodic(&rhs, &visc).unwrap();
        assert!((sol.subtracted_means[0] - 0.4).abs() < 1e-14);
        assert!((sol.subtracted_means[1] + 0.2).abs() < 1e-14);
        let back = o.lame(&sol.z, &visc);
        for j in 0..3 {
            let mean = sol.subtracted_means[j];
            let err = back
                .component(j)
                .zip_map(rhs.component(j), |a, b| a - (b - mean))
                .max_abs();
            assert!(err < 1e-10 * rhs.max_abs(), "component {j}: {err}");
        }
    }
}
