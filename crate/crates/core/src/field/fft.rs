use std::f64::consts::PI;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use super::grid::Grid;

/// Separable complex FFT over all axes of a periodic grid.
#[derive(Clone)]
pub(crate) struct FftNd {
    grid: Grid,
    forward: Arc<dyn Fft<f64>>,
    inverse: Arc<dyn Fft<f64>>,
}

impl std::fmt::Debug for FftNd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FftNd").field("grid", &self.grid).finish()
    }
}

impl FftNd {
    pub fn new(grid: Grid) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            grid,
            forward: planner.plan_fft_forward(grid.n()),
            inverse: planner.plan_fft_inverse(grid.n()),
        }
    }

    fn transform(&self, data: &mut [Complex64], plan: &Arc<dyn Fft<f64>>) {
        let mut scratch = vec![Complex64::default(); plan.get_inplace_scratch_len()];
        for axis in 0..self.grid.dim() {
            self.grid
                .for_each_line(data, axis, |line| plan.process_with_scratch(line, &mut scratch));
        }
    }

    pub fn forward(&self, real: &[f64]) -> Vec<Complex64> {
        let mut data: Vec<Complex64> = real.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.transform(&mut data, &self.forward);
        data
    }

    /// Inverse transform keeping the real part, normalized.
    pub fn inverse_real(&self, mut spec: Vec<Complex64>) -> Vec<f64> {
        self.transform(&mut spec, &self.inverse);
        let norm = 1.0 / self.grid.len() as f64;
        spec.into_iter().map(|c| c.re * norm).collect()
    }

    /// Physical wavenumber per axis used by derivatives; the Nyquist bin maps
    /// to zero so that odd derivatives of real fields stay real and every
    /// spectral operator is the exact composition of first derivatives.
    pub fn wavenumber(&self, bin: usize) -> f64 {
        let n = self.grid.n();
        if n % 2 == 0 && bin == n / 2 {
            return 0.0;
        }
        2.0 * PI / self.grid.length() * self.grid.mode_index(bin) as f64
    }

    /// Wavevector of flat spectral index `idx` (unused axes zero).
    pub fn wavevector(&self, idx: usize) -> [f64; 3] {
        let ijk = self.grid.unflatten(idx);
        let mut k = [0.0; 3];
        for a in 0..self.grid.dim() {
            k[a] = self.wavenumber(ijk[a]);
        }
        k
    }
}
