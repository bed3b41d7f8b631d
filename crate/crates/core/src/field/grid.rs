use crate::error::{Error, Result};

/// Cubic periodic box with `n` points per axis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    dim: usize,
    n: usize,
    length: f64,
}

impl Grid {
    pub fn new(dim: usize, n: usize, length: f64) -> Result<Self> {
        if dim != 1 && dim != 3 {
            return Err(Error::Parameter(format!("grid.dim must be 1 or 3 (got {dim})")));
        }
        if n < 8 {
            return Err(Error::Parameter(format!("grid.n >= 8 violated (got {n})")));
        }
        if !(length > 0.0) || !length.is_finite() {
            return Err(Error::Parameter(format!("grid.length > 0 violated (got {length})")));
        }
        Ok(Self { dim, n, length })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    pub fn spacing(&self) -> f64 {
        self.length / self.n as f64
    }

    pub fn len(&self) -> usize {
        self.n.pow(self.dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn volume(&self) -> f64 {
        self.length.powi(self.dim as i32)
    }

    /// Cell volume `h^dim`.
    pub fn cell_volume(&self) -> f64 {
        self.spacing().powi(self.dim as i32)
    }

    /// Distance between consecutive entries along `axis` (last axis fastest).
    pub fn stride(&self, axis: usize) -> usize {
        self.n.pow((self.dim - 1 - axis) as u32)
    }

    /// Multi-index of flat index `idx`; unused trailing axes are zero.
    pub fn unflatten(&self, idx: usize) -> [usize; 3] {
        let mut out = [0; 3];
        let mut rem = idx;
        for axis in (0..self.dim).rev() {
            out[axis] = rem % self.n;
            rem /= self.n;
        }
        out
    }

    pub fn flatten(&self, ijk: [usize; 3]) -> usize {
        (0..self.dim).fold(0, |acc, a| acc * self.n + ijk[a])
    }

    /// Physical coordinates of grid point `idx`; unused axes are zero.
    pub fn coords(&self, idx: usize) -> [f64; 3] {
        let h = self.spacing();
        let ijk = self.unflatten(idx);
        [ijk[0] as f64 * h, ijk[1] as f64 * h, ijk[2] as f64 * h]
    }

    /// Signed integer wavenumber of FFT bin `i` (Nyquist reported as `-n/2`).
    pub fn mode_index(&self, i: usize) -> i64 {
        if i <= self.n / 2 && !(i == self.n / 2 && self.n % 2 == 0) {
            i as i64
        } else {
            i as i64 - self.n as i64
        }
    }

    /// Visits every line of points along `axis`, handing the callback a
    /// gathered copy that is scattered back afterwards.
    pub(crate) fn for_each_line<T: Copy + Default>(
        &self,
        data: &mut [T],
        axis: usize,
        mut f: impl FnMut(&mut [T]),
    ) {
        debug_assert_eq!(data.len(), self.len());
        let n = self.n;
        let stride = self.stride(axis);
        if stride == 1 {
            for line in data.chunks_exact_mut(n) {
                f(line);
            }
            return;
        }
        let mut buf = vec![T::default(); n];
        let block = stride * n;
        for outer in (0..data.len()).step_by(block) {
            for inner in 0..stride {
                let base = outer + inner;
                for (i, b) in buf.iter_mut().enumerate() {
                    *b = data[base + i * stride];
                }
                f(&mut buf);
                for (i, b) in buf.iter().enumerate() {
                    data[base + i * stride] = *b;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        assert!(Grid::new(2, 16, 1.0).is_err());
        assert!(Grid::new(1, 4, 1.0).is_err());
        assert!(Grid::new(3, 8, 0.0).is_err());
        let g = Grid::new(3, 8, 2.0).unwrap();
        assert_eq!(g.len(), 512);
        assert_eq!(g.spacing(), 0.25);
        assert_eq!(g.volume(), 8.0);
    }

    #[test]
    fn flatten_roundtrip_and_layout() {
        let g = Grid::new(3, 8, 1.0).unwrap();
        for idx in [0, 1, 7, 8, 63, 64, 511] {
            assert_eq!(g.flatten(g.unflatten(idx)), idx);
        }
        // Last axis fastest.
        assert_eq!(g.unflatten(1), [0, 0, 1]);
        assert_eq!(g.unflatten(8), [0, 1, 0]);
        assert_eq!(g.unflatten(64), [1, 0, 0]);
    }

    #[test]
    fn mode_indices() {
        let g = Grid::new(1, 8, 1.0).unwrap();
        let modes: Vec<i64> = (0..8).map(|i| g.mode_index(i)).collect();
        assert_eq!(modes, vec![0, 1, 2, 3, -4, -3, -2, -1]);
    }

    #[test]
    fn lines_cover_each_point_once() {
        let g = Grid::new(3, 8, 1.0).unwrap();
        for axis in 0..3 {
            let mut data: Vec<f64> = (0..g.len()).map(|i| i as f64).collect();
            let mut seen = 0;
            g.for_each_line(&mut data, axis, |line| {
                let s = g.stride(axis) as f64;
                for w in line.windows(2) {
                    assert_eq!(w[1] - w[0], s);
                }
                for v in line.iter_mut() {
                    *v += 0.5;
                }
                seen += line.len();
            });
            assert_eq!(seen, g.len());
            assert!(data.iter().enumerate().all(|(i, v)| *v == i as f64 + 0.5));
        }
    }
}
