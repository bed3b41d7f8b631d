//! Globally adaptive Gauss–Kronrod (7/15) quadrature on a finite interval.

use crate::error::{Error, Result};

// Kronrod abscissae on [0, 1]; odd indices are the 7-point Gauss nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureSettings {
    pub abs_tol: f64,
    pub max_subdivisions: usize,
}

impl Default for QuadratureSettings {
    fn default() -> Self {
        Self {
            abs_tol: 1e-12,
            max_subdivisions: 10_000,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// One 15-point Kronrod panel with the embedded Gauss estimate as error.
fn kronrod_panel<F>(f: &F, a: f64, b: f64) -> Result<Segment>
where
    F: Fn(f64) -> Result<f64>,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center)?;
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx)? + f(center + dx)?;
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    let value = kronrod * half;
    let error = ((kronrod - gauss) * half).abs();
    Ok(Segment { a, b, value, error })
}

/// Integrates `f` over `[a, b]` (either orientation) to the absolute tolerance.
///
/// Bisects the panel with the largest error estimate until the summed
/// estimate drops below `abs_tol` or the subdivision budget runs out.
pub fn integrate<F>(f: F, a: f64, b: f64, settings: &QuadratureSettings) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if a == b {
        return Ok(0.0);
    }
    let (lo, hi, sign) = if a < b { (a, b, 1.0) } else { (b, a, -1.0) };

    let mut segments = vec![kronrod_panel(&f, lo, hi)?];
    let mut subdivisions = 0;
    loop {
        let total_err: f64 = segments.iter().map(|s| s.error).sum();
        if total_err <= settings.abs_tol {
            break;
        }
        if subdivisions >= settings.max_subdivisions {
            return Err(Error::Quadrature {
                estimate: total_err,
                subdivisions,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |acc, (i, s)| {
                if s.error > acc.1 {
                    (i, s.error)
                } else {
                    acc
                }
            });
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        if mid <= seg.a || mid >= seg.b {
            // Interval can no longer be split in floating point.
            return Err(Error::Quadrature {
                estimate: total_err,
                subdivisions,
            });
        }
        segments.push(kronrod_panel(&f, seg.a, mid)?);
        segments.push(kronrod_panel(&f, mid, seg.b)?);
        subdivisions += 1;
    }

    segments.sort_by(|x, y| x.a.total_cmp(&y.a));
    Ok(sign * segments.iter().map(|s| s.value).sum::<f64>())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_interval_length() {
        let k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        let g: f64 = 2.0 * WG[..3].iter().sum::<f64>() + WG[3];
        assert!((k - 2.0).abs() < 1e-15);
        assert!((g - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_high_degree_polynomials() {
        let s = QuadratureSettings::default();
        for deg in 0..=21 {
            let v = integrate(|x| Ok(x.powi(deg)), 0.0, 1.0, &s).unwrap();
            let exact = 1.0 / (deg as f64 + 1.0);
            assert!((v - exact).abs() < 1e-14, "degree {deg}: {v} vs {exact}");
        }
    }

    #[test]
    fn reversed_limits_flip_sign() {
        let s = QuadratureSettings::default();
        let fwd = integrate(|x| Ok(x.exp()), 0.0, 2.0, &s).unwrap();
        let rev = integrate(|x| Ok(x.exp()), 2.0, 0.0, &s).unwrap();
        assert_eq!(fwd, -rev);
        assert!((fwd - (2f64.exp() - 1.0)).abs() < 1e-13);
    }

    #[test]
    fn adapts_to_kinks() {
        let s = QuadratureSettings::default();
        let v = integrate(|x| Ok((x - 0.3).abs()), 0.0, 1.0, &s).unwrap();
        let exact = 0.5 * 0.3f64.powi(2) + 0.5 * 0.7f64.powi(2);
        assert!((v - exact).abs() < 1e-12);
    }

    #[test]
    fn budget_exhaustion_reports_estimate() {
        let s = QuadratureSettings {
            abs_tol: 1e-300,
            max_subdivisions: 3,
        };
        match integrate(|x| Ok(x.sqrt()), 0.0, 1.0, &s) {
            Err(Error::Quadrature { estimate, .. }) => assert!(estimate > 0.0),
            other => panic!("expected quadrature error, got {other:?}"),
        }
    }
}
