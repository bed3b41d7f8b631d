use proptest::prelude::*;
use twophase::eos::EosParams;
use twophase::quadrature::QuadratureSettings;

fn unit(m_tilde: f64, n_tilde: f64) -> EosParams {
    EosParams::new(1.0, 1.0, 1.0, 0.0, m_tilde, n_tilde).unwrap()
}

fn default_law() -> EosParams {
    EosParams::new(2.0, 1.0, 1.0, 0.0, 0.6, 0.4).unwrap()
}

fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) + simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    simpson(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `G` on an arbitrary ray, written out from its definition with an
/// unrelated quadrature rule.
fn g_oracle(eos: &EosParams, m: f64, n: f64, tol: f64) -> f64 {
    let r = n / m;
    let p_far = eos.pressure(eos.m_tilde(), eos.n_tilde()).unwrap();
    let integrand = |s: f64| (eos.pressure(s, r * s).unwrap() - p_far) / (s * s);
    let integral = adaptive_simpson(&integrand, eos.m_tilde(), m, tol);
    m * integral + (m / eos.m_tilde()) * (p_far - eos.pressure(eos.m_tilde(), r * eos.m_tilde()).unwrap())
}

#[test]
fn g_matches_independent_quadrature() {
    let eos = unit(1.0, 1.0);
    let g = eos.potential_energy_g(1.2, 1.2).unwrap();
    let oracle = g_oracle(&eos, 1.2, 1.2, 1e-14);
    assert!((g - oracle).abs() <= 1e-10, "G = {g}, oracle = {oracle}");
    assert!(g > 0.0);
}

#[test]
fn g_off_ray_matches_oracle() {
    let eos = default_law();
    for (m, n) in [(0.3, 0.5), (1.5, 0.2), (0.65, 0.41), (2.0, 3.0)] {
        let g = eos.potential_energy_g(m, n).unwrap();
        let oracle = g_oracle(&eos, m, n, 1e-14);
        assert!((g - oracle).abs() <= 1e-10 * oracle.abs().max(1.0), "({m}, {n}): {g} vs {oracle}");
    }
}

#[test]
fn tighter_quadrature_agrees() {
    let eos = default_law();
    let tight = QuadratureSettings {
        abs_tol: 1e-14,
        ..QuadratureSettings::default()
    };
    for (m, n) in [(0.9, 0.6), (0.2, 0.1333), (5.0, 1.0)] {
        let a = eos.potential_energy_g(m, n).unwrap();
        let b = eos.potential_energy_g_with(m, n, &tight).unwrap();
        assert!((a - b).abs() <= 1e-11 * b.abs().max(1.0));
    }
}

#[test]
fn hessian_blows_up_like_n_to_minus_three_halves() {
    let eos = unit(1.0, 1.0);
    let k0 = eos.k0();
    let hs: Vec<f64> = (4..=12).map(|k| eos.pressure_hess_nn(k0, 10f64.powi(-k)).unwrap().abs()).collect();
    for w in hs.windows(2) {
        let ratio = (w[1] / w[0]).log10();
        assert!((ratio - 1.5).abs() < 0.05, "decade growth {ratio}");
    }
}

fn masses() -> impl Strategy<Value = (f64, f64)> {
    (-3.0f64..3.0, -3.0f64..3.0).prop_map(|(a, b)| (10f64.powf(a), 10f64.powf(b)))
}

proptest! {
    #[test]
    fn pressure_signs((m, n) in masses()) {
        let eos = default_law();
        let p = eos.pressure(m, n).unwrap();
        let (pm, pn) = eos.pressure_grad(m, n).unwrap();
        let pnn = eos.pressure_hess_nn(m, n).unwrap();
        prop_assert!(p >= 0.0);
        prop_assert!(pm > 0.0 && pn > 0.0);
        prop_assert!(pnn < 0.0);
    }

    #[test]
    fn gradient_matches_central_differences(m in 0.1f64..3.0, n in 0.1f64..3.0) {
        let eos = default_law();
        let (pm, pn) = eos.pressure_grad(m, n).unwrap();
        let hm = 1e-6 * m.max(1.0);
        let hn = 1e-6 * n.max(1.0);
        let fm = (eos.pressure(m + hm, n).unwrap() - eos.pressure(m - hm, n).unwrap()) / (2.0 * hm);
        let fnn = (eos.pressure(m, n + hn).unwrap() - eos.pressure(m, n - hn).unwrap()) / (2.0 * hn);
        prop_assert!(((pm - fm) / pm).abs() <= 1e-6);
        prop_assert!(((pn - fnn) / pn).abs() <= 1e-6);
    }

    #[test]
    fn g_nonnegative_on_far_field_ray(m in 0.05f64..5.0) {
        let eos = default_law();
        let n = m * eos.n_tilde() / eos.m_tilde();
        prop_assert!(eos.potential_energy_g(m, n).unwrap() >= 0.0);
    }

    #[test]
    fn pressure_increases_along_each_axis((m, n) in masses(), f in 1.001f64..2.0) {
        let eos = default_law();
        let p = eos.pressure(m, n).unwrap();
        prop_assert!(eos.pressure(m * f, n).unwrap() >= p);
        prop_assert!(eos.pressure(m, n * f).unwrap() >= p);
    }
}
