mod common;

use std::f64::consts::PI;

use twophase::diagnostics::*;
use twophase::dynamics::{rhs, step, Method};
use twophase::field::{DiscretizationScheme, FlowState, Grid, ScalarField, VectorField};
use twophase::Error;

use common::{eos, model, slope, smooth_state_3d};

fn smooth_state_1d(grid: Grid) -> FlowState {
    let e = eos();
    let k = 2.0 * PI / grid.length();
    let m = ScalarField::from_fn(grid, |x| e.m_tilde() + 0.05 * (k * x[0]).sin() + 0.02 * (2.0 * k * x[0]).cos());
    let n = ScalarField::from_fn(grid, |x| e.n_tilde() + 0.03 * (k * x[0] + 0.5).cos());
    let u = VectorField::from_fn(grid, |x| [0.1 * (k * x[0]).sin() + 0.05 * (2.0 * k * x[0] + 0.3).cos(), 0.0, 0.0]);
    FlowState::new(m, n, u, 0.0).unwrap()
}

fn at_rest(grid: Grid) -> FlowState {
    let mut s = smooth_state_1d(grid);
    s.u = VectorField::zeros(grid);
    s
}

#[test]
fn equilibrium_has_no_energy_and_no_residuals() {
    let grid = Grid::new(3, 16, 4.0).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let s = FlowState::equilibrium(grid, &eos());
    let e = total_energy(&s, &eos()).unwrap();
    assert_eq!((e.total, e.kinetic, e.potential), (0.0, 0.0, 0.0));
    assert_eq!(effective_viscous_flux(&mdl, &s).unwrap().max_abs(), 0.0);
    let out = rhs(&mdl, &s, None).unwrap();
    assert_eq!(material_derivative_u(&out).max_abs(), 0.0);
    assert_eq!(check_elliptic_f(&mdl, &s).unwrap(), 0.0);
    assert_eq!(check_elliptic_omega(&mdl, &s).unwrap(), 0.0);
    assert_eq!(check_laplacian_decomposition(&mdl, &s).unwrap(), 0.0);
    let (pair, res) = hoff_decomposition(&mdl, &s).unwrap();
    assert_eq!((pair.v.max_abs(), pair.w.max_abs(), res), (0.0, 0.0, 0.0));
    let later = FlowState { t: 0.1, ..s.clone() };
    assert_eq!(check_lambda_transport(&mdl, &s, &later).unwrap(), (0.0, 0.0));
    let r = eos().n_tilde() / eos().m_tilde();
    assert_eq!(ratio_bounds(&s), (r, r));
}

#[test]
fn kinetic_energy_of_a_sine_mode() {
    let (l, a) = (20.0, 0.3);
    let grid = Grid::new(1, 64, l).unwrap();
    let e = eos();
    let u = VectorField::from_fn(grid, |x| [a * (2.0 * PI * x[0] / l).sin(), 0.0, 0.0]);
    let s = FlowState::new(ScalarField::constant(grid, e.m_tilde()), ScalarField::constant(grid, e.n_tilde()), u, 0.0).unwrap();
    let en = total_energy(&s, &e).unwrap();
    assert!((en.kinetic - 0.25 * e.m_tilde() * a * a * l).abs() <= 1e-13);
    assert_eq!(en.potential, 0.0);
}

#[test]
fn potential_energy_matches_cellwise_composition() {
    let cfg = common::config(128, common::BUMP_BODY);
    let s = cfg.ic.build(cfg.grid, &cfg.eos, 0).unwrap();
    let en = total_energy(&s, &cfg.eos).unwrap();
    let h = cfg.grid.spacing();
    let mut pe = 0.0;
    let mut ke = 0.0;
    for i in 0..cfg.grid.len() {
        let (m, n, u) = (s.m.data()[i], s.n.data()[i], s.u.component(0).data()[i]);
        pe += h * cfg.eos.potential_energy_g(m, n).unwrap();
        ke += h * 0.5 * m * u * u;
    }
    assert!((en.potential - pe).abs() <= 1e-10);
    assert!((en.kinetic - ke).abs() <= 1e-10);
    assert!(en.total > 0.0);
}

#[test]
fn flux_at_rest_is_the_pressure_deficit() {
    let grid = Grid::new(1, 64, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::central2(), 0.1, 0.05);
    let s = at_rest(grid);
    let f = effective_viscous_flux(&mdl, &s).unwrap();
    let e = eos();
    for i in 0..grid.len() {
        let p = e.pressure(s.m.data()[i], s.n.data()[i]).unwrap();
        assert!((f.data()[i] - (e.p_far() - p)).abs() <= 1e-15);
    }
}

#[test]
fn material_derivative_at_rest_and_construction_identity() {
    let grid = Grid::new(1, 64, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let s = at_rest(grid);
    let udot = material_derivative_u(&rhs(&mdl, &s, None).unwrap());
    let p = mdl.pressure(&s).unwrap();
    let expected = mdl.ops.grad(&p).component(0).zip_map(&s.m, |g, m| -g / m);
    assert!(udot.component(0).add_scaled(-1.0, &expected).max_abs() <= 1e-14);

    for scheme in [DiscretizationScheme::spectral(), DiscretizationScheme::central2(), DiscretizationScheme::central4()] {
        let grid3 = Grid::new(3, 16, 2.0 * PI).unwrap();
        let mdl3 = model(grid3, scheme, 0.1, 0.05);
        let s3 = smooth_state_3d(grid3);
        let report = identity_report(&mdl3, &s3).unwrap();
        let scale = mdl3.momentum_force(&s3, &mdl3.pressure(&s3).unwrap()).max_abs().max(1.0);
        assert!(report.construction <= 1e-11 * scale, "{:?}: {}", scheme.kind, report.construction);
    }
}

#[test]
fn spectral_identities_on_band_limited_3d_state() {
    let grid = Grid::new(3, 16, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let s = smooth_state_3d(grid);
    assert!(check_elliptic_f(&mdl, &s).unwrap() <= 1e-8);
    assert!(check_elliptic_omega(&mdl, &s).unwrap() <= 1e-8);
    assert!(check_laplacian_decomposition(&mdl, &s).unwrap() <= 1e-10);
    let (_, res) = hoff_decomposition(&mdl, &s).unwrap();
    assert!(res <= 1e-8);
}

#[test]
fn vorticity_identity_for_a_gradient_flow() {
    let grid = Grid::new(3, 16, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let mut s = smooth_state_3d(grid);
    // u = grad(phi), phi = 0.1 sin x cos y + 0.05 cos(z + 0.4)
    s.u = VectorField::from_fn(grid, |x| {
        [
            0.1 * x[0].cos() * x[1].cos(),
            -0.1 * x[0].sin() * x[1].sin(),
            -0.05 * (x[2] + 0.4).sin(),
        ]
    });
    assert!(mdl.ops.antisym_grad(&s.u).norm_sq().unwrap().max_abs() <= 1e-24);
    assert!(check_elliptic_omega(&mdl, &s).unwrap() <= 1e-8);
}

#[test]
fn vorticity_identity_needs_three_dimensions() {
    let grid = Grid::new(1, 32, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    assert!(matches!(check_elliptic_omega(&mdl, &smooth_state_1d(grid)), Err(Error::Dimension(_))));
}

#[test]
fn one_dimensional_decomposition_reduces_to_the_flux_gradient() {
    let grid = Grid::new(1, 64, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let s = smooth_state_1d(grid);
    assert!(check_laplacian_decomposition(&mdl, &s).unwrap() <= 1e-10);
    let f = effective_viscous_flux(&mdl, &s).unwrap();
    let p = mdl.pressure(&s).unwrap();
    let lon = mdl.visc.longitudinal();
    let potential = f.zip_map(&p, |f, p| (f + p - eos().p_far()) / lon);
    let lhs = mdl.ops.laplacian(s.u.component(0));
    let rhs_side = mdl.ops.derivative(&potential, 0);
    assert!(lhs.add_scaled(-1.0, &rhs_side).max_abs() <= 1e-10 * lhs.max_abs().max(1.0));
}

#[test]
fn elliptic_flux_residual_is_second_order_for_central2() {
    let mut hs = Vec::new();
    let mut res = Vec::new();
    for n in [64, 128, 256] {
        let grid = Grid::new(1, n, 2.0 * PI).unwrap();
        let mdl = model(grid, DiscretizationScheme::central2(), 0.1, 0.05);
        hs.push(grid.spacing());
        res.push(check_elliptic_f(&mdl, &smooth_state_1d(grid)).unwrap());
    }
    let order = slope(&hs, &res);
    assert!((order - 2.0).abs() <= 0.3, "order {order}, residuals {res:?}");
}

#[test]
fn hoff_pair_with_constant_pressure() {
    let grid = Grid::new(3, 16, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let mut s = FlowState::equilibrium(grid, &eos());
    s.u = smooth_state_3d(grid).u;
    let (pair, res) = hoff_decomposition(&mdl, &s).unwrap();
    assert_eq!(pair.v.max_abs(), 0.0);
    let means = s.u.means();
    for j in 0..3 {
        let target = s.u.component(j).map(|v| v - means[j]);
        assert!(pair.w.component(j).add_scaled(-1.0, &target).max_abs() <= 1e-8);
    }
    assert!(res <= 1e-8);
}

#[test]
fn lambda_potentials_solve_their_defining_ode() {
    let grid = Grid::new(1, 16, 1.0).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let lon = mdl.visc.longitudinal();
    let e = eos();
    for (target, tilde, potential) in [
        (1.7, e.m_tilde(), lambda1 as fn(f64, &twophase::dynamics::Model) -> f64),
        (0.05, e.m_tilde(), lambda1),
        (2.3, e.n_tilde(), lambda2),
    ] {
        // RK4 on y' = lon / s from the far-field value.
        let steps = 2000;
        let h = (target - tilde) / steps as f64;
        let f = |s: f64| lon / s;
        let mut y = 0.0;
        for i in 0..steps {
            let s = tilde + i as f64 * h;
            y += h / 6.0 * (f(s) + 4.0 * f(s + 0.5 * h) + f(s + h));
        }
        let closed = potential(target, &mdl);
        assert!((closed - y).abs() <= 1e-10 * closed.abs().max(1.0), "{closed} vs {y}");
    }
    assert_eq!(lambda1(e.m_tilde(), &mdl), 0.0);
    assert_eq!(lambda2(e.n_tilde(), &mdl), 0.0);
}

#[test]
fn lambda_transport_needs_forward_time() {
    let grid = Grid::new(1, 16, 1.0).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let s = FlowState::equilibrium(grid, &eos());
    assert!(check_lambda_transport(&mdl, &s, &s).is_err());
}

#[test]
fn lambda_transport_residual_shrinks_with_the_step() {
    let grid = Grid::new(1, 128, 2.0 * PI).unwrap();
    let mdl = model(grid, DiscretizationScheme::spectral(), 0.1, 0.05);
    let s0 = smooth_state_1d(grid);
    let res: Vec<(f64, f64)> = [1e-3, 5e-4]
        .iter()
        .map(|&dt| check_lambda_transport(&mdl, &s0, &step(&mdl, &s0, dt, Method::Rk4, None).unwrap()).unwrap())
        .collect();
    for r in [res[1].0 / res[0].0, res[1].1 / res[0].1] {
        assert!((r - 0.5).abs() < 0.05, "ratio {r}");
    }
}

#[test]
fn ratio_extrema() {
    let grid = Grid::new(1, 32, 1.0).unwrap();
    let m = ScalarField::from_fn(grid, |x| 1.0 + 0.5 * (2.0 * PI * x[0]).sin());
    let n = m.scale(2.0);
    let s = FlowState::new(m, n, VectorField::zeros(grid), 0.0).unwrap();
    assert_eq!(ratio_bounds(&s), (2.0, 2.0));
}

#[test]
fn record_stream_functionals_are_nondecreasing() {
    let cfg = common::config(64, common::BUMP_BODY);
    let mut sink = twophase::dynamics::MemorySink::default();
    twophase::dynamics::run(&cfg, &mut sink).unwrap();
    for w in sink.records.windows(2) {
        assert!(w[1].A1 >= w[0].A1 && w[1].A2 >= w[0].A2);
    }
    let last = sink.records.last().unwrap();
    let small = smallness_report(sink.records[0].E, last.A1, last.A2, &cfg.analysis);
    assert_eq!(small.lhs, last.smallness_lhs);
    assert_eq!(small.rhs, last.smallness_rhs);
    assert!(last.A1 > 0.0);
}
