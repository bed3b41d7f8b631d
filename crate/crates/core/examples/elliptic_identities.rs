//! Identity residuals of a smooth 3D state: at rounding level with spectral
//! operators, second order with the central stencil.

use std::f64::consts::PI;

use twophase::diagnostics::identity_report;
use twophase::dynamics::Model;
use twophase::eos::{EosParams, ViscosityParams};
use twophase::field::{DiscretizationScheme, FlowState, Grid, Operators, ScalarField, VectorField};
use twophase::verification::fit_order;

fn state(grid: Grid, eos: &EosParams) -> twophase::Result<FlowState> {
    let m = ScalarField::from_fn(grid, |x| eos.m_tilde() + 0.05 * x[0].sin() * x[1].cos() + 0.02 * (2.0 * x[2] + 0.3).cos());
    let n = ScalarField::from_fn(grid, |x| eos.n_tilde() + 0.03 * (x[1] + 0.5).sin() + 0.02 * (x[0] + x[2]).cos());
    let u = VectorField::from_fn(grid, |x| {
        [
            0.1 * x[1].sin() + 0.05 * (x[0] + 0.2).cos(),
            0.08 * (x[2] + 1.0).sin() * x[0].cos(),
            0.06 * (x[0] + x[1]).sin() + 0.04 * (2.0 * x[2]).cos(),
        ]
    });
    FlowState::new(m, n, u, 0.0)
}

fn main() -> twophase::Result<()> {
    let eos = EosParams::new(2.0, 1.0, 1.0, 0.0, 0.6, 0.4)?;
    let visc = ViscosityParams::new(0.1, 0.05)?;
    for (scheme, sizes) in [
        (DiscretizationScheme::spectral(), vec![16, 32]),
        (DiscretizationScheme::central2(), vec![16, 32, 64]),
    ] {
        let mut hs = Vec::new();
        let mut table: Vec<Vec<(&str, f64)>> = Vec::new();
        for n in sizes {
            let grid = Grid::new(3, n, 2.0 * PI)?;
            let model = Model {
                eos,
                visc,
                ops: Operators::new(grid, scheme)?,
                positivity_floor: 1e-8,
            };
            let report = identity_report(&model, &state(grid, &eos)?)?;
            let row: Vec<String> = report.entries().iter().map(|(k, v)| format!("{k} {v:.2e}")).collect();
            println!("{} N={n}: {}", scheme.kind.name(), row.join(", "));
            hs.push(grid.spacing());
            table.push(report.entries());
        }
        if hs.len() >= 3 {
            for (i, (name, _)) in table[0].iter().enumerate() {
                let errs: Vec<f64> = table.iter().map(|r| r[i].1).collect();
                if errs.iter().all(|&e| e < 1e-10) {
                    println!("  {name}: rounding level");
                } else {
                    println!("  {name}: observed order {:.3}", fit_order(&hs, &errs));
                }
            }
        }
    }
    Ok(())
}
