//! Derivative accuracy of the three schemes on a smooth periodic function,
//! and a round trip through the Lamé solver.

use std::f64::consts::PI;

use twophase::eos::ViscosityParams;
use twophase::field::{solve_lame_periodic, DiscretizationScheme, Grid, Operators, ScalarField, VectorField};
use twophase::verification::fit_order;

fn main() -> twophase::Result<()> {
    let l = 2.0 * PI;
    let f = |x: [f64; 3]| (x[0].sin()).exp();
    let df = |x: [f64; 3]| x[0].cos() * (x[0].sin()).exp();

    for scheme in [DiscretizationScheme::spectral(), DiscretizationScheme::central2(), DiscretizationScheme::central4()] {
        let mut hs = Vec::new();
        let mut errs = Vec::new();
        for n in [16, 32, 64, 128] {
            let grid = Grid::new(1, n, l)?;
            let ops = Operators::new(grid, scheme)?;
            let d = ops.derivative(&ScalarField::from_fn(grid, f), 0);
            let err = d.zip_map(&ScalarField::from_fn(grid, df), |a, b| a - b).max_abs();
            hs.push(grid.spacing());
            errs.push(err);
        }
        let errs_s: Vec<String> = errs.iter().map(|e| format!("{e:.2e}")).collect();
        let order = if scheme.kind.order().is_some() {
            format!("order {:.2}", fit_order(&hs, &errs))
        } else {
            "spectral".to_string()
        };
        println!("{:>9}: {} ({order})", scheme.kind.name(), errs_s.join(" "));
    }

    let grid = Grid::new(3, 24, l)?;
    let visc = ViscosityParams::new(0.1, 0.05)?;
    let rhs = VectorField::from_fn(grid, |x| {
        [x[1].sin() + 0.3, (x[0] + x[2]).cos(), (2.0 * x[2]).sin() * x[0].cos()]
    });
    let sol = solve_lame_periodic(&rhs, &visc)?;
    let back = Operators::new(grid, DiscretizationScheme::spectral())?.lame(&sol.z, &visc);
    let mut worst: f64 = 0.0;
    for j in 0..3 {
        let target = rhs.component(j).map(|v| v - sol.subtracted_means[j]);
        worst = worst.max(back.component(j).add_scaled(-1.0, &target).max_abs());
    }
    println!("Lamé round trip on 24^3: max error {worst:.2e}, removed means {:?}", sol.subtracted_means);
    Ok(())
}
