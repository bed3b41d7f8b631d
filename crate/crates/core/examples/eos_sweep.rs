//! Pressure law at a few points, then the full property sweep.

use twophase::eos::EosParams;
use twophase::verification::{eos_property_sweep, SweepSettings};

fn main() -> twophase::Result<()> {
    let eos = EosParams::new(2.0, 1.0, 1.0, 0.0, 0.6, 0.4)?;
    println!("k0 = {}, a0 = {}, C0 = {}, P~ = {}", eos.k0(), eos.a0(), eos.c0(), eos.p_far());

    println!("{:>8} {:>8} {:>14} {:>14} {:>14} {:>14} {:>14}", "m", "n", "P", "P_m", "P_n", "P_nn", "G");
    for (m, n) in [(0.6, 0.4), (0.3, 0.2), (1.2, 0.4), (0.6, 1.0), (eos.k0(), 1e-6)] {
        let p = eos.pressure(m, n)?;
        let (pm, pn) = eos.pressure_grad(m, n)?;
        let pnn = eos.pressure_hess_nn(m, n)?;
        let g = eos.potential_energy_g(m, n)?;
        println!("{m:>8.4} {n:>8.1e} {p:>14.6e} {pm:>14.6e} {pn:>14.6e} {pnn:>14.6e} {g:>14.6e}");
    }

    let report = eos_property_sweep(&eos, &SweepSettings::default());
    for w in report.violations.iter().take(10) {
        println!("  {w}");
    }
    println!("{}", report.summary_line());
    Ok(())
}
