//! Data with n = s0 m keeps that ratio while the flow moves the mass around.

use twophase::dynamics::{run, MemorySink};
use twophase::io::parse_config;

const SETUP: &str = "
grid.dim = 1
grid.n = 256
grid.length = 20.0
eos.a_l = 2.0
eos.a_g = 1.0
eos.rho_l0 = 1.0
eos.P_l0 = 0.0
eos.m_tilde = 0.6
eos.n_tilde = 0.4
visc.mu = 0.05
visc.lambda = 0.0
integrator.t_end = 2.0
ic.recipe = ratio_bump
ic.m_amp = 0.1
ic.m_width = 1.5
ic.u_amp = 0.05
ic.u_width = 2.0
output.record_every = 20
";

fn main() -> twophase::Result<()> {
    let config = parse_config(SETUP)?;
    let s0 = config.eos.n_tilde() / config.eos.m_tilde();
    let mut sink = MemorySink::default();
    run(&config, &mut sink)?;
    println!("{:>8} {:>12} {:>12} {:>12}", "t", "max m", "min n/m - s0", "max n/m - s0");
    for r in &sink.records {
        println!("{:>8.4} {:>12.6} {:>12.2e} {:>12.2e}", r.t, r.max_m, r.min_s - s0, r.max_s - s0);
    }
    Ok(())
}
