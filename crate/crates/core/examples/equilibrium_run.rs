//! The far-field state at rest is a fixed point: energy and every residual
//! stay at zero.

use twophase::dynamics::{run, MemorySink};
use twophase::io::parse_config;

fn main() -> twophase::Result<()> {
    let config = parse_config(include_str!("../configs/equilibrium.cfg"))?;
    let mut sink = MemorySink::default();
    let outcome = run(&config, &mut sink)?;
    let initial = config.ic.build(config.grid, &config.eos, config.seed)?;

    println!("{} steps to t = {}, {} records", outcome.steps, outcome.final_state.t, sink.records.len());
    println!("max |state - initial| = {:e}", outcome.final_state.max_abs_diff(&initial));
    let worst = |f: fn(&twophase::diagnostics::DiagnosticsRecord) -> f64| {
        sink.records.iter().map(f).fold(0.0f64, |a, b| a.max(b.abs()))
    };
    println!("max |E| = {:e}", worst(|r| r.E));
    println!("max res_F = {:e}, res_hoff = {:e}", worst(|r| r.res_F), worst(|r| r.res_hoff));
    println!(
        "max res_lambda = {:e}, {:e}",
        worst(|r| r.res_lambda1),
        worst(|r| r.res_lambda2)
    );
    Ok(())
}
