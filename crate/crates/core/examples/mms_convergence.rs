//! Manufactured-solution refinement in space (central2) and time (rk4).

use twophase::io::parse_config;
use twophase::verification::{convergence_study, MmsCase, StudySetup};

fn main() -> twophase::Result<()> {
    for text in [include_str!("../configs/mms_space.cfg"), include_str!("../configs/mms_time.cfg")] {
        let config = parse_config(text)?;
        let case = MmsCase::standard(&config.eos, config.grid.dim(), config.grid.length(), 0.5)?;
        let report = convergence_study(&case, &StudySetup::from_config(&config))?;
        print!("{}", report.to_csv());
        println!("{}\n", report.summary_line());
    }
    Ok(())
}
