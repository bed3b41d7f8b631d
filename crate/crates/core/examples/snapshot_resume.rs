//! Runs to disk, then resumes from the mid-run snapshot and compares the two
//! final states. Pass a directory to keep the output.

use std::path::PathBuf;

use twophase::io::{parse_config, read_snapshot, run_to_dir, FINAL_SNAPSHOT};

fn main() -> twophase::Result<()> {
    let text = include_str!("../configs/bump.cfg");
    let config = parse_config(text)?;
    let root = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| std::env::temp_dir().join(format!("twophase-resume-{}", std::process::id())));

    let full = root.join("full");
    let outcome = run_to_dir(&config, text, &full, None)?;
    println!("full run: {} steps, output in {}", outcome.steps, full.display());

    let mid = read_snapshot(&full.join("snapshot_0000.tpfs"))?;
    println!("snapshot at t = {}", mid.t);
    let resumed = run_to_dir(&config, text, &root.join("resumed"), Some(mid))?;
    let direct = read_snapshot(&full.join(FINAL_SNAPSHOT))?;
    println!(
        "resumed run: {} steps, max |difference| at t = {}: {:e}",
        resumed.steps,
        direct.t,
        resumed.final_state.max_abs_diff(&direct)
    );
    Ok(())
}
