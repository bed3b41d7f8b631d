//! On-disk run output: lock file, diagnostics CSV, snapshots and the
//! truncation marker left behind by failed runs.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, ErrorKind, Write};
use std::path::{Path, PathBuf};

use crate::diagnostics::DiagnosticsRecord;
use crate::dynamics::{run_from, RunOutcome, RunSink};
use crate::error::{Error, Result};
use crate::field::FlowState;

use super::config::SimConfig;
use super::csv::{csv_header, csv_row};
use super::snapshot::write_snapshot;

pub const LOCK_FILE: &str = ".lock";
pub const TRUNCATED_MARKER: &str = "TRUNCATED";
pub const DIAGNOSTICS_CSV: &str = "diagnostics.csv";
pub const CONFIG_COPY: &str = "config.cfg";
pub const FINAL_SNAPSHOT: &str = "final.tpfs";

/// Exclusive handle on an output directory; the lock is released on drop.
#[derive(Debug)]
pub struct OutputDir {
    path: PathBuf,
}

impl OutputDir {
    pub fn acquire(path: &Path) -> Result<Self> {
        fs::create_dir_all(path)?;
        match OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(path.join(LOCK_FILE))
        {
            Ok(mut f) => writeln!(f, "{}", std::process::id())?,
            Err(e) if e.kind() == ErrorKind::AlreadyExists => {
                return Err(Error::Locked(path.to_path_buf()))
            }
            Err(e) => return Err(e.into()),
        }
        let marker = path.join(TRUNCATED_MARKER);
        if marker.exists() {
            fs::remove_file(marker)?;
        }
        Ok(Self {
            path: path.to_path_buf(),
        })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn mark_truncated(&self, err: &Error) -> Result<()> {
        fs::write(self.path.join(TRUNCATED_MARKER), format!("{err}\n"))?;
        Ok(())
    }
}

impl Drop for OutputDir {
    fn drop(&mut self) {
        let _ = fs::remove_file(self.path.join(LOCK_FILE));
    }
}

/// Streams records to `diagnostics.csv` (flushed per row) and snapshots to
/// `snapshot_NNNN.tpfs`.
pub struct FileSink {
    csv: BufWriter<File>,
    dir: PathBuf,
    snapshots: usize,
}

impl FileSink {
    pub fn create(dir: &OutputDir) -> Result<Self> {
        let mut csv = BufWriter::new(File::create(dir.path().join(DIAGNOSTICS_CSV))?);
        writeln!(csv, "{}", csv_header())?;
        csv.flush()?;
        Ok(Self {
            csv,
            dir: dir.path().to_path_buf(),
            snapshots: 0,
        })
    }
}

impl RunSink for FileSink {
    fn record(&mut self, record: &DiagnosticsRecord) -> Result<()> {
        writeln!(self.csv, "{}", csv_row(record))?;
        self.csv.flush()?;
        Ok(())
    }

    fn snapshot(&mut self, state: &FlowState) -> Result<()> {
        let path = self.dir.join(format!("snapshot_{:04}.tpfs", self.snapshots));
        self.snapshots += 1;
        write_snapshot(state, &path)
    }
}

/// Runs `config` from `initial` (or its initial condition) into `out_dir`.
///
/// Writes a copy of the config text, the diagnostics CSV, the configured
/// snapshots and `final.tpfs`. On failure the partial output stays and a
/// `TRUNCATED` marker holding the error message is written.
pub fn run_to_dir(
    config: &SimConfig,
    config_text: &str,
    out_dir: &Path,
    initial: Option<FlowState>,
) -> Result<RunOutcome> {
    let dir = OutputDir::acquire(out_dir)?;
    fs::write(dir.path().join(CONFIG_COPY), config_text)?;
    let mut sink = FileSink::create(&dir)?;
    let result = (|| {
        let state = match initial {
            Some(s) => s,
            None => config.ic.build(config.grid, &config.eos, config.seed)?,
        };
        let outcome = run_from(config, state, &mut sink)?;
        write_snapshot(&outcome.final_state, &dir.path().join(FINAL_SNAPSHOT))?;
        Ok(outcome)
    })();
    if let Err(e) = &result {
        dir.mark_truncated(e)?;
    }
    result
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lock_is_exclusive_and_released() {
        let tmp = tempfile::tempdir().unwrap();
        let a = OutputDir::acquire(tmp.path()).unwrap();
        assert!(matches!(OutputDir::acquire(tmp.path()), Err(Error::Locked(_))));
        drop(a);
        assert!(!tmp.path().join(LOCK_FILE).exists());
        let _b = OutputDir::acquire(tmp.path()).unwrap();
    }
}
