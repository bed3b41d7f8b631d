//! Configuration, snapshot and CSV persistence.

mod config;
mod csv;
mod output;
mod snapshot;

pub use config::{parse_config, OutputSettings, SimConfig, StudyKind, StudySettings};
pub use csv::{csv_header, csv_row, format_f64, parse_diagnostics_csv, read_diagnostics_csv};
pub use output::{
    run_to_dir, FileSink, OutputDir, CONFIG_COPY, DIAGNOSTICS_CSV, FINAL_SNAPSHOT, LOCK_FILE,
    TRUNCATED_MARKER,
};
pub use snapshot::{decode_snapshot, encode_snapshot, read_snapshot, write_snapshot, HEADER_LEN};
