//! Configuration, initial data, snapshots, diagnostics and report output.

mod config;
mod data;
mod diagnostics;
mod report;
mod snapshot;

pub use config::{DataSource, RunConfig, CONFIG_KEYS};
pub use data::{rough_data_generate, spectral_slope, DataKind, InitialData, ROUGH_DELTA};
pub use diagnostics::{diagnostics_record, read_diagnostics_csv, CsvDiagnosticsSink, DiagnosticsRecord};
pub use report::{read_jsonl, write_jsonl};
pub use snapshot::{
    decode_snapshot, encode_snapshot, snapshot_read, snapshot_read_on, snapshot_write, SNAPSHOT_MAGIC,
    SNAPSHOT_VERSION,
};
