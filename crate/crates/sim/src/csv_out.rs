//! Sweep CSV: fixed header, one row per sweep point, `.` decimals, LF endings.

use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{SimError, SimResult};
use crate::sweep::SweepResult;

pub const CSV_HEADER: [&str; 11] = [
    "M",
    "L",
    "K",
    "mean_rate_main",
    "mean_rate_secrecy",
    "mean_rate_eve",
    "cost",
    "ci_main",
    "ci_secrecy",
    "ci_eve",
    "trials",
];

/// One parsed CSV row.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CsvRow {
    #[serde(rename = "M")]
    pub antennas: usize,
    #[serde(rename = "L")]
    pub active: usize,
    #[serde(rename = "K")]
    pub users: usize,
    pub mean_rate_main: f64,
    pub mean_rate_secrecy: f64,
    pub mean_rate_eve: f64,
    pub cost: f64,
    pub ci_main: f64,
    pub ci_secrecy: f64,
    pub ci_eve: f64,
    pub trials: usize,
}

fn io_err(path: &Path) -> impl Fn(std::io::Error) -> SimError + '_ {
    move |source| SimError::Io { path: path.to_owned(), source }
}

fn csv_err(path: &Path, e: csv::Error) -> SimError {
    if e.is_io_error() {
        if let csv::ErrorKind::Io(source) = e.into_kind() {
            return SimError::Io { path: path.to_owned(), source };
        }
        unreachable!("is_io_error implies ErrorKind::Io");
    }
    SimError::Format { path: path.to_owned(), message: e.to_string() }
}

/// Writes the CSV to any sink. `label` names the sink in error messages.
pub fn write_csv<W: Write>(result: &SweepResult, sink: W, label: &Path) -> SimResult<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(sink);
    w.write_record(CSV_HEADER).map_err(|e| csv_err(label, e))?;
    for p in &result.points {
        // `{}` on f64 is locale-free and round-trips exactly.
        let row = [
            p.antennas.to_string(),
            p.active.to_string(),
            p.users.to_string(),
            p.mean_rate_main.to_string(),
            p.mean_rate_secrecy.to_string(),
            p.mean_rate_eve.to_string(),
            p.cost.to_string(),
            p.ci_main.to_string(),
            p.ci_secrecy.to_string(),
            p.ci_eve.to_string(),
            p.trials.to_string(),
        ];
        w.write_record(&row).map_err(|e| csv_err(label, e))?;
    }
    w.flush().map_err(io_err(label))
}

pub fn emit_csv(result: &SweepResult, path: &Path) -> SimResult<()> {
    let file = std::fs::File::create(path).map_err(io_err(path))?;
    write_csv(result, std::io::BufWriter::new(file), path)
}

pub fn read_csv<R: Read>(source: R, label: &Path) -> SimResult<Vec<CsvRow>> {
    let mut r = csv::Reader::from_reader(source);
    let header = r.headers().map_err(|e| csv_err(label, e))?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(SimError::Format { path: label.to_owned(), message: format!("unexpected header {header:?}") });
    }
    r.deserialize().map(|row| row.map_err(|e| csv_err(label, e))).collect()
}

pub fn parse_csv(path: &Path) -> SimResult<Vec<CsvRow>> {
    let file = std::fs::File::open(path).map_err(io_err(path))?;
    read_csv(file, path)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_sweep_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&SweepResult::default(), &mut buf, Path::new("mem")).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "M,L,K,mean_rate_main,mean_rate_secrecy,mean_rate_eve,cost,ci_main,ci_secrecy,ci_eve,trials\n"
        );
    }

    #[test]
    fn bad_header_rejected() {
        let text = "M,L\n1,2\n";
        assert!(matches!(read_csv(text.as_bytes(), Path::new("mem")), Err(SimError::Format { .. })));
    }

    #[test]
    fn unwritable_path_is_io_error() {
        let err = emit_csv(&SweepResult::default(), Path::new("/nonexistent-dir/x.csv")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("/nonexistent-dir/x.csv"));
    }
}
