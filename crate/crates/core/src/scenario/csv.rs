//! Trajectory tables.
//!
//! One row per step with columns `step, time, o_t, u_t, R_t, trace_defect,
//! herm_defect` followed by `rho_n_m_re, rho_n_m_im` for every state slot in
//! canonical order. Floats are written with shortest round-trip formatting.

use std::path::Path;

use crate::error::{Error, Result};
use crate::simulate::Trajectory;
use crate::state::SlotLayout;

pub const FIXED_COLUMNS: [&str; 7] = ["step", "time", "o_t", "u_t", "R_t", "trace_defect", "herm_defect"];

pub fn header(dim: usize) -> Vec<String> {
    let mut cols: Vec<String> = FIXED_COLUMNS.iter().map(|c| c.to_string()).collect();
    for &(n, m) in SlotLayout::new(dim).slots() {
        cols.push(format!("rho_{n}_{m}_re"));
        cols.push(format!("rho_{n}_{m}_im"));
    }
    cols
}

pub fn write_csv<W: std::io::Write>(trajectory: &Trajectory, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(trajectory.dim()))?;
    for s in &trajectory.steps {
        let mut rec = vec![
            s.step.to_string(),
            s.time.to_string(),
            s.output.to_string(),
            s.control.to_string(),
            s.control_variance.to_string(),
            s.diagnostics.trace_defect.to_string(),
            s.diagnostics.hermiticity_defect.to_string(),
        ];
        for z in s.state.values().iter() {
            rec.push(z.re.to_string());
            rec.push(z.im.to_string());
        }
        w.write_record(&rec)?;
    }
    w.flush().map_err(|e| Error::Csv(e.into()))?;
    Ok(())
}

pub fn export_csv(trajectory: &Trajectory, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    write_csv(trajectory, std::io::BufWriter::new(file))
}

/// A numeric table read back from CSV.
#[derive(Clone, Debug, PartialEq)]
pub struct CsvTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CsvTable {
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }
}

pub fn read_csv<R: std::io::Read>(input: R) -> Result<CsvTable> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (line, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = rec
            .iter()
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|_| Error::Parse(format!("row {}: `{f}` is not a number", line + 1)))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(CsvTable { headers, rows })
}

pub fn import_csv(path: impl AsRef<Path>) -> Result<CsvTable> {
    let path = path.as_ref();
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_csv(file)
}
