use std::io::Write;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::{gauss_residual, GaugeState, RegularityTriple};
use crate::dynamics::conserved_quantities;
use crate::norms::{curl_free_weighted_norm_pair, sobolev_norm, sobolev_norm_pair};

/// One row of the diagnostics time series.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsRecord {
    pub t: f64,
    pub gauss_residual_l2: f64,
    pub gauss_mean_mode: f64,
    pub energy: f64,
    pub charge: f64,
    pub phi_hs: f64,
    pub adf_hr: f64,
    pub acf_weighted: f64,
}

impl DiagnosticsRecord {
    pub const COLUMNS: [&'static str; 8] = [
        "t",
        "gauss_residual_l2",
        "gauss_mean_mode",
        "energy",
        "charge",
        "phi_hs",
        "adf_hr",
        "acf_weighted",
    ];

    pub fn values(&self) -> [f64; 8] {
        [
            self.t,
            self.gauss_residual_l2,
            self.gauss_mean_mode,
            self.energy,
            self.charge,
            self.phi_hs,
            self.adf_hr,
            self.acf_weighted,
        ]
    }

    pub fn is_finite(&self) -> bool {
        self.values().iter().all(|v| v.is_finite())
    }

    pub fn csv_header() -> String {
        Self::COLUMNS.join(",")
    }

    /// Shortest round-trip formatting, so rows parse back bit-exactly.
    pub fn to_csv_row(&self) -> String {
        self.values()
            .iter()
            .map(|v| format!("{v:e}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    pub fn from_csv_row(line: &str) -> Result<Self> {
        let vals: Vec<f64> = line
            .trim()
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<f64>()
                    .map_err(|e| Error::Config(format!("bad diagnostics value '{x}': {e}")))
            })
            .collect::<Result<_>>()?;
        if vals.len() != Self::COLUMNS.len() {
            return Err(Error::Shape(format!(
                "diagnostics row has {} columns, expected {}",
                vals.len(),
                Self::COLUMNS.len()
            )));
        }
        Ok(DiagnosticsRecord {
            t: vals[0],
            gauss_residual_l2: vals[1],
            gauss_mean_mode: vals[2],
            energy: vals[3],
            charge: vals[4],
            phi_hs: vals[5],
            adf_hr: vals[6],
            acf_weighted: vals[7],
        })
    }
}

/// Evaluates every diagnostic of a state; `reg` fixes the tracked norms.
pub fn diagnostics_record(state: &GaugeState, reg: &RegularityTriple) -> DiagnosticsRecord {
    let gauss = gauss_residual(state);
    let (energy, charge) = conserved_quantities(state);
    DiagnosticsRecord {
        t: state.t,
        gauss_residual_l2: gauss.l2,
        gauss_mean_mode: gauss.mean,
        energy,
        charge,
        phi_hs: sobolev_norm(&state.phi(), reg.s, false),
        adf_hr: sobolev_norm_pair(&state.a_df(), reg.r, false),
        acf_weighted: curl_free_weighted_norm_pair(&state.a_cf, reg.l, reg.eps_tilde),
    }
}

/// CSV writer with a fixed header.
pub struct CsvDiagnosticsSink<W: Write> {
    out: W,
    last_t: Option<f64>,
}

impl<W: Write> CsvDiagnosticsSink<W> {
    pub fn new(mut out: W) -> Result<Self> {
        writeln!(out, "{}", DiagnosticsRecord::csv_header())?;
        Ok(CsvDiagnosticsSink { out, last_t: None })
    }

    pub fn write(&mut self, rec: &DiagnosticsRecord) -> Result<()> {
        if !rec.is_finite() {
            return Err(Error::BlowUp { t: rec.t });
        }
        if let Some(t) = self.last_t {
            if rec.t <= t {
                return Err(Error::Precondition(format!(
                    "diagnostics times must increase ({} after {t})",
                    rec.t
                )));
            }
        }
        self.last_t = Some(rec.t);
        writeln!(self.out, "{}", rec.to_csv_row())?;
        Ok(())
    }

    pub fn into_inner(mut self) -> Result<W> {
        self.out.flush()?;
        Ok(self.out)
    }
}

/// Parses a diagnostics CSV, checking the header.
pub fn read_diagnostics_csv(text: &str) -> Result<Vec<DiagnosticsRecord>> {
    let mut lines = text.lines();
    let header = lines.next().unwrap_or_default();
    if header.trim() != DiagnosticsRecord::csv_header() {
        return Err(Error::Config(format!("unexpected diagnostics header '{header}'")));
    }
    lines
        .filter(|l| !l.trim().is_empty())
        .map(DiagnosticsRecord::from_csv_row)
        .collect()
}
