//! JSON-lines records.

use std::io::{BufRead, Write};

use serde::de::DeserializeOwned;
use serde::Serialize;

use crate::error::Result;

/// Writes one compact JSON object per line.
pub fn write_jsonl<W: Write, T: Serialize>(mut w: W, items: &[T]) -> Result<()> {
    for item in items {
        serde_json::to_writer(&mut w, item)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

/// Reads every non-empty line as one record.
pub fn read_jsonl<R: BufRead, T: DeserializeOwned>(r: R) -> Result<Vec<T>> {
    let mut out = Vec::new();
    for line in r.lines() {
        let line = line?;
        if !line.trim().is_empty() {
            out.push(serde_json::from_str(&line)?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::estimates::{bilinear_ratio_fuzz, BilinearTarget, ExponentTuple, FuzzConfig, RatioReport};

    #[test]
    fn ratio_reports_roundtrip() {
        let cfg = FuzzConfig {
            n: 16,
            nt: 16,
            n_trials: 4,
            ..FuzzConfig::default()
        };
        let e = ExponentTuple::new([0.0, 0.5, 0.5], [0.0, 0.51, 0.51]);
        let reports = vec![
            bilinear_ratio_fuzz(BilinearTarget::Product, &e, &cfg).unwrap(),
            bilinear_ratio_fuzz(BilinearTarget::NullformQ12, &e, &cfg).unwrap(),
        ];
        let mut buf = Vec::new();
        write_jsonl(&mut buf, &reports).unwrap();
        assert_eq!(buf.iter().filter(|&&b| b == b'\n').count(), 2);
        let back: Vec<RatioReport> = read_jsonl(&buf[..]).unwrap();
        assert_eq!(back, reports);
    }
}
