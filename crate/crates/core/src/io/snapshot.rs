//! Binary state snapshots.
//!
//! Layout, all little-endian: magic `MKG2`, version `u16`, `nx: u32`,
//! `ny: u32`, `period, t, mass, eps_tilde: f64`, five field blocks, then the
//! CRC-32 of every preceding byte. A block is a tag byte followed by the
//! coefficient arrays of its components (re, im pairs in storage order).
//! Bit 7 of the tag marks real-valued fields.

use std::fs;
use std::path::Path;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gauge::GaugeState;
use crate::spectral::{GridSpec, SpectralField2D};

pub const SNAPSHOT_MAGIC: [u8; 4] = *b"MKG2";
pub const SNAPSHOT_VERSION: u16 = 1;

const REAL_FLAG: u8 = 0x80;
/// Tags and component counts, in file order.
const BLOCKS: [(u8, usize); 5] = [(b'p', 1), (b'm', 1), (b'P', 2), (b'M', 2), (b'C', 2)];
const HEADER_LEN: usize = 4 + 2 + 4 + 4 + 4 * 8;

fn blocks(state: &GaugeState) -> [Vec<&SpectralField2D>; 5] {
    [
        vec![&state.phi_plus],
        vec![&state.phi_minus],
        state.a_df_plus.iter().collect(),
        state.a_df_minus.iter().collect(),
        state.a_cf.iter().collect(),
    ]
}

pub fn encode_snapshot(state: &GaugeState) -> Vec<u8> {
    let g = state.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 5 + 8 * 16 * g.len() + 4);
    out.extend_from_slice(&SNAPSHOT_MAGIC);
    out.extend_from_slice(&SNAPSHOT_VERSION.to_le_bytes());
    out.extend_from_slice(&(g.nx as u32).to_le_bytes());
    out.extend_from_slice(&(g.ny as u32).to_le_bytes());
    for x in [g.period, state.t, state.mass, state.eps_tilde] {
        out.extend_from_slice(&x.to_le_bytes());
    }
    for ((tag, _), fields) in BLOCKS.iter().zip(blocks(state)) {
        let real = fields.iter().all(|f| f.is_real());
        out.push(if real { tag | REAL_FLAG } else { *tag });
        for f in fields {
            for c in f.coeffs() {
                out.extend_from_slice(&c.re.to_le_bytes());
                out.extend_from_slice(&c.im.to_le_bytes());
            }
        }
    }
    let crc = crc32fast::hash(&out);
    out.extend_from_slice(&crc.to_le_bytes());
    out
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl Reader<'_> {
    fn take(&mut self, n: usize, what: &str) -> Result<&[u8]> {
        if self.pos + n > self.buf.len() {
            return Err(Error::Truncated(format!("{what} at byte {}", self.pos)));
        }
        let s = &self.buf[self.pos..self.pos + n];
        self.pos += n;
        Ok(s)
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

/// Decodes a snapshot; the dealias fraction is not stored and is set to the default.
pub fn decode_snapshot(bytes: &[u8]) -> Result<GaugeState> {
    let mut r = Reader { buf: bytes, pos: 0 };
    let magic: [u8; 4] = r.take(4, "magic")?.try_into().unwrap();
    if magic != SNAPSHOT_MAGIC {
        return Err(Error::BadMagic { found: magic });
    }
    let version = u16::from_le_bytes(r.take(2, "version")?.try_into().unwrap());
    if version != SNAPSHOT_VERSION {
        return Err(Error::BadVersion {
            found: version,
            expected: SNAPSHOT_VERSION,
        });
    }
    let nx = r.u32("nx")? as usize;
    let ny = r.u32("ny")? as usize;
    let period = r.f64("period")?;
    let (t, mass, eps_tilde) = (r.f64("t")?, r.f64("mass")?, r.f64("eps_tilde")?);
    let len = nx
        .checked_mul(ny)
        .ok_or_else(|| Error::Shape(format!("grid {nx} x {ny} overflows")))?;
    let body: usize = BLOCKS.iter().map(|(_, c)| 1 + c * len * 16).sum();
    let expected = HEADER_LEN + body + 4;
    if bytes.len() < expected {
        return Err(Error::Truncated(format!("expected {expected} bytes, found {}", bytes.len())));
    }
    if bytes.len() > expected {
        return Err(Error::Shape(format!("{} trailing bytes after snapshot", bytes.len() - expected)));
    }
    let stored = u32::from_le_bytes(bytes[expected - 4..].try_into().unwrap());
    let computed = crc32fast::hash(&bytes[..expected - 4]);
    if stored != computed {
        return Err(Error::Checksum { stored, computed });
    }
    let grid = GridSpec::new(nx, ny, period, GridSpec::DEFAULT_DEALIAS)?;
    let mut fields = Vec::with_capacity(8);
    for (tag, count) in BLOCKS {
        let found = r.take(1, "block tag")?[0];
        if found & !REAL_FLAG != tag {
            return Err(Error::Shape(format!("expected block tag {:?}, found {found:#04x}", tag as char)));
        }
        for _ in 0..count {
            let mut c = Vec::with_capacity(len);
            for _ in 0..len {
                let re = r.f64("coefficient")?;
                c.push(Complex64::new(re, r.f64("coefficient")?));
            }
            // verbatim copy: clearing Nyquist lines would turn -0.0 into 0.0
            let mut f = SpectralField2D::zeros(grid);
            f.coeffs_mut().copy_from_slice(&c);
            f.set_real(found & REAL_FLAG != 0);
            fields.push(f);
        }
    }
    let mut it = fields.into_iter();
    let mut next = || it.next().expect("block layout is fixed");
    let state = GaugeState {
        phi_plus: next(),
        phi_minus: next(),
        a_df_plus: [next(), next()],
        a_df_minus: [next(), next()],
        a_cf: [next(), next()],
        t,
        mass,
        eps_tilde,
    };
    Ok(state)
}

pub fn snapshot_write(state: &GaugeState, path: impl AsRef<Path>) -> Result<()> {
    fs::write(path, encode_snapshot(state))?;
    Ok(())
}

pub fn snapshot_read(path: impl AsRef<Path>) -> Result<GaugeState> {
    decode_snapshot(&fs::read(path)?)
}

/// Reads a snapshot and requires it to live on `grid`.
pub fn snapshot_read_on(path: impl AsRef<Path>, grid: &GridSpec) -> Result<GaugeState> {
    let s = snapshot_read(path)?;
    let g = s.grid();
    if g.nx != grid.nx || g.ny != grid.ny || g.period != grid.period {
        return Err(Error::Shape(format!(
            "snapshot grid {}x{} (period {}) does not match run grid {}x{} (period {})",
            g.nx, g.ny, g.period, grid.nx, grid.ny, grid.period
        )));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::testutil::random_state;

    fn sample() -> GaugeState {
        let mut s = random_state(GridSpec::square(16).unwrap(), 5, 3, 1.0);
        s.t = 0.375;
        s.eps_tilde = 0.02;
        s
    }

    #[test]
    fn roundtrip_is_bitwise() {
        let s = sample();
        let bytes = encode_snapshot(&s);
        let back = decode_snapshot(&bytes).unwrap();
        assert_eq!(back, s);
        assert_eq!(encode_snapshot(&back), bytes);
    }

    #[test]
    fn file_roundtrip_and_shape_check() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("s.mkg2");
        let s = sample();
        snapshot_write(&s, &p).unwrap();
        assert_eq!(snapshot_read(&p).unwrap(), s);
        let other = GridSpec::square(32).unwrap();
        assert!(matches!(snapshot_read_on(&p, &other), Err(Error::Shape(_))));
        assert!(snapshot_read_on(&p, s.grid()).is_ok());
    }

    #[test]
    fn distinct_errors() {
        let bytes = encode_snapshot(&sample());
        let mut b = bytes.clone();
        b[0] = b'X';
        assert!(matches!(decode_snapshot(&b), Err(Error::BadMagic { .. })));
        let mut b = bytes.clone();
        b[4] = 9;
        assert!(matches!(decode_snapshot(&b), Err(Error::BadVersion { found: 9, .. })));
        assert!(matches!(decode_snapshot(&bytes[..bytes.len() - 10]), Err(Error::Truncated(_))));
        assert!(matches!(decode_snapshot(&bytes[..3]), Err(Error::Truncated(_))));
        let mut b = bytes.clone();
        b[HEADER_LEN + 20] ^= 1;
        assert!(matches!(decode_snapshot(&b), Err(Error::Checksum { .. })));
    }

    mod props {
        use proptest::prelude::*;

        use super::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(16))]

            #[test]
            fn roundtrip_for_random_states(seed in 0u64..10_000, t in -10.0f64..10.0, mass in 0.0f64..3.0) {
                let mut s = random_state(GridSpec::square(8).unwrap(), 3, seed, 1.0);
                s.t = t;
                s.mass = mass;
                let bytes = encode_snapshot(&s);
                prop_assert_eq!(decode_snapshot(&bytes).unwrap(), s);
            }

            #[test]
            fn any_single_byte_flip_is_detected(seed in 0u64..1000, pos in 0usize..4096, bit in 0u8..8) {
                let s = random_state(GridSpec::square(8).unwrap(), 3, seed, 1.0);
                let mut bytes = encode_snapshot(&s);
                let i = pos % bytes.len();
                bytes[i] ^= 1 << bit;
                prop_assert!(decode_snapshot(&bytes).is_err());
            }
        }
    }
}
