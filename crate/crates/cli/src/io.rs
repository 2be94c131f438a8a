//! Binary height snapshots: a 32-byte header (`b"VESIFLOW"`, format version, `N`
//! as little-endian `u64`, `L` as little-endian `f64`) followed by the `N * N`
//! grid values as little-endian `f64` in row-major order, `values[i * N + j]`
//! at `x = (i L / N, j L / N)`.

use std::fs;
use std::io::Write;
use std::path::Path;

use vesiflow_core::{Grid, HeightField};

use crate::error::{CliError, CliResult};

pub const MAGIC: &[u8; 8] = b"VESIFLOW";
pub const FORMAT_VERSION: u64 = 1;
pub const HEADER_LEN: usize = 32;

pub fn encode_snapshot(h: &HeightField) -> Vec<u8> {
    let grid = h.grid();
    let mut out = Vec::with_capacity(HEADER_LEN + 8 * grid.len());
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&FORMAT_VERSION.to_le_bytes());
    out.extend_from_slice(&(grid.n() as u64).to_le_bytes());
    out.extend_from_slice(&grid.period().to_le_bytes());
    for v in h.values() {
        out.extend_from_slice(&v.to_le_bytes());
    }
    out
}

pub fn decode_snapshot(bytes: &[u8]) -> CliResult<HeightField> {
    let bad = |m: &str| CliError::Config(format!("invalid snapshot: {m}"));
    if bytes.len() < HEADER_LEN || &bytes[..8] != MAGIC {
        return Err(bad("missing VESIFLOW header"));
    }
    let word = |i: usize| -> [u8; 8] { bytes[i..i + 8].try_into().expect("8 bytes") };
    let version = u64::from_le_bytes(word(8));
    if version != FORMAT_VERSION {
        return Err(bad(&format!("unsupported version {version}")));
    }
    let n = usize::try_from(u64::from_le_bytes(word(16))).map_err(|_| bad("grid too large"))?;
    let l = f64::from_le_bytes(word(24));
    let grid = Grid::new(n, l).map_err(|e| bad(&e.to_string()))?;
    let body = &bytes[HEADER_LEN..];
    if body.len() != 8 * grid.len() {
        return Err(bad(&format!(
            "expected {} values, found {} bytes",
            grid.len(),
            body.len()
        )));
    }
    let values = body
        .chunks_exact(8)
        .map(|c| f64::from_le_bytes(c.try_into().expect("8 bytes")))
        .collect();
    HeightField::from_values(grid, values).map_err(|e| bad(&e.to_string()))
}

pub fn write_snapshot(path: &Path, h: &HeightField) -> CliResult<()> {
    let mut f = fs::File::create(path)?;
    f.write_all(&encode_snapshot(h))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> CliResult<HeightField> {
    let bytes = fs::read(path)
        .map_err(|e| CliError::Config(format!("cannot read snapshot {}: {e}", path.display())))?;
    decode_snapshot(&bytes)
}
