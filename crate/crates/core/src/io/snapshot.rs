//! Binary snapshots.
//!
//! Layout: a 64-byte header
//!
//! | offset | type  | content                     |
//! |--------|-------|-----------------------------|
//! | 0      | [u8;4]| magic `TPFS`                |
//! | 4      | u32   | format version (1)          |
//! | 8      | u32   | dim                         |
//! | 12     | u32   | points per axis             |
//! | 16     | f64   | box length                  |
//! | 24     | f64   | time                        |
//! | 32     | u32   | field count (`2 + dim`)     |
//! | 36     | zero padding to 64              |
//!
//! followed by `m`, `n`, `u^1..u^dim`, each `N^dim` little-endian `f64` in
//! grid order. All header integers are little-endian.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{FlowState, Grid, ScalarField, VectorField};

pub const MAGIC: &[u8; 4] = b"TPFS";
pub const VERSION: u32 = 1;
pub const HEADER_LEN: usize = 64;

pub fn encode_snapshot(state: &FlowState) -> Vec<u8> {
    let grid = state.grid();
    let fields = 2 + grid.dim();
    let mut out = Vec::with_capacity(HEADER_LEN + fields * grid.len() * 8);
    out.extend_from_slice(MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&(grid.dim() as u32).to_le_bytes());
    out.extend_from_slice(&(grid.n() as u32).to_le_bytes());
    out.extend_from_slice(&grid.length().to_le_bytes());
    out.extend_from_slice(&state.t.to_le_bytes());
    out.extend_from_slice(&(fields as u32).to_le_bytes());
    out.resize(HEADER_LEN, 0);
    let arrays = [&state.m, &state.n].into_iter().chain(state.u.components());
    for f in arrays {
        for v in f.data() {
            out.extend_from_slice(&v.to_le_bytes());
        }
    }
    out
}

/// Parses a snapshot; `path` only labels errors.
pub fn decode_snapshot(bytes: &[u8], path: &Path) -> Result<FlowState> {
    let fail = |msg: String| Error::Format {
        path: path.to_path_buf(),
        msg,
    };
    if bytes.len() < HEADER_LEN {
        return Err(fail(format!("file is {} bytes, shorter than the header", bytes.len())));
    }
    if &bytes[0..4] != MAGIC {
        return Err(fail(format!("bad magic {:?}", &bytes[0..4])));
    }
    let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap());
    let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
    let version = u32_at(4);
    if version != VERSION {
        return Err(fail(format!("unsupported version {version} (expected {VERSION})")));
    }
    let dim = u32_at(8) as usize;
    let n = u32_at(12) as usize;
    let length = f64_at(16);
    let t = f64_at(24);
    let fields = u32_at(32) as usize;
    let grid = Grid::new(dim, n, length).map_err(|e| fail(format!("bad header: {e}")))?;
    if fields != 2 + dim {
        return Err(fail(format!("field count {fields} does not match dim {dim}")));
    }
    if !t.is_finite() {
        return Err(fail(format!("non-finite time {t}")));
    }
    let expected = HEADER_LEN + fields * grid.len() * 8;
    if bytes.len() != expected {
        return Err(fail(format!(
            "payload size mismatch: {} bytes, expected {expected}",
            bytes.len()
        )));
    }
    let mut arrays = bytes[HEADER_LEN..].chunks_exact(grid.len() * 8).map(|chunk| {
        let data: Vec<f64> = chunk
            .chunks_exact(8)
            .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
            .collect();
        if data.iter().any(|v| !v.is_finite()) {
            return Err(fail("non-finite value in payload".to_string()));
        }
        ScalarField::new(grid, data)
    });
    let m = arrays.next().unwrap()?;
    let n_field = arrays.next().unwrap()?;
    let comps = arrays.collect::<Result<Vec<_>>>()?;
    FlowState::new(m, n_field, VectorField::new(comps)?, t)
}

pub fn write_snapshot(state: &FlowState, path: &Path) -> Result<()> {
    fs::write(path, encode_snapshot(state))?;
    Ok(())
}

pub fn read_snapshot(path: &Path) -> Result<FlowState> {
    let bytes = fs::read(path)?;
    decode_snapshot(&bytes, path)
}
