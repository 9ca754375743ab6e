//! Field dumps: raw little-endian `f64` samples plus a JSON sidecar, and CSV.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::grid::GridSpec;
use crate::error::{Error, Result};
use crate::scalar::Real;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FieldSidecar {
    #[serde(rename = "L")]
    pub half_length: f64,
    #[serde(rename = "N")]
    pub num_points: usize,
    pub time: f64,
}

fn sidecar_path(path: &Path) -> PathBuf {
    path.with_extension("json")
}

/// Writes `path` (samples as little-endian `f64`) and `path.json`-style sidecar
/// next to it (same stem, `.json` extension).
pub fn write_field<T: Real>(path: &Path, f: &Field<T>, time: T) -> Result<()> {
    let mut bytes = Vec::with_capacity(8 * f.len());
    for &v in f.values() {
        bytes.extend_from_slice(&v.to_f64_lossy().to_le_bytes());
    }
    fs::write(path, bytes)?;
    let meta = FieldSidecar {
        half_length: f.grid().half_length().to_f64_lossy(),
        num_points: f.len(),
        time: time.to_f64_lossy(),
    };
    fs::write(sidecar_path(path), serde_json::to_vec_pretty(&meta)?)?;
    Ok(())
}

/// Reads a field written by [`write_field`], returning it with its time stamp.
pub fn read_field<T: Real>(path: &Path) -> Result<(Field<T>, T)> {
    let meta: FieldSidecar = serde_json::from_slice(&fs::read(sidecar_path(path))?)?;
    let bytes = fs::read(path)?;
    if bytes.len() != 8 * meta.num_points {
        return Err(Error::invalid(format!(
            "{}: expected {} bytes, found {}",
            path.display(),
            8 * meta.num_points,
            bytes.len()
        )));
    }
    let grid = GridSpec::new(T::of(meta.half_length), meta.num_points)?;
    let values = bytes
        .chunks_exact(8)
        .map(|c| T::of(f64::from_le_bytes(c.try_into().expect("chunk of 8"))))
        .collect();
    Ok((Field::new(&grid, values)?, T::of(meta.time)))
}

/// CSV with header `x,value`.
pub fn write_field_csv<T: Real>(path: &Path, f: &Field<T>) -> Result<()> {
    let mut w = BufWriter::new(fs::File::create(path)?);
    writeln!(w, "x,value")?;
    for (x, v) in f.grid().points().into_iter().zip(f.values()) {
        writeln!(w, "{:e},{:e}", x.to_f64_lossy(), v.to_f64_lossy())?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let g = GridSpec::new(3.0, 32).unwrap();
        let f = Field::from_fn(&g, |x: f64| (-x * x).exp() * 1.234_567_890_123);
        let p = dir.path().join("phi.bin");
        write_field(&p, &f, 2.5).unwrap();
        let (back, t): (Field<f64>, f64) = read_field(&p).unwrap();
        assert_eq!(back.values(), f.values());
        assert_eq!(t, 2.5);
        assert_eq!(back.grid(), &g);
        let text = fs::read_to_string(p.with_extension("json")).unwrap();
        assert!(text.contains("\"L\"") && text.contains("\"N\""));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let dir = tempfile::tempdir().unwrap();
        let g = GridSpec::new(1.0, 16).unwrap();
        let p = dir.path().join("f.csv");
        write_field_csv(&p, &Field::constant(&g, 1.0)).unwrap();
        let text = fs::read_to_string(p).unwrap();
        assert_eq!(text.lines().count(), 17);
        assert!(text.starts_with("x,value\n-1e0,1e0"));
    }
}
