//! JSON file formats for frames, operators, windows and lattices.
//!
//! Complex numbers are two-element arrays `[re, im]`. Floats are written
//! with shortest round-trip formatting, so save followed by load is exact.

use std::fs;
use std::path::Path;

use framedual_core::gabor::{GaborLattice, GridSpec, Rational, SampledWindow};
use framedual_core::{Complex64, Frame, LinearMap};
use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::CliError;

type Pair = [f64; 2];

fn to_pair(z: &Complex64) -> Pair {
    [z.re, z.im]
}

fn from_pair(p: &Pair) -> Complex64 {
    Complex64::new(p[0], p[1])
}

#[derive(Debug, Serialize, Deserialize)]
struct FrameFile {
    dim: usize,
    vectors: Vec<Vec<Pair>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct OperatorFile {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Pair>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct WindowFile {
    samples_per_unit: usize,
    period: usize,
    values: Vec<Pair>,
}

#[derive(Debug, Serialize, Deserialize)]
struct LatticeFile {
    a: String,
    b: String,
}

fn shape(path: &Path, detail: String) -> CliError {
    CliError::Shape {
        path: path.display().to_string(),
        detail,
    }
}

fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_json(path, &text)
}

/// Parses `text`, attributing failures to `path` with line and column.
pub fn parse_json<T: DeserializeOwned>(path: &Path, text: &str) -> Result<T, CliError> {
    serde_json::from_str(text).map_err(|e| CliError::Parse {
        path: path.display().to_string(),
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn frame_to_string(frame: &Frame) -> String {
    let file = FrameFile {
        dim: frame.dim(),
        vectors: frame
            .vectors()
            .iter()
            .map(|v| v.iter().map(to_pair).collect())
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn frame_from_str(path: &Path, text: &str) -> Result<Frame, CliError> {
    let file: FrameFile = parse_json(path, text)?;
    if let Some((j, v)) = file.vectors.iter().enumerate().find(|(_, v)| v.len() != file.dim) {
        return Err(shape(path, format!("vector {j} has {} entries, dim is {}", v.len(), file.dim)));
    }
    let vectors: Vec<Vec<Complex64>> = file
        .vectors
        .iter()
        .map(|v| v.iter().map(from_pair).collect())
        .collect();
    Ok(Frame::from_vectors(file.dim, &vectors)?)
}

pub fn load_frame(path: &Path) -> Result<Frame, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    frame_from_str(path, &text)
}

pub fn save_frame(path: &Path, frame: &Frame) -> Result<(), CliError> {
    let mut text = frame_to_string(frame);
    text.push('\n');
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_operator(path: &Path) -> Result<LinearMap, CliError> {
    let file: OperatorFile = read_json(path)?;
    if file.entries.len() != file.rows || file.entries.iter().any(|r| r.len() != file.cols) {
        return Err(shape(path, format!("entries do not form a {}x{} matrix", file.rows, file.cols)));
    }
    let data = file.entries.iter().flatten().map(from_pair).collect();
    Ok(LinearMap::new(file.rows, file.cols, data)?)
}

pub fn save_operator(path: &Path, op: &LinearMap) -> Result<(), CliError> {
    let file = OperatorFile {
        rows: op.rows(),
        cols: op.cols(),
        entries: (0..op.rows())
            .map(|r| op.row(r).iter().map(to_pair).collect())
            .collect(),
    };
    write_json(path, &file)
}

pub fn load_window(path: &Path) -> Result<SampledWindow, CliError> {
    let file: WindowFile = read_json(path)?;
    let grid = GridSpec::new(file.samples_per_unit, file.period)?;
    Ok(SampledWindow::new(grid, file.values.iter().map(from_pair).collect())?)
}

pub fn save_window(path: &Path, window: &SampledWindow) -> Result<(), CliError> {
    let grid = window.grid();
    let file = WindowFile {
        samples_per_unit: grid.samples_per_unit(),
        period: grid.period(),
        values: window.values().iter().map(to_pair).collect(),
    };
    write_json(path, &file)
}

pub fn parse_rational(text: &str) -> Result<Rational, CliError> {
    text.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("`{text}` is not a rational of the form p/q")))
}

pub fn load_lattice(path: &Path) -> Result<GaborLattice, CliError> {
    let file: LatticeFile = read_json(path)?;
    Ok(GaborLattice::new(parse_rational(&file.a)?, parse_rational(&file.b)?)?)
}

pub fn save_lattice(path: &Path, lat: &GaborLattice) -> Result<(), CliError> {
    write_json(
        path,
        &LatticeFile {
            a: lat.a.to_string(),
            b: lat.b.to_string(),
        },
    )
}
