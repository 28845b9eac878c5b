//! CSV tables: a header row, comma separated, complex values split into
//! `_re` and `_im` columns.

use std::path::Path;

use framedual_core::gabor::SampledWindow;

use crate::error::CliError;

pub fn write_table(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.flush().map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    Ok(())
}

/// `x` followed by real and imaginary columns of each named window.
pub fn write_windows(path: &Path, windows: &[(&str, &SampledWindow)]) -> Result<(), CliError> {
    let Some((_, first)) = windows.first() else {
        return write_table(path, &["x"], &[]);
    };
    let grid = first.grid();
    if windows.iter().any(|(_, w)| w.grid() != grid) {
        return Err(CliError::Usage("windows sampled on different grids".into()));
    }
    let mut header = vec!["x".to_string()];
    for (name, _) in windows {
        header.push(format!("{name}_re"));
        header.push(format!("{name}_im"));
    }
    let rows: Vec<Vec<String>> = (0..grid.total())
        .map(|j| {
            let mut row = vec![format!("{:?}", grid.point(j))];
            for (_, w) in windows {
                let v = w.values()[j];
                row.push(format!("{:?}", v.re));
                row.push(format!("{:?}", v.im));
            }
            row
        })
        .collect();
    let header: Vec<&str> = header.iter().map(String::as_str).collect();
    write_table(path, &header, &rows)
}

pub fn write_spectrum(path: &Path, eigenvalues: &[f64]) -> Result<(), CliError> {
    let rows: Vec<Vec<String>> = eigenvalues
        .iter()
        .enumerate()
        .map(|(i, v)| vec![i.to_string(), format!("{v:?}")])
        .collect();
    write_table(path, &["index", "eigenvalue"], &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use framedual_core::gabor::GridSpec;

    #[test]
    fn window_columns_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.csv");
        let grid = GridSpec::new(2, 2).unwrap();
        let g = SampledWindow::from_real(grid, &[0.0, 0.5, 1.0 / 3.0, 0.25]).unwrap();
        write_windows(&path, &[("g", &g)]).unwrap();
        let mut r = csv::Reader::from_path(&path).unwrap();
        assert_eq!(r.headers().unwrap(), vec!["x", "g_re", "g_im"]);
        let third: Vec<f64> = r.records().nth(2).unwrap().unwrap().iter().map(|f| f.parse().unwrap()).collect();
        assert_eq!(third, vec![1.0, 1.0 / 3.0, 0.0]);
    }

    #[test]
    fn mixed_grids_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let g = SampledWindow::zeros(GridSpec::new(2, 2).unwrap());
        let h = SampledWindow::zeros(GridSpec::new(4, 1).unwrap());
        assert!(write_windows(&dir.path().join("w.csv"), &[("g", &g), ("h", &h)]).is_err());
    }
}
