//! Matrix and report files.
//!
//! Matrices travel as JSON (`{"n", "complex", "entries"}`, complex entries
//! as `[re, im]` pairs) or as Matrix Market text. Floats are written in
//! shortest round-trip form, so a load after a save is bit-exact.

use std::fs;
use std::path::{Path, PathBuf};

use eigenid::{Complex, DMatrix, ExperimentReport, HermitianMatrix64, C};
use nalgebra_sparse::io::{load_coo_from_matrix_market_str, save_to_matrix_market_str, MatrixMarketErrorKind};
use nalgebra_sparse::CooMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    /// Matrix Market (`array` or `coordinate`).
    Mm,
}

impl Format {
    /// Explicit choice, else `.mtx`/`.mm` means Matrix Market, else JSON.
    pub fn resolve(explicit: Option<Format>, path: &Path) -> Format {
        explicit.unwrap_or_else(|| match path.extension().and_then(|e| e.to_str()) {
            Some("mtx" | "mm") => Format::Mm,
            _ => Format::Json,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixFile {
    pub n: usize,
    pub complex: bool,
    pub entries: Vec<Vec<Entry>>,
}

impl MatrixFile {
    pub fn from_matrix(m: &DMatrix<C<f64>>, complex: bool) -> Self {
        let entries = m
            .row_iter()
            .map(|row| {
                row.iter()
                    .map(|z| {
                        if complex {
                            Entry::Complex([z.re, z.im])
                        } else {
                            Entry::Real(z.re)
                        }
                    })
                    .collect()
            })
            .collect();
        MatrixFile {
            n: m.nrows(),
            complex,
            entries,
        }
    }

    pub fn to_matrix(&self) -> std::result::Result<DMatrix<C<f64>>, String> {
        let n = self.n;
        if n == 0 {
            return Err("n must be positive".into());
        }
        if self.entries.len() != n {
            return Err(format!("expected {n} rows, found {}", self.entries.len()));
        }
        let mut m = DMatrix::zeros(n, n);
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != n {
                return Err(format!("row {i} has {} entries, expected {n}", row.len()));
            }
            for (j, e) in row.iter().enumerate() {
                m[(i, j)] = match *e {
                    Entry::Real(x) => Complex::new(x, 0.0),
                    Entry::Complex([re, im]) if self.complex => Complex::new(re, im),
                    Entry::Complex(_) => return Err(format!("entry ({i}, {j}) is complex but \"complex\" is false")),
                };
            }
        }
        Ok(m)
    }
}

/// Reads a square matrix without any Hermitian check.
pub fn read_raw(path: &Path, format: Option<Format>) -> Result<DMatrix<C<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    match Format::resolve(format, path) {
        Format::Json => {
            let file: MatrixFile = serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))?;
            file.to_matrix().map_err(|e| CliError::parse(path, e))
        }
        Format::Mm => parse_matrix_market(&text).map_err(|e| CliError::parse(path, e)),
    }
}

/// Reads a matrix and validates it as Hermitian, or averages it with its
/// adjoint first when `symmetrize` is set.
pub fn read_hermitian(path: &Path, format: Option<Format>, symmetrize: bool) -> Result<HermitianMatrix64> {
    let m = read_raw(path, format)?;
    let a = if symmetrize {
        HermitianMatrix64::symmetrized(m)
    } else {
        HermitianMatrix64::new(m)
    };
    Ok(a?)
}

pub fn write_matrix(path: &Path, format: Option<Format>, a: &HermitianMatrix64, complex: bool) -> Result<()> {
    let text = match Format::resolve(format, path) {
        Format::Json => {
            let mut s = serde_json::to_string(&MatrixFile::from_matrix(a.as_matrix(), complex))
                .map_err(|e| CliError::parse(path, e))?;
            s.push('\n');
            s
        }
        Format::Mm => matrix_market_string(a.as_matrix(), complex),
    };
    write_text(path, &text)
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

fn parse_matrix_market(text: &str) -> std::result::Result<DMatrix<C<f64>>, String> {
    let m: DMatrix<C<f64>> = match load_coo_from_matrix_market_str::<C<f64>>(text) {
        Ok(coo) => DMatrix::from(&coo),
        // the loader is typed by the file's datatype: fall back complex -> real -> integer
        Err(e) if e.kind() == MatrixMarketErrorKind::TypeMismatch => match load_coo_from_matrix_market_str::<f64>(text)
        {
            Ok(coo) => DMatrix::from(&coo).map(|x| Complex::new(x, 0.0)),
            Err(e) if e.kind() == MatrixMarketErrorKind::TypeMismatch => {
                let coo = load_coo_from_matrix_market_str::<i64>(text).map_err(|e| e.message().to_owned())?;
                DMatrix::from(&coo).map(|x| Complex::new(x as f64, 0.0))
            }
            Err(e) => return Err(e.message().to_owned()),
        },
        Err(e) => return Err(e.message().to_owned()),
    };
    if !m.is_square() || m.is_empty() {
        return Err(format!("matrix is {}x{}, expected square", m.nrows(), m.ncols()));
    }
    Ok(m)
}

/// Coordinate/general form; zeros are skipped.
fn matrix_market_string(m: &DMatrix<C<f64>>, complex: bool) -> String {
    if complex {
        save_to_matrix_market_str(&CooMatrix::from(m))
    } else {
        save_to_matrix_market_str(&CooMatrix::from(&m.map(|z| z.re)))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportFile {
    pub reports: Vec<ExperimentReport>,
    pub all_passed: bool,
}

impl ReportFile {
    pub fn new(reports: Vec<ExperimentReport>) -> Self {
        let all_passed = reports.iter().all(|r| r.passed);
        ReportFile { reports, all_passed }
    }
}

/// Writes JSON to `path`, or to stdout when `path` is `-`.
pub fn emit_json<S: Serialize>(path: &Path, value: &S) -> Result<()> {
    let text = serde_json::to_string_pretty(value).map_err(|e| CliError::parse(path, e))?;
    if path == Path::new("-") {
        println!("{text}");
        Ok(())
    } else {
        write_text(path, &(text + "\n"))
    }
}

/// Comma/whitespace separated reals, or the contents of a file via `@path`.
pub fn parse_reals(spec: &str) -> Result<Vec<f64>> {
    let (source, text) = match spec.strip_prefix('@') {
        Some(p) => {
            let p = PathBuf::from(p);
            let t = fs::read_to_string(&p).map_err(|e| CliError::io(&p, e))?;
            (p, t)
        }
        None => (PathBuf::from("<targets>"), spec.to_owned()),
    };
    text.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<f64>()
                .ok()
                .filter(|x| x.is_finite())
                .ok_or_else(|| CliError::parse(&source, format!("not a finite number: {t:?}")))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_roundtrip_is_bit_exact() {
        let a = eigenid::random_hermitian::<f64>(6, 9, true);
        let file = MatrixFile::from_matrix(a.as_matrix(), true);
        let text = serde_json::to_string(&file).unwrap();
        let back: MatrixFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_matrix().unwrap(), *a.as_matrix());
    }

    #[test]
    fn real_file_rejects_pairs() {
        let f: MatrixFile = serde_json::from_str(r#"{"n":1,"complex":false,"entries":[[[1,0]]]}"#).unwrap();
        assert!(f.to_matrix().is_err());
    }

    #[test]
    fn matrix_market_dense_hermitian() {
        let text = "%%MatrixMarket matrix array complex hermitian\n2 2\n1 0\n0 -2\n3 0\n";
        let m = parse_matrix_market(text).unwrap();
        assert_eq!(m[(1, 0)], Complex::new(0.0, -2.0));
        assert_eq!(m[(0, 1)], Complex::new(0.0, 2.0));
        assert!(eigenid::validate_hermitian(&m, 0.0).unwrap());
    }

    #[test]
    fn matrix_market_real_symmetric_coordinate() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n3 3 3\n1 1 2\n2 1 -1\n3 3 4.5\n";
        let m = parse_matrix_market(text).unwrap();
        assert_eq!(m[(0, 1)], Complex::new(-1.0, 0.0));
        assert_eq!(m[(2, 2)], Complex::new(4.5, 0.0));
    }

    #[test]
    fn matrix_market_integer_array() {
        let text = "%%MatrixMarket matrix array integer symmetric\n2 2\n1\n2\n3\n";
        let m = parse_matrix_market(text).unwrap();
        assert_eq!(m[(0, 1)], Complex::new(2.0, 0.0));
        assert_eq!(m[(1, 1)], Complex::new(3.0, 0.0));
    }

    #[test]
    fn matrix_market_roundtrip() {
        let a = eigenid::random_hermitian::<f64>(5, 2, true);
        let back = parse_matrix_market(&matrix_market_string(a.as_matrix(), true)).unwrap();
        assert_eq!(back, *a.as_matrix());
    }

    #[test]
    fn reals_accept_commas_and_spaces() {
        assert_eq!(parse_reals("1, 2.5 ,-3").unwrap(), vec![1.0, 2.5, -3.0]);
        assert!(parse_reals("1,x").is_err());
        assert!(parse_reals("nan").is_err());
    }
}
