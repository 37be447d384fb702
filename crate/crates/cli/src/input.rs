//! Reading graph and matrix files.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use thiserror::Error;

use evoderive_core::{FieldSpec, Graph, GraphError, Matrix, Scalar};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Graph { path: PathBuf, source: GraphError },
    #[error("{path}: line {line}: {message}")]
    Matrix {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

fn read(path: &Path) -> Result<String, InputError> {
    fs::read_to_string(path).map_err(|source| InputError::Io {
        path: path.to_owned(),
        source,
    })
}

pub fn load_graph(path: &Path) -> Result<Graph, InputError> {
    Graph::parse(&read(path)?).map_err(|source| InputError::Graph {
        path: path.to_owned(),
        source,
    })
}

/// Parses `n` rows of `n` whitespace-separated integers, reduced into the
/// field. Blank lines and `#` comments are skipped.
pub fn parse_matrix(text: &str, n: usize, field: FieldSpec) -> Result<Matrix, (usize, String)> {
    let mut rows = Vec::with_capacity(n);
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let lineno = idx + 1;
        if rows.len() == n {
            return Err((lineno, format!("more than {n} rows")));
        }
        let row = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<BigInt>()
                    .map(|k| Scalar::from_bigint(&k, field))
                    .map_err(|_| (lineno, format!("not an integer: {tok:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err((lineno, format!("expected {n} entries, found {}", row.len())));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err((
            text.lines().count(),
            format!("expected {n} rows, found {}", rows.len()),
        ));
    }
    Ok(Matrix::from_rows(field, rows).expect("rows checked"))
}

pub fn load_matrix(path: &Path, n: usize, field: FieldSpec) -> Result<Matrix, InputError> {
    parse_matrix(&read(path)?, n, field).map_err(|(line, message)| InputError::Matrix {
        path: path.to_owned(),
        line,
        message,
    })
}

/// The matrix file text for `m`, with denominators cleared.
pub fn matrix_file_text(m: &Matrix) -> String {
    m.to_integer_rows()
        .iter()
        .map(|r| {
            let cells: Vec<String> = r.iter().map(|k| k.to_string()).collect();
            cells.join(" ") + "\n"
        })
        .collect()
}
