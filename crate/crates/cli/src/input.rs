use std::fs;
use std::path::Path;

use netperf::{CyclicParams, Matrix};

use crate::args::{MatrixFormat, SystemInput};
use crate::failure::Failure;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

/// First non-blank line is `n`, followed by `n` rows of `n` numbers. Lines
/// starting with `#` are ignored.
pub fn parse_text_matrix(src: &str) -> Result<Matrix, String> {
    let mut lines =
        src.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (line, header) = lines.next().ok_or("empty matrix file")?;
    let n: usize = header.parse().map_err(|_| format!("line {line}: expected the dimension, found {header:?}"))?;
    if n == 0 {
        return Err(format!("line {line}: dimension must be positive"));
    }
    let mut data = Vec::with_capacity(n * n);
    for row in 0..n {
        let (line, text) = lines.next().ok_or_else(|| format!("expected {n} rows, found {row}"))?;
        let before = data.len();
        for tok in text.split_whitespace() {
            let x: f64 = tok.parse().map_err(|_| format!("line {line}: {tok:?} is not a number"))?;
            data.push(x);
        }
        let got = data.len() - before;
        if got != n {
            return Err(format!("line {line}: expected {n} entries, found {got}"));
        }
    }
    if let Some((line, _)) = lines.next() {
        return Err(format!("line {line}: unexpected content after {n} rows"));
    }
    Matrix::from_row_major(n, data).map_err(|e| e.to_string())
}

pub fn load_matrix(path: &Path, format: MatrixFormat) -> Result<Matrix, Failure> {
    let src = read(path)?;
    let parsed = match format {
        MatrixFormat::Text => parse_text_matrix(&src),
        MatrixFormat::Json => serde_json::from_str(&src).map_err(|e| e.to_string()),
    };
    parsed.map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// State matrix and weight, the weight defaulting to the identity.
pub fn load_system(input: &SystemInput) -> Result<netperf::System, Failure> {
    let a = load_matrix(&input.matrix, input.input_format)?;
    let q = match &input.weight {
        Some(path) => load_matrix(path, input.input_format)?,
        None => Matrix::identity(a.dim()),
    };
    Ok(netperf::System::new(a, q)?)
}

pub fn load_params(path: &Path) -> Result<CyclicParams, Failure> {
    let src = read(path)?;
    serde_json::from_str(&src).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_format() {
        let m = parse_text_matrix("# comment\n2\n-1 0.5\n\n0 -2e0\n").unwrap();
        assert_eq!(m.to_rows(), vec![vec![-1.0, 0.5], vec![0.0, -2.0]]);
        for bad in ["", "x", "0", "2\n1 2\n3", "2\n1 2\n3 4\n5 6", "1\nnan", "2\n1 2 3\n4 5"] {
            assert!(parse_text_matrix(bad).is_err(), "{bad:?}");
        }
    }
}
