//! JSON form of a matrix: `{"dim": d, "re": [[..]], "im": [[..]]}` with `im`
//! optional. Numbers are written in shortest round-trip form, so parsing the
//! emitted text reproduces every entry bit for bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::matrix::CMatrix;
use super::operator::HermitianOperator;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub im: Option<Vec<Vec<f64>>>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.dim();
        let re = (0..n).map(|i| m.row(i).iter().map(|z| z.re).collect()).collect();
        // Any nonzero bit pattern (including -0.0) keeps the imaginary block.
        let im = if m.as_slice().iter().all(|z| z.im.to_bits() == 0) {
            None
        } else {
            Some((0..n).map(|i| m.row(i).iter().map(|z| z.im).collect()).collect())
        };
        MatrixJson { dim: n, re, im }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::Parse("\"dim\" must be at least 1".into()));
        }
        check_square("re", &self.re, n)?;
        if let Some(im) = &self.im {
            check_square("im", im, n)?;
        }
        Ok(CMatrix::from_fn(n, |i, j| {
            let im = self.im.as_ref().map_or(0.0, |im| im[i][j]);
            Complex64::new(self.re[i][j], im)
        }))
    }
}

fn check_square(name: &str, rows: &[Vec<f64>], n: usize) -> Result<()> {
    if rows.len() != n {
        return Err(Error::Parse(format!("\"{name}\" has {} rows, expected {n}", rows.len())));
    }
    if let Some((i, row)) = rows.iter().enumerate().find(|(_, r)| r.len() != n) {
        return Err(Error::Parse(format!("\"{name}\" row {i} has {} entries, expected {n}", row.len())));
    }
    Ok(())
}

pub fn matrix_to_json(m: &CMatrix) -> String {
    serde_json::to_string(&MatrixJson::from_matrix(m)).expect("matrix serialization cannot fail")
}

pub fn matrix_from_json(text: &str) -> Result<CMatrix> {
    let parsed: MatrixJson = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    parsed.to_matrix()
}

/// Parses and validates the Hermitian invariant.
pub fn hermitian_from_json(text: &str) -> Result<HermitianOperator> {
    HermitianOperator::new(matrix_from_json(text)?)
}
